"""Three-valued decision results and the certificates attached to them."""

from __future__ import annotations

from dataclasses import dataclass, field

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


@dataclass(frozen=True)
class Witness:
    """Certificate for an embedding or for a ccs violation.

    ``index_order`` is the K of the convex partition.  ``pieces`` holds
    ``(src, dst)`` span pairs; for a ccs violation ``dst`` is the convex
    piece of ``host`` assigned to each element of K and ``total`` is the
    resulting convex sum.
    """

    index_order: object = None
    pieces: tuple = ()
    embedding: tuple | None = None
    host: object = None
    total: object = None

    def to_json(self):
        return {
            "indexOrder": None if self.index_order is None else str(self.index_order),
            "pieces": [{"src": _span(s), "dst": _span(d)} for s, d in self.pieces],
            "embedding": None if self.embedding is None else list(self.embedding),
            **({"host": str(self.host)} if self.host is not None else {}),
            **({"sum": str(self.total)} if self.total is not None else {}),
        }


def _span(s):
    if isinstance(s, tuple):
        return [_span(x) for x in s]
    if isinstance(s, (int, str)) or s is None:
        return s
    return str(s)


@dataclass(frozen=True)
class Verdict:
    kind: str
    rule: str
    reason: str = ""
    witness: Witness | None = field(default=None, compare=False)

    @property
    def holds(self):
        return self.kind == HOLDS

    @property
    def fails(self):
        return self.kind == FAILS

    @property
    def unknown(self):
        return self.kind == UNKNOWN

    @property
    def decided(self):
        return self.kind != UNKNOWN

    def negate(self):
        if self.unknown:
            return self
        return Verdict(FAILS if self.holds else HOLDS, self.rule, self.reason)

    def as_bool(self):
        return None if self.unknown else self.holds

    def to_json(self):
        out = {"verdict": self.kind, "rule": self.rule, "reason": self.reason}
        if self.witness is not None:
            out.update(self.witness.to_json())
        return out

    def __str__(self):
        head = f"{self.kind.capitalize()} [{self.rule}]"
        return f"{head} {self.reason}" if self.reason else head


def Holds(rule, reason="", witness=None):
    return Verdict(HOLDS, rule, reason, witness)


def Fails(rule, reason=""):
    return Verdict(FAILS, rule, reason)


def Unknown(rule, reason=""):
    return Verdict(UNKNOWN, rule, reason)


def both(a, b, rule):
    """Conjunction with Unknown propagation (a definite Fails wins)."""
    if a.fails:
        return a
    if b.fails:
        return b
    if a.unknown or b.unknown:
        return a if a.unknown else b
    return Holds(rule, "both directions hold")
