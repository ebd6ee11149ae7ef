"""Ordinals below epsilon_0 in hereditary Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` pairs with strictly
decreasing exponents, each exponent itself an :class:`Ordinal`.  Natural
numbers are coerced wherever an ordinal is expected.
"""

from __future__ import annotations

import re
from functools import total_ordering


class Underflow(ValueError):
    """Raised by :func:`left_sub` when the subtrahend is too large."""


class TooSmall(ValueError):
    """Raised by :func:`threshold` on finite input."""


class OrdinalSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal) or not isinstance(c, int) or c < 1:
                raise ValueError(f"bad CNF term {e!r}, {c!r}")
            if i and not e < terms[i - 1][0]:
                raise ValueError("CNF exponents must strictly decrease")
        self.terms = terms
        self._hash = None

    @classmethod
    def of(cls, x):
        if isinstance(x, Ordinal):
            return x
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise TypeError(f"cannot coerce {x!r} to an ordinal")
        return cls(((ZERO, x),)) if x else ZERO

    # --- inspection -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self):
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self):
        return bool(self.terms) and not self.is_successor()

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def lead_exp(self):
        return self.terms[0][0] if self.terms else None

    @property
    def lead_coef(self):
        return self.terms[0][1] if self.terms else 0

    def finite_part(self):
        return self.terms[-1][1] if self.is_successor() else 0

    def predecessor(self):
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        *rest, (e, c) = self.terms
        return Ordinal(rest + ([(e, c - 1)] if c > 1 else []))

    # --- comparison -----------------------------------------------------

    def _key(self, other):
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return -1 if e1 < e2 else 1
            if c1 != c2:
                return -1 if c1 < c2 else 1
        return (len(self.terms) > len(other.terms)) - (len(self.terms) < len(other.terms))

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key(other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(int(self)) if self.is_finite() else hash(self.terms)
        return self._hash

    # --- arithmetic sugar -------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __repr__(self):
        return f"Ordinal({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e.is_zero():
                parts.append(str(c))
                continue
            if e == 1:
                s = "w"
            elif e.is_finite() or (len(e.terms) == 1 and e.terms[0] == (ONE, 1)):
                s = f"w^{e}"
            else:
                s = f"w^({e})"
            parts.append(s if c == 1 else f"{s}*{c}")
        return "+".join(parts)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def omega_pow(e, c=1):
    """Return w^e * c."""
    return Ordinal(((Ordinal.of(e), c),)) if c else ZERO


def add(a, b):
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b.is_zero():
        return a
    e, c = b.terms[0]
    kept = [t for t in a.terms if t[0] > e]
    same = [t[1] for t in a.terms if t[0] == e]
    head = (e, c + (same[0] if same else 0))
    return Ordinal(kept + [head] + list(b.terms[1:]))


def mul(a, b):
    a, b = Ordinal.of(a), Ordinal.of(b)
    if a.is_zero() or b.is_zero():
        return ZERO
    e1, c1 = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.is_zero():
            piece = Ordinal(((e1, c1 * c),) + a.terms[1:])
        else:
            piece = omega_pow(add(e1, e), c)
        out = add(out, piece)
    return out


def left_sub(a, b):
    """The unique c with a + c == b."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    if a > b:
        raise Underflow(f"{a} > {b}")
    for i, (eb, cb) in enumerate(b.terms):
        if i >= len(a.terms):
            return Ordinal(b.terms[i:])
        ea, ca = a.terms[i]
        if ea == eb and ca == cb:
            continue
        if ea == eb:
            return Ordinal(((eb, cb - ca),) + b.terms[i + 1:])
        return Ordinal(b.terms[i:])
    return ZERO


def hessenberg(a, b):
    a, b = Ordinal.of(a), Ordinal.of(b)
    coef = {}
    for e, c in a.terms + b.terms:
        coef[e] = coef.get(e, 0) + c
    return Ordinal(sorted(coef.items(), key=lambda t: t[0], reverse=True))


def power(a, n):
    out = ONE
    for _ in range(n):
        out = mul(out, a)
    return out


def indecomposability(g):
    """Return ``(additive, multiplicative)`` for g."""
    g = Ordinal.of(g)
    additive = len(g.terms) == 1 and g.terms[0][1] == 1
    if g == 2:
        return additive, True
    mult = additive and g.lead_exp > 0
    if mult:
        e = g.lead_exp
        mult = len(e.terms) == 1 and e.terms[0][1] == 1
    return additive, mult


def threshold(g):
    """Largest multiplicatively indecomposable ordinal <= g, for g >= w."""
    g = Ordinal.of(g)
    if g.is_finite():
        raise TooSmall(f"threshold needs an infinite ordinal, got {g}")
    return omega_pow(omega_pow(g.lead_exp.lead_exp))


def sum_with_finite_support(alpha, mods):
    """Order type of the alpha-indexed sum of (1 + mods.get(k, 0))."""
    alpha = Ordinal.of(alpha)
    support = sorted((Ordinal.of(k), Ordinal.of(v)) for k, v in mods.items())
    out, start = ZERO, ZERO
    for k, v in support:
        if not k < alpha:
            raise ValueError(f"position {k} is not below {alpha}")
        out = add(out, left_sub(start, k))
        out = add(out, add(1, v))
        start = add(k, 1)
    return add(out, left_sub(start, alpha))


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def parse_ordinal(text):
    """Parse ``w^E*C + ... + C0``; products and sums need not be in CNF."""
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            toks.append(("n", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append((m.group(2), None, m.start(2)))
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def fail(msg):
        at = toks[pos][2] if pos < len(toks) else len(text)
        raise OrdinalSyntaxError(msg, at)

    def atom():
        nonlocal pos
        kind = peek()
        if kind == "n":
            pos += 1
            return Ordinal.of(toks[pos - 1][1])
        if kind == "w":
            pos += 1
            if peek() == "^":
                pos += 1
                return omega_pow(atom())
            return OMEGA
        if kind == "(":
            pos += 1
            val = total()
            if peek() != ")":
                fail("expected ')'")
            pos += 1
            return val
        fail("expected ordinal")

    def product():
        nonlocal pos
        val = atom()
        while peek() == "*":
            pos += 1
            val = mul(val, atom())
        return val

    def total():
        nonlocal pos
        val = product()
        while peek() == "+":
            pos += 1
            val = add(val, product())
        return val

    if not text.strip():
        raise OrdinalSyntaxError("empty ordinal", 0)
    val = total()
    if pos != len(toks):
        fail("unexpected token")
    return val
