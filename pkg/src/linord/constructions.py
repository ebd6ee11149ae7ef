"""Term transformers for the reductions between quasi-orders, and the
families used to build chains and antichains.

The maps whose value is an infinite indexed sum of non-trivial summands
return dedicated opaque letters.  The general deciders treat those as
residue; each letter exposes its summands for structural checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import convex_embeds
from .ordinals import Ordinal, indecomposability, omega_pow
from .terms import (
    ETA,
    ColouredFinite,
    Fin,
    IntervalShuffle,
    LabelSet,
    Opaque,
    OrdTerm,
    Product,
    Shuffle,
    Sum,
    Zeta,
    as_term,
    normalize,
    show,
)
from .verdict import Fails, Holds, Witness


class BadGamma(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def phi_cong(t, m):
    """(1 + z*t + 1) * m."""
    return Product(Sum((Fin(1), Product(Zeta(), as_term(t)), Fin(1))), as_term(m))


def phi_succ(t):
    return Sum((as_term(t), Fin(1)))


def fractal_block(t0, alpha):
    return Sum((Shuffle.of(OrdTerm(alpha)), ETA, as_term(t0), ETA))


def phi_fractal(t, t0, alpha):
    """(alpha*q + q + t0 + q) * t, for an alpha that is not convex in t0."""
    alpha = Ordinal.of(alpha)
    if not convex_embeds(OrdTerm(alpha), t0).fails:
        raise PreconditionError(f"{alpha} must not be convex in {show(as_term(t0))}")
    return Product(fractal_block(t0, alpha), as_term(t))


# --- symbolic indexed sums ------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class ThresholdSum(Opaque):
    """The sum over alpha < gamma of (alpha*q + z*t)."""

    body: object
    gamma: Ordinal

    def summand(self, alpha):
        alpha = Ordinal.of(alpha)
        if not alpha < self.gamma:
            raise ValueError(f"{alpha} is not below {self.gamma}")
        # the empty alpha = 0 block is replaced by q
        head = ETA if alpha.is_zero() else Shuffle.of(OrdTerm(alpha))
        return Sum((head, Product(Zeta(), self.body)))

    def __repr__(self):
        return f"thresh({show(self.body)}, {self.gamma})"


def zeta_label(z):
    """A fixed bijection from the integers onto {1, 2, 3, ...}."""
    return 2 * z if z > 0 else 1 - 2 * z


@dataclass(frozen=True, repr=False)
class FinZetaSum(Opaque):
    """The z-indexed sum of (h(z)*q + z*t) with h = zeta_label."""

    body: object

    def summand(self, z):
        return Sum((Shuffle.of(Fin(zeta_label(z))), Product(Zeta(), self.body)))

    def __repr__(self):
        return f"finzeta({show(self.body)})"


def phi_threshold(t, gamma):
    gamma = Ordinal.of(gamma)
    additive, _ = indecomposability(gamma)
    if not additive or gamma > omega_pow(3):
        raise BadGamma(f"{gamma} must be additively indecomposable and at most w^3")
    return ThresholdSum(normalize(as_term(t)), gamma)


def phi_fin_zeta(t):
    return FinZetaSum(normalize(as_term(t)))


# --- coloured orders --------------------------------------------------------------------


def colour_index(c):
    """Colours are positive ints, or single lower-case letters a=1, b=2, ..."""
    if isinstance(c, int) and not isinstance(c, bool) and c >= 1:
        return c
    if isinstance(c, str) and len(c) == 1 and c.islower():
        return ord(c) - ord("a") + 1
    raise ValueError(f"unsupported colour {c!r}")


def phi_coloured(s):
    """Each point of colour c becomes a shuffle of c+2 followed by a shuffle
    of 1; the separating q keeps equal neighbours apart."""
    cols = s.colours if isinstance(s, ColouredFinite) else tuple(s)
    parts = []
    for c in cols:
        parts += [Shuffle.of(Fin(colour_index(c) + 2)), ETA]
    return Sum(tuple(parts))


# --- eventually constant sequences ---------------------------------------------------------


@dataclass(frozen=True)
class EventuallyConstant:
    prefix: tuple
    tail: Fraction

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        object.__setattr__(self, "tail", Fraction(self.tail))
        if any(v <= 0 for v in self.prefix + (self.tail,)):
            raise ValueError("entries must be positive")

    def __getitem__(self, n):
        return self.prefix[n] if n < len(self.prefix) else self.tail


def _seq(x):
    if isinstance(x, EventuallyConstant):
        return x
    prefix, tail = x
    return EventuallyConstant(tuple(prefix), tail)


@dataclass(frozen=True, repr=False)
class E1Sum(Opaque):
    """q^f * w* followed by the w-sum of (q^f_{-(n+1)} + q^f_{x_n}), where
    q^f_r is the interval shuffle on (r, r+1)."""

    seq: EventuallyConstant

    def summand(self, n):
        return Sum((interval(-(n + 1)), interval(self.seq[n])))

    def __repr__(self):
        pre = ",".join(str(v) for v in self.seq.prefix)
        return f"e1([{pre}], {self.seq.tail})"


def interval(r):
    r = Fraction(r)
    return IntervalShuffle(r, r + 1)


def phi_e1(x):
    return E1Sum(_seq(x))


def agreement_index(x, y):
    """Least n0 with x_n = y_n for every n >= n0, or None."""
    x, y = _seq(x), _seq(y)
    if x.tail != y.tail:
        return None
    n0 = 0
    for n in range(max(len(x.prefix), len(y.prefix))):
        if x[n] != y[n]:
            n0 = n + 1
    return n0


def e1_decide(x, y):
    """Bi-embeddability of phi_e1(x) and phi_e1(y) for classes between Fin
    and Scat that are ccs."""
    x, y = _seq(x), _seq(y)
    n0 = agreement_index(x, y)
    if n0 is None:
        return Fails(
            "e1-tails",
            f"x_n = {x.tail} and y_n = {y.tail} for all large n; the summands use "
            "disjoint intervals, so their labels cannot be matched",
        )
    m = 2 * n0 + 2
    pieces = [("q^f*w*", f"the blocks of q^f*w* from position {2 * n0} on")]
    for i in range(n0):
        pieces.append((f"q^f_{-(i + 1)}", f"block {2 * n0 - (2 * i + 1)} of q^f*w*"))
        pieces.append((f"q^f_{x[i]}", f"block {2 * n0 - (2 * i + 2)} of q^f*w*"))
    pieces.append((f"summands n >= {n0}", "the same summands of the target"))
    return Holds("e1-partition", f"tails agree from index {n0}", Witness(Fin(m), tuple(pieces)))


# --- generators -------------------------------------------------------------------------


def gen_shuffle_family(labels):
    """Shuffle over an infinite eventually periodic set of sizes."""
    if isinstance(labels, str):
        labels = LabelSet.from_bits(labels)
    if not labels.is_periodic:
        raise ValueError("the label set must be infinite")
    return Shuffle(labels)


def gen_interval_shuffle(lo, hi):
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    return IntervalShuffle(lo, hi)
