"""Z-powers and the Hausdorff rank of scattered terms.

The rank of L is the least gamma with L embedding into Z^gamma.  On block
words it is computed by iterating the finite condensation: each letter
collapses to the order type of its finite-condensation classes, adjacent
letters share a class exactly when the left one has a maximum and the
right one a minimum, and the rank is the number of rounds needed to reach
a single point.  Ordinal letters skip the iteration: alpha embeds into
Z^gamma iff alpha <= w^gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordinals import OMEGA, Ordinal, ZERO, add, omega_pow
from .terms import (
    Fin,
    IntervalShuffle,
    Omega,
    OmegaStar,
    Opaque,
    OrdTerm,
    Product,
    Rev,
    Shuffle,
    Sum,
    ZPow,
    Zeta,
    _norm,
    _reduce,
    as_term,
    is_rev_well_word,
    is_well_word,
    letters,
    normalize,
    ordinal_word,
    rev_word_ordinal,
    reverse_letter,
    word_ordinal,
    word_term,
)
from .verdict import Fails, Holds, Unknown

EXPAND_BOUND = 4
PROBE_LIMIT = 32


class BoundExceeded(ValueError):
    pass


class NotScattered(ValueError):
    pass


class Undecided(ValueError):
    pass


@dataclass(frozen=True, repr=False)
class ZTail(Opaque):
    """The sum over beta < gamma of Z^beta * w, for a limit gamma."""

    gamma: Ordinal
    scattered = True

    def __repr__(self):
        return f"ztail({self.gamma})"


def z_expand(gamma, bound=EXPAND_BOUND):
    gamma, bound = Ordinal.of(gamma), Ordinal.of(bound)
    if gamma > bound:
        raise BoundExceeded(f"Z^{gamma} is above the expansion bound {bound}")
    if gamma.is_zero():
        return Fin(1)
    if gamma.is_limit():
        if gamma != OMEGA:
            raise BoundExceeded("only the limit w is expanded")
        tail = ZTail(gamma)
        return Sum((Rev(tail), Fin(1), tail))
    prev = gamma.predecessor()
    if prev.is_zero():
        return Sum((OmegaStar(), Fin(1), Omega()))
    base = normalize(z_expand(prev, bound))
    tail = Product(base, Omega())
    return Sum((Rev(tail), base, tail))


def ordinal_rank(alpha):
    """Least gamma with alpha <= w^gamma."""
    alpha = Ordinal.of(alpha)
    if alpha <= 1:
        return ZERO
    d = alpha.lead_exp
    return d if alpha == omega_pow(d) else add(d, 1)


# --- finite condensation on block words ---------------------------------------


def _ends(x):
    """(has_min, has_max) for a letter, or None when not known."""
    if isinstance(x, Fin):
        return True, True
    if isinstance(x, Omega):
        return True, False
    if isinstance(x, OmegaStar):
        return False, True
    if isinstance(x, (Zeta, ZPow)):
        return (True, True) if isinstance(x, ZPow) and x.gamma.is_zero() else (False, False)
    if isinstance(x, OrdTerm):
        return True, x.alpha.is_successor()
    if isinstance(x, Rev) and isinstance(x.body, OrdTerm):
        return x.body.alpha.is_successor(), True
    if isinstance(x, Product):
        a = _word_ends(letters(x.left))
        b = _ends(x.right)
        if a is None or b is None:
            return None
        return a[0] and b[0], a[1] and b[1]
    return None


def _word_ends(word):
    first, last = _ends(word[0]), _ends(word[-1])
    if first is None or last is None:
        return None
    return first[0], last[1]


def _div_omega(beta):
    """The ordinal b' with beta = w * b' for a limit beta."""
    terms = []
    for e, c in beta.terms:
        e2 = e.predecessor() if e.is_finite() else e
        terms.append((e2, c))
    return Ordinal(terms)


def _condense_letter(x):
    if isinstance(x, (Fin, Omega, OmegaStar, Zeta)):
        return (Fin(1),)
    if isinstance(x, OrdTerm):
        return ordinal_word(_div_omega(x.alpha))
    if isinstance(x, Rev) and isinstance(x.body, OrdTerm):
        return tuple(reverse_letter(y) for y in reversed(ordinal_word(_div_omega(x.body.alpha))))
    if isinstance(x, ZPow) and x.gamma.is_finite():
        n = int(x.gamma)
        return (Fin(1),) if n <= 1 else _norm(ZPow(n - 1))
    if isinstance(x, Product):
        a = letters(x.left)
        ends = _word_ends(a)
        if ends is None or (ends[0] and ends[1]):
            return None
        ca = condense(a)
        if ca is None:
            return None
        return _norm(Product(word_term(ca), x.right))
    return None


def condense(word):
    """Word for the finite condensation of a scattered block word."""
    out = []
    prev_max = False
    for x in word:
        cx = _condense_letter(x)
        ends = _ends(x)
        if cx is None or ends is None:
            return None
        cx = list(cx)
        if prev_max and ends[0]:
            # the boundary classes merge into one point
            if isinstance(out[-1], Fin):
                out[-1] = Fin(out[-1].n - 1) if out[-1].n > 1 else None
                if out[-1] is None:
                    out.pop()
            elif isinstance(cx[0], Fin):
                cx[0] = Fin(cx[0].n - 1) if cx[0].n > 1 else None
                if cx[0] is None:
                    cx.pop(0)
            else:
                return None
        out.extend(cx)
        prev_max = ends[1]
    return _reduce(tuple(out))


def _check_scattered(word):
    for x in word:
        if isinstance(x, (Shuffle, IntervalShuffle)):
            raise NotScattered(f"{x} is not scattered")
        if isinstance(x, Product):
            _check_scattered(letters(x.left))
            _check_scattered((x.right,))
        if isinstance(x, Rev):
            _check_scattered((x.body,))
        if isinstance(x, Opaque) and not x.scattered:
            raise NotScattered(f"{x} is not scattered")


def structural_rank(t):
    """Rank by condensation, or None outside the handled fragment."""
    word = _norm(as_term(t))
    _check_scattered(word)
    if is_well_word(word):
        return ordinal_rank(word_ordinal(word))
    if is_rev_well_word(word):
        return ordinal_rank(rev_word_ordinal(word))
    rounds = 0
    while word != (Fin(1),):
        word = condense(word)
        if word is None or rounds > PROBE_LIMIT:
            return None
        rounds += 1
        if is_well_word(word) or is_rev_well_word(word):
            o = word_ordinal(word) if is_well_word(word) else rev_word_ordinal(word)
            return add(rounds, ordinal_rank(o))
    return Ordinal.of(rounds)


def embeds_zpow(t, gamma):
    gamma = Ordinal.of(gamma)
    word = _norm(as_term(t))
    _check_scattered(word)
    if len(word) == 1 and isinstance(word[0], ZPow):
        g = word[0].gamma
        if g <= gamma:
            return Holds("zpow-monotone", f"Z^{g} embeds into Z^{gamma}")
        return Fails("zpow-monotone", f"Z^{g} has rank {g} > {gamma}")
    if is_well_word(word) or is_rev_well_word(word):
        alpha = word_ordinal(word) if is_well_word(word) else rev_word_ordinal(word)
        if alpha <= omega_pow(gamma):
            return Holds("ordinal-bound", f"{alpha} <= w^{gamma}")
        return Fails("ordinal-bound", f"{alpha} > w^{gamma}, the largest ordinal in Z^{gamma}")
    r = structural_rank(word_term(word))
    if r is None:
        return Unknown("rank-residue", "the condensation reached a residue letter")
    if r <= gamma:
        return Holds("condensation", f"rank {r} <= {gamma}")
    return Fails("condensation", f"rank {r} > {gamma}")


def hausdorff_rank(t, limit=PROBE_LIMIT):
    word = _norm(as_term(t))
    _check_scattered(word)
    if len(word) == 1 and isinstance(word[0], ZPow):
        return word[0].gamma
    for g in range(limit + 1):
        v = embeds_zpow(word_term(word), g)
        if v.holds:
            return Ordinal.of(g)
        if v.unknown:
            raise Undecided(f"no verdict for Z^{g}: {v.reason}")
    r = structural_rank(word_term(word))
    if r is not None and embeds_zpow(word_term(word), r).holds:
        return r
    raise Undecided(f"rank above the probe limit {limit}")
