"""Terms for countable linear orders and their block-word normal form.

A term is a small syntax tree.  Normalizing it yields a *block word*: a
sum of letters drawn from finite chains, w, w*, z, shuffles and interval
shuffles, plus symbolic residue letters (big ordinals, products with an
infinite right factor, infinite Z-powers) that the rewrite rules cannot
unfold.  ``a*b`` always means the b-indexed sum of copies of a.

Rewrite rules, each an isomorphism:

* ``n+m -> (n+m)``; ``n+w -> w``; ``w*+n -> w*``; ``w*+w -> z``
  (the boundary between the two letters is at finite distance).
* well-ordered runs are summed as ordinals, reversed runs likewise;
  ``w*+B -> z+B`` for an ordinal letter ``B >= w^2`` since ``B = w+B``.
* ``S+S -> S`` for a shuffle S, and ``S+W+S -> S`` when the scattered
  run W is one of the labels of S (density of every label).
* ``L*n`` unfolds into n copies of L; ``L*(x+y) = L*x + L*y``.
* ``n*z -> z``; ordinal times ordinal is computed in CNF.
* ``L*shuffle(S) -> shuffle(L*s : s in S)`` for scattered L.
* ``A*X + A*Y -> A*(X+Y)`` and a literal copy of A counts as ``A*1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ordinals import (
    OMEGA,
    Ordinal,
    OrdinalSyntaxError,
    add as ord_add,
    mul as ord_mul,
    omega_pow,
    parse_ordinal,
)
from .verdict import Fails, Holds, Unknown

ZPOW_NORMALIZE_BOUND = 6


class InfiniteTerm(ValueError):
    pass


class TermSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at column {pos + 1}")
        self.pos = pos
        self.column = pos + 1


class Term:
    """Base class; subclasses are frozen dataclasses."""

    def __add__(self, other):
        return Sum((self, as_term(other)))

    def __radd__(self, other):
        return Sum((as_term(other), self))

    def __mul__(self, other):
        return Product(self, as_term(other))

    def __rmul__(self, other):
        return Product(as_term(other), self)

    def __str__(self):
        return show(self)


def as_term(x):
    if isinstance(x, Term):
        return x
    if isinstance(x, int):
        return Fin(x)
    if isinstance(x, Ordinal):
        return OrdTerm(x)
    raise TypeError(f"cannot make a term from {x!r}")


@dataclass(frozen=True, repr=False)
class Fin(Term):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("finite chains have at least one point")

    def __repr__(self):
        return f"Fin({self.n})"


@dataclass(frozen=True, repr=False)
class Omega(Term):
    def __repr__(self):
        return "Omega()"

    def __hash__(self):
        return hash("Omega")


@dataclass(frozen=True, repr=False)
class OmegaStar(Term):
    def __repr__(self):
        return "OmegaStar()"

    def __hash__(self):
        return hash("OmegaStar")


@dataclass(frozen=True, repr=False)
class Zeta(Term):
    def __repr__(self):
        return "Zeta()"

    def __hash__(self):
        return hash("Zeta")


@dataclass(frozen=True, repr=False)
class LabelSet:
    """Either a finite set of normalized scattered terms or an eventually
    periodic subset of {1, 2, ...} given by characteristic bits."""

    labels: frozenset | None = None
    prefix: tuple = ()
    period: tuple = ()

    @classmethod
    def explicit(cls, items):
        labels = frozenset(normalize(as_term(x)) for x in items)
        if not labels:
            raise ValueError("label sets are nonempty")
        for lab in labels:
            if not is_scattered(lab):
                raise ValueError(f"shuffle label {lab} is not scattered")
        return cls(labels=labels)

    @classmethod
    def periodic(cls, prefix, period):
        prefix = tuple(bool(b) for b in prefix)
        period = tuple(bool(b) for b in period)
        if not period:
            raise ValueError("empty period")
        for p in range(1, len(period) + 1):
            if len(period) % p == 0 and period == period[:p] * (len(period) // p):
                period = period[:p]
                break
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        if not any(period):
            return cls.explicit(i + 1 for i, b in enumerate(prefix) if b)
        return cls(prefix=prefix, period=period)

    @classmethod
    def from_bits(cls, text):
        head, _, tail = text.partition("|")
        if set(head + tail) - {"0", "1"} or not tail:
            raise ValueError(f"bad periodic label string {text!r}")
        return cls.periodic([c == "1" for c in head], [c == "1" for c in tail])

    @property
    def is_periodic(self):
        return self.labels is None

    def contains_n(self, n):
        if not self.is_periodic:
            return Fin(n) in self.labels
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.period[(n - 1 - len(self.prefix)) % len(self.period)]

    def contains(self, word_term):
        if not self.is_periodic:
            return word_term in self.labels
        return isinstance(word_term, Fin) and self.contains_n(word_term.n)

    def sorted_labels(self):
        return sorted(self.labels, key=show)

    def map(self, fn):
        return LabelSet.explicit(fn(lab) for lab in self.labels)

    def __str__(self):
        if self.is_periodic:
            bits = lambda bs: "".join("1" if b else "0" for b in bs)
            return f"per:{bits(self.prefix)}|{bits(self.period)}"
        return ",".join(show(lab) for lab in self.sorted_labels())

    __repr__ = __str__


@dataclass(frozen=True, repr=False)
class Shuffle(Term):
    labels: LabelSet

    @classmethod
    def of(cls, *items):
        return cls(LabelSet.explicit(items))

    def __repr__(self):
        return f"Shuffle{{{self.labels}}}"


@dataclass(frozen=True, repr=False)
class IntervalShuffle(Term):
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError("interval shuffle needs lo < hi")

    def __repr__(self):
        return f"IntervalShuffle({self.lo}, {self.hi})"


@dataclass(frozen=True, repr=False)
class Sum(Term):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(as_term(p) for p in self.parts))
        if not self.parts:
            raise ValueError("sums are nonempty")

    def __repr__(self):
        return f"Sum[{', '.join(map(repr, self.parts))}]"


@dataclass(frozen=True, repr=False)
class Product(Term):
    left: Term
    right: Term

    def __repr__(self):
        return f"Product({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class OrdTerm(Term):
    alpha: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "alpha", Ordinal.of(self.alpha))
        if self.alpha.is_zero():
            raise ValueError("the empty order is not a term")

    def __repr__(self):
        return f"OrdTerm({self.alpha})"


@dataclass(frozen=True, repr=False)
class ZPow(Term):
    gamma: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "gamma", Ordinal.of(self.gamma))

    def __repr__(self):
        return f"ZPow({self.gamma})"


@dataclass(frozen=True, repr=False)
class Rev(Term):
    body: Term

    def __repr__(self):
        return f"Rev({self.body!r})"


class Opaque(Term):
    """A residue letter that normalization leaves untouched.

    Subclasses are frozen dataclasses and set ``scattered``.
    """

    scattered = False


# --- printing ---------------------------------------------------------------


def _prec(t):
    if isinstance(t, (Sum, OrdTerm)):
        return 0
    if isinstance(t, Product):
        return 1
    return 2


def _wrap(t, level):
    s = show(t)
    return f"({s})" if _prec(t) < level else s


def show(t):
    if isinstance(t, Fin):
        return str(t.n)
    if isinstance(t, Omega):
        return "w"
    if isinstance(t, OmegaStar):
        return "w*"
    if isinstance(t, Zeta):
        return "z"
    if isinstance(t, Shuffle):
        if not t.labels.is_periodic and t.labels.labels == frozenset([Fin(1)]):
            return "q"
        return f"shuffle({t.labels})"
    if isinstance(t, IntervalShuffle):
        return f"ishuffle({t.lo},{t.hi})"
    if isinstance(t, Sum):
        return "+".join(_wrap(p, 1) for p in t.parts)
    if isinstance(t, Product):
        return f"{_wrap(t.left, 1)}*{_wrap(t.right, 2)}"
    if isinstance(t, OrdTerm):
        a = t.alpha
        if a < omega_pow(2):
            # keep an explicit w^ so the text parses back to an ordinal term
            parts = []
            for e, c in a.terms:
                parts.append(f"w^{e}" + (f"*{c}" if c > 1 else ""))
            return "+".join(parts)
        return str(a)
    if isinstance(t, ZPow):
        return f"zpow({t.gamma})"
    if isinstance(t, Rev):
        return f"rev({show(t.body)})"
    return repr(t)


# --- normalization ------------------------------------------------------------

WELL = (Fin, Omega, OrdTerm)


def _is_rev_ord(x):
    return isinstance(x, Rev) and isinstance(x.body, OrdTerm)


def is_well_word(w):
    return all(isinstance(x, WELL) for x in w)


def is_rev_well_word(w):
    return all(isinstance(x, (Fin, OmegaStar)) or _is_rev_ord(x) for x in w)


def word_ordinal(w):
    total = Ordinal()
    for x in w:
        if isinstance(x, Fin):
            total = ord_add(total, x.n)
        elif isinstance(x, Omega):
            total = ord_add(total, OMEGA)
        else:
            total = ord_add(total, x.alpha)
    return total


def rev_word_ordinal(w):
    return word_ordinal(tuple(reverse_letter(x) for x in reversed(w)))


def ordinal_word(alpha):
    """Letters of a nonzero ordinal: one residue letter for the part of
    exponent >= 2, then copies of w, then a finite chain."""
    alpha = Ordinal.of(alpha)
    big = Ordinal([t for t in alpha.terms if t[0] >= 2])
    mid = sum(c for e, c in alpha.terms if e == 1)
    fin = alpha.finite_part()
    out = []
    if not big.is_zero():
        out.append(OrdTerm(big))
    out += [Omega()] * mid
    if fin:
        out.append(Fin(fin))
    return tuple(out)


def rev_ordinal_word(alpha):
    return tuple(reverse_letter(x) for x in reversed(ordinal_word(alpha)))


def word_term(w):
    return w[0] if len(w) == 1 else Sum(w)


def letters(t):
    """The block word (tuple of letters) of a normalized term."""
    return t.parts if isinstance(t, Sum) else (t,)


def is_scattered(t):
    return all(_letter_scattered(x) for x in letters(normalize(t)))


def _letter_scattered(x):
    if isinstance(x, (Shuffle, IntervalShuffle)):
        return False
    if isinstance(x, Product):
        return is_scattered(x.left) and _letter_scattered(x.right)
    if isinstance(x, Rev):
        return _letter_scattered(x.body)
    if isinstance(x, Opaque):
        return x.scattered
    return True


def _pair(x, y):
    """One local rewrite on adjacent letters, or None."""
    if isinstance(x, Fin):
        if isinstance(y, Fin):
            return (Fin(x.n + y.n),)
        if isinstance(y, (Omega, OrdTerm)):
            return (y,)
    if isinstance(x, Omega) and isinstance(y, OrdTerm):
        return (y,)
    if isinstance(x, OrdTerm) and isinstance(y, OrdTerm):
        return (OrdTerm(ord_add(x.alpha, y.alpha)),)
    if isinstance(x, OmegaStar):
        if isinstance(y, Fin):
            return (x,)
        if isinstance(y, Omega):
            return (Zeta(),)
        if isinstance(y, OrdTerm):
            return (Zeta(), y)
    if _is_rev_ord(x):
        if isinstance(y, (Fin, OmegaStar)):
            return (x,)
        if _is_rev_ord(y):
            return (Rev(OrdTerm(ord_add(y.body.alpha, x.body.alpha))),)
        if isinstance(y, Omega):
            return (x, Zeta())
    if isinstance(x, Shuffle) and x == y:
        return (x,)
    return None


def _reduce_pairs(word):
    out = []
    for letter in word:
        out.append(letter)
        while len(out) >= 2:
            r = _pair(out[-2], out[-1])
            if r is None:
                break
            del out[-2:]
            out.extend(r)
            if len(r) == 2:
                # z+B and rev(B)+z are stable against both neighbours
                break
    return out


def _absorb_in_shuffles(word):
    """S + W + S -> S when the scattered run W is a label of S."""
    changed = True
    while changed:
        changed = False
        shuffle_at = [i for i, x in enumerate(word) if isinstance(x, Shuffle)]
        for a, b in zip(shuffle_at, shuffle_at[1:]):
            if word[a] != word[b]:
                continue
            run = word[a + 1 : b]
            if not run or not all(_letter_scattered(x) for x in run):
                continue
            if word[a].labels.contains(word_term(tuple(run))):
                word = word[: a + 1] + word[b + 1 :]
                changed = True
                break
    return word


def _product_runs(word):
    """Merge A*X, A*Y and literal copies of A into A*(X+Y)."""
    i = 0
    out = list(word)
    while i < len(out):
        x = out[i]
        if not isinstance(x, Product):
            i += 1
            continue
        a = letters(x.left)
        k = len(a)
        lo = i
        while True:
            if lo >= 1 and isinstance(out[lo - 1], Product) and out[lo - 1].left == x.left:
                lo -= 1
            elif lo >= k and tuple(out[lo - k : lo]) == a:
                lo -= k
            else:
                break
        hi = i + 1
        while True:
            if hi < len(out) and isinstance(out[hi], Product) and out[hi].left == x.left:
                hi += 1
            elif tuple(out[hi : hi + k]) == a:
                hi += k
            else:
                break
        if hi - lo == 1:
            i += 1
            continue
        inner = []
        j = lo
        while j < hi:
            y = out[j]
            if isinstance(y, Product) and y.left == x.left:
                inner.append(y.right)
                j += 1
            else:
                inner.append(Fin(1))
                j += k
        merged = []
        for y in _reduce(tuple(inner)):
            merged.extend(_product_letter(a, y))
        merged = tuple(merged)
        if tuple(out[lo:hi]) != merged:
            out[lo:hi] = merged
            return out, True
        i = hi
    return out, False


@lru_cache(maxsize=None)
def _reduce(word):
    word = tuple(word)
    for _ in range(10_000):
        new = tuple(_reduce_pairs(word))
        new = tuple(_absorb_in_shuffles(list(new)))
        new, _ = _product_runs(new)
        new = tuple(new)
        if new == word:
            return word
        word = new
    raise RuntimeError("normalization did not stabilize")


@lru_cache(maxsize=None)
def _product_word(left, right):
    """Normalized word of (left word) * (right word)."""
    out = []
    for x in right:
        out.extend(_product_letter(left, x))
    return _reduce(tuple(out))


def _product_letter(wl, x):
    if isinstance(x, Fin):
        return wl * x.n
    if wl == (Fin(1),):
        return (x,)
    if isinstance(x, Product):
        return _product_word(_product_word(wl, letters(x.left)), (x.right,))
    if is_well_word(wl) and isinstance(x, (Omega, OrdTerm)):
        beta = OMEGA if isinstance(x, Omega) else x.alpha
        return ordinal_word(ord_mul(word_ordinal(wl), beta))
    if is_rev_well_word(wl) and (isinstance(x, OmegaStar) or _is_rev_ord(x)):
        beta = OMEGA if isinstance(x, OmegaStar) else x.body.alpha
        return rev_ordinal_word(ord_mul(rev_word_ordinal(wl), beta))
    if len(wl) == 1 and isinstance(wl[0], Fin) and isinstance(x, Zeta):
        return (x,)
    if isinstance(x, Shuffle) and not x.labels.is_periodic and is_scattered(word_term(wl)):
        return (Shuffle(x.labels.map(lambda s: word_term(_product_word(wl, letters(s))))),)
    return (Product(word_term(wl), x),)


def _zpow_word(gamma):
    if gamma.is_finite() and int(gamma) <= ZPOW_NORMALIZE_BOUND:
        word = (Fin(1),)
        for _ in range(int(gamma)):
            word = _product_word(word, (Zeta(),))
        return word
    return (ZPow(gamma),)


@lru_cache(maxsize=None)
def _norm(t):
    if isinstance(t, (Fin, Omega, OmegaStar, Zeta, IntervalShuffle, Opaque)):
        return (t,)
    if isinstance(t, Shuffle):
        return (t,)
    if isinstance(t, Sum):
        out = []
        for p in t.parts:
            out.extend(_norm(p))
        return _reduce(tuple(out))
    if isinstance(t, Product):
        return _product_word(_norm(t.left), _norm(t.right))
    if isinstance(t, OrdTerm):
        return ordinal_word(t.alpha)
    if isinstance(t, ZPow):
        return _zpow_word(t.gamma)
    if isinstance(t, Rev):
        return _reduce(tuple(reverse_letter(x) for x in reversed(_norm(t.body))))
    raise TypeError(f"not a term: {t!r}")


def normalize(t):
    """Block-word normal form of t, as a letter or a flat Sum of letters."""
    return word_term(_norm(as_term(t)))


# --- reversal ---------------------------------------------------------------


def reverse_letter(x):
    if isinstance(x, (Fin, Zeta, ZPow)):
        return x
    if isinstance(x, Omega):
        return OmegaStar()
    if isinstance(x, OmegaStar):
        return Omega()
    if isinstance(x, Shuffle):
        if x.labels.is_periodic:
            return x
        return Shuffle(x.labels.map(lambda s: normalize(reverse(s))))
    if isinstance(x, Product):
        return Product(normalize(reverse(x.left)), reverse_letter(x.right))
    if isinstance(x, Rev):
        return x.body
    return Rev(x)


def reverse(t):
    """A term for the reversed order; structural, not normalizing."""
    t = as_term(t)
    if isinstance(t, Sum):
        return Sum(tuple(reverse(p) for p in reversed(t.parts)))
    if isinstance(t, Product):
        return Product(reverse(t.left), reverse(t.right))
    if isinstance(t, Shuffle) and not t.labels.is_periodic:
        return Shuffle(LabelSet.explicit(reverse(s) for s in t.labels.labels))
    if isinstance(t, OrdTerm):
        return Rev(t)
    return reverse_letter(t)


ETA = Shuffle(LabelSet(labels=frozenset([Fin(1)])))


# --- parsing ------------------------------------------------------------------

_ATOM_START = set("0123456789wzqsir(")
_RAT = re.compile(r"\s*(-?\d+(?:/\d+|\.\d+)?)\s*")


def _ordinalish(t):
    if isinstance(t, (Fin, Omega, OrdTerm)):
        return True
    if isinstance(t, Sum):
        return all(_ordinalish(p) for p in t.parts)
    if isinstance(t, Product):
        return _ordinalish(t.left) and _ordinalish(t.right)
    return False


def _has_ordterm(t):
    if isinstance(t, OrdTerm):
        return True
    if isinstance(t, Sum):
        return any(_has_ordterm(p) for p in t.parts)
    if isinstance(t, Product):
        return _has_ordterm(t.left) or _has_ordterm(t.right)
    return False


def _fold(t):
    # w^... anywhere in a purely ordinal expression turns the whole thing
    # into one ordinal term, so "w^2+w*3+1" is read as an ordinal
    if _has_ordterm(t) and _ordinalish(t):
        return OrdTerm(word_ordinal(_norm(t)))
    return t


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, msg, pos=None):
        raise TermSyntaxError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def parse(self):
        if not self.text.strip():
            self.fail("empty input", 0)
        t = self.sum()
        if self.peek():
            self.fail("unexpected character")
        return t

    def sum(self):
        parts = [self.prod()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.prod())
        return parts[0] if len(parts) == 1 else _fold(Sum(tuple(parts)))

    def prod(self):
        t = self.atom()
        while self.peek() == "*":
            self.pos += 1
            t = _fold(Product(t, self.atom()))
        return t

    def _next_nonspace(self, i):
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return self.text[i] if i < len(self.text) else ""

    def _closing(self, start):
        depth = 0
        for i in range(start, len(self.text)):
            if self.text[i] == "(":
                depth += 1
            elif self.text[i] == ")":
                depth -= 1
                if depth == 0:
                    return i
        self.fail("unbalanced parenthesis", start)

    def ordinal_until_paren(self):
        # self.pos sits just after an opening parenthesis
        end = self._closing(self.pos - 1)
        inner = self.text[self.pos : end]
        try:
            val = parse_ordinal(inner)
        except OrdinalSyntaxError as e:
            self.fail(str(e).rsplit(" at column", 1)[0], self.pos + e.pos)
        self.pos = end + 1
        return val

    def exponent(self):
        c = self.peek()
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Ordinal.of(int(self.text[start : self.pos]))
        if c == "w":
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                return omega_pow(self.exponent())
            return OMEGA
        if c == "(":
            self.pos += 1
            return self.ordinal_until_paren()
        self.fail("expected exponent")

    def atom(self):
        c = self.peek()
        start = self.pos
        if c.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            n = int(self.text[start : self.pos])
            if n < 1:
                self.fail("finite chains need at least one point", start)
            return Fin(n)
        if c == "(":
            self.pos += 1
            t = self.sum()
            self.eat(")")
            return t
        for word, handler in (
            ("shuffle(", self._shuffle),
            ("ishuffle(", self._ishuffle),
            ("zpow(", self._zpow),
            ("rev(", self._rev),
        ):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return handler()
        if c == "w":
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                return OrdTerm(omega_pow(self.exponent()))
            if self.peek() == "*" and self._next_nonspace(self.pos + 1) not in _ATOM_START:
                self.pos += 1
                return OmegaStar()
            return Omega()
        if c == "z":
            self.pos += 1
            return Zeta()
        if c == "q":
            self.pos += 1
            return ETA
        self.fail("expected a term")

    def _shuffle(self):
        self.skip()
        if self.text.startswith("per:", self.pos):
            end = self.text.index(")", self.pos) if ")" in self.text[self.pos :] else -1
            if end < 0:
                self.fail("expected ')'")
            try:
                labels = LabelSet.from_bits(self.text[self.pos + 4 : end].strip())
            except ValueError as e:
                self.fail(str(e))
            self.pos = end + 1
            return Shuffle(labels)
        items = [self.sum()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.sum())
        at = self.pos
        self.eat(")")
        try:
            return Shuffle(LabelSet.explicit(items))
        except ValueError as e:
            self.fail(str(e), at)

    def _ishuffle(self):
        vals = []
        for sep in (",", ")"):
            m = _RAT.match(self.text, self.pos)
            if not m:
                self.fail("expected a rational")
            vals.append(Fraction(m.group(1)))
            self.pos = m.end()
            self.eat(sep)
        if not vals[0] < vals[1]:
            self.fail("interval shuffle needs lo < hi")
        return IntervalShuffle(*vals)

    def _zpow(self):
        return ZPow(self.ordinal_until_paren())

    def _rev(self):
        t = self.sum()
        self.eat(")")
        return Rev(t)


def parse_term(text):
    """Parse the term grammar; the result is not normalized."""
    return _Parser(text).parse()


# --- isomorphism ------------------------------------------------------------


def _complete_letter(x, scattered_only):
    if isinstance(x, (Fin, Omega, OmegaStar, Zeta)):
        return True
    if isinstance(x, Shuffle):
        if scattered_only:
            return False
        return x.labels.is_periodic or all(
            complete_word(letters(lab), True) for lab in x.labels.labels
        )
    if isinstance(x, Product):
        return x.left == Zeta() and _complete_letter(x.right, True)
    return False


def complete_word(word, scattered_only=False):
    """True when letterwise equality decides isomorphism for this word.

    Each of w, w*, z and finite chains is a single finite-condensation
    class, adjacent letters that would share a class have been merged, a
    run z*X is the maximal region of z-classes (so X is recovered up to
    isomorphism), and a shuffle is recovered from the scattered
    condensation together with its set of labels.
    """
    return all(_complete_letter(x, scattered_only) for x in word)


def iso_check(t1, t2):
    w1, w2 = _norm(as_term(t1)), _norm(as_term(t2))
    if w1 == w2:
        return Holds("nf-equal", "normal forms coincide")
    if len(w1) == len(w2) == 1 and all(isinstance(w[0], IntervalShuffle) for w in (w1, w2)):
        return Fails("interval-labels", "the interval shuffles carry different label sets")
    if not (complete_word(w1) and complete_word(w2)):
        return Unknown("outside-fragment", "a normal form contains a residue letter")
    if len(w1) != len(w2):
        return Fails("nf-length", f"normal forms have {len(w1)} and {len(w2)} letters")
    if sorted(map(show, w1)) != sorted(map(show, w2)):
        return Fails("nf-letters", "normal forms use different letter multisets")
    i = next(i for i, (a, b) in enumerate(zip(w1, w2)) if a != b)
    return Fails("nf-position", f"normal forms first differ at letter {i}")


def denote_finite(t):
    """Explicit chain 0 < 1 < ... < n-1 for a term denoting a finite order."""
    w = _norm(as_term(t))
    if len(w) == 1 and isinstance(w[0], Fin):
        return tuple(range(w[0].n))
    raise InfiniteTerm(f"{show(word_term(w))} is infinite")


def finite_size(t):
    w = _norm(as_term(t))
    if len(w) == 1 and isinstance(w[0], Fin):
        return w[0].n
    return None


@dataclass(frozen=True)
class ColouredFinite:
    colours: tuple

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(self.colours))
        if not self.colours:
            raise ValueError("coloured orders are nonempty")

    def __len__(self):
        return len(self.colours)

    def __str__(self):
        return "[" + ",".join(map(str, self.colours)) + "]"


# --- the fixed labelling of the rationals -------------------------------------
#
# Positive rationals are indexed along the Calkin-Wilf tree (root 1/1, left
# child a/(a+b), right child (a+b)/b, breadth-first from 1).  The label of
# a rational is 1 for 0, 2k for the k-th positive rational and 2k+1 for its
# negative.  This is a bijection from Q onto {1, 2, 3, ...}.


def _cw_index(q):
    a, b = q.numerator, q.denominator
    bits = []
    while (a, b) != (1, 1):
        if a < b:
            bits.append("0")
            b -= a
        else:
            bits.append("1")
            a -= b
    return int("1" + "".join(reversed(bits)), 2)


def _cw_rational(k):
    a, b = 1, 1
    for bit in bin(k)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def rational_label(q):
    q = Fraction(q)
    if q == 0:
        return 1
    return 2 * _cw_index(abs(q)) + (q < 0)


def label_rational(n):
    if n < 1:
        raise ValueError("labels are positive")
    if n == 1:
        return Fraction(0)
    q = _cw_rational(n // 2)
    return -q if n % 2 else q
