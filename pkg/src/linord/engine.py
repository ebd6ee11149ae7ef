"""Deciders for embeddability (<=), convex embeddability and L-convex
embeddability on block words.

All verdicts are sound.  A Fails verdict is only returned when the search
that failed is complete for the words involved: sources made of the core
letters n, w, w*, z and targets made of core letters, shuffles with core
labels and interval shuffles.  Anything else that the searches cannot
place comes back Unknown.

Target positions
----------------
A search walks the target left to right.  Its state is a pair ``(j, rem)``:
letters before ``j`` are used up, and ``rem`` says how much of letter ``j``
is still free:

* ``None``: all of it;
* an int m: the last m points of a finite letter;
* ``FINU``: an arbitrarily large finite final part of w*;
* ``TAIL``: a final part of z, a copy of w;
* an Ordinal: the final part of an ordinal letter of that type.

Larger free parts are better, so each search keeps the best state only.
"""

from __future__ import annotations

from itertools import product as _cartesian

from .classes import (
    ScatCls,
    ccs_check,
    finite_members,
    max_finite,
    member,
    only_finite,
    ordinal_bound,
    well_type,
    within_scat,
    within_wo,
)
from .ordinals import OMEGA, Ordinal, left_sub, omega_pow
from .terms import (
    ETA,
    ColouredFinite,
    Fin,
    IntervalShuffle,
    Omega,
    OmegaStar,
    OrdTerm,
    Product,
    Rev,
    Shuffle,
    Zeta,
    _letter_scattered,
    _norm,
    _reduce,
    as_term,
    is_well_word,
    iso_check,
    letters,
    ordinal_word,
    reverse_letter,
    show,
    word_term,
)
from .verdict import Fails, Holds, Unknown, Verdict, Witness, both
from .zcalc import NotScattered, embeds_zpow, structural_rank

__all__ = [
    "Verdict",
    "Witness",
    "embeds",
    "convex_embeds",
    "l_convex_embeds",
    "biembeds",
    "coloured_l_convex_embeds",
    "transitivity_probe",
    "piece_search",
    "pieces_either_way",
]

FINU = "finu"
TAIL = "tail"
CORE = (Fin, Omega, OmegaStar, Zeta)


def _word(t):
    return _norm(as_term(t))


def _show_word(w):
    return show(word_term(w))


def _is_dense(x):
    if isinstance(x, (Shuffle, IntervalShuffle)):
        return True
    return not _letter_scattered(x)


def _better(r1, r2):
    """The state with the larger free final part (r2 may be None)."""
    if r2 is None:
        return r1
    if r1[0] != r2[0]:
        return r1 if r1[0] < r2[0] else r2
    a, b = r1[1], r2[1]
    if a is None:
        return r1
    if b is None:
        return r2
    if isinstance(a, (int, Ordinal)) and isinstance(b, (int, Ordinal)):
        return r1 if a >= b else r2
    return r1


def _exact_target(word):
    for x in word:
        if isinstance(x, (*CORE, IntervalShuffle)):
            continue
        if isinstance(x, Shuffle):
            if x.labels.is_periodic:
                continue
            if all(all(isinstance(y, CORE) for y in letters(s)) for s in x.labels.labels):
                continue
        return False
    return True


def _exact_source(word):
    return all(isinstance(x, CORE) for x in word)


# --- placing one convex piece ----------------------------------------------------


def _inside(p, x, rem, a):
    """States after a single-letter piece p placed inside letter x."""
    if isinstance(x, Fin):
        r = x.n if rem is None else rem
        if isinstance(p, Fin) and p.n <= r:
            return (a, r - p.n) if p.n < r else (a + 1, None)
        return None
    if isinstance(x, Omega):
        if isinstance(p, Fin):
            return (a, None)
        if isinstance(p, Omega):
            return (a + 1, None)
        return None
    if isinstance(x, OmegaStar):
        if isinstance(p, Fin) or (isinstance(p, OmegaStar) and rem is None):
            return (a, FINU)
        return None
    if isinstance(x, Zeta):
        if isinstance(p, Fin):
            return (a, TAIL)
        if isinstance(p, Omega):
            return (a + 1, None)
        if rem is None and isinstance(p, OmegaStar):
            return (a, TAIL)
        if rem is None and isinstance(p, Zeta):
            return (a + 1, None)
        return None
    if isinstance(x, IntervalShuffle):
        if isinstance(p, Fin):
            return (a, None)
        if isinstance(p, IntervalShuffle) and x.lo <= p.lo and p.hi <= x.hi:
            return (a + 1, None)
        return None
    if isinstance(x, OrdTerm) and rem is None and isinstance(p, (Fin, Omega)):
        # x is at least w^2, so n + x and w + x are x again
        return (a, None)
    if p == x and rem is None:
        return (a + 1, None)
    return None


def _head_ok(p, x, rem):
    """Whether p is a final segment of the free part of letter x."""
    if isinstance(x, Fin):
        return isinstance(p, Fin) and p.n <= (x.n if rem is None else rem)
    if isinstance(x, Omega):
        return isinstance(p, Omega)
    if isinstance(x, OmegaStar):
        return isinstance(p, Fin) or (isinstance(p, OmegaStar) and rem is None)
    if isinstance(x, Zeta):
        return isinstance(p, Omega) or (isinstance(p, Zeta) and rem is None)
    return p == x and rem is None


def _tail_state(p, y, b):
    """State after a piece ends with p, an initial segment of letter y."""
    if isinstance(y, Fin):
        if isinstance(p, Fin) and p.n <= y.n:
            return (b, y.n - p.n) if p.n < y.n else (b + 1, None)
        return None
    if isinstance(y, Omega):
        if isinstance(p, Fin):
            return (b, None)
        return (b + 1, None) if isinstance(p, Omega) else None
    if isinstance(y, OmegaStar):
        return (b, FINU) if isinstance(p, OmegaStar) else None
    if isinstance(y, Zeta):
        if isinstance(p, OmegaStar):
            return (b, TAIL)
        return (b + 1, None) if isinstance(p, Zeta) else None
    if isinstance(y, Shuffle) and p == y:
        # cut at an irrational point: the initial part is a copy of y again
        return (b, None)
    return (b + 1, None) if p == y else None


def _in_shuffle(piece, x, ctx):
    if piece == (x,):
        return True
    if not all(_letter_scattered(p) for p in piece):
        return False
    if x.labels.is_periodic:
        return len(piece) == 1 and isinstance(piece[0], Fin)
    for lab in x.labels.labels:
        v = _convex_words(piece, letters(lab), ctx)
        if v:
            return True
    return False


def _place(piece, target, state, ctx):
    """Best state after placing ``piece`` convexly at or after ``state``,
    together with the letter span used, or None."""
    key = (piece, target, state)
    if key in ctx.cache:
        return ctx.cache[key]
    j0, rem0 = state
    best, span = None, None
    r = len(piece) - 1
    for a in range(j0, len(target)):
        if best is not None and best[0] <= a:
            break
        rem = rem0 if a == j0 else None
        x = target[a]
        cands = []
        if isinstance(x, Shuffle):
            if _in_shuffle(piece, x, ctx):
                cands.append(((a, None), (a, a)))
        elif r == 0:
            s = _inside(piece[0], x, rem, a)
            if s is not None:
                cands.append((s, (a, a)))
        if r >= 1 and a + r < len(target) and _head_ok(piece[0], x, rem):
            b = a + r
            if tuple(target[a + 1 : b]) == piece[1:-1]:
                s = _tail_state(piece[-1], target[b], b)
                if s is not None:
                    cands.append((s, (a, b)))
        for s, sp in cands:
            if _better(s, best) is s:
                best, span = s, sp
    out = None if best is None else (best, span)
    ctx.cache[key] = out
    return out


class _Ctx:
    def __init__(self):
        self.cache = {}


def _convex_words(src, dst, ctx):
    """src convex in dst for a scattered src, by a one-piece search."""
    return _place(src, tuple(dst), (0, None), ctx) is not None


# --- splitting the source into pieces -----------------------------------------------


def _cut_points(word):
    """Positions where a piece may start or end, in order."""
    pts = []
    for i, x in enumerate(word):
        pts.append((i, 0))
        if isinstance(x, Fin):
            pts.extend((i, k) for k in range(1, x.n))
        elif isinstance(x, Zeta):
            # z splits only as w* | w; any finite middle can be absorbed
            pts.append((i, 1))
    pts.append((len(word), 0))
    return pts


def _segment(word, p, q):
    out = []
    for i in range(p[0], min(q[0] + 1, len(word))):
        x = word[i]
        s = p[1] if i == p[0] else 0
        if isinstance(x, Fin):
            e = q[1] if i == q[0] else x.n
            if e > s:
                out.append(Fin(e - s))
        elif isinstance(x, Zeta):
            e = q[1] if i == q[0] else 2
            part = {(0, 2): Zeta(), (0, 1): OmegaStar(), (1, 2): Omega()}.get((s, e))
            if part is not None:
                out.append(part)
        elif i < q[0] or (i == q[0] and q[1] > 0):
            out.append(x)
    return _reduce(tuple(out))


def _describe(word, pts, x, y):
    return f"{pts[x]}..{pts[y]}: {_show_word(_segment(word, pts[x], pts[y]))}"


def piece_search(src, dst, max_pieces=None, scat_class=False):
    """Search for a partition of src into at most ``max_pieces`` convex
    pieces (None: no bound) with ordered convex images in dst.

    A source made only of shuffle letters is searched completely when the
    index orders are scattered (``scat_class``): some piece must then
    contain an open interval of each letter, and its convex image is a
    whole letter of the target with the same labels.

    Returns (pieces or None, exact) where pieces is a list of
    ``(source description, target letter span)``.
    """
    ctx = _Ctx()
    src, dst = tuple(src), tuple(dst)
    pts = _cut_points(src)
    n = len(pts) - 1
    cap = n if max_pieces is None else min(max_pieces, n)
    # best[x][c]: best target state after covering up to cut x with c pieces
    best = [dict() for _ in range(n + 1)]
    best[0][0] = ((0, None), None)
    for x in range(n):
        for c, (state, _) in list(best[x].items()):
            if c >= cap:
                continue
            for y in range(x + 1, n + 1):
                piece = _segment(src, pts[x], pts[y])
                if not piece:
                    continue
                placed = _place(piece, dst, state, ctx)
                if placed is None:
                    continue
                new, span = placed
                key = c + 1 if max_pieces is not None else 0
                old = best[y].get(key)
                if old is None or _better(new, old[0]) is new and new != old[0]:
                    best[y][key] = (new, (x, c, span))
    shuffles_only = all(isinstance(x, Shuffle) for x in src)
    exact = (_exact_source(src) or (scat_class and shuffles_only)) and _exact_target(dst)
    if not best[n]:
        return None, exact
    c = min(best[n])
    pieces = []
    y = n
    while y > 0:
        _, (x, cprev, span) = best[y][c]
        pieces.append((_describe(src, pts, x, y), f"letters {span[0]}..{span[1]}"))
        y, c = x, cprev
    return pieces[::-1], exact


def _rev_word(word):
    return _reduce(tuple(reverse_letter(x) for x in reversed(word)))


def pieces_either_way(src, dst, max_pieces=None, scat_class=False):
    """piece_search on the words and then on their reversals.

    A finite index order is its own reverse, so a partition of the reversed
    source is one of the source read backwards.  Ordinal letters only have
    convex placements worked out in the forward direction, which is why the
    second pass finds things like the last w* block of rev(w^2).
    """
    pieces, exact = piece_search(src, dst, max_pieces, scat_class)
    if pieces is not None:
        return pieces, exact
    rp, rexact = piece_search(_rev_word(src), _rev_word(dst), max_pieces, scat_class)
    if rp is not None:
        return [(f"reversed {a}", f"reversed {b}") for a, b in rp], True
    return None, exact or rexact


def _unroll(word, copies):
    """Replace each letter A*B, with B one of w, w*, z or an infinite ordinal,
    by `copies` consecutive copies of A.  Those copies form a convex part of
    A*B, so anything found in the result is found in the word; the converse
    fails, so only positive answers may come from here.  None if no letter
    unrolls."""
    out, changed = [], False
    for x in word:
        if isinstance(x, Product) and (
            isinstance(x.right, (Omega, OmegaStar, Zeta))
            or (isinstance(x.right, OrdTerm) and not x.right.alpha.is_finite())
        ):
            out.extend(letters(x.left) * copies)
            changed = True
        else:
            out.append(x)
    return _reduce(tuple(out)) if changed else None


# --- embeddability -------------------------------------------------------------------


def _chunks(x):
    """Split a well-ordered letter into additively indecomposable parts."""
    if isinstance(x, Omega):
        return [OMEGA]
    if isinstance(x, Fin):
        return [Ordinal.of(1)] * x.n
    out = []
    for e, c in x.alpha.terms:
        out += [omega_pow(e)] * c
    return out


def _host_chunk(chunk, x, rem):
    """Host an ordinal chunk at the start of the free part of letter x.

    Returns the new free part, NEXT when the letter is used up, or MISS.
    """
    if isinstance(x, Fin):
        if chunk != 1:
            return MISS
        r = (x.n if rem is None else rem) - 1
        return r if r > 0 else NEXT
    if isinstance(x, Omega):
        return None if chunk == 1 else (NEXT if chunk == OMEGA else MISS)
    if isinstance(x, OmegaStar):
        return FINU if chunk == 1 else MISS
    if isinstance(x, Zeta):
        if chunk == 1:
            return TAIL
        return NEXT if chunk == OMEGA else MISS
    if isinstance(x, OrdTerm):
        free = x.alpha if rem is None else rem
        if chunk > free:
            return MISS
        left = left_sub(chunk, free)
        if left.is_zero():
            return NEXT
        return None if left == x.alpha else left
    return MISS


NEXT, MISS = "next", "miss"
_KNOWN = (*CORE, OrdTerm)


def _greedy(src, dst):
    """Place source letters left to right at the earliest possible spot.

    Returns (ok, exact); a failure is conclusive only when exact is set.
    """
    exact = True
    j, rem = 0, None
    dense_at = [i for i, x in enumerate(dst) if _is_dense(x)]

    def dense_ahead():
        return any(d >= j for d in dense_at)

    def host(chunk):
        # move (j, rem) past the earliest spot hosting the chunk
        nonlocal j, rem, exact
        while j < len(dst):
            y = dst[j]
            if _is_dense(y):
                return True
            r = _host_chunk(chunk, y, rem)
            if r == MISS:
                if not isinstance(y, _KNOWN):
                    exact = False
                j, rem = j + 1, None
                continue
            j, rem = (j + 1, None) if r == NEXT else (j, r)
            return True
        return False

    for x in src:
        if j < len(dst) and _is_dense(dst[j]):
            return True, exact
        if isinstance(x, (Fin, Omega, OrdTerm)):
            for chunk in _chunks(x):
                if not host(chunk):
                    return False, exact
                if j < len(dst) and _is_dense(dst[j]):
                    return True, exact
            continue
        if isinstance(x, (OmegaStar, Zeta)):
            while j < len(dst):
                y = dst[j]
                if _is_dense(y):
                    return True, exact
                if rem is None and isinstance(y, (OmegaStar, Zeta)):
                    rem = FINU if isinstance(y, OmegaStar) else TAIL
                    break
                if not isinstance(y, _KNOWN):
                    exact = False
                j, rem = j + 1, None
            else:
                return False, exact
            if isinstance(x, Zeta):
                if rem == TAIL:
                    # the w half runs through the rest of this z
                    j, rem = j + 1, None
                elif not host(OMEGA):
                    return False, exact
            continue
        if dense_ahead():
            return True, exact
        if _is_dense(x):
            return False, exact
        # a residue letter: only a literal copy of it is recognised
        while j < len(dst) and not (dst[j] == x and rem is None):
            j, rem = j + 1, None
        if j >= len(dst):
            return False, False
        j, rem = j + 1, None
    return True, exact


def embeds(t, t2):
    """Decide t <= t2 (order embeddability)."""
    s, d = _word(t), _word(t2)
    if s == d:
        return Holds("identity", "equal normal forms")
    if len(d) == 1 and isinstance(d[0], Shuffle) and d[0].labels.contains(Fin(1)):
        return Holds("universal", "q contains every countable order")
    n_s = s[0].n if len(s) == 1 and isinstance(s[0], Fin) else None
    n_d = d[0].n if len(d) == 1 and isinstance(d[0], Fin) else None
    if n_d is not None:
        if n_s is not None:
            ok = n_s <= n_d
            return (Holds if ok else Fails)("size", f"{n_s} and {n_d} points")
        return Fails("size", "an infinite order does not fit in a finite one")
    ws, wd = well_type(s), well_type(d)
    if ws is False and wd not in (None, False):
        return Fails("well-order", "the target is well ordered and the source is not")
    if ws not in (None, False) and wd not in (None, False):
        ok = ws <= wd
        return (Holds if ok else Fails)("ordinal", f"{ws} against {wd}")
    rs = tuple(reverse_letter(x) for x in reversed(s))
    rd = tuple(reverse_letter(x) for x in reversed(d))
    wrs, wrd = well_type(_reduce(rs)), well_type(_reduce(rd))
    if wrs is False and wrd not in (None, False):
        return Fails("reverse-well-order", "the target is reverse well ordered and the source is not")
    src_dense = any(_is_dense(x) for x in s if isinstance(x, (Shuffle, IntervalShuffle)))
    if src_dense and all(_letter_scattered(x) for x in d):
        return Fails("scattered", "a dense order does not embed in a scattered one")
    ok, exact = _greedy(s, d)
    if ok:
        return Holds("greedy", "letters placed left to right at the earliest spot")
    ok2, exact2 = _greedy(_reduce(rs), _reduce(rd))
    if ok2:
        return Holds("greedy-reversed", "letters placed right to left at the latest spot")
    if exact or exact2:
        return Fails("greedy", "the earliest placement runs out of target letters")
    v = _rank_fails(s, d)
    if v is not None:
        return v
    pieces, _ = pieces_either_way(s, d)
    if pieces is not None:
        return Holds("pieces", f"{len(pieces)} convex pieces embed in order")
    u = _unroll(d, len(s) + 1)
    if u is not None:
        if _greedy(s, u)[0] or _greedy(_rev_word(s), _rev_word(u))[0] or pieces_either_way(s, u)[0]:
            return Holds("unrolled", "the source fits in finitely many copies of a product's left factor")
    return Unknown("residue", "a letter outside the decided fragment blocks the search")


def _rev_ord(x):
    return isinstance(x, Rev) and isinstance(x.body, OrdTerm)


def _rank_fails(s, d):
    try:
        r = structural_rank(word_term(d))
        if r is None:
            return None
        v = embeds_zpow(word_term(s), r)
    except NotScattered:
        return None
    if v.fails:
        return Fails("rank", f"the source has Hausdorff rank above {r}")
    return None


# --- convex embeddability -------------------------------------------------------------


def convex_embeds(t, t2):
    s, d = _word(t), _word(t2)
    iso = iso_check(word_term(s), word_term(d))
    if iso.holds:
        return Holds("iso", "isomorphic", _one_piece(s, d))
    if len(s) == len(d) == 1 and all(isinstance(w[0], IntervalShuffle) for w in (s, d)):
        a, b = s[0], d[0]
        ok = b.lo <= a.lo and a.hi <= b.hi
        return (Holds if ok else Fails)("interval-inclusion", f"({a.lo},{a.hi}) inside ({b.lo},{b.hi})")
    if len(s) == 1 and isinstance(s[0], Shuffle):
        if s[0] in d:
            return Holds("shuffle-letter", "the target contains this shuffle as a letter", _one_piece(s, d))
        if _exact_target(d):
            return Fails(
                "shuffle-letter",
                "a convex copy of a shuffle is a whole shuffle letter with the same labels",
            )
        return Unknown("shuffle-residue", "the target has letters outside the fragment")
    pieces, exact = pieces_either_way(s, d, 1, scat_class=True)
    u = _unroll(d, len(s) + 1) if pieces is None else None
    if u is not None:
        pieces = pieces_either_way(s, u, 1, scat_class=True)[0]
    if pieces is not None:
        return Holds("interval", "a convex interval of the target matches", Witness(Fin(1), tuple(pieces)))
    e = embeds(word_term(s), word_term(d))
    if e.fails:
        return Fails("not-embeddable", e.reason)
    if exact:
        return Fails("interval", "no interval of the target, with trimmed end letters, matches")
    return Unknown("residue", "the interval search is incomplete here")


def _one_piece(s, d):
    return Witness(Fin(1), ((_show_word(s), _show_word(d)),))


# --- L-convex embeddability -----------------------------------------------------------


def _left_factor(word, left):
    """X with word = left * X, read off letters of the form left*y and
    literal copies of left; None when the word does not factor."""
    lw = letters(left)
    k = len(lw)
    out, i = [], 0
    while i < len(word):
        x = word[i]
        if isinstance(x, Product) and x.left == left:
            out.append(x.right)
            i += 1
        elif tuple(word[i : i + k]) == lw:
            out.append(Fin(1))
            i += k
        elif left == Omega() and isinstance(x, OrdTerm):
            out.extend(ordinal_word(_div_omega(x.alpha)))
            i += 1
        else:
            return None
    return _reduce(tuple(out))


def _div_omega(beta):
    return Ordinal([(e.predecessor() if e.is_finite() else e, c) for e, c in beta.terms])


def _fractal_left(word):
    """The left factor A when A has the shape a*q + q + L0 + q with a an
    ordinal that is not convex in L0."""
    lefts = {x.left for x in word if isinstance(x, Product)}
    for left in lefts:
        a = letters(left)
        if len(a) < 4 or a[1] != ETA or a[-1] != ETA:
            continue
        head = a[0]
        if not (isinstance(head, Shuffle) and not head.labels.is_periodic and len(head.labels.labels) == 1):
            continue
        (lab,) = head.labels.labels
        if not is_well_word(letters(lab)):
            continue
        if convex_embeds(lab, word_term(a[2:-1])).fails:
            return left
    return None


def _finite_index_suffices(c, s):
    if only_finite(c):
        return True
    if len(s) == 1 and isinstance(s[0], Fin):
        return True
    bound = ordinal_bound(c)
    if within_wo(c) and bound is not None and bound <= OMEGA + 1:
        # K is an ordinal <= w, and the piece holding the maximum is last
        last = s[-1]
        return isinstance(last, Fin)
    return False


def l_convex_embeds(c, t, t2):
    s, d = _word(t), _word(t2)
    st, dt = word_term(s), word_term(d)
    iso = iso_check(st, dt)
    if iso.holds:
        return Holds("reflexive", "isomorphic orders, K = 1", _one_piece(s, d))
    m = member(c, st)
    if m.holds:
        e = embeds(st, dt)
        if e.decided:
            return Verdict(e.kind, f"member:{e.rule}", "the source is in the class, so this is <=: " + e.reason)
    scat = within_scat(c)
    if len(s) == len(d) == 1 and all(isinstance(w[0], IntervalShuffle) for w in (s, d)):
        a, b = s[0], d[0]
        if b.lo <= a.lo and a.hi <= b.hi:
            return Holds("interval-inclusion", "a sub-interval is convex", _one_piece(s, d))
        if scat and ccs_check(c).holds:
            return Fails("interval-inclusion", f"({a.lo},{a.hi}) is not inside ({b.lo},{b.hi})")
    if scat and len(s) == 1 and isinstance(s[0], Shuffle):
        if len(d) == 1 and isinstance(d[0], Shuffle):
            if s[0].labels == d[0].labels:
                return Holds("shuffle-labels", "same label sets", _one_piece(s, d))
            if _complete_labels(s[0]) and _complete_labels(d[0]):
                return Fails("shuffle-labels", "the label sets differ up to isomorphism")
            return Unknown("shuffle-labels", "labels outside the fragment")
        v = convex_embeds(st, dt)
        return Verdict(v.kind, f"shuffle-source:{v.rule}", v.reason, v.witness)
    if d == (ETA,) and member(ScatCls(), st).holds:
        return Verdict(m.kind, f"into-q:{m.rule}", "a scattered order goes convexly into q iff it is in the class")
    for left in (Zeta(), Omega()):
        fs, fd = _left_factor(s, left), _left_factor(d, left)
        if fs and fd and (fs, fd) != (s, d):
            v = l_convex_embeds(c, word_term(fs), word_term(fd))
            return Verdict(v.kind, f"peel-{show(left)}:{v.rule}", v.reason)
    if scat:
        left = _fractal_left(s)
        if left is not None and _fractal_left(d) == left and ccs_check(c).holds:
            fs, fd = _left_factor(s, left), _left_factor(d, left)
            if fs and fd:
                v = l_convex_embeds(c, word_term(fs), word_term(fd))
                return Verdict(v.kind, f"fractal:{v.rule}", v.reason)
    e = embeds(st, dt)
    if e.fails:
        return Fails("not-embeddable", "no embedding at all: " + e.reason)
    pieces, exact = pieces_either_way(s, d, max_finite(c), scat_class=scat)
    u = _unroll(d, len(s) + 1) if pieces is None else None
    if u is not None:
        pieces = pieces_either_way(s, u, max_finite(c), scat_class=scat)[0]
    if pieces is not None:
        k = len(pieces)
        return Holds("pieces", f"{k} convex pieces", Witness(Fin(k), tuple(pieces)))
    shuffles_only = all(isinstance(x, Shuffle) for x in s)
    if exact and (_finite_index_suffices(c, s) or (scat and shuffles_only)):
        return Fails("pieces", "no partition into allowed finitely many convex pieces fits")
    return Unknown("pieces", "only finite index orders were searched")


def _complete_labels(x):
    if x.labels.is_periodic:
        return True
    from .terms import complete_word

    return all(complete_word(letters(lab), True) for lab in x.labels.labels)


def biembeds(c, t, t2):
    return both(l_convex_embeds(c, t, t2), l_convex_embeds(c, t2, t), "bi")


# --- finite coloured orders -----------------------------------------------------------


def _colours(s):
    return tuple(s.colours) if isinstance(s, ColouredFinite) else tuple(s)


def coloured_l_convex_embeds(c, s, s2):
    """Exact decision for finite coloured chains by a DP over cut points."""
    a, b = _colours(s), _colours(s2)
    allowed = finite_members(c, len(a))
    if not allowed:
        return Fails("coloured", "the class has no finite members")
    cap = max(allowed)
    # best[i][k]: least end position in b after placing a[:i] in k pieces
    inf = len(b) + 1
    best = [[inf] * (cap + 1) for _ in range(len(a) + 1)]
    back = {}
    best[0][0] = 0
    for i in range(len(a)):
        for k in range(cap):
            pos = best[i][k]
            if pos == inf:
                continue
            for e in range(i + 1, len(a) + 1):
                piece = a[i:e]
                at = _find(b, piece, pos)
                if at is None:
                    break
                end = at + len(piece)
                if end < best[e][k + 1]:
                    best[e][k + 1] = end
                    back[(e, k + 1)] = (i, at)
    for k in range(1, cap + 1):
        if best[len(a)][k] != inf:
            emb, pieces = [0] * len(a), []
            e, kk = len(a), k
            while e > 0:
                i, at = back[(e, kk)]
                for off in range(e - i):
                    emb[i + off] = at + off
                pieces.append(((i, e), (at, at + e - i)))
                e, kk = i, kk - 1
            w = Witness(Fin(k), tuple(pieces[::-1]), tuple(emb))
            return Holds("coloured", f"{k} convex pieces", w)
    return Fails("coloured", f"no partition into at most {cap} pieces has convex colour-matching images")


def _find(hay, needle, start):
    n = len(needle)
    for p in range(start, len(hay) - n + 1):
        if hay[p : p + n] == needle:
            return p
    return None


# --- transitivity ---------------------------------------------------------------------


def transitivity_probe(c, corpus):
    terms = [as_term(t) for t in corpus]
    rel = {}
    for i, j in _cartesian(range(len(terms)), repeat=2):
        rel[i, j] = l_convex_embeds(c, terms[i], terms[j])
    out = []
    for i, j, k in _cartesian(range(len(terms)), repeat=3):
        if rel[i, j].holds and rel[j, k].holds and rel[i, k].fails:
            out.append((terms[i], terms[j], terms[k]))
    return out
