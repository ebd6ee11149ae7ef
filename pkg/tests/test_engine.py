import random

import pytest

from linord.classes import FinCls, LeN, LinCls, LtOrd, One, ScatCls, WOCls, member
from linord.engine import (
    biembeds,
    coloured_l_convex_embeds,
    convex_embeds,
    embeds,
    l_convex_embeds,
    transitivity_probe,
)
from linord.ordinals import parse_ordinal
from linord.terms import ETA, Fin, Omega, OmegaStar, Product, Zeta, parse_term

from oracles import naive_min_pieces

T = parse_term

CORPUS = [T(x) for x in ["z*3", "z+1+z*2", "(z+1)*3"]]


@pytest.mark.parametrize(
    "a, b, want",
    [
        (Omega(), Zeta(), True),
        (OmegaStar(), Omega(), False),
        (Product(Zeta(), Fin(3)), ETA, True),
        (T("z*3"), T("q"), True),
        (T("w^2"), T("w*5"), False),
        (T("w*2"), T("z+w"), True),
        (T("w*3"), T("z+w"), False),
        (T("z"), T("w+w*"), False),
        (T("3"), T("2"), False),
    ],
)
def test_embeds(a, b, want):
    assert embeds(a, b).as_bool() is want


@pytest.mark.parametrize(
    "a, b, want",
    [
        (Zeta(), T("z+1"), True),
        (T("z*2"), T("z+1+z"), False),
        (ETA, T("2*q"), False),
        (T("w"), T("w*+w+3"), True),
        (T("w"), T("w*+1+w*"), False),
        (T("w+2"), T("w*+w+3"), True),
        (T("3"), T("w"), True),
    ],
)
def test_convex_embeds(a, b, want):
    assert convex_embeds(a, b).as_bool() is want


def test_l_convex_examples():
    assert l_convex_embeds(LeN(2), T("z*3"), T("z+1+z*2")).holds
    assert l_convex_embeds(LeN(2), T("z*3"), T("(z+1)*3")).fails
    assert l_convex_embeds(ScatCls(), T("w*2"), ETA).holds
    assert l_convex_embeds(FinCls(), T("z*3"), T("(z+1)*3")).holds


def test_l_convex_witness_counts_pieces():
    v = l_convex_embeds(LeN(2), T("z*3"), T("z+1+z*2"))
    assert v.witness is not None and v.witness.index_order == Fin(2)
    assert len(v.witness.pieces) == 2


def test_biembeds_examples():
    assert biembeds(FinCls(), Zeta(), Zeta()).holds
    assert biembeds(One(), Omega(), T("w+1")).fails
    assert biembeds(LeN(2), T("z*3"), T("(z+1)*3")).fails


def test_coloured_examples():
    assert coloured_l_convex_embeds(One(), "a", "bab").holds
    assert coloured_l_convex_embeds(One(), "ab", "acb").fails
    v = coloured_l_convex_embeds(FinCls(), "ab", "acb")
    assert v.holds and v.witness.index_order == Fin(2)


def _check_coloured_witness(s, s2, w):
    emb = w.embedding
    assert len(emb) == len(s)
    assert all(s[i] == s2[emb[i]] for i in range(len(s)))
    assert all(emb[i] < emb[i + 1] for i in range(len(s) - 1))
    covered = []
    for (a, b), (lo, hi) in w.pieces:
        covered.extend(range(a, b))
        assert [emb[i] for i in range(a, b)] == list(range(lo, hi))
    assert covered == list(range(len(s)))


def test_coloured_witnesses_on_random_pairs():
    rng = random.Random(12)
    for _ in range(2000):
        s = [rng.randrange(3) for _ in range(rng.randint(1, 5))]
        s2 = [rng.randrange(3) for _ in range(rng.randint(1, 7))]
        for c, cap in [(One(), 1), (LeN(2), 2), (FinCls(), None)]:
            v = coloured_l_convex_embeds(c, s, s2)
            m = naive_min_pieces(s, s2)
            assert v.holds is (m is not None and (cap is None or m <= cap))
            if v.holds:
                _check_coloured_witness(s, s2, v.witness)


def test_transitivity_probe_examples():
    assert transitivity_probe(LeN(2), CORPUS) == [tuple(CORPUS)]
    assert transitivity_probe(FinCls(), CORPUS) == []
    rng = random.Random(1)
    words = [T("+".join(rng.choice(["1", "w", "w*", "z", "2"]) for _ in range(3))) for _ in range(15)]
    assert transitivity_probe(One(), words) == []


def test_no_transitivity_family():
    # the middle term needs n pieces from each side, the outer pair 2n-1
    for n in range(2, 6):
        a = T(f"z*{2 * n - 1}")
        b = T(f"(z+1)*{n - 1}+z*{n}")
        c = T(f"(z+1)*{2 * n - 1}")
        got = [l_convex_embeds(LeN(n), x, y).kind for x, y in [(a, b), (b, c), (a, c)]]
        assert got == ["holds", "holds", "fails"]


def test_fact_basic_for_members():
    rng = random.Random(21)
    pool = ["1", "2", "w", "w*", "z", "q", "w^2"]
    for c in [FinCls(), LtOrd(parse_ordinal("w^2")), WOCls(), ScatCls(), LinCls()]:
        for _ in range(150):
            a = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 3))))
            b = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 3))))
            if member(c, a).holds:
                v, e = l_convex_embeds(c, a, b), embeds(a, b)
                if v.decided and e.decided:
                    assert v.kind == e.kind


def test_non_member_index_forces_convexity():
    # if t*m goes L-convexly into t' with m outside the class, t goes convexly into t'
    rng = random.Random(31)
    pool = ["1", "2", "w", "w*", "z", "z+1"]
    seen = 0
    for _ in range(300):
        t = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 2))))
        m = rng.choice([T("w"), T("z"), T("w*")])
        tm = Product(t, m)
        t2 = T("+".join(rng.choice(pool + ["z*w", "(z+1)*w"]) for _ in range(rng.randint(1, 3))))
        for c in [One(), FinCls(), LeN(2)]:
            if member(c, m).fails and l_convex_embeds(c, tm, t2).holds:
                seen += 1
                assert not convex_embeds(t, t2).fails
    assert seen > 0


def test_antichain_of_constant_shuffles():
    labels = ["1", "2", "w", "w*", "z", "w+1", "z+1"]
    family = [T(f"shuffle({x})") for x in labels]
    for c in [One(), FinCls(), ScatCls()]:
        for i, a in enumerate(family):
            for j, b in enumerate(family):
                if i != j:
                    assert l_convex_embeds(c, a, b).fails
