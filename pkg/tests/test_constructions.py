import random
from fractions import Fraction

import pytest

from linord.classes import FinCls, LeN, LtOrd, One, ScatCls
from linord.constructions import (
    BadGamma,
    PreconditionError,
    agreement_index,
    colour_index,
    e1_decide,
    gen_interval_shuffle,
    gen_shuffle_family,
    phi_coloured,
    phi_cong,
    phi_e1,
    phi_fin_zeta,
    phi_fractal,
    phi_succ,
    phi_threshold,
    zeta_label,
)
from linord.engine import biembeds, coloured_l_convex_embeds, l_convex_embeds
from linord.ordinals import parse_ordinal
from linord.terms import ETA, iso_check, normalize, parse_term, show

from oracles import random_sequence, tail_equal

T, P = parse_term, parse_ordinal


def test_phi_cong_shape():
    assert show(phi_cong(T("w"), ETA)) == "(1+z*w+1)*q"


def test_phi_cong_verdicts():
    a, b = phi_cong(T("w"), ETA), phi_cong(T("w+1"), ETA)
    assert biembeds(FinCls(), a, a).holds
    assert l_convex_embeds(FinCls(), a, b).fails
    assert l_convex_embeds(One(), b, a).fails


def test_phi_succ():
    c = LtOrd(P("w+1"))
    assert l_convex_embeds(c, phi_succ(T("z*3")), phi_succ(T("z+1+z*2"))).holds
    # z*3 goes into (z+1)*3 with three pieces, so the images are related too
    assert l_convex_embeds(FinCls(), T("z*3"), T("(z+1)*3")).holds
    assert l_convex_embeds(c, phi_succ(T("z*3")), phi_succ(T("(z+1)*3"))).holds
    # with at most two pieces the pre-images are unrelated, and so are the images
    assert l_convex_embeds(LeN(2), T("z*3"), T("(z+1)*3")).fails


def test_phi_succ_matches_on_random_pairs():
    rng = random.Random(5)
    pool = ["1", "2", "w", "w*", "z", "z+1", "q"]
    words = [T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 4)))) for _ in range(200)]
    decided = 0
    for i, a in enumerate(words):
        b = words[(7 * i + 3) % len(words)]
        v1 = l_convex_embeds(LtOrd(P("w")), a, b)
        v2 = l_convex_embeds(LtOrd(P("w+1")), phi_succ(a), phi_succ(b))
        if v1.decided and v2.decided:
            decided += 1
            assert v1.kind == v2.kind, (show(a), show(b))
    assert decided > 150


def test_phi_fractal():
    # t0 = 1 would vanish, since q+1+q is q
    a = phi_fractal(T("w"), T("2"), P("w"))
    b = phi_fractal(T("w+1"), T("2"), P("w"))
    assert show(normalize(a)) == "(shuffle(w)+q+2+q)*w"
    assert l_convex_embeds(One(), a, b).holds
    assert l_convex_embeds(One(), b, a).fails
    with pytest.raises(PreconditionError):
        phi_fractal(T("w"), T("z"), P("w"))


def test_phi_threshold():
    t = phi_threshold(T("w"), P("w"))
    assert normalize(t.summand(0)) == normalize(T("q+z*w"))
    assert normalize(t.summand(2)) == normalize(T("shuffle(2)+z*w"))
    with pytest.raises(ValueError):
        t.summand(P("w"))
    with pytest.raises(BadGamma):
        phi_threshold(T("w"), P("w*2"))
    with pytest.raises(BadGamma):
        phi_threshold(T("w"), P("w^4"))


def test_phi_fin_zeta():
    t = phi_fin_zeta(T("2"))
    assert normalize(t.summand(0)) == normalize(T("shuffle(1)+z*2"))
    assert sorted(zeta_label(z) for z in range(-5, 6)) == list(range(1, 12))


def test_phi_coloured():
    assert normalize(phi_coloured("ab")) == normalize(T("shuffle(3)+q+shuffle(4)+q"))
    assert colour_index("a") == 1 and colour_index(4) == 4
    with pytest.raises(ValueError):
        colour_index("ab")


@pytest.mark.parametrize("s, s2", [("a", "bab"), ("ab", "ba"), ("ab", "acb"), ("aa", "aba")])
def test_phi_coloured_matches_coloured_relation(s, s2):
    for c in [One(), FinCls()]:
        want = coloured_l_convex_embeds(c, s, s2).kind
        assert l_convex_embeds(c, phi_coloured(s), phi_coloured(s2)).kind == want


def test_e1_examples():
    assert e1_decide(([5], 1), ([7], 1)).holds
    assert e1_decide(([1], 2), ([1], 3)).fails
    assert e1_decide(([], 1), ([], 1)).holds
    assert agreement_index(([5, 2], 1), ([7], 1)) == 2
    v = e1_decide(([5, 2], 1), ([7], 1))
    assert v.witness.index_order.n == 6


def test_e1_against_tail_comparison():
    rng = random.Random(17)
    for _ in range(300):
        x, y = random_sequence(rng), random_sequence(rng)
        if rng.random() < 0.4:
            y = (y[0], x[1])
        assert e1_decide(x, y).holds is tail_equal(x, y)


def test_e1_summands():
    e = phi_e1(([Fraction(1, 2)], 3))
    assert normalize(e.summand(0)) == normalize(T("ishuffle(-1,0)+ishuffle(1/2,3/2)"))
    assert normalize(e.summand(4)) == normalize(T("ishuffle(-5,-4)+ishuffle(3,4)"))


def test_generators():
    evens, odds = gen_shuffle_family("|01"), gen_shuffle_family("|10")
    assert l_convex_embeds(FinCls(), evens, odds).fails
    assert l_convex_embeds(ScatCls(), evens, evens).holds
    assert l_convex_embeds(FinCls(), gen_interval_shuffle(0, 1), gen_interval_shuffle(0, 2)).holds
    assert l_convex_embeds(FinCls(), gen_interval_shuffle(0, 2), gen_interval_shuffle(1, 3)).fails
    with pytest.raises(ValueError):
        gen_interval_shuffle(2, 1)
    with pytest.raises(ValueError):
        gen_shuffle_family("1|0")


def test_interval_shuffles_follow_inclusion():
    rng = random.Random(23)
    for _ in range(200):
        a, b = sorted(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2))
        c, d = sorted(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2))
        if a == b or c == d:
            continue
        v = l_convex_embeds(FinCls(), gen_interval_shuffle(a, b), gen_interval_shuffle(c, d))
        assert v.holds is (c <= a and b <= d)


def test_cong_images_iso_exactly_when_preimages_are():
    words = ["1", "2", "w", "w*", "z", "w+1", "z+1", "1+w*", "w+w*"]
    for x in words:
        for y in words:
            same = iso_check(T(x), T(y)).holds
            v = biembeds(One(), phi_cong(T(x), ETA), phi_cong(T(y), ETA))
            assert v.holds is same
