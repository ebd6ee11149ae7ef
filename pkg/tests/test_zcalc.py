import random

import pytest

from linord.engine import embeds
from linord.ordinals import parse_ordinal
from linord.terms import ETA, Fin, OrdTerm, Zeta, iso_check, normalize, parse_term
from linord.zcalc import (
    BoundExceeded,
    NotScattered,
    embeds_zpow,
    hausdorff_rank,
    ordinal_rank,
    z_expand,
)

T = parse_term


def test_z_expand_small():
    assert z_expand(0) == Fin(1)
    assert iso_check(z_expand(1), Zeta()).holds
    assert iso_check(z_expand(2), T("rev(z*w)+z+z*w")).holds


def test_z_expand_bound():
    with pytest.raises(BoundExceeded):
        z_expand(5)
    with pytest.raises(BoundExceeded):
        z_expand(parse_ordinal("w*2"), bound=parse_ordinal("w*3"))


@pytest.mark.parametrize(
    "term, gamma, want",
    [("w*2", 1, False), ("w*2", 2, True), ("z", 1, True), ("1", 0, True), ("z+1+z", 1, False)],
)
def test_embeds_zpow_examples(term, gamma, want):
    assert embeds_zpow(T(term), gamma).as_bool() is want


def test_embeds_zpow_rejects_dense():
    with pytest.raises(NotScattered):
        embeds_zpow(ETA, 3)


@pytest.mark.parametrize("term, want", [("1", 0), ("z", 1), ("w^2", 2), ("zpow(2)", 2), ("z*3", 2), ("w", 1)])
def test_rank_examples(term, want):
    assert hausdorff_rank(T(term)) == want


def test_rank_of_expansions():
    for g in range(5):
        assert hausdorff_rank(z_expand(g)) == g


def test_ordinal_rank():
    assert ordinal_rank(1) == 0
    assert ordinal_rank(5) == 1
    assert ordinal_rank(parse_ordinal("w")) == 1
    assert ordinal_rank(parse_ordinal("w+1")) == 2
    assert ordinal_rank(parse_ordinal("w^3")) == 3


def test_zpow_monotone_on_samples():
    rng = random.Random(2)
    pool = ["1", "2", "w", "w*", "z", "w^2", "z*2", "(z+1)*3", "rev(w^2)", "w*3"]
    for _ in range(200):
        t = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 4))))
        seen = False
        for g in range(5):
            v = embeds_zpow(t, g)
            if seen:
                assert v.holds
            seen = seen or v.holds


def test_rank_monotone_along_embeddings():
    rng = random.Random(4)
    pool = ["1", "2", "w", "w*", "z", "w^2", "z*2", "(z+1)*2"]
    checked = 0
    for _ in range(400):
        a = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 3))))
        b = T("+".join(rng.choice(pool) for _ in range(rng.randint(1, 3))))
        if embeds(a, b).holds:
            assert hausdorff_rank(a) <= hausdorff_rank(b)
            checked += 1
    assert checked > 50


def test_ordinal_terms_against_bound():
    rng = random.Random(9)
    for _ in range(300):
        a = parse_ordinal("+".join(f"w^{e}*{rng.randint(1, 3)}" for e in sorted(rng.sample(range(4), rng.randint(1, 3)), reverse=True)))
        g = rng.randrange(5)
        assert embeds_zpow(OrdTerm(a), g).as_bool() is (a <= parse_ordinal(f"w^{g}"))
    assert normalize(OrdTerm(parse_ordinal("3"))) == Fin(3)
