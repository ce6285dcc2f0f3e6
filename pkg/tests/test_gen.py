from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from mixpoint import serialize as ser
from mixpoint.core import InputError, is_t0, validate
from mixpoint.gen import GenConfig, gen_instance, gen_multimap, gen_selfmap, gen_space, relax

BS = (Q(1), Q(3, 2), Q(2))


def test_all_zero_density():
    space = gen_space(GenConfig(n=4, zero_density=1.0))
    assert all(v == 0 for row in space.dist for v in row)
    assert validate(space).ok and not space.t0


def test_overrides_reproduce_two_point_space():
    cfg = GenConfig(n=2, overrides=((0, 1, Q(0)), (1, 0, Q(1))))
    space = gen_space(cfg)
    assert space.dist == ((0, 0), (1, 0))


@pytest.mark.parametrize("b", BS)
def test_thousand_draws_validate(b):
    for seed in range(1000):
        space = gen_space(GenConfig(n=1 + seed % 8, b=b, seed=seed))
        assert validate(space).ok


def test_t0_request():
    for seed in range(200):
        space = gen_space(GenConfig(n=5, seed=seed, require_t0=True, zero_density=0.4))
        assert space.t0


def test_asymmetric_zero_request():
    for seed in range(200):
        space = gen_space(GenConfig(n=4, seed=seed, force_asymmetric_zero=True))
        assert any(space.d(x, y) == 0 < space.d(y, x) for x in space.points for y in space.points)


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 12), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=200)
@given(raw=matrices, b=st.sampled_from(BS))
def test_closure_sound_and_idempotent(raw, b):
    n = len(raw)
    start = [[Q(0) if i == j else Q(raw[i][j], 6) for j in range(n)] for i in range(n)]
    out = relax([row[:] for row in start], b)
    assert all(out[i][j] <= start[i][j] for i in range(n) for j in range(n))
    assert all(out[i][k] <= b * (out[i][j] + out[j][k]) for i in range(n) for j in range(n) for k in range(n))
    again = relax([row[:] for row in out], b)
    assert again == out


def test_cap_one_single_valued():
    for seed in range(200):
        cfg = GenConfig(n=5, seed=seed, cap=1)
        space, F, _ = gen_instance(cfg)
        assert all(len(F(x)) == 1 for x in space.points)


def test_multimap_invariants():
    for seed in range(1000):
        cfg = GenConfig(n=1 + seed % 7, seed=seed, cap=1 + seed % 3, pool=(None, 1, 2)[seed % 3], plant=0.5, j_mode="mixed")
        space, F, J = gen_instance(cfg)
        F.check(space)
        J.check(space)
        assert all(len(F(x)) <= cfg.cap for x in space.points)


def test_j_modes():
    space = gen_space(GenConfig(n=6, seed=3))
    assert gen_selfmap(GenConfig(n=6, j_mode="identity"), space).is_identity
    for seed in range(50):
        perm = gen_selfmap(GenConfig(n=6, seed=seed, j_mode="permutation"), space)
        assert sorted(perm.image) == list(range(6))


def test_pool_shares_images():
    space = gen_space(GenConfig(n=6, seed=1))
    F = gen_multimap(GenConfig(n=6, seed=1, pool=1), space)
    assert len({F(x) for x in space.points}) == 1


def test_determinism_byte_identical():
    for seed in range(50):
        cfg = GenConfig(n=5, b=BS[seed % 3], seed=seed, plant=0.5, pool=(None, 2)[seed % 2])
        texts = []
        for _ in range(2):
            space, F, J = gen_instance(cfg)
            texts.append(ser.dumps({"space": ser.space_to_json(space), "map": ser.maps_to_json(space, F, J)}))
        assert texts[0] == texts[1]
    a = gen_instance(GenConfig(n=5, seed=1))
    b = gen_instance(GenConfig(n=5, seed=2))
    assert a != b


@pytest.mark.parametrize(
    "kwargs",
    [{"n": 0}, {"b": Q(1, 2)}, {"q": 0}, {"j_mode": "random"}, {"cap": 0}, {"pool": 0}],
)
def test_bad_config(kwargs):
    with pytest.raises(InputError):
        GenConfig(**kwargs)


def test_is_t0_consistent_with_space():
    for seed in range(200):
        space = gen_space(GenConfig(n=4, seed=seed))
        assert space.t0 == is_t0(space.dist)
