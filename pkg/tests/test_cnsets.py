from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from mixpoint.cnsets import (
    DEFAULT_GRID,
    LemmaError,
    c_epsilon,
    lemma_bound,
    nested,
    profile,
    verify_bounds,
)
from mixpoint.contraction import Condition, fit_constants, theorem_verdict
from mixpoint.core import InputError, Space, diameter
from mixpoint.maps import MultiMap, SelfMap, approx_values, mix_value_at

from conftest import load_preset, random_instances


def test_c_epsilon_res1_example(res1_example):
    space, F, J, _ = res1_example
    assert c_epsilon(space, F, J, Q(1, 2)) == {0}
    assert c_epsilon(space, F, J, Q(1)) == {0, 1}


def test_c_epsilon_large_eps_is_everything():
    for space, F, _ in random_instances(100, seed=40):
        top = max([space.d(x, y) for x in space.points for y in space.points] + [Q(1)])
        assert c_epsilon(space, F, None, top) == frozenset(space.points)


def test_c_epsilon_may_be_empty(example3):
    space, F, J, _ = example3
    assert c_epsilon(space, F, J, Q(1, 2)) == frozenset()


def test_c_epsilon_rejects_nonpositive(res1_example):
    space, F, J, _ = res1_example
    for eps in (0, Q(-1, 2)):
        with pytest.raises(InputError):
            c_epsilon(space, F, J, eps)


def test_zero_mix_gives_nonempty_c_epsilon():
    seen = 0
    for space, F, J in random_instances(300, seed=41):
        if approx_values(space, F, J).mix == 0:
            seen += 1
            assert all(c_epsilon(space, F, J, e) for e in DEFAULT_GRID)
    assert seen > 10


def test_lemma_bound_examples():
    assert lemma_bound("resf2", 1, 1, Q(1, 3), eps=Q(1, 2)) == Q(4, 3)
    assert lemma_bound("resf4", 1, Q(1, 2), Q(1, 3), 0, Q(1, 4)) == 2 * Q(1, 4) / (Q(1, 2) * Q(2, 3))
    assert lemma_bound("res2", 5, 2, Q(1, 4), eps=1) == Q(5, 4)


def test_resf1_at_b1_differs_from_res1():
    a = Q(1, 2)
    resf1 = lemma_bound("resf1", 1, 1, a)
    res1 = lemma_bound("res1", 1, 1, a)
    assert resf1 == 2 / (1 - a * a) == Q(8, 3)
    assert res1 == 2 / (1 - a) == 4
    assert resf1 != res1


@given(
    lemma=st.sampled_from(["res1", "res2", "resf1", "resf2", "resf3", "resf4"]),
    b=st.sampled_from([Q(1), Q(3, 2), Q(2)]),
    r=st.fractions(min_value=Q(1, 10), max_value=2),
    alpha=st.fractions(min_value=Q(1, 100), max_value=Q(1, 20)),
    L=st.fractions(min_value=0, max_value=Q(1, 100)),
    eps=st.fractions(min_value=Q(1, 100), max_value=4),
)
def test_lemma_bound_linear_in_eps(lemma, b, r, alpha, L, eps):
    one = lemma_bound(lemma, b, r, alpha, L, eps)
    assert lemma_bound(lemma, b, r, alpha, L, 2 * eps) == 2 * one
    assert one > 0


@pytest.mark.parametrize(
    "args",
    [
        ("res1", 1, 1, 1, 0, 1),
        ("resf1", 2, 1, Q(3, 4), 0, 1),
        ("resf3", 2, 1, Q(1, 8), 0, 1),
        ("resf4", 1, 1, Q(1, 2), Q(1, 2), 1),
        ("res2", 1, 0, Q(1, 4), 0, 1),
        ("res2", 1, 1, Q(1, 4), 0, 0),
    ],
)
def test_lemma_bound_undefined(args):
    with pytest.raises(LemmaError):
        lemma_bound(*args)


def test_lemma_bound_unknown_name():
    with pytest.raises(InputError):
        lemma_bound("res9", 1, 1, Q(1, 2))


def test_verify_bounds_res1_example(res1_example):
    space, F, J, cond = res1_example
    rep = verify_bounds(space, F, J, cond, [Q(1), Q(1, 2), Q(1, 4), Q(1, 8)])
    assert rep.lemma == "res1" and rep.ok and rep.nesting_ok
    small = [p for p in rep.profiles if p.eps < 1]
    assert all(p.members == {0} and p.diameter == 0 and p.ok for p in small)
    assert [p.eps for p in rep.profiles] == [Q(1), Q(1, 2), Q(1, 4), Q(1, 8)]


def test_verify_bounds_singleton_space():
    space = Space.from_matrix([["0"]])
    F = MultiMap.from_lists([{0}])
    rep = verify_bounds(space, F, None, Condition("linear_j", alpha=Q(1, 2), r=Q(1)))
    assert rep.ok and all(p.diameter == 0 for p in rep.profiles)


def test_verify_bounds_reports_hypothesis_failure(example3):
    space, F, J, _ = example3
    rep = verify_bounds(space, F, J, Condition("linear_j", alpha=Q(1, 2), r=Q(1, 2)))
    assert not rep.hypotheses and rep.ok


def test_nesting_on_random_grids():
    for space, F, J in random_instances(200, seed=42):
        profs = profile(space, F, J, [Q(k, 7) for k in range(1, 20)])
        assert nested(profs)
        assert [p.eps for p in profs] == sorted((p.eps for p in profs), reverse=True)


def test_mix_value_is_infimum_of_nonempty_c_epsilon():
    for space, F, J in random_instances(200, seed=43):
        mix = approx_values(space, F, J).mix
        values = sorted({mix_value_at(space, F, J, x) for x in space.points} - {Q(0)})
        if mix > 0:
            assert c_epsilon(space, F, J, mix)
            assert not c_epsilon(space, F, J, mix * Q(999, 1000))
        for v in values:
            assert c_epsilon(space, F, J, v)


def test_combined_points_are_intersection():
    for space, F, J in random_instances(200, seed=44):
        verdict_free = {x for x in space.points if mix_value_at(space, F, J, x) == 0}
        tiny = min([mix_value_at(space, F, J, x) for x in space.points if mix_value_at(space, F, J, x) > 0] + [Q(1)])
        assert c_epsilon(space, F, J, tiny / 2) == verdict_free


@pytest.mark.parametrize("kind", ["linear_j", "kannan_j"])
def test_unique_point_in_intersection(kind):
    hits = 0
    for space, F, J in random_instances(400, seed=45, t0=True, j_mode="permutation", pool_cycle=(1, 2, None)):
        fit = fit_constants(space, F, J, kind)
        if not (fit.feasible and fit.expansion_feasible):
            continue
        cond = Condition(kind, alpha=max(fit.alpha, Q(1, 1024)), r=fit.r_max if not fit.r_unbounded else Q(1))
        v = theorem_verdict(space, F, J, cond)
        if not v.hypotheses or v.mix_value != 0:
            continue
        hits += 1
        members = {x for x in space.points if mix_value_at(space, F, J, x) == 0}
        assert len(members) == 1
        assert diameter(space, c_epsilon(space, F, J, Q(1, 10**9))) == 0
    assert hits > 5


def test_resf1_lemma_counterexample():
    # hypotheses hold, yet diam C_1 = 34/5 exceeds the stated bound 150/23
    space, F, J, cond = load_preset("resf1-lemma-cx")
    rep = verify_bounds(space, F, J, cond, [Q(1)])
    assert rep.hypotheses and rep.lemma == "resf1"
    (p,) = rep.profiles
    assert p.diameter == Q(34, 5) and p.bound == Q(150, 23)
    assert not rep.ok


def test_resf1_formula_fails_at_b1_where_res1_holds():
    d = [[0, 3, 1, 2, Q(3, 2)], [3, 0, 2, 1, Q(3, 2)], [1, 2, 0, 1, Q(1, 2)], [2, 1, 1, 0, Q(1, 2)], [Q(3, 2), Q(3, 2), Q(1, 2), Q(1, 2), 0]]
    space = Space.from_matrix(d)
    F = MultiMap.from_lists([{2}, {3}, {4}, {4}, {4}])
    cond = Condition("linear_j", alpha=Q(1, 2), r=Q(1))
    assert theorem_verdict(space, F, None, cond).hypotheses
    res1 = verify_bounds(space, F, SelfMap.identity(5), cond, [Q(1)], lemma="res1")
    resf1 = verify_bounds(space, F, SelfMap.identity(5), cond, [Q(1)], lemma="resf1")
    assert res1.ok and res1.profiles[0].bound == 4
    assert not resf1.ok
    assert resf1.profiles[0].diameter == 3 > resf1.profiles[0].bound == Q(8, 3)
