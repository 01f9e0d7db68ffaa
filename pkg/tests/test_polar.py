from __future__ import annotations

import numpy as np
import pytest
from gmpy2 import mpq

from dconormal.exactpoly import Ideal, saturate
from dconormal.grassmann import PlaneBasis, chart_cover
from dconormal.polar import (
    EMPTY,
    SchubertCondition,
    polar_all_charts,
    polar_draws,
    polar_fiber_check_all_charts,
    polar_ideal,
    random_condition,
    schubert_ideal,
)

from conftest import load


def line(*v):
    return PlaneBasis(len(v), [[mpq(x) for x in v]], "exact")


def classical_polar(X, D):
    """Closure of the smooth points of a hypersurface whose tangent plane contains D."""
    f = X.ideal.generators[0]
    grad = [f.diff(v) for v in X.vars.names]
    g = sum((c * int(x) for c, x in zip(grad[1:], D[1:])), grad[0] * int(D[0]))
    return saturate(Ideal([f, g], X.vars), Ideal(grad, X.vars))


# -- Schubert conditions ----------------------------------------------------

def test_validation():
    with pytest.raises(ValueError):
        SchubertCondition(line(1, 2, 3), 2, 2, 2)  # k > d - 1
    with pytest.raises(ValueError):
        SchubertCondition(line(1, 2, 3), 1, 3, 2)  # ell = n
    with pytest.raises(ValueError):
        SchubertCondition(PlaneBasis(3, [[1, 0, 0], [0, 1, 0]], "exact"), 1, 2, 2)
    with pytest.raises(TypeError):
        SchubertCondition(PlaneBasis(3, [[0.5, 0, 0]], "float"), 1, 2, 2)


def test_m_zero_imposes_nothing():
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    for ch in chart_cover(3, 2):
        assert schubert_ideal(S, ch, m=0).is_zero()


def test_line_in_plane_condition():
    # W = graph of (a11, a12) contains (1, 2, 3) iff 3 = a11 + 2 a12
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    I = schubert_ideal(S, chart_cover(3, 2)[0])
    assert I.sorted_strings() == ["a11 + 2*a12 - 3"]


def test_random_condition_is_exact_and_reproducible():
    a = random_condition(4, 2, 1, 3, np.random.default_rng(7))
    b = random_condition(4, 2, 1, 3, np.random.default_rng(7))
    assert a.to_dict() == b.to_dict()
    assert a.D.dim == 4 - 2 + 1 - 1 and a.m == 2


# -- polar varieties --------------------------------------------------------

def test_cone_with_vertical_line():
    # tangent planes of the cone contain e3 exactly where z = 0
    S = SchubertCondition(line(0, 0, 1), 1, 2, 2)
    P = polar_all_charts(load("cone3.var"), S)
    assert P.ideal.sorted_strings() == ["x^2 + y^2", "z"]
    assert P.dim == 1


def test_cone_with_generic_line_is_a_plane_section():
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    P = polar_all_charts(load("cone3.var"), S)
    assert P.ideal.sorted_strings() == ["5*y^2 + 12*y*z + 10*z^2", "x + 2*y + 3*z"]


@pytest.mark.parametrize("D", [(1, 2, 3), (2, -1, 5), (0, 1, 1)])
def test_umbrella_polar_matches_classical_oracle(D):
    U = load("umbrella.var")
    S = SchubertCondition(line(*D), 1, 2, 2)
    P = polar_all_charts(U, S)
    assert P.ideal.same_as(classical_polar(U, D))
    assert P.dim == U.k - 1


def test_polar_of_a_plane_is_empty():
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    P = polar_all_charts(load("plane_in_c3.var"), S)
    assert P.is_empty and P.ideal.is_unit()


def test_weakening_to_m_zero_recovers_x():
    X = load("cone3.var")
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    for ch in chart_cover(3, 2):
        assert polar_ideal(X, S, ch, m=0).ideal.same_as(X.ideal)


def test_fiber_check_on_cone():
    S = SchubertCondition(line(0, 0, 1), 1, 2, 2)
    v = polar_fiber_check_all_charts(load("cone3.var"), S)
    assert (v.value, v.lhs, v.rhs, v.fiber_dim) == (True, 0, 0, 1)


def test_fiber_check_on_umbrella():
    # the limit planes at 0 form a curve; one of them contains a generic line
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    v = polar_fiber_check_all_charts(load("umbrella.var"), S)
    assert (v.value, v.lhs, v.rhs, v.fiber_dim) == (True, 0, 0, 1)


def test_fiber_check_is_empty_when_the_only_plane_misses_d():
    # 0 is a smooth point; its one tangent plane z3 = 0 does not contain D
    S = SchubertCondition(line(1, 2, 3), 1, 2, 2)
    v = polar_fiber_check_all_charts(load("parabolic_cylinder.var"), S)
    assert v.value == EMPTY


def test_cone_draws_agree():
    vote = polar_draws(load("cone3.var"), 2, 1, draws=5, seed=0)
    assert vote.dims == (1,) * 5 and vote.majority == 1
    assert vote.non_generic == ()
    assert all(f.value is True and f.lhs == f.rhs == 0 for f in vote.fiber_checks)


def test_draws_are_reproducible():
    X = load("cone3.var")
    assert polar_draws(X, 2, 1, 2, seed=4).to_dict() == polar_draws(X, 2, 1, 2, seed=4).to_dict()
