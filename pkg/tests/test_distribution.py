from __future__ import annotations

import numpy as np
import pytest

from dconormal.distribution import (
    ChartMismatchError,
    TangentVector,
    coefficient_matrix,
    evaluate_form,
    forms_for_chart,
)
from dconormal.grassmann import Chart, PlaneMatrix, chart_cover, plane_from_matrix


def test_single_contact_form():
    F = forms_for_chart(Chart.from_w0(2, [0]))
    assert F.form_strings() == ["-a11*dz1 + dz2"]


def test_plane_in_three_space():
    F = forms_for_chart(chart_cover(3, 2)[0])
    assert F.form_strings() == ["-a11*dz1 - a12*dz2 + dz3"]


def test_line_in_three_space():
    F = forms_for_chart(Chart.from_w0(3, [0]))
    assert F.form_strings() == ["-a11*dz1 + dz2", "-a21*dz1 + dz3"]


def test_forms_use_given_names():
    F = forms_for_chart(Chart.from_w0(3, [0]), ["x", "y", "z"])
    assert F.form_strings() == ["-a11*dx + dy", "-a21*dx + dz"]


def test_no_da_coefficients():
    ch = Chart.from_w0(4, [1, 2])
    F = forms_for_chart(ch)
    for row in F.rows:
        assert all(not c for c in row[ch.n:])


def _random_point(rng, ch):
    return PlaneMatrix(ch, rng.normal(size=(ch.codim, ch.d)) + 1j * rng.normal(size=(ch.codim, ch.d)), "float")


def test_plane_columns_lie_in_h():
    rng = np.random.default_rng(0)
    ch = Chart.from_w0(4, [0, 2])
    F = forms_for_chart(ch)
    p = _random_point(rng, ch)
    W = plane_from_matrix(p).as_array()
    for j in range(ch.d):
        v = TangentVector(W[:, j], rng.normal(size=(ch.codim, ch.d)))
        assert np.allclose(evaluate_form(F, p, v), 0)


def test_grassmann_directions_lie_in_h():
    ch = Chart.from_w0(3, [1])
    F = forms_for_chart(ch)
    p = PlaneMatrix(ch, [[2], [5]])
    v = TangentVector([0, 0, 0], [[7], [-1]])
    assert evaluate_form(F, p, v) == [0, 0]


def test_e2_not_in_h_at_zero():
    ch = Chart.from_w0(2, [0])
    F = forms_for_chart(ch)
    assert evaluate_form(F, PlaneMatrix.zero(ch), TangentVector([0, 1], [[0]])) == [1]


def test_chart_mismatch():
    F = forms_for_chart(Chart.from_w0(2, [0]))
    with pytest.raises(ChartMismatchError):
        evaluate_form(F, PlaneMatrix.zero(Chart.from_w0(2, [1])), TangentVector([0, 1], [[0]]))
    with pytest.raises(ChartMismatchError):
        evaluate_form(F, PlaneMatrix.zero(Chart.from_w0(2, [0])), TangentVector([0, 1, 2], [[0]]))


@pytest.mark.parametrize("n", range(2, 7))
def test_kernel_dimension(n):
    rng = np.random.default_rng(n)
    for d in range(1, n):
        for ch in chart_cover(n, d)[:3]:
            M = coefficient_matrix(forms_for_chart(ch), _random_point(rng, ch))
            assert np.linalg.matrix_rank(M) == n - d
            assert M.shape[1] - (n - d) == d + d * (n - d)


def test_linearity():
    rng = np.random.default_rng(9)
    ch = Chart.from_w0(5, [0, 3])
    F = forms_for_chart(ch)
    p = _random_point(rng, ch)

    def vec():
        return TangentVector(rng.normal(size=5), rng.normal(size=(3, 2)))

    u, v = vec(), vec()
    s = 2.5 - 1j
    w = TangentVector(np.array(u.z_part) + s * np.array(v.z_part),
                      np.array(u.a_part) + s * np.array(v.a_part))
    lhs = np.array(evaluate_form(F, p, w))
    rhs = np.array(evaluate_form(F, p, u)) + s * np.array(evaluate_form(F, p, v))
    assert np.allclose(lhs, rhs)


def test_hyperplane_case_is_one_contact_form():
    # d = n - 1: one form, kernel = hyperplane in z times the whole chart
    ch = chart_cover(4, 3)[0]
    F = forms_for_chart(ch)
    assert len(F) == 1
    M = coefficient_matrix(F, PlaneMatrix(ch, [[1, 2, 3]]))
    assert M.shape == (1, 4 + 3)
    assert np.allclose(M[0, :4], [-1, -2, -3, 1])
    assert np.allclose(M[0, 4:], 0)
