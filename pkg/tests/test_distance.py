import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from trichord.distance import (TranscriptionError, _build_tables, cdf_formula, clamp_negative,
                               cumulant_tables, distance_cdf, distance_cdf_values, distance_pdf,
                               distance_pdf_values, integrate_segments, mean_distance,
                               n_kernel_L1, n_kernel_L2, n_measure, pdf_formula,
                               star_kernel_L1, star_kernel_L2, star_measure)
from trichord.geometry import RightTriangle
from trichord.piecewise import Branch
from trichord.suites import distance_fd_mismatch, kernel_ladder_error
from trichord.verify import pair_distances

TRIANGLES = [(1, 1), (3, 4), (1, 5), (1, 20), (1, 1.0001)]


def test_star_kernels_at_lower_limit():
    m = 1.7
    assert star_kernel_L1(m, m) == pytest.approx(m * m * math.pi / 4, rel=1e-15)
    assert star_kernel_L2(m, m) == pytest.approx(m * math.pi / 2, rel=1e-15)
    assert n_kernel_L1(m, m) == pytest.approx(m ** 4 * math.pi / 16, rel=1e-15)


def test_n_kernel_L2_at_twice_m():
    m = 0.8
    expected = math.sqrt(3) * m ** 3 + (math.sqrt(3) / 2 + math.pi / 3) * m ** 3
    got = float(n_kernel_L2(2 * m, m))
    assert got == pytest.approx(expected, rel=1e-14)
    # the same number as an integral of t * L2*(t, m) from m
    tail, _ = integrate.quad(lambda t: t * float(star_kernel_L2(t, m)), m, 2 * m,
                             epsabs=1e-13, epsrel=1e-13)
    assert got - float(n_kernel_L2(m, m)) == pytest.approx(tail, abs=1e-12)


@pytest.mark.parametrize("m", [0.3, 1.0, 2.4])
def test_kernel_derivative_ladder(m):
    assert kernel_ladder_error(m) < 1e-6


@pytest.mark.parametrize("m", [0.01, 20.0, 500.0])
def test_kernel_derivative_ladder_relative(m):
    # absolute FD error grows with the primitives; relative error does not
    assert kernel_ladder_error(m, relative=True) < 1e-8


@pytest.mark.parametrize("ab", TRIANGLES)
def test_measure_primitives(ab):
    t = RightTriangle(*ab)
    from trichord.chord import chord_measure
    for k, (lo, hi) in enumerate(zip(t.breakpoints[:-1], t.breakpoints[1:]), 1):
        if hi <= lo:
            continue
        x = np.linspace(lo, hi, 7)[1:-1]
        step = 1e-6 * (hi - lo)
        d_star = (star_measure(t, k, x + step) - star_measure(t, k, x - step)) / (2 * step)
        d_n = (n_measure(t, k, x + step) - n_measure(t, k, x - step)) / (2 * step)
        np.testing.assert_allclose(d_star, chord_measure(t, k, x), rtol=1e-6, atol=1e-6)
        np.testing.assert_allclose(d_n, x * star_measure(t, k, x), rtol=1e-6, atol=1e-6)


def test_isosceles_pdf_value():
    t = RightTriangle(1, 1)
    theta1 = 3 * math.pi + 6
    u, A, x = 2 + math.sqrt(2), 0.5, 0.1
    expected = 2 * x / A * (math.pi + (theta1 * x * x / 8 - u * x) / A)
    r = distance_pdf(t, x)
    assert r.branch is Branch.SEG1
    assert r.value == pytest.approx(expected, abs=1e-14)
    assert r.value == pytest.approx(0.9989248, abs=1e-6)


@pytest.mark.parametrize("ab", TRIANGLES)
def test_pdf_endpoints(ab):
    t = RightTriangle(*ab)
    assert distance_pdf(t, 0.0).value == 0.0
    assert abs(float(pdf_formula(t, 4, t.c))) < 1e-9
    assert distance_pdf(t, t.c).branch is Branch.SEG4
    assert distance_pdf(t, t.c * 1.01).value == 0.0
    assert distance_pdf(t, -1.0).value == 0.0


@pytest.mark.parametrize("ab", TRIANGLES)
def test_cdf_edges_and_ladder(ab):
    t = RightTriangle(*ab)
    assert distance_cdf(t, t.c).value == 1.0
    assert distance_cdf(t, 2 * t.c).value == 1.0
    assert distance_cdf(t, -0.5).value == 0.0
    assert abs(float(cdf_formula(t, 4, t.c)) - 1) < 1e-10


def test_cdf_isosceles_half_by_quadrature():
    t = RightTriangle(1, 1)
    expected, _ = integrate.quad(lambda x: float(distance_pdf_values(t, x)[0]), 0, 0.5,
                                 epsabs=1e-14, epsrel=1e-14)
    assert distance_cdf(t, 0.5).value == pytest.approx(expected, abs=1e-8)


def test_cdf_isosceles_half_by_simulation():
    t = RightTriangle(1, 1)
    d = pair_distances(t, 10 ** 7, seed=99)
    assert np.mean(d <= 0.5) == pytest.approx(distance_cdf(t, 0.5).value, abs=1e-3)


@pytest.mark.parametrize("ab", TRIANGLES)
def test_continuity_at_breakpoints(ab):
    t = RightTriangle(*ab)
    for k, x in ((1, t.h), (2, t.a), (3, t.b)):
        assert abs(float(pdf_formula(t, k, x) - pdf_formula(t, k + 1, x))) < 1e-10
        assert abs(float(cdf_formula(t, k, x) - cdf_formula(t, k + 1, x))) < 1e-10


def test_branch_at_height_345():
    t = RightTriangle(3, 4)
    assert distance_cdf(t, 2.4).branch is Branch.SEG2
    assert distance_cdf(t, np.nextafter(2.4, 0)).branch is Branch.SEG1


@pytest.mark.parametrize("ab", TRIANGLES)
def test_normalization(ab):
    t = RightTriangle(*ab)
    total = integrate_segments(lambda x: float(distance_pdf_values(t, x)[0]), t.breakpoints)
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("ab", TRIANGLES)
def test_cdf_derivative_is_pdf(ab):
    assert distance_fd_mismatch(RightTriangle(*ab)) < 1e-6


@pytest.mark.parametrize("ab", TRIANGLES)
def test_monotone_up_to_rounding(ab):
    t = RightTriangle(*ab)
    G, _ = distance_cdf_values(t, np.linspace(0, t.c, 100_001))
    assert np.diff(G).min() > -1e-12
    g, _, _ = distance_pdf_values(t, np.linspace(0, t.c, 100_001))
    assert g.min() >= 0


def test_tables_are_coherent():
    t = RightTriangle(3, 4)
    cached = cumulant_tables(t)
    assert cached == _build_tables(t)
    assert cached.J1_star_0h == pytest.approx(float(star_measure(t, 1, t.h)), rel=1e-15)
    assert cached.K1_h == pytest.approx(float(n_measure(t, 1, t.h)), rel=1e-15)
    # Jn at c reached through every rung equals A(A - c^2 (pi - 2uc/3A))/2
    jn_c = (t.area - t.c ** 2 * (math.pi - 2 * t.u * t.c / (3 * t.area))) * t.area / 2
    from trichord.distance import jn_segment
    assert float(jn_segment(t, 4, t.c)) == pytest.approx(jn_c, rel=1e-12)


def test_clamp_negative():
    v, n = clamp_negative(np.array([1.0, -1e-14, 0.5]), 1.0)
    assert n == 1 and v[1] == 0.0
    with pytest.raises(TranscriptionError):
        clamp_negative(np.array([-1e-6]), 1.0)


def test_mean_distance_isosceles_vs_simulation():
    t = RightTriangle(1, 1)
    d = pair_distances(t, 10 ** 7, seed=7)
    assert mean_distance(t) == pytest.approx(d.mean(), abs=3e-4)


def test_mean_distance_matches_survival_integral():
    t = RightTriangle(3, 4)
    alt = integrate_segments(lambda x: 1 - float(distance_cdf_values(t, x)[0]), t.breakpoints)
    assert mean_distance(t) == pytest.approx(alt, abs=1e-9)


def test_mean_distance_scales():
    t = RightTriangle(1, 2)
    assert mean_distance(t.scaled(10)) == pytest.approx(10 * mean_distance(t), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5), st.floats(1, 6), st.floats(0, 1))
def test_swap_and_scale_invariance(a, ratio, x):
    t = RightTriangle(a, a * ratio)
    swapped = RightTriangle(a * ratio, a)
    s = x * t.c
    assert distance_cdf(swapped, s).value == distance_cdf(t, s).value
    big = t.scaled(3.0)
    assert distance_cdf(big, 3 * s).value == pytest.approx(distance_cdf(t, s).value, abs=1e-11)
