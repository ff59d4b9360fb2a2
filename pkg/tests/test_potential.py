"""Quartic potential family: geometry, bias design rules, deformation path."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import brentq

import trapmorph as tm
from trapmorph.errors import RegimeError
from trapmorph.potential import (MUCH_LESS_THAN, DeformationPath,
                                 small_bias_bound)

A0 = -0.25
B0 = 0.5 / 256.0  # mini quartic coefficient: D = 16 exactly


def test_potential_evaluation_and_derivative():
    p = tm.PotentialParams(A0, B0, 0.01)
    x = np.linspace(-3.0, 3.0, 7)
    assert_allclose(p(x), A0 * x**2 + B0 * x**4 + 0.01 * x, rtol=1e-15)
    assert_allclose(p.derivative(x), 2 * A0 * x + 4 * B0 * x**3 + 0.01,
                    rtol=1e-15)


def test_symmetric_well_geometry_closed_forms():
    geo = tm.geometry(tm.PotentialParams(A0, B0, 0.0))
    assert_allclose(geo.D, 16.0, rtol=1e-14)
    assert_allclose(geo.Omega, 1.0, rtol=1e-14)
    assert geo.x_plus == -geo.x_minus
    assert geo.deltaV == 0.0
    assert np.isnan(geo.x_eq)


def test_biased_minima_against_root_finder():
    # first-order-in-C minima vs the true stationary points of V'
    C = tm.bias_for_target(2, A0, B0)
    p = tm.PotentialParams(A0, B0, C)
    geo = tm.geometry(p)
    for approx, lo, hi in [(geo.x_minus, -12.0, -4.0),
                           (geo.x_plus, 4.0, 12.0)]:
        exact = brentq(p.derivative, lo, hi, xtol=1e-14)
        # the shift formula is first order in the bias; good to ~1e-4 D here
        assert abs(approx - exact) < 1e-3 * geo.D
    # tilt: right well higher by deltaV = C * D
    assert_allclose(p(geo.x_plus) - p(geo.x_minus), C * geo.D, rtol=1e-3)


def test_harmonic_regime_geometry():
    geo = tm.geometry(tm.PotentialParams(0.5, 0.0, 0.09375))
    assert_allclose(geo.x_eq, -0.09375, rtol=1e-14)
    assert np.isnan(geo.D)
    with pytest.raises(RegimeError):
        tm.geometry(tm.PotentialParams(-0.25, 0.0, 0.0))  # unbounded below


def test_small_bias_bound_value():
    # (4 sqrt2 / 3) sqrt(-A^3/B) = 16/3 for the mini constants
    assert_allclose(small_bias_bound(A0, B0), 16.0 / 3.0, rtol=1e-14)
    ratio, ok = tm.small_bias_check(tm.PotentialParams(A0, B0, 0.09375))
    assert ok and ratio < MUCH_LESS_THAN
    ratio2, ok2 = tm.small_bias_check(tm.PotentialParams(A0, B0, 0.8))
    assert not ok2 and ratio2 > MUCH_LESS_THAN


def test_bias_for_target_places_half_integer_quanta():
    # C = (n - 1/2) Omega / D and N_q = C sqrt(1/2B) = n - 1/2
    assert_allclose(tm.bias_for_target(1, A0, B0), 0.03125, rtol=1e-14)
    assert_allclose(tm.bias_for_target(2, A0, B0), 0.09375, rtol=1e-14)
    for n in (1, 2, 5, 11):
        C = tm.bias_for_target(n, A0, B0)
        Nq = tm.quanta_number(tm.PotentialParams(A0, B0, C))
        assert_allclose(Nq, n - 0.5, rtol=1e-13)
    with pytest.raises(RegimeError):
        tm.bias_for_target(0, A0, B0)


def test_quanta_number_constant_while_beta_is_flat():
    # N_q depends on (C, B) only; along the early path stretch beta ~ B0
    path = tm.path_for_target(A0, B0, kappa=-400.0 / 3.0, eps=0.05,
                              n_target=2)
    vals = [tm.quanta_number(path.params_at(a)) for a in
            np.linspace(A0, -0.12, 9)]
    assert np.max(np.abs(np.array(vals) / vals[0] - 1.0)) < 1e-6
    with pytest.raises(RegimeError):
        tm.quanta_number(tm.PotentialParams(0.5, 0.0, 0.01))


def test_max_target_bound():
    # (4/3) sqrt(-A0^3/B0^2) = 256/3 at the mini constants; scales as 1/B0
    assert_allclose(tm.max_target_bound(A0, B0), 256.0 / 3.0, rtol=1e-13)
    assert_allclose(tm.max_target_bound(A0, B0 / 10.0),
                    2560.0 / 3.0, rtol=1e-13)


def test_switch_function_boundary_behavior():
    path = tm.beryllium_preset().path
    # beta(A0) ~ B0, beta(Af) ~ 0, beta(0) = 0.99917 B0 for this steepness
    assert_allclose(path.beta(path.A0), path.B0, rtol=1e-12)
    assert path.beta(path.Af) <= 1e-20 * path.B0
    assert_allclose(path.beta(0.0) / path.B0, 0.99917, atol=1e-4)
    # monotone decreasing in A
    aa = np.linspace(path.A0, path.Af, 301)
    assert np.all(np.diff(path.beta(aa)) <= 0.0)


def test_switch_derivative_matches_finite_differences():
    path = tm.mini_preset().path
    h = 1e-5
    # rtol covers the O(h^2 kappa^2) truncation of the central difference;
    # atol covers the logistic tails where both values underflow toward 0
    for a in (-0.1, -0.05, 0.0, 0.05, 0.1, 0.2):
        num = (path.beta(a + h) - path.beta(a - h)) / (2 * h)
        assert_allclose(path.beta_prime(a), num, rtol=1e-4, atol=1e-12)


def test_path_endpoint_params():
    path = tm.mini_preset().path
    p0, pf = path.initial, path.final
    assert p0.A == path.A0 and pf.A == path.Af
    assert_allclose(p0.B, path.B0, rtol=1e-12)
    assert pf.B <= 1e-6 * path.B0
    assert p0.C == pf.C == path.C
    # ground-state path carries no bias at all
    assert tm.path_for_target(A0, B0, -400.0 / 3.0, 0.05, 0).C == 0.0


def test_path_validation():
    kw = dict(A0=A0, Af=0.5, B0=B0, kappa=-400.0 / 3.0, eps=0.05, C=0.0,
              n_target=0)
    DeformationPath(**kw)  # the reference values construct fine
    for bad in [dict(A0=0.1), dict(Af=0.4), dict(B0=0.0), dict(B0=-1e-3),
                dict(kappa=50.0), dict(n_target=-1)]:
        with pytest.raises(RegimeError):
            DeformationPath(**{**kw, **bad})
    # a switch too soft to reach its asymptotes is rejected outright
    with pytest.raises(RegimeError):
        DeformationPath(**{**kw, "kappa": -2.0})


def test_quartic_coefficient_must_be_nonnegative():
    with pytest.raises(RegimeError):
        tm.PotentialParams(-0.25, -1e-4, 0.0)
    with pytest.raises(RegimeError):
        tm.PotentialParams(float("inf"), 0.0, 0.0)
