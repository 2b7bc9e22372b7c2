import math
from fractions import Fraction

import numpy as np
import pytest

from orbitopes.curve import Representation, antipodal_point, rational_point
from orbitopes.poly import CoeffMode, SparsePoly
from orbitopes.secantfit import (InsufficientSamplesError,
                                 NoVanishingPolynomialError, evaluate_on_points,
                                 fit_hypersurface, monomial_basis,
                                 rationalize, sample_secants, secant_point,
                                 verify_vanishing)
from orbitopes.toeplitz import det_polynomial

REP13 = Representation((1, 3))
REP12 = Representation((1, 2))


def test_monomial_basis_sizes():
    assert monomial_basis(4, 8).size == 495
    assert monomial_basis(4, 15).size == 3876
    assert monomial_basis(4, 3).size == 35


def test_secant_point_midpoint_example():
    point = secant_point(REP13, [0.0, math.pi / 2], [0.5, 0.5])
    assert np.allclose(point, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_secant_point_degenerate_weight_is_curve_point():
    point = secant_point(REP13, [0.9, 2.2], [1.0, 0.0])
    assert np.allclose(point, secant_point(REP13, [0.9], [1.0]), atol=1e-15)


def test_secant_point_antipodal_midpoint_is_origin():
    # the curve is centrally symmetric, so opposite parameters average to 0
    a = rational_point(REP13, 0)
    b = antipodal_point(REP13)
    midpoint = [Fraction(1, 2) * (x + y) for x, y in zip(a, b)]
    assert midpoint == [0, 0, 0, 0]
    point = secant_point(REP13, [0.0, math.pi], [0.5, 0.5])
    assert np.allclose(point, [0, 0, 0, 0], atol=1e-12)


def test_secant_point_weight_validation():
    with pytest.raises(ValueError):
        secant_point(REP13, [0.0, 1.0], [0.7, 0.7])
    with pytest.raises(ValueError):
        secant_point(REP13, [Fraction(0), Fraction(1)],
                     [Fraction(1, 2), Fraction(1, 3)], CoeffMode.RATIONAL)


def test_sample_secants_float_shape_and_weights():
    samples = sample_secants(REP13, 2, 50, seed=1)
    assert len(samples) == 50
    for s in samples:
        assert len(s.params) == 2 and len(s.point) == 4
        assert abs(sum(s.weights) - 1) < 1e-12


def test_sample_secants_rational_exactness():
    samples = sample_secants(REP13, 2, 20, seed=2, mode=CoeffMode.RATIONAL)
    for s in samples:
        assert sum(s.weights) == 1
        assert all(isinstance(v, Fraction) for v in s.point)
        expected = secant_point(REP13, s.params, s.weights, CoeffMode.RATIONAL)
        assert expected == s.point


def test_sample_secants_requires_reduced():
    with pytest.raises(ValueError):
        sample_secants(Representation((2, 6)), 2, 5, seed=0)


def test_fit_insufficient_samples():
    with pytest.raises(InsufficientSamplesError):
        fit_hypersurface(REP13, r=2, degree=8, count=100, seed=0)


def test_fit_no_vanishing_polynomial_below_true_degree():
    with pytest.raises(NoVanishingPolynomialError):
        fit_hypersurface(REP13, r=2, degree=3, seed=3, mode=CoeffMode.RATIONAL)
    with pytest.raises(NoVanishingPolynomialError):
        fit_hypersurface(REP13, r=2, degree=3, seed=3, mode=CoeffMode.FLOAT)


def test_exact_fit_12_matches_toeplitz_determinant():
    fit = fit_hypersurface(REP12, r=2, degree=3, seed=7, mode=CoeffMode.RATIONAL)
    assert fit.nullity == 1
    assert fit.report["certified"]
    p = fit.polynomials[0]
    det = det_polynomial(2)
    scale = det.coefficient((0, 0, 0, 0)) / p.coefficient((0, 0, 0, 0))
    assert p.scale(scale) == det


def test_float_fit_12_matches_determinant_up_to_scale():
    fit = fit_hypersurface(REP12, r=2, degree=3, seed=8, mode=CoeffMode.FLOAT)
    assert fit.nullity == 1
    assert fit.report["gap_ratio"] >= 1e4
    rounded, dist = rationalize(fit.polynomials[0], (0, 0, 0, 0), 1)
    assert dist < 1e-9
    assert rounded == det_polynomial(2)


def test_float_f_fit_recovers_stored_polynomial(f_float_fit, f_stored):
    assert f_float_fit.nullity == 1
    assert f_float_fit.report["gap_ratio"] >= 1e4
    rounded, dist = rationalize(f_float_fit.polynomials[0], (0, 0, 4, 0), 1)
    assert rounded == f_stored
    assert dist < 1e-8


def test_float_and_exact_paths_agree_for_f(f_float_fit, f_exact_fit, f_stored):
    rounded, _ = rationalize(f_float_fit.polynomials[0], (0, 0, 4, 0), 1)
    exact = f_exact_fit.polynomials[0]
    exact = exact.scale(1 / exact.coefficient((0, 0, 4, 0)))
    assert rounded == exact == f_stored


def test_verify_vanishing_float_and_control(f_stored):
    residual = verify_vanishing(f_stored.to_float(), REP13, 2, 2000, seed=23)
    assert residual <= 1e-8
    rng = np.random.default_rng(24)
    basis = monomial_basis(4, 8)
    control = SparsePoly(4, {e: float(c) for e, c in
                             zip(basis.exponents,
                                 rng.uniform(-1, 1, size=basis.size))},
                         CoeffMode.FLOAT)
    control_residual = verify_vanishing(control, REP13, 2, 2000, seed=23)
    assert control_residual > 1e-2
    assert control_residual > 100 * max(residual, 1e-30)


def test_verify_vanishing_exact_zero(f_stored):
    residual = verify_vanishing(f_stored, REP13, 2, 50, seed=25,
                                mode=CoeffMode.RATIONAL)
    assert residual == 0


def test_verify_vanishing_circle_on_polygon_block():
    # every convex combination of q-gon vertices keeps the shared last block
    # on the unit circle; with the rational circle parametrization the
    # evaluation is exact
    nvars = 4
    y = SparsePoly.variable(nvars, 2)
    z = SparsePoly.variable(nvars, 3)
    circle = y * y + z * z - SparsePoly.constant(nvars, 1)
    for u in (Fraction(0), Fraction(1, 3), Fraction(-7, 5), Fraction(9, 2)):
        cy = (1 - u * u) / (1 + u * u)
        cz = 2 * u / (1 + u * u)
        sample = (Fraction(1, 9), Fraction(-2, 7), cy, cz)
        assert circle.evaluate(sample) == 0


def test_evaluate_on_points_matches_scalar_eval(f_stored):
    rng = np.random.default_rng(26)
    pts = rng.uniform(-1, 1, size=(20, 4))
    fast = evaluate_on_points(f_stored.to_float(), pts)
    slow = [f_stored.to_float().evaluate(list(p)) for p in pts]
    assert np.allclose(fast, slow, atol=1e-12)


def test_rationalize_exact_input_round_trip(f_stored):
    rounded, dist = rationalize(f_stored.to_float(), (0, 0, 4, 0), 1)
    assert rounded == f_stored
    assert dist == 0


def test_rationalize_anchor_validation(f_stored):
    with pytest.raises(ValueError):
        rationalize(f_stored.to_float(), (8, 0, 0, 0), 1)  # absent monomial
    with pytest.raises(ValueError):
        rationalize(SparsePoly.zero(4, CoeffMode.FLOAT), (0, 0, 0, 0), 1)
