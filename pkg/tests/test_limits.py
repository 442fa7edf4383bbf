import math

import numpy as np
import pytest
from scipy.constants import c, hbar

from planarcasimir.engine import plate_force
from planarcasimir.layers import CavityConfig, PerfectMirrorPlate, Wall
from planarcasimir.limits import (
    StaticMedium,
    approx_plate_force,
    casimir_generalized,
    force_ratio,
    minkowski_generalized,
    mirror_reflections,
)
from planarcasimir.materials import constant
from planarcasimir.quadrature import QuadratureSpec

SPEC = QuadratureSpec(rel_tol=1e-8)
COEF = hbar * c * math.pi ** 2 / 240.0


def test_static_medium_validation():
    with pytest.raises(ValueError):
        StaticMedium(eps=0.9)
    with pytest.raises(ValueError):
        StaticMedium(eps=2.0, mu=0.0)
    assert StaticMedium(eps=4.0, mu=2.25).n == 3.0


def test_vacuum_single_wall_value():
    d = 1e-6
    f = casimir_generalized(StaticMedium(1.0), d)
    assert f == pytest.approx(-COEF / d ** 4, rel=1e-15)
    # Absolute scale at one micron, in N/m^2.
    assert f == pytest.approx(-1.3001e-3, rel=1e-3)
    assert f < 0.0  # pulled toward the near wall


def test_closed_form_coefficients():
    d = 1e-6
    # eps = 2: sqrt(1/2) * (2/3 + 1/6) = sqrt(1/2) * 5/6.
    f = casimir_generalized(StaticMedium(2.0), d)
    assert -f * d ** 4 / COEF == pytest.approx(0.589255650988790, rel=1e-12)
    # eps = 1, mu = 2: sqrt(2) * 5/6.
    f = casimir_generalized(StaticMedium(1.0, mu=2.0), d)
    assert -f * d ** 4 / COEF == pytest.approx(1.1785113019775793, rel=1e-12)


def test_two_gap_difference_and_default_infinity():
    med = StaticMedium(3.0)
    d1, d3 = 4e-7, 2e-6
    f = casimir_generalized(med, d1, d3)
    assert f == pytest.approx(
        casimir_generalized(med, d1) - casimir_generalized(med, d3), rel=1e-12)
    assert casimir_generalized(med, d1, math.inf) == casimir_generalized(med, d1)
    assert casimir_generalized(med, 1e-6, 1e-6) == 0.0
    # d3 < d1 flips the sign: the plate is pushed toward +z.
    assert casimir_generalized(med, 2e-6, 4e-7) > 0.0


def test_minkowski_screening():
    d = 1e-6
    for eps in (1.0, 2.0, 4.0, 9.0):
        f = minkowski_generalized(eps, d)
        assert -f * d ** 4 / COEF == pytest.approx(eps ** -0.5, rel=1e-12)


def test_force_ratio_values_and_monotonicity():
    assert force_ratio(1.0) == pytest.approx(1.0, rel=1e-15)
    assert force_ratio(2.0) == pytest.approx(1.2, rel=1e-12)
    assert force_ratio(4.0) == pytest.approx(4.0 / 3.0, rel=1e-12)
    assert force_ratio(10.0) == pytest.approx(10.0 / 7.0, rel=1e-12)
    grid = np.geomspace(1.0, 1e9, 200)
    vals = np.array([force_ratio(float(e)) for e in grid])
    assert np.all(np.diff(vals) > 0.0)
    assert np.all(vals >= 1.0)
    assert np.all(vals < 1.5)
    assert force_ratio(1e12) == pytest.approx(1.5, rel=1e-9)


def test_closed_forms_are_mutually_consistent():
    d1, d3 = 5e-7, 3e-6
    for eps in (1.0, 1.7, 2.0, 4.0, 10.0, 25.0):
        ratio = minkowski_generalized(eps, d1, d3) / casimir_generalized(
            StaticMedium(eps), d1, d3)
        assert ratio == pytest.approx(force_ratio(eps), rel=1e-12)


def test_validation_errors():
    with pytest.raises(ValueError):
        casimir_generalized(StaticMedium(2.0), 0.0)
    with pytest.raises(ValueError):
        casimir_generalized(StaticMedium(2.0), 1e-6, -1.0)
    with pytest.raises(ValueError):
        minkowski_generalized(0.5, 1e-6)
    with pytest.raises(ValueError):
        minkowski_generalized(2.0, -1e-6)
    with pytest.raises(ValueError):
        force_ratio(0.99)


def test_mirror_reflections_is_a_fresh_dict():
    refl = mirror_reflections()
    assert refl == {"s": -1.0, "p": 1.0}
    refl["s"] = 0.0
    assert mirror_reflections() == {"s": -1.0, "p": 1.0}


@pytest.mark.parametrize("eps,mu", [(1.0, 1.0), (2.0, 1.0), (4.0, 1.0),
                                    (1.0, 2.0), (3.0, 1.5)])
def test_constant_reflection_quadrature_matches_closed_form(eps, mu):
    med = StaticMedium(eps, mu)
    d1, d3 = 6e-7, 2.4e-6
    res = approx_plate_force(med, mirror_reflections(), mirror_reflections(),
                             mirror_reflections(), d1, d3, spec=SPEC)
    assert res.converged
    assert res.value == pytest.approx(casimir_generalized(med, d1, d3), rel=1e-7)


def test_full_engine_agrees_with_closed_form_when_filled():
    # Mirror walls, mirror plate, static eps = 2 filling: the dispersive
    # engine must land on the same closed form the frozen-reflection
    # integral reproduces.
    eps = 2.0
    d1, d3 = 5e-7, 1.5e-6
    cavity = CavityConfig(Wall.perfect_mirror(), constant(eps=eps), d1,
                          PerfectMirrorPlate(), d3, Wall.perfect_mirror())
    res = plate_force(cavity, spec=SPEC)
    assert res.converged
    assert res.force_per_area == pytest.approx(
        casimir_generalized(StaticMedium(eps), d1, d3), rel=1e-7)


def test_partially_reflecting_plate_weakens_the_force():
    med = StaticMedium(1.0)
    d1, d3 = 6e-7, 2.4e-6
    weak = approx_plate_force(med, {"s": -0.5, "p": 0.5}, mirror_reflections(),
                              mirror_reflections(), d1, d3, spec=SPEC)
    full = approx_plate_force(med, mirror_reflections(), mirror_reflections(),
                              mirror_reflections(), d1, d3, spec=SPEC)
    assert weak.converged
    assert 0.0 < abs(weak.value) < abs(full.value)


def test_constant_reflection_validation():
    med = StaticMedium(2.0)
    with pytest.raises(ValueError, match=r"r \+ 1/r"):
        approx_plate_force(med, {"s": 0.0, "p": 1.0}, mirror_reflections(),
                           mirror_reflections(), 1e-6, 2e-6)
    with pytest.raises(ValueError, match="positive"):
        approx_plate_force(med, mirror_reflections(), mirror_reflections(),
                           mirror_reflections(), 0.0, 2e-6)
