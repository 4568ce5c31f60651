import random
from collections import Counter

import pytest

from classifier import (
    ORBIT_SUM_OF_XY,
    ORDER8_HOLONOMIC,
    VERTICAL_SYMMETRY_FORMULA,
    classify,
    closed_form_checks,
    f_psi_of,
    f_psi_tilde_of,
    norm_of,
    orbit_data,
    orbit_sum,
    orbit_sum_tilde,
    order6_tag,
    signed_orbit_sum_xy,
)
from errors import InfiniteGroup, PoleAtPoint
from exact_algebra import XR, YR, ZR, eval_at, is_zero_on_curve, random_curve_point, rf
from group_engine import eta_map, xi_map
from models import Nature
from walk_model import StepSet, census_survivors, has_vertical_symmetry, kernel_of

ALGEBRAIC_STEPS = {"S,W,NE", "SW,E,N", "SW,S,W,E,N,NE", "SW,W,E,NE"}


def test_kreweras_f_and_psi(kreweras):
    """Test f = x^2 y and psi = (y - (xy)^2)/z"""
    f, psi = f_psi_of(kreweras)
    assert f == XR ** 2 * YR
    assert psi == (YR - (XR * YR) ** 2) / ZR


def test_kreweras_orbit_pullbacks(kreweras):
    """Test f_delta, f_delta^2 and psi_delta along the orbit"""
    od = orbit_data(kreweras)
    assert od.n == 3
    assert od.f_powers == (1 / (XR * YR ** 2), YR / XR)
    assert od.psi_powers[1] == (XR - 1 / YR ** 2) / ZR


def test_norm_is_one(kreweras, gessel, vertical_model, tandem):
    """Test N(f) = 1 on the curve"""
    for S in (kreweras, gessel, vertical_model, tandem):
        assert norm_of(S).is_one


def test_kreweras_orbit_sum_vanishes(kreweras):
    """Test the Kreweras orbit sum is zero in C^2 and on the curve"""
    raw, on_curve = orbit_sum(kreweras)
    assert raw.is_zero
    assert on_curve.is_zero
    assert is_zero_on_curve(raw, kernel_of(kreweras).view)


def test_gessel_both_orbit_sums_vanish(gessel):
    """Test both orbit-sum criteria hold for Gessel on the curve"""
    assert orbit_sum(gessel)[1].is_zero
    assert orbit_sum_tilde(gessel)[1].is_zero


def test_tilde_f_for_vertical_model(vertical_model):
    """Test f~ is well defined and its norm is one"""
    f_t, psi_t = f_psi_tilde_of(vertical_model)
    assert not f_t.is_zero
    assert orbit_data(vertical_model).norm_tilde.is_one


def test_vertical_orbit_sum_formula(vertical_model):
    """Test the raw orbit sum equals the vertical symmetry closed form"""
    od = orbit_data(vertical_model)
    assert (VERTICAL_SYMMETRY_FORMULA, True) in closed_form_checks(vertical_model, od)
    assert not od.orbit_sum_on_curve.is_zero


def test_order6_formula_with_t_y(tandem):
    """Test the order-6 orbit sum with t = y"""
    checks = dict(closed_form_checks(tandem, orbit_data(tandem)))
    assert checks[order6_tag("y")]
    assert not checks[order6_tag("x+y")]


def test_order6_formula_with_t_x_plus_y(order6_x_plus_y):
    """Test the order-6 orbit sum with t = x + y"""
    checks = dict(closed_form_checks(order6_x_plus_y, orbit_data(order6_x_plus_y)))
    assert checks[order6_tag("x+y")]


def test_order8_formula(order8_holonomic):
    """Test the order-8 closed form"""
    checks = dict(closed_form_checks(order8_holonomic, orbit_data(order8_holonomic)))
    assert checks[ORDER8_HOLONOMIC]


def test_signed_orbit_sum_for_c_equal_one(gessel, reverse_kreweras):
    """Test the orbit sum equals minus the signed orbit sum of xy over z when c = 1"""
    for S in (gessel, reverse_kreweras):
        checks = dict(closed_form_checks(S, orbit_data(S)))
        assert checks[ORBIT_SUM_OF_XY]


def test_signed_orbit_sum_of_xy(kreweras, tandem):
    """Test the signed orbit sum of xy vanishes for Kreweras and not for the tandem walk"""
    assert signed_orbit_sum_xy(kreweras).is_zero
    assert not signed_orbit_sum_xy(tandem).is_zero


def test_orbit_data_needs_finite_group(infinite_model):
    """Test orbit quantities are refused for an infinite group"""
    with pytest.raises(InfiniteGroup):
        orbit_data(infinite_model, 6)


def test_classify_verdicts(kreweras, gessel, vertical_model):
    """Test verdicts of the three displayed examples"""
    record = classify(kreweras)
    assert record.nature == Nature.ALGEBRAIC
    assert record.order_H.value == 6
    record = classify(gessel)
    assert record.nature == Nature.ALGEBRAIC
    assert record.order_H.value == 8
    assert record.c_is_one
    record = classify(vertical_model)
    assert record.nature == Nature.HOLONOMIC_NON_ALGEBRAIC
    assert record.order_H.value == 4
    assert record.closed_form_tag == VERTICAL_SYMMETRY_FORMULA
    assert record.determinant_zero


def test_classify_infinite_model(infinite_model):
    """Test an infinite group is not covered"""
    record = classify(infinite_model, n_max=6)
    assert record.nature == Nature.NOT_COVERED
    assert not record.order_H.finite
    assert record.note


@pytest.mark.slow
def test_catalog_group_counts(catalog):
    """Test 23 finite groups: 16 of order 4, 5 of order 6, 2 of order 8"""
    finite = [r for r in catalog.models if r.order_H.finite]
    assert len(catalog.models) == 79
    assert len(finite) == 23
    assert Counter(r.order_H.value for r in finite) == {4: 16, 6: 5, 8: 2}
    assert all(r.order_W.value % r.order_H.value == 0 for r in finite if r.order_W.finite)


@pytest.mark.slow
def test_catalog_norm_and_natures(catalog):
    """Test N(f) = 1 everywhere and 4 algebraic against 19 non-algebraic"""
    finite = [r for r in catalog.models if r.order_H.finite]
    assert all(r.norm_ok for r in finite)
    natures = Counter(r.nature for r in finite)
    assert natures[Nature.ALGEBRAIC] == 4
    assert natures[Nature.HOLONOMIC_NON_ALGEBRAIC] == 19
    assert {r.steps for r in finite if r.nature == Nature.ALGEBRAIC} == ALGEBRAIC_STEPS
    order8_algebraic = [r for r in finite if r.order_H.value == 8 and r.nature == Nature.ALGEBRAIC]
    assert [r.steps for r in order8_algebraic] == ["SW,W,E,NE"]


@pytest.mark.slow
def test_catalog_vertical_models(catalog):
    """Test the order-4 models are exactly the vertically symmetric finite ones"""
    for record in catalog.models:
        S = StepSet(mask=record.mask)
        if record.order_H.finite and record.order_H.value == 4:
            assert has_vertical_symmetry(S)
            assert record.nature == Nature.HOLONOMIC_NON_ALGEBRAIC
            assert record.closed_form_tag == VERTICAL_SYMMETRY_FORMULA
        if has_vertical_symmetry(S):
            assert record.order_H.finite and record.order_H.value == 4


@pytest.mark.slow
def test_catalog_closed_form_tags(catalog):
    """Test each order-6 and order-8 formula matches exactly the expected number of models"""
    tags = Counter(r.closed_form_tag for r in catalog.models if r.closed_form_tag)
    assert tags[VERTICAL_SYMMETRY_FORMULA] == 16
    assert tags[order6_tag("y")] == 1
    assert tags[order6_tag("x+y")] == 1
    assert tags[ORDER8_HOLONOMIC] == 1


@pytest.mark.slow
def test_catalog_signed_identity_for_c_one(catalog):
    """Test the c = 1 identity on every finite model with c = 1"""
    for record in catalog.models:
        if record.order_H.finite and record.c_is_one:
            S = StepSet(mask=record.mask)
            assert dict(closed_form_checks(S, orbit_data(S)))[ORBIT_SUM_OF_XY]


@pytest.mark.parametrize("S", census_survivors(), ids=str)
def test_boundary_coefficients_fixed_by_generators(S):
    """Test c~_eta = c~ and c_xi = c for every canonical model"""
    kernel = kernel_of(S)
    c, c_tilde = rf(kernel.c), rf(kernel.c_tilde)
    assert eta_map(S).pull_back(c_tilde) == c_tilde
    assert xi_map(S).pull_back(c) == c


def _agree_at_curve_point(h, reduced, view):
    rng = random.Random(3)
    for _ in range(20):
        point = random_curve_point(view, rng)
        if point is None:
            continue
        try:
            return eval_at(h, point) == eval_at(reduced, point)
        except PoleAtPoint:
            continue
    pytest.fail("no usable curve point")


@pytest.mark.slow
def test_raw_and_reduced_orbit_sums_agree(catalog):
    """Test raw and curve-reduced orbit sums give the same verdicts and values on the curve"""
    for record in catalog.models:
        if not record.order_H.finite:
            continue
        S = StepSet(mask=record.mask)
        view = kernel_of(S).view
        od = orbit_data(S)
        for raw, reduced, verdict in (
            (od.orbit_sum_raw, od.orbit_sum_on_curve, record.cns),
            (od.orbit_sum_tilde_raw, od.orbit_sum_tilde_on_curve, record.cns_tilde),
        ):
            assert is_zero_on_curve(raw, view) == reduced.is_zero == verdict, record.steps
            assert is_zero_on_curve(raw * (XR + 2), view) == verdict, record.steps
            assert _agree_at_curve_point(raw, reduced, view), record.steps
