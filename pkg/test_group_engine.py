import pytest

from errors import UndefinedGenerator
from exact_algebra import RING, XR, YR, Z, is_zero_on_curve
from group_engine import (
    GroupElement,
    compose_point_maps,
    delta_substitution,
    eta_map,
    group_orders,
    order4_determinant,
    tilde_delta_substitution,
    xi_map,
)
from walk_model import StepSet, census_survivors, generating_poly, kernel_of


def test_kreweras_generators(kreweras):
    """Test xi = (x, 1/(xy)) and eta = (1/(xy), y)"""
    assert xi_map(kreweras) == GroupElement(XR, 1 / (XR * YR))
    assert eta_map(kreweras) == GroupElement(1 / (XR * YR), YR)


def test_gessel_generators(gessel):
    """Test xi = (x, 1/(x^2 y)) and eta = (1/(xy), y)"""
    assert xi_map(gessel) == GroupElement(XR, 1 / (XR ** 2 * YR))
    assert eta_map(gessel) == GroupElement(1 / (XR * YR), YR)


def test_vertical_eta(vertical_model, simple_walk):
    """Test eta = (1/x, y) under vertical symmetry"""
    for S in (vertical_model, simple_walk):
        assert eta_map(S) == GroupElement(1 / XR, YR)


def test_generators_are_involutions(kreweras, gessel, tandem):
    """Test xi^2 = eta^2 = id"""
    for S in (kreweras, gessel, tandem):
        for g in (xi_map(S), eta_map(S)):
            assert compose_point_maps(g, g).is_identity


def test_generators_preserve_step_polynomial(gessel, tandem):
    """Test xi and eta leave sum x^i y^j invariant"""
    for S in (gessel, tandem):
        step_poly = generating_poly(S)
        assert xi_map(S).pull_back(step_poly) == step_poly
        assert eta_map(S).pull_back(step_poly) == step_poly


def test_undefined_generator():
    """Test xi needs steps on both horizontal lines"""
    with pytest.raises(UndefinedGenerator):
        xi_map(StepSet.parse("N,E,W"))


def test_kreweras_products(kreweras):
    """Test xi o eta = (1/(xy), x) and eta o xi = (y, 1/(xy))"""
    xi, eta = xi_map(kreweras), eta_map(kreweras)
    assert compose_point_maps(xi, eta) == GroupElement(1 / (XR * YR), XR)
    assert compose_point_maps(eta, xi) == GroupElement(YR, 1 / (XR * YR))
    assert delta_substitution(kreweras) == GroupElement(1 / (XR * YR), XR)
    assert tilde_delta_substitution(kreweras) == GroupElement(YR, 1 / (XR * YR))


def test_compose_with_identity(kreweras):
    """Test the identity is neutral"""
    xi = xi_map(kreweras)
    assert compose_point_maps(GroupElement.identity(), xi) == xi
    assert compose_point_maps(xi, GroupElement.identity()) == xi


def test_delta_pullback_of_f(kreweras):
    """Test f_delta = 1/(x y^2) and f_delta^2 = y/x for f = x^2 y"""
    sigma = delta_substitution(kreweras)
    f = XR ** 2 * YR
    f_delta = sigma.pull_back(f)
    assert f_delta == 1 / (XR * YR ** 2)
    assert sigma.pull_back(f_delta) == YR / XR


@pytest.mark.parametrize(
    "steps, order",
    [
        ("N,SW,SE", 4),
        ("N,S,E,W", 4),
        ("NE,NW,SE,SW", 4),
        ("NE,W,S", 6),
        ("SW,N,E", 6),
        ("NE,W,S,SW,N,E", 6),
        ("N,W,SE", 6),
        ("N,S,E,W,NW,SE", 6),
        ("E,W,NE,SW", 8),
        ("E,W,NW,SE", 8),
    ],
)
def test_finite_orders(steps, order):
    """Test the orders of W and H for finite-group models"""
    report = group_orders(StepSet.parse(steps))
    assert report.order_W.finite and report.order_W.value == order
    assert report.order_H.finite and report.order_H.value == order
    assert report.n == order // 2
    assert len(report.delta_point_maps) == order // 2


def test_delta_point_maps_start_at_identity(gessel):
    """Test the orbit maps are sigma^0 .. sigma^(n-1)"""
    report = group_orders(gessel)
    assert report.delta_point_maps[0].is_identity
    assert report.delta_point_maps[1] == delta_substitution(gessel)


def test_infinite_group(infinite_model):
    """Test an infinite group reports the exceeded bound"""
    report = group_orders(infinite_model, n_max=6)
    assert not report.order_W.finite
    assert not report.order_H.finite
    assert report.order_H.value == 12
    assert report.n is None


def test_order_h_divides_order_w(tandem, gessel):
    """Test order_H divides order_W"""
    for S in (tandem, gessel):
        report = group_orders(S)
        assert report.order_W.value % report.order_H.value == 0


def test_order4_determinant(kreweras, simple_walk):
    """Test the determinant is -z for Kreweras and vanishes for a vertical model"""
    assert order4_determinant(kreweras) == -Z
    assert order4_determinant(simple_walk) == RING.zero


def test_delta_orbit_closes_on_curve(tandem):
    """Test sigma^n acts as the identity on the kernel curve"""
    report = group_orders(tandem)
    sigma = delta_substitution(tandem)
    last = compose_point_maps(sigma, report.delta_point_maps[-1])
    view = kernel_of(tandem).view
    assert is_zero_on_curve(last.X - XR, view)
    assert is_zero_on_curve(last.Y - YR, view)


@pytest.mark.parametrize("S", census_survivors(), ids=str)
def test_generators_are_involutions_for_every_model(S):
    """Test xi^2 = eta^2 = id exactly for every canonical model"""
    for g in (xi_map(S), eta_map(S)):
        assert compose_point_maps(g, g).is_identity


@pytest.mark.slow
def test_determinant_vanishes_exactly_for_order_four(catalog):
    """Test order4_determinant is zero iff the group on the curve has order 4"""
    for record in catalog.models:
        S = StepSet(mask=record.mask)
        order_four = record.order_H.finite and record.order_H.value == 4
        assert (not order4_determinant(S)) == order_four, record.steps
