"""The birational involutions xi, eta of a walk and the order of delta = eta*xi.

Automorphisms act on functions by pulling back along a substitution map.  For
delta = eta*xi that map is sigma = xi_pt o eta_pt, so h_delta = h o sigma.
With Kreweras' walk: sigma = (1/(xy), x) and f_delta = 1/(xy^2) for f = x^2 y.
"""
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from errors import PoleAtPoint, UndefinedGenerator
from exact_algebra import (
    RING,
    XR,
    YR,
    KernelView,
    Poly3,
    RatFunc3,
    X,
    Y,
    Z,
    eval_mod,
    is_zero_on_curve,
    rf_normalize,
    rf_substitute,
)
from models import GroupOrder
from settings import get_settings
from walk_model import StepSet, generating_poly, kernel_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupElement:
    """The point map (x, y) -> (X, Y); z is untouched"""

    X: RatFunc3
    Y: RatFunc3

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(XR, YR)

    @property
    def is_identity(self) -> bool:
        return self.X == XR and self.Y == YR

    @property
    def degree(self) -> int:
        return max(self.X.degree, self.Y.degree)

    def pull_back(self, h: RatFunc3) -> RatFunc3:
        """h o self"""
        return rf_substitute(h, self.X, self.Y)

    def eval_mod(self, point: Sequence[int], modulus: int) -> Tuple[int, int]:
        return eval_mod(self.X, point, modulus), eval_mod(self.Y, point, modulus)

    def __str__(self) -> str:
        return f"({self.X}, {self.Y})"


@dataclass(frozen=True)
class GroupReport:
    steps: StepSet
    order_W: GroupOrder
    order_H: GroupOrder
    delta_point_maps: Tuple[GroupElement, ...]  # sigma^0 .. sigma^(n-1) when finite
    n_max: int

    @property
    def n(self) -> Optional[int]:
        return self.order_H.half


def _row_sum(S: StepSet, j: int) -> Poly3:
    return sum((X ** (i + 1) for i, jj in S.vectors if jj == j), RING.zero)


def _column_sum(S: StepSet, i: int) -> Poly3:
    return sum((Y ** (j + 1) for ii, j in S.vectors if ii == i), RING.zero)


def xi_map(S: StepSet) -> GroupElement:
    """(x, (1/y) * A-(x)/A+(x))"""
    lower, upper = _row_sum(S, -1), _row_sum(S, 1)
    if not lower or not upper:
        raise UndefinedGenerator(f"xi undefined for {S}: no step with j = {-1 if not lower else 1}")
    return GroupElement(XR, rf_normalize(lower, Y * upper))


def eta_map(S: StepSet) -> GroupElement:
    """((1/x) * B-(y)/B+(y), y)"""
    left, right = _column_sum(S, -1), _column_sum(S, 1)
    if not left or not right:
        raise UndefinedGenerator(f"eta undefined for {S}: no step with i = {-1 if not left else 1}")
    return GroupElement(rf_normalize(left, X * right), YR)


def compose_point_maps(g: GroupElement, h: GroupElement) -> GroupElement:
    """g o h: apply h first"""
    if g.is_identity:
        return h
    return GroupElement(rf_substitute(g.X, h.X, h.Y), rf_substitute(g.Y, h.X, h.Y))


def delta_substitution(S: StepSet) -> GroupElement:
    """Substitution map of delta = eta*xi: xi_pt o eta_pt"""
    return compose_point_maps(xi_map(S), eta_map(S))


def tilde_delta_substitution(S: StepSet) -> GroupElement:
    """Substitution map of delta~ = xi*eta: eta_pt o xi_pt"""
    return compose_point_maps(eta_map(S), xi_map(S))


def _plane_points(rng: random.Random, count: int, modulus: int) -> List[Tuple[int, int, int]]:
    return [tuple(rng.randrange(2, modulus - 1) for _ in range(3)) for _ in range(count)]


def _curve_points(S: StepSet, rng: random.Random, count: int, modulus: int) -> List[Tuple[int, int, int]]:
    """Points with z = 1/sum(x^i y^j), which lie on the kernel curve"""
    step_poly = generating_poly(S)
    points = []
    while len(points) < count:
        x, y = rng.randrange(2, modulus - 1), rng.randrange(2, modulus - 1)
        try:
            value = eval_mod(step_poly, (x, y, 1), modulus)
        except PoleAtPoint:
            continue
        if value:
            points.append((x, y, pow(value, -1, modulus)))
    return points


def _returning_orders(sigma: GroupElement, points: List[Tuple[int, int, int]], n_max: int, modulus: int) -> Set[int]:
    """n <= n_max for which sigma^n fixes every sample point mod p"""
    candidates = set(range(1, n_max + 1))
    for x, y, z in points:
        current = (x, y)
        returned = set()
        for n in range(1, n_max + 1):
            try:
                current = sigma.eval_mod((current[0], current[1], z), modulus)
            except PoleAtPoint:
                # no information past a pole
                returned.update(range(n, n_max + 1))
                break
            if current == (x, y):
                returned.add(n)
        candidates &= returned
    return candidates


def is_identity_on_curve(g: GroupElement, view: KernelView) -> bool:
    return is_zero_on_curve(g.X - XR, view) and is_zero_on_curve(g.Y - YR, view)


def group_orders(
    S: StepSet,
    n_max: Optional[int] = None,
    degree_cap: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> GroupReport:
    """Orders of W (in C^2) and H (on the curve), or ExceedsBound(2*n_max)"""
    settings = get_settings()
    n_max = n_max or settings.n_max
    degree_cap = degree_cap or settings.degree_cap
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    rng = rng or random.Random(settings.random_seed)
    modulus = settings.modulus

    sigma = delta_substitution(S)
    view = kernel_of(S).view
    w_candidates = _returning_orders(sigma, _plane_points(rng, settings.prefilter_points, modulus), n_max, modulus)
    h_candidates = _returning_orders(
        sigma, _curve_points(S, rng, settings.prefilter_points, modulus), n_max, modulus
    )
    logger.debug("%s: candidate half-orders W=%s H=%s", S, sorted(w_candidates), sorted(h_candidates))

    n_W: Optional[int] = None
    n_H: Optional[int] = None
    powers = [GroupElement.identity()]
    horizon = max(w_candidates | h_candidates, default=0)
    for n in range(1, horizon + 1):
        power = compose_point_maps(sigma, powers[-1])
        if power.degree > degree_cap:
            logger.info("%s: degree %d of delta^%d exceeds the cap %d", S, power.degree, n, degree_cap)
            break
        powers.append(power)
        if n_H is None and n in h_candidates and is_identity_on_curve(power, view):
            n_H = n
        if n_W is None and n in w_candidates and power.is_identity:
            n_W = n
        if n_W is not None:
            break

    order_W = GroupOrder.of_half(n_W) if n_W else GroupOrder.exceeds(n_max)
    order_H = GroupOrder.of_half(n_H) if n_H else GroupOrder.exceeds(n_max)
    logger.info("%s: order_W=%s order_H=%s", S, order_W, order_H)
    return GroupReport(
        steps=S,
        order_W=order_W,
        order_H=order_H,
        delta_point_maps=tuple(powers[:n_H]) if n_H else tuple(powers),
        n_max=n_max,
    )


def order4_determinant(S: StepSet) -> Poly3:
    """z times the 3x3 determinant whose vanishing characterizes order 4 on the curve"""

    def r(i: int, j: int) -> Poly3:
        return RING.one if S.has((i, j)) else RING.zero

    (a, b, c), (d, e, f), (g, h, k) = (
        (r(1, 1), r(1, 0), r(1, -1)),
        (Z * r(0, 1), -RING.one, Z * r(0, -1)),
        (r(-1, 1), r(-1, 0), r(-1, -1)),
    )
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g)
