"""f, psi, the norm N(f) and the orbit-sum criterion for each model.

The functional equation gives f = c*c~_eta/(c~*c_eta) and a psi whose two
fractions both carry -delta*F(0,0,z).  c~ depends on y alone and eta fixes y,
so c~_eta = c~ and f = c/c_eta; the F(0,0,z) terms of psi cancel between the
two fractions for the same reason, which leaves
psi = ((xy)_eta - xy)/(z*c_eta).  The guard in f_psi_of asserts c~_eta = c~.
The mirrored quantities use xi in place of eta and c~ in place of c.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from errors import ConventionError, InfiniteGroup, WalkError
from exact_algebra import ONE, RING, XR, YR, ZERO, ZR, RatFunc3, reduce_mod_kernel, rf
from group_engine import (
    GroupElement,
    GroupReport,
    compose_point_maps,
    eta_map,
    group_orders,
    order4_determinant,
    tilde_delta_substitution,
    xi_map,
)
from models import ClassificationRecord, GroupOrder, Nature
from settings import get_settings
from walk_model import StepSet, has_vertical_symmetry, kernel_of

logger = logging.getLogger(__name__)

VERTICAL_SYMMETRY_FORMULA = "VerticalSymmetryFormula"
ORBIT_SUM_OF_XY = "OrbitSumOfXY"
ORDER8_HOLONOMIC = "Order8Holonomic"


def order6_tag(t: str) -> str:
    return f"Order6Holonomic(t={t})"


@dataclass(frozen=True)
class OrbitData:
    n: int
    f: RatFunc3
    psi: RatFunc3
    f_powers: Tuple[RatFunc3, ...]  # f_{delta^i}, i = 1..n-1
    psi_powers: Tuple[RatFunc3, ...]  # psi_{delta^k}, k = 0..n-1
    norm: RatFunc3  # reduced on the curve
    orbit_sum_raw: RatFunc3
    orbit_sum_on_curve: RatFunc3
    f_tilde: RatFunc3
    psi_tilde: RatFunc3
    f_tilde_powers: Tuple[RatFunc3, ...]
    psi_tilde_powers: Tuple[RatFunc3, ...]
    norm_tilde: RatFunc3
    orbit_sum_tilde_raw: RatFunc3
    orbit_sum_tilde_on_curve: RatFunc3


def f_psi_of(S: StepSet) -> Tuple[RatFunc3, RatFunc3]:
    """f = c/c_eta and psi = ((xy)_eta - xy)/(z*c_eta)"""
    kernel = kernel_of(S)
    eta = eta_map(S)
    c, c_tilde = rf(kernel.c), rf(kernel.c_tilde)
    if eta.pull_back(c_tilde) != c_tilde:
        raise ConventionError(f"{S}: c~_eta differs from c~")
    c_eta = eta.pull_back(c)
    xy = XR * YR
    return c / c_eta, (eta.pull_back(xy) - xy) / (ZR * c_eta)


def f_psi_tilde_of(S: StepSet) -> Tuple[RatFunc3, RatFunc3]:
    """f~ = c~/c~_xi and psi~ = ((xy)_xi - xy)/(z*c~_xi)"""
    kernel = kernel_of(S)
    xi = xi_map(S)
    c, c_tilde = rf(kernel.c), rf(kernel.c_tilde)
    if xi.pull_back(c) != c:
        raise ConventionError(f"{S}: c_xi differs from c")
    c_tilde_xi = xi.pull_back(c_tilde)
    xy = XR * YR
    return c_tilde / c_tilde_xi, (xi.pull_back(xy) - xy) / (ZR * c_tilde_xi)


@lru_cache(maxsize=256)
def _report(S: StepSet, n_max: int) -> GroupReport:
    return group_orders(S, n_max)


def _finite_report(S: StepSet, n_max: Optional[int]) -> GroupReport:
    report = _report(S, n_max or get_settings().n_max)
    if not report.order_H.finite:
        raise InfiniteGroup(f"{S}: order_H {report.order_H}")
    if report.order_W.finite and report.order_W != report.order_H:
        raise ConventionError(f"{S}: order_W {report.order_W} differs from order_H {report.order_H}")
    return report


def _powers(tau: GroupElement, n: int) -> List[GroupElement]:
    out = [GroupElement.identity()]
    for _ in range(n - 1):
        out.append(compose_point_maps(tau, out[-1]))
    return out


def _orbit(f: RatFunc3, psi: RatFunc3, maps: List[GroupElement], S: StepSet):
    """f and psi pulled back along the orbit, the norm and sum psi_k / prod_{i<=k} f_i"""
    view = kernel_of(S).view
    f_powers = [g.pull_back(f) for g in maps]
    psi_powers = [g.pull_back(psi) for g in maps]
    norm = ONE
    for value in f_powers:
        norm = norm * value
    raw = ZERO
    weight = ONE
    for k, value in enumerate(psi_powers):
        if k:
            weight = weight * f_powers[k]
        raw = raw + value / weight
    return (
        tuple(f_powers[1:]),
        tuple(psi_powers),
        reduce_mod_kernel(norm, view),
        raw,
        reduce_mod_kernel(raw, view),
    )


@lru_cache(maxsize=128)
def orbit_data(S: StepSet, n_max: Optional[int] = None) -> OrbitData:
    report = _finite_report(S, n_max)
    n = report.n
    f, psi = f_psi_of(S)
    f_t, psi_t = f_psi_tilde_of(S)
    f_pows, psi_pows, norm, raw, on_curve = _orbit(f, psi, list(report.delta_point_maps), S)
    tilde = _orbit(f_t, psi_t, _powers(tilde_delta_substitution(S), n), S)
    logger.debug("%s: orbit data computed for n=%d", S, n)
    return OrbitData(
        n=n,
        f=f,
        psi=psi,
        f_powers=f_pows,
        psi_powers=psi_pows,
        norm=norm,
        orbit_sum_raw=raw,
        orbit_sum_on_curve=on_curve,
        f_tilde=f_t,
        psi_tilde=psi_t,
        f_tilde_powers=tilde[0],
        psi_tilde_powers=tilde[1],
        norm_tilde=tilde[2],
        orbit_sum_tilde_raw=tilde[3],
        orbit_sum_tilde_on_curve=tilde[4],
    )


def norm_of(S: StepSet, n_max: Optional[int] = None) -> RatFunc3:
    """N(f) = prod f_{delta^i}, reduced on the curve"""
    return orbit_data(S, n_max).norm


def orbit_sum(S: StepSet, n_max: Optional[int] = None) -> Tuple[RatFunc3, RatFunc3]:
    od = orbit_data(S, n_max)
    return od.orbit_sum_raw, od.orbit_sum_on_curve


def orbit_sum_tilde(S: StepSet, n_max: Optional[int] = None) -> Tuple[RatFunc3, RatFunc3]:
    od = orbit_data(S, n_max)
    return od.orbit_sum_tilde_raw, od.orbit_sum_tilde_on_curve


def signed_orbit_sum_xy(S: StepSet, n_max: Optional[int] = None) -> RatFunc3:
    """sum_k [(xy)_{delta^k} - (xy)_{eta delta^k}]"""
    report = _finite_report(S, n_max)
    eta = eta_map(S)
    xy = XR * YR
    total = ZERO
    for power in report.delta_point_maps:
        moved = power.pull_back(xy)
        total = total + moved - eta.pull_back(moved)
    return total


def _vertical_formula(S: StepSet) -> RatFunc3:
    c = rf(kernel_of(S).c)
    return -(XR ** 2) / (ZR * c) * (XR - eta_map(S).X) * (YR - xi_map(S).Y)


def _order6_formula(t: RatFunc3) -> RatFunc3:
    return (XR - YR ** 2) * (1 - XR * YR) * (YR - XR ** 2) / (ZR * YR ** 3 * t)


def _order8_formula() -> RatFunc3:
    return (YR - 1) * (XR ** 2 - 1) * (XR ** 2 - YR) * (XR ** 2 - YR ** 2) / (XR * YR ** 4 * ZR)


def closed_form_checks(S: StepSet, od: OrbitData) -> List[Tuple[str, bool]]:
    """Compare the raw orbit sum with every displayed closed form that applies to S"""
    checks = []
    raw = od.orbit_sum_raw
    if has_vertical_symmetry(S):
        checks.append((VERTICAL_SYMMETRY_FORMULA, raw == _vertical_formula(S)))
    if od.n == 3:
        for label, t in (("y", YR), ("x+y", XR + YR)):
            checks.append((order6_tag(label), raw == _order6_formula(t)))
    if od.n == 4:
        checks.append((ORDER8_HOLONOMIC, raw == _order8_formula()))
    if kernel_of(S).c == RING.one:
        checks.append((ORBIT_SUM_OF_XY, raw == -signed_orbit_sum_xy(S) / ZR))
    return checks


def classify(S: StepSet, n_max: Optional[int] = None) -> ClassificationRecord:
    """Group orders, norm, both orbit-sum criteria and the nature verdict"""
    n_max = n_max or get_settings().n_max
    kernel = kernel_of(S)
    record = dict(
        steps=str(S),
        mask=S.mask,
        c_is_one=kernel.c == RING.one,
        vertical_symmetry=has_vertical_symmetry(S),
        determinant_zero=not order4_determinant(S),
    )
    unknown = GroupOrder.exceeds(n_max)
    try:
        report = _report(S, n_max)
    except WalkError as e:
        logger.warning("%s: group computation failed: %s", S, e)
        return ClassificationRecord(**record, order_W=unknown, order_H=unknown, nature=Nature.NOT_COVERED, note=str(e))
    record.update(order_W=report.order_W, order_H=report.order_H)
    if not report.order_H.finite:
        return ClassificationRecord(**record, nature=Nature.NOT_COVERED, note="group order exceeds the bound")

    try:
        od = orbit_data(S, n_max)
    except WalkError as e:
        logger.warning("%s: orbit computation failed: %s", S, e)
        return ClassificationRecord(**record, nature=Nature.NOT_COVERED, note=str(e))

    norm_ok = od.norm.is_one
    cns = od.orbit_sum_on_curve.is_zero
    cns_tilde = od.orbit_sum_tilde_on_curve.is_zero
    record.update(norm_ok=norm_ok, cns=cns, cns_tilde=cns_tilde)
    if not norm_ok:
        return ClassificationRecord(**record, nature=Nature.NOT_COVERED, note=f"norm is {od.norm}, not 1")

    passed = [tag for tag, ok in closed_form_checks(S, od) if ok]
    nature = Nature.ALGEBRAIC if cns and cns_tilde else Nature.HOLONOMIC_NON_ALGEBRAIC
    logger.info("%s: %s", S, nature.value)
    return ClassificationRecord(**record, nature=nature, closed_form_tag=passed[0] if passed else None)
