"""Numeric verification of the elliptic uniformization of a kernel curve.

Conventions, fixed once and asserted by verify_model:

* D(x) = b(x)^2 - 4 a(x) c(x) is taken from the stored kernel z*K at z = z0,
  so that u = 2 a(x) y + b(x) satisfies u^2 = D(x).
* The uniformizing Weierstrass function has invariants (16 g2, 64 g3), where
  (g2, g3) are the classical invariants of the quartic; this is the scaling
  under which x = x4 + D'(x4)/(wp - D''(x4)/6) and x = (wp - d2/3)/d3
  parametrize u^2 = D.
* omega2 is the real full period, omega1 the purely imaginary full period
  with Im > 0, so zeta(omega1/2)*omega2 - zeta(omega2/2)*omega1 = -i*pi.
* wp, wp' and zeta come from Jacobi theta_1 at nome exp(i*pi*omega1/omega2).
* delta acts as w -> w + omega3 with 0 < omega3 < omega2, and
  Phi~(w + omega3) - Phi~(w) = +1.
"""
import logging
import random
from contextlib import nullcontext
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mp, mpf
from pydantic import BaseModel, ConfigDict, Field
from sympy import Poly, Rational, Symbol

from classifier import orbit_sum
from errors import (
    ComplexBranchPoints,
    DegenerateKernel,
    InfiniteGroup,
    PoleAtLatticePoint,
    PoleOfUniformization,
    RationalityViolated,
    SampleAtSingularity,
    TranslationNotFound,
)
from exact_algebra import QQ, KernelView, Poly3, RatFunc3, evaluate_poly
from group_engine import delta_substitution, group_orders
from models import EllipticReport
from settings import get_settings
from walk_model import Kernel, StepSet, kernel_of

logger = logging.getLogger(__name__)

TOLERANCES: Dict[str, float] = {
    "kernel": 1e-20,
    "wp_ode": 1e-20,
    "legendre_12": 1e-20,
    "legendre_13": 1e-20,
    "phi_periods": 1e-20,
    "translation": 1e-15,
    "rationality": 1e-10,
    "derivative": 1e-6,
}


class EllipticData(BaseModel):
    """Curve data of one model at one value z0"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    steps: StepSet
    z0: Fraction
    prec: int = Field(..., ge=53)
    d: List[Fraction] = Field(..., description="d0..d4 of D(x)")
    a_coeffs: List[Fraction]
    b_coeffs: List[Fraction]
    case: int = Field(..., ge=1, le=2)
    branch_points: List[Any]
    g2: Fraction
    g3: Fraction
    G2: Fraction
    G3: Fraction
    e: List[Any]
    omega1: Any
    omega2: Any
    x4: Any = None
    glue_A: Any = None
    glue_B: Any = None
    omega3: Any = None
    n: Optional[int] = None
    k: Optional[int] = None


def _precision(prec: Optional[int]):
    return mp.workprec(prec) if prec else nullcontext()


def _mpq(c: Any) -> mpf:
    return mpf(int(QQ.numer(c))) / int(QQ.denom(c))


def _mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _horner(coeffs: Sequence[Fraction], x: Any) -> Any:
    total = mpf(0)
    for c in reversed(coeffs):
        total = total * x + _mpf(c)
    return total


def _tiny() -> mpf:
    return mpf(2) ** (-mp.prec // 2)


def _cutoff() -> mpf:
    """Relative distance treated as on a lattice or branch point; w may carry double-precision rounding"""
    return max(_tiny(), mpf(2) ** -40)


def _x_coeffs(p: Poly3, z0: Fraction) -> List[Fraction]:
    """Coefficients in x of a polynomial in (x, z), at z = z0"""
    out: List[Fraction] = []
    for (i, _, k), c in p.items():
        while len(out) <= i:
            out.append(Fraction(0))
        out[i] += Fraction(int(QQ.numer(c)), int(QQ.denom(c))) * z0 ** k
    return out or [Fraction(0)]


def _mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def discriminant_x(K: Union[Kernel, KernelView], z0: Fraction) -> List[Fraction]:
    """d0..d4 of D(x) = b(x)^2 - 4 a(x) c(x) at z = z0"""
    view = K.view if isinstance(K, Kernel) else K
    z0 = Fraction(z0)
    a, b, c = (_x_coeffs(p, z0) for p in (view.a, view.b, view.c_low))
    bb, ac = _mul(b, b), _mul(a, c)
    size = max(len(bb), len(ac), 5)
    d = [(bb[i] if i < len(bb) else 0) - 4 * (ac[i] if i < len(ac) else 0) for i in range(size)]
    if any(d[5:]):
        raise DegenerateKernel(f"discriminant has degree {max(i for i, v in enumerate(d) if v)} > 4")
    return [Fraction(v) for v in d[:5]]


def _sympy_poly(d: Sequence[Fraction]) -> Poly:
    x = Symbol("x")
    return Poly([Rational(c.numerator, c.denominator) for c in reversed(d)], x)


def genus_check(d: Sequence[Fraction]) -> int:
    """1 iff D, with the point at infinity when d4 = 0, has four distinct roots"""
    D = _sympy_poly(d)
    if D.degree() not in (3, 4):
        return 0
    return 1 if D.gcd(D.diff()).degree() == 0 else 0


def quartic_invariants(d: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
    """Classical invariants (g2, g3) of d4 x^4 + ... + d0"""
    d0, d1, d2, d3, d4 = (Fraction(v) for v in d)
    g2 = d0 * d4 - d1 * d3 / 4 + d2 ** 2 / 12
    g3 = d0 * d2 * d4 / 6 + d1 * d2 * d3 / 48 - d1 ** 2 * d4 / 16 - d0 * d3 ** 2 / 16 - d2 ** 3 / 216
    return g2, g3


def _real_roots(coeffs_high_first: List[Any], what: str) -> List[mpf]:
    roots = mpmath.polyroots(coeffs_high_first, maxsteps=400, extraprec=mp.prec)
    scale = max(1, max(abs(r) for r in roots))
    if any(abs(mpmath.im(r)) > _tiny() * scale for r in roots):
        raise ComplexBranchPoints(f"{what} has non-real roots: {[mpmath.nstr(r, 8) for r in roots]}")
    return sorted(mpmath.re(r) for r in roots)


def branch_points(d: Sequence[Fraction], prec: Optional[int] = None) -> List[mpf]:
    """Real roots of D in increasing order"""
    with _precision(prec):
        top = 4 if d[4] else 3
        return _real_roots([_mpf(Fraction(d[i])) for i in range(top, -1, -1)], "D(x)")


def _e_roots(G2: Fraction, G3: Fraction) -> List[mpf]:
    """e1 > e2 > e3, roots of 4 s^3 - G2 s - G3"""
    return sorted(_real_roots([mpf(4), mpf(0), -_mpf(G2), -_mpf(G3)], "the Weierstrass cubic"), reverse=True)


def periods(g2: Fraction, g3: Fraction, d: Sequence[Fraction], prec: Optional[int] = None) -> Tuple[Any, mpf]:
    """(omega1, omega2) of the uniformizing lattice, by AGM"""
    with _precision(prec):
        branch_points(d)
        e1, e2, e3 = _e_roots(16 * Fraction(g2), 64 * Fraction(g3))
        omega2 = mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2))
        omega1 = mpmath.mpc(0, 1) * mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e2 - e3))
        return omega1, omega2


def _check_not_lattice(w: Any, omega1: Any, omega2: Any) -> None:
    tau = omega1 / omega2
    m = mpmath.nint(mpmath.im(w / omega2) / mpmath.im(tau))
    r = w - m * omega1
    r = r - mpmath.nint(mpmath.re(r / omega2)) * omega2
    if abs(r) < _cutoff() * abs(omega2):
        raise PoleAtLatticePoint(f"{mpmath.nstr(w, 10)} is a lattice point")


def _theta(w: Any, omega1: Any, omega2: Any) -> Tuple[Any, List[Any], Any]:
    _check_not_lattice(w, omega1, omega2)
    q = mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi * omega1 / omega2)
    v = mpmath.pi * w / omega2
    values = [mpmath.jtheta(1, v, q, derivative) for derivative in range(4)]
    return q, values, mpmath.pi / omega2


def _eta(q: Any, omega2: Any) -> Any:
    """zeta(omega2/2)"""
    return -mpmath.pi ** 2 * mpmath.jtheta(1, 0, q, 3) / (6 * omega2 * mpmath.jtheta(1, 0, q, 1))


def wp_eval(w: Any, omega1: Any, omega2: Any, prec: Optional[int] = None) -> Any:
    with _precision(prec):
        q, (t0, t1, t2, _), s = _theta(w, omega1, omega2)
        return -2 * _eta(q, omega2) / omega2 - s ** 2 * (t2 * t0 - t1 ** 2) / t0 ** 2


def wp_prime_eval(w: Any, omega1: Any, omega2: Any, prec: Optional[int] = None) -> Any:
    with _precision(prec):
        _, (t0, t1, t2, t3), s = _theta(w, omega1, omega2)
        return -s ** 3 * (t3 / t0 - 3 * t2 * t1 / t0 ** 2 + 2 * t1 ** 3 / t0 ** 3)


def zeta_eval(w: Any, omega1: Any, omega2: Any, prec: Optional[int] = None) -> Any:
    with _precision(prec):
        q, (t0, t1, _, _), s = _theta(w, omega1, omega2)
        return 2 * _eta(q, omega2) * w / omega2 + s * t1 / t0


def wp_inverse(s: Any, data: EllipticData) -> Any:
    """One preimage of s under wp, from Carlson's R_F, polished by Newton"""
    with _precision(data.prec):
        e1, e2, e3 = data.e
        w = mpmath.elliprf(s - e1, s - e2, s - e3)
        try:
            w = mpmath.findroot(lambda t: wp_eval(t, data.omega1, data.omega2) - s, w)
        except (ValueError, ZeroDivisionError):
            pass
        return w


def elliptic_data(S: StepSet, z0: Optional[Fraction] = None, prec: Optional[int] = None) -> EllipticData:
    """Discriminant, branch points, invariants and periods of the kernel curve at z0"""
    prec = prec or get_settings().precision
    z0 = Fraction(1, 2 * S.size) if z0 is None else Fraction(z0)
    if not 0 < z0 < Fraction(1, S.size):
        raise ValueError(f"z0 = {z0} outside (0, 1/{S.size})")
    kernel = kernel_of(S)
    d = discriminant_x(kernel, z0)
    if genus_check(d) != 1:
        raise DegenerateKernel(f"{S}: genus 0 at z0 = {z0}")
    g2, g3 = quartic_invariants(d)
    with mp.workprec(prec):
        roots = branch_points(d)
        omega1, omega2 = periods(g2, g3, d)
        fields: Dict[str, Any] = {}
        if d[4]:
            D = [_mpf(c) for c in d]
            slope = lambda x: sum(i * D[i] * x ** (i - 1) for i in range(1, 5))
            curvature = lambda x: sum(i * (i - 1) * D[i] * x ** (i - 2) for i in range(2, 5))
            x4 = max(r for r in roots if slope(r) > 0)
            fields.update(case=1, x4=x4, glue_A=slope(x4), glue_B=curvature(x4) / 6)
        else:
            fields.update(case=2)
        data = EllipticData(
            steps=S,
            z0=z0,
            prec=prec,
            d=d,
            a_coeffs=_x_coeffs(kernel.view.a, z0),
            b_coeffs=_x_coeffs(kernel.view.b, z0),
            branch_points=roots,
            g2=g2,
            g3=g3,
            G2=16 * g2,
            G3=64 * g3,
            e=_e_roots(16 * g2, 64 * g3),
            omega1=omega1,
            omega2=omega2,
            **fields,
        )
    logger.info("%s: elliptic data at z0=%s, case %d", S, z0, data.case)
    return data


def glue(data: EllipticData, x: Any) -> Any:
    """The fractional linear g with wp(w) = g(x(w))"""
    if data.case == 1:
        return data.glue_B + data.glue_A / (x - data.x4)
    d2, d3 = _mpf(data.d[2]), _mpf(data.d[3])
    return d3 * x + d2 / 3


def glue_prime(data: EllipticData, x: Any) -> Any:
    if data.case == 1:
        return -data.glue_A / (x - data.x4) ** 2
    return _mpf(data.d[3])


def x_of(data: EllipticData, w: Any) -> Any:
    P = wp_eval(w, data.omega1, data.omega2)
    if data.case == 1:
        t = P - data.glue_B
        if abs(t) < _tiny():
            raise PoleOfUniformization(f"wp({mpmath.nstr(w, 10)}) = D''(x4)/6")
        return data.x4 + data.glue_A / t
    return (P - _mpf(data.d[2]) / 3) / _mpf(data.d[3])


def uniformize(K: Union[Kernel, KernelView], data: EllipticData, w: Any) -> Tuple[Any, Any]:
    """(x(w), y(w)) on the kernel curve at z0"""
    view = K.view if isinstance(K, Kernel) else K
    with mp.workprec(data.prec):
        P = wp_eval(w, data.omega1, data.omega2)
        dP = wp_prime_eval(w, data.omega1, data.omega2)
        if data.case == 1:
            t = P - data.glue_B
            if abs(t) < _tiny():
                raise PoleOfUniformization(f"wp({mpmath.nstr(w, 10)}) = D''(x4)/6")
            x = data.x4 + data.glue_A / t
            u = data.glue_A * dP / (2 * t ** 2)
        else:
            d2, d3 = _mpf(data.d[2]), _mpf(data.d[3])
            x = (P - d2 / 3) / d3
            u = -dP / (2 * d3)
        a = _horner(_x_coeffs(view.a, data.z0), x)
        b = _horner(_x_coeffs(view.b, data.z0), x)
        if abs(a) < _tiny():
            raise PoleOfUniformization(f"a(x) vanishes at x = {mpmath.nstr(x, 10)}")
        return x, (u - b) / (2 * a)


def _numeric(h: RatFunc3, x: Any, y: Any, z: Any) -> Any:
    den = evaluate_poly(h.den, (x, y, z), _mpq)
    return evaluate_poly(h.num, (x, y, z), _mpq) / den


def kernel_residual(K: Kernel, data: EllipticData, w: Any) -> Any:
    """|zK(x(w), y(w), z0)| relative to the size of its terms"""
    with mp.workprec(data.prec):
        x, y = uniformize(K, data, w)
        z = _mpf(data.z0)
        value = evaluate_poly(K.K, (x, y, z), _mpq)
        scale = sum(abs(_mpq(c) * x ** i * y ** j * z ** k) for (i, j, k), c in K.K.items())
        return abs(value) / max(scale, 1)


def sample_points(data: EllipticData, count: int, seed: Optional[int] = None) -> List[Any]:
    """Generic points of the fundamental parallelogram"""
    rng = random.Random(get_settings().random_seed if seed is None else seed)
    with mp.workprec(data.prec):
        return [
            mpf(0.1 + 0.8 * rng.random()) * data.omega2 + mpf(0.1 + 0.8 * rng.random()) * data.omega1
            for _ in range(count)
        ]


def _reduce_translation(tau: Any, data: EllipticData) -> Any:
    m = mpmath.nint(mpmath.im(tau) / mpmath.im(data.omega1))
    tau = tau - m * data.omega1
    re = mpmath.re(tau)
    return tau - mpmath.floor(re / data.omega2) * data.omega2


def _close(a: Any, b: Any, tol: Any) -> bool:
    return abs(a - b) <= tol * max(1, abs(b))


def omega3_of(data: EllipticData, K: Optional[Kernel] = None) -> Tuple[mpf, int]:
    """Real translation omega3 representing delta on the covering, and k with n*omega3 = k*omega2"""
    S = data.steps
    K = K or kernel_of(S)
    n = data.n or group_orders(S).n
    if not n:
        raise InfiniteGroup(f"{S}: delta has no finite order")
    sigma = delta_substitution(S)
    with mp.workprec(data.prec):
        z = _mpf(data.z0)
        match_tol = mpf(10) ** (-mp.dps // 2)
        w0 = mpf("0.3141592653") * data.omega2 + mpf("0.2718281828") * data.omega1
        x0, y0 = uniformize(K, data, w0)
        tx, ty = _numeric(sigma.X, x0, y0, z), _numeric(sigma.Y, x0, y0, z)
        base = wp_inverse(glue(data, tx), data)
        omega3 = None
        for candidate in (base, -base):
            cx, cy = uniformize(K, data, candidate)
            if not (_close(cx, tx, match_tol) and _close(cy, ty, match_tol)):
                continue
            tau = _reduce_translation(candidate - w0, data)
            if abs(mpmath.im(tau)) < match_tol * abs(data.omega1):
                omega3 = mpmath.re(tau)
                break
        if omega3 is None or not 0 < omega3 < data.omega2:
            raise TranslationNotFound(f"{S}: no real translation reproduces delta")

        residual = translation_residual(K, data, omega3, sample_points(data, 10))
        if residual > TOLERANCES["translation"]:
            raise TranslationNotFound(f"{S}: translation residual {mpmath.nstr(residual, 5)}")

        k = int(mpmath.nint(n * omega3 / data.omega2))
        if abs(n * omega3 - k * data.omega2) > TOLERANCES["rationality"] or gcd(k, n) != 1:
            raise RationalityViolated(f"{S}: n*omega3/omega2 = {mpmath.nstr(n * omega3 / data.omega2, 15)}")
    logger.info("%s: omega3 = %s, k = %d, n = %d", S, mpmath.nstr(omega3, 12), k, n)
    return omega3, k


def translation_residual(K: Kernel, data: EllipticData, omega3: Any, points: Sequence[Any]) -> Any:
    """max over points of |(x,y)(w + omega3) - sigma((x,y)(w))|, relative"""
    sigma = delta_substitution(data.steps)
    with mp.workprec(data.prec):
        z = _mpf(data.z0)
        worst = mpf(0)
        for w in points:
            x, y = uniformize(K, data, w)
            sx, sy = uniformize(K, data, w + omega3)
            tx, ty = _numeric(sigma.X, x, y, z), _numeric(sigma.Y, x, y, z)
            worst = max(worst, abs(sx - tx) / max(1, abs(tx)), abs(sy - ty) / max(1, abs(ty)))
        return worst


def with_translation(data: EllipticData, K: Optional[Kernel] = None) -> EllipticData:
    """data completed with omega3, n and k"""
    n = data.n or group_orders(data.steps).n
    omega3, k = omega3_of(data.model_copy(update={"n": n}), K)
    return data.model_copy(update={"omega3": omega3, "n": n, "k": k})


def phi_tilde(w: Any, data: EllipticData) -> Any:
    """Phi~(v + omega2/2) = (omega1/2i pi) zeta13(v) - (v/i pi) zeta13(omega1/2)"""
    if data.omega3 is None:
        raise TranslationNotFound("omega3 is not known for this data")
    with mp.workprec(data.prec):
        i_pi = mpmath.mpc(0, 1) * mpmath.pi
        v = w - data.omega2 / 2
        return data.omega1 / (2 * i_pi) * zeta_eval(v, data.omega1, data.omega3) - v / i_pi * zeta_eval(
            data.omega1 / 2, data.omega1, data.omega3
        )


def w2_eval(S: StepSet, data: EllipticData, w: Any, orbit_raw: Optional[RatFunc3] = None) -> Any:
    """Phi~(w)/n times the orbit sum at (x(w), y(w), z0)"""
    if orbit_raw is None:
        orbit_raw = orbit_sum(S)[0]
    n = data.n or group_orders(S).n
    if not n:
        raise InfiniteGroup(f"{S}: w2 needs a finite group")
    with mp.workprec(data.prec):
        if orbit_raw.is_zero:
            return mpmath.mpc(0)
        x, y = uniformize(kernel_of(S), data, w)
        return phi_tilde(w, data) / n * _numeric(orbit_raw, x, y, _mpf(data.z0))


def _track(data: EllipticData, x_target: Any, start: Any) -> Any:
    try:
        return mpmath.findroot(lambda t: x_of(data, t) - x_target, start)
    except (ValueError, ZeroDivisionError) as e:
        raise SampleAtSingularity(f"cannot follow x = {mpmath.nstr(x_target, 10)} from w = {mpmath.nstr(start, 10)}") from e


def holonomy_derivative_check(
    S: StepSet, data: EllipticData, samples: Union[int, Sequence[Any]] = 10, step: Optional[float] = None
) -> Any:
    """Max relative error between d/dx Phi~(w(x)) by central differences and its closed form"""
    if data.omega3 is None:
        data = with_translation(data)
    with mp.workprec(data.prec):
        h = mpf(step) if step is not None else mpf("1e-8")
        points = sample_points(data, samples) if isinstance(samples, int) else list(samples)
        i_pi = mpmath.mpc(0, 1) * mpmath.pi
        zeta_half = zeta_eval(data.omega1 / 2, data.omega1, data.omega3)
        worst = mpf(0)
        for w in points:
            dP = wp_prime_eval(w, data.omega1, data.omega2)
            if abs(dP) < _cutoff() * max(1, abs(wp_eval(w, data.omega1, data.omega2))):
                raise SampleAtSingularity(f"w = {mpmath.nstr(w, 10)} is a branch point")
            try:
                x0 = x_of(data, w)
            except PoleOfUniformization as e:
                raise SampleAtSingularity(str(e)) from e
            w_plus, w_minus = _track(data, x0 + h, w), _track(data, x0 - h, w)
            lhs = (phi_tilde(w_plus, data) - phi_tilde(w_minus, data)) / (2 * h)
            p13 = wp_eval(w - data.omega2 / 2, data.omega1, data.omega3)
            rhs = glue_prime(data, x0) / dP * (data.omega1 * p13 + 2 * zeta_half) / (-2 * i_pi)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        return worst


def _format(value: Any) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return mpmath.nstr(value, mp.dps)


def _run_checks(S: StepSet, z0: Optional[Fraction], prec: int) -> Tuple[EllipticReport, Dict[str, Any]]:
    kernel = kernel_of(S)
    data = with_translation(elliptic_data(S, z0, prec), kernel)
    residuals: Dict[str, Any] = {}
    with mp.workprec(prec):
        points = sample_points(data, 20)
        residuals["kernel"] = max(kernel_residual(kernel, data, w) for w in points)
        ode = mpf(0)
        for w in points[:5]:
            P = wp_eval(w, data.omega1, data.omega2)
            dP = wp_prime_eval(w, data.omega1, data.omega2)
            rhs = 4 * P ** 3 - _mpf(data.G2) * P - _mpf(data.G3)
            ode = max(ode, abs(dP ** 2 - rhs) / max(1, abs(rhs)))
        residuals["wp_ode"] = ode
        i_pi = mpmath.mpc(0, 1) * mpmath.pi
        for name, period in (("legendre_12", data.omega2), ("legendre_13", data.omega3)):
            residuals[name] = abs(
                zeta_eval(data.omega1 / 2, data.omega1, period) * period
                - zeta_eval(period / 2, data.omega1, period) * data.omega1
                + i_pi
            )
        w = points[0]
        residuals["phi_periods"] = max(
            abs(phi_tilde(w + data.omega1, data) - phi_tilde(w, data)),
            abs(phi_tilde(w + data.omega3, data) - phi_tilde(w, data) - 1),
        )
        residuals["translation"] = translation_residual(kernel, data, data.omega3, points[:10])
        residuals["rationality"] = abs(data.n * data.omega3 - data.k * data.omega2)
        residuals["derivative"] = holonomy_derivative_check(S, data, points[:10])

        passed = all(residuals[name] < TOLERANCES[name] for name in TOLERANCES)
        report = EllipticReport(
            steps=str(S),
            z0=_format(data.z0),
            precision=prec,
            case=data.case,
            d=[_format(c) for c in data.d],
            branch_points=[_format(r) for r in data.branch_points] + (["inf"] if data.case == 2 else []),
            g2=_format(data.g2),
            g3=_format(data.g3),
            omega1=_format(data.omega1),
            omega2=_format(data.omega2),
            omega3=_format(data.omega3),
            n=data.n,
            k=data.k,
            residuals={name: mpmath.nstr(value, 5) for name, value in residuals.items()},
            tolerances={name: f"{tol:.0e}" for name, tol in TOLERANCES.items()},
            passed=passed,
        )
    return report, residuals


def verify_model(S: StepSet, z0: Optional[Fraction] = None, prec: Optional[int] = None) -> EllipticReport:
    """Run every self-check; double the precision while a residual exceeds half its tolerance"""
    settings = get_settings()
    prec = prec or settings.precision
    while True:
        report, residuals = _run_checks(S, z0, prec)
        tight = all(residuals[name] <= TOLERANCES[name] / 2 for name in TOLERANCES)
        if tight or 2 * prec > settings.max_precision:
            return report
        logger.warning("%s: residuals near tolerance at %d bits, doubling precision", S, prec)
        prec *= 2
