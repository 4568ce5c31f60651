"""Exact arithmetic in Q[x, y, z] and Q(x, y, z).

Polynomials are sympy sparse ring elements over QQ with graded lexicographic
order x > y > z.  Rational functions are kept in a canonical form (cancelled,
content cleared, leading coefficient of the denominator positive) so that
structural equality is equality of functions.
"""
import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from errors import (
    DegenerateKernel,
    IdenticallyZeroDenominator,
    PoleAtPoint,
    ReducibleKernel,
    ZeroDenominator,
    ZeroDenominatorOnCurve,
)
from settings import get_settings

logger = logging.getLogger(__name__)

RING, X, Y, Z = ring("x,y,z", QQ, grlex)

Poly3 = PolyElement
Point = Tuple[Fraction, Fraction, Fraction]


def to_fraction(c: Any) -> Fraction:
    """Convert a QQ coefficient to a Fraction"""
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


def to_qq(value: Any) -> Any:
    """Convert an int or Fraction to a QQ element"""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def total_degree(p: Poly3) -> int:
    """Total degree of p, 0 for the zero polynomial"""
    return max((sum(m) for m in p.keys()), default=0)


def _degree(p: Poly3, index: int) -> int:
    return max((m[index] for m in p.keys()), default=0)


def evaluate_poly(p: Poly3, point: Sequence[Any], coerce: Callable[[Any], Any] = to_fraction) -> Any:
    """Evaluate p at a point whose coordinates support +, * and ** (Fractions, mpmath numbers)"""
    total = 0
    for (i, j, k), c in p.items():
        total += coerce(c) * point[0] ** i * point[1] ** j * point[2] ** k
    return total


@dataclass(frozen=True)
class RatFunc3:
    """Canonical num/den pair; build it through rf_normalize"""

    num: Poly3
    den: Poly3

    def __add__(self, other: Any) -> "RatFunc3":
        other = rf(other)
        return rf_normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc3":
        return RatFunc3(-self.num, self.den)

    def __sub__(self, other: Any) -> "RatFunc3":
        return self + (-rf(other))

    def __rsub__(self, other: Any) -> "RatFunc3":
        return rf(other) - self

    def __mul__(self, other: Any) -> "RatFunc3":
        other = rf(other)
        return rf_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RatFunc3":
        other = rf(other)
        if not other.num:
            raise ZeroDenominator(f"division by zero: ({self}) / 0")
        return rf_normalize(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Any) -> "RatFunc3":
        return rf(other) / self

    def __pow__(self, k: int) -> "RatFunc3":
        if k < 0:
            return ONE / (self ** -k)
        return RatFunc3(self.num ** k, self.den ** k)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == self.den

    @property
    def degree(self) -> int:
        """Largest total degree of numerator and denominator"""
        return max(total_degree(self.num), total_degree(self.den))

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __str__(self) -> str:
        if self.den == RING.one:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _clear_content(num: Poly3, den: Poly3) -> Tuple[Poly3, Poly3]:
    coeffs = list(num.values()) + list(den.values())
    common = 1
    for c in coeffs:
        common = lcm(common, int(QQ.denom(c)))
    g = 0
    for c in coeffs:
        g = gcd(g, int(QQ.numer(c * common)))
    scale = QQ(common, g)
    if scale == 1:
        return num, den
    return num.mul_ground(scale), den.mul_ground(scale)


def rf_normalize(num: Poly3, den: Poly3) -> RatFunc3:
    """Canonical reduced form of num/den"""
    if not den:
        raise ZeroDenominator(f"zero denominator for numerator {num}")
    if not num:
        return RatFunc3(RING.zero, RING.one)
    _, num, den = num.cofactors(den)
    num, den = _clear_content(num, den)
    if den.LC < 0:
        num, den = -num, -den
    return RatFunc3(num, den)


def rf(value: Any, den: Any = None) -> RatFunc3:
    """Coerce a polynomial, integer, Fraction or RatFunc3 (optionally over den)"""
    if den is not None:
        return rf(value) / rf(den)
    if isinstance(value, RatFunc3):
        return value
    if isinstance(value, PolyElement):
        return rf_normalize(value, RING.one)
    if isinstance(value, (int, Fraction)):
        return rf_normalize(RING.ground_new(to_qq(value)), RING.one)
    raise TypeError(f"cannot build a rational function from {type(value).__name__}")


ZERO = RatFunc3(RING.zero, RING.one)
ONE = RatFunc3(RING.one, RING.one)
XR = RatFunc3(X, RING.one)
YR = RatFunc3(Y, RING.one)
ZR = RatFunc3(Z, RING.one)


def _powers(p: Poly3, top: int) -> List[Poly3]:
    out = [RING.one]
    for _ in range(top):
        out.append(out[-1] * p)
    return out


def rf_substitute(h: RatFunc3, sx: RatFunc3, sy: RatFunc3) -> RatFunc3:
    """h(sx, sy, z); z is never substituted"""
    if sx == XR and sy == YR:
        return h
    top_x = max(_degree(h.num, 0), _degree(h.den, 0))
    top_y = max(_degree(h.num, 1), _degree(h.den, 1))
    px, qx = _powers(sx.num, top_x), _powers(sx.den, top_x)
    py, qy = _powers(sy.num, top_y), _powers(sy.den, top_y)

    # homogenized image: every term shares the denominator qx^top_x * qy^top_y
    def image(p: Poly3) -> Poly3:
        grouped: Dict[Tuple[int, int], Dict[Tuple[int, int, int], Any]] = defaultdict(dict)
        for (a, b, e), c in p.items():
            grouped[(a, b)][(0, 0, e)] = c
        total = RING.zero
        for (a, b), zpart in grouped.items():
            total += RING.from_dict(zpart) * px[a] * qx[top_x - a] * py[b] * qy[top_y - b]
        return total

    den = image(h.den)
    if not den:
        raise IdenticallyZeroDenominator(f"substituting ({sx}, {sy}) into {h} kills the denominator")
    return rf_normalize(image(h.num), den)


@dataclass(frozen=True)
class KernelView:
    """K = a*y^2 + b*y + c_low, and dually K = a_tilde*x^2 + b_tilde*x + c_tilde_low"""

    a: Poly3
    b: Poly3
    c_low: Poly3
    a_tilde: Optional[Poly3] = None
    b_tilde: Optional[Poly3] = None
    c_tilde_low: Optional[Poly3] = None

    @property
    def poly(self) -> Poly3:
        return self.a * Y ** 2 + self.b * Y + self.c_low

    @property
    def poly_from_x_view(self) -> Optional[Poly3]:
        if self.a_tilde is None:
            return None
        return self.a_tilde * X ** 2 + self.b_tilde * X + self.c_tilde_low


def kernel_view(K: Poly3) -> KernelView:
    """Split K by powers of y, and by powers of x when K is at most quadratic in x"""
    by_y: List[Dict] = [{}, {}, {}]
    by_x: List[Dict] = [{}, {}, {}]
    x_view = True
    for (i, j, k), c in K.items():
        if j > 2:
            raise DegenerateKernel(f"kernel has y-degree {j} > 2")
        by_y[j][(i, 0, k)] = c
        if i > 2:
            x_view = False
        else:
            by_x[i][(0, j, k)] = c
    c_low, b, a = (RING.from_dict(part) for part in by_y)
    if not x_view:
        return KernelView(a, b, c_low)
    c_t, b_t, a_t = (RING.from_dict(part) for part in by_x)
    return KernelView(a, b, c_low, a_t, b_t, c_t)


@lru_cache(maxsize=512)
def is_kernel_irreducible(K: KernelView) -> bool:
    """True iff b^2 - 4ac is not a square in Q(x, z)"""
    if not K.a:
        raise DegenerateKernel("kernel has y-degree below 2")
    disc = K.b ** 2 - 4 * K.a * K.c_low
    if not disc:
        return False
    _, factors = disc.sqf_list()
    # a square up to a constant factor iff every squarefree multiplicity is even
    return any(mult % 2 for _, mult in factors)


def _linearize(p: Poly3, K: KernelView) -> Tuple[Poly3, Poly3, int]:
    """a^m * p = A + B*y on the curve, with m the y-degree of p"""
    parts: Dict[int, Dict] = defaultdict(dict)
    for (i, j, k), c in p.items():
        parts[j][(i, 0, k)] = c
    m = max(parts, default=0)
    a, b, c_low = K.a, K.b, K.c_low
    # a^j * y^j = lows[j] + highs[j] * y
    lows, highs = [RING.one], [RING.zero]
    for _ in range(m):
        lows, highs = lows + [-c_low * highs[-1]], highs + [a * lows[-1] - b * highs[-1]]
    a_pow = _powers(a, m)
    A, B = RING.zero, RING.zero
    for j, terms in parts.items():
        coeff = RING.from_dict(terms) * a_pow[m - j]
        A += coeff * lows[j]
        B += coeff * highs[j]
    return A, B, m


def reduce_mod_kernel(h: RatFunc3, K: KernelView) -> RatFunc3:
    """Unique representative (A + B*y)/C of h on the curve K = 0"""
    if not is_kernel_irreducible(K):
        raise ReducibleKernel(f"kernel {K.poly} is reducible")
    if not h.num:
        return ZERO
    a, b, c_low = K.a, K.b, K.c_low
    A_n, B_n, m_n = _linearize(h.num, K)
    A_d, B_d, m_d = _linearize(h.den, K)
    # multiply through by the conjugate A_d + B_d*y'
    cross = a * A_d - b * B_d
    norm = A_d * cross + c_low * B_d ** 2
    if not norm:
        raise ZeroDenominatorOnCurve(f"denominator of {h} vanishes on the curve")
    content = a.gcd(b).gcd(c_low)
    if not content.is_ground and not norm.gcd(content).is_ground:
        raise ZeroDenominatorOnCurve(f"denominator of {h} shares the kernel content {content}")
    low = A_n * cross + c_low * B_n * B_d
    high = B_n * cross - a * A_n * B_d + b * B_n * B_d
    num, den = low + high * Y, norm
    if m_d >= m_n:
        num *= a ** (m_d - m_n)
    else:
        den *= a ** (m_n - m_d)
    return rf_normalize(num, den)


def _z_linear_parts(K: Poly3) -> Optional[Tuple[Poly3, Poly3]]:
    if _degree(K, 2) != 1:
        return None
    low, high = {}, {}
    for (i, j, k), c in K.items():
        (high if k else low)[(i, j, 0)] = c
    return RING.from_dict(low), RING.from_dict(high)


def random_curve_point(K: KernelView, rng: random.Random) -> Optional[Point]:
    """A rational point of K = 0 obtained by solving for z, when K is linear in z"""
    parts = _z_linear_parts(K.poly)
    if parts is None:
        return None
    low, high = parts
    x0 = Fraction(rng.randint(1, 97), rng.randint(1, 97))
    y0 = Fraction(rng.randint(1, 97), rng.randint(1, 97))
    slope = evaluate_poly(high, (x0, y0, 0))
    if slope == 0:
        return None
    return x0, y0, -evaluate_poly(low, (x0, y0, 0)) / slope


def is_zero_on_curve(h: RatFunc3, K: KernelView, rng: Optional[random.Random] = None) -> bool:
    """True iff h vanishes on K = 0; random curve points only short-circuit a definite 'no'"""
    if not h.num:
        return True
    settings = get_settings()
    rng = rng or random.Random(settings.random_seed)
    for _ in range(settings.prefilter_points):
        point = random_curve_point(K, rng)
        if point is None:
            continue
        try:
            if eval_at(h, point) != 0:
                return False
        except PoleAtPoint:
            continue
    return reduce_mod_kernel(h, K).is_zero


def eval_at(h: RatFunc3, point: Point) -> Fraction:
    """Exact value of h at a rational point"""
    point = tuple(Fraction(v) for v in point)
    den = evaluate_poly(h.den, point)
    if den == 0:
        raise PoleAtPoint(f"{h} has a pole at {point}")
    return Fraction(evaluate_poly(h.num, point)) / den


def _eval_poly_mod(p: Poly3, point: Sequence[int], modulus: int) -> int:
    total = 0
    for (i, j, k), c in p.items():
        coeff = int(QQ.numer(c)) * pow(int(QQ.denom(c)), -1, modulus)
        total += coeff * pow(point[0], i, modulus) * pow(point[1], j, modulus) * pow(point[2], k, modulus)
    return total % modulus


def eval_mod(h: RatFunc3, point: Sequence[int], modulus: Optional[int] = None) -> int:
    """Value of h at a point of (Z/pZ)^3"""
    modulus = modulus or get_settings().modulus
    den = _eval_poly_mod(h.den, point, modulus)
    if den == 0:
        raise PoleAtPoint(f"{h} has a pole at {tuple(point)} mod {modulus}")
    return _eval_poly_mod(h.num, point, modulus) * pow(den, -1, modulus) % modulus
