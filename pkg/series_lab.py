"""Walk counting, the truncated functional-equation check and relation guessing.

Guessed relations are evidence, never proof: a None result means that no
relation exists at the given bounds, not that the series is transcendental.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import InsufficientTerms, TruncationTooShallow
from exact_algebra import Poly3, to_fraction
from settings import get_settings
from walk_model import StepSet, kernel_of

logger = logging.getLogger(__name__)


class SeriesBox(BaseModel):
    """counts[i, j, k] = number of quadrant walks from (0,0) to (i,j) in k steps"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    steps: StepSet
    kmax: int = Field(..., ge=0)
    counts: np.ndarray


class UniSeries(BaseModel):
    """coefficients[k] is the coefficient of z^k"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    coefficients: List[Fraction] = Field(..., min_length=1)
    origin: str = ""


@dataclass(frozen=True)
class AlgebraicRelation:
    """P(T, z) = sum coeffs[(t, e)] T^t z^e"""

    coeffs: Dict[Tuple[int, int], Fraction]
    deg_t: int
    deg_z: int
    validated_terms: int

    def __str__(self) -> str:
        return " + ".join(f"({c})*T^{t}*z^{e}" for (t, e), c in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class Recurrence:
    """sum_r p_r(k) s_{k+r} = 0 with p_r(k) = sum_d coeffs[r][d] k^d"""

    coeffs: Tuple[Tuple[Fraction, ...], ...]
    validated_terms: int

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def polynomial(self, r: int, k: int) -> Fraction:
        return sum((c * k ** d for d, c in enumerate(self.coeffs[r])), Fraction(0))

    def __str__(self) -> str:
        parts = []
        for r, row in enumerate(self.coeffs):
            poly = " + ".join(f"({c})*k^{d}" for d, c in enumerate(row) if c)
            if poly:
                parts.append(f"[{poly}]*s(k+{r})")
        return " + ".join(parts) + " = 0"


def _shift_add(dst: np.ndarray, src: np.ndarray, di: int, dj: int, scale: int = 1) -> None:
    """dst[i, j] += scale * src[i - di, j - dj] over the overlapping window"""
    size_i, size_j = dst.shape
    i0, i1 = max(0, di), min(size_i, size_i + di)
    j0, j1 = max(0, dj), min(size_j, size_j + dj)
    if i0 >= i1 or j0 >= j1:
        return
    dst[i0:i1, j0:j1] += scale * src[i0 - di:i1 - di, j0 - dj:j1 - dj]


def count_walks(S: StepSet, kmax: Optional[int] = None) -> SeriesBox:
    """Dense DP over (i, j, k); one step moves each coordinate by at most 1"""
    kmax = get_settings().kmax if kmax is None else kmax
    size = kmax + 1
    counts = np.zeros((size, size, size), dtype=object)
    counts[0, 0, 0] = 1
    steps = S.vectors
    for k in range(1, size):
        layer = np.zeros((size, size), dtype=object)
        previous = counts[:, :, k - 1]
        for a, b in steps:
            _shift_add(layer, previous, a, b)
        counts[:, :, k] = layer
    logger.debug("%s: counted walks up to length %d", S, kmax)
    return SeriesBox(steps=S, kmax=kmax, counts=counts)


def brute_force_counts(S: StepSet, k: int) -> int:
    """Number of quadrant walks of length k, by depth-first enumeration of every path"""
    steps = S.vectors
    total = 0
    stack = [(0, 0, 0)]
    while stack:
        x, y, length = stack.pop()
        if length == k:
            total += 1
            continue
        for a, b in steps:
            if x + a >= 0 and y + b >= 0:
                stack.append((x + a, y + b, length + 1))
    return total


def _poly_terms(p: Poly3) -> List[Tuple[Tuple[int, int, int], int]]:
    return [(monom, int(to_fraction(c))) for monom, c in p.items()]


def verify_functional_equation(S: StepSet, box: SeriesBox, deg: Optional[int] = None) -> bool:
    """z*K*F = z*c*F(x,0) + z*c~*F(0,y) - z*delta*F(0,0) - xy up to total degree deg"""
    deg = get_settings().fe_degree if deg is None else deg
    if deg + 2 > box.kmax:
        raise TruncationTooShallow(f"degree {deg} needs kmax >= {deg + 2}, box has {box.kmax}")
    kernel = kernel_of(S)
    size = deg + 1
    F = box.counts[:size, :size, :size]
    lhs = np.zeros((size, size, size), dtype=object)
    rhs = np.zeros((size, size, size), dtype=object)

    for (p, q, r), c in _poly_terms(kernel.K):
        lhs[p:, q:, r:] += c * F[:size - p, :size - q, :size - r]
    # z * c(x) * F(x, 0)
    for (p, _, _), c in _poly_terms(kernel.c):
        rhs[p:, 0, 1:] += c * F[:size - p, 0, :size - 1]
    # z * c~(y) * F(0, y)
    for (_, q, _), c in _poly_terms(kernel.c_tilde):
        rhs[0, q:, 1:] += c * F[0, :size - q, :size - 1]
    if kernel.sw_indicator:
        rhs[0, 0, 1:] -= F[0, 0, :size - 1]
    if size > 1:
        rhs[1, 1, 0] -= 1

    i, j, k = np.indices((size, size, size))
    window = (i + j + k) <= deg
    mismatches = [int(v) for v in (lhs - rhs)[window] if v != 0]
    if mismatches:
        logger.info("%s: functional equation fails at %d coefficients", S, len(mismatches))
    return not mismatches


def specialize(box: SeriesBox, x0: Fraction, y0: Fraction) -> UniSeries:
    """z^k coefficient: sum over i, j of f(i,j,k) x0^i y0^j"""
    x0, y0 = Fraction(x0), Fraction(y0)
    size = box.kmax + 1
    weights = [[x0 ** i * y0 ** j for j in range(size)] for i in range(size)]
    coefficients = []
    for k in range(size):
        layer = box.counts[:, :, k]
        total = Fraction(0)
        for i, j in zip(*np.nonzero(layer)):
            total += layer[i, j] * weights[i][j]
        coefficients.append(total)
    return UniSeries(coefficients=coefficients, origin=f"({x0}, {y0})")


def excursions(S: StepSet, terms: int) -> UniSeries:
    """F(0, 0, z) to terms coefficients"""
    return specialize(count_walks(S, terms - 1), Fraction(0), Fraction(0))


def _nullspace(rows: List[List[Fraction]], columns: int) -> List[List[Fraction]]:
    """Exact kernel basis of the row system over QQ"""
    matrix = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in rows], (len(rows), columns), QQ)
    reduced, pivots = matrix.rref()
    dense = reduced.to_Matrix()
    basis = []
    for free in (col for col in range(columns) if col not in pivots):
        vector = [Fraction(0)] * columns
        vector[free] = Fraction(1)
        for row, pivot in enumerate(pivots):
            entry = dense[row, free]
            vector[pivot] = -Fraction(int(entry.p), int(entry.q))
        basis.append(vector)
    return basis


def _surviving_relation(basis: List[List[Fraction]], held_back: List[List[Fraction]]) -> Optional[List[Fraction]]:
    """Nonzero combination of the kernel basis that also annihilates the held-back rows"""
    if not basis:
        return None
    if not held_back:
        return basis[0]
    restricted = [[sum((c * v for c, v in zip(vector, row)), Fraction(0)) for vector in basis] for row in held_back]
    weights = _nullspace(restricted, len(basis))
    if not weights:
        return None
    return [sum((w * vector[i] for w, vector in zip(weights[0], basis)), Fraction(0)) for i in range(len(basis[0]))]


def _split(length: int, unknowns: int, guard: Optional[int]) -> Tuple[int, int]:
    settings = get_settings()
    guard = settings.guess_guard if guard is None else guard
    if length < unknowns + guard:
        raise InsufficientTerms(f"{length} terms for {unknowns} unknowns and guard {guard}")
    holdback = math.ceil(settings.holdback_fraction * length)
    return length - holdback, holdback


def _truncated_powers(values: Sequence[Fraction], top: int) -> List[List[Fraction]]:
    length = len(values)
    powers = [[Fraction(1)] + [Fraction(0)] * (length - 1)]
    for _ in range(top):
        last = powers[-1]
        powers.append([sum((last[m] * values[n - m] for m in range(n + 1)), Fraction(0)) for n in range(length)])
    return powers


def guess_algebraic(s: UniSeries, degT: int, degZ: int, guard: Optional[int] = None) -> Optional[AlgebraicRelation]:
    """Nonzero P(T, z) with P(s(z), z) = 0 to the available order, or None"""
    values = s.coefficients
    unknowns = [(t, e) for t in range(degT + 1) for e in range(degZ + 1)]
    used, _ = _split(len(values), len(unknowns), guard)
    powers = _truncated_powers(values, degT)

    def equation(m: int) -> List[Fraction]:
        return [powers[t][m - e] if m >= e else Fraction(0) for t, e in unknowns]

    basis = _nullspace([equation(m) for m in range(used)], len(unknowns))
    vector = _surviving_relation(basis, [equation(m) for m in range(used, len(values))])
    if vector is not None:
        coeffs = {key: c for key, c in zip(unknowns, vector) if c}
        logger.info("algebraic relation found, validated on %d terms", len(values))
        return AlgebraicRelation(coeffs=coeffs, deg_t=degT, deg_z=degZ, validated_terms=len(values))
    logger.info("no algebraic relation at bounds (%d, %d)", degT, degZ)
    return None


def guess_recurrence(s: UniSeries, order: int, degree: int, guard: Optional[int] = None) -> Optional[Recurrence]:
    """Polynomial recurrence of the given order and degree, validated on held-back terms, or None"""
    values = s.coefficients
    width = (order + 1) * (degree + 1)
    equations = len(values) - order
    used, _ = _split(equations, width, guard)

    def equation(k: int) -> List[Fraction]:
        return [Fraction(k) ** d * values[k + r] for r in range(order + 1) for d in range(degree + 1)]

    basis = _nullspace([equation(k) for k in range(used)], width)
    vector = _surviving_relation(basis, [equation(k) for k in range(used, equations)])
    if vector is not None:
        rows = tuple(tuple(vector[r * (degree + 1):(r + 1) * (degree + 1)]) for r in range(order + 1))
        logger.info("recurrence found, validated on %d terms", len(values))
        return Recurrence(coeffs=rows, validated_terms=len(values))
    logger.info("no recurrence at bounds (%d, %d)", order, degree)
    return None


def export_tsv(box: SeriesBox) -> str:
    """Nonzero counts as i, j, k, count rows"""
    lines = ["i\tj\tk\tcount"]
    for k in range(box.kmax + 1):
        layer = box.counts[:, :, k]
        for i, j in zip(*np.nonzero(layer)):
            lines.append(f"{i}\t{j}\t{k}\t{layer[i, j]}")
    return "\n".join(lines) + "\n"


def export_series(s: UniSeries) -> str:
    return "".join(f"{c.numerator}/{c.denominator}\n" for c in s.coefficients)
