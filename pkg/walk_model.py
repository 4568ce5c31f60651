"""Step sets, the census of quarter-plane models and their kernels."""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from errors import EmptyStepSet, ParseError
from exact_algebra import RING, KernelView, Poly3, RatFunc3, X, Y, Z, kernel_view, rf_normalize

logger = logging.getLogger(__name__)

Step = Tuple[int, int]

# bit k of a mask is STEPS[k]
STEPS: Tuple[Step, ...] = ((-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1))
TOKENS: Tuple[str, ...] = ("SW", "S", "SE", "W", "E", "NW", "N", "NE")
TOKEN_BITS = {token: bit for bit, token in enumerate(TOKENS)}


class StepSet(BaseModel):
    """An 8-bit membership set over the small steps"""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"mask": 0b10011000}},
    )

    mask: int = Field(..., ge=0, le=255, description="bit0=SW, bit1=S, bit2=SE, bit3=W, bit4=E, bit5=NW, bit6=N, bit7=NE")

    @classmethod
    def parse(cls, text: str) -> "StepSet":
        """Accept 'NE,W,S' (any order, any case), a decimal mask or a '0b...' mask"""
        text = text.strip()
        if not text:
            raise ParseError("empty step set")
        try:
            if text.lower().startswith("0b"):
                return cls(mask=int(text, 2))
            if text.isdigit():
                return cls(mask=int(text))
        except ValueError as e:
            raise ParseError(f"invalid mask {text!r}: {e}") from e
        mask = 0
        for token in text.replace(" ", "").upper().split(","):
            if token not in TOKEN_BITS:
                raise ParseError(f"unknown step token {token!r}")
            mask |= 1 << TOKEN_BITS[token]
        return cls(mask=mask)

    @classmethod
    def from_steps(cls, steps: Iterable[Step]) -> "StepSet":
        mask = 0
        for step in steps:
            mask |= 1 << STEPS.index(tuple(step))
        return cls(mask=mask)

    @property
    def vectors(self) -> Tuple[Step, ...]:
        return tuple(step for bit, step in enumerate(STEPS) if self.mask >> bit & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def has(self, step: Step) -> bool:
        return bool(self.mask >> STEPS.index(step) & 1)

    def diagonal(self) -> "StepSet":
        """Image under (i, j) -> (j, i)"""
        return StepSet.from_steps((j, i) for i, j in self.vectors)

    def mirror(self) -> "StepSet":
        """Image under (i, j) -> (-i, j)"""
        return StepSet.from_steps((-i, j) for i, j in self.vectors)

    @property
    def bit_string(self) -> str:
        return "".join(str(self.mask >> bit & 1) for bit in range(8))

    def __str__(self) -> str:
        return ",".join(TOKENS[bit] for bit in range(8) if self.mask >> bit & 1)


class DiscardReason(str, Enum):
    EMPTY = "Empty"
    Y_CONSTRAINT_VOID = "YConstraintVoid"
    X_CONSTRAINT_VOID = "XConstraintVoid"
    Y_DEGENERATE = "YDegenerate"
    X_DEGENERATE = "XDegenerate"
    STUCK = "Stuck"
    DIAGONAL_BOUNDED = "DiagonalBounded"
    DIAGONAL_DUPLICATE = "DiagonalDuplicate"


class CensusEntry(BaseModel):
    """Outcome of the census for one mask"""

    model_config = ConfigDict(frozen=True)

    steps: StepSet
    canonical: StepSet
    discard_reason: Optional[DiscardReason] = None

    @property
    def survives(self) -> bool:
        return self.discard_reason is None


@dataclass(frozen=True)
class Kernel:
    """z*K with K = xy[sum x^i y^j - 1/z], plus the boundary coefficients"""

    K: Poly3
    view: KernelView
    c: Poly3  # sum over (i,-1) of x^(i+1)
    c_tilde: Poly3  # sum over (-1,j) of y^(j+1)
    sw_indicator: int
    steps: StepSet


def _require_steps(S: StepSet) -> None:
    if S.mask == 0:
        raise EmptyStepSet("the empty step set has no kernel")


@lru_cache(maxsize=256)
def kernel_of(S: StepSet) -> Kernel:
    """Kernel stored as z*xy*sum(x^i y^j) - xy, cleared of 1/z"""
    _require_steps(S)
    step_sum = RING.zero
    c = RING.zero
    c_tilde = RING.zero
    for i, j in S.vectors:
        step_sum += X ** (i + 1) * Y ** (j + 1)
        if j == -1:
            c += X ** (i + 1)
        if i == -1:
            c_tilde += Y ** (j + 1)
    K = Z * step_sum - X * Y
    return Kernel(
        K=K,
        view=kernel_view(K),
        c=c,
        c_tilde=c_tilde,
        sw_indicator=int(S.has((-1, -1))),
        steps=S,
    )


def has_vertical_symmetry(S: StepSet) -> bool:
    return S.mirror() == S


def generating_poly(S: StepSet) -> RatFunc3:
    """sum over S of x^i y^j, with the monomial denominator xy"""
    _require_steps(S)
    total = RING.zero
    for i, j in S.vectors:
        total += X ** (i + 1) * Y ** (j + 1)
    return rf_normalize(total, X * Y)


def _trivial_reason(S: StepSet) -> Optional[DiscardReason]:
    steps = S.vectors
    if not steps:
        return DiscardReason.EMPTY
    if all(j >= 0 for _, j in steps):
        return DiscardReason.Y_CONSTRAINT_VOID
    if all(i >= 0 for i, _ in steps):
        return DiscardReason.X_CONSTRAINT_VOID
    if all(j <= 0 for _, j in steps):
        return DiscardReason.Y_DEGENERATE
    if all(i <= 0 for i, _ in steps):
        return DiscardReason.X_DEGENERATE
    if not any(S.has(step) for step in ((0, 1), (1, 1), (1, 0))):
        return DiscardReason.STUCK
    if all(i >= j for i, j in steps) or all(j >= i for i, j in steps):
        return DiscardReason.DIAGONAL_BOUNDED
    return None


def orientation_key(S: StepSet) -> Tuple[bool, str]:
    """Catalog orientation order: vertically symmetric first, then bit string b0..b7"""
    return (not has_vertical_symmetry(S), S.bit_string)


def census() -> List[CensusEntry]:
    """Classify all 256 masks; survivors are the canonical models"""
    entries = []
    for mask in range(256):
        S = StepSet(mask=mask)
        reason = _trivial_reason(S)
        canonical = S
        if reason is None:
            image = S.diagonal()
            if image != S and _trivial_reason(image) is None and orientation_key(image) < orientation_key(S):
                reason = DiscardReason.DIAGONAL_DUPLICATE
                canonical = image
        entries.append(CensusEntry(steps=S, canonical=canonical, discard_reason=reason))
    logger.debug("census: %d survivors", sum(e.survives for e in entries))
    return entries


def census_survivors() -> List[StepSet]:
    """Canonical models sorted by mask"""
    return [entry.steps for entry in census() if entry.survives]


def survivors_before_dedup() -> List[StepSet]:
    return [entry.steps for entry in census() if entry.discard_reason in (None, DiscardReason.DIAGONAL_DUPLICATE)]
