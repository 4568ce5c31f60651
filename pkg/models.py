from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Nature(str, Enum):
    ALGEBRAIC = "Algebraic"
    HOLONOMIC_NON_ALGEBRAIC = "HolonomicNonAlgebraic"
    NOT_COVERED = "NotCovered"


class GroupOrder(BaseModel):
    """Finite(2n) when finite, otherwise ExceedsBound(2*n_max)"""

    model_config = ConfigDict(frozen=True)

    finite: bool
    value: int = Field(..., ge=2, description="The order 2n, or the bound 2*n_max that was exceeded")

    @classmethod
    def of_half(cls, n: int) -> "GroupOrder":
        return cls(finite=True, value=2 * n)

    @classmethod
    def exceeds(cls, n_max: int) -> "GroupOrder":
        return cls(finite=False, value=2 * n_max)

    @property
    def half(self) -> Optional[int]:
        return self.value // 2 if self.finite else None

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.finite else f"ExceedsBound({self.value})"


class ClassificationRecord(BaseModel):
    """Verdict for one canonical model"""

    steps: str = Field(..., description="Compass tokens in bit order")
    mask: int = Field(..., ge=0, le=255)
    order_W: GroupOrder
    order_H: GroupOrder
    norm_ok: bool = False
    cns: Optional[bool] = None
    cns_tilde: Optional[bool] = None
    nature: Nature
    closed_form_tag: Optional[str] = None
    c_is_one: bool = False
    vertical_symmetry: bool = False
    determinant_zero: bool = False
    note: Optional[str] = None

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "steps": "S,W,NE",
                "mask": 138,
                "order_W": {"finite": True, "value": 6},
                "order_H": {"finite": True, "value": 6},
                "norm_ok": True,
                "cns": True,
                "cns_tilde": True,
                "nature": "Algebraic",
                "closed_form_tag": None,
                "c_is_one": False,
                "vertical_symmetry": False,
                "determinant_zero": False,
                "note": None,
            }
        }
    )


class CatalogFile(BaseModel):
    """The classified census, sorted by canonical mask"""

    schema_version: int = 1
    generated_with: str
    models: List[ClassificationRecord] = Field(default_factory=list)


class EllipticReport(BaseModel):
    """Numeric self-check results for one model; floats are decimal strings"""

    steps: str
    z0: str
    precision: int
    case: int = Field(..., ge=1, le=2, description="1: four finite branch points, 2: three")
    d: List[str]
    branch_points: List[str]
    g2: str
    g3: str
    omega1: str
    omega2: str
    omega3: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    residuals: Dict[str, str] = Field(default_factory=dict)
    tolerances: Dict[str, str] = Field(default_factory=dict)
    passed: bool = False
