from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from models import ClassificationRecord


class ModelListResponseSchema(BaseModel):
    """Schema for a page of catalog records"""
    models: List[ClassificationRecord]
    total: int
    skip: int
    limit: int


class CatalogStatsSchema(BaseModel):
    """Schema for the census summary counts"""
    models: int
    finite: int
    infinite_or_exceeds_bound: int
    algebraic: int
    holonomic_nonalgebraic: int
    by_order: Dict[str, int] = Field(default_factory=dict, description="Group order -> number of models")
    lines: List[str] = Field(default_factory=list, description="The summary lines printed by the census command")


class CountResponseSchema(BaseModel):
    """Schema for walk counts of one model"""
    steps: str
    kmax: int = Field(..., ge=0)
    total: List[int] = Field(..., description="Number of quadrant walks of length k")
    excursions: List[int] = Field(..., description="Number of walks of length k returning to the origin")


class MessageResponseSchema(BaseModel):
    """Schema for generic message responses"""
    message: str


class HealthCheckSchema(BaseModel):
    """Schema for health check response"""
    status: str
    catalog: str
    message: Optional[str] = None


class ErrorResponseSchema(BaseModel):
    """Schema for error responses"""
    detail: str
