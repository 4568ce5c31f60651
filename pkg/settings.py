from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime configuration, read from WALKS_* environment variables or .env"""

    model_config = SettingsConfigDict(
        env_prefix="WALKS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # group engine
    n_max: int = Field(default=15, ge=2, description="Largest half-order n tried for delta^n = id")
    degree_cap: int = Field(default=64, ge=1, description="Abort iteration above this total degree")
    prefilter_points: int = Field(default=3, ge=1, description="Random points in the modular pre-filter")
    modulus: int = Field(default=2**61 - 1, description="Prime used by modular evaluation")
    random_seed: int = Field(default=20090415, description="Seed of every random choice")

    # series lab
    kmax: int = Field(default=60, ge=0, description="Default counting horizon")
    fe_degree: int = Field(default=12, ge=0, description="Total degree of the functional-equation check")
    guess_guard: int = Field(default=10, ge=0, description="Extra equations beyond the unknown count")
    holdback_fraction: float = Field(default=0.2, ge=0, lt=1, description="Share of terms kept out of the solve")

    # elliptic layer
    precision: int = Field(default=128, ge=53, description="Working precision in bits")
    max_precision: int = Field(default=512, ge=53, description="Ceiling for adaptive precision doubling")

    # catalog
    catalog_path: str = Field(default="catalog.json", description="Where the classified catalog lives")
    elliptic_report_path: str = Field(default="elliptic_report.json")


@lru_cache
def get_settings() -> Settings:
    """Process-wide settings instance"""
    return Settings()
