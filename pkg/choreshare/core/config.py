import logging
from fractions import Fraction
from functools import lru_cache
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# Load .env from the project root (optional but fine)
load_dotenv()

# --- Nested Settings Models ---

class OracleSettings(BaseModel):
    """Budgets for the exact valuation, MMS and certification searches."""
    budget_items: int = Field(14, gt=0)
    budget_machines: int = Field(5, gt=0)
    mms_budget_items: int = Field(12, gt=0)
    mms_budget_agents: int = Field(4, gt=0)
    exhaustive_allocation_limit: int = Field(10_000_000, gt=0)


class AllocatorSettings(BaseModel):
    """Tunable parameters of the allocation algorithms and audits."""
    delta: str = "1/10"
    alpha: str = "2"

    @field_validator("delta", "alpha")
    @classmethod
    def _must_be_positive_rational(cls, value: str) -> str:
        if Fraction(value) <= 0:
            raise ValueError("must be a positive rational")
        return value

    @property
    def delta_fraction(self) -> Fraction:
        return Fraction(self.delta)

    @property
    def alpha_fraction(self) -> Fraction:
        return Fraction(self.alpha)


class BenchSettings(BaseModel):
    """Random sweep defaults for the bench command."""
    workers: int = Field(4, gt=0)
    instances: int = Field(500, ge=0)
    max_items: int = Field(10, ge=0)
    max_capacity: int = Field(50, gt=0)
    max_machines: int = Field(3, gt=0)
    max_speed: int = Field(5, gt=0)
    max_size: int = Field(20, gt=0)


class LoggingSettings(BaseModel):
    level: str = "INFO"
    json_format: bool = False

# --- Main Application Settings ---

class Settings(BaseSettings):
    """Main application settings, composed of nested configuration models."""
    project_name: str = "ChoreShare MMS Toolkit"

    oracle: OracleSettings = Field(default_factory=OracleSettings)
    allocator: AllocatorSettings = Field(default_factory=AllocatorSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    log: LoggingSettings = Field(default_factory=LoggingSettings)

    # Values come via nested paths such as "ORACLE__BUDGET_ITEMS"
    model_config = SettingsConfigDict(
        env_nested_delimiter='__',
        env_file=".env",
        env_file_encoding="utf-8",
    )

@lru_cache()
def get_settings() -> "Settings":
    logging.info("Loading application settings...")
    return Settings()
