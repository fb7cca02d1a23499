import os
from pydantic import BaseModel, Field


class Settings(BaseModel):
    freeness_budget: int = Field(1_000_000, ge=1, description="Candidate extensions tried by the freeness search")
    exhaustive_limit: int = Field(4096, ge=0, description="Largest basis-tuple count checked exhaustively")
    property_sample: int = Field(48, ge=1, description="Tuples drawn when a property check is sampled")
    seed: int = Field(0, description="Seed for sampled property checks and freeness candidates")
    log_level: str = Field("WARNING", description="Root log level used by the CLI")


def load_settings() -> Settings:
    """Read settings from HOPF_* environment variables"""
    return Settings(
        freeness_budget=int(os.getenv("HOPF_FREENESS_BUDGET", "1000000")),
        exhaustive_limit=int(os.getenv("HOPF_EXHAUSTIVE_LIMIT", "4096")),
        property_sample=int(os.getenv("HOPF_PROPERTY_SAMPLE", "48")),
        seed=int(os.getenv("HOPF_SEED", "0")),
        log_level=os.getenv("HOPF_LOG_LEVEL", "WARNING").upper(),
    )


# Global settings instance
settings = load_settings()
