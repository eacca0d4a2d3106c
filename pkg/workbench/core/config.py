from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    DEBUG: bool = False
    # Fallback seed for subcommands run without --seed.
    WORKBENCH_SEED: Optional[int] = None
    DATABASE_URL: str = "sqlite:///./workbench.db"
    ARCHIVE_RUNS: bool = False
    MILLER_RABIN_ROUNDS: int = 40
    ISOMORPHISM_VERTEX_LIMIT: int = 8
    COLORING_VERTEX_LIMIT: int = 12
    COIN_SPACE_LIMIT: int = 100_000
    STRICT_FIAT_SHAMIR: bool = True
    LOG_BUFFER_BYTES: int = 10 * 1024 * 1024

    class Config:
        env_file = ".env"


settings = Settings()
