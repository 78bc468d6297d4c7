from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"

    # Runtime
    threads: int = 1
    output_dir: str = "runs"
    seed: int = 0

    # Initialization
    kmeans_max_iterations: int = 100
    variance_floor: float = 1e-6

    # Reporting
    mse_threshold_db: float = -5.0

    model_config = SettingsConfigDict(
        env_prefix="PTRBF_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    return Settings()
