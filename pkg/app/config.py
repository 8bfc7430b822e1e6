"""Configuration settings for the Graded Stillman Toolkit."""

import logging
import sys
from pathlib import Path
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict


DATA_DIR = Path(__file__).resolve().parent / "data"


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application
    app_name: str = "Graded Stillman Toolkit"
    app_version: str = "1.0.0"
    debug: bool = False
    log_level: str = "WARNING"

    # Arithmetic
    default_field: str = "GF(32003)"

    # Groebner engine
    max_pair_queue: int = 200000
    verify_groebner: bool = True
    verify_complexes: bool = True

    # Stillman analysis
    known_bounds_path: str = str(DATA_DIR / "known_bounds.txt")

    # Output
    default_output_format: str = "text"

    # API Settings
    api_host: str = "127.0.0.1"
    api_port: int = 8000

    model_config = SettingsConfigDict(env_file=".env", env_prefix="STILLMAN_", case_sensitive=False)


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings."""
    return settings


def configure_logging(config: Optional[Settings] = None) -> None:
    """Send library logs to stderr at the configured level."""
    config = config or get_settings()
    level = logging.DEBUG if config.debug else getattr(logging, config.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("app").setLevel(level)
