from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # logging
    log_file: Optional[str] = None
    log_level: str = "WARNING"

    # translations and constructions
    default_k: int = 2
    seed: Optional[int] = None
    check_steps: bool = False

    # validate command defaults
    validate_count: int = 200
    validate_workers: int = 4
    validate_max_length: int = 8

    class Config:
        env_file = ".env.dev"
        env_prefix = "INSEQ_"
        from_attributes = True
