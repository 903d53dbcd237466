from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file="services/harness/settings.env",
        env_file_encoding="utf-8",
        env_prefix="HARNESS_",
    )

    log_level: str = "INFO"
    default_algorithm: Literal["ranger", "ffd", "bfd"] = "ranger"
    default_strategy: Literal["random", "pop-last", "pop-first"] = "random"
    default_seed: int = 0
    # Instances up to this size are solved exactly when comparing
    oracle_max_n: int = 12
    bench_repeats: int = 5
    bench_sizes: list[int] = [100_000, 200_000, 400_000]


config = Settings()
