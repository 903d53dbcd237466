from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file="services/packing/settings.env",
        env_file_encoding="utf-8",
        env_prefix="PACKING_",
    )

    # Capacity used by the instance generators, large enough for fine spreads inside a decile
    default_capacity: int = 1_000_000
    # Capacity of instances written in the decimal `unit` form
    unit_capacity: int = 1_000_000_000
    oracle_max_items: int = 16
    oracle_node_budget: int = 2_000_000


config = Settings()
