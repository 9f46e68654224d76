from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="ETF_FORGE_", extra="ignore")

    # Enumeration budget (subset counts, not seconds)
    budget: int = 50_000_000

    # Finite fields
    field_bound: int = 10_000
    intertwiner_exhaustive_limit: int = 100_000
    intertwiner_sample: int = 2_000

    # Permutation groups
    group_cap: int = 10_000_000
    orbit_cap: int = 10_000_000
    search_node_cap: int = 50_000_000

    # Matroid
    circuit_sample: int = 100
    jobs: int = 1

    # Sampling
    seed: int = 0

    # Logging
    log_level: str = "INFO"

    # HTTP service
    host: str = "127.0.0.1"
    port: int = 8000


settings = Settings()
