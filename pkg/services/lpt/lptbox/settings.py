"""
Engine settings - YAML defaults next to the code, LPT_* environment overrides
"""

import os
from functools import lru_cache
from typing import Literal, Tuple, Type

from pydantic import BaseModel, Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)

CONFIG_PATH = os.getenv(
    "LPT_CONFIG_FILE", os.path.join(os.path.dirname(__file__), "config.yaml")
)


class ServiceSettings(BaseModel):
    name: str = "LPT Box"
    version: str = "0.1.0"


class SeriesSettings(BaseModel):
    coefficient_cap: int = Field(default=64, ge=1, description="Largest potential coefficient index")


class OracleSettings(BaseModel):
    r_min_factor: float = Field(default=1e-6, gt=0)
    r_max_factor: float = Field(default=50.0, gt=0)
    steps: int = Field(default=40000, ge=1000)
    tol: float = Field(default=1e-10, gt=0)
    max_iterations: int = Field(default=200, ge=10)
    narrow_fraction: float = Field(default=1e-4, gt=0)
    window_margin: float = Field(default=0.05, ge=0)
    richardson_factor: float = Field(default=10.0, gt=0)
    hulthen_series_threshold: float = Field(default=2.0**-20, gt=0)


class SummationSettings(BaseModel):
    divergence_run: int = Field(default=3, ge=1, description="Consecutive growing ratios that flag divergence")


class OutputSettings(BaseModel):
    format: Literal["json", "csv"] = "json"
    decimal_digits: int = Field(default=12, ge=1, le=200)


class LoggingSettings(BaseModel):
    level: str = "INFO"
    renderer: Literal["json", "console"] = "json"


class RuntimeSettings(BaseModel):
    workers: int = Field(default=1, ge=1)


class EngineSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LPT_",
        env_nested_delimiter="__",
        yaml_file=CONFIG_PATH,
        extra="ignore",
    )

    service: ServiceSettings = ServiceSettings()
    series: SeriesSettings = SeriesSettings()
    oracle: OracleSettings = OracleSettings()
    summation: SummationSettings = SummationSettings()
    output: OutputSettings = OutputSettings()
    logging: LoggingSettings = LoggingSettings()
    runtime: RuntimeSettings = RuntimeSettings()

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, env_settings, YamlConfigSettingsSource(settings_cls))


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    return EngineSettings()
