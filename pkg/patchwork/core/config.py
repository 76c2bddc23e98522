"""
Configurações do motor de patchworking lidas do ambiente.
Limites de dimensão e de busca, processos do cálculo de homologia, semente das
construções aleatórias e logging da CLI.
"""

import logging.config
import os
from functools import lru_cache
from typing import Any, Optional

# Ortantes são palavras de máquina; um bit fica reservado para o sinal.
HARD_DIMENSION_LIMIT = 62

VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

DEFAULT_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
DETAILED_LOG_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - "
    "%(module)s - %(funcName)s - %(message)s"
)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


class Settings:
    """Configurações carregadas do ambiente."""

    def __init__(self):
        self.app_name = os.getenv("APP_NAME", "patchwork")
        self.app_version = os.getenv("APP_VERSION", "0.1.0")
        self.app_description = os.getenv(
            "APP_DESCRIPTION",
            "Combinatorial patchworking of T-manifolds over F2",
        )
        self.debug = os.getenv("DEBUG", "false").lower() == "true"

        # 0 = um processo por CPU
        self.threads = _int_env("PATCHWORK_THREADS", 0)

        self.max_dim = _int_env("PATCHWORK_MAX_DIM", 24)
        self.enclosure_cap = _int_env("PATCHWORK_ENCLOSURE_CAP", 24)
        self.oracle_cell_limit = _int_env("PATCHWORK_ORACLE_CELL_LIMIT", 50)
        self.random_seed = _int_env("PATCHWORK_RANDOM_SEED", 2024)

        self.log_level = os.getenv("LOG_LEVEL", "INFO").upper()
        self.log_format = os.getenv("LOG_FORMAT", DEFAULT_LOG_FORMAT)
        self.log_file = os.getenv("LOG_FILE") or None

        self.validate()

    def validate(self) -> None:
        if self.log_level not in VALID_LOG_LEVELS:
            raise ValueError(f"Log level must be one of: {list(VALID_LOG_LEVELS)}")
        if self.threads < 0:
            raise ValueError("PATCHWORK_THREADS must be >= 0 (0 = auto)")
        if not 1 <= self.max_dim <= HARD_DIMENSION_LIMIT:
            raise ValueError(
                f"PATCHWORK_MAX_DIM must be between 1 and {HARD_DIMENSION_LIMIT}"
            )
        for name, value in (
            ("PATCHWORK_ENCLOSURE_CAP", self.enclosure_cap),
            ("PATCHWORK_ORACLE_CELL_LIMIT", self.oracle_cell_limit),
        ):
            if value < 1:
                raise ValueError(f"{name} must be positive")


class DevelopmentSettings(Settings):
    """Só com ENVIRONMENT=development: debug ligado e log em DEBUG."""

    def __init__(self):
        super().__init__()
        self.debug = True
        self.log_level = "DEBUG"


class ProductionSettings(Settings):
    """Execuções em lote: respeita LOG_LEVEL e nunca liga debug."""

    def __init__(self):
        super().__init__()
        self.debug = False


class TestSettings(Settings):
    """Testes: log só a partir de WARNING para não poluir a saída do pytest."""

    __test__ = False

    def __init__(self):
        super().__init__()
        self.debug = True
        self.log_level = "WARNING"


ENVIRONMENTS: dict[str, type[Settings]] = {
    "development": DevelopmentSettings,
    "production": ProductionSettings,
    "test": TestSettings,
}


def current_environment() -> str:
    """Nome do ambiente em ENVIRONMENT; sem valor ou desconhecido vale production."""
    environment = os.getenv("ENVIRONMENT", "production").lower()
    return environment if environment in ENVIRONMENTS else "production"


@lru_cache()
def get_settings() -> Settings:
    return ENVIRONMENTS[current_environment()]()


def logging_config(
    settings: Settings, level: Optional[str] = None
) -> dict[str, Any]:
    """
    Monta o dicionário de dictConfig.

    O console escreve em stderr porque stdout carrega os relatórios da CLI.
    Com LOG_FILE, um RotatingFileHandler recebe o formato detalhado.
    """
    level = (level or settings.log_level).upper()
    handlers = ["console"]
    config: dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {"format": settings.log_format},
            "detailed": {
                "format": DETAILED_LOG_FORMAT,
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "level": level,
                "formatter": "default",
                "stream": "ext://sys.stderr",
            },
        },
    }
    if settings.log_file:
        handlers.append("file")
        config["handlers"]["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": level,
            "formatter": "detailed",
            "filename": settings.log_file,
            "maxBytes": 10485760,  # 10MB
            "backupCount": 5,
        }
    config["loggers"] = {
        "": {"level": "WARNING", "handlers": handlers, "propagate": False},
        "patchwork": {"level": level, "handlers": handlers, "propagate": False},
    }
    return config


def configure_logging(level: Optional[str] = None) -> None:
    logging.config.dictConfig(logging_config(get_settings(), level))


def get_worker_count() -> int:
    """Resolve PATCHWORK_THREADS; 0 significa um processo por CPU."""
    threads = get_settings().threads
    if threads == 0:
        return os.cpu_count() or 1
    return threads


def get_limits_config() -> dict[str, int]:
    settings = get_settings()
    return {
        "max_dim": settings.max_dim,
        "enclosure_cap": settings.enclosure_cap,
        "oracle_cell_limit": settings.oracle_cell_limit,
        "threads": get_worker_count(),
    }


def get_app_info() -> dict[str, Any]:
    """Nome, versão e descrição usados por --version e pelo cabeçalho do --help."""
    settings = get_settings()
    return {
        "name": settings.app_name,
        "version": settings.app_version,
        "description": settings.app_description,
        "environment": current_environment(),
        "debug": settings.debug,
    }
