from pydantic_settings import BaseSettings
from typing import Optional, Tuple


# Parametrización por defecto (ventana de 500 datos, paso 1,
# seis escalas diádicas, DFA-1)
DEFAULT_WINDOW = 500
DEFAULT_STEP = 1
DEFAULT_SCALES: Tuple[int, ...] = (4, 8, 16, 32, 64, 128)
DEFAULT_POLY_ORDER = 1
DEFAULT_METHOD = "dfa"
DEFAULT_SERIES = "returns"
DEFAULT_FORMAT = "csv"


class Settings(BaseSettings):
    """Configuración del servicio HTTP. La CLI no la lee."""

    # Configuración de la API
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    debug: bool = False

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Límites de cálculo
    max_points: int = 200_000
    n_jobs: int = 1

    class Config:
        env_file = ".env"
        case_sensitive = False


# Instancia global de configuración
settings = Settings()
