from datetime import date, datetime
from typing import Optional, TextIO, Tuple
import logging
import sys

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "INFO", log_file: Optional[str] = None, stream: TextIO = sys.stdout) -> None:
    """Configura el logger raíz (stream + archivo opcional)"""
    handlers = [logging.StreamHandler(stream)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def parse_scales(text: str) -> Tuple[int, ...]:
    """'4,8,16' -> (4, 8, 16)"""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"escalas inválidas: '{text}' (se esperan enteros separados por comas)")


def parse_iso_date(text: str) -> date:
    """Fecha estricta yyyy-mm-dd"""
    try:
        return datetime.strptime(text, "%Y-%m-%d").date()
    except ValueError:
        raise ValueError(f"fecha no ISO-8601: '{text}'")

