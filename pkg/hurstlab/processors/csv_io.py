from pathlib import Path
from typing import IO, Optional, Union
import logging

import pandas as pd

from hurstlab.exceptions import DataIOError, EmptyInputError, RowParseError, SchemaError
from hurstlab.models.domain import PriceSeries
from hurstlab.models.schemas import CsvSchema

logger = logging.getLogger(__name__)

ISO_DATE_FORMAT = "%Y-%m-%d"

# ruta o buffer abierto (texto o bytes UTF-8)
CsvSource = Union[str, Path, IO]


def _source_name(source: CsvSource) -> str:
    return str(source) if isinstance(source, (str, Path)) else "<entrada>"


def _read_frame(source: CsvSource, schema: CsvSchema) -> pd.DataFrame:
    try:
        return pd.read_csv(
            source,
            sep=schema.delimiter,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
        )
    except FileNotFoundError as e:
        raise DataIOError(f"archivo no encontrado: {_source_name(source)}") from e
    except pd.errors.EmptyDataError as e:
        raise EmptyInputError(f"archivo vacío, falta la cabecera: {_source_name(source)}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise DataIOError(f"no se pudo leer {_source_name(source)}: {e}") from e


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        return float("nan")


def _first_bad_row(mask: pd.Series) -> Optional[int]:
    bad = mask.to_numpy().nonzero()[0]
    return int(bad[0]) if bad.size else None


def load_csv(path: CsvSource, schema: Optional[CsvSchema] = None) -> PriceSeries:
    """Carga un archivo OHLC diario (fechas ISO-8601) en una PriceSeries.

    Las filas con máximo < mínimo se cargan y quedan marcadas como anomalía.
    """
    schema = schema or CsvSchema()
    frame = _read_frame(path, schema)
    frame.columns = [str(c).strip() for c in frame.columns]

    for column in (schema.date_column, schema.close_column, schema.high_column, schema.low_column):
        if column not in frame.columns:
            raise SchemaError(f"columna ausente en la cabecera: '{column}'")
    if frame.empty:
        raise EmptyInputError(f"el archivo no tiene filas de datos: {_source_name(path)}")

    # línea 1 = cabecera
    raw_dates = frame[schema.date_column].str.strip()
    dates = pd.to_datetime(raw_dates, format=ISO_DATE_FORMAT, errors="coerce")
    bad = _first_bad_row(dates.isna())
    if bad is not None:
        raise RowParseError(f"fecha no ISO-8601 '{raw_dates.iloc[bad]}'", line=bad + 2)

    prices = {}
    for name, column in (("close", schema.close_column), ("high", schema.high_column), ("low", schema.low_column)):
        raw = frame[column].str.strip()
        parsed = raw.map(_parse_float)
        bad = _first_bad_row(parsed.isna())
        if bad is not None:
            raise RowParseError(f"valor no numérico '{raw.iloc[bad]}' en columna {column}", line=bad + 2)
        prices[name] = parsed.to_numpy(dtype=float)

    series = PriceSeries(
        dates=tuple(ts.date() for ts in dates),
        close=prices["close"],
        high=prices["high"],
        low=prices["low"],
    )

    quality = series.quality_report()
    logger.info(
        f"CSV cargado: {quality.rows} filas, {quality.anomaly_count} anomalías, "
        f"{quality.start.isoformat()} a {quality.end.isoformat()}"
    )
    return series


def emit_prices(prices: PriceSeries, schema: Optional[CsvSchema] = None) -> str:
    """Serializa una PriceSeries en el formato que lee load_csv (precisión completa)"""
    schema = schema or CsvSchema()
    frame = pd.DataFrame({
        schema.date_column: [d.isoformat() for d in prices.dates],
        schema.close_column: list(prices.close),
        schema.high_column: list(prices.high),
        schema.low_column: list(prices.low),
    })
    return frame.to_csv(index=False, sep=schema.delimiter, lineterminator="\n")
