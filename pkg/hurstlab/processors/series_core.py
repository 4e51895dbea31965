from typing import Union
import logging

import numpy as np

from hurstlab.exceptions import BoundsError, EmptyInputError, PriceDomainError
from hurstlab.models.domain import (
    DatedSeries, PriceSeries, ReturnSeries, SeriesWindow, VolatilitySeries
)

logger = logging.getLogger(__name__)


def _require_two_rows(prices: PriceSeries) -> None:
    if len(prices) < 2:
        raise EmptyInputError(
            f"se necesitan al menos 2 observaciones, hay {len(prices)}"
        )


def _log_prices(prices: PriceSeries, column: str) -> np.ndarray:
    values = np.asarray(getattr(prices, column), dtype=float)
    bad = np.flatnonzero(values <= 0)
    if bad.size:
        day = prices.dates[bad[0]]
        raise PriceDomainError(f"precio {column} no positivo en {day.isoformat()}")
    return np.log(values)


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Rendimiento logarítmico diario: r_t = 100·(ln P_t − ln P_{t−1})"""
    _require_two_rows(prices)
    log_close = _log_prices(prices, "close")
    values = 100.0 * np.diff(log_close)
    return ReturnSeries(dates=prices.dates[1:], values=values)


def hl_volatility(prices: PriceSeries) -> VolatilitySeries:
    """Volatilidad de rango: 100·(ln P_high − ln P_low), alineada con los rendimientos.

    Se descarta el primer día para que ambas series compartan fechas. Las
    filas con máximo < mínimo quedan marcadas y pueden ser negativas.
    """
    _require_two_rows(prices)
    log_high = _log_prices(prices, "high")
    log_low = _log_prices(prices, "low")
    values = 100.0 * (log_high[1:] - log_low[1:])
    anomalies = prices.anomalies[1:]
    flagged = sum(anomalies)
    if flagged:
        logger.warning(f"{flagged} observaciones con máximo < mínimo conservadas con marca de anomalía")
    return VolatilitySeries(dates=prices.dates[1:], values=values, anomalies=anomalies)


def slice_window(
    series: Union[DatedSeries, np.ndarray, list],
    start_index: int,
    length: int,
) -> SeriesWindow:
    """Ventana contigua [start_index, start_index + length) fechada por su primera observación"""
    if isinstance(series, DatedSeries):
        values = series.to_array()
        dates = series.dates
    else:
        values = np.asarray(series, dtype=float)
        dates = None

    n = len(values)
    if length < 1 or start_index < 0 or start_index + length > n:
        raise BoundsError(
            f"ventana fuera de rango: inicio={start_index}, longitud={length}, serie={n}"
        )
    return SeriesWindow(
        values=values[start_index:start_index + length],
        start_index=start_index,
        start_date=dates[start_index] if dates is not None else None,
    )
