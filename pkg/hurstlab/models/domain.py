from datetime import date
from enum import Enum
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from hurstlab.exceptions import (
    EmptyInputError, OrderingError, PriceDomainError, ScaleError
)


class SeriesKind(str, Enum):
    """Serie derivada sobre la que se estima"""
    RETURNS = "returns"
    VOLATILITY = "volatility"


class HurstMethod(str, Enum):
    """Estimador del exponente de Hurst"""
    DFA = "dfa"
    RS_MULTISCALE = "rs"
    RS_SINGLE = "rs-single"


def _as_float_tuple(value) -> Tuple[float, ...]:
    return tuple(np.asarray(value, dtype=float).ravel().tolist())


def _check_strictly_increasing(dates: Tuple[date, ...]) -> None:
    for previous, current in zip(dates, dates[1:]):
        if current <= previous:
            raise OrderingError(
                f"fechas no estrictamente crecientes: {previous.isoformat()} seguida de {current.isoformat()}"
            )


class DataQualityReport(BaseModel):
    """Resumen de calidad de datos de una serie de precios"""
    model_config = ConfigDict(frozen=True)

    rows: int
    anomaly_count: int
    anomaly_dates: Tuple[date, ...] = ()
    start: date
    end: date


class PriceSeries(BaseModel):
    """Observaciones diarias fechadas (cierre, máximo y mínimo)"""
    model_config = ConfigDict(frozen=True)

    dates: Tuple[date, ...]
    close: Tuple[float, ...]
    high: Tuple[float, ...]
    low: Tuple[float, ...]

    @field_validator("close", "high", "low", mode="before")
    @classmethod
    def _coerce_prices(cls, value):
        return _as_float_tuple(value)

    @model_validator(mode="after")
    def _check_invariants(self) -> "PriceSeries":
        n = len(self.dates)
        if not (len(self.close) == len(self.high) == len(self.low) == n):
            raise PriceDomainError(
                f"longitudes distintas: dates={n}, close={len(self.close)}, "
                f"high={len(self.high)}, low={len(self.low)}"
            )
        for name in ("close", "high", "low"):
            column = getattr(self, name)
            for day, price in zip(self.dates, column):
                if not np.isfinite(price) or price <= 0:
                    raise PriceDomainError(
                        f"precio {name} no positivo ({price}) en {day.isoformat()}"
                    )
        _check_strictly_increasing(self.dates)
        return self

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def anomalies(self) -> Tuple[bool, ...]:
        """Filas con máximo menor que mínimo. Se conservan, no se descartan."""
        return tuple(h < l for h, l in zip(self.high, self.low))

    def quality_report(self) -> DataQualityReport:
        if not self.dates:
            raise EmptyInputError("la serie de precios está vacía")
        flagged = tuple(d for d, bad in zip(self.dates, self.anomalies) if bad)
        return DataQualityReport(
            rows=len(self.dates),
            anomaly_count=len(flagged),
            anomaly_dates=flagged,
            start=self.dates[0],
            end=self.dates[-1],
        )


class DatedSeries(BaseModel):
    """Serie numérica fechada derivada de precios"""
    model_config = ConfigDict(frozen=True)

    kind: SeriesKind
    dates: Tuple[date, ...]
    values: Tuple[float, ...]
    anomalies: Tuple[bool, ...] = ()

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value):
        return _as_float_tuple(value)

    @model_validator(mode="after")
    def _check_invariants(self) -> "DatedSeries":
        if len(self.dates) != len(self.values):
            raise PriceDomainError(
                f"longitudes distintas: dates={len(self.dates)}, values={len(self.values)}"
            )
        if self.anomalies and len(self.anomalies) != len(self.values):
            raise PriceDomainError("la marca de anomalías no está alineada con los valores")
        for day, value in zip(self.dates, self.values):
            if not np.isfinite(value):
                raise PriceDomainError(f"valor no finito en {day.isoformat()}")
        _check_strictly_increasing(self.dates)
        return self

    def __len__(self) -> int:
        return len(self.values)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class ReturnSeries(DatedSeries):
    """Rendimientos logarítmicos diarios ×100"""
    kind: Literal[SeriesKind.RETURNS] = SeriesKind.RETURNS


class VolatilitySeries(DatedSeries):
    """Rango logarítmico máximo/mínimo diario ×100"""
    kind: Literal[SeriesKind.VOLATILITY] = SeriesKind.VOLATILITY

    @model_validator(mode="after")
    def _check_sign(self) -> "VolatilitySeries":
        flags = self.anomalies or (False,) * len(self.values)
        for day, value, flagged in zip(self.dates, self.values, flags):
            if value < 0 and not flagged:
                raise PriceDomainError(
                    f"volatilidad negativa sin marca de anomalía en {day.isoformat()}"
                )
        return self


class SeriesWindow(BaseModel):
    """Sub-serie contigua, fechada por su primera observación"""
    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]
    start_index: int
    start_date: Optional[date] = None

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value):
        return _as_float_tuple(value)

    def __len__(self) -> int:
        return len(self.values)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class ScaleSet(BaseModel):
    """Tamaños de bloque para la regresión log-log"""
    model_config = ConfigDict(frozen=True)

    blocks: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_blocks(self) -> "ScaleSet":
        if len(self.blocks) < 2:
            raise ScaleError(f"se necesitan al menos 2 escalas, hay {len(self.blocks)}")
        if any(m < 4 for m in self.blocks):
            raise ScaleError(f"todas las escalas deben ser >= 4: {list(self.blocks)}")
        if any(b <= a for a, b in zip(self.blocks, self.blocks[1:])):
            raise ScaleError(f"las escalas deben ser estrictamente crecientes: {list(self.blocks)}")
        return self

    @property
    def max_block(self) -> int:
        return self.blocks[-1]

    def check_window(self, window_length: int) -> None:
        """Exige escala máxima <= longitud de ventana / 2"""
        if 2 * self.max_block > window_length:
            raise ScaleError(
                f"la escala máxima {self.max_block} excede la mitad de la ventana ({window_length})"
            )


class HurstEstimate(BaseModel):
    """Un exponente estimado con sus diagnósticos de ajuste"""
    model_config = ConfigDict(frozen=True)

    h: float
    method: HurstMethod
    scales: Tuple[int, ...]
    fit_points: Tuple[Tuple[float, float], ...]
    r_squared: float
    std_err: float
    intercept: float = 0.0
    poly_order: Optional[int] = None
    skipped_blocks: int = 0
    window_length: int

    @model_validator(mode="after")
    def _check_invariants(self) -> "HurstEstimate":
        if not np.isfinite(self.h):
            raise PriceDomainError(f"exponente no finito: {self.h}")
        if not 0.0 <= self.r_squared <= 1.0:
            raise PriceDomainError(f"r_squared fuera de [0, 1]: {self.r_squared}")
        if len(self.fit_points) != len(self.scales):
            raise PriceDomainError("fit_points y scales deben tener la misma longitud")
        if self.method != HurstMethod.RS_SINGLE and len(self.scales) < 2:
            raise ScaleError("un estimador por regresión necesita al menos 2 escalas")
        if any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ScaleError("las escalas deben ser estrictamente crecientes")
        return self


class WindowSpec(BaseModel):
    """Protocolo de ventana deslizante"""
    model_config = ConfigDict(frozen=True)

    length: int = Field(default=500, ge=2)
    step: int = Field(default=1, ge=1)
    anchor: Literal["first_observation"] = "first_observation"

    def window_count(self, n: int) -> int:
        if n < self.length:
            return 0
        return (n - self.length) // self.step + 1


class WindowWarning(BaseModel):
    """Ventana cuyo estimador falló"""
    model_config = ConfigDict(frozen=True)

    index: int
    anchor: Union[date, int]
    kind: str
    message: str


class RollingResult(BaseModel):
    """Serie temporal de estimaciones, una por ventana, en orden de anclaje"""
    model_config = ConfigDict(frozen=True)

    anchors: List[Union[date, int]]
    estimates: List[Optional[HurstEstimate]]
    method: HurstMethod
    spec: WindowSpec
    warnings: List[WindowWarning] = []

    @model_validator(mode="after")
    def _check_alignment(self) -> "RollingResult":
        if len(self.anchors) != len(self.estimates):
            raise PriceDomainError(
                f"anchors ({len(self.anchors)}) y estimates ({len(self.estimates)}) desalineados"
            )
        return self

    def __len__(self) -> int:
        return len(self.estimates)

    @property
    def h_values(self) -> List[float]:
        """Exponentes de las ventanas exitosas"""
        return [e.h for e in self.estimates if e is not None]

    @property
    def gap_count(self) -> int:
        return sum(1 for e in self.estimates if e is None)


class DescriptiveStats(BaseModel):
    """Resumen de ocho estadísticos más el contraste Jarque-Bera"""
    model_config = ConfigDict(frozen=True)

    n: int
    min: float
    max: float
    mean: float
    median: float
    std_dev: float
    skewness: float
    kurtosis: float
    jarque_bera: float
    jb_significant_1pct: bool


class FgnSpec(BaseModel):
    """Parámetros de un ruido gaussiano fraccional"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    h: float = Field(gt=0.0, lt=1.0)
    sigma: float = Field(default=1.0, gt=0.0)
    seed: Optional[int] = None
