from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Any, Dict, List, Optional, Tuple, Union
from datetime import date
from enum import Enum
import datetime

from hurstlab.config import (
    DEFAULT_FORMAT, DEFAULT_METHOD, DEFAULT_POLY_ORDER, DEFAULT_SCALES,
    DEFAULT_SERIES, DEFAULT_STEP, DEFAULT_WINDOW
)
from hurstlab.exceptions import SchemaError
from hurstlab.models.domain import (
    DataQualityReport, DescriptiveStats, HurstEstimate, HurstMethod,
    ScaleSet, SeriesKind, WindowSpec
)


class OutputFormat(str, Enum):
    """Formato de salida"""
    CSV = "csv"
    JSON = "json"


class CsvSchema(BaseModel):
    """Columnas del archivo OHLC de entrada"""
    model_config = ConfigDict(frozen=True)

    date_column: str = "date"
    close_column: str = "close"
    high_column: str = "high"
    low_column: str = "low"
    delimiter: str = ","

    @model_validator(mode="after")
    def _check_columns(self) -> "CsvSchema":
        names = [self.date_column, self.close_column, self.high_column, self.low_column]
        if len(set(names)) != len(names):
            raise SchemaError(f"los nombres de columna deben ser distintos: {names}")
        if len(self.delimiter) != 1:
            raise SchemaError(f"el delimitador debe ser un carácter: {self.delimiter!r}")
        return self


class RunConfig(BaseModel):
    """Configuración de una ejecución del pipeline.

    Los valores por defecto son los de hurstlab.config.
    """
    model_config = ConfigDict(frozen=True)

    input: Optional[str] = None
    series: SeriesKind = SeriesKind(DEFAULT_SERIES)
    method: HurstMethod = HurstMethod(DEFAULT_METHOD)
    window: int = Field(default=DEFAULT_WINDOW, ge=3)
    step: int = Field(default=DEFAULT_STEP, ge=1)
    scales: Tuple[int, ...] = DEFAULT_SCALES
    poly_order: int = Field(default=DEFAULT_POLY_ORDER, ge=1, le=3)
    format: OutputFormat = OutputFormat(DEFAULT_FORMAT)
    csv_schema: CsvSchema = CsvSchema()
    split_date: Optional[date] = None
    n_jobs: int = 1

    @model_validator(mode="after")
    def _check_window(self) -> "RunConfig":
        scale_set = ScaleSet(blocks=self.scales)
        if self.method != HurstMethod.RS_SINGLE:
            scale_set.check_window(self.window)
        return self

    @property
    def scale_set(self) -> ScaleSet:
        return ScaleSet(blocks=self.scales)

    @property
    def window_spec(self) -> WindowSpec:
        return WindowSpec(length=self.window, step=self.step)


class HurstRecord(BaseModel):
    """Fila de la serie de Hurst deslizante (lista para graficar)"""
    anchor_date: Union[date, int]
    h: Optional[float] = None
    r_squared: Optional[float] = None
    method: HurstMethod


class ComparisonRecord(BaseModel):
    """DFA y R/S multiescala sobre la misma ventana"""
    anchor_date: Union[date, int]
    h_dfa: Optional[float] = None
    h_rs: Optional[float] = None


class SeriesRecord(BaseModel):
    """Observación de la serie derivada"""
    date: datetime.date
    value: float
    anomaly: bool = False


class StatRow(BaseModel):
    """Fila de una tabla descriptiva: estadístico y una columna por serie"""
    model_config = ConfigDict(extra="allow")

    statistic: str


class SplitSummary(BaseModel):
    """Resumen antes / después de una fecha de corte"""
    split: Union[date, int]
    before: Optional[DescriptiveStats] = None
    after: Optional[DescriptiveStats] = None


class PipelineReport(BaseModel):
    """Resultado completo de run_pipeline"""
    config: RunConfig
    quality: DataQualityReport
    series_stats: DescriptiveStats
    hurst_stats: DescriptiveStats
    records: List[HurstRecord]
    gap_count: int = 0
    split: Optional[SplitSummary] = None

    def meta(self) -> dict:
        """Bloque 'meta' de la salida JSON"""
        return self.model_dump(mode="json", exclude={"records"})


class ComparisonReport(BaseModel):
    """Resultado de compare_methods"""
    config: RunConfig
    quality: Optional[DataQualityReport] = None
    dfa_stats: DescriptiveStats
    rs_stats: DescriptiveStats
    mean_gap: Optional[float] = None
    records: List[ComparisonRecord]

    def meta(self) -> dict:
        return self.model_dump(mode="json", exclude={"records"})


# Modelos de la API HTTP

class ValuesRequest(BaseModel):
    """Request con una serie numérica"""
    values: List[float]


class HurstRequest(ValuesRequest):
    """Request para una estimación sobre una ventana"""
    method: HurstMethod = HurstMethod.DFA
    scales: Tuple[int, ...] = DEFAULT_SCALES
    poly_order: int = Field(default=DEFAULT_POLY_ORDER, ge=1, le=3)


class RollRequest(HurstRequest):
    """Request para la serie deslizante"""
    window: int = Field(default=DEFAULT_WINDOW, ge=3)
    step: int = Field(default=DEFAULT_STEP, ge=1)


class RollResponse(BaseModel):
    """Response de la serie deslizante"""
    method: HurstMethod
    window_count: int
    gap_count: int
    records: List[HurstRecord]
    summary: DescriptiveStats


class HurstResponse(BaseModel):
    """Response de una estimación"""
    estimate: HurstEstimate


class SynthResponse(BaseModel):
    """Response del generador fGn"""
    n: int
    h: float
    values: List[float]


class ErrorResponse(BaseModel):
    """Response para errores"""
    error: str
    detail: Optional[str] = None
    status_code: Optional[int] = None

    def body(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


def stats_table(columns: Dict[str, DescriptiveStats]) -> List[StatRow]:
    """Tabla con una fila por estadístico y una columna por serie"""
    rows = []
    for field in DescriptiveStats.model_fields:
        row = {"statistic": field}
        for name, summary in columns.items():
            row[name] = float(getattr(summary, field)) if summary is not None else None
        rows.append(StatRow(**row))
    return rows
