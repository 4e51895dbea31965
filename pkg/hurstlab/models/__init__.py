from .domain import *
from .schemas import *

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "VolatilitySeries",
    "SeriesWindow",
    "DataQualityReport",
    "HurstEstimate",
    "HurstMethod",
    "ScaleSet",
    "SeriesKind",
    "WindowSpec",
    "RollingResult",
    "DescriptiveStats",
    "FgnSpec",
    "CsvSchema",
    "RunConfig",
    "HurstRecord",
    "PipelineReport",
]
