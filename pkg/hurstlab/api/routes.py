from fastapi import APIRouter, File, HTTPException, UploadFile
from typing import List
import io
import logging

from hurstlab.analysis.descriptive import describe
from hurstlab.analysis.estimators import make_estimator
from hurstlab.analysis.synth import gen_fgn
from hurstlab.config import settings
from hurstlab.models.domain import (
    DescriptiveStats, FgnSpec, HurstMethod, SeriesKind, WindowSpec
)
from hurstlab.models.schemas import (
    CsvSchema, ErrorResponse, HurstRequest, HurstResponse, RollRequest, RollResponse, RunConfig,
    SynthResponse, ValuesRequest
)
from hurstlab.processors.csv_io import load_csv
from hurstlab.services.pipeline_service import PipelineService, to_records
from hurstlab.services.rolling import roll, summarize
from hurstlab.utils.helpers import parse_scales

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/api/v1",
    tags=["Hurst"],
    responses={413: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
)

# Instancia del servicio
pipeline_service = PipelineService(n_jobs=settings.n_jobs)


def _check_size(values: List[float]) -> None:
    if len(values) > settings.max_points:
        raise HTTPException(
            status_code=413,
            detail=f"la serie tiene {len(values)} puntos, el máximo es {settings.max_points}"
        )


@router.post("/stats", response_model=DescriptiveStats)
def descriptive_stats(request: ValuesRequest):
    """Estadística descriptiva con Jarque-Bera"""
    _check_size(request.values)
    return describe(request.values)


@router.post("/hurst", response_model=HurstResponse)
def hurst_estimate(request: HurstRequest):
    """Una estimación de H sobre la serie completa"""
    _check_size(request.values)
    estimator = make_estimator(request.method, request.scales, request.poly_order)
    estimate = estimator(request.values)
    logger.info(f"Estimación {request.method.value}: H = {estimate.h:.4f}")
    return HurstResponse(estimate=estimate)


@router.post("/roll", response_model=RollResponse)
def rolling_hurst(request: RollRequest):
    """Serie de Hurst sobre ventanas deslizantes"""
    _check_size(request.values)
    result = roll(
        request.values,
        WindowSpec(length=request.window, step=request.step),
        request.method,
        scales=request.scales,
        poly_order=request.poly_order,
        n_jobs=settings.n_jobs,
    )
    summary = summarize(result)
    return RollResponse(
        method=result.method,
        window_count=len(result),
        gap_count=result.gap_count,
        records=to_records(result),
        summary=summary,
    )


@router.post("/pipeline")
def pipeline(
    file: UploadFile = File(...),
    series: SeriesKind = SeriesKind.RETURNS,
    method: HurstMethod = HurstMethod.DFA,
    window: int = 500,
    step: int = 1,
    scales: str = "4,8,16,32,64,128",
    poly_order: int = 1,
    date_col: str = "date",
    close_col: str = "close",
    high_col: str = "high",
    low_col: str = "low",
):
    """Pipeline completo sobre un CSV OHLC subido"""
    try:
        scale_tuple = parse_scales(scales)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

    schema = CsvSchema(date_column=date_col, close_column=close_col, high_column=high_col, low_column=low_col)
    config = RunConfig(
        input=file.filename,
        series=series,
        method=method,
        window=window,
        step=step,
        scales=scale_tuple,
        poly_order=poly_order,
        csv_schema=schema,
    )
    prices = load_csv(io.BytesIO(file.file.read()), schema)
    report = pipeline_service.run_pipeline(config, prices)
    return {
        "meta": report.meta(),
        "records": [r.model_dump(mode="json") for r in report.records],
    }


@router.post("/synth/fgn", response_model=SynthResponse)
def synth_fgn(spec: FgnSpec):
    """Genera un ruido gaussiano fraccional"""
    if spec.n > settings.max_points:
        raise HTTPException(status_code=413, detail=f"n = {spec.n} excede el máximo {settings.max_points}")
    values = gen_fgn(spec)
    return SynthResponse(n=spec.n, h=spec.h, values=values.tolist())
