from typing import List, Optional, Tuple
import logging

import numpy as np

from hurstlab.analysis.descriptive import describe
from hurstlab.analysis.estimators import make_estimator
from hurstlab.exceptions import EmptyInputError
from hurstlab.models.domain import (
    DatedSeries, HurstEstimate, HurstMethod, PriceSeries, RollingResult,
    SeriesKind, SeriesWindow
)
from hurstlab.models.schemas import (
    ComparisonRecord, ComparisonReport, HurstRecord, PipelineReport, RunConfig,
    SeriesRecord, SplitSummary
)
from hurstlab.processors.csv_io import load_csv
from hurstlab.processors.series_core import hl_volatility, log_returns, slice_window
from hurstlab.services.rolling import roll, split_summary, summarize

logger = logging.getLogger(__name__)


def to_records(result: RollingResult) -> List[HurstRecord]:
    """Registros (ancla, h, r², método) con hueco explícito para ventanas fallidas"""
    return [
        HurstRecord(
            anchor_date=anchor,
            h=estimate.h if estimate is not None else None,
            r_squared=estimate.r_squared if estimate is not None else None,
            method=result.method,
        )
        for anchor, estimate in zip(result.anchors, result.estimates)
    ]


def derive_series(prices: PriceSeries, kind: SeriesKind) -> DatedSeries:
    """Rendimientos o volatilidad de rango"""
    if SeriesKind(kind) == SeriesKind.RETURNS:
        return log_returns(prices)
    return hl_volatility(prices)


def series_records(series: DatedSeries) -> List[SeriesRecord]:
    anomalies = series.anomalies or (False,) * len(series)
    return [
        SeriesRecord(date=d, value=v, anomaly=a)
        for d, v, a in zip(series.dates, series.values, anomalies)
    ]


class PipelineService:
    """Encadena carga, transformación, estimación deslizante y resumen"""

    def __init__(self, n_jobs: int = 1):
        self.n_jobs = n_jobs

    def load_prices(self, config: RunConfig, prices: Optional[PriceSeries] = None) -> PriceSeries:
        if prices is not None:
            return prices
        if not config.input:
            raise EmptyInputError("no se indicó archivo de entrada")
        return load_csv(config.input, config.csv_schema)

    def run_pipeline(self, config: RunConfig, prices: Optional[PriceSeries] = None) -> PipelineReport:
        """Procedimiento completo: estadística de la serie, Hurst deslizante y su resumen"""
        logger.info("Paso 1: Carga de precios")
        prices = self.load_prices(config, prices)
        quality = prices.quality_report()

        logger.info(f"Paso 2: Serie derivada ({config.series.value})")
        series = derive_series(prices, config.series)
        series_stats = describe(series.values)

        logger.info(f"Paso 3: Hurst deslizante ({config.method.value})")
        result = roll(
            series,
            config.window_spec,
            config.method,
            scales=config.scale_set,
            poly_order=config.poly_order,
            n_jobs=self.n_jobs,
        )

        logger.info("Paso 4: Resumen de las estimaciones")
        hurst_stats = summarize(result)

        split = None
        if config.split_date is not None:
            before, after = split_summary(result, config.split_date)
            split = SplitSummary(split=config.split_date, before=before, after=after)

        logger.info(f"Pipeline completado: {len(result)} ventanas, {result.gap_count} huecos")
        return PipelineReport(
            config=config,
            quality=quality,
            series_stats=series_stats,
            hurst_stats=hurst_stats,
            records=to_records(result),
            gap_count=result.gap_count,
            split=split,
        )

    def compare_methods(self, config: RunConfig, prices: Optional[PriceSeries] = None) -> ComparisonReport:
        """DFA frente a R/S multiescala sobre las mismas ventanas"""
        prices = self.load_prices(config, prices)
        series = derive_series(prices, config.series)
        return compare_methods(series, config, n_jobs=self.n_jobs, quality=prices.quality_report())

    def single_estimate(
        self,
        config: RunConfig,
        start: int = 0,
        length: Optional[int] = None,
        prices: Optional[PriceSeries] = None,
    ) -> Tuple[SeriesWindow, HurstEstimate]:
        """Una estimación sobre una ventana (por defecto, la serie completa)"""
        prices = self.load_prices(config, prices)
        series = derive_series(prices, config.series)
        length = length if length is not None else len(series) - start
        window = slice_window(series, start, length)
        estimator = make_estimator(config.method, config.scale_set, config.poly_order)
        estimate = estimator(window.to_array())
        logger.info(f"H = {estimate.h:.4f} ({estimate.method.value}) sobre {length} datos desde {window.start_date}")
        return window, estimate


def compare_methods(series, config: RunConfig, n_jobs: int = 1, quality=None) -> ComparisonReport:
    """Rueda DFA y R/S multiescala con la misma ventana y empareja por ancla"""
    common = dict(scales=config.scale_set, poly_order=config.poly_order, n_jobs=n_jobs)
    dfa = roll(series, config.window_spec, HurstMethod.DFA, **common)
    rs = roll(series, config.window_spec, HurstMethod.RS_MULTISCALE, **common)

    records = [
        ComparisonRecord(
            anchor_date=anchor,
            h_dfa=d.h if d is not None else None,
            h_rs=r.h if r is not None else None,
        )
        for anchor, d, r in zip(dfa.anchors, dfa.estimates, rs.estimates)
    ]

    dfa_h, rs_h = dfa.h_values, rs.h_values
    mean_gap = float(np.mean(rs_h) - np.mean(dfa_h)) if dfa_h and rs_h else None
    if mean_gap is not None:
        logger.info(f"Sesgo medio R/S - DFA: {mean_gap:+.4f}")

    return ComparisonReport(
        config=config,
        quality=quality,
        dfa_stats=summarize(dfa),
        rs_stats=summarize(rs),
        mean_gap=mean_gap,
        records=records,
    )


def run_pipeline(config: RunConfig, prices: Optional[PriceSeries] = None) -> PipelineReport:
    return PipelineService(n_jobs=config.n_jobs).run_pipeline(config, prices)
