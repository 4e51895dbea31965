from datetime import date
from typing import List, Optional, Sequence, Tuple, Union
import logging

import numpy as np
from joblib import Parallel, delayed

from hurstlab.analysis.descriptive import describe
from hurstlab.analysis.estimators import Estimator, estimator_min_length, make_estimator
from hurstlab.exceptions import HurstLabError, InsufficientDataError, PriceDomainError, ScaleError
from hurstlab.models.domain import (
    DatedSeries, DescriptiveStats, HurstEstimate, HurstMethod, RollingResult,
    WindowSpec, WindowWarning
)

logger = logging.getLogger(__name__)

SeriesInput = Union[DatedSeries, np.ndarray, Sequence[float]]


def _unpack(series: SeriesInput) -> Tuple[np.ndarray, list]:
    """Valores y anclas; sin fechas, el ancla es el índice"""
    if isinstance(series, DatedSeries):
        return series.to_array(), list(series.dates)
    values = np.asarray(series, dtype=float).ravel()
    if not np.all(np.isfinite(values)):
        raise PriceDomainError("la serie contiene valores no finitos")
    return values, list(range(values.size))


def _estimate_window(estimator: Estimator, window: np.ndarray):
    """Evalúa una ventana; los errores del estimador se devuelven, no se lanzan"""
    try:
        return estimator(window), None
    except HurstLabError as e:
        return None, e


def roll(
    series: SeriesInput,
    spec: Optional[WindowSpec] = None,
    estimator: Union[HurstMethod, str, Estimator] = HurstMethod.DFA,
    scales=None,
    poly_order: int = 1,
    n_jobs: int = 1,
    method: Optional[Union[HurstMethod, str]] = None,
) -> RollingResult:
    """Estima H sobre ventanas deslizantes ancladas en su primera observación.

    Una ventana cuyo estimador falla queda como hueco (estimate None) con su
    advertencia; nunca se omite en silencio. El orden de salida es el de las
    anclas con independencia de n_jobs.

    method etiqueta un estimador invocable; sin él se toma de la primera
    estimación exitosa.
    """
    spec = spec or WindowSpec()
    values, anchors = _unpack(series)
    n = values.size
    if n < spec.length:
        raise InsufficientDataError(
            f"la serie tiene {n} observaciones, la ventana requiere {spec.length}"
        )

    if callable(estimator):
        method = HurstMethod(method) if method is not None else None
        estimate_fn = estimator
    else:
        method = HurstMethod(estimator)
        minimum = estimator_min_length(method, scales)
        if spec.length < minimum:
            raise ScaleError(
                f"la ventana de {spec.length} es menor que el mínimo {minimum} del método {method.value}"
            )
        estimate_fn = make_estimator(method, scales, poly_order)

    starts = range(0, n - spec.length + 1, spec.step)
    label = method.value if method is not None else "personalizado"
    logger.info(
        f"Ventanas deslizantes: {len(starts)} ventanas de {spec.length} (paso {spec.step}), método {label}"
    )

    outcomes = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_estimate_window)(estimate_fn, values[s:s + spec.length]) for s in starts
    )

    estimates: List[Optional[HurstEstimate]] = []
    warnings: List[WindowWarning] = []
    for index, (start, (estimate, error)) in enumerate(zip(starts, outcomes)):
        estimates.append(estimate)
        if error is not None:
            warnings.append(WindowWarning(
                index=index, anchor=anchors[start], kind=error.kind, message=error.message
            ))

    if warnings:
        logger.warning(f"{len(warnings)} ventanas sin estimación (huecos)")

    if method is None:
        method = next((e.method for e in estimates if e is not None), None)
        if method is None:
            raise InsufficientDataError(
                "ninguna ventana produjo estimación y el estimador no indica su método"
            )

    return RollingResult(
        anchors=[anchors[s] for s in starts],
        estimates=estimates,
        method=method,
        spec=spec,
        warnings=warnings,
    )


def summarize(result: RollingResult) -> DescriptiveStats:
    """Estadística descriptiva de los exponentes de las ventanas exitosas"""
    values = result.h_values
    if len(values) < 4:
        raise InsufficientDataError(
            f"se necesitan al menos 4 estimaciones exitosas, hay {len(values)}"
        )
    return describe(values)


def split_summary(
    result: RollingResult, split: Union[date, int]
) -> Tuple[Optional[DescriptiveStats], Optional[DescriptiveStats]]:
    """Resumen de las estimaciones ancladas antes y a partir de `split`.

    Un subperiodo con menos de 4 estimaciones devuelve None.
    """
    before, after = [], []
    for anchor, estimate in zip(result.anchors, result.estimates):
        if estimate is None:
            continue
        (before if anchor < split else after).append(estimate.h)

    def _maybe(values: List[float]) -> Optional[DescriptiveStats]:
        try:
            return describe(values)
        except HurstLabError as e:
            logger.warning(f"Subperiodo sin resumen: {e.message}")
            return None

    return _maybe(before), _maybe(after)
