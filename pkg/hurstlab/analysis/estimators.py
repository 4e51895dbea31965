"""
Estimadores del exponente de Hurst: rango reescalado (R/S) y análisis de
fluctuaciones sin tendencia (DFA), más la regresión log-log común a ambos.

Todas las funciones son puras y reentrantes; el motor de ventanas deslizantes
puede llamarlas desde varios hilos sin coordinación.
"""

from functools import partial
from typing import Callable, List, NamedTuple, Sequence, Tuple, Union
import logging

import numpy as np
from scipy import stats

from hurstlab.config import DEFAULT_POLY_ORDER, DEFAULT_SCALES
from hurstlab.exceptions import (
    DegenerateFluctuationError, EmptyInputError, InsufficientDataError,
    NumericalError, PriceDomainError, ScaleError, ZeroVarianceError
)
from hurstlab.models.domain import HurstEstimate, HurstMethod, ScaleSet

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Sequence[float]]
Estimator = Callable[[np.ndarray], HurstEstimate]

MAX_POLY_ORDER = 3
# F(m) por debajo de esta fracción de max|perfil| se considera exactamente cero
_ZERO_FLUCTUATION_RTOL = 1e-11


class LogLogFit(NamedTuple):
    slope: float
    intercept: float
    r_squared: float
    std_err: float


def _as_window(window: ArrayLike) -> np.ndarray:
    x = np.asarray(window, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise PriceDomainError("la ventana contiene valores no finitos")
    return x


def _as_scale_set(scales: Union[ScaleSet, Sequence[int], None]) -> ScaleSet:
    if scales is None:
        return ScaleSet(blocks=DEFAULT_SCALES)
    if isinstance(scales, ScaleSet):
        return scales
    return ScaleSet(blocks=tuple(int(m) for m in scales))


def _rescaled_ranges(blocks: np.ndarray) -> np.ndarray:
    """R/S por fila de una matriz (k, n). Filas constantes -> NaN."""
    deviations = blocks - blocks.mean(axis=1, keepdims=True)
    cumdev = np.cumsum(deviations, axis=1)
    # el prefijo vacío (suma 0) entra en ambos extremos
    ranges = np.maximum(cumdev.max(axis=1), 0.0) - np.minimum(cumdev.min(axis=1), 0.0)
    std = blocks.std(axis=1)
    constant = np.ptp(blocks, axis=1) == 0
    rs = np.full(blocks.shape[0], np.nan)
    rs[~constant] = ranges[~constant] / std[~constant]
    return rs


def rs_statistic(window: ArrayLike) -> float:
    """Estadístico R/S de una ventana, con s_τ poblacional (1/τ)"""
    x = _as_window(window)
    if x.size < 2:
        raise InsufficientDataError(f"R/S requiere al menos 2 observaciones, hay {x.size}")
    if np.ptp(x) == 0:
        raise ZeroVarianceError("ventana constante: desviación estándar nula")
    return float(_rescaled_ranges(x[np.newaxis, :])[0])


def rs_hurst_single(window: ArrayLike) -> HurstEstimate:
    """H = ln(R/S) / ln(τ/2), resolución directa de (R/S)_τ = (τ/2)^H"""
    x = _as_window(window)
    tau = x.size
    rs = rs_statistic(x)
    if tau <= 2:
        raise ScaleError(f"ln(τ/2) <= 0 para τ = {tau}")
    log_scale = float(np.log(tau / 2.0))
    log_rs = float(np.log(rs))
    return HurstEstimate(
        h=log_rs / log_scale,
        method=HurstMethod.RS_SINGLE,
        scales=(tau,),
        fit_points=((log_scale, log_rs),),
        r_squared=1.0,
        std_err=0.0,
        window_length=tau,
    )


def rs_hurst(window: ArrayLike, scales: Union[ScaleSet, Sequence[int], None] = None) -> HurstEstimate:
    """R/S multiescala: pendiente de ln(R/S medio) sobre ln(n).

    Los bloques constantes se omiten y se cuentan en skipped_blocks.
    """
    x = _as_window(window)
    scale_set = _as_scale_set(scales)
    scale_set.check_window(x.size)
    if np.ptp(x) == 0:
        raise ZeroVarianceError("ventana constante: desviación estándar nula")

    points: List[Tuple[float, float]] = []
    skipped = 0
    for n in scale_set.blocks:
        k = x.size // n
        rs = _rescaled_ranges(x[:k * n].reshape(k, n))
        valid = rs[np.isfinite(rs)]
        skipped += rs.size - valid.size
        if valid.size == 0:
            raise ZeroVarianceError(f"todos los bloques de tamaño {n} son constantes")
        points.append((n, float(valid.mean())))

    if skipped:
        logger.warning(f"R/S: {skipped} bloques constantes omitidos")

    fit = loglog_fit(points)
    return HurstEstimate(
        h=fit.slope,
        method=HurstMethod.RS_MULTISCALE,
        scales=scale_set.blocks,
        fit_points=tuple((float(np.log(m)), float(np.log(f))) for m, f in points),
        r_squared=fit.r_squared,
        std_err=fit.std_err,
        intercept=fit.intercept,
        skipped_blocks=skipped,
        window_length=x.size,
    )


def dfa_profile(series: ArrayLike) -> np.ndarray:
    """Serie integrada x(i) = Σ_{t<=i} (y(t) − ȳ)"""
    y = np.asarray(series, dtype=float).ravel()
    if y.size == 0:
        raise EmptyInputError("DFA: serie vacía")
    return np.cumsum(y - y.mean())


def dfa_fluctuation(profile: ArrayLike, m: int, poly_order: int = DEFAULT_POLY_ORDER) -> float:
    """Función de fluctuación F(m).

    Divide el perfil en ⌊M/m⌋ bloques desde el inicio (se descarta la cola),
    ajusta un polinomio de grado poly_order en cada bloque y devuelve la raíz
    del residuo cuadrático medio sobre los puntos cubiertos.
    """
    x = np.asarray(profile, dtype=float).ravel()
    total = x.size
    if poly_order < 0:
        raise ScaleError(f"orden polinómico negativo: {poly_order}")
    if m < poly_order + 2 or m > total:
        raise ScaleError(
            f"tamaño de bloque {m} fuera de rango [{poly_order + 2}, {total}]"
        )

    k = total // m
    covered = k * m
    blocks = x[:covered].reshape(k, m).T  # una columna por bloque

    t = np.arange(m, dtype=float)
    t -= t.mean()
    design = np.vander(t, poly_order + 1, increasing=True)
    coef, _, rank, _ = np.linalg.lstsq(design, blocks, rcond=None)
    if rank < poly_order + 1:
        raise NumericalError(
            f"matriz de diseño singular en el ajuste DFA (m={m}, orden={poly_order}, rango={rank})"
        )

    residuals = blocks - design @ coef
    fluctuation = float(np.sqrt(np.sum(residuals ** 2) / covered))

    scale = float(np.max(np.abs(x)))
    if fluctuation <= _ZERO_FLUCTUATION_RTOL * scale:
        return 0.0
    return fluctuation


def dfa_hurst(
    window: ArrayLike,
    scales: Union[ScaleSet, Sequence[int], None] = None,
    poly_order: int = DEFAULT_POLY_ORDER,
) -> HurstEstimate:
    """H como pendiente de ln F(m) sobre ln m"""
    if not 1 <= poly_order <= MAX_POLY_ORDER:
        raise ScaleError(f"orden de detrending {poly_order} fuera de [1, {MAX_POLY_ORDER}]")
    x = _as_window(window)
    scale_set = _as_scale_set(scales)
    scale_set.check_window(x.size)
    if np.ptp(x) == 0:
        raise ZeroVarianceError("ventana constante: desviación estándar nula")

    profile = dfa_profile(x)
    points = []
    for m in scale_set.blocks:
        fluctuation = dfa_fluctuation(profile, m, poly_order)
        if fluctuation == 0.0:
            raise DegenerateFluctuationError(f"F({m}) = 0, logaritmo indefinido")
        points.append((m, fluctuation))

    fit = loglog_fit(points)
    return HurstEstimate(
        h=fit.slope,
        method=HurstMethod.DFA,
        scales=scale_set.blocks,
        fit_points=tuple((float(np.log(m)), float(np.log(f))) for m, f in points),
        r_squared=fit.r_squared,
        std_err=fit.std_err,
        intercept=fit.intercept,
        poly_order=poly_order,
        window_length=x.size,
    )


def loglog_fit(points: Sequence[Tuple[float, float]]) -> LogLogFit:
    """Mínimos cuadrados ordinarios de ln(fluctuación) sobre ln(escala)"""
    if len(points) < 2:
        raise InsufficientDataError(f"la regresión requiere al menos 2 puntos, hay {len(points)}")
    pairs = np.asarray(points, dtype=float)
    scales, fluctuations = pairs[:, 0], pairs[:, 1]
    if np.any(scales <= 0) or np.any(fluctuations <= 0):
        raise PriceDomainError("escalas y fluctuaciones deben ser estrictamente positivas")
    if np.unique(scales).size != scales.size:
        raise ScaleError("las escalas de la regresión deben ser distintas")

    result = stats.linregress(np.log(scales), np.log(fluctuations))
    r_squared = float(np.clip(result.rvalue ** 2, 0.0, 1.0))
    return LogLogFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=r_squared,
        std_err=float(result.stderr),
    )


def make_estimator(
    method: Union[HurstMethod, str],
    scales: Union[ScaleSet, Sequence[int], None] = None,
    poly_order: int = DEFAULT_POLY_ORDER,
) -> Estimator:
    """Devuelve el estimador seleccionado como función de una ventana"""
    method = HurstMethod(method)
    if method == HurstMethod.DFA:
        return partial(dfa_hurst, scales=_as_scale_set(scales), poly_order=poly_order)
    if method == HurstMethod.RS_MULTISCALE:
        return partial(rs_hurst, scales=_as_scale_set(scales))
    return rs_hurst_single


def estimator_min_length(
    method: Union[HurstMethod, str],
    scales: Union[ScaleSet, Sequence[int], None] = None,
) -> int:
    """Longitud mínima de ventana admitida por el estimador"""
    if HurstMethod(method) == HurstMethod.RS_SINGLE:
        return 3
    return 2 * _as_scale_set(scales).max_block
