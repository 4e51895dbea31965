"""
Estadística descriptiva de series de rendimientos y de exponentes estimados.

Momentos de tercer y cuarto orden con normalización poblacional (1/n);
curtosis no excedente (normal = 3).
"""

from typing import Sequence, Tuple
import logging

import numpy as np
from scipy import stats

from hurstlab.exceptions import DegenerateSeriesError, InsufficientDataError, PriceDomainError
from hurstlab.models.domain import DescriptiveStats

logger = logging.getLogger(__name__)

MIN_OBSERVATIONS = 4

# Crítico chi-cuadrado(2) al 1% (≈ 9.2103)
JB_CRITICAL_1PCT = float(stats.chi2.ppf(0.99, df=2))


def jarque_bera(skewness: float, kurtosis: float, n: int) -> Tuple[float, bool]:
    """JB = (n/6)·(S² + (K−3)²/4), y si supera el crítico chi2(2) al 1%"""
    if n < MIN_OBSERVATIONS:
        raise InsufficientDataError(f"Jarque-Bera requiere n >= {MIN_OBSERVATIONS}, n = {n}")
    statistic = (n / 6.0) * (skewness ** 2 + (kurtosis - 3.0) ** 2 / 4.0)
    return float(statistic), bool(statistic > JB_CRITICAL_1PCT)


def describe(values: Sequence[float], ddof: int = 1) -> DescriptiveStats:
    """Resumen de la serie.

    ddof controla solo la desviación estándar (1 = muestral, por defecto).
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    if n < MIN_OBSERVATIONS:
        raise InsufficientDataError(
            f"se necesitan al menos {MIN_OBSERVATIONS} observaciones, hay {n}"
        )
    if not np.all(np.isfinite(x)):
        raise PriceDomainError(f"la serie contiene {int(np.count_nonzero(~np.isfinite(x)))} valores no finitos")
    if np.ptp(x) == 0:
        raise DegenerateSeriesError(f"serie constante (valor {x[0]})")

    skewness = float(stats.skew(x, bias=True))
    kurtosis = float(stats.kurtosis(x, fisher=False, bias=True))
    jb, significant = jarque_bera(skewness, kurtosis, n)

    return DescriptiveStats(
        n=n,
        min=float(x.min()),
        max=float(x.max()),
        mean=float(x.mean()),
        median=float(np.median(x)),
        std_dev=float(x.std(ddof=ddof)),
        skewness=skewness,
        kurtosis=kurtosis,
        jarque_bera=jb,
        jb_significant_1pct=significant,
    )
