"""
Generadores sintéticos con exponente de Hurst conocido.

gen_fgn usa el embebido circulante exacto de Davies-Harte; la factorización
de Cholesky se mantiene como referencia para series cortas.
"""

from datetime import date, timedelta
from typing import Optional
import logging

import numpy as np
from scipy import linalg

from hurstlab.exceptions import InsufficientDataError, NumericalError
from hurstlab.models.domain import FgnSpec, PriceSeries

logger = logging.getLogger(__name__)

DEFAULT_START_DATE = date(2011, 8, 18)
CHOLESKY_MAX_POINTS = 512
_EIGEN_TOLERANCE = 1e-10


def fgn_autocovariance(h: float, k, sigma: float = 1.0) -> np.ndarray:
    """γ(k) = (σ²/2)(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H})"""
    k = np.abs(np.asarray(k, dtype=float))
    two_h = 2.0 * h
    return 0.5 * sigma ** 2 * (
        np.abs(k + 1.0) ** two_h - 2.0 * k ** two_h + np.abs(k - 1.0) ** two_h
    )


def _fgn_from_rng(n: int, h: float, sigma: float, rng: np.random.Generator) -> np.ndarray:
    gamma = fgn_autocovariance(h, np.arange(n + 1))
    # primera fila de la matriz circulante de tamaño 2n
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eigenvalues = np.fft.fft(row).real
    if eigenvalues.min() < -_EIGEN_TOLERANCE * eigenvalues.max():
        raise NumericalError(
            f"embebido circulante no definido positivo (n={n}, H={h}, autovalor mínimo {eigenvalues.min():.3e})"
        )
    eigenvalues = np.clip(eigenvalues, 0.0, None)

    size = 2 * n
    w = np.zeros(size, dtype=complex)
    w[0] = rng.standard_normal()
    w[n] = rng.standard_normal()
    pairs = rng.standard_normal((n - 1, 2))
    w[1:n] = (pairs[:, 0] + 1j * pairs[:, 1]) / np.sqrt(2.0)
    w[n + 1:] = np.conj(w[1:n][::-1])

    sample = np.sqrt(size) * np.fft.ifft(np.sqrt(eigenvalues) * w).real[:n]
    return sigma * sample


def gen_fgn(spec: FgnSpec) -> np.ndarray:
    """Ruido gaussiano fraccional; determinista dado spec.seed"""
    rng = np.random.default_rng(spec.seed)
    return _fgn_from_rng(spec.n, spec.h, spec.sigma, rng)


def gen_fgn_cholesky(spec: FgnSpec) -> np.ndarray:
    """Referencia por Cholesky de la matriz de Toeplitz (solo n <= 512)"""
    if spec.n > CHOLESKY_MAX_POINTS:
        raise InsufficientDataError(
            f"Cholesky limitado a {CHOLESKY_MAX_POINTS} puntos, se pidieron {spec.n}"
        )
    rng = np.random.default_rng(spec.seed)
    covariance = linalg.toeplitz(fgn_autocovariance(spec.h, np.arange(spec.n), spec.sigma))
    lower = linalg.cholesky(covariance, lower=True)
    return lower @ rng.standard_normal(spec.n)


def _daily_dates(n: int, start: date) -> tuple:
    return tuple(start + timedelta(days=i) for i in range(n))


def _range_prices(close: np.ndarray, scale: float, rng: np.random.Generator):
    """Máximo y mínimo sintéticos que envuelven el cierre"""
    up = np.abs(rng.normal(0.0, scale, close.size))
    down = np.abs(rng.normal(0.0, scale, close.size))
    return close * np.exp(up), close * np.exp(-down)


def gen_random_walk_prices(
    n: int,
    drift: float = 0.0,
    vol: float = 0.02,
    seed: Optional[int] = None,
    start_price: float = 100.0,
    start_date: date = DEFAULT_START_DATE,
) -> PriceSeries:
    """Paseo aleatorio gaussiano exponenciado (drift y vol en unidades logarítmicas por paso)"""
    if n < 2:
        raise InsufficientDataError(f"se necesitan al menos 2 observaciones, n = {n}")
    if vol <= 0:
        raise NumericalError(f"la volatilidad debe ser positiva: {vol}")

    rng = np.random.default_rng(seed)
    steps = drift + vol * rng.standard_normal(n - 1)
    log_close = np.log(start_price) + np.concatenate([[0.0], np.cumsum(steps)])
    close = np.exp(log_close)
    high, low = _range_prices(close, vol, rng)

    logger.info(f"Paseo aleatorio generado: n={n}, drift={drift}, vol={vol}, seed={seed}")
    return PriceSeries(dates=_daily_dates(n, start_date), close=close, high=high, low=low)


def fgn_prices(
    spec: FgnSpec,
    range_vol: float = 0.01,
    start_price: float = 100.0,
    start_date: date = DEFAULT_START_DATE,
) -> PriceSeries:
    """Serie OHLC de n+1 filas cuyos rendimientos logarítmicos ×100 son un fGn"""
    rng = np.random.default_rng(spec.seed)
    increments = _fgn_from_rng(spec.n, spec.h, spec.sigma, rng)
    log_close = np.log(start_price) + np.concatenate([[0.0], np.cumsum(increments / 100.0)])
    close = np.exp(log_close)
    high, low = _range_prices(close, range_vol, rng)

    logger.info(f"fGn embebido en precios: n={spec.n}, H={spec.h}, seed={spec.seed}")
    return PriceSeries(
        dates=_daily_dates(spec.n + 1, start_date), close=close, high=high, low=low
    )
