import os
import sys
from datetime import date, timedelta

import numpy as np
import pytest

# Agregar el directorio raíz al path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hurstlab.analysis.synth import gen_random_walk_prices
from hurstlab.models.domain import PriceSeries
from hurstlab.processors.csv_io import emit_prices


def make_prices(close, high=None, low=None, start=date(2011, 8, 18)) -> PriceSeries:
    """PriceSeries diaria a partir de listas de precios"""
    close = list(close)
    high = list(high) if high is not None else [c * 1.01 for c in close]
    low = list(low) if low is not None else [c * 0.99 for c in close]
    dates = [start + timedelta(days=i) for i in range(len(close))]
    return PriceSeries(dates=dates, close=close, high=high, low=low)


@pytest.fixture
def rng():
    return np.random.default_rng(20170215)


@pytest.fixture
def walk_prices() -> PriceSeries:
    """1435 filas diarias: 1434 rendimientos"""
    return gen_random_walk_prices(1435, vol=0.04, seed=7)


@pytest.fixture
def walk_csv(tmp_path, walk_prices):
    path = tmp_path / "prices.csv"
    path.write_text(emit_prices(walk_prices), encoding="utf-8")
    return path
