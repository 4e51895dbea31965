import pytest
import sys
import os
from datetime import date

import numpy as np

# Agregar el directorio raíz al path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hurstlab.analysis.estimators import dfa_hurst, rs_hurst_single
from hurstlab.analysis.synth import gen_fgn
from hurstlab.exceptions import DegenerateSeriesError, InsufficientDataError, ScaleError
from hurstlab.models.domain import FgnSpec, HurstEstimate, HurstMethod, RollingResult, WindowSpec
from hurstlab.processors.series_core import log_returns
from hurstlab.services.rolling import roll, split_summary, summarize


def _constant_estimate(h: float) -> HurstEstimate:
    return HurstEstimate(
        h=h, method=HurstMethod.DFA, scales=(4, 8), fit_points=((1.0, 1.0), (2.0, 2.0)),
        r_squared=1.0, std_err=0.0, window_length=16,
    )


class TestRoll:
    """Tests para el motor de ventanas deslizantes"""

    def test_reference_window_count(self, walk_prices):
        """1434 rendimientos, ventana 500, paso 1: 935 estimaciones"""
        series = log_returns(walk_prices)
        result = roll(series, WindowSpec(length=500, step=1), HurstMethod.DFA)
        assert len(result) == 935
        assert result.gap_count == 0
        assert result.anchors[0] == series.dates[0]
        assert result.anchors[-1] == series.dates[934]

    def test_single_window(self, rng):
        x = rng.standard_normal(300)
        result = roll(x, WindowSpec(length=300), HurstMethod.DFA)
        assert len(result) == 1
        assert result.anchors == [0]
        assert result.estimates[0].h == dfa_hurst(x).h

    def test_window_count_formula(self, rng):
        for _ in range(20):
            length = int(rng.integers(3, 40))
            n = length + int(rng.integers(0, 60))
            step = int(rng.integers(1, 10))
            spec = WindowSpec(length=length, step=step)
            result = roll(rng.standard_normal(n), spec, HurstMethod.RS_SINGLE)
            assert len(result) == (n - length) // step + 1 == spec.window_count(n)

    def test_step_subsamples_unit_step(self, rng):
        x = rng.standard_normal(400)
        unit = roll(x, WindowSpec(length=260, step=1), HurstMethod.DFA)
        stepped = roll(x, WindowSpec(length=260, step=7), HurstMethod.DFA)
        assert stepped.anchors == unit.anchors[::7]
        assert stepped.h_values == unit.h_values[::7]

    def test_deterministic_across_workers(self, rng):
        x = rng.standard_normal(400)
        serial = roll(x, WindowSpec(length=300), HurstMethod.RS_MULTISCALE, n_jobs=1)
        threaded = roll(x, WindowSpec(length=300), HurstMethod.RS_MULTISCALE, n_jobs=4)
        assert serial.anchors == threaded.anchors
        assert serial.h_values == threaded.h_values

    def test_failed_window_is_a_gap(self, rng):
        """Una ventana constante queda como hueco con su advertencia"""
        x = rng.standard_normal(40)
        x[10:20] = 1.0
        result = roll(x, WindowSpec(length=10), rs_hurst_single)
        assert len(result) == 31
        assert result.estimates[10] is None
        assert result.gap_count == 1
        assert result.warnings[0].index == 10
        assert result.warnings[0].kind == "zero_variance"
        assert result.method == HurstMethod.RS_SINGLE

    def test_custom_estimator_label(self, rng):
        x = rng.standard_normal(60)
        result = roll(x, WindowSpec(length=20, step=10), lambda w: rs_hurst_single(w), method="rs-single")
        assert result.method == HurstMethod.RS_SINGLE
        assert len(result.h_values) == 5

    def test_custom_estimator_without_estimates(self):
        """Todas las ventanas fallan: sin method no hay etiqueta que dar"""
        x = np.ones(40)
        with pytest.raises(InsufficientDataError):
            roll(x, WindowSpec(length=10, step=10), rs_hurst_single)
        result = roll(x, WindowSpec(length=10, step=10), rs_hurst_single, method=HurstMethod.RS_SINGLE)
        assert result.method == HurstMethod.RS_SINGLE
        assert result.gap_count == 4

    def test_series_shorter_than_window(self, rng):
        with pytest.raises(InsufficientDataError):
            roll(rng.standard_normal(100), WindowSpec(length=500))

    def test_window_below_scale_minimum(self, rng):
        with pytest.raises(ScaleError):
            roll(rng.standard_normal(300), WindowSpec(length=200), HurstMethod.DFA)

    @pytest.mark.slow
    def test_regime_switch(self):
        """fGn H = 0.8 seguido de ruido blanco: H cae entre el principio y el final"""
        drops = []
        for seed in range(20):
            persistent = gen_fgn(FgnSpec(n=1000, h=0.8, seed=seed))
            noise = np.random.default_rng(1000 + seed).standard_normal(1000)
            result = roll(np.concatenate([persistent, noise]), WindowSpec(length=500), HurstMethod.DFA)
            h = np.asarray(result.h_values)
            drops.append(h[:100].mean() - h[-100:].mean())
        assert np.mean(drops) >= 0.15


class TestSummaries:
    """Tests para los resúmenes de la serie de Hurst"""

    def test_summarize(self, rng):
        result = roll(rng.standard_normal(400), WindowSpec(length=300, step=10), HurstMethod.DFA)
        summary = summarize(result)
        assert summary.n == len(result) == 11
        assert summary.min <= summary.mean <= summary.max

    @pytest.mark.slow
    def test_white_noise_summary(self):
        """1434 datos, ventana 500: 935 estimaciones DFA por semilla"""
        means = []
        for seed in range(10):
            x = np.random.default_rng(seed).standard_normal(1434)
            summary = summarize(roll(x, WindowSpec(), HurstMethod.DFA))
            assert summary.n == 935
            means.append(summary.mean)
        assert np.mean(means) == pytest.approx(0.5, abs=0.05)

    def test_identical_estimates_are_degenerate(self):
        result = RollingResult(
            anchors=[0, 1, 2, 3, 4],
            estimates=[_constant_estimate(0.6)] * 5,
            method=HurstMethod.DFA,
            spec=WindowSpec(length=16),
        )
        with pytest.raises(DegenerateSeriesError):
            summarize(result)

    def test_too_few_estimates(self):
        result = RollingResult(
            anchors=[0, 1, 2],
            estimates=[_constant_estimate(0.5), None, _constant_estimate(0.6)],
            method=HurstMethod.DFA,
            spec=WindowSpec(length=16),
        )
        with pytest.raises(InsufficientDataError):
            summarize(result)

    def test_split_summary(self):
        anchors = [date(2013, 12, d) for d in range(25, 32)] + [date(2014, 1, d) for d in range(1, 6)]
        estimates = [_constant_estimate(0.7 + 0.01 * i) for i in range(7)]
        estimates += [_constant_estimate(0.5 + 0.01 * i) for i in range(5)]
        result = RollingResult(
            anchors=anchors, estimates=estimates, method=HurstMethod.DFA, spec=WindowSpec(length=16)
        )
        before, after = split_summary(result, date(2014, 1, 1))
        assert before.n == 7 and after.n == 5
        assert before.mean > after.mean

    def test_split_summary_short_side(self):
        result = RollingResult(
            anchors=list(range(6)),
            estimates=[_constant_estimate(0.5 + 0.01 * i) for i in range(6)],
            method=HurstMethod.DFA,
            spec=WindowSpec(length=16),
        )
        before, after = split_summary(result, 5)
        assert before.n == 5
        assert after is None


if __name__ == "__main__":
    pytest.main([__file__])
