import pytest
import sys
import os
import logging
import math

import numpy as np

# Agregar el directorio raíz al path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hurstlab.analysis.estimators import (
    dfa_fluctuation, dfa_hurst, dfa_profile, estimator_min_length, loglog_fit,
    make_estimator, rs_hurst, rs_hurst_single, rs_statistic
)
from hurstlab.analysis.synth import gen_fgn
from hurstlab.exceptions import (
    DegenerateFluctuationError, EmptyInputError, InsufficientDataError,
    NumericalError, PriceDomainError, ScaleError, ZeroVarianceError
)
from hurstlab.models.domain import FgnSpec, HurstMethod, ScaleSet


def naive_rs(values):
    """R/S con bucles explícitos y el prefijo vacío"""
    n = len(values)
    mean = sum(values) / n
    partial, running = [0.0], 0.0
    for v in values:
        running += v - mean
        partial.append(running)
    std = math.sqrt(sum((v - mean) ** 2 for v in values) / n)
    return (max(partial) - min(partial)) / std


def naive_fluctuation(profile, m):
    """F(m) de orden 1 resolviendo las ecuaciones normales bloque a bloque"""
    k = len(profile) // m
    t = [i - (m - 1) / 2.0 for i in range(m)]
    stt = sum(ti * ti for ti in t)
    total = 0.0
    for b in range(k):
        block = profile[b * m:(b + 1) * m]
        intercept = sum(block) / m
        slope = sum(ti * yi for ti, yi in zip(t, block)) / stt
        total += sum((yi - intercept - slope * ti) ** 2 for ti, yi in zip(t, block))
    return math.sqrt(total / (k * m))


class TestRsStatistic:
    """Tests para el estadístico R/S"""

    def test_hand_computed(self):
        assert rs_statistic([1.0, 2.0, 3.0]) == pytest.approx(math.sqrt(1.5), rel=1e-12)

    def test_constant_window(self):
        with pytest.raises(ZeroVarianceError):
            rs_statistic([3.0] * 10)

    def test_affine_invariance(self, rng):
        w = rng.standard_normal(200)
        assert rs_statistic(4.2 * w - 17.0) == pytest.approx(rs_statistic(w), rel=1e-10)

    def test_non_finite_rejected(self):
        with pytest.raises(PriceDomainError):
            rs_statistic([1.0, float("nan"), 2.0])

    def test_matches_naive_oracle(self, rng):
        for _ in range(200):
            x = rng.standard_normal(int(rng.integers(2, 65)))
            result = rs_statistic(x)
            assert result >= 0
            assert result == pytest.approx(naive_rs(x.tolist()), rel=1e-12)


class TestRsHurstSingle:
    """Tests para R/S de una escala"""

    def test_fixed_point_h_one(self):
        """[0, 0, 1, 1]: R/S = 2 = τ/2, luego H = 1"""
        estimate = rs_hurst_single([0.0, 0.0, 1.0, 1.0])
        assert estimate.h == pytest.approx(1.0, rel=1e-12)
        assert estimate.method == HurstMethod.RS_SINGLE
        assert estimate.scales == (4,)

    def test_square_root_case(self):
        """[1, 2, 3]: R/S = √1.5 = √(τ/2), luego H = 0.5"""
        assert rs_hurst_single([1.0, 2.0, 3.0]).h == pytest.approx(0.5, rel=1e-12)

    def test_scale_and_shift_invariance(self, rng):
        w = rng.standard_normal(500)
        base = rs_hurst_single(w).h
        for a, b in [(100.0, 0.0), (0.01, 7.0), (3.3, -250.0)]:
            assert rs_hurst_single(a * w + b).h == pytest.approx(base, rel=1e-10)

    def test_two_points_rejected(self):
        with pytest.raises(ScaleError):
            rs_hurst_single([1.0, 2.0])

    @pytest.mark.slow
    def test_white_noise_upward_bias(self):
        h = [rs_hurst_single(np.random.default_rng(s).standard_normal(500)).h for s in range(200)]
        assert 0.55 <= np.mean(h) <= 0.65


class TestRsHurst:
    """Tests para R/S multiescala"""

    def test_scale_invariance(self, rng):
        w = rng.standard_normal(500)
        assert rs_hurst(100.0 * w).h == pytest.approx(rs_hurst(w).h, rel=1e-10)
        assert rs_hurst(3.0 * w + 5.0).h == pytest.approx(rs_hurst(w).h, rel=1e-10)

    def test_constant_blocks_are_skipped(self, rng):
        """Bloques constantes se omiten y se cuentan"""
        w = rng.standard_normal(64)
        w[:4] = 1.0
        estimate = rs_hurst(w, scales=(4, 8, 16))
        assert estimate.skipped_blocks == 1
        assert math.isfinite(estimate.h)

    def test_skipped_blocks_are_logged(self, rng, caplog):
        w = rng.standard_normal(64)
        w[:4] = 1.0
        with caplog.at_level(logging.WARNING, logger="hurstlab.analysis.estimators"):
            rs_hurst(w, scales=(4, 8, 16))
        assert any("1 bloques constantes" in r.getMessage() for r in caplog.records)

    def test_every_block_constant_at_one_scale(self):
        """Con n = 4 todos los bloques son constantes; con n = 8 no"""
        x = np.repeat([0.0, 1.0, 0.0, 1.0], 4)
        with pytest.raises(ZeroVarianceError) as exc:
            rs_hurst(x, scales=(4, 8))
        assert "4" in exc.value.message

    def test_window_too_short_for_scales(self, rng):
        with pytest.raises(ScaleError):
            rs_hurst(rng.standard_normal(200))

    def test_constant_window(self):
        with pytest.raises(ZeroVarianceError):
            rs_hurst([1.0] * 300)

    @pytest.mark.slow
    def test_fgn_recovery(self):
        h = [rs_hurst(gen_fgn(FgnSpec(n=2000, h=0.7, seed=s))).h for s in range(50)]
        assert np.mean(h) == pytest.approx(0.7, abs=0.08)

    @pytest.mark.slow
    def test_exceeds_dfa_on_white_noise(self):
        """200 ventanas independientes de 500: R/S sesgado al alza, DFA centrado"""
        rs, dfa = [], []
        for seed in range(200):
            w = np.random.default_rng(seed).standard_normal(500)
            rs.append(rs_hurst(w).h)
            dfa.append(dfa_hurst(w).h)
        assert np.mean(rs) - np.mean(dfa) >= 0.05
        assert np.mean(dfa) == pytest.approx(0.5, abs=0.05)


class TestDfa:
    """Tests para el perfil y la función de fluctuación"""

    def test_profile_examples(self):
        np.testing.assert_allclose(dfa_profile([1.0, 1.0, 1.0]), [0.0, 0.0, 0.0])
        np.testing.assert_allclose(dfa_profile([1.0, 2.0, 3.0]), [-1.0, -1.0, 0.0])

    def test_profile_ends_at_zero(self, rng):
        y = rng.standard_normal(1000) * 50.0 + 3.0
        assert abs(dfa_profile(y)[-1]) <= 1e-10 * y.size * np.max(np.abs(y))

    def test_profile_empty(self):
        with pytest.raises(EmptyInputError):
            dfa_profile([])

    def test_three_point_fluctuation(self):
        """Residuos (1/6, −1/3, 1/6)"""
        assert dfa_fluctuation([-1.0, -1.0, 0.0], 3, 1) == pytest.approx(math.sqrt(1.0 / 18.0), rel=1e-12)

    @pytest.mark.parametrize("poly_order", [1, 2, 3])
    def test_polynomial_profile_has_zero_fluctuation(self, poly_order):
        i = np.arange(256, dtype=float)
        profile = 0.5 + 0.01 * i ** poly_order - 0.3 * i
        for m in (8, 16, 32, 64):
            assert dfa_fluctuation(profile, m, poly_order) == 0.0

    def test_block_size_bounds(self):
        with pytest.raises(ScaleError):
            dfa_fluctuation(np.arange(10.0), 2, 1)
        with pytest.raises(ScaleError):
            dfa_fluctuation(np.arange(10.0), 11, 1)

    def test_singular_fit_message(self, monkeypatch):
        """Rango deficiente: el error describe la matriz, no un bloque concreto"""
        def rank_deficient(a, b, rcond=None):
            return np.zeros((a.shape[1],) + b.shape[1:]), np.empty(0), 0, np.zeros(a.shape[1])

        monkeypatch.setattr(np.linalg, "lstsq", rank_deficient)
        with pytest.raises(NumericalError) as exc:
            dfa_fluctuation(dfa_profile(np.arange(32.0) % 5), 8, 1)
        assert "m=8" in exc.value.message
        assert "bloque" not in exc.value.message

    def test_matches_naive_oracle(self, rng):
        for _ in range(200):
            y = rng.standard_normal(int(rng.integers(6, 65)))
            profile = dfa_profile(y)
            m = int(rng.integers(3, profile.size // 2 + 1))
            expected = naive_fluctuation(profile.tolist(), m)
            assert dfa_fluctuation(profile, m, 1) == pytest.approx(expected, rel=1e-12)

class TestDfaHurst:
    """Tests para el estimador DFA"""

    def test_scale_and_shift_invariance(self, rng):
        w = rng.standard_normal(500)
        base = dfa_hurst(w).h
        for a, b in [(100.0, 0.0), (0.01, 7.0), (3.3, -250.0)]:
            assert dfa_hurst(a * w + b).h == pytest.approx(base, rel=1e-10)

    def test_estimate_metadata(self, rng):
        estimate = dfa_hurst(rng.standard_normal(500))
        assert estimate.method == HurstMethod.DFA
        assert estimate.scales == (4, 8, 16, 32, 64, 128)
        assert len(estimate.fit_points) == 6
        assert estimate.poly_order == 1
        assert estimate.window_length == 500
        assert 0.0 <= estimate.r_squared <= 1.0

    def test_linear_trend_window_is_degenerate(self):
        """Serie lineal: perfil cuadrático, F = 0 con DFA-2"""
        with pytest.raises(DegenerateFluctuationError):
            dfa_hurst(np.arange(300, dtype=float), poly_order=2)

    def test_constant_window(self):
        with pytest.raises(ZeroVarianceError):
            dfa_hurst([2.0] * 300)

    def test_poly_order_range(self, rng):
        with pytest.raises(ScaleError):
            dfa_hurst(rng.standard_normal(300), poly_order=4)

    @pytest.mark.slow
    def test_white_noise(self):
        h = [dfa_hurst(np.random.default_rng(s).standard_normal(500)).h for s in range(200)]
        assert np.mean(h) == pytest.approx(0.5, abs=0.05)

    @pytest.mark.slow
    def test_calibration_over_h(self):
        """Media dentro de ±0.05 y estrictamente creciente en H"""
        means = []
        for h in (0.3, 0.5, 0.7, 0.9):
            estimates = [dfa_hurst(gen_fgn(FgnSpec(n=2000, h=h, seed=s))).h for s in range(50)]
            means.append(np.mean(estimates))
            assert means[-1] == pytest.approx(h, abs=0.05)
        assert all(b > a for a, b in zip(means, means[1:]))

    @pytest.mark.slow
    def test_shuffle_destroys_memory(self):
        rng = np.random.default_rng(11)
        h = [dfa_hurst(rng.permutation(gen_fgn(FgnSpec(n=2000, h=0.8, seed=s)))).h for s in range(50)]
        assert np.mean(h) == pytest.approx(0.5, abs=0.05)

    @pytest.mark.slow
    def test_integrated_fgn_adds_one(self):
        """La suma acumulada de un fGn (fBm) da H + 1"""
        gaps = []
        for s in range(20):
            x = gen_fgn(FgnSpec(n=2000, h=0.7, seed=s))
            gaps.append(dfa_hurst(np.cumsum(x)).h - dfa_hurst(x).h)
        assert np.mean(gaps) == pytest.approx(1.0, abs=0.1)


class TestLoglogFit:
    """Tests para la regresión log-log"""

    def test_exact_power_law(self):
        points = [(m, 2.5 * m ** 0.7) for m in (4, 8, 16, 32, 64, 128)]
        fit = loglog_fit(points)
        assert fit.slope == pytest.approx(0.7, rel=1e-12)
        assert fit.intercept == pytest.approx(math.log(2.5), rel=1e-10)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_two_points(self):
        assert loglog_fit([(4, 2), (16, 4)]).slope == pytest.approx(0.5, rel=1e-12)

    def test_one_point(self):
        with pytest.raises(InsufficientDataError):
            loglog_fit([(4, 2)])

    def test_non_positive(self):
        with pytest.raises(PriceDomainError):
            loglog_fit([(4, 0.0), (8, 1.0)])

    def test_duplicate_scales(self):
        with pytest.raises(ScaleError):
            loglog_fit([(4, 1.0), (4, 2.0)])


class TestScaleSelection:
    """Tests para ScaleSet y la selección del estimador"""

    def test_scale_set_validation(self):
        with pytest.raises(ScaleError):
            ScaleSet(blocks=(8,))
        with pytest.raises(ScaleError):
            ScaleSet(blocks=(2, 8))
        with pytest.raises(ScaleError):
            ScaleSet(blocks=(16, 8))

    def test_check_window(self):
        scales = ScaleSet(blocks=(4, 8, 16, 32, 64, 128))
        scales.check_window(256)
        with pytest.raises(ScaleError):
            scales.check_window(255)

    def test_make_estimator(self, rng):
        w = rng.standard_normal(500)
        assert make_estimator("dfa")(w).h == dfa_hurst(w).h
        assert make_estimator(HurstMethod.RS_MULTISCALE, (4, 8, 16))(w).h == rs_hurst(w, (4, 8, 16)).h
        assert make_estimator("rs-single")(w).h == rs_hurst_single(w).h

    def test_min_length(self):
        assert estimator_min_length("dfa") == 256
        assert estimator_min_length("rs", (4, 8, 16)) == 32
        assert estimator_min_length("rs-single") == 3


if __name__ == "__main__":
    pytest.main([__file__])
