from .descriptive import describe, jarque_bera
from .estimators import (
    rs_statistic, rs_hurst_single, rs_hurst, dfa_profile, dfa_fluctuation,
    dfa_hurst, loglog_fit, make_estimator
)
from .synth import gen_fgn, gen_random_walk_prices, fgn_prices

__all__ = [
    "describe", "jarque_bera",
    "rs_statistic", "rs_hurst_single", "rs_hurst", "dfa_profile", "dfa_fluctuation",
    "dfa_hurst", "loglog_fit", "make_estimator",
    "gen_fgn", "gen_random_walk_prices", "fgn_prices",
]
