from .series_core import log_returns, hl_volatility, slice_window
from .csv_io import load_csv, emit_prices
from .emitter import emit, parse_records

__all__ = ["log_returns", "hl_volatility", "slice_window", "load_csv", "emit_prices", "emit", "parse_records"]
