from .helpers import *

__all__ = ["setup_logging", "parse_scales", "parse_iso_date"]
