"""Inequality checks, the monotone-function catalog and the check registry."""
from .checks import *  # noqa: F401,F403
from .checks import __all__ as _checks_all
from .functions import DECREASING_DEFAULTS, INCREASING_DEFAULTS, MonotoneFunction, parse_function

__all__ = list(_checks_all) + [
    "MonotoneFunction",
    "parse_function",
    "INCREASING_DEFAULTS",
    "DECREASING_DEFAULTS",
]
