"""Operator means, unitarily invariant norms and numerical checks of
Ando-Hiai / Golden-Thompson type matrix inequalities."""

__version__ = "0.1.0"
