"""Exact computations with spaces of polynomial 1-forms and their integrable members."""

__version__ = "0.1.0"
