"""Nonstandard linear-recurring-sequence subgroups of finite fields."""

__version__ = "0.1.0"
