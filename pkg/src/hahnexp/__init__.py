"""Exact valuation-theoretic arithmetic: Hahn sums, generalized power series
fields, group exponentials, contraction groups and their checks."""

__version__ = "0.1.0"
