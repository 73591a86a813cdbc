"""Analytic order of Sha for rank-zero elliptic curves over Q, and a scanner for
the 2-isogeny family E_1..E_4(n, p)."""

__version__ = "0.1.0"
