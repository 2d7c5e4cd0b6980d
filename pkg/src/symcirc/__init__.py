"""Constant-depth arithmetic circuits for GCD, resultants, symmetric decomposition
and power-series roots over finite fields, with classical oracles to check them."""

__version__ = "0.1.0"
