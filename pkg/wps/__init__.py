"""Weighted projective toolkit: degrees, scrolls, Kronecker–Weierstrass matrices and curve parameterizations."""

__version__ = "0.1.0"
