"""Exact arithmetic kernels: polynomials over Q and finite fields, factorization,
real root isolation and linear algebra over Z, Q, F_p and Z/p^N."""
from . import poly, linalg, finite, sturm, factor
from .poly import resultant, discriminant
from .factor import factor_over_Q, factor_over_Q_full, rational_roots
from .finite import factor_mod_p, PrimeField, ExtensionField, standard_modulus
from .sturm import isolate_real_roots

__all__ = [
    "poly", "linalg", "finite", "sturm", "factor",
    "resultant", "discriminant", "factor_over_Q", "factor_over_Q_full",
    "rational_roots", "factor_mod_p", "PrimeField", "ExtensionField",
    "standard_modulus", "isolate_real_roots",
]
