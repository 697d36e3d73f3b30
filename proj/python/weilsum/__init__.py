"""Kloosterman sums for the Weil representation of even lattices."""

from fractions import Fraction

from . import _weilsum
from ._weilsum import (
    BudgetExceeded,
    DomainError,
    InternalError,
    Lattice,
    chi_m,
    gauss_sum,
    kloosterman_ordinary,
    run_cli,
    verify_eta_identity,
    verify_theta_identity,
    weil_bound_rhs,
)

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "InternalError",
    "Lattice",
    "chi_m",
    "fast_kloosterman",
    "gauss_sum",
    "kloosterman_ordinary",
    "kloosterman_sum",
    "rho",
    "run_cli",
    "verify_eta_identity",
    "verify_identity",
    "verify_theta_identity",
    "weil_bound_rhs",
    "xi",
]


def _gram(lattice):
    return lattice.gram if isinstance(lattice, Lattice) else [list(row) for row in lattice]


def _coords(x):
    if x is None:
        return []
    return [str(Fraction(t)) for t in x]


def kloosterman_sum(lattice, alpha, beta, m, n, c, k=None, prec_bits=192):
    """S_{alpha,beta}(m, n, c); alpha and beta are coordinates in the Gram basis, None for zero."""
    w = "" if k is None else str(Fraction(k))
    return _weilsum.kloosterman_sum(_gram(lattice), _coords(alpha), _coords(beta), m, n, c, w, prec_bits)


def fast_kloosterman(lattice, alpha, beta, m, n, c, v, k=None, prec_bits=192):
    """S_{v alpha, beta}(m v^2, n, c) from the right-hand weights."""
    w = "" if k is None else str(Fraction(k))
    return _weilsum.fast_kloosterman(_gram(lattice), _coords(alpha), _coords(beta), m, n, c, v, w, prec_bits)


def verify_identity(lattice, alpha, beta, m, n, c, v, prec_bits=192):
    return _weilsum.verify_identity(_gram(lattice), _coords(alpha), _coords(beta), m, n, c, v, prec_bits)


def xi(lattice, alpha, beta, ell, m, n, c):
    """Exact product of the local factors, as a Fraction."""
    return Fraction(_weilsum.xi(_gram(lattice), _coords(alpha), _coords(beta), ell, m, n, c))


def rho(lattice, a, b, c, d, branch=1, prec_bits=192):
    """Matrix of the Weil representation, rows and columns in discriminant_group() order."""
    return _weilsum.rho(_gram(lattice), a, b, c, d, branch, prec_bits)
