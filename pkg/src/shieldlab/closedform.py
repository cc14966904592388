"""Analytic closed forms used as independent oracles.

Two families live here:

* the reduced single-site states of a classical chain whose only field is a
  longitudinal field on site 1 — a negative control showing that commuting
  split parts alone do not shield;
* the convergent double series for the four-site diamond with a two-site
  field-free interface, whose magnetization on the far outer site retains a
  genuine dependence on the near outer site's field at any positive
  temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .thermal import DensityMatrix

_SERIES_CAP = 400


def classical_chain_reduced(i: int, beta: float, h1: float) -> DensityMatrix:
    """Reduced state of site ``i`` (1-indexed) of the classical control chain.

    The chain Hamiltonian is -h1 Z_1 - sum Z_k Z_{k+1} with unit couplings;
    the reduced state is diagonal,

        rho_i = 1/2 I + 1/2 tanh^(i-1)(beta) tanh(h1 beta) Z,

    so every site's state depends on h1 even though the Hamiltonian splits
    into commuting halves around any site.
    """
    if i < 1:
        raise ValueError(f"site index must be >= 1 (1-indexed), got {i}")
    m = math.tanh(beta) ** (i - 1) * math.tanh(h1 * beta)
    rho = np.array([[(1 + m) / 2, 0.0], [0.0, (1 - m) / 2]])
    return DensityMatrix(rho, (i - 1,))


@dataclass(frozen=True)
class FourSpinCoefficients:
    """Converged partial sums of the diamond's operator-valued exponentials.

    A and B expand the partial trace over the near outer site of
    exp(-beta H_X): that trace equals A·I + B·Z⊗Z on the two interface
    sites. C, D, G, H expand exp(-beta H_Y) in the interface/far-site
    operator basis (each carrying one redundant overall factor of 2 that
    cancels in every ratio). ``n_max`` is the number of outer terms summed
    and ``residual`` the magnitude of the last added term.
    """

    A: float
    B: float
    C: float
    D: float
    G: float
    H: float
    n_max: int
    residual: float


def fourspin_coefficients(beta: float, h1: float, h4: float,
                          tol: float = 1e-14) -> FourSpinCoefficients:
    """Sum the diamond's coefficient series until the added terms drop below ``tol``.

    The inner sums run over k = 0..n (binomial coefficients vanish beyond
    n), split by parity of k; the outer index n advances until every
    coefficient's increment is below ``tol`` in magnitude. beta^(2n)/(2n)!
    is carried incrementally so no intermediate overflows for the beta
    values of interest (terms peak near n ≈ beta).
    """
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    a1 = 2.0 + h1 * h1
    a4 = 2.0 + h4 * h4
    A = B = C = D = G = H = 0.0
    even_fac = 1.0  # beta^(2n) / (2n)!
    n = 0
    while True:
        if n > 0:
            even_fac *= beta * beta / ((2 * n - 1) * (2 * n))
        odd_fac = even_fac * beta / (2 * n + 1)  # beta^(2n+1) / (2n+1)!

        def split_sums(a: float) -> tuple[float, float]:
            even = odd = 0.0
            for k in range(n + 1):
                term = math.comb(n, k) * a ** (n - k) * 2.0 ** k
                if k % 2 == 0:
                    even += term
                else:
                    odd += term
            return even, odd

        e1, o1 = split_sums(a1)
        e4, o4 = split_sums(a4)
        dA = 2.0 * even_fac * e1
        dB = 2.0 * even_fac * o1
        dC = 2.0 * even_fac * e4
        dD = 2.0 * even_fac * o4
        dG = h4 * 2.0 * odd_fac * e4
        dH = h4 * 2.0 * odd_fac * o4
        A += dA
        B += dB
        C += dC
        D += dD
        G += dG
        H += dH
        residual = max(abs(dA), abs(dB), abs(dC), abs(dD), abs(dG), abs(dH))
        if not math.isfinite(residual) or not math.isfinite(A + C):
            raise NonConvergenceError(
                f"series overflowed at n={n} (beta={beta}, h1={h1}, h4={h4})"
            )
        n += 1
        if residual < tol:
            break
        if n >= _SERIES_CAP:
            raise NonConvergenceError(
                f"series did not converge within {_SERIES_CAP} terms "
                f"(beta={beta}, residual={residual})"
            )
    return FourSpinCoefficients(A=A, B=B, C=C, D=D, G=G, H=H,
                                n_max=n, residual=residual)


def fourspin_magnetization(beta: float, h1: float, h4: float,
                           tol: float = 1e-14) -> float:
    """X magnetization of the diamond's far outer site: (AG + BH) / (AC + BD)."""
    c = fourspin_coefficients(beta, h1, h4, tol=tol)
    return (c.A * c.G + c.B * c.H) / (c.A * c.C + c.B * c.D)


def fourspin_zero_temperature_limit(h4: float) -> float:
    """Claimed zero-temperature plateau of the diamond magnetization, 1/sqrt(4 + h4²).

    Careful: the convergent series itself plateaus at h4/sqrt(4 + h4²) as
    beta grows (exact diagonalization agrees), which coincides with this
    expression only at h4 = 1. Both are independent of the near site's
    field; see :func:`fourspin_series_plateau` for the series' actual limit.
    """
    return 1.0 / math.sqrt(4.0 + h4 * h4)


def fourspin_series_plateau(h4: float) -> float:
    """Large-beta limit of the series magnetization, h4/sqrt(4 + h4²).

    At h4 = 0 the far site's X magnetization vanishes identically for every
    beta (conjugating by Z on that site flips X and commutes with the
    Hamiltonian), and the plateau is approached exponentially fast in beta
    otherwise.
    """
    return h4 / math.sqrt(4.0 + h4 * h4)
