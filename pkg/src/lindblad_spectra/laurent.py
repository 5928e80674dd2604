"""Laurent symbols and explicit inverses of tridiagonal Laurent operators.

Conventions used throughout the package:

* A banded Laurent operator is stored by its diagonals.  ``coeff[l]`` is the
  constant matrix element ``<n| T |n+l>`` (``l > 0`` above the main diagonal),
  and the symbol is ``a(z) = sum_l coeff[l] z^l`` so that the spectrum of the
  operator is the image of the unit circle under ``a``.
* For a tridiagonal operator ``alpha = coeff[-1]`` (below the diagonal),
  ``beta = coeff[0]`` and ``gamma = coeff[+1]``, i.e.
  ``a(z) = alpha/z + beta + gamma*z``.
* Square roots follow the branch with ``Re(sqrt) >= 0``, ties broken by
  ``Im(sqrt) >= 0``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGamma, NoSplit, OffUnitCircle, OnSymbolCurve

UNIT_CIRCLE_TOL = 1e-12
ROOT_SPLIT_TOL = 1e-12
GAMMA_TOL = 1e-12


@dataclass(frozen=True)
class BandedSymbol:
    """Diagonals of a banded Laurent operator.

    ``coeffs[i]`` holds the diagonal at offset ``i - r`` where
    ``r = (len(coeffs) - 1) // 2``; offsets run over ``[-r, r]``.
    """

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) % 2 != 1:
            raise ValueError("coefficient list must have odd length 2r+1")

    @classmethod
    def from_dict(cls, coeff: dict) -> "BandedSymbol":
        if not coeff:
            return cls((0j,))
        r = max(abs(l) for l in coeff)
        return cls(tuple(complex(coeff.get(l, 0.0)) for l in range(-r, r + 1)))

    @property
    def range(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def __getitem__(self, l: int) -> complex:
        r = self.range
        if abs(l) > r:
            return 0j
        return self.coeffs[l + r]

    def as_dict(self) -> dict:
        r = self.range
        return {l: self.coeffs[l + r] for l in range(-r, r + 1) if self.coeffs[l + r] != 0}

    def is_selfadjoint(self, tol: float = 1e-12) -> bool:
        return all(abs(self[-l] - np.conj(self[l])) <= tol for l in range(self.range + 1))

    def shifted(self, z: complex) -> "BandedSymbol":
        """Symbol of ``T - z`` (shifts the main diagonal)."""
        r = self.range
        c = list(self.coeffs)
        c[r] = c[r] - z
        return BandedSymbol(tuple(c))

    def tridiagonal(self) -> tuple:
        """(alpha, beta, gamma) for a symbol of range <= 1."""
        if self.range > 1:
            raise ValueError("symbol has range > 1")
        return self[-1], self[0], self[1]


@dataclass(frozen=True)
class RootPair:
    """Roots of ``alpha + beta x + gamma x^2`` with branch bookkeeping.

    ``lambda_plus/lambda_minus`` follow the square-root branch convention,
    ``lambda1/lambda2`` are the same pair ordered by modulus
    (``|lambda2| <= |lambda1|``), and ``sign_factor`` is
    ``(-1)**(|lambda_minus| < 1 < |lambda_plus|)``.
    """

    lambda_plus: complex
    lambda_minus: complex
    lambda1: complex
    lambda2: complex
    sign_factor: int


def symbol_eval(s: BandedSymbol, z: complex) -> complex:
    """Evaluate ``a(z) = sum_l coeff[l] z^l`` for ``|z| = 1``."""
    z = complex(z)
    if abs(abs(z) - 1.0) > UNIT_CIRCLE_TOL:
        raise OffUnitCircle(f"|z| = {abs(z)!r} deviates from 1 beyond {UNIT_CIRCLE_TOL}")
    r = s.range
    powers = z ** np.arange(-r, r + 1)
    return complex(np.dot(np.asarray(s.coeffs), powers))


def symbol_curve(s: BandedSymbol, n_theta: int) -> np.ndarray:
    """Sample the symbol on the uniform grid ``theta_k = 2 pi k / n_theta``.

    The returned points are a dense sample of the operator's spectrum
    (which equals its essential spectrum).
    """
    if n_theta < 3:
        raise ValueError("n_theta must be at least 3")
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = np.exp(1j * theta)
    r = s.range
    out = np.zeros(n_theta, dtype=complex)
    for l in range(-r, r + 1):
        c = s[l]
        if c != 0:
            out += c * z ** l
    return out


def branch_sqrt(z: complex) -> complex:
    """Square root with ``Re >= 0``; if ``Re == 0`` then ``Im >= 0``."""
    w = cmath.sqrt(complex(z))
    if w.real < 0.0 or (w.real == 0.0 and w.imag < 0.0):
        w = -w
    return w


def ordered_roots(alpha: complex, beta: complex, gamma: complex) -> RootPair:
    """Roots of ``alpha + beta x + gamma x^2`` with the unit-circle split.

    Raises ``DegenerateGamma`` for ``|gamma| <= 1e-12``, ``OnSymbolCurve``
    when a root (numerically) sits on the unit circle, and ``NoSplit`` when
    both roots lie on the same side of it.
    """
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    if abs(gamma) <= GAMMA_TOL:
        raise DegenerateGamma(f"|gamma| = {abs(gamma)!r} below tolerance")
    half = -beta / (2.0 * gamma)
    root = branch_sqrt(half * half - alpha / gamma)
    lam_p = half + root
    lam_m = half - root
    if abs(lam_p) >= abs(lam_m):
        lam1, lam2 = lam_p, lam_m
        sign = -1
    else:
        lam1, lam2 = lam_m, lam_p
        sign = 1
    if min(abs(abs(lam1) - 1.0), abs(abs(lam2) - 1.0)) < ROOT_SPLIT_TOL:
        raise OnSymbolCurve(
            f"root moduli {abs(lam1)!r}, {abs(lam2)!r} touch the unit circle"
        )
    if not (abs(lam2) < 1.0 < abs(lam1)):
        raise NoSplit(
            f"root moduli {abs(lam1)!r}, {abs(lam2)!r} on the same side of the unit circle"
        )
    return RootPair(lam_p, lam_m, lam1, lam2, sign)


def tridiag_inverse_element(
    alpha: complex, beta: complex, gamma: complex, j: int, k: int
) -> complex:
    """Matrix element ``<j| T^{-1} |k>`` of an invertible tridiagonal Laurent T.

    For ``k >= j`` the element is ``lambda1^{-(k-j)} / (gamma (lambda2 - lambda1))``
    and for ``k < j`` it is ``lambda2^{j-k}`` times the same prefactor.  The
    denominator equals ``sign_factor * sqrt(beta^2 - 4 alpha gamma)`` whenever
    the branch convention permits the square root to be pulled out of
    ``gamma * (lambda_plus - lambda_minus)``; computing it as
    ``gamma (lambda2 - lambda1)`` keeps the identity ``T T^{-1} = 1`` exact for
    every phase of the coefficients.

    The degenerate bidiagonal/diagonal cases (``alpha`` and/or ``gamma``
    numerically zero) are handled by the geometric series of the remaining
    band.
    """
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    m = k - j
    if abs(gamma) <= GAMMA_TOL and abs(alpha) <= GAMMA_TOL:
        if abs(beta) <= GAMMA_TOL:
            raise OnSymbolCurve("zero operator is not invertible")
        return 1.0 / beta if m == 0 else 0j
    if abs(gamma) <= GAMMA_TOL:
        return _bidiagonal_inverse_element(alpha, beta, -m)
    if abs(alpha) <= GAMMA_TOL:
        return _bidiagonal_inverse_element(gamma, beta, m)
    pair = ordered_roots(alpha, beta, gamma)
    denom = gamma * (pair.lambda2 - pair.lambda1)
    if m >= 0:
        return pair.lambda1 ** (-m) / denom
    return pair.lambda2 ** (-m) / denom


def _bidiagonal_inverse_element(offdiag: complex, beta: complex, m: int) -> complex:
    """``<j|T^{-1}|k>`` for ``T`` with ``beta`` on the diagonal and ``offdiag``
    on one adjacent diagonal; ``m`` counts steps in the band direction."""
    if abs(abs(offdiag) - abs(beta)) < ROOT_SPLIT_TOL:
        raise OnSymbolCurve("bidiagonal symbol passes through zero")
    if abs(offdiag) < abs(beta):
        # 1/(beta + c z^{+-1}) expands along the band direction
        if m < 0:
            return 0j
        return (-offdiag / beta) ** m / beta
    if m > -1:
        return 0j
    return (-beta / offdiag) ** (-m - 1) / offdiag


def tridiag_inverse_row(
    alpha: complex, beta: complex, gamma: complex, offsets: np.ndarray
) -> np.ndarray:
    """Vectorized ``<0| T^{-1} |m>`` over an array of offsets ``m``."""
    offsets = np.asarray(offsets, dtype=int)
    out = np.empty(offsets.shape, dtype=complex)
    for i, m in np.ndenumerate(offsets):
        out[i] = tridiag_inverse_element(alpha, beta, gamma, 0, int(m))
    return out
