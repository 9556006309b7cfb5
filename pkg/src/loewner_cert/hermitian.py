"""Hermitian matrix utilities.

Spectral decomposition, functional calculus f(A) = U f(diag) U*, Loewner
order checks via the smallest eigenvalue of a difference, and seeded
generators for test instances.  Matrices are plain complex ndarrays; the
JSON form is {"dim": n, "re": [[...]], "im": [[...]]} with "im" optional.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    BadInterval,
    DimensionMismatch,
    NotHermitian,
    ParseError,
)
from .scalarfn import Interval, ScalarFunction

__all__ = [
    "SpectralDecomposition",
    "LoewnerCheck",
    "require_hermitian",
    "hermitize",
    "spectral_decompose",
    "apply_spectral",
    "calc",
    "matrix_power",
    "loewner_leq",
    "min_eigenvalue",
    "random_unitary",
    "random_hermitian",
    "random_dominated_pair",
    "matrix_to_obj",
    "matrix_from_obj",
]

HERMITIAN_RTOL = 1e-12
RECONSTRUCTION_RTOL = 1e-10
SPECTRUM_CLAMP_TOL = 1e-10


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def require_hermitian(A, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Return A as a complex ndarray, raising NotHermitian on asymmetry.

    The tolerance scales with the largest entry: |A - A*| <= rtol * (1 + max|A|).
    """
    A = as_matrix(A)
    defect = float(np.abs(A - A.conj().T).max()) if A.size else 0.0
    scale = 1.0 + (float(np.abs(A).max()) if A.size else 0.0)
    if defect > rtol * scale:
        raise NotHermitian(f"asymmetry {defect:.3e} exceeds {rtol:.1e} * {scale:.3e}")
    return A


def hermitize(A) -> np.ndarray:
    """Project onto the Hermitian part; cheap insurance against rounding."""
    A = np.asarray(A, dtype=complex)
    return 0.5 * (A + A.conj().T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and a unitary of matching eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def spectral_decompose(A) -> SpectralDecomposition:
    A = require_hermitian(A)
    w, U = np.linalg.eigh(hermitize(A))
    return SpectralDecomposition(w, U)


def apply_spectral(A, fn, domain: Interval | None = None,
                   clamp_tol: float = SPECTRUM_CLAMP_TOL) -> np.ndarray:
    """Apply a scalar callable to A through its eigenvalues.

    When a domain is given the spectrum is validated against it first;
    eigenvalues within ``clamp_tol`` of a closed endpoint are snapped onto
    it so that rounding does not cause spurious rejections.
    """
    dec = spectral_decompose(A)
    w = dec.eigenvalues
    if domain is not None:
        w = domain.clamp_spectrum(w, clamp_tol)
    fw = np.asarray(fn(w), dtype=float)
    U = dec.eigenvectors
    return hermitize((U * fw) @ U.conj().T)


def calc(f: ScalarFunction, A) -> np.ndarray:
    """Functional calculus f(A) for an admitted convex function."""
    return apply_spectral(A, f.value_array, f.domain)


def matrix_power(A, p: float) -> np.ndarray:
    """A**p through the spectrum; non-integer p requires A >= 0."""
    p = float(p)
    if p.is_integer() and p >= 0:
        return apply_spectral(A, lambda w: np.power(w, p))
    domain = Interval(0.0, float("inf"), lo_closed=True)
    return apply_spectral(A, lambda w: np.power(w, p), domain)


class LoewnerCheck(NamedTuple):
    holds: bool
    slack: float


def min_eigenvalue(A) -> float:
    return float(np.linalg.eigvalsh(hermitize(A))[0])


def loewner_leq(A, B, tol: float = 0.0) -> LoewnerCheck:
    """Check A <= B in the Loewner order; slack is lambda_min(B - A)."""
    A = require_hermitian(A)
    B = require_hermitian(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    slack = min_eigenvalue(B - A)
    return LoewnerCheck(slack >= -tol, slack)


# -- seeded generators ------------------------------------------------


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a complex Gaussian."""
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return Q * ph


def random_hermitian(n: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian with spectrum drawn uniformly from [lo, hi]."""
    if not lo < hi:
        raise BadInterval(f"need lo < hi, got ({lo}, {hi})")
    u = rng.uniform(lo, hi, size=n)
    Q = random_unitary(n, rng)
    return hermitize((Q * u) @ Q.conj().T)


def random_dominated_pair(n: int, m: float, M: float, seed) -> tuple[np.ndarray, np.ndarray]:
    """Draw (A, B) with B <= A and both spectra inside [m, M], 0 < m < M.

    A gets a uniform spectrum in [m, M]; B = A - c*P for a strictly
    positive random P, with c the largest value in (0, 1] keeping
    lambda_min(B) >= m (found by bisection on the feasible interval).
    """
    if not (0 < m < M):
        raise BadInterval(f"need 0 < m < M, got ({m}, {M})")
    rng = np.random.default_rng(seed)
    A = random_hermitian(n, m, M, rng)
    P = random_hermitian(n, 0.1, 1.0, rng)

    def feasible(c: float) -> bool:
        return min_eigenvalue(A - c * P) >= m

    if feasible(1.0):
        c = 1.0
    else:
        lo_c, hi_c = 0.0, 1.0
        for _ in range(48):
            mid = 0.5 * (lo_c + hi_c)
            if feasible(mid):
                lo_c = mid
            else:
                hi_c = mid
        c = lo_c
    if c < 1e-8:
        # no room below A; an exactly equal pair satisfies every postcondition
        return A, A.copy()
    B = hermitize(A - c * P)
    return A, B


# -- JSON form ---------------------------------------------------------


def matrix_to_obj(A) -> dict:
    A = as_matrix(A)
    obj = {"dim": int(A.shape[0]), "re": A.real.tolist()}
    if np.abs(A.imag).max(initial=0.0) > 0.0:
        obj["im"] = A.imag.tolist()
    return obj


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "re" not in obj:
        raise ParseError("matrix object needs 'dim' and 're' fields")
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    if re.shape != (n, n):
        raise ParseError(f"'re' must be {n}x{n}, got shape {re.shape}")
    if "im" in obj and obj["im"] is not None:
        im = np.asarray(obj["im"], dtype=float)
        if im.shape != (n, n):
            raise ParseError(f"'im' must be {n}x{n}, got shape {im.shape}")
    else:
        im = np.zeros_like(re)
    return require_hermitian(re + 1j * im)
