"""Closed-form constants for multiplicative-additive order bounds.

chord_coeffs gives the secant line of a convex f over [m, M]; beta is the
largest gap between that secant and alpha * f, so that

    f(t) <= alpha * f(t) + beta   is replaced by   chord(t) <= alpha f(t) + beta

holding on all of [m, M].  kantorovich is the generalized Kantorovich
constant K(m, M, p) controlling B**p <= K * A**p under B <= A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadInterval, DomainError, NonPositiveAlpha
from .scalarfn import ScalarFunction

__all__ = ["ChordCoefficients", "chord_coeffs", "beta", "beta_point", "kantorovich"]

_BISECT_TOL = 1e-12
_P_LIMIT_TOL = 1e-9


@dataclass(frozen=True)
class ChordCoefficients:
    """Secant coefficients: chord(t) = a_f * t + b_f on [m, M]."""

    a_f: float
    b_f: float
    m: float
    M: float

    def __iter__(self):
        return iter((self.a_f, self.b_f))

    def __call__(self, t: float) -> float:
        return self.a_f * t + self.b_f


def _check_window(f: ScalarFunction, m: float, M: float) -> None:
    if not m < M:
        raise BadInterval(f"need m < M, got ({m}, {M})")
    if not f.domain.contains_interval(m, M):
        raise DomainError(f"[{m}, {M}] not inside domain {f.domain} of {f.spec_string()}")


def chord_coeffs(f: ScalarFunction, m: float, M: float) -> ChordCoefficients:
    """Coefficients of the secant of f over [m, M]."""
    _check_window(f, m, M)
    fm, fM = f.eval(m), f.eval(M)
    a_f = (fM - fm) / (M - m)
    b_f = (M * fm - m * fM) / (M - m)
    return ChordCoefficients(a_f, b_f, m, M)


def beta_point(f: ScalarFunction, m: float, M: float, alpha: float) -> tuple[float, float]:
    """Maximum of g(t) = a_f t + b_f - alpha f(t) on [m, M], with argmax.

    g is concave for convex f and alpha > 0, so the maximizer is an
    endpoint or the root of g'(t) = a_f - alpha f'(t), found by bisection
    to 1e-12 in t.
    """
    if not alpha > 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    coeffs = chord_coeffs(f, m, M)

    def g(t: float) -> float:
        return coeffs(t) - alpha * f.eval(t)

    def gprime(t: float) -> float:
        return coeffs.a_f - alpha * f.deriv(t)

    candidates = [m, M]
    if gprime(m) > 0 and gprime(M) < 0:
        lo, hi = m, M
        while hi - lo > _BISECT_TOL:
            mid = 0.5 * (lo + hi)
            if gprime(mid) > 0:
                lo = mid
            else:
                hi = mid
        candidates.append(0.5 * (lo + hi))
    t_star = max(candidates, key=g)
    return g(t_star), t_star


def beta(f: ScalarFunction, m: float, M: float, alpha: float) -> float:
    return beta_point(f, m, M, alpha)[0]


def kantorovich(m: float, M: float, p: float) -> float:
    """Generalized Kantorovich constant K(m, M, p) for 0 < m < M.

    K(m, M, p) = (m M^p - M m^p) / ((p - 1)(M - m))
                 * ((p - 1)/p * (M^p - m^p) / (m M^p - M m^p))^p,

    with the removable singularities at p = 0 and p = 1 routed to 1.
    """
    if not (0 < m < M):
        raise BadInterval(f"need 0 < m < M, got ({m}, {M})")
    p = float(p)
    if abs(p) <= _P_LIMIT_TOL or abs(p - 1.0) <= _P_LIMIT_TOL:
        return 1.0
    mp, Mp = m ** p, M ** p
    lead = (m * Mp - M * mp) / ((p - 1.0) * (M - m))
    base = (p - 1.0) / p * (Mp - mp) / (m * Mp - M * mp)
    return lead * base ** p
