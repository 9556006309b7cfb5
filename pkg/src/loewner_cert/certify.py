"""Eigenvalue-slack certificates for operator order statements.

A certificate records the computed constants, the smallest eigenvalue of
the bound matrix minus the bounded one (the slack), and whether that
slack clears the tolerance.  Tolerances are scaled by one plus the
Frobenius norm of the bounding side so that large instances are not
penalized for honest rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import beta as beta_const
from .constants import kantorovich
from .errors import BadDimensions, HypothesisViolated, NotUnitVector
from .gaps import build_gap_problem, solve_multistart
from .hermitian import (
    apply_spectral,
    calc,
    loewner_leq,
    matrix_power,
    min_eigenvalue,
    random_dominated_pair,
    require_hermitian,
)
from .maps import MapFamily, identity_family
from .scalarfn import ScalarFunction

__all__ = [
    "Certificate",
    "SandwichResult",
    "OrderViolation",
    "JENSEN_KINDS",
    "CLASSICAL_STATEMENTS",
    "certify_order",
    "certify_jensen",
    "verify_sandwich_pointwise",
    "verify_classical",
    "find_order_violation",
]

DEFAULT_TOL = 1e-8
_HYP_TOL = 1e-10

JENSEN_KINDS = ("delta_forward", "eta_choi", "theta_reverse", "vartheta_reverse")
CLASSICAL_STATEMENTS = (
    "furuta",
    "lowner_heinz",
    "alpha_beta_increasing",
    "alpha_beta_decreasing",
)


@dataclass
class Certificate:
    """Outcome of one certified inequality check."""

    statement: str
    constants: dict
    slack: float
    tol: float
    passed: bool
    solver: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "constants": dict(self.constants),
            "slack": self.slack,
            "tol": self.tol,
            "passed": self.passed,
            "solver": dict(self.solver),
            "inputs": dict(self.inputs),
        }


class SandwichResult(tuple):
    """(lower, middle, upper, ok) with named access."""

    __slots__ = ()

    def __new__(cls, lower, middle, upper, ok):
        return super().__new__(cls, (lower, middle, upper, ok))

    lower = property(lambda self: self[0])
    middle = property(lambda self: self[1])
    upper = property(lambda self: self[2])
    ok = property(lambda self: self[3])


@dataclass
class OrderViolation:
    """A pair A <= B with f(A) <= f(B) failing by ``witness`` < 0."""

    A: np.ndarray
    B: np.ndarray
    witness: float
    trial: int


def _fro(A) -> float:
    return float(np.linalg.norm(A))


def _finish(statement, constants, bound_minus_bounded, ref_norm, tol,
            solver, inputs) -> Certificate:
    tol_eff = tol * (1.0 + ref_norm)
    slack = min_eigenvalue(bound_minus_bounded)
    return Certificate(
        statement=statement,
        constants=constants,
        slack=slack,
        tol=tol_eff,
        passed=bool(slack >= -tol_eff),
        solver=solver,
        inputs=inputs,
    )


def _solver_meta(res, seed, step_tol, max_iter) -> dict:
    return {
        "solver": res.solver,
        "restarts": res.restarts,
        "iterations": res.iterations,
        "converged": res.converged,
        "seed": seed,
        "step_tol": step_tol,
        "max_iter": max_iter,
    }


def certify_order(A, B, f: ScalarFunction, *, tol: float = DEFAULT_TOL,
                  restarts: int = 64, max_iter: int = 500,
                  step_tol: float = 1e-10, seed=0) -> Certificate:
    """Certify f(B) <= f(A) + gamma * I with the computed gamma.

    Valid for any Hermitian A, B with spectra in f's domain; no order
    relation between A and B is assumed.
    """
    A = require_hermitian(A)
    B = require_hermitian(B)
    problem = build_gap_problem("gamma", f, A, B)
    res = solve_multistart(problem, restarts=restarts, max_iter=max_iter,
                           step_tol=step_tol, seed=seed)
    gamma = res.value
    fA, fB = calc(f, A), calc(f, B)
    bound = fA + gamma * np.eye(A.shape[0]) - fB
    return _finish(
        "gamma-order",
        {"gamma": gamma},
        bound,
        _fro(fA),
        tol,
        _solver_meta(res, seed, step_tol, max_iter),
        {"dim": int(A.shape[0]), "function": f.spec_string()},
    )


_JENSEN_TO_GAP = {
    "delta_forward": "delta",
    "eta_choi": "eta",
    "theta_reverse": "theta",
    "vartheta_reverse": "vartheta",
}


def certify_jensen(kind: str, f: ScalarFunction, a_ops, b_ops=None,
                   family: MapFamily | None = None, *, tol: float = DEFAULT_TOL,
                   restarts: int = 64, max_iter: int = 500,
                   step_tol: float = 1e-10, seed=0) -> Certificate:
    """Certify one of the mapped Jensen-type bounds.

    delta_forward:    f(sum Phi_i(B_i)) <= sum Phi_i(f(A_i)) + delta * I
    eta_choi:         f(sum Phi_i(A_i)) <= sum Phi_i(f(A_i)) + eta * I
    theta_reverse:    sum Phi_i(f(A_i)) <= f(sum Phi_i(B_i)) + theta * I
    vartheta_reverse: sum Phi_i(f(A_i)) <= f(sum Phi_i(A_i)) + vartheta * I
    """
    if kind not in JENSEN_KINDS:
        raise ValueError(f"unknown jensen kind {kind!r}")
    gap_kind = _JENSEN_TO_GAP[kind]
    problem = build_gap_problem(gap_kind, f, a_ops, b_ops, family)
    res = solve_multistart(problem, restarts=restarts, max_iter=max_iter,
                           step_tol=step_tol, seed=seed)
    value = res.value

    a_list = [require_hermitian(A) for A in
              ([a_ops] if isinstance(a_ops, np.ndarray) and a_ops.ndim == 2 else a_ops)]
    if gap_kind in ("eta", "vartheta"):
        b_list = a_list
    else:
        b_list = [require_hermitian(B) for B in
                  ([b_ops] if isinstance(b_ops, np.ndarray) and b_ops.ndim == 2 else b_ops)]
    fam = family if family is not None else identity_family(a_list[0].shape[0])
    mapped_fA = fam.apply_sum([calc(f, A) for A in a_list])
    fT = calc(f, fam.apply_sum(b_list))
    k = mapped_fA.shape[0]
    eye = np.eye(k)
    if kind in ("delta_forward", "eta_choi"):
        bound = mapped_fA + value * eye - fT
        ref = _fro(mapped_fA)
    else:
        bound = fT + value * eye - mapped_fA
        ref = _fro(fT)
    const_name = gap_kind
    return _finish(
        kind,
        {const_name: value},
        bound,
        ref,
        tol,
        _solver_meta(res, seed, step_tol, max_iter),
        {
            "output_dim": int(k),
            "maps": len(fam),
            "function": f.spec_string(),
        },
    )


def verify_sandwich_pointwise(f: ScalarFunction, a_ops, b_ops=None,
                              family: MapFamily | None = None, x=None,
                              tol: float = DEFAULT_TOL) -> SandwichResult:
    """Evaluate the pointwise two-sided bound at one unit vector x.

    lower  = <sum Phi_i(A_i) x, x> <f'(T) x, x> - <T f'(T) x, x>
    middle = <sum Phi_i(f(A_i)) x, x> - <f(T) x, x>
    upper  = <sum Phi_i(A_i f'(A_i)) x, x> - <sum Phi_i(f'(A_i)) x, x> <T x, x>

    with T = sum Phi_i(B_i); ok means lower <= middle <= upper within tol.
    """
    if x is None:
        raise NotUnitVector("a unit vector x is required")
    x = np.asarray(x, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(x))
    if abs(nrm - 1.0) > 1e-10:
        raise NotUnitVector(f"norm {nrm} is not 1 within 1e-10")
    a_list = [require_hermitian(A) for A in
              ([a_ops] if isinstance(a_ops, np.ndarray) and a_ops.ndim == 2 else a_ops)]
    if b_ops is None:
        b_list = a_list
    else:
        b_list = [require_hermitian(B) for B in
                  ([b_ops] if isinstance(b_ops, np.ndarray) and b_ops.ndim == 2 else b_ops)]
    fam = family if family is not None else identity_family(a_list[0].shape[0])
    if len(a_list) != len(fam) or len(b_list) != len(fam):
        raise BadDimensions("operand lists must match the family size")
    dom = f.domain

    def tfp(w):
        return w * f.deriv_array(w)

    T = fam.apply_sum(b_list)
    SA = fam.apply_sum(a_list)
    SfA = fam.apply_sum([calc(f, A) for A in a_list])
    StfA = fam.apply_sum([apply_spectral(A, tfp, dom) for A in a_list])
    SfpA = fam.apply_sum([apply_spectral(A, f.deriv_array, dom) for A in a_list])
    fT = calc(f, T)
    fpT = apply_spectral(T, f.deriv_array, dom)
    tfpT = apply_spectral(T, tfp, dom)

    def q(M) -> float:
        return float(np.real(x.conj() @ (M @ x)))

    lower = q(SA) * q(fpT) - q(tfpT)
    middle = q(SfA) - q(fT)
    upper = q(StfA) - q(SfpA) * q(T)
    ok = (lower <= middle + tol) and (middle <= upper + tol)
    return SandwichResult(lower, middle, upper, bool(ok))


# -- classical statements ----------------------------------------------


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisViolated(msg)


def _hull(*mats) -> tuple[float, float]:
    los, his = [], []
    for A in mats:
        w = np.linalg.eigvalsh(A)
        los.append(float(w[0]))
        his.append(float(w[-1]))
    return min(los), max(his)


def verify_classical(statement: str, A, B, *, p: float | None = None,
                     f: ScalarFunction | None = None, alpha: float = 1.0,
                     m: float | None = None, M: float | None = None,
                     tol: float = DEFAULT_TOL) -> Certificate:
    """Check one classical order statement on a concrete pair.

    furuta:                 B <= A, A > 0  =>  B**p <= K(m, M, p) A**p, p >= 1
    lowner_heinz:           0 <= A <= B    =>  A**p <= B**p, 0 <= p <= 1
    alpha_beta_increasing:  B <= A, f increasing convex  =>  f(B) <= alpha f(A) + beta
    alpha_beta_decreasing:  B <= A, f decreasing convex  =>  f(A) <= alpha f(B) + beta

    [m, M] defaults to the spectral hull of the constrained operator(s).
    Inputs that fail a hypothesis raise HypothesisViolated.
    """
    if statement not in CLASSICAL_STATEMENTS:
        raise ValueError(f"unknown classical statement {statement!r}")
    A = require_hermitian(A)
    B = require_hermitian(B)
    if A.shape != B.shape:
        raise HypothesisViolated(f"shapes {A.shape} and {B.shape} differ")
    n = A.shape[0]
    eye = np.eye(n)

    if statement == "furuta":
        _require(p is not None and p >= 1.0, "furuta needs an exponent p >= 1")
        _require(loewner_leq(B, A, _HYP_TOL).holds, "furuta needs B <= A")
        _require(min_eigenvalue(A) > 0, "furuta needs A > 0")
        _require(min_eigenvalue(B) >= -_HYP_TOL, "furuta needs B >= 0")
        lo, hi = _hull(A)
        m_eff = lo if m is None else float(m)
        M_eff = hi if M is None else float(M)
        _require(0 < m_eff < M_eff, "furuta needs 0 < m < M")
        _require(lo >= m_eff - _HYP_TOL and hi <= M_eff + _HYP_TOL,
                 "spectrum of A must lie in [m, M]")
        K = kantorovich(m_eff, M_eff, p)
        Ap = matrix_power(A, p)
        Bp = matrix_power(B, p)
        return _finish(
            statement,
            {"K": K, "p": float(p), "m": m_eff, "M": M_eff},
            K * Ap - Bp,
            _fro(K * Ap),
            tol,
            {"solver": "eigh"},
            {"dim": n},
        )

    if statement == "lowner_heinz":
        _require(p is not None and 0.0 <= p <= 1.0, "lowner_heinz needs p in [0, 1]")
        _require(min_eigenvalue(A) >= -_HYP_TOL, "lowner_heinz needs A >= 0")
        _require(loewner_leq(A, B, _HYP_TOL).holds, "lowner_heinz needs A <= B")
        Ap = matrix_power(A, p)
        Bp = matrix_power(B, p)
        return _finish(
            statement,
            {"p": float(p)},
            Bp - Ap,
            _fro(Bp),
            tol,
            {"solver": "eigh"},
            {"dim": n},
        )

    # alpha-beta statements
    _require(f is not None, f"{statement} needs a scalar function")
    _require(alpha > 0, f"{statement} needs alpha > 0")
    _require(loewner_leq(B, A, _HYP_TOL).holds, f"{statement} needs B <= A")
    lo, hi = _hull(A, B)
    m_eff = lo if m is None else float(m)
    M_eff = hi if M is None else float(M)
    _require(0 < m_eff < M_eff, f"{statement} needs 0 < m < M")
    _require(lo >= m_eff - _HYP_TOL and hi <= M_eff + _HYP_TOL,
             "spectra of A and B must lie in [m, M]")
    _require(f.domain.contains_interval(m_eff, M_eff),
             f"[{m_eff}, {M_eff}] must lie inside the domain of f")
    # f convex means f' is nondecreasing, so one endpoint fixes the sign
    if statement == "alpha_beta_increasing":
        _require(f.deriv(m_eff) >= -1e-12, "f must be increasing on [m, M]")
    else:
        _require(f.deriv(M_eff) <= 1e-12, "f must be decreasing on [m, M]")
    b_val = beta_const(f, m_eff, M_eff, alpha)
    fA, fB = calc(f, A), calc(f, B)
    if statement == "alpha_beta_increasing":
        bound = alpha * fA + b_val * eye - fB
        ref = _fro(alpha * fA)
    else:
        bound = alpha * fB + b_val * eye - fA
        ref = _fro(alpha * fB)
    return _finish(
        statement,
        {"alpha": float(alpha), "beta": b_val, "m": m_eff, "M": M_eff},
        bound,
        ref,
        tol,
        {"solver": "eigh"},
        {"dim": n, "function": f.spec_string()},
    )


def _violation_window(f: ScalarFunction) -> tuple[float, float]:
    lo = f.domain.lo
    if np.isfinite(lo):
        start = max(lo, 0.0) + 0.05
        return start, start + 2.0
    return 0.5, 2.5


def find_order_violation(f: ScalarFunction, n: int, trials: int, seed,
                         lo: float | None = None, hi: float | None = None):
    """Search random ordered pairs A <= B for lambda_min(f(B) - f(A)) < -1e-8.

    Returns an OrderViolation (a witness that f does not preserve the
    order at dimension n) or None when no violation shows up.  The
    spectra window defaults to a band just inside f's domain.
    """
    if lo is None or hi is None:
        w_lo, w_hi = _violation_window(f)
        lo = w_lo if lo is None else lo
        hi = w_hi if hi is None else hi
    base = np.random.SeedSequence(seed)
    for t in range(trials):
        big, small = random_dominated_pair(n, lo, hi, [base.entropy, t])
        A, B = small, big  # A <= B
        witness = min_eigenvalue(calc(f, B) - calc(f, A))
        if witness < -1e-8:
            return OrderViolation(A=A, B=B, witness=witness, trial=t)
    return None
