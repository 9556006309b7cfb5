"""Sphere maximization problems behind the additive gap constants.

Every constant produced here is the maximum over unit vectors x of

    F(x) = <Cx, x> - <Sx, x> <Dx, x>

for a kind-specific triple of Hermitian matrices (C, S, D):

    gamma      C = B f'(B),            S = A,                    D = f'(B)
    delta      C = T f'(T),            S = sum Phi_i(A_i),       D = f'(T)
    eta        delta with B_i = A_i
    theta      C = sum Phi_i(A_i f'(A_i)), S = sum Phi_i(f'(A_i)), D = T
    vartheta   theta with B_i = A_i
    chebyshev  C = A f'(A),            S = A,                    D = f'(A)

with T = sum Phi_i(B_i).  The value of gamma makes f(B) <= f(A) + gamma*I
a certified inequality; delta/eta/theta/vartheta do the same for the
mapped Jensen-type bounds, and chebyshev is the covariance-style quantity
that is pointwise nonnegative for convex f.

Two solvers are provided: a multistart projected gradient ascent on the
complex unit sphere (the primary path) and a sampling plus coordinate
ascent brute-force oracle that shares no iteration logic with it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BadDimensions, DimensionMismatch, NotUnitalFamily
from .hermitian import apply_spectral, hermitize, require_hermitian, spectral_decompose
from .maps import MapFamily, check_unital_family, identity_family
from .scalarfn import ScalarFunction

__all__ = [
    "KINDS",
    "GapProblem",
    "GapResult",
    "build_gap_problem",
    "gap_objective",
    "solve_multistart",
    "solve_bruteforce",
]

KINDS = ("gamma", "delta", "eta", "theta", "vartheta", "chebyshev")

THREADS_ENV_VAR = "LOEWNER_CERT_THREADS"

# restarts are processed in fixed-size blocks so that results do not
# depend on how many worker threads consume them
_RESTART_BLOCK = 32

# strict enough to reject steps that hop across a ridge onto the far
# slope, which would otherwise creep instead of contract
_ARMIJO = 0.3
_MIN_STEP = 1e-18

_GRID_RESOLUTION = 700
_REFINE_CANDIDATES = 10
_GEODESIC_GRID = 64
_MAX_SWEEPS = 60


@dataclass(frozen=True)
class GapProblem:
    """The data (C, S, D) of one sphere maximization, tagged by kind."""

    kind: str
    C: np.ndarray
    S: np.ndarray
    D: np.ndarray

    @property
    def dim(self) -> int:
        return self.C.shape[0]


@dataclass
class GapResult:
    value: float
    maximizer: np.ndarray
    solver: str
    iterations: int
    restarts: int
    converged: bool = True


def gap_objective(problem: GapProblem, x) -> float:
    """F(x) = <Cx,x> - <Sx,x><Dx,x> for a unit vector x."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    qc = float(np.real(x.conj() @ (problem.C @ x)))
    qs = float(np.real(x.conj() @ (problem.S @ x)))
    qd = float(np.real(x.conj() @ (problem.D @ x)))
    return qc - qs * qd


def _forms(C, S, D, X):
    qC = np.real(np.sum(X.conj() * (C @ X), axis=0))
    qS = np.real(np.sum(X.conj() * (S @ X), axis=0))
    qD = np.real(np.sum(X.conj() * (D @ X), axis=0))
    return qC, qS, qD


def _as_ops(ops):
    if ops is None:
        return None
    if isinstance(ops, np.ndarray) and ops.ndim == 2:
        return [require_hermitian(ops)]
    return [require_hermitian(A) for A in ops]


def _check_spectra(ops, f: ScalarFunction):
    for A in ops:
        dec = spectral_decompose(A)
        f.domain.clamp_spectrum(dec.eigenvalues)


def build_gap_problem(kind: str, f: ScalarFunction, a_ops, b_ops=None,
                      family: MapFamily | None = None) -> GapProblem:
    """Assemble (C, S, D) for one of the six kinds.

    ``a_ops``/``b_ops`` may be single matrices or lists matching the map
    family; eta and vartheta ignore ``b_ops`` and reuse the A side.  All
    operand spectra must lie inside f's domain; the family (identity when
    omitted) must be unital.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown gap kind {kind!r}")
    a_list = _as_ops(a_ops)
    b_list = _as_ops(b_ops)
    if not a_list:
        raise BadDimensions("at least one A operand is required")
    dom = f.domain

    def tfp(w):
        return w * f.deriv_array(w)

    if kind in ("gamma", "chebyshev"):
        if family is not None:
            raise BadDimensions(f"kind {kind} takes no map family")
        if len(a_list) != 1:
            raise BadDimensions(f"kind {kind} takes a single A operand")
        A = a_list[0]
        if kind == "chebyshev":
            B = A
        else:
            if not b_list or len(b_list) != 1:
                raise BadDimensions("kind gamma takes a single B operand")
            B = b_list[0]
            if B.shape != A.shape:
                raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
        _check_spectra([A, B], f)
        C = apply_spectral(B, tfp, dom)
        D = apply_spectral(B, f.deriv_array, dom)
        return GapProblem(kind, C, A, D)

    if kind in ("eta", "vartheta"):
        b_list = a_list
    if b_list is None:
        raise BadDimensions(f"kind {kind} needs B operands")
    if family is None:
        if len(a_list) != 1 or len(b_list) != 1:
            raise BadDimensions("an explicit map family is required for several operands")
        family = identity_family(a_list[0].shape[0])
    if len(a_list) != len(family) or len(b_list) != len(family):
        raise BadDimensions(
            f"family of {len(family)} maps needs as many A and B operands"
        )
    for phi, A, B in zip(family.maps, a_list, b_list):
        if A.shape[0] != phi.input_dim or B.shape[0] != phi.input_dim:
            raise DimensionMismatch("operand sizes must match the map input dims")
    unital = check_unital_family(family)
    if not unital.holds:
        raise NotUnitalFamily(f"unitality defect {unital.defect:.3e}")
    _check_spectra(a_list + b_list, f)

    T = family.apply_sum(b_list)
    if kind in ("delta", "eta"):
        C = apply_spectral(T, tfp, dom)
        S = family.apply_sum(a_list)
        D = apply_spectral(T, f.deriv_array, dom)
    else:  # theta, vartheta
        C = family.apply_sum([apply_spectral(A, tfp, dom) for A in a_list])
        S = family.apply_sum([apply_spectral(A, f.deriv_array, dom) for A in a_list])
        D = T
    return GapProblem(kind, C, S, D)


# -- multistart projected gradient ascent ------------------------------


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _projected_ascent(C, S, D, X0, max_iter: int, step_tol: float):
    """Lockstep ascent over the columns of X0; returns (F, X, converged, iters).

    Ambient gradient 2Cx - 2<Dx,x>Sx - 2<Sx,x>Dx, projected onto the
    tangent space of the unit sphere, with per-column backtracking line
    search and renormalization as retraction.
    """
    X = X0 / np.linalg.norm(X0, axis=0)
    CX, SX, DX = C @ X, S @ X, D @ X
    qC = np.real(np.sum(X.conj() * CX, axis=0))
    qS = np.real(np.sum(X.conj() * SX, axis=0))
    qD = np.real(np.sum(X.conj() * DX, axis=0))
    F = qC - qS * qD
    b = X.shape[1]
    eta = np.ones(b)
    converged = np.zeros(b, dtype=bool)
    stalled = np.zeros(b, dtype=bool)
    iters = 0
    tol2 = step_tol * step_tol
    for _ in range(max_iter):
        G = 2.0 * (CX - SX * qD - DX * qS)
        rad = np.real(np.sum(X.conj() * G, axis=0))
        Gt = G - X * rad
        gn2 = np.real(np.sum(Gt.conj() * Gt, axis=0))
        converged |= (~stalled) & (gn2 <= tol2)
        work = np.flatnonzero(~(converged | stalled))
        if work.size == 0:
            break
        iters += 1
        pending = work
        while pending.size:
            e = eta[pending]
            cand = X[:, pending] + Gt[:, pending] * e
            cand = cand / np.linalg.norm(cand, axis=0)
            cCX, cSX, cDX = C @ cand, S @ cand, D @ cand
            cqC = np.real(np.sum(cand.conj() * cCX, axis=0))
            cqS = np.real(np.sum(cand.conj() * cSX, axis=0))
            cqD = np.real(np.sum(cand.conj() * cDX, axis=0))
            cF = cqC - cqS * cqD
            cG = 2.0 * (cCX - cSX * cqD - cDX * cqS)
            crad = np.real(np.sum(cand.conj() * cG, axis=0))
            cGt = cG - cand * crad
            cgn2 = np.real(np.sum(cGt.conj() * cGt, axis=0))
            improve = cF - F[pending]
            # Armijo while progress is measurable; once improvements sink
            # below float resolution, accept only steps that contract the
            # tangent gradient, and stop growing the step there
            strict = (improve > 0.0) & (improve >= _ARMIJO * e * gn2[pending])
            res_f = 1e-15 * (1.0 + np.abs(F[pending]))
            plateau = (np.abs(improve) <= res_f) & (cgn2 <= 0.98 * gn2[pending])
            ok = strict | plateau
            acc = pending[ok]
            if acc.size:
                sel = np.flatnonzero(ok)
                X[:, acc] = cand[:, sel]
                CX[:, acc] = cCX[:, sel]
                SX[:, acc] = cSX[:, sel]
                DX[:, acc] = cDX[:, sel]
                qC[acc], qS[acc], qD[acc] = cqC[sel], cqS[sel], cqD[sel]
                F[acc] = cF[sel]
                grown = pending[strict]
                eta[grown] = np.minimum(eta[grown] * 2.0, 1e8)
            rej = pending[~ok]
            eta[rej] *= 0.5
            dead = eta[rej] < _MIN_STEP
            stalled[rej[dead]] = True
            pending = rej[~dead]
    return F, X, converged, iters


def solve_multistart(problem: GapProblem, restarts: int = 64, max_iter: int = 500,
                     step_tol: float = 1e-10, seed=0) -> GapResult:
    """Best stationary value of F over ``restarts`` seeded sphere starts.

    Restart blocks have a fixed size, so the result is bit-identical for
    a given (seed, restarts) no matter how many threads the environment
    variable LOEWNER_CERT_THREADS grants.
    """
    if restarts < 1:
        raise BadDimensions(f"need at least one restart, got {restarts}")
    C, S, D = problem.C, problem.S, problem.D
    k = problem.dim
    rng = np.random.default_rng(seed)
    X0 = rng.standard_normal((k, restarts)) + 1j * rng.standard_normal((k, restarts))
    blocks = [X0[:, i:i + _RESTART_BLOCK] for i in range(0, restarts, _RESTART_BLOCK)]

    def run_block(Xb):
        return _projected_ascent(C, S, D, Xb, max_iter, step_tol)

    threads = _thread_count()
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(blocks))) as pool:
            outs = list(pool.map(run_block, blocks))
    else:
        outs = [run_block(Xb) for Xb in blocks]

    values = np.concatenate([o[0] for o in outs])
    X_all = np.concatenate([o[1] for o in outs], axis=1)
    conv_all = np.concatenate([o[2] for o in outs])
    iters = int(sum(o[3] for o in outs))
    best = int(np.argmax(values))
    x = X_all[:, best]
    x = x / np.linalg.norm(x)
    return GapResult(
        value=gap_objective(problem, x),
        maximizer=x,
        solver="multistart",
        iterations=iters,
        restarts=restarts,
        converged=bool(conv_all.any()),
    )


# -- brute-force oracle -------------------------------------------------


def _sweep_dim2(C, S, D, resolution: int = _GRID_RESOLUTION) -> np.ndarray:
    """Best x = (cos t, e^{i phi} sin t) on a resolution^2 grid (dim 2 only)."""
    t = np.linspace(0.0, 0.5 * np.pi, resolution)
    ct, st = np.cos(t), np.sin(t)
    cs2 = 2.0 * ct * st
    phis = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
    eph = np.exp(1j * phis)

    def parts(M):
        base = ct * ct * M[0, 0].real + st * st * M[1, 1].real
        cross = np.real(eph * M[0, 1])
        return base, cross

    baseC, crossC = parts(C)
    baseS, crossS = parts(S)
    baseD, crossD = parts(D)
    best_val = -np.inf
    best_ti = best_pj = 0
    chunk = 256
    for start in range(0, resolution, chunk):
        sl = slice(start, min(start + chunk, resolution))
        qC = baseC[:, None] + np.outer(cs2, crossC[sl])
        qS = baseS[:, None] + np.outer(cs2, crossS[sl])
        qD = baseD[:, None] + np.outer(cs2, crossD[sl])
        Fg = qC - qS * qD
        flat = int(np.argmax(Fg))
        val = float(Fg.flat[flat])
        if val > best_val:
            best_val = val
            best_ti, best_pj = divmod(flat, Fg.shape[1])
            best_pj += start
    return np.array([ct[best_ti], eph[best_pj] * st[best_ti]], dtype=complex)


def _geodesic_poly(z, a, b, c):
    """Value, first and second derivative of a + b cos z + c sin z."""
    cz, sz = np.cos(z), np.sin(z)
    val = a + b * cz + c * sz
    d1 = -b * sz + c * cz
    d2 = -b * cz - c * sz
    return val, d1, d2


def _coordinate_ascent(C, S, D, X0, max_sweeps: int = _MAX_SWEEPS):
    """Exact line maximization along spherical coordinate geodesics.

    Along the geodesic through x and (a phase of) a coordinate axis the
    three quadratic forms are degree-one trig polynomials in z = 2 psi,
    so F restricted to it is maximized by a coarse grid plus safeguarded
    Newton steps.  Monotone by construction; independent of the gradient
    solver it cross-checks.
    """
    X = np.array(X0, dtype=complex)
    X = X / np.linalg.norm(X, axis=0)
    k, b = X.shape
    CX, SX, DX = C @ X, S @ X, D @ X
    qC, qS, qD = _forms(C, S, D, X)
    F = qC - qS * qD
    zg = np.linspace(0.0, 2.0 * np.pi, _GEODESIC_GRID, endpoint=False)
    cg, sg = np.cos(zg), np.sin(zg)
    cols = np.arange(b)
    sweeps = 0
    for _ in range(max_sweeps):
        sweeps += 1
        F_before = F.copy()
        for j in range(k):
            for unit in (1.0, 1j):
                cmix = X[j].imag if unit == 1j else X[j].real
                nu2 = 1.0 - cmix * cmix
                live = nu2 > 1e-20
                if not live.any():
                    continue
                nu = np.sqrt(np.where(live, nu2, 1.0))
                dvec = np.zeros((k, 1), dtype=complex)
                dvec[j, 0] = unit
                W = (dvec - X * cmix) / nu
                CW = (unit * C[:, j][:, None] - CX * cmix) / nu
                SW = (unit * S[:, j][:, None] - SX * cmix) / nu
                DW = (unit * D[:, j][:, None] - DX * cmix) / nu
                qCw = np.real(np.sum(W.conj() * CW, axis=0))
                qSw = np.real(np.sum(W.conj() * SW, axis=0))
                qDw = np.real(np.sum(W.conj() * DW, axis=0))
                crC = np.real(np.sum(W.conj() * CX, axis=0))
                crS = np.real(np.sum(W.conj() * SX, axis=0))
                crD = np.real(np.sum(W.conj() * DX, axis=0))
                aC, bC = 0.5 * (qC + qCw), 0.5 * (qC - qCw)
                aS, bS = 0.5 * (qS + qSw), 0.5 * (qS - qSw)
                aD, bD = 0.5 * (qD + qDw), 0.5 * (qD - qDw)
                # F on the geodesic grid, one row per column of X
                QC = aC[:, None] + np.outer(bC, cg) + np.outer(crC, sg)
                QS = aS[:, None] + np.outer(bS, cg) + np.outer(crS, sg)
                QD = aD[:, None] + np.outer(bD, cg) + np.outer(crD, sg)
                FG = QC - QS * QD
                jbest = np.argmax(FG, axis=1)
                z0 = zg[jbest]
                F0 = FG[cols, jbest]
                z = z0.copy()
                for _ in range(6):
                    vC, dC, d2C = _geodesic_poly(z, aC, bC, crC)
                    vS, dS, d2S = _geodesic_poly(z, aS, bS, crS)
                    vD, dD, d2D = _geodesic_poly(z, aD, bD, crD)
                    g1 = dC - dS * vD - vS * dD
                    g2 = d2C - d2S * vD - 2.0 * dS * dD - vS * d2D
                    den = np.where(g2 < -1e-300, g2, -1.0)
                    step = np.where(g2 < -1e-300, g1 / den, 0.0)
                    z = z - np.clip(step, -0.2, 0.2)
                vC, _, _ = _geodesic_poly(z, aC, bC, crC)
                vS, _, _ = _geodesic_poly(z, aS, bS, crS)
                vD, _, _ = _geodesic_poly(z, aD, bD, crD)
                Fz = vC - vS * vD
                take_newton = Fz > F0
                zfin = np.where(take_newton, z, z0)
                Ffin = np.maximum(Fz, F0)
                move = live & (Ffin > F)
                if not move.any():
                    continue
                mc = np.flatnonzero(move)
                psi = 0.5 * zfin[mc]
                cp, sp = np.cos(psi), np.sin(psi)
                X[:, mc] = X[:, mc] * cp + W[:, mc] * sp
                CX[:, mc] = CX[:, mc] * cp + CW[:, mc] * sp
                SX[:, mc] = SX[:, mc] * cp + SW[:, mc] * sp
                DX[:, mc] = DX[:, mc] * cp + DW[:, mc] * sp
                czf, szf = np.cos(zfin[mc]), np.sin(zfin[mc])
                qC[mc] = aC[mc] + bC[mc] * czf + crC[mc] * szf
                qS[mc] = aS[mc] + bS[mc] * czf + crS[mc] * szf
                qD[mc] = aD[mc] + bD[mc] * czf + crD[mc] * szf
                F[mc] = qC[mc] - qS[mc] * qD[mc]
        # kill accumulated drift once per sweep
        X = X / np.linalg.norm(X, axis=0)
        CX, SX, DX = C @ X, S @ X, D @ X
        qC, qS, qD = _forms(C, S, D, X)
        F = qC - qS * qD
        if float(np.max(F - F_before)) < 1e-13 * (1.0 + float(np.abs(F).max())):
            break
    return X, F, sweeps


def solve_bruteforce(problem: GapProblem, samples: int = 20000, seed=0) -> GapResult:
    """Sampling oracle: random unit vectors, then coordinate ascent.

    Dimension 1 is closed form.  Dimension 2 additionally sweeps the
    parametrization x = (cos t, e^{i phi} sin t) on a dense grid (the
    global phase is irrelevant).  The best ten candidates are then
    polished by geodesic coordinate ascent.
    """
    if samples < 1:
        raise BadDimensions(f"need at least one sample, got {samples}")
    C, S, D = problem.C, problem.S, problem.D
    k = problem.dim
    if k == 1:
        x = np.array([1.0 + 0.0j])
        return GapResult(gap_objective(problem, x), x, "bruteforce", 0, samples)
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((k, samples)) + 1j * rng.standard_normal((k, samples))
    Z = Z / np.linalg.norm(Z, axis=0)
    qC, qS, qD = _forms(C, S, D, Z)
    Fs = qC - qS * qD
    top = np.argsort(Fs)[::-1][:_REFINE_CANDIDATES]
    candidates = [Z[:, top]]
    if k == 2:
        candidates.append(_sweep_dim2(C, S, D)[:, None])
    X0 = np.concatenate(candidates, axis=1)
    X, F, sweeps = _coordinate_ascent(C, S, D, X0)
    best = int(np.argmax(F))
    x = X[:, best] / np.linalg.norm(X[:, best])
    return GapResult(gap_objective(problem, x), x, "bruteforce", sweeps, samples)
