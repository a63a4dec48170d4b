"""Splitting solver (ADMM) for trace-normalized semidefinite programs.

Problem form:  maximize <C, X>  over PSD X  subject to <A_k, X> = b_k.

Constraint 0 must be the trace normalization (A_0 = I, b_0 = 1).  Two parts
of the method rely on that:

* the dual candidate is repaired into a feasible one by shifting y_0, which
  turns a slightly indefinite slack matrix PSD at a cost of +delta on the
  bound;
* the primal candidate is repaired by mixing toward I/m, which must itself
  satisfy the constraints (true for the trace/zero-entry constraint sets
  generated in this package; checked at entry).

Every `check_every` sweeps the solver extracts this certified primal/dual
pair, so the returned interval [lower, upper] brackets the true optimum
regardless of how far the iteration itself has converged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class SdpError(RuntimeError):
    """Iteration cap reached; carries the certified bounds seen so far."""

    def __init__(self, message: str, lower: float | None = None, upper: float | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


@dataclass
class SdpResult:
    lower: float
    upper: float
    x: np.ndarray
    iterations: int
    converged: bool

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)


def _psd_part(y: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((y + y.T) / 2)
    w = np.clip(w, 0.0, None)
    return (v * w) @ v.T


def sdp_solve(
    c: np.ndarray,
    constraints: np.ndarray,
    b: np.ndarray,
    tol: float = 5e-7,
    max_iter: int = 200_000,
    check_every: int = 50,
    early_stop: Callable[[float, float], bool] | None = None,
) -> SdpResult:
    """Solve max <c, X> s.t. <constraints[k], X> = b[k], X PSD.

    Returns once the certified gap drops below tol, or once early_stop(lower,
    upper) is truthy (converged=False in that case).  Raises SdpError at the
    iteration cap with the best bounds attached.
    """
    cmat = np.asarray(c, dtype=float)
    m = cmat.shape[0]
    if cmat.shape != (m, m):
        raise ValueError("cost matrix must be square")
    amats = np.asarray(constraints, dtype=float)
    bvec = np.asarray(b, dtype=float)
    k = amats.shape[0]
    if amats.shape != (k, m, m) or bvec.shape != (k,):
        raise ValueError("constraint stack must be (k, m, m) with k right-hand sides")
    eye = np.eye(m)
    if not np.allclose(amats[0], eye) or abs(bvec[0] - 1.0) > 1e-12:
        raise ValueError("constraint 0 must fix the trace to 1")

    aflat = amats.reshape(k, m * m)
    gram = aflat @ aflat.T
    gram_inv = np.linalg.inv(gram)  # k is small and gram is near-diagonal here
    if np.max(np.abs(aflat @ (eye / m).ravel() - bvec)) > 1e-9:
        raise ValueError("I/m must satisfy the constraints (primal repair relies on it)")

    def proj_affine(y: np.ndarray) -> np.ndarray:
        resid = aflat @ y.ravel() - bvec
        return y - (gram_inv @ resid @ aflat).reshape(m, m)

    rho = 1.0
    relax = 1.6
    z = eye / m
    u = np.zeros((m, m))
    best_lb = -np.inf
    best_ub = np.inf
    best_x = z.copy()

    it = 0
    while it < max_iter:
        x = proj_affine(z - u + cmat / rho)
        xh = relax * x + (1.0 - relax) * z
        z_old = z
        z = _psd_part(xh + u)
        u = u + xh - z
        it += 1
        if it % check_every:
            continue

        # certified primal: affine-exact, then mixed toward I/m until PSD
        xf = proj_affine(z)
        lam = float(np.linalg.eigvalsh((xf + xf.T) / 2)[0])
        if lam < 0:
            s = m * (-lam) / (1.0 + m * (-lam))
            xf = (1.0 - s) * xf + (s / m) * eye
        lb = float(np.sum(cmat * xf))

        # certified dual: least-squares y from the running multiplier (the
        # slack converges to -rho*u), then shift y_0 to absorb any negative
        # eigenvalue left in it
        y = gram_inv @ (aflat @ (cmat - rho * u).ravel())
        slack = (y @ aflat).reshape(m, m) - cmat
        delta = max(0.0, -float(np.linalg.eigvalsh((slack + slack.T) / 2)[0]))
        ub = float(bvec @ y) + delta

        if lb > best_lb:
            best_lb = lb
            best_x = xf
        best_ub = min(best_ub, ub)
        if best_ub - best_lb <= tol:
            return SdpResult(best_lb, best_ub, best_x, it, True)
        if early_stop is not None and early_stop(best_lb, best_ub):
            return SdpResult(best_lb, best_ub, best_x, it, False)

        # residual balancing keeps rho in a useful range
        rp = float(np.linalg.norm(x - z))
        rd = rho * float(np.linalg.norm(z - z_old))
        if rp > 10.0 * rd:
            rho *= 2.0
            u /= 2.0
        elif rd > 10.0 * rp:
            rho /= 2.0
            u *= 2.0

    raise SdpError(
        f"no convergence in {max_iter} iterations (certified bounds [{best_lb:.9g}, {best_ub:.9g}])",
        best_lb,
        best_ub,
    )
