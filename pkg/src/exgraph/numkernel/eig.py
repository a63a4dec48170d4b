"""Symmetric eigendecomposition with an explicit symmetry precondition.

Contract: eigenvalues ascending, eigenvector columns orthonormal,
max |M V - V diag(w)| <= 1e-10 on well-conditioned inputs.  Backed by LAPACK
through numpy; the residual guarantees are pinned by the tests.
"""

from __future__ import annotations

import numpy as np


def eig_sym(m, sym_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > sym_tol:
        raise ValueError(f"matrix is not symmetric within {sym_tol}")
    w, v = np.linalg.eigh((a + a.T) / 2.0)
    return w, v
