"""Dense two-phase simplex for the small LPs this package generates
(fractional packing, polytope membership, circulant spectra).

Pivoting uses the largest-improvement rule and switches to Bland's rule once
50 consecutive degenerate pivots occur, which keeps the method finite.  All
tolerances are absolute; the problems here are well scaled (entries O(1)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FEAS_TOL = 1e-9
COST_TOL = 1e-9
DEGENERATE_LIMIT = 50


class LpError(RuntimeError):
    """Numerical breakdown (pivot limit exceeded)."""


@dataclass
class LinearProgram:
    c: np.ndarray
    a: np.ndarray
    senses: tuple[str, ...]
    b: np.ndarray
    bounds: tuple[tuple[float | None, float | None], ...]
    maximize: bool = True

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.a = np.asarray(self.a, dtype=float).reshape(len(self.senses), -1) if len(self.senses) else np.zeros((0, self.c.size))
        self.b = np.asarray(self.b, dtype=float)
        if self.a.shape != (self.b.size, self.c.size):
            raise ValueError(
                f"inconsistent LP dimensions: A {self.a.shape}, b {self.b.size}, c {self.c.size}"
            )
        if len(self.bounds) != self.c.size:
            raise ValueError("one (lo, hi) bound pair per variable required")
        for s in self.senses:
            if s not in ("<=", "=", ">="):
                raise ValueError(f"unknown row sense {s!r}")
        if not (np.all(np.isfinite(self.c)) and np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.b))):
            raise ValueError("LP data must be finite")


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float | None = None
    x: np.ndarray | None = None


@dataclass
class _Standard:
    """min c.x, A x (senses) b, x >= 0, plus the bookkeeping to undo the transform."""

    c: np.ndarray
    a: np.ndarray
    senses: list[str]
    b: np.ndarray
    const: float
    recover: list[tuple]  # per original variable: ("shift", col, lo) | ("flip", col, hi) | ("split", col_p, col_m)


def _to_standard(lp: LinearProgram) -> _Standard:
    nvar = lp.c.size
    c = (-lp.c if lp.maximize else lp.c).astype(float).tolist()
    cols: list[np.ndarray] = []
    recover: list[tuple] = []
    extra_rows: list[tuple[np.ndarray, str, float]] = []
    b = lp.b.astype(float).copy()
    const = 0.0
    ccols: list[float] = []

    for k in range(nvar):
        lo, hi = lp.bounds[k]
        col = lp.a[:, k].copy()
        ck = c[k]
        if lo is not None and np.isfinite(lo):
            # x = lo + x'
            b -= col * lo
            const += ck * lo
            cols.append(col)
            ccols.append(ck)
            recover.append(("shift", len(cols) - 1, float(lo)))
            if hi is not None and np.isfinite(hi):
                extra_rows.append((len(cols) - 1, "<=", float(hi) - float(lo)))
        elif hi is not None and np.isfinite(hi):
            # x = hi - x'
            b -= col * hi
            const += ck * hi
            cols.append(-col)
            ccols.append(-ck)
            recover.append(("flip", len(cols) - 1, float(hi)))
        else:
            # free: x = xp - xm
            cols.append(col)
            ccols.append(ck)
            cols.append(-col)
            ccols.append(-ck)
            recover.append(("split", len(cols) - 2, len(cols) - 1))

    a = np.column_stack(cols) if cols else np.zeros((lp.b.size, 0))
    senses = list(lp.senses)
    brows = [b]
    for col_idx, sense, rhs in extra_rows:
        row = np.zeros(a.shape[1])
        row[col_idx] = 1.0
        a = np.vstack([a, row])
        senses.append(sense)
        brows.append(np.array([rhs]))
    b = np.concatenate(brows)
    return _Standard(np.asarray(ccols), a, senses, b, const, recover)


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    piv = tab[row]
    for r in range(tab.shape[0]):
        if r != row and abs(tab[r, col]) > 1e-14:
            tab[r] -= tab[r, col] * piv
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: list[int], ncols: int, allowed: np.ndarray) -> str:
    """Minimize the cost carried in the last tableau row over columns marked allowed.

    Returns "optimal" or "unbounded"; raises LpError past the pivot cap.
    """
    m = tab.shape[0] - 1
    degenerate_streak = 0
    max_iter = 2000 + 200 * (m + ncols)
    for _ in range(max_iter):
        cost = tab[-1, :ncols]
        eligible = np.where(allowed[:ncols] & (cost < -COST_TOL))[0]
        if eligible.size == 0:
            return "optimal"
        if degenerate_streak >= DEGENERATE_LIMIT:
            col = int(eligible[0])  # Bland: smallest index
        else:
            col = int(eligible[np.argmin(cost[eligible])])
        colvals = tab[:m, col]
        pos = np.where(colvals > FEAS_TOL)[0]
        if pos.size == 0:
            return "unbounded"
        ratios = tab[pos, -1] / colvals[pos]
        best = np.min(ratios)
        ties = pos[ratios <= best + 1e-12]
        # break ties on the smallest basis index (anti-cycling with Bland)
        row = int(min(ties, key=lambda r: basis[r]))
        if best <= 1e-12:
            degenerate_streak += 1
        else:
            degenerate_streak = 0
        _pivot(tab, basis, row, col)
    raise LpError(f"degenerate pivot limit: no convergence within {max_iter} pivots")


def lp_solve(lp: LinearProgram) -> LpResult:
    std = _to_standard(lp)
    m, nstruct = std.a.shape

    # orient rows so every rhs is nonnegative
    a = std.a.copy()
    b = std.b.copy()
    senses = list(std.senses)
    for i in range(m):
        if b[i] < 0:
            a[i] *= -1.0
            b[i] *= -1.0
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]

    slack_cols = []
    art_cols = []
    blocks = [a]
    for i, s in enumerate(senses):
        if s == "<=":
            col = np.zeros(m)
            col[i] = 1.0
            slack_cols.append((i, col, True))
        elif s == ">=":
            col = np.zeros(m)
            col[i] = -1.0
            slack_cols.append((i, col, False))
            art_cols.append(i)
        else:
            art_cols.append(i)

    nslack = len(slack_cols)
    nart = len(art_cols)
    ncols = nstruct + nslack + nart
    tab = np.zeros((m + 1, ncols + 1))
    tab[:m, :nstruct] = a
    basis = [-1] * m
    for idx, (i, col, is_basic) in enumerate(slack_cols):
        tab[:m, nstruct + idx] = col
        if is_basic:
            basis[i] = nstruct + idx
    for idx, i in enumerate(art_cols):
        tab[i, nstruct + nslack + idx] = 1.0
        basis[i] = nstruct + nslack + idx
    tab[:m, -1] = b

    allowed = np.ones(ncols, dtype=bool)

    # phase 1: minimize the artificial sum
    if nart:
        tab[-1, :] = 0.0
        tab[-1, nstruct + nslack : nstruct + nslack + nart] = 1.0
        for r in range(m):
            if basis[r] >= nstruct + nslack:
                tab[-1] -= tab[r]
        status = _run_simplex(tab, basis, ncols, allowed)
        if status == "unbounded":  # cannot happen for a bounded-below phase-1 objective
            raise LpError("phase 1 reported unbounded")
        if -tab[-1, -1] > 1e-7:
            return LpResult("infeasible")
        # drive leftover artificials out of the basis
        drop_rows = []
        for r in range(m):
            if basis[r] >= nstruct + nslack:
                row = tab[r, : nstruct + nslack]
                pivots = np.where(np.abs(row) > FEAS_TOL)[0]
                if pivots.size:
                    _pivot(tab, basis, r, int(pivots[np.argmax(np.abs(row[pivots]))]))
                else:
                    drop_rows.append(r)
        if drop_rows:
            keep = [r for r in range(m) if r not in drop_rows]
            tab = np.vstack([tab[keep], tab[-1:]])
            basis = [basis[r] for r in keep]
            m = len(basis)
        allowed[nstruct + nslack :] = False

    # phase 2: the real objective
    tab[-1, :] = 0.0
    tab[-1, :nstruct] = std.c
    for r in range(m):
        bc = basis[r]
        if bc < nstruct and abs(std.c[bc]) > 0:
            tab[-1] -= std.c[bc] * tab[r]
    status = _run_simplex(tab, basis, ncols, allowed)
    if status == "unbounded":
        return LpResult("unbounded")

    xstd = np.zeros(ncols)
    for r in range(m):
        xstd[basis[r]] = tab[r, -1]
    x = np.zeros(len(std.recover))
    for k, spec in enumerate(std.recover):
        if spec[0] == "shift":
            x[k] = xstd[spec[1]] + spec[2]
        elif spec[0] == "flip":
            x[k] = spec[2] - xstd[spec[1]]
        else:
            x[k] = xstd[spec[1]] - xstd[spec[2]]
    value = float(lp.c @ x)
    return LpResult("optimal", value, x)
