"""Independence-type bounds on a graph and membership tests for the three
nested polytopes those bounds optimize over.

For a graph G the chain is

    alpha(G)  <=  theta(G)  <=  alpha*(G)

with alpha the exact independence number (branch and bound), theta the
semidefinite relaxation, and alpha* the fractional packing value over the
maximal-clique inequalities.  The matching polytopes STAB <= TH <= QSTAB are
tested pointwise with certificates where a certificate is cheap to produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, _bits, _popcount, complement
from .numkernel import LinearProgram, lp_solve, sdp_solve

_STAB_MAX_VERTICES = 20


def _color_order(rows: tuple[int, ...], p: int) -> list[tuple[int, int]]:
    """Greedy proper coloring of the subgraph induced on bitset p.

    Returns (vertex, color) pairs in nondecreasing color order; a clique
    inside the first k listed vertices has size at most the k-th color.
    """
    order: list[tuple[int, int]] = []
    color = 0
    rest = p
    while rest:
        color += 1
        q = rest
        while q:
            v = (q & -q).bit_length() - 1
            order.append((v, color))
            rest ^= 1 << v
            q &= ~rows[v]
            q ^= 1 << v
    return order


def _max_clique(rows: tuple[int, ...], n: int) -> tuple[int, int]:
    """Maximum clique (size, bitmask) via branch and bound with a coloring
    bound (Tomita-style)."""
    best_size = 0
    best_mask = 0

    def expand(rmask: int, rsize: int, p: int) -> None:
        nonlocal best_size, best_mask
        for v, color in reversed(_color_order(rows, p)):
            if rsize + color <= best_size:
                return
            if rsize + 1 > best_size:
                best_size = rsize + 1
                best_mask = rmask | (1 << v)
            newp = p & rows[v]
            if newp:
                expand(rmask | (1 << v), rsize + 1, newp)
            p ^= 1 << v

    expand(0, 0, (1 << n) - 1)
    return best_size, best_mask


def independence_number(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact independence number and one maximum independent set."""
    size, mask = _max_clique(complement(g).rows, g.n)
    return size, tuple(i for i in range(g.n) if mask >> i & 1)


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    rows = g.rows
    found: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot = max(_bits(p | x), key=lambda v: _popcount(p & rows[v]))
        for v in _bits(p & ~rows[pivot]):
            bk(r | (1 << v), p & rows[v], x & rows[v])
            p ^= 1 << v
            x |= 1 << v

    bk(0, (1 << g.n) - 1, 0)
    return sorted(tuple(_bits(m)) for m in found)


def fractional_packing(g: Graph) -> float:
    """alpha*(G): maximize sum(x) subject to x(Q) <= 1 over maximal cliques Q,
    0 <= x <= 1."""
    cliques = maximal_cliques(g)
    n = g.n
    a = np.zeros((len(cliques), n))
    for r, q in enumerate(cliques):
        a[r, list(q)] = 1.0
    lp = LinearProgram(
        c=np.ones(n),
        a=a,
        senses=("<=",) * len(cliques),
        b=np.ones(len(cliques)),
        bounds=((0.0, 1.0),) * n,
        maximize=True,
    )
    res = lp_solve(lp)
    if res.status != "optimal":
        raise RuntimeError(f"packing LP ended {res.status}")
    return float(res.value)


def _theta_sdp(n: int, rows: tuple[int, ...], w: np.ndarray, tol: float):
    cost = np.sqrt(np.outer(w, w))
    cons = [np.eye(n)]
    rhs = [1.0]
    for i in range(n):
        for j in _bits(rows[i] >> (i + 1)):
            a = np.zeros((n, n))
            a[i, i + 1 + j] = a[i + 1 + j, i] = 1.0
            cons.append(a)
            rhs.append(0.0)
    return sdp_solve(cost, np.array(cons), np.array(rhs), tol=tol)


@lru_cache(maxsize=None)
def _theta_cached(n: int, rows: tuple[int, ...], wkey: tuple[float, ...] | None, tol: float) -> float:
    w = np.ones(n) if wkey is None else np.asarray(wkey, dtype=float)
    return _theta_sdp(n, rows, w, tol).value


def lovasz_theta(g: Graph, weights=None, tol: float = 5e-7) -> float:
    """Semidefinite bound theta(G), optionally vertex-weighted.

    The solver certifies a two-sided interval of width tol; the midpoint is
    returned, so the absolute error is at most tol/2.  Results are memoized.
    """
    wkey = None
    if weights is not None:
        wkey = tuple(float(x) for x in weights)
        if len(wkey) != g.n:
            raise ValueError("one weight per vertex required")
        if min(wkey) < 0:
            raise ValueError("weights must be nonnegative")
    return _theta_cached(g.n, g.rows, wkey, tol)


def lovasz_theta_matrix(g: Graph, weights=None, tol: float = 5e-7):
    """Like lovasz_theta but also returns the best feasible primal matrix,
    from which optimizing vertex assignments can be extracted."""
    w = np.ones(g.n) if weights is None else np.asarray([float(x) for x in weights])
    if w.shape != (g.n,):
        raise ValueError("one weight per vertex required")
    if w.min() < 0:
        raise ValueError("weights must be nonnegative")
    res = _theta_sdp(g.n, g.rows, w, tol)
    return res.value, res.x


def theta_circulant_oracle(n: int, offsets) -> float:
    """theta of a circulant graph by linear programming over circulant
    feasible matrices (valid by symmetrization), independent of the
    semidefinite route.
    """
    offs = sorted(set(int(j) for j in offsets))
    half = n // 2
    for j in offs:
        if not 1 <= j <= half:
            raise ValueError(f"offset {j} outside 1..{half}")
    free = [j for j in range(1, half + 1) if j not in offs]
    if not free:
        return 1.0
    mult = [1.0 if (n % 2 == 0 and j == half) else 2.0 for j in free]
    rows = []
    for m in range(half + 1):
        row = []
        for j in free:
            if n % 2 == 0 and j == half:
                row.append(float((-1) ** m))
            else:
                row.append(2.0 * math.cos(2.0 * math.pi * j * m / n))
        rows.append(row)
    # eigenvalue rows: 1/n + sum_j coef(j, m) x_j >= 0
    lp = LinearProgram(
        c=np.array(mult) * n,
        a=-np.array(rows),
        senses=("<=",) * (half + 1),
        b=np.full(half + 1, 1.0 / n),
        bounds=((-1.0 / n, 1.0 / n),) * len(free),
        maximize=True,
    )
    res = lp_solve(lp)
    if res.status != "optimal":
        raise RuntimeError(f"circulant LP ended {res.status}")
    return 1.0 + float(res.value)


def _independent_set_masks(g: Graph) -> list[int]:
    masks = [0]
    for v in range(g.n):
        bit = 1 << v
        masks += [m | bit for m in masks if not m & g.rows[v]]
    return masks


def stab_membership(g: Graph, p, tol: float = 1e-9) -> tuple[bool, dict]:
    """Is p a convex combination of independent-set indicator vectors?

    Returns (True, {"weights": {set: coefficient}}) or (False, certificate)
    where the certificate is a linear functional a.x <= beta valid on every
    indicator but exceeded by p.
    """
    if g.n > _STAB_MAX_VERTICES:
        raise ValueError(f"stab membership enumerates independent sets; limited to {_STAB_MAX_VERTICES} vertices")
    p = np.asarray(p, dtype=float)
    if p.shape != (g.n,):
        raise ValueError("one coordinate per vertex required")
    masks = _independent_set_masks(g)
    k = len(masks)
    chi = np.zeros((g.n + 1, k))
    for col, m in enumerate(masks):
        for v in _bits(m):
            chi[v, col] = 1.0
        chi[g.n, col] = 1.0
    lp = LinearProgram(
        c=np.zeros(k),
        a=chi,
        senses=("=",) * (g.n + 1),
        b=np.append(p, 1.0),
        bounds=((0.0, 1.0),) * k,
        maximize=False,
    )
    res = lp_solve(lp)
    if res.status == "optimal":
        weights = {
            tuple(_bits(masks[col])): float(res.x[col])
            for col in range(k)
            if res.x[col] > tol
        }
        return True, {"weights": weights}
    # separating functional: maximize a.p - beta with a.chi_S <= beta for
    # every independent set S, a in [-1, 1]^n
    nv = g.n + 1
    a = np.zeros((k, nv))
    for row, m in enumerate(masks):
        for v in _bits(m):
            a[row, v] = 1.0
        a[row, g.n] = -1.0
    lp2 = LinearProgram(
        c=np.append(p, -1.0),
        a=a,
        senses=("<=",) * k,
        b=np.zeros(k),
        bounds=((-1.0, 1.0),) * g.n + ((-1.0, float(g.n)),),
        maximize=True,
    )
    res2 = lp_solve(lp2)
    if res2.status != "optimal" or res2.value <= tol:
        raise RuntimeError("separation LP failed to produce a certificate")
    return False, {
        "a": [float(v) for v in res2.x[: g.n]],
        "beta": float(res2.x[g.n]),
        "margin": float(res2.value),
    }


def th_membership(g: Graph, p, tol: float = 1e-6, theta_tol: float = 5e-7) -> tuple[bool, float | None]:
    """Membership in the theta body of g: p >= 0 and the complement's
    weighted theta at p is at most 1.  Returns the theta value alongside."""
    p = np.asarray(p, dtype=float)
    if p.shape != (g.n,):
        raise ValueError("one coordinate per vertex required")
    if float(np.min(p)) < -tol:
        return False, None
    p = np.clip(p, 0.0, None)
    theta = lovasz_theta(complement(g), weights=tuple(p), tol=theta_tol)
    return theta <= 1.0 + tol, theta


def qstab_membership(g: Graph, p, tol: float = 1e-9) -> tuple[bool, dict | None]:
    """Membership in the clique-constrained polytope of g: p >= 0 and
    p(Q) <= 1 for every maximal clique Q.  On failure the second element
    names the violated constraint."""
    p = np.asarray(p, dtype=float)
    if p.shape != (g.n,):
        raise ValueError("one coordinate per vertex required")
    bad = int(np.argmin(p))
    if p[bad] < -tol:
        return False, {"kind": "negative", "vertex": bad, "value": float(p[bad])}
    worst = None
    worst_total = 1.0 + tol
    for q in maximal_cliques(g):
        total = float(sum(p[v] for v in q))
        if total > worst_total:
            worst = q
            worst_total = total
    if worst is not None:
        return False, {"kind": "clique", "clique": list(worst), "total": worst_total}
    return True, None


@dataclass
class BoundsReport:
    alpha: int
    theta: float
    alpha_star: float
    ratio: float
    witness_independent_set: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "theta": self.theta,
            "alpha_star": self.alpha_star,
            "ratio": self.ratio,
            "witness_independent_set": list(self.witness_independent_set),
        }


def bounds_report(g: Graph, tol: float = 5e-7) -> BoundsReport:
    alpha, witness = independence_number(g)
    theta = lovasz_theta(g, tol=tol)
    alpha_star = fractional_packing(g)
    return BoundsReport(alpha, theta, alpha_star, theta / alpha, witness)
