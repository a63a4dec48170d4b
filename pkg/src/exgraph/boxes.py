"""Multiparty boxes: conditional outcome distributions p(a|x), the
no-signaling and locality membership tests, standard linear functionals
(CHSH, guess-your-neighbors-input, the two-copy local-orthogonality sum),
and the box-powered communication protocols.

Tables are dense numpy arrays with one axis per party setting followed by
one axis per party outcome, so p(a|x) = table[x + a].
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass, field

import numpy as np

from .numkernel import LinearProgram, lp_solve

_MAX_TABLE_ENTRIES = 1 << 24
_MAX_STRATEGIES = 1 << 20


@dataclass(frozen=True)
class BellScenario:
    settings: tuple[int, ...]
    outcomes: tuple[int, ...]

    def __post_init__(self):
        if len(self.settings) != len(self.outcomes) or not self.settings:
            raise ValueError("settings and outcomes must list one entry per party")
        if any(m < 1 for m in self.settings) or any(o < 1 for o in self.outcomes):
            raise ValueError("every party needs at least one setting and one outcome")

    @property
    def parties(self) -> int:
        return len(self.settings)

    def table_shape(self) -> tuple[int, ...]:
        return self.settings + self.outcomes


@dataclass
class Box:
    scenario: BellScenario
    table: np.ndarray

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=float)
        shape = self.scenario.table_shape()
        if self.table.shape != shape:
            raise ValueError(f"table shape {self.table.shape} does not match scenario {shape}")
        if self.table.size > _MAX_TABLE_ENTRIES:
            raise ValueError("box table too large")

    def validate(self, tol: float = 1e-9) -> None:
        if float(self.table.min()) < -tol:
            raise ValueError(f"negative probability {self.table.min()}")
        p = self.scenario.parties
        sums = self.table.sum(axis=tuple(range(p, 2 * p)))
        worst = float(np.max(np.abs(sums - 1.0)))
        if worst > tol:
            raise ValueError(f"outcome tables deviate from normalization by {worst}")

    def prob(self, x, a) -> float:
        return float(self.table[tuple(x) + tuple(a)])

    def to_json_dict(self) -> dict:
        scn = self.scenario
        settings = scn.settings[0] if len(set(scn.settings)) == 1 else list(scn.settings)
        outcomes = scn.outcomes[0] if len(set(scn.outcomes)) == 1 else list(scn.outcomes)
        table = {}
        for x in itertools.product(*(range(m) for m in scn.settings)):
            inner = {}
            for a in itertools.product(*(range(o) for o in scn.outcomes)):
                inner[",".join(str(v) for v in a)] = float(self.table[x + a])
            table[",".join(str(v) for v in x)] = inner
        return {
            "parties": scn.parties,
            "settings": settings,
            "outcomes": outcomes,
            "table": table,
        }


def _per_party(value, parties: int, name: str) -> tuple[int, ...]:
    if isinstance(value, int):
        return (value,) * parties
    out = tuple(int(v) for v in value)
    if len(out) != parties:
        raise ValueError(f"{name} must be a single integer or one per party")
    return out


def box_from_json_dict(data: dict) -> Box:
    try:
        parties = int(data["parties"])
        settings = _per_party(data["settings"], parties, "settings")
        outcomes = _per_party(data["outcomes"], parties, "outcomes")
        scn = BellScenario(settings, outcomes)
        table = np.zeros(scn.table_shape())
        for x_key, inner in data["table"].items():
            x = tuple(int(tok) for tok in str(x_key).split(","))
            for a_key, p in inner.items():
                a = tuple(int(tok) for tok in str(a_key).split(","))
                table[x + a] = float(p)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"malformed box: {exc}") from exc
    box = Box(scn, table)
    box.validate(tol=1e-6)
    return box


def product_box(left: Box, right: Box) -> Box:
    """Independent side-by-side composition; left's parties come first."""
    p, q = left.scenario.parties, right.scenario.parties
    names = string.ascii_lowercase
    lx, la = names[:p], names[p : 2 * p]
    rx, ra = names[2 * p : 2 * p + q], names[2 * p + q : 2 * p + 2 * q]
    table = np.einsum(f"{lx}{la},{rx}{ra}->{lx}{rx}{la}{ra}", left.table, right.table)
    scn = BellScenario(
        left.scenario.settings + right.scenario.settings,
        left.scenario.outcomes + right.scenario.outcomes,
    )
    return Box(scn, table)


def is_nosignaling(box: Box, tol: float = 1e-9) -> tuple[bool, dict | None]:
    """Does every party's outcome marginal ignore the other choices?

    Checks, for each party, that the distribution of the remaining parties'
    outcomes is independent of that party's setting.
    """
    p = box.scenario.parties
    for i in range(p):
        marg = box.table.sum(axis=p + i)
        ref = np.take(marg, 0, axis=i)
        for s in range(1, box.scenario.settings[i]):
            diff = float(np.max(np.abs(np.take(marg, s, axis=i) - ref)))
            if diff > tol:
                return False, {
                    "party": i,
                    "settings_compared": [0, s],
                    "max_difference": diff,
                }
    return True, None


def _strategies(scn: BellScenario) -> list[tuple[tuple[int, ...], ...]]:
    per_party = []
    for m, o in zip(scn.settings, scn.outcomes):
        per_party.append(list(itertools.product(range(o), repeat=m)))
    return list(itertools.product(*per_party))


def is_local(box: Box, tol: float = 1e-7) -> tuple[bool, dict]:
    """LP membership in the convex hull of deterministic strategies.

    Returns (True, {"weights": ...}) with a local model, or (False,
    certificate) where the certificate is a Bell functional nonpositive on
    every deterministic strategy yet positive on the box.
    """
    scn = box.scenario
    count = 1
    for m, o in zip(scn.settings, scn.outcomes):
        count *= o**m
    if count > _MAX_STRATEGIES:
        raise ValueError(f"{count} deterministic strategies exceed the supported size")
    strategies = _strategies(scn)
    xs = list(itertools.product(*(range(m) for m in scn.settings)))
    outs = list(itertools.product(*(range(o) for o in scn.outcomes)))

    rows = []
    rhs = []
    row_names = []
    for x in xs:
        for a in outs:
            row = np.fromiter(
                (
                    1.0 if all(strat[i][x[i]] == a[i] for i in range(scn.parties)) else 0.0
                    for strat in strategies
                ),
                dtype=float,
                count=len(strategies),
            )
            rows.append(row)
            rhs.append(box.prob(x, a))
            row_names.append((x, a))
    rows.append(np.ones(len(strategies)))
    rhs.append(1.0)

    a_mat = np.array(rows)
    lp = LinearProgram(
        c=np.zeros(len(strategies)),
        a=a_mat,
        senses=("=",) * len(rows),
        b=np.array(rhs),
        bounds=((0.0, 1.0),) * len(strategies),
        maximize=False,
    )
    res = lp_solve(lp)
    if res.status == "optimal":
        weights = {
            strategies[col]: float(w) for col, w in enumerate(res.x) if w > tol
        }
        return True, {"weights": weights}

    lp2 = LinearProgram(
        c=np.array(rhs),
        a=a_mat.T,
        senses=("<=",) * len(strategies),
        b=np.zeros(len(strategies)),
        bounds=((-1.0, 1.0),) * len(rows),
        maximize=True,
    )
    res2 = lp_solve(lp2)
    if res2.status != "optimal" or res2.value <= tol:
        raise RuntimeError("nonlocal box without a Farkas certificate")
    coeffs = {}
    for (x, a), y in zip(row_names, res2.x[:-1]):
        if abs(y) > tol:
            xk = ",".join(str(v) for v in x)
            coeffs.setdefault(xk, {})[",".join(str(v) for v in a)] = float(y)
    return False, {
        "coefficients": coeffs,
        "constant": float(res2.x[-1]),
        "margin": float(res2.value),
    }


def _require_scenario(box: Box, settings: tuple[int, ...], outcomes: tuple[int, ...], what: str) -> None:
    if box.scenario.settings != settings or box.scenario.outcomes != outcomes:
        raise ValueError(f"{what} needs scenario settings={settings} outcomes={outcomes}, got {box.scenario}")


def correlator(box: Box, x: int, y: int) -> float:
    """<A_x B_y> for a two-party binary box with outcomes {0, 1} read as {+1, -1}."""
    total = 0.0
    for a in range(2):
        for b in range(2):
            total += (-1) ** (a + b) * box.prob((x, y), (a, b))
    return total


def chsh_value(box: Box) -> float:
    """E(0,0) + E(0,1) + E(1,0) - E(1,1)."""
    _require_scenario(box, (2, 2), (2, 2), "CHSH")
    return correlator(box, 0, 0) + correlator(box, 0, 1) + correlator(box, 1, 0) - correlator(box, 1, 1)


def gyni_value(box: Box) -> float:
    """p(000|000) + p(110|011) + p(011|101) + p(101|110)."""
    _require_scenario(box, (2, 2, 2), (2, 2, 2), "GYNI")
    return (
        box.prob((0, 0, 0), (0, 0, 0))
        + box.prob((0, 1, 1), (1, 1, 0))
        + box.prob((1, 0, 1), (0, 1, 1))
        + box.prob((1, 1, 0), (1, 0, 1))
    )


def pr_box(d: int = 2, e: float = 1.0) -> Box:
    """Noisy d-outcome PR box: weight e on the correlated part
    (b - a = xy mod d) and 1-e on uniform noise.  Alice has d settings,
    Bob two."""
    if d < 2:
        raise ValueError("need d >= 2")
    if not 0.0 <= e <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    scn = BellScenario((d, 2), (d, d))
    table = np.full(scn.table_shape(), (1.0 - e) / (d * d))
    for x in range(d):
        for y in range(2):
            for a in range(d):
                b = (a + x * y) % d
                table[x, y, a, b] += e / d
    return Box(scn, table)


def uniform_box(scenario: BellScenario) -> Box:
    norm = 1.0
    for o in scenario.outcomes:
        norm *= o
    return Box(scenario, np.full(scenario.table_shape(), 1.0 / norm))


def deterministic_box(scenario: BellScenario, strategy) -> Box:
    """Box from one deterministic strategy: strategy[i][x_i] is party i's
    outcome under setting x_i."""
    table = np.zeros(scenario.table_shape())
    for x in itertools.product(*(range(m) for m in scenario.settings)):
        a = tuple(strategy[i][x[i]] for i in range(scenario.parties))
        table[x + a] = 1.0
    return Box(scenario, table)


# ---------------------------------------------------------------------------
# the two-copy local-orthogonality activation

# events (outputs | inputs) on four parties; parties 1,2 hold copy one and
# parties 3,4 copy two
LO_EVENTS: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = (
    ((0, 0, 0, 0), (0, 0, 0, 0)),
    ((1, 1, 1, 0), (0, 0, 1, 1)),
    ((0, 0, 1, 1), (0, 1, 1, 0)),
    ((1, 1, 0, 1), (1, 0, 1, 1)),
    ((0, 1, 1, 1), (1, 1, 0, 1)),
)


def _locally_orthogonal(e1, e2) -> bool:
    (a1, x1), (a2, x2) = e1, e2
    return any(u == v and p != q for u, v, p, q in zip(x1, x2, a1, a2))


def local_orthogonality_two_pr(copy: Box | None = None) -> float:
    """Sum of the five fixed event probabilities on two independent copies
    of a bipartite binary box (default: the perfect PR box).

    The events are pairwise locally orthogonal; that is re-verified on every
    call as a guard against party-order mistakes.
    """
    for i in range(len(LO_EVENTS)):
        for j in range(i + 1, len(LO_EVENTS)):
            if not _locally_orthogonal(LO_EVENTS[i], LO_EVENTS[j]):
                raise RuntimeError(f"events {i} and {j} are not locally orthogonal")
    if copy is None:
        copy = pr_box(2, 1.0)
    _require_scenario(copy, (2, 2), (2, 2), "two-copy composition")
    joint = product_box(copy, copy)
    return float(sum(joint.prob(x, a) for a, x in LO_EVENTS))


# ---------------------------------------------------------------------------
# protocols


@dataclass
class ProtocolResult:
    success: float
    mutual_information: float
    message_bits: int
    trials: int
    seed: int | None
    details: dict = field(default_factory=dict)


def _mutual_information_bits(joint: np.ndarray) -> float:
    joint = np.asarray(joint, dtype=float)
    total = joint.sum()
    if total <= 0:
        return 0.0
    joint = joint / total
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    info = 0.0
    for i in range(joint.shape[0]):
        for j in range(joint.shape[1]):
            p = joint[i, j]
            if p > 0:
                info += p * math.log2(p / (px[i] * py[j]))
    return info


def van_dam_ic(seed: int, trials: int, e: float = 1.0) -> ProtocolResult:
    """Bob learns either of Alice's two bits through one PR-box use plus a
    single classical bit.

    Alice inputs the XOR of her bits and sends m = a0 + A; Bob inputs the
    index he wants and outputs m + B.  The reported mutual information
    I(a_0:guess|k=0) + I(a_1:guess|k=1) is computed exactly from the induced
    joint distribution; the success rate is a seeded simulation.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    box = pr_box(2, e)

    info = 0.0
    for k in (0, 1):
        joint = np.zeros((2, 2))
        for a0, a1 in itertools.product(range(2), repeat=2):
            x = a0 ^ a1
            data = (a0, a1)[k]
            for aa, bb in itertools.product(range(2), repeat=2):
                guess = (a0 ^ aa) ^ bb
                joint[data, guess] += 0.25 * box.prob((x, k), (aa, bb))
        info += _mutual_information_bits(joint)

    rng = np.random.default_rng(seed)
    flat = {
        (x, y): box.table[x, y].reshape(-1)
        for x in range(2)
        for y in range(2)
    }
    hits = 0
    for _ in range(trials):
        a0, a1, k = rng.integers(0, 2, size=3)
        x = a0 ^ a1
        idx = rng.choice(4, p=flat[(int(x), int(k))])
        aa, bb = divmod(int(idx), 2)
        guess = (a0 ^ aa) ^ bb
        if guess == (a0, a1)[k]:
            hits += 1
    return ProtocolResult(
        success=hits / trials,
        mutual_information=info,
        message_bits=1,
        trials=trials,
        seed=seed,
        details={"mixing": e},
    )


@dataclass
class NestedIcResult:
    success: float
    levels: int
    ic_violation_condition: bool


def nested_ic(d: int, e: float, levels: int) -> NestedIcResult:
    """Success probability of the depth-`levels` nested guessing protocol
    over noisy d-outcome boxes, by exact probability propagation.

    A level passes its value down undisturbed with probability e and
    replaces it with uniform noise otherwise, so q_k = e*q_{k-1} + (1-e)/d
    starting from q_0 = 1.  The flag reports the binary amplification
    condition 2e^2 > 1.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if levels < 1:
        raise ValueError("need at least one level")
    if not 0.0 <= e <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    q = 1.0
    for _ in range(levels):
        q = e * q + (1.0 - e) / d
    return NestedIcResult(success=q, levels=levels, ic_violation_condition=2.0 * e * e > 1.0)


@dataclass
class IpProtocolResult:
    result: int
    bits_communicated: int


def ip_one_bit_protocol(x, y, seed: int) -> IpProtocolResult:
    """Distributed inner product mod 2 with one classical bit.

    One perfect PR box per position: party outputs XOR to x_i*y_i, so the
    XOR of Alice's outputs (her single message bit) and Bob's outputs equals
    the inner product.
    """
    xbits = [int(v) for v in x]
    ybits = [int(v) for v in y]
    if len(xbits) != len(ybits):
        raise ValueError("bit strings must have equal length")
    if any(v not in (0, 1) for v in xbits + ybits):
        raise ValueError("inputs must be bits")
    rng = np.random.default_rng(seed)
    message = 0
    bob = 0
    for xi, yi in zip(xbits, ybits):
        a = int(rng.integers(0, 2))
        b = a ^ (xi & yi)
        message ^= a
        bob ^= b
    return IpProtocolResult(result=message ^ bob, bits_communicated=1)
