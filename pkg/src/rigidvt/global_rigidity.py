"""Global rigidity verdicts.

Negative answers come from Hendrickson's necessary conditions and carry a
checkable witness. Positive answers come from an equilibrium stress whose
stress matrix has rank ``n - d - 1`` at a random realization (the
Connelly / Gortler-Healy-Thurston criterion). The stress test has one-sided
error, so its failure is reported as inconclusive, never as a negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .automorphisms import is_vertex_transitive
from .errors import InputError, PropertyViolation, RigidityError
from .graph import Graph, min_vertex_cut
from .linalg import P, addmod, left_kernel_mod_p, mulmod, rank_mod_p, submod
from .rank import (
    DEFAULT_TRIALS,
    full_rank,
    is_rigid,
    non_redundant_edge,
    random_realization,
    rigidity_matrix,
)
from .seeding import derive_seed

DEFAULT_RETRIES = 5
_STREAM_STRESS = 11
_STREAM_RETRY = 12


class Status(str, Enum):
    CERTIFIED = "certified_globally_rigid"
    NOT = "certified_not_globally_rigid"
    INCONCLUSIVE = "inconclusive"


@dataclass
class GlobalRigidityVerdict:
    status: Status
    evidence: dict = field(default_factory=dict)
    seeds: list[int] = field(default_factory=list)
    ranks: list[int] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "evidence": dict(self.evidence),
            "seeds": list(self.seeds),
            "ranks": list(self.ranks),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GlobalRigidityVerdict":
        return cls(Status(data["status"]), dict(data["evidence"]), list(data["seeds"]), list(data["ranks"]))


@dataclass
class HendricksonResult:
    passes: bool
    condition: str | None = None  # "connectivity" or "redundant_rigidity"
    connectivity: int | None = None
    cut: list[int] | None = None
    edge: tuple[int, int] | None = None

    def witness(self) -> dict:
        if self.condition == "connectivity":
            return {"condition": "connectivity", "kappa": self.connectivity, "cut": self.cut}
        if self.condition == "redundant_rigidity":
            return {"condition": "redundant_rigidity", "edge": list(self.edge) if self.edge else None}
        if self.condition == "not_complete":
            return {"condition": "not_complete"}
        return {}


def hendrickson_check(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> HendricksonResult:
    """``(d+1)``-connectivity, then redundant rigidity."""
    if d < 1:
        raise InputError(f"dimension must be >= 1, got {d}")
    if G.n <= d + 1:
        if G.is_complete():
            return HendricksonResult(True, connectivity=G.n - 1)
        kappa, cut = min_vertex_cut(G)
        return HendricksonResult(False, "connectivity", kappa, sorted(cut or []))
    kappa, cut = min_vertex_cut(G)
    if kappa < d + 1:
        return HendricksonResult(False, "connectivity", kappa, sorted(cut) if cut is not None else None)
    if not is_rigid(G, d, trials, seed):
        # a non-rigid graph fails redundancy at every edge; name the first
        return HendricksonResult(False, "redundant_rigidity", kappa, edge=G.edges[0] if G.edges else None)
    e = non_redundant_edge(G, d, trials, seed)
    if e is not None:
        return HendricksonResult(False, "redundant_rigidity", kappa, edge=e)
    return HendricksonResult(True, connectivity=kappa)


def stress_matrix(G: Graph, omega: np.ndarray) -> np.ndarray:
    """``Omega[u, v] = -w_uv`` on edges, diagonal making rows sum to zero."""
    n = G.n
    S = np.zeros((n, n), dtype=np.uint64)
    for (u, v), w in zip(G.edges, omega):
        neg = submod(np.uint64(0), w)
        S[u, v] = neg
        S[v, u] = neg
        S[u, u] = addmod(S[u, u], w)
        S[v, v] = addmod(S[v, v], w)
    return S


def random_stress(G: Graph, d: int, seed: int) -> tuple[np.ndarray | None, int]:
    """A random equilibrium stress at a random realization, and the rank of
    the rigidity matrix there. ``None`` when the space of stresses is zero."""
    rho = random_realization(G, d, seed)
    R = rigidity_matrix(G, rho)
    r = rank_mod_p(R)
    K = left_kernel_mod_p(R)
    if K.shape[0] != G.m - r:
        raise RigidityError(f"stress space has dimension {K.shape[0]}, expected {G.m - r}")
    if K.shape[0] == 0:
        return None, r
    gen = np.random.default_rng(derive_seed(seed, _STREAM_STRESS))
    coeffs = gen.integers(1, P, size=K.shape[0], dtype=np.uint64)
    omega = np.zeros(G.m, dtype=np.uint64)
    for c, row in zip(coeffs, K):
        omega = addmod(omega, mulmod(row, c))
    # equilibrium: omega^T R == 0
    check = np.zeros(R.shape[1], dtype=np.uint64)
    for w, row in zip(omega, R):
        if w:
            check = addmod(check, mulmod(row, w))
    if check.any():
        raise RigidityError("computed stress is not in equilibrium")
    return omega, r


def stress_certificate(G: Graph, d: int, seed: int, trials: int = DEFAULT_TRIALS) -> GlobalRigidityVerdict:
    if G.n < d + 2:
        raise InputError(f"stress certificate needs n >= d+2 = {d + 2}, got {G.n}")
    target = G.n - d - 1
    if not is_rigid(G, d, trials, seed):
        return GlobalRigidityVerdict(Status.INCONCLUSIVE, {"reason": "not rigid"}, [seed])
    omega, r = random_stress(G, d, seed)
    if r < full_rank(G.n, d):
        return GlobalRigidityVerdict(
            Status.INCONCLUSIVE, {"reason": "realization not generic", "matrix_rank": r}, [seed]
        )
    if omega is None:
        return GlobalRigidityVerdict(
            Status.INCONCLUSIVE, {"reason": "no equilibrium stress", "stress_rank": 0}, [seed], [0]
        )
    sr = rank_mod_p(stress_matrix(G, omega))
    if sr > target:
        raise PropertyViolation(f"stress matrix rank {sr} exceeds n-d-1 = {target}")
    if sr == target:
        return GlobalRigidityVerdict(Status.CERTIFIED, {"seed": seed, "stress_rank": sr}, [seed], [sr])
    return GlobalRigidityVerdict(Status.INCONCLUSIVE, {"reason": "stress rank deficient", "stress_rank": sr}, [seed], [sr])


def global_rigidity_verdict(
    G: Graph,
    d: int,
    retries: int = DEFAULT_RETRIES,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> GlobalRigidityVerdict:
    if G.n < 1:
        raise InputError("empty graph")
    if G.n == 1 or (G.n <= d + 1 and G.is_complete()):
        return GlobalRigidityVerdict(Status.CERTIFIED, {"reason": "complete graph on at most d+1 vertices"})
    check = hendrickson_check(G, d, trials, seed)
    if not check.passes:
        return GlobalRigidityVerdict(Status.NOT, check.witness())
    if d == 1:
        return GlobalRigidityVerdict(Status.CERTIFIED, {"reason": "2-connected", "kappa": check.connectivity})
    seeds, ranks = [], []
    last: GlobalRigidityVerdict | None = None
    for i in range(retries):
        s = derive_seed(seed, _STREAM_RETRY, i)
        last = stress_certificate(G, d, s, trials)
        seeds.append(s)
        ranks.extend(last.ranks)
        if last.certified:
            last.evidence["kappa"] = check.connectivity
            last.seeds, last.ranks = seeds, ranks
            return last
    evidence = dict(last.evidence) if last else {}
    evidence["kappa"] = check.connectivity
    return GlobalRigidityVerdict(Status.INCONCLUSIVE, evidence, seeds, ranks)


def verify_not_witness(G: Graph, d: int, verdict: GlobalRigidityVerdict, trials: int = DEFAULT_TRIALS, seed: int = 1) -> bool:
    """Re-check a negative verdict's witness without the code that found it."""
    from .graph import separates
    from .rank import generic_rank

    ev = verdict.evidence
    if ev.get("condition") == "connectivity":
        cut = ev.get("cut") or []
        return len(cut) < d + 1 and (separates(G, cut) or G.n - len(cut) <= 1)
    if ev.get("condition") == "redundant_rigidity":
        e = tuple(ev["edge"])
        rest = [f for f in G.edges if f != e]
        return generic_rank(G, d, rest, trials, seed) < full_rank(G.n, d)
    return False


def watkins_bound(degree: int) -> int:
    return math.ceil(2 * degree / 3)


@dataclass
class TheoremProbe:
    d: int
    connected: bool
    vertex_transitive: bool
    degree: int
    degree_threshold: int
    hypotheses_hold: bool
    kappa: int | None
    watkins_bound: int
    watkins_ok: bool | None
    verdict: GlobalRigidityVerdict
    needs_attention: bool

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["verdict"] = self.verdict.to_dict()
        return out


def main_theorem_probe(
    G: Graph, d: int, retries: int = DEFAULT_RETRIES, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> TheoremProbe:
    """Check whether ``G`` is a connected vertex-transitive graph of degree at
    least ``d(d+1)``; if so, it must certify globally rigid."""
    connected = G.is_connected()
    vt = G.n > 0 and is_vertex_transitive(G)
    degree = min(G.degrees(), default=0)
    threshold = d * (d + 1)
    hyp = connected and vt and degree >= threshold
    kappa = min_vertex_cut(G)[0] if G.n >= 2 else None
    wb = watkins_bound(degree)
    watkins_ok = (kappa >= wb) if (connected and vt and kappa is not None) else None
    verdict = global_rigidity_verdict(G, d, retries, seed, trials)
    return TheoremProbe(
        d=d,
        connected=connected,
        vertex_transitive=vt,
        degree=degree,
        degree_threshold=threshold,
        hypotheses_hold=hyp,
        kappa=kappa,
        watkins_bound=wb,
        watkins_ok=watkins_ok,
        verdict=verdict,
        needs_attention=hyp and not verdict.certified,
    )
