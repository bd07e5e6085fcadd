"""Graph families and the tight non-globally-rigid vertex-transitive example.

The tight example for dimension ``d`` lives on ``Z_s x Z_k`` with
``s = d(d+1)`` and ``k = s - 1``: ``s`` disjoint copies of ``K_k`` (one per
first coordinate) plus a perfect matching between copies, giving a
``k``-regular graph. Vertex ``(i, j)`` is labelled ``i * k + j``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .automorphisms import is_vertex_transitive
from .errors import InputError, PropertyViolation, ValidationError
from .graph import Edge, Graph, lexicographic_product, maximal_cliques
from .rank import (
    DEFAULT_TRIALS,
    CliquePartition,
    full_rank,
    generic_rank,
    partition_rank_bound,
)

KINDS = (
    "complete",
    "cycle",
    "circulant",
    "complete_bipartite",
    "lexicographic_product",
    "tight_counterexample",
    "clique_matching",
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")

    def __str__(self) -> str:
        return format_family_spec(self)


@dataclass
class Construction:
    spec: FamilySpec
    graph: Graph
    copies: list[list[int]] | None = None
    loose_edges: list[Edge] | None = None
    notes: list[str] = field(default_factory=list)

    def provenance(self) -> dict:
        return {
            "spec": str(self.spec),
            "n": self.graph.n,
            "m": self.graph.m,
            "copies": self.copies,
            "loose_edges": [list(e) for e in self.loose_edges] if self.loose_edges is not None else None,
            "notes": list(self.notes),
        }


# --- plain families ------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def circulant_graph(n: int, connections: Sequence[int]) -> Graph:
    conn = sorted(set(int(c) for c in connections))
    if not conn or any(c < 1 or c > n // 2 for c in conn):
        raise InputError(f"circulant connection set must lie in 1..{n // 2}, got {conn}")
    return Graph.from_edges(((i, (i + c) % n) for i in range(n) for c in conn), n)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to the cycle ``1..rim``."""
    return Graph(rim + 1, [(0, i) for i in range(1, rim + 1)] + [(i, i % rim + 1) for i in range(1, rim + 1)])


# --- clique copies joined by a matching ----------------------------------------


def clique_matching_graph(s: int, k: int, matching: Sequence[tuple[tuple[int, int], tuple[int, int]]]) -> Construction:
    """``s`` disjoint copies of ``K_k`` plus the given pairs between them."""
    if s < 1 or k < 1:
        raise InputError("clique_matching needs s >= 1 and k >= 1")
    copies = [[i * k + j for j in range(k)] for i in range(s)]
    clique_edges = [e for c in copies for e in itertools.combinations(c, 2)]
    loose = []
    for (a, x), (b, y) in matching:
        if not (0 <= a < s and 0 <= b < s and 0 <= x < k and 0 <= y < k):
            raise InputError(f"matching pair ({a},{x})-({b},{y}) out of range")
        if a == b:
            raise ValidationError("a", f"matching pair ({a},{x})-({b},{y}) lies inside copy {a}")
        loose.append((a * k + x, b * k + y))
    try:
        G = Graph(s * k, clique_edges + loose)
    except InputError as exc:
        raise ValidationError("a", str(exc)) from exc
    spec = FamilySpec("clique_matching", {"s": s, "k": k, "matching": [list(map(list, p)) for p in matching]})
    return Construction(spec, G, copies, sorted(tuple(sorted(e)) for e in loose))


def printed_matching(d: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """``{(i, j), (j+1, i)}`` for ``i in 1..k``, ``j in i..k``, read mod ``(s, k)``."""
    s = d * (d + 1)
    k = s - 1
    return [((i % s, j % k), ((j + 1) % s, i % k)) for i in range(1, k + 1) for j in range(i, k + 1)]


def truncation_matching(d: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """One edge between every two copies ``a < b``: ``(a, b-1)`` to ``(b, a)``.

    Copy ``a`` uses slot ``j`` for partner copy ``j`` if ``j < a`` and ``j + 1``
    otherwise, so ``Sym(s)`` permuting copies acts on the result and it is
    vertex-transitive.
    """
    s = d * (d + 1)
    return [((a, b - 1), (b, a)) for a in range(s) for b in range(a + 1, s)]


def tight_counterexample(d: int) -> Construction:
    if d < 2:
        raise InputError(f"tight counterexample needs d >= 2, got {d}")
    s = d * (d + 1)
    k = s - 1
    spec = FamilySpec("tight_counterexample", {"d": d})
    failures = []
    for name, rule in (("printed", printed_matching), ("fallback", truncation_matching)):
        try:
            built = clique_matching_graph(s, k, rule(d))
            report = verify_counterexample_structure(built.graph, d, built.copies)
        except ValidationError as exc:
            failures.append(f"{name} rule failed check {exc.check}")
            continue
        if report.passed:
            built.spec = spec
            built.notes = failures + [f"matching rule: {name}"]
            return built
        failures.append(f"{name} rule failed checks {','.join(report.failed)}")
    raise ValidationError(failures[-1].split()[-1], "; ".join(failures))


# --- structural validation -----------------------------------------------------


@dataclass
class StructureReport:
    d: int
    s: int
    k: int
    checks: dict[str, bool]
    details: dict[str, str] = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return [c for c, ok in self.checks.items() if not ok]

    @property
    def passed(self) -> bool:
        return not self.failed

    def require(self) -> "StructureReport":
        if self.failed:
            first = self.failed[0]
            raise ValidationError(first, self.details.get(first, "check failed"))
        return self

    def to_dict(self) -> dict:
        return {"d": self.d, "s": self.s, "k": self.k, "checks": dict(self.checks), "details": dict(self.details)}


def infer_clique_copies(G: Graph, size: int | None = None) -> list[list[int]] | None:
    """Vertex-disjoint maximal cliques of one size covering ``V(G)``, if the
    maximal cliques of that size happen to partition the vertices."""
    cliques = maximal_cliques(G)
    if size is None:
        size = max((len(c) for c in cliques), default=0)
    chosen = sorted(sorted(c) for c in cliques if len(c) == size)
    seen: set[int] = set()
    for c in chosen:
        if seen & set(c):
            return None
        seen |= set(c)
    return chosen if len(seen) == G.n else None


def loose_edges(G: Graph, copies: Sequence[Sequence[int]]) -> list[Edge]:
    owner = {v: i for i, c in enumerate(copies) for v in c}
    return [e for e in G.edges if owner.get(e[0], -1) != owner.get(e[1], -2)]


def verify_counterexample_structure(
    G: Graph, d: int, copies: Sequence[Sequence[int]] | None = None
) -> StructureReport:
    """Checks (a) disjoint spanning ``K_k`` copies, (b) ``k``-regularity with
    ``k = d(d+1) - 1``, (c) one loose edge per vertex, (d) vertex-transitivity,
    (e) connectivity."""
    k = d * (d + 1) - 1
    if copies is None:
        copies = infer_clique_copies(G, k) or []
    copies = [list(c) for c in copies]
    s = len(copies)
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    flat = [v for c in copies for v in c]
    sizes = {len(c) for c in copies}
    ok_a = bool(copies) and len(flat) == len(set(flat)) and set(flat) == set(G.vertices)
    ok_a = ok_a and all(G.has_edge(u, v) for c in copies for u, v in itertools.combinations(c, 2))
    if ok_a and sizes != {k}:
        details["a"] = f"copies have sizes {sorted(sizes)}, expected {k}"
        ok_a = False
    elif not ok_a:
        details["a"] = "copies are not disjoint spanning cliques"
    checks["a"] = ok_a

    degs = set(G.degrees())
    checks["b"] = degs == {k}
    if not checks["b"]:
        details["b"] = f"degrees {sorted(degs)}, expected {k}-regular"

    if ok_a:
        loose = loose_edges(G, copies)
        per_vertex = [0] * G.n
        for u, v in loose:
            per_vertex[u] += 1
            per_vertex[v] += 1
        checks["c"] = set(per_vertex) == {1} and 2 * len(loose) == G.n
        if not checks["c"]:
            details["c"] = f"loose-edge degrees {sorted(set(per_vertex))}"
    else:
        checks["c"] = False
        details["c"] = "no valid copies"

    checks["d"] = G.n > 0 and is_vertex_transitive(G)
    if not checks["d"]:
        details["d"] = "not vertex-transitive"
    checks["e"] = G.n > 0 and G.is_connected()
    if not checks["e"]:
        details["e"] = f"{len(G.components())} components"
    return StructureReport(d, s, k, checks, details)


# --- tightness -----------------------------------------------------------------


@dataclass
class TightnessReport:
    d: int
    k: int
    s: int
    loose_count: int
    bound: int
    formula_bound: int
    target: int
    witness_edge: Edge
    rank_minus_e: int
    chain_guaranteed: bool
    k_regular: bool
    vertex_transitive: bool
    spanning_cliques: bool
    not_rigid_minus_e: bool
    not_globally_rigid: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["witness_edge"] = list(self.witness_edge)
        out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TightnessReport":
        data = dict(data)
        data["witness_edge"] = tuple(data["witness_edge"])
        return cls(**data)


def tightness_formula_bound(d: int, k: int, s: int) -> int:
    """``ks/2 - 1 + s (dk - C(d+1, 2))``."""
    return k * s // 2 - 1 + s * (d * k - d * (d + 1) // 2)


def verify_tightness(
    G: Graph,
    d: int,
    copies: Sequence[Sequence[int]] | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> TightnessReport:
    """Remove the least loose edge ``e`` and show ``G - e`` is not rigid by
    bounding ``r(E - e)`` with the clique partition."""
    if d < 2:
        raise InputError(f"tightness needs d >= 2, got {d}")
    structure = verify_counterexample_structure(G, d, copies)
    if copies is None:
        copies = infer_clique_copies(G)
    if not copies:
        raise ValidationError("a", "no spanning clique copies found")
    copies = [list(c) for c in copies]
    s = len(copies)
    k = len(copies[0])
    if k < d + 1:
        raise ValidationError("a", f"copies of size {k} are smaller than d+1={d + 1}")
    loose = loose_edges(G, copies)
    if not loose:
        raise ValidationError("c", "no edges outside the clique copies")
    e = min(loose)
    rest = [f for f in G.edges if f != e]
    partition = CliquePartition(
        [f for f in loose if f != e], [list(itertools.combinations(sorted(c), 2)) for c in copies]
    )
    H = Graph(G.n, rest)
    bound = partition_rank_bound(partition, H, d)
    target = full_rank(G.n, d)
    rank = generic_rank(G, d, rest, trials, seed)
    if rank > bound:
        raise PropertyViolation(f"rank of E - e is {rank}, above the partition bound {bound}")

    notes = []
    chain = structure.checks["b"] and structure.checks["c"] and k == d * (d + 1) - 1 and s >= d * (d + 1)
    formula = tightness_formula_bound(d, k, s)
    if chain:
        if formula != bound:
            raise PropertyViolation(f"formula bound {formula} differs from partition bound {bound}")
        if not bound < target:
            raise PropertyViolation(f"bound {bound} is not below the rigidity target {target}")
    else:
        notes.append("hypotheses of the bound chain not met; verdict rests on the measured rank only")
    not_rigid = rank < target
    return TightnessReport(
        d=d,
        k=k,
        s=s,
        loose_count=len(loose),
        bound=bound,
        formula_bound=formula,
        target=target,
        witness_edge=e,
        rank_minus_e=rank,
        chain_guaranteed=chain,
        k_regular=structure.checks["b"],
        vertex_transitive=structure.checks["d"],
        spanning_cliques=structure.checks["a"],
        not_rigid_minus_e=not_rigid,
        not_globally_rigid=not_rigid,
        notes=notes,
    )


# --- spec strings --------------------------------------------------------------

_FACTOR = re.compile(r"^(?P<kind>[a-z_-]+)(?::(?P<args>.*))?$")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _int(params: dict, key: str) -> int:
    if key not in params:
        raise InputError(f"missing parameter {key}=")
    try:
        return int(params[key])
    except (TypeError, ValueError) as exc:
        raise InputError(f"parameter {key} must be an integer, got {params[key]!r}") from exc


def _parse_factor(text: str) -> FamilySpec:
    # compact factor syntax: complete:3, cycle:5, circulant:13:1,2,3, complete-bipartite:3:3
    m = _FACTOR.match(text.strip())
    if not m:
        raise InputError(f"bad factor {text!r}")
    kind = m.group("kind").replace("-", "_")
    args = (m.group("args") or "").split(":") if m.group("args") else []
    if kind in ("complete", "cycle") and len(args) == 1:
        return FamilySpec(kind, {"n": int(args[0])})
    if kind == "circulant" and len(args) == 2:
        return FamilySpec(kind, {"n": int(args[0]), "s": _ints(args[1])})
    if kind == "complete_bipartite" and len(args) == 2:
        return FamilySpec(kind, {"a": int(args[0]), "b": int(args[1])})
    raise InputError(f"bad factor {text!r}")


def _format_factor(spec: FamilySpec) -> str:
    p = spec.params
    if spec.kind in ("complete", "cycle"):
        return f"{spec.kind}:{p['n']}"
    if spec.kind == "circulant":
        return f"circulant:{p['n']}:{','.join(map(str, p['s']))}"
    if spec.kind == "complete_bipartite":
        return f"complete-bipartite:{p['a']}:{p['b']}"
    raise InputError(f"{spec.kind} cannot be a product factor")


def parse_family_spec(text: str | Sequence[str]) -> FamilySpec:
    """Parse ``kind key=value ...``, e.g. ``tight-counterexample d=3`` or
    ``circulant n=13 s=1,2,3``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    if not tokens:
        raise InputError("empty family spec")
    kind = tokens[0].replace("-", "_")
    params: dict = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise InputError(f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        params[key] = value
    spec = FamilySpec(kind, {})
    if kind in ("complete", "cycle"):
        parsed = {"n": _int(params, "n")}
    elif kind == "circulant":
        if "s" not in params:
            raise InputError("missing parameter s=")
        parsed = {"n": _int(params, "n"), "s": _ints(params["s"])}
    elif kind == "complete_bipartite":
        parsed = {"a": _int(params, "a"), "b": _int(params, "b")}
    elif kind == "tight_counterexample":
        parsed = {"d": _int(params, "d")}
    elif kind == "lexicographic_product":
        if "g" not in params or "h" not in params:
            raise InputError("lexicographic-product needs g=<factor> h=<factor>")
        parsed = {"g": _parse_factor(params["g"]), "h": _parse_factor(params["h"])}
    else:  # clique_matching
        pairs = []
        for item in params.get("matching", "").split(","):
            if not item:
                continue
            try:
                left, right = item.split("-")
                a, x = map(int, left.split(":"))
                b, y = map(int, right.split(":"))
            except ValueError as exc:
                raise InputError(f"bad matching pair {item!r}; use copy:slot-copy:slot") from exc
            pairs.append([[a, x], [b, y]])
        parsed = {"s": _int(params, "s"), "k": _int(params, "k"), "matching": pairs}
    spec = FamilySpec(kind, parsed)
    validate_family_spec(spec)
    return spec


def format_family_spec(spec: FamilySpec) -> str:
    p = spec.params
    name = spec.kind.replace("_", "-")
    if spec.kind == "lexicographic_product":
        return f"{name} g={_format_factor(p['g'])} h={_format_factor(p['h'])}"
    if spec.kind == "circulant":
        return f"{name} n={p['n']} s={','.join(map(str, p['s']))}"
    if spec.kind == "clique_matching":
        pairs = ",".join(f"{a}:{x}-{b}:{y}" for (a, x), (b, y) in p["matching"])
        return f"{name} s={p['s']} k={p['k']} matching={pairs}"
    return " ".join([name] + [f"{key}={value}" for key, value in p.items()])


def validate_family_spec(spec: FamilySpec) -> None:
    p = spec.params
    if spec.kind == "complete" and p["n"] < 1:
        raise InputError("complete graph needs n >= 1")
    if spec.kind == "cycle" and p["n"] < 3:
        raise InputError("cycle needs n >= 3")
    if spec.kind == "circulant":
        n = p["n"]
        if n < 2 or not p["s"] or any(c < 1 or c > n // 2 for c in p["s"]):
            raise InputError(f"circulant connection set must be a nonempty subset of 1..{n // 2}")
    if spec.kind == "complete_bipartite" and (p["a"] < 1 or p["b"] < 1):
        raise InputError("complete bipartite graph needs positive part sizes")
    if spec.kind == "tight_counterexample" and p["d"] < 2:
        raise InputError("tight counterexample needs d >= 2")
    if spec.kind == "lexicographic_product":
        validate_family_spec(p["g"])
        validate_family_spec(p["h"])


def build(spec: FamilySpec) -> Construction:
    validate_family_spec(spec)
    p = spec.params
    if spec.kind == "complete":
        return Construction(spec, complete_graph(p["n"]))
    if spec.kind == "cycle":
        return Construction(spec, cycle_graph(p["n"]))
    if spec.kind == "circulant":
        return Construction(spec, circulant_graph(p["n"], p["s"]))
    if spec.kind == "complete_bipartite":
        return Construction(spec, complete_bipartite_graph(p["a"], p["b"]))
    if spec.kind == "lexicographic_product":
        return Construction(spec, lexicographic_product(construct(p["g"]), construct(p["h"])))
    if spec.kind == "tight_counterexample":
        return tight_counterexample(p["d"])
    built = clique_matching_graph(p["s"], p["k"], [tuple(map(tuple, pair)) for pair in p["matching"]])
    built.spec = spec
    return built


def construct(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    return build(spec).graph

