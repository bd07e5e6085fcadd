"""Command-line front end.

Exit codes: 0 ok, 2 bad input, 3 resource limit, 4 failed structural
validation, 5 property violation (an engine bug).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .automorphisms import NODE_BUDGET, is_vertex_transitive
from .constructions import build, parse_family_spec, tight_counterexample, verify_tightness
from .errors import InputError, RigidityError
from .global_rigidity import DEFAULT_RETRIES, Status, main_theorem_probe
from .graph import MAX_CLIQUES, min_vertex_cut
from .io import emit_structured, emit_text, read_edge_list, write_edge_list, write_provenance
from .pi_subgraphs import find_dependent_pi_subgraph
from .rank import DEFAULT_TRIALS, is_redundantly_rigid, rank_report
from .seeding import SEED_MASK, derive_seed

EXIT_OK = 0


@dataclass
class RunConfig:
    d: int = 2
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    retries: int = DEFAULT_RETRIES
    node_budget: int = NODE_BUDGET
    clique_limit: int = MAX_CLIQUES
    pi_budget: int = 1000
    fmt: str = "text"

    def __post_init__(self):
        if self.d < 1:
            raise InputError("--dim must be >= 1")
        if self.trials < 1:
            raise InputError("--trials must be >= 1")
        if self.retries < 1:
            raise InputError("--retries must be >= 1")
        if self.pi_budget < 1:
            raise InputError("--budget must be >= 1")
        if not 0 <= self.seed <= SEED_MASK:
            raise InputError("--seed must fit in 64 bits")
        if self.fmt not in ("text", "structured"):
            raise InputError("--format must be text or structured")


def _config(args) -> RunConfig:
    return RunConfig(
        d=args.dim,
        seed=args.seed,
        trials=args.trials,
        retries=args.retries,
        pi_budget=args.budget,
        fmt=args.format,
    )


def _emit(doc: dict, cfg: RunConfig, out: str | None) -> None:
    text = emit_structured(doc) if cfg.fmt == "structured" else emit_text(doc)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def cmd_analyze(path: str, cfg: RunConfig, out: str | None = None) -> int:
    G = read_edge_list(path)
    d = cfg.d
    rep = rank_report(G, d, cfg.trials, derive_seed(cfg.seed, 1))
    redundant = G.m > 0 and is_redundantly_rigid(G, d, cfg.trials, derive_seed(cfg.seed, 2))
    kappa, cut = min_vertex_cut(G) if G.n >= 2 else (0, None)
    probe = main_theorem_probe(G, d, cfg.retries, derive_seed(cfg.seed, 3), cfg.trials)
    doc = {
        "command": "analyze",
        "input": str(path),
        "config": asdict(cfg),
        "rank": rep.to_dict(),
        "rigid": rep.rigid,
        "redundantly_rigid": redundant,
        "connectivity": {"kappa": kappa, "cut": sorted(cut) if cut is not None else None},
        "global_rigidity": probe.verdict.to_dict(),
        "theorem_probe": {k: v for k, v in probe.to_dict().items() if k != "verdict"},
    }
    _emit(doc, cfg, out)
    return EXIT_OK


def cmd_construct(spec_tokens: list[str], cfg: RunConfig, out: str | None = None) -> int:
    spec = parse_family_spec(spec_tokens)
    built = build(spec)
    G = built.graph
    degs = set(G.degrees())
    doc = {
        "command": "construct",
        "spec": str(spec),
        "n": G.n,
        "m": G.m,
        "regular": len(degs) <= 1,
        "degree": min(degs) if len(degs) == 1 else sorted(degs),
        "vertex_transitive": G.n > 0 and is_vertex_transitive(G, cfg.node_budget),
        "notes": built.notes,
    }
    if out:
        write_edge_list(G, out, comment=str(spec))
        doc["provenance"] = str(write_provenance(built.provenance(), out))
        doc["output"] = out
    _emit(doc, cfg, None)
    return EXIT_OK


def cmd_probe_pi(path: str, cfg: RunConfig, out: str | None = None) -> int:
    G = read_edge_list(path)
    if cfg.d < 2:
        raise InputError("ordering-induced subgraphs need --dim >= 2")
    res = find_dependent_pi_subgraph(G, cfg.d, cfg.pi_budget, cfg.seed, cfg.trials)
    doc = {"command": "probe-pi", "input": str(path), "config": asdict(cfg), **res.to_dict()}
    _emit(doc, cfg, out)
    return EXIT_OK


def cmd_verify_tightness(cfg: RunConfig, out: str | None = None) -> int:
    if cfg.d < 2:
        raise InputError("tightness example exists only for d >= 2")
    built = tight_counterexample(cfg.d)
    rep = verify_tightness(built.graph, cfg.d, built.copies, cfg.trials, cfg.seed)
    doc = {
        "command": "verify-tightness",
        "config": asdict(cfg),
        "n": built.graph.n,
        "m": built.graph.m,
        "notes": built.notes,
        "tightness": rep.to_dict(),
        "verdict": (Status.NOT if rep.not_globally_rigid else Status.INCONCLUSIVE).value,
    }
    if out:
        write_edge_list(built.graph, out, comment=str(built.spec))
        write_provenance(built.provenance(), out)
    _emit(doc, cfg, None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    common.add_argument("--budget", type=int, default=1000, help="pi-subgraph samples for probe-pi")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out")

    parser = argparse.ArgumentParser(prog="rigidvt", description="Generic rigidity and global rigidity of graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="rank, redundancy, connectivity and global rigidity")
    p.add_argument("path")
    p = sub.add_parser("construct", parents=[common], help="build a graph family, e.g. tight-counterexample d=2")
    p.add_argument("spec", nargs="+")
    p = sub.add_parser("probe-pi", parents=[common], help="search for a dependent ordering-induced subgraph")
    p.add_argument("path")
    sub.add_parser("verify-tightness", parents=[common], help="build and check the degree d(d+1)-1 example")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        if args.command == "analyze":
            return cmd_analyze(args.path, cfg, args.out)
        if args.command == "construct":
            return cmd_construct(args.spec, cfg, args.out)
        if args.command == "probe-pi":
            return cmd_probe_pi(args.path, cfg, args.out)
        return cmd_verify_tightness(cfg, args.out)
    except RigidityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
