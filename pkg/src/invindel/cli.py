"""Top-level distance assembly and the command-line interface."""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from dataclasses import dataclass, field

from . import components as comp_mod
from . import diagram as diag_mod
from .components import TaggedTree, tagged_tree_for_pair
from .errors import BudgetExceeded, InvindelError
from .genome import (
    CIRCULAR,
    LINEAR,
    Chromosome,
    GenomePair,
    cap_linear_pair,
    classify_markers,
    read_pair_file,
)
from .oracle import (
    OracleBudget,
    brute_force_distance,
    brute_force_tau,
    random_genome_pair,
    random_residual_tree,
    random_tagged_tree,
)
from .reduction import ResidualResult, compute_residual
from .residual import known_compositions, optimal_cover_of_residual
from .treecover import Cover, analyze_topology, tau_all_clean, tau_shared_tag


@dataclass
class DistanceReport:
    distance: int
    g_count: int
    cycles: int
    indel_potential_sum: int
    tau_star: int
    anchor: str | None
    rotated: bool = False
    solo_leaf: list[int] | None = None
    cover: list[dict] = field(default_factory=list)
    reduction_steps: list[dict] = field(default_factory=list)
    case_trace: list[str] = field(default_factory=list)
    capping: str | None = None

    def to_dict(self) -> dict:
        return {
            "distance": self.distance,
            "g_count": self.g_count,
            "cycles": self.cycles,
            "indel_potential_sum": self.indel_potential_sum,
            "tau_star": self.tau_star,
            "anchor": self.anchor,
            "rotated": self.rotated,
            "solo_leaf": self.solo_leaf,
            "cover": self.cover,
            "reduction_steps": self.reduction_steps,
            "case_trace": self.case_trace,
            "capping": self.capping,
        }


def tau_star(tree: TaggedTree) -> tuple[int, Cover, ResidualResult | None, list[str]]:
    """Minimum cover cost of a tagged tree with a certifying cover."""
    if tree.is_empty:
        return 0, Cover(), None, []
    leaves = tree.leaves()
    shared = frozenset.intersection(*(tree.tags(u) for u in leaves))
    if shared:
        cost, cover = tau_shared_tag(tree)
        cover.validate(tree)
        return cost, cover, None, ["shared-tag"]
    if all(not tree.tags(u) for u in leaves):
        cost, cover = tau_all_clean(tree)
        cover.validate(tree)
        return cost, cover, None, ["all-clean"]
    res = compute_residual(tree)
    cover = res.full_cover()
    cover.validate(tree)
    if cover.total_cost != res.total_cost:
        raise InvindelError("cover cost mismatch against reduction accounting")
    return res.total_cost, cover, res, res.case_trace


def _trivial_report(a: Chromosome, b: Chromosome) -> DistanceReport:
    """At most one common marker: delete the exclusive content of one
    chromosome at once and insert the other's at once."""
    na, nb = a.names(), b.names()
    common = na & nb
    distance = (1 if na - common else 0) + (1 if nb - common else 0)
    return DistanceReport(
        distance=distance,
        g_count=len(common),
        cycles=len(common),
        indel_potential_sum=distance,
        tau_star=0,
        anchor=None,
        case_trace=["trivial"],
    )


def compute_distance(pair: GenomePair, anchor: str | None = None) -> DistanceReport:
    if len(pair.common) <= 1:
        return _trivial_report(pair.a, pair.b)
    diagram, comps, chained, tagged, rotated = tagged_tree_for_pair(pair, anchor)
    tau, cover, res, trace = tau_star(tagged)
    lam = diagram.indel_potential_sum()
    distance = diagram.g_count - diagram.c + lam + tau
    if distance < diagram.g_count - diagram.c + lam:
        raise InvindelError("negative extra cover cost")

    def comps_of(node: int) -> list[int]:
        return sorted(tagged.nodes[node].src)

    cover_dicts = [
        {"endpoints": [comps_of(p.u), comps_of(p.v)], "kind": p.kind, "cost": p.cost}
        for p in cover.paths
    ]
    steps = []
    solo = None
    if res is not None:
        steps = [
            {
                "kind": s.kind,
                "path": [comps_of(s.path[0]), comps_of(s.path[1])],
                "cost": s.cost,
                "leaf_class": s.leaf_class,
            }
            for s in res.steps
        ]
        for p in cover.paths:
            if p.kind == "short" and not tagged.tags(p.u):
                solo = comps_of(p.u)
                break
    return DistanceReport(
        distance=distance,
        g_count=diagram.g_count,
        cycles=diagram.c,
        indel_potential_sum=lam,
        tau_star=tau,
        anchor=diagram.anchor,
        rotated=rotated,
        solo_leaf=solo,
        cover=cover_dicts,
        reduction_steps=steps,
        case_trace=trace,
    )


def distance_report(
    a: Chromosome, b: Chromosome, anchor: str | None = None
) -> DistanceReport:
    """Distance between two chromosomes, handling the trivial regime and
    linear capping."""
    common = a.names() & b.names()
    if len(common) <= 1:
        return _trivial_report(a, b)
    if a.shape == LINEAR or b.shape == LINEAR:
        if a.shape != LINEAR or b.shape != LINEAR:
            raise InvindelError("both chromosomes must share the same shape")
        pair = classify_markers(a, b)
        best = None
        for i, capped in enumerate(cap_linear_pair(pair)):
            rep = compute_distance(capped, anchor)
            rep.capping = "as-read" if i == 0 else "flipped"
            if best is None or rep.distance < best.distance:
                best = rep
        return best
    return compute_distance(classify_markers(a, b), anchor)


# ---------------------------------------------------------------------------
# Commands


def _emit_traces(args, pair: GenomePair) -> None:
    wanted = set(args.trace or [])
    if "all" in wanted:
        wanted = {"diagram", "tree", "topology", "reduction", "cover"}
    if not wanted:
        return
    diagram, comps, chained, tagged, _ = tagged_tree_for_pair(pair, args.anchor)
    if "diagram" in wanted:
        print("== diagram ==")
        print(diag_mod.format_cycle_table(diagram))
    if "tree" in wanted:
        print("== chained tree ==")
        print(comp_mod.format_chained_tree(chained))
        print("== tagged tree ==")
        print(comp_mod.format_tagged_tree(tagged))
        print(comp_mod.format_tagged_tree_dot(tagged))
    if "topology" in wanted and not tagged.is_empty:
        print("== topology ==")
        report = analyze_topology(tagged)
        print(f"composition: {report.composition}")
        for cls, nodes in sorted(report.leaf_classes.items()):
            iso = "isolated" if report.isolated[cls] else "non-isolated"
            print(f"  class {cls}: leaves {nodes}, {iso}")
        for (x, y), kind in sorted(report.links.items()):
            print(f"  link {x}|{y}: {kind}")
        for (src, tag, host), node in sorted(report.mates.items()):
            print(f"  {tag}-mate for {src} at extended {host}: node {node}")
        print(f"  solo candidates: {report.solo_candidates}")
        print(
            f"  fully co-rooted: {report.fully_corooted}, "
            f"fully separated: {report.fully_separated}"
        )
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    if "reduction" in wanted or "cover" in wanted:
        tau, cover, res, trace = tau_star(tagged)
        if "reduction" in wanted:
            print("== reduction ==")
            running = 0
            if res is not None:
                for s in res.steps:
                    running += s.cost
                    print(f"  {s.kind} on {s.leaf_class}: path {s.path}, cost {s.cost}, running {running}")
            print(f"  residual lookup: {trace}")
        if "cover" in wanted:
            print("== cover ==")
            print(f"  cases: {trace}")
            for p in cover.paths:
                print(f"  path {p.u}..{p.v} ({p.kind}), cost {p.cost}")
            print(f"  total: {tau}")


def _cmd_dist(args) -> int:
    a, b = read_pair_file(args.file)
    if args.linear:
        a = Chromosome(a.markers, LINEAR)
        b = Chromosome(b.markers, LINEAR)
    rep = distance_report(a, b, args.anchor)
    if args.trace and a.shape == CIRCULAR:
        common = a.names() & b.names()
        if len(common) > 1:
            _emit_traces(args, classify_markers(a, b))
    if args.oracle:
        common = a.names() & b.names()
        exclusive = (a.names() | b.names()) - common
        budget = OracleBudget(max_common=5, max_exclusive=3)
        if a.shape != CIRCULAR:
            print("oracle: skipped (linear input)", file=sys.stderr)
        elif len(common) <= budget.max_common and len(exclusive) <= budget.max_exclusive:
            pair = GenomePair(
                a, b, frozenset(common), a.names() - common, b.names() - common
            )
            try:
                exact = brute_force_distance(pair, budget)
            except BudgetExceeded:
                print("oracle: skipped (state budget exhausted)", file=sys.stderr)
            else:
                agree = "agree" if exact == rep.distance else f"DISAGREE (exact {exact})"
                print(f"oracle: {agree}", file=sys.stderr)
        else:
            print("oracle: skipped (instance above budget)", file=sys.stderr)
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=True))
    else:
        print(f"distance: {rep.distance}")
        print(
            f"common: {rep.g_count}  cycles: {rep.cycles}  "
            f"indel potential: {rep.indel_potential_sum}  extra cover: {rep.tau_star}"
        )
        if rep.anchor is not None:
            print(f"anchor: {rep.anchor}{' (rotated)' if rep.rotated else ''}")
        if rep.capping:
            print(f"capping: {rep.capping}")
    return 0


def _cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = 0

    trials = args.trials
    ok = 0
    for _ in range(trials):
        tree = random_tagged_tree(rng)
        want = brute_force_tau(tree)
        got = tau_star(tree)[0]
        ok += want == got
    print(f"tree covers: {ok}/{trials} agree")
    failures += trials - ok

    comps = known_compositions()
    ok = total = 0
    per_comp = max(1, trials // len(comps))
    budget = OracleBudget(max_tree_nodes=30)
    for comp in comps:
        for _ in range(per_comp):
            tree = random_residual_tree(comp, rng)
            want = brute_force_tau(tree, budget)
            got = optimal_cover_of_residual(tree)[0]
            total += 1
            ok += want == got
    print(f"residual lookups: {ok}/{total} agree")
    failures += total - ok

    ok = 0
    dist_trials = max(1, trials // 10)
    for _ in range(dist_trials):
        pair = random_genome_pair(rng, rng.randint(2, 4), rng.randint(0, 1), rng.randint(0, 1))
        want = brute_force_distance(pair)
        got = compute_distance(pair).distance
        ok += want == got
    print(f"distances: {ok}/{dist_trials} agree")
    failures += dist_trials - ok

    ok = 0
    anchor_trials = max(1, trials // 20)
    for _ in range(anchor_trials):
        pair = random_genome_pair(rng, rng.randint(2, 6), rng.randint(0, 2), rng.randint(0, 2))
        values = {
            compute_distance(pair, anchor=g).distance for g in sorted(pair.common)
        }
        ok += len(values) == 1
    print(f"anchor invariance: {ok}/{anchor_trials} agree")
    failures += anchor_trials - ok

    print("verify:", "PASS" if failures == 0 else f"FAIL ({failures})")
    return 0 if failures == 0 else 1


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    prev = None
    for n in sizes:
        times = []
        for _ in range(args.repeats):
            pair = random_genome_pair(rng, n, max(1, n // 100), max(1, n // 100))
            t0 = time.perf_counter()
            compute_distance(pair)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        ratio = "" if prev is None else f"  ratio {med / prev:.2f}"
        print(f"n={n}: median {med * 1000:.1f} ms{ratio}")
        prev = med
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invindel",
        description="Exact inversion-indel distance between two unichromosomal genomes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="compute the distance for a two-line genome file")
    p_dist.add_argument("file")
    p_dist.add_argument("--anchor", help="common marker at which to cut the circles")
    p_dist.add_argument("--linear", action="store_true", help="treat both chromosomes as linear")
    p_dist.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_dist.add_argument(
        "--trace",
        action="append",
        choices=["diagram", "tree", "topology", "reduction", "cover", "all"],
    )
    p_dist.add_argument(
        "--oracle", action="store_true", help="cross-check tiny instances by exhaustive search"
    )
    p_dist.set_defaults(func=_cmd_dist)

    p_verify = sub.add_parser("verify", help="run the randomized oracle-equivalence suites")
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_bench = sub.add_parser("bench", help="time the pipeline on random genomes")
    p_bench.add_argument("--sizes", default="1000,2000,4000,8000")
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvindelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
