"""Independent brute-force ground truths.

Two oracles back the whole artifact: an exhaustive minimum-cost cover
search on tagged trees, and a breadth-first search over genome states for
the full distance.  Both are deliberately simple and share no code with
the production paths they certify.  Random instance generators for the
fuzz suites live here as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

from .components import TaggedTree, contract
from .errors import BudgetExceeded
from .genome import Chromosome, GenomePair, Marker
from .treecover import path_cost


@dataclass(frozen=True)
class OracleBudget:
    max_tree_nodes: int = 12
    max_common: int = 4
    max_exclusive: int = 2
    max_states: int = 2_000_000


DEFAULT_BUDGET = OracleBudget()


# ---------------------------------------------------------------------------
# Exhaustive tree covers


def _cover_candidates(tree: TaggedTree, allow_bridges: bool) -> list[tuple[int, int]]:
    bads = tree.bad_nodes()
    bit = {b: i for i, b in enumerate(bads)}
    leaves = set(tree.leaves())
    ids = tree.node_ids()
    node_bit = {u: (1 << bit[u] if tree.is_bad(u) else 0) for u in ids}
    best_for_mask: dict[int, int] = {}
    for u in ids:
        # masks of bad nodes on every path out of u, by one traversal
        mask_to = {u: node_bit[u]}
        order = [u]
        parent = {u: None}
        for x in order:
            for y in tree.adj[x]:
                if y not in parent:
                    parent[y] = x
                    mask_to[y] = mask_to[x] | node_bit[y]
                    order.append(y)
        for v in ids:
            if v < u:
                continue
            if u == v:
                if not tree.is_bad(u):
                    continue
            elif not allow_bridges and u not in leaves and v not in leaves:
                continue
            mask = mask_to[v]
            if not mask:
                continue
            cost = path_cost(tree, u, v).cost
            if mask not in best_for_mask or cost < best_for_mask[mask]:
                best_for_mask[mask] = cost
    ranked = sorted(best_for_mask.items(), key=lambda mc: (mc[1], -bin(mc[0]).count("1")))
    kept: list[tuple[int, int]] = []
    for mask, cost in ranked:
        # drop candidates whose coverage is contained in a cheaper-or-equal one
        if any(mask & k_mask == mask and k_cost <= cost for k_mask, k_cost in kept):
            continue
        kept.append((mask, cost))
    return kept


def brute_force_tau(
    tree: TaggedTree, budget: OracleBudget = DEFAULT_BUDGET, allow_bridges: bool = True
) -> int:
    """Exact minimum cover cost by memoized search over uncovered bad sets."""
    if len(tree) > budget.max_tree_nodes:
        raise BudgetExceeded(f"{len(tree)} nodes exceeds {budget.max_tree_nodes}")
    bads = tree.bad_nodes()
    if not bads:
        return 0
    bit = {b: i for i, b in enumerate(bads)}
    leaf_mask = 0
    for u in tree.leaves():
        if tree.is_bad(u):
            leaf_mask |= 1 << bit[u]
    candidates = _cover_candidates(tree, allow_bridges)
    by_bit: list[list[tuple[int, int]]] = [[] for _ in bads]
    for mask, cost in candidates:
        for i in range(len(bads)):
            if mask >> i & 1:
                by_bit[i].append((mask, cost))
    memo: dict[int, int] = {0: 0}

    def solve(uncovered: int) -> int:
        got = memo.get(uncovered)
        if got is not None:
            return got
        low = (uncovered & -uncovered).bit_length() - 1
        best = None
        for mask, cost in by_bit[low]:
            sub = solve(uncovered & ~mask)
            total = cost + sub
            if best is None or total < best:
                best = total
        memo[uncovered] = best
        return best

    return solve((1 << len(bads)) - 1)


# ---------------------------------------------------------------------------
# Exhaustive genome distance

_SIGN = "-"


def _flip_token(tok: str) -> str:
    return tok[1:] if tok.startswith(_SIGN) else _SIGN + tok


def _tok_name(tok: str) -> str:
    return tok[1:] if tok.startswith(_SIGN) else tok


def _revflip(seq: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(_flip_token(t) for t in reversed(seq))


def canonical_tokens(seq: tuple[str, ...]) -> tuple[str, ...]:
    """Least rotation over both reading directions of a circular sequence."""
    best = None
    for s in (seq, _revflip(seq)):
        for i in range(len(s)):
            r = s[i:] + s[:i]
            if best is None or r < best:
                best = r
    return best


def _neighbors(
    seq: tuple[str, ...], exclusives: tuple[str, ...], b_only: frozenset[str]
) -> set[tuple[str, ...]]:
    """States one operation away, walking the sorting relation backwards
    from the target: inversions, re-insertions of absent exclusive blocks
    (reverse deletions), and removals of target-exclusive blocks (reverse
    insertions)."""
    n = len(seq)
    out: set[tuple[str, ...]] = set()
    rotations = [seq[i:] + seq[:i] for i in range(n)]
    for rot in rotations:
        for length in range(1, n):
            out.add(canonical_tokens(_revflip(rot[:length]) + rot[length:]))
    for rot in rotations:
        for length in range(1, n):
            if _tok_name(rot[length - 1]) not in b_only:
                break
            out.add(canonical_tokens(rot[length:]))
    present = {_tok_name(t) for t in seq}
    absent = [m for m in exclusives if m not in present]
    for r in range(1, len(absent) + 1):
        for subset in combinations(absent, r):
            for perm in permutations(subset):
                for signs in product((False, True), repeat=r):
                    block = tuple(
                        (_SIGN + m) if neg else m for m, neg in zip(perm, signs)
                    )
                    for i in range(n):
                        out.add(canonical_tokens(seq[:i] + block + seq[i:]))
    return out


@lru_cache(maxsize=128)
def _target_distances(
    target: tuple[str, ...],
    exclusives: tuple[str, ...],
    b_only: frozenset[str],
    max_states: int,
) -> dict[tuple[str, ...], int]:
    dist = {target: 0}
    frontier = [target]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for state in frontier:
            for nb in _neighbors(state, exclusives, b_only):
                if nb not in dist:
                    dist[nb] = d
                    nxt.append(nb)
                    if len(dist) > max_states:
                        raise BudgetExceeded("state budget exhausted")
        frontier = nxt
    return dist


def brute_force_distance(pair: GenomePair, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Exact distance by breadth-first search over canonicalized circular
    states; moves are segment inversions, deletions of common-free blocks,
    and insertions of absent target-exclusive blocks."""
    if len(pair.common) > budget.max_common:
        raise BudgetExceeded(f"{len(pair.common)} common markers")
    if len(pair.a_only) + len(pair.b_only) > budget.max_exclusive:
        raise BudgetExceeded("too many exclusive markers")
    table = _target_distances(
        canonical_tokens(pair.b.tokens()),
        tuple(sorted(pair.a_only | pair.b_only)),
        frozenset(pair.b_only),
        budget.max_states,
    )
    return table[canonical_tokens(pair.a.tokens())]


def anchor_invariance_check(pair: GenomePair) -> dict[str, int]:
    """Pipeline distance for every anchor choice; all values should agree."""
    from .cli import compute_distance

    return {g: compute_distance(pair, anchor=g).distance for g in sorted(pair.common)}


# ---------------------------------------------------------------------------
# Random instance generators (fuzz suites and the verify command)


def random_tagged_tree(
    rng: random.Random, max_nodes: int = 12, max_leaves: int = 8
) -> TaggedTree:
    """Random nonempty contracted tagged tree within the size bounds."""
    while True:
        n = rng.randint(1, max_nodes)
        specs: dict[int, str] = {}
        edges: list[tuple[int, int]] = []
        for i in range(n):
            bad = rng.random() < 0.75
            roll = rng.random()
            if roll < 0.55:
                tags = ""
            elif roll < 0.75:
                tags = "A"
            elif roll < 0.9:
                tags = "B"
            else:
                tags = "AB"
            specs[i] = ("b" if bad else "g") + tags
            if i:
                edges.append((i, rng.randrange(i)))
        tree, _ = contract(TaggedTree.from_spec(specs, edges))
        if tree.is_empty or len(tree) > max_nodes or len(tree.leaves()) > max_leaves:
            continue
        return tree


def _random_tags(rng: random.Random, p_tag: float) -> str:
    if rng.random() >= p_tag:
        return ""
    return rng.choice(["A", "B", "AB"])


def random_residual_tree(
    composition: tuple[int, int, int, int],
    rng: random.Random,
    max_tries: int = 4000,
) -> TaggedTree:
    """Random contracted tree whose leaf composition matches exactly.

    Mixes star-like, clustered (per-class subtrees behind bad links) and
    free-form layouts so that co-rooted, separated, mate and solo topology
    cases all occur.
    """
    la, lb, lc, lab = composition
    wanted = ["A"] * la + ["B"] * lb + ["C"] * lc + ["AB"] * lab
    for _ in range(max_tries):
        tree = _residual_attempt(wanted, rng)
        if tree is None:
            continue
        if tree.composition() == composition:
            return tree
    raise RuntimeError(f"could not build composition {composition}")


def _residual_attempt(wanted: list[str], rng: random.Random) -> TaggedTree | None:
    specs: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    counter = [0]

    def new_node(spec: str) -> int:
        nid = counter[0]
        counter[0] += 1
        specs[nid] = spec
        return nid

    clustered = rng.random() < 0.5
    classes = sorted(set(wanted))
    hubs: dict[str, int] = {}
    if clustered:
        root = new_node("b" + _random_tags(rng, 0.2))
        for cls in classes:
            hub = new_node("b" + _random_tags(rng, 0.25))
            hubs[cls] = hub
            prev = root
            for _ in range(rng.randint(0, 2)):
                mid = new_node("b" + _random_tags(rng, 0.2))
                edges.append((prev, mid))
                prev = mid
            edges.append((prev, hub))
    else:
        k = rng.randint(1, 3)
        hub_ids = [new_node("b" + _random_tags(rng, 0.25)) for _ in range(k)]
        for i in range(1, k):
            edges.append((hub_ids[i], hub_ids[rng.randrange(i)]))
        for cls in classes:
            hubs[cls] = rng.choice(hub_ids)

    order = list(wanted)
    rng.shuffle(order)
    for cls in order:
        attach = hubs[cls]
        for _ in range(rng.choices((0, 1, 2), weights=(40, 45, 15))[0]):
            mid = new_node("b" + _random_tags(rng, 0.15))
            edges.append((attach, mid))
            attach = mid
        leaf = new_node("b" + ("" if cls == "C" else cls))
        edges.append((attach, leaf))

    # occasionally splice a tagged good node into an edge (a potential mate)
    if edges and rng.random() < 0.4:
        u, v = rng.choice(edges)
        tags = rng.choice(["A", "B", "AB"])
        g = new_node("g" + tags)
        edges.remove((u, v))
        edges.append((u, g))
        edges.append((g, v))

    tree, _ = contract(TaggedTree.from_spec(specs, edges))
    if tree.is_empty or len(tree) > 26:
        return None
    return tree


def random_genome_pair(
    rng: random.Random, g: int, na: int = 0, nb: int = 0
) -> GenomePair:
    """Random circular pair with g common and na/nb exclusive markers."""
    common = [f"g{i}" for i in range(g)]
    a_only = [f"x{i}" for i in range(na)]
    b_only = [f"y{i}" for i in range(nb)]

    def build(names: list[str]) -> Chromosome:
        order = list(names)
        rng.shuffle(order)
        return Chromosome(
            tuple(Marker(nm, rng.random() < 0.5) for nm in order)
        )

    return GenomePair(
        build(common + a_only),
        build(common + b_only),
        frozenset(common),
        frozenset(a_only),
        frozenset(b_only),
    )
