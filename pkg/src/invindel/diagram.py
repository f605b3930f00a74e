"""Relational diagram of two circular chromosomes.

Both chromosomes are drawn as horizontal lines of common-marker
extremities, read from the head of a chosen anchor marker to its tail.
Consecutive extremities on a line are joined by an edge labeled with the
exclusive markers lying between them; equal extremities across the lines
are joined by dotted edges.  The diagram decomposes into cycles that
alternate upper and lower edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import AnchorNotCommon, OddRunCountAboveOne
from .genome import Chromosome, GenomePair, Marker

TAIL = "t"
HEAD = "h"

UPPER = "A"
LOWER = "B"


@dataclass(frozen=True)
class Extremity:
    marker: str
    end: str

    def __str__(self) -> str:
        return f"{self.marker}^{self.end}"


def _ends(m: Marker) -> tuple[Extremity, Extremity]:
    """Extremities of a marker occurrence in reading order."""
    t, h = Extremity(m.name, TAIL), Extremity(m.name, HEAD)
    return (t, h) if m.forward else (h, t)


@dataclass
class LineEdge:
    """One upper-line (A) or lower-line (B) edge between adjacent extremities."""

    index: int
    left: Extremity
    right: Extremity
    label: tuple[Marker, ...]

    @property
    def labeled(self) -> bool:
        return bool(self.label)


@dataclass(frozen=True)
class CycleStep:
    """One line edge as traversed by a cycle walk."""

    side: str  # UPPER or LOWER
    index: int
    left_to_right: bool
    labeled: bool


@dataclass
class Cycle:
    id: int
    steps: tuple[CycleStep, ...]

    @cached_property
    def a_steps(self) -> tuple[CycleStep, ...]:
        return tuple(s for s in self.steps if s.side == UPPER)

    @cached_property
    def a_positions(self) -> tuple[int, ...]:
        return tuple(sorted(s.index for s in self.a_steps))

    @property
    def is_two_cycle(self) -> bool:
        return len(self.steps) == 2

    @cached_property
    def good(self) -> bool:
        """A cycle is good when some pair of its upper edges is traversed in
        opposite directions, so a split inversion exists."""
        dirs = {s.left_to_right for s in self.a_steps}
        return len(dirs) == 2

    @cached_property
    def labeled(self) -> bool:
        return any(s.labeled for s in self.steps)

    @cached_property
    def has_a_run(self) -> bool:
        return any(s.labeled for s in self.steps if s.side == UPPER)

    @cached_property
    def has_b_run(self) -> bool:
        return any(s.labeled for s in self.steps if s.side == LOWER)

    @property
    def has_both_runs(self) -> bool:
        return self.has_a_run and self.has_b_run


def run_count(cycle: Cycle) -> int:
    """Number of maximal single-genome runs of labeled edges along the cycle."""
    sides = [s.side for s in cycle.steps if s.labeled]
    if not sides:
        return 0
    n = len(sides)
    switches = sum(1 for i in range(n) if sides[i] != sides[(i + 1) % n])
    return switches if switches else 1


def indel_potential(runs: int) -> int:
    """Minimum indels chargeable to a cycle with the given run count."""
    if runs in (0, 1, 2):
        return runs
    if runs % 2:
        raise OddRunCountAboveOne(f"run count {runs} is odd and above one")
    return runs // 2 + 1


def classify_cycle(cycle: Cycle) -> tuple[str, str, str]:
    """(good|bad, sorted_2cycle|unsorted, tag profile)."""
    kind = "good" if cycle.good else "bad"
    sortedness = "sorted_2cycle" if cycle.is_two_cycle else "unsorted"
    runs = run_count(cycle)
    if runs == 0:
        profile = "clean"
    elif cycle.has_a_run and cycle.has_b_run:
        profile = f"AB{runs // 2}"
    elif cycle.has_a_run:
        profile = "A"
    else:
        profile = "B"
    return kind, sortedness, profile


def _orient_to_anchor(ch: Chromosome, anchor: str) -> tuple[Marker, ...]:
    """Rotate (and flip if needed) so the anchor comes first, forward."""
    markers = ch.markers
    idx = next(i for i, m in enumerate(markers) if m.name == anchor)
    if not markers[idx].forward:
        rev = ch.reversed_flipped().markers
        idx = next(i for i, m in enumerate(rev) if m.name == anchor)
        markers = rev
    return markers[idx:] + markers[:idx]


def _build_line(ch: Chromosome, anchor: str, common: frozenset[str]) -> list[LineEdge]:
    seq = _orient_to_anchor(ch, anchor)
    commons: list[Marker] = []
    labels: list[list[Marker]] = []
    pending: list[Marker] = []
    for m in seq:
        if m.name in common:
            if commons:
                labels.append(pending)
                pending = []
            commons.append(m)
        else:
            pending.append(m)
    labels.append(pending)  # exclusives between the last common marker and the anchor
    # Leading exclusives can only occur before the anchor itself, which is
    # always first after rotation, so the label list lines up with the gaps.
    k = len(commons)
    edges = []
    for i in range(k):
        left = _ends(commons[i])[1]
        right = _ends(commons[(i + 1) % k])[0]
        edges.append(LineEdge(i, left, right, tuple(labels[i])))
    return edges


@dataclass
class RelationalDiagram:
    pair: GenomePair
    anchor: str
    upper: list[LineEdge]
    lower: list[LineEdge]
    cycles: list[Cycle]

    @property
    def c(self) -> int:
        return len(self.cycles)

    @property
    def g_count(self) -> int:
        return len(self.upper)

    def indel_potential_sum(self) -> int:
        return sum(indel_potential(run_count(c)) for c in self.cycles)

    def cycle_of_a_edge(self) -> list[int]:
        owner = [-1] * self.g_count
        for cyc in self.cycles:
            for p in cyc.a_positions:
                owner[p] = cyc.id
        return owner


def build_relational_diagram(pair: GenomePair, anchor: str) -> RelationalDiagram:
    if anchor not in pair.common:
        raise AnchorNotCommon(anchor)
    upper = _build_line(pair.a, anchor, pair.common)
    lower = _build_line(pair.b, anchor, pair.common)

    def edge_map(edges: list[LineEdge]) -> dict[Extremity, tuple[int, bool]]:
        # extremity -> (edge index, extremity is the left endpoint)
        out: dict[Extremity, tuple[int, bool]] = {}
        for e in edges:
            out[e.left] = (e.index, True)
            out[e.right] = (e.index, False)
        return out

    upper_at = edge_map(upper)
    lower_at = edge_map(lower)

    # Upper extremities in line order; cycles start at the leftmost
    # unvisited one and walk through its upper edge first.
    order: list[Extremity] = []
    for e in upper:
        order.append(e.left)
        order.append(e.right)

    visited: set[Extremity] = set()
    cycles: list[Cycle] = []
    for start in order:
        if start in visited:
            continue
        steps: list[CycleStep] = []
        cur = start
        while True:
            idx, at_left = upper_at[cur]
            edge = upper[idx]
            steps.append(CycleStep(UPPER, idx, at_left, edge.labeled))
            visited.add(cur)
            cur = edge.right if at_left else edge.left
            visited.add(cur)
            # dotted edge down to the same extremity on the lower line
            idx, at_left = lower_at[cur]
            edge = lower[idx]
            steps.append(CycleStep(LOWER, idx, at_left, edge.labeled))
            cur = edge.right if at_left else edge.left
            # dotted edge back up
            if cur == start:
                break
        cycles.append(Cycle(len(cycles), tuple(steps)))
    return RelationalDiagram(pair, anchor, upper, lower, cycles)


def format_cycle_table(diagram: RelationalDiagram) -> str:
    """Textual cycle listing for traces."""
    lines = [f"anchor: {diagram.anchor}  cycles: {diagram.c}  common: {diagram.g_count}"]
    for cyc in diagram.cycles:
        kind, sortedness, profile = classify_cycle(cyc)
        runs = run_count(cyc)
        lam = indel_potential(runs)
        lines.append(
            f"  cycle {cyc.id}: length {2 * len(cyc.steps)}, a-edges "
            f"{list(cyc.a_positions)}, runs {runs}, potential {lam}, "
            f"{kind}, {sortedness}, profile {profile}"
        )
    return "\n".join(lines)
