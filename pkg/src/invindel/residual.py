"""Optimal covers for residual trees.

Every residual tree falls into one of 56 leaf compositions (with the A and
B classes swapped so that the A count is at least the B count).  For each
composition an ordered case list maps topology predicates to an optimal
cover cost and a witness recipe; the last case always fires.  Reducible
topologies spend one extra in-traversal and recurse into a smaller
composition.

The tables are data interpreted by one small engine, so each entry can be
audited row by row.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .components import TaggedTree, reduce_by_paths
from .errors import NoCaseMatched, PreconditionViolated, UnknownComposition
from .treecover import Cover, CoverPath, Topology, lift_paths, path_cost

A = frozenset({"A"})
B = frozenset({"B"})
C = frozenset({"C"})
X = frozenset({"AB"})
AC = A | C
BC = B | C
AX = A | X
BX = B | X


@dataclass(frozen=True)
class PathSpec:
    kind: str  # in | out | tcov | semi | short | cut
    c1: str | None = None
    c2: str | None = None
    cost: int = 1
    tag: str | None = None
    host: frozenset | None = None
    covered_src: bool = False


def IN(cls: str) -> PathSpec:
    return PathSpec("in", cls, cls, 1 if cls != "C" else 2)


def OUT(c1: str, c2: str, cost: int) -> PathSpec:
    return PathSpec("out", c1, c2, cost)


def TCOV(c1: str, c2: str, cost: int) -> PathSpec:
    """Traversal from a fresh c1 leaf to an already covered c2 leaf."""
    return PathSpec("tcov", c1, c2, cost)


def SEMI(src: str, tag: str, host: frozenset, covered: bool = False) -> PathSpec:
    return PathSpec("semi", src, None, 1, tag, host, covered)


def SHORT(cls: str) -> PathSpec:
    return PathSpec("short", cls, None, 1)


def CUT(c1: str, c2: str) -> PathSpec:
    """Short path on the bad node of the (short) bad link between classes."""
    return PathSpec("cut", c1, c2, 1)


Cond = Callable[[Topology], bool]


@dataclass(frozen=True)
class Case:
    label: str
    cond: Cond
    cost: int | None = None
    recipe: tuple[PathSpec, ...] | None = None
    reduce_class: str | None = None


def case(label, cond, cost, *recipe) -> Case:
    return Case(label, cond, cost, tuple(recipe))


def reduce_case(label, cond, reduce_class) -> Case:
    return Case(label, cond, None, None, reduce_class)


ALWAYS: Cond = lambda t: True


# ---------------------------------------------------------------------------
# Group 1: two canonical subtrees that share no tag

_G1 = {
    (1, 1, 0, 0): [
        case("I", ALWAYS, 2, OUT("A", "B", 2)),
    ],
    (2, 1, 0, 0): [
        case("S", lambda t: t.fully_corooted, 2, SHORT("B"), IN("A")),
        case("M", lambda t: t.mate(B, "B", A), 2, IN("A"), SEMI("B", "B", A)),
        case("W", ALWAYS, 3, IN("A"), TCOV("B", "A", 2)),
    ],
    (2, 2, 0, 0): [
        case("I", lambda t: t.fully_corooted, 2, IN("A"), IN("B")),
        case("S", lambda t: t.short_bad_link(A, B), 3, IN("A"), IN("B"), CUT("A", "B")),
        case("Ma", lambda t: t.mate(A, "A", B), 3, IN("A"), SEMI("A", "A", B, covered=True), IN("B")),
        case("Mb", lambda t: t.mate(B, "B", A), 3, IN("A"), IN("B"), SEMI("B", "B", A, covered=True)),
        case("W", ALWAYS, 4, OUT("A", "B", 2), OUT("A", "B", 2)),
    ],
    (1, 0, 1, 0): [
        case("I", ALWAYS, 2, OUT("A", "C", 2)),
    ],
    (1, 0, 2, 0): [
        case("S", lambda t: t.has_clean_short_branch, 3, SHORT("C"), OUT("C", "A", 2)),
        case("Sa", lambda t: t.fully_corooted, 3, SHORT("A"), IN("C")),
        case("M", lambda t: t.mate(A, "A", C), 3, IN("C"), SEMI("A", "A", C)),
        case("W", ALWAYS, 4, OUT("C", "A", 2), TCOV("C", "A", 2)),
    ],
    (2, 0, 1, 0): [
        case("S", lambda t: t.fully_corooted, 2, SHORT("C"), IN("A")),
        case("W", ALWAYS, 3, OUT("C", "A", 2), TCOV("A", "A", 1)),
    ],
    (2, 0, 2, 0): [
        case("I", lambda t: t.fully_corooted, 3, IN("C"), IN("A")),
        case("W", ALWAYS, 4, OUT("C", "A", 2), OUT("C", "A", 2)),
    ],
    (0, 0, 1, 1): [
        case("I", ALWAYS, 2, OUT("C", "AB", 2)),
    ],
    (0, 0, 1, 2): [
        case("S", lambda t: t.fully_corooted, 2, SHORT("C"), IN("AB")),
        case("W", ALWAYS, 3, OUT("C", "AB", 2), TCOV("AB", "AB", 1)),
    ],
    (0, 0, 2, 1): [
        case("S", lambda t: t.has_clean_short_branch, 3, SHORT("C"), OUT("C", "AB", 2)),
        case("Sa", lambda t: t.fully_corooted, 3, SHORT("AB"), IN("C")),
        case("Ma", lambda t: t.mate(X, "A", C), 3, IN("C"), SEMI("AB", "A", C)),
        case("Mb", lambda t: t.mate(X, "B", C), 3, IN("C"), SEMI("AB", "B", C)),
        case("W", ALWAYS, 4, OUT("C", "AB", 2), TCOV("C", "AB", 2)),
    ],
    (0, 0, 2, 2): [
        case("I", lambda t: t.fully_corooted, 3, IN("C"), IN("AB")),
        case("W", ALWAYS, 4, OUT("C", "AB", 2), OUT("C", "AB", 2)),
    ],
}

# ---------------------------------------------------------------------------
# Group 2: three canonical subtrees

_G2_ABC = {
    (1, 1, 1, 0): [
        case("S", lambda t: t.non_isolated(C), 3, SHORT("C"), OUT("A", "B", 2)),
        case("Sa", lambda t: t.non_isolated(A), 3, SHORT("A"), OUT("B", "C", 2)),
        case("Sb", lambda t: t.non_isolated(B), 3, SHORT("B"), OUT("A", "C", 2)),
        case(
            "Ma",
            lambda t: t.separated(B, C) and t.mate(A, "A", BC),
            3,
            OUT("B", "C", 2),
            SEMI("A", "A", BC),
        ),
        case(
            "Mb",
            lambda t: t.separated(A, C) and t.mate(B, "B", AC),
            3,
            OUT("A", "C", 2),
            SEMI("B", "B", AC),
        ),
        case("W", ALWAYS, 4, OUT("A", "C", 2), TCOV("B", "C", 2)),
    ],
    (1, 1, 2, 0): [
        case("I", ALWAYS, 4, OUT("A", "C", 2), OUT("C", "B", 2)),
    ],
    (1, 1, 3, 0): [
        case(
            "S",
            lambda t: t.has_clean_short_branch
            and t.isolated(A)
            and t.isolated(B)
            and not (t.separated(B, C) and t.mate(A, "A", BC))
            and not (t.separated(A, C) and t.mate(B, "B", AC)),
            5,
            SHORT("C"),
            OUT("A", "C", 2),
            OUT("B", "C", 2),
        ),
        reduce_case(">>", ALWAYS, "C"),
    ],
    (2, 1, 1, 0): [
        case("I", lambda t: t.non_isolated(A), 3, IN("A"), OUT("B", "C", 2)),
        case(
            "SM",
            lambda t: t.non_isolated(C) and t.mate(B, "B", A),
            3,
            SHORT("C"),
            IN("A"),
            SEMI("B", "B", A),
        ),
        case("W", ALWAYS, 4, OUT("B", "A", 2), OUT("A", "C", 2)),
    ],
    (2, 1, 2, 0): [
        case("Sb", lambda t: t.fully_corooted, 4, SHORT("B"), IN("C"), IN("A")),
        case(
            "S",
            lambda t: t.exists_pruned(lambda q: q.non_isolated(A)),
            4,
            SHORT("C"),
            OUT("C", "B", 2),
            IN("A"),
        ),
        case(
            "M1",
            lambda t: t.non_isolated(A) and t.isolated(C) and t.mate(B, "B", C),
            4,
            IN("A"),
            IN("C"),
            SEMI("B", "B", C),
        ),
        case(
            "M2",
            lambda t: t.corooted(A, C) and t.separated(AC, B) and t.mate(B, "B", AC),
            4,
            IN("A"),
            IN("C"),
            SEMI("B", "B", AC),
        ),
        case(
            "M3",
            lambda t: t.isolated(A) and t.non_isolated(C) and t.mate(B, "B", A),
            4,
            IN("A"),
            IN("C"),
            SEMI("B", "B", A),
        ),
        case("W", ALWAYS, 5, IN("A"), OUT("B", "C", 2), TCOV("C", "A", 2)),
    ],
    (2, 2, 1, 0): [
        case("S", lambda t: t.fully_corooted, 3, SHORT("C"), IN("A"), IN("B")),
        case("Ia", lambda t: t.non_isolated(A), 4, IN("A"), IN("B"), TCOV("C", "B", 2)),
        case("Ib", lambda t: t.non_isolated(B), 4, IN("A"), IN("B"), TCOV("C", "A", 2)),
        case(
            "Ma",
            lambda t: t.mate(A, "A", B),
            4,
            IN("B"),
            OUT("A", "C", 2),
            SEMI("A", "A", B),
        ),
        case(
            "Mb",
            lambda t: t.mate(B, "B", A),
            4,
            IN("A"),
            OUT("B", "C", 2),
            SEMI("B", "B", A),
        ),
        case("W", ALWAYS, 5, IN("A"), OUT("B", "C", 2), TCOV("B", "A", 2)),
    ],
    (2, 2, 2, 0): [
        case("I", lambda t: t.fully_corooted, 4, IN("A"), IN("B"), IN("C")),
        case("IIa", lambda t: t.non_isolated(A), 5, IN("A"), OUT("B", "C", 2), OUT("B", "C", 2)),
        case("IIb", lambda t: t.non_isolated(B), 5, IN("B"), OUT("A", "C", 2), OUT("A", "C", 2)),
        case(
            "Ma",
            lambda t: t.non_isolated(C) and t.mate(A, "A", B),
            5,
            IN("C"),
            IN("B"),
            IN("A"),
            SEMI("A", "A", B, covered=True),
        ),
        case(
            "Mb",
            lambda t: t.non_isolated(C) and t.mate(B, "B", A),
            5,
            IN("C"),
            IN("A"),
            IN("B"),
            SEMI("B", "B", A, covered=True),
        ),
        case(
            "SMa",
            lambda t: t.fully_separated and t.mate(A, "A", B) and t.has_clean_short_branch,
            5,
            SHORT("C"),
            OUT("C", "A", 2),
            IN("B"),
            SEMI("A", "A", B),
        ),
        case(
            "MMa",
            lambda t: t.fully_separated and t.mate(A, "A", B) and t.mate(A, "A", C),
            5,
            IN("C"),
            IN("B"),
            SEMI("A", "A", B),
            SEMI("A", "A", C),
        ),
        case(
            "SMb",
            lambda t: t.fully_separated and t.mate(B, "B", A) and t.has_clean_short_branch,
            5,
            SHORT("C"),
            OUT("C", "B", 2),
            IN("A"),
            SEMI("B", "B", A),
        ),
        case(
            "MMb",
            lambda t: t.fully_separated and t.mate(B, "B", A) and t.mate(B, "B", C),
            5,
            IN("C"),
            IN("A"),
            SEMI("B", "B", A),
            SEMI("B", "B", C),
        ),
        case("W", ALWAYS, 6, OUT("A", "B", 2), OUT("B", "C", 2), OUT("C", "A", 2)),
    ],
}

_G2_ABX = {
    (1, 1, 0, 1): [
        case("I", ALWAYS, 2, OUT("A", "AB", 1), TCOV("B", "AB", 1)),
    ],
    (1, 1, 0, 2): [
        case("I", ALWAYS, 2, OUT("A", "AB", 1), OUT("AB", "B", 1)),
    ],
    (2, 1, 0, 1): [
        case("I", lambda t: t.non_isolated(A), 2, IN("A"), OUT("AB", "B", 1)),
        case("W", ALWAYS, 3, OUT("AB", "A", 1), OUT("A", "B", 2)),
    ],
    (2, 1, 0, 2): [
        case("I", ALWAYS, 3, OUT("A", "AB", 1), OUT("A", "AB", 1), TCOV("B", "AB", 1)),
    ],
    (2, 1, 0, 3): [
        case(
            "nR",
            lambda t: t.isolated(A),
            3,
            OUT("B", "AB", 1),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 0, 1): [
        case("Ia", lambda t: t.non_isolated(A), 3, IN("A"), OUT("B", "AB", 1), TCOV("B", "AB", 1)),
        case("Ib", lambda t: t.non_isolated(B), 3, IN("B"), OUT("A", "AB", 1), TCOV("A", "AB", 1)),
        case(
            "Ma",
            lambda t: t.mate(A, "A", B),
            3,
            OUT("A", "AB", 1),
            IN("B"),
            SEMI("A", "A", B),
        ),
        case(
            "Mb",
            lambda t: t.mate(B, "B", A),
            3,
            OUT("B", "AB", 1),
            IN("A"),
            SEMI("B", "B", A),
        ),
        case("W", ALWAYS, 4, OUT("A", "AB", 1), OUT("A", "B", 2), TCOV("B", "AB", 1)),
    ],
    (2, 2, 0, 2): [
        case("Ia", lambda t: t.non_isolated(A), 3, IN("A"), OUT("B", "AB", 1), OUT("B", "AB", 1)),
        case("Ib", lambda t: t.non_isolated(B), 3, IN("B"), OUT("A", "AB", 1), OUT("A", "AB", 1)),
        case("W", ALWAYS, 4, OUT("A", "AB", 1), OUT("AB", "B", 1), OUT("B", "A", 2)),
    ],
    (2, 2, 0, 3): [
        case(
            "nR",
            lambda t: t.isolated(A)
            and t.isolated(B)
            and not t.mate(A, "A", B)
            and not t.mate(B, "B", A),
            4,
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            TCOV("B", "AB", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 0, 4): [
        case(
            "nR",
            lambda t: t.isolated(A) and t.isolated(B),
            4,
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
}

_G2_ACX = {
    (1, 0, 1, 1): [
        case("S", lambda t: t.non_isolated(C), 2, SHORT("C"), OUT("A", "AB", 1)),
        case("W", ALWAYS, 3, OUT("AB", "A", 1), TCOV("C", "A", 2)),
    ],
    (1, 0, 1, 2): [
        case("I", ALWAYS, 3, OUT("A", "AB", 1), OUT("AB", "C", 2)),
    ],
    (1, 0, 2, 1): [
        case("I", lambda t: t.non_isolated(C), 3, OUT("A", "AB", 1), IN("C")),
        case("W", ALWAYS, 4, OUT("A", "C", 2), OUT("C", "AB", 2)),
    ],
    (1, 0, 2, 2): [
        case("I", lambda t: t.non_isolated(C), 4, IN("C"), OUT("A", "AB", 1), TCOV("AB", "A", 1)),
        case(
            "S",
            lambda t: t.has_clean_short_branch,
            4,
            SHORT("C"),
            OUT("C", "AB", 2),
            OUT("AB", "A", 1),
        ),
        case("Ma", lambda t: t.mate(X, "A", C), 4, IN("C"), OUT("A", "AB", 1), SEMI("AB", "A", C)),
        case("Mb", lambda t: t.mate(X, "B", C), 4, IN("C"), OUT("A", "AB", 1), SEMI("AB", "B", C)),
        case("W", ALWAYS, 5, OUT("A", "C", 2), OUT("C", "AB", 2), TCOV("AB", "A", 1)),
    ],
    (2, 0, 1, 1): [
        case("I", ALWAYS, 3, OUT("C", "A", 2), OUT("A", "AB", 1)),
    ],
    (2, 0, 1, 2): [
        case("S", lambda t: t.non_isolated(C), 3, SHORT("C"), OUT("A", "AB", 1), OUT("A", "AB", 1)),
        case("W", ALWAYS, 4, OUT("A", "AB", 1), OUT("A", "AB", 1), TCOV("C", "AB", 2)),
    ],
    (2, 0, 2, 1): [
        case("I", lambda t: t.non_isolated(C), 4, IN("C"), OUT("A", "AB", 1), TCOV("A", "AB", 1)),
        case(
            "S",
            lambda t: t.has_clean_short_branch,
            4,
            SHORT("C"),
            OUT("C", "A", 2),
            OUT("A", "AB", 1),
        ),
        case("Ma", lambda t: t.mate(A, "A", C), 4, IN("C"), OUT("AB", "A", 1), SEMI("A", "A", C)),
        case(
            "Mb",
            lambda t: t.mate(X, "B", C) and t.non_isolated(A),
            4,
            IN("C"),
            IN("A"),
            SEMI("AB", "B", C),
        ),
        case("W", ALWAYS, 5, OUT("AB", "C", 2), OUT("C", "A", 2), TCOV("A", "AB", 1)),
    ],
    (2, 0, 2, 2): [
        case("I", lambda t: t.non_isolated(C), 4, IN("C"), OUT("A", "AB", 1), OUT("A", "AB", 1)),
        case("W", ALWAYS, 5, OUT("A", "AB", 1), OUT("AB", "C", 2), OUT("C", "A", 2)),
    ],
    (2, 0, 2, 3): [
        case(
            "M",
            lambda t: t.isolated(A)
            and t.isolated(C)
            and t.mate(X, "B", C)
            and not t.mate(A, "A", C)
            and not t.has_clean_short_branch,
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            SEMI("AB", "B", C),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
}

# ---------------------------------------------------------------------------
# Group 3: four canonical subtrees

_G3 = {
    (1, 1, 1, 1): [
        case("Ia", lambda t: t.corooted(AX, BC), 3, OUT("A", "AB", 1), OUT("B", "C", 2)),
        case("Ib", ALWAYS, 3, OUT("B", "AB", 1), OUT("A", "C", 2)),
    ],
    (1, 1, 1, 2): [
        case(
            "S",
            lambda t: t.non_isolated(C),
            3,
            SHORT("C"),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
        ),
        case("W", ALWAYS, 4, OUT("A", "AB", 1), OUT("AB", "B", 1), TCOV("C", "AB", 2)),
    ],
    (1, 1, 2, 1): [
        case("I", lambda t: t.non_isolated(C), 4, IN("C"), OUT("A", "AB", 1), TCOV("B", "AB", 1)),
        case(
            "S1",
            lambda t: t.separated(A, C)
            and t.corooted(AC, BX)
            and t.has_clean_short_branch,
            4,
            SHORT("C"),
            OUT("C", "A", 2),
            OUT("B", "AB", 1),
        ),
        case(
            "Ma",
            lambda t: t.separated(A, C) and t.corooted(AC, BX) and t.mate(A, "A", C),
            4,
            IN("C"),
            OUT("B", "AB", 1),
            SEMI("A", "A", C),
        ),
        case(
            "S2",
            lambda t: t.separated(B, C)
            and t.corooted(BC, AX)
            and t.has_clean_short_branch,
            4,
            SHORT("C"),
            OUT("C", "B", 2),
            OUT("A", "AB", 1),
        ),
        case(
            "Mb",
            lambda t: t.separated(B, C) and t.corooted(BC, AX) and t.mate(B, "B", C),
            4,
            IN("C"),
            OUT("A", "AB", 1),
            SEMI("B", "B", C),
        ),
        case("W", ALWAYS, 5, OUT("A", "C", 2), OUT("C", "B", 2), TCOV("AB", "A", 1)),
    ],
    (1, 1, 2, 2): [
        case("I", lambda t: t.non_isolated(C), 4, IN("C"), OUT("A", "AB", 1), OUT("B", "AB", 1)),
        case("W", ALWAYS, 5, OUT("A", "C", 2), OUT("C", "AB", 2), OUT("AB", "B", 1)),
    ],
    (1, 1, 2, 3): [
        case(
            "Ma",
            lambda t: t.separated(C, A)
            and t.isolated(AC)
            and t.mate(X, "A", C)
            and not t.mate(B, "B", C),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            SEMI("AB", "A", C),
        ),
        case(
            "Mb",
            lambda t: t.separated(C, B)
            and t.isolated(BC)
            and t.mate(X, "B", C)
            and not t.mate(A, "A", C),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            SEMI("AB", "B", C),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 1, 1, 1): [
        case(
            "S",
            lambda t: t.non_isolated(C) and t.non_isolated(A) and t.non_isolated(AC),
            3,
            SHORT("C"),
            IN("A"),
            OUT("AB", "B", 1),
        ),
        case("W", ALWAYS, 4, OUT("C", "A", 2), OUT("A", "AB", 1), TCOV("B", "AB", 1)),
    ],
    (2, 1, 1, 2): [
        case("I", ALWAYS, 4, OUT("A", "AB", 1), OUT("B", "AB", 1), OUT("A", "C", 2)),
    ],
    (2, 1, 1, 3): [
        case(
            "S1",
            lambda t: t.isolated(A) and t.non_isolated(C),
            4,
            SHORT("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
        ),
        case(
            "S2",
            lambda t: t.corooted(A, C) and t.isolated(AC),
            4,
            SHORT("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 1, 2, 1): [
        case(
            "I",
            lambda t: t.non_isolated(C) and t.non_isolated(A) and t.non_isolated(AC),
            4,
            IN("C"),
            IN("A"),
            OUT("AB", "B", 1),
        ),
        case("W", ALWAYS, 5, OUT("AB", "A", 1), OUT("A", "C", 2), OUT("C", "B", 2)),
    ],
    (2, 1, 2, 2): [
        case(
            "I",
            lambda t: t.non_isolated(C),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            TCOV("B", "AB", 1),
        ),
        case(
            "S",
            lambda t: t.has_clean_short_branch,
            5,
            SHORT("C"),
            OUT("C", "A", 2),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
        ),
        case(
            "Ma",
            lambda t: t.mate(A, "A", C),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            SEMI("A", "A", C),
        ),
        case(
            "Mb1",
            lambda t: t.mate(X, "B", C) and t.non_isolated(A),
            5,
            IN("C"),
            IN("A"),
            OUT("B", "AB", 1),
            SEMI("AB", "B", C),
        ),
        case(
            "Mb2",
            lambda t: t.mate(B, "B", C) and t.non_isolated(BC),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            SEMI("B", "B", C),
        ),
        case(
            "W",
            ALWAYS,
            6,
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "C", 2),
            TCOV("C", "A", 2),
        ),
    ],
    (2, 1, 2, 3): [
        case(
            "I1",
            lambda t: t.isolated(A) and t.non_isolated(C),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
        ),
        case(
            "I2",
            lambda t: t.corooted(A, C) and t.isolated(AC),
            5,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 1, 2, 4): [
        case(
            "M",
            lambda t: t.isolated(C)
            and t.isolated(A)
            and t.isolated(BC)
            and not t.has_clean_short_branch
            and not t.mate(A, "A", C)
            and t.mate(X, "B", C),
            6,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            SEMI("AB", "B", C),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 1, 1): [
        case("Ia", lambda t: t.non_isolated(A), 4, IN("A"), OUT("C", "B", 2), OUT("B", "AB", 1)),
        case("Ib", lambda t: t.non_isolated(B), 4, IN("B"), OUT("C", "A", 2), OUT("A", "AB", 1)),
        case(
            "SMa",
            lambda t: t.non_isolated(C) and t.mate(A, "A", B),
            4,
            SHORT("C"),
            OUT("AB", "A", 1),
            IN("B"),
            SEMI("A", "A", B),
        ),
        case(
            "SMb",
            lambda t: t.non_isolated(C) and t.mate(B, "B", A),
            4,
            SHORT("C"),
            OUT("AB", "B", 1),
            IN("A"),
            SEMI("B", "B", A),
        ),
        case("W", ALWAYS, 5, OUT("AB", "A", 1), OUT("A", "B", 2), OUT("B", "C", 2)),
    ],
    (2, 2, 1, 2): [
        case(
            "S1",
            lambda t: t.non_isolated(C) and t.non_isolated(A) and t.non_isolated(AC),
            4,
            SHORT("C"),
            IN("A"),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
        ),
        case(
            "S2",
            lambda t: t.non_isolated(C) and t.non_isolated(B) and t.non_isolated(BC),
            4,
            SHORT("C"),
            IN("B"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
        ),
        case(
            "W",
            ALWAYS,
            5,
            OUT("C", "A", 2),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
            TCOV("A", "AB", 1),
        ),
    ],
    (2, 2, 1, 3): [
        case(
            "nR1",
            lambda t: t.isolated(A) and t.isolated(B) and t.isolated(C),
            5,
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            OUT("B", "C", 2),
        ),
        case(
            "nR2",
            lambda t: t.isolated(A)
            and t.isolated(B)
            and t.non_isolated(C)
            and not t.mate(A, "A", B)
            and not t.mate(B, "B", A),
            5,
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            OUT("B", "C", 2),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 1, 4): [
        case(
            "S",
            lambda t: t.non_isolated(C)
            and (t.isolated(A) or (t.corooted(A, C) and t.isolated(AC)))
            and (t.isolated(B) or (t.corooted(B, C) and t.isolated(BC))),
            5,
            SHORT("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 2, 1): [
        case(
            "S1",
            lambda t: t.exists_pruned(lambda q: q.non_isolated(A)),
            5,
            SHORT("C"),
            IN("A"),
            OUT("B", "C", 2),
            OUT("B", "AB", 1),
        ),
        case(
            "S2",
            lambda t: t.exists_pruned(lambda q: q.non_isolated(B)),
            5,
            SHORT("C"),
            IN("B"),
            OUT("A", "C", 2),
            OUT("A", "AB", 1),
        ),
        case(
            "Ia",
            lambda t: t.non_isolated(A)
            and t.non_isolated(C)
            and t.corooted(A, C)
            and t.non_isolated(AC),
            5,
            IN("A"),
            IN("C"),
            OUT("B", "AB", 1),
            TCOV("B", "AB", 1),
        ),
        case(
            "Mb1",
            lambda t: t.non_isolated(A) and t.mate(B, "B", C),
            5,
            IN("A"),
            IN("C"),
            OUT("B", "AB", 1),
            SEMI("B", "B", C),
        ),
        case(
            "Mb2",
            lambda t: t.non_isolated(C) and t.mate(B, "B", A),
            5,
            IN("A"),
            IN("C"),
            OUT("B", "AB", 1),
            SEMI("B", "B", A),
        ),
        case(
            "Ma1",
            lambda t: t.non_isolated(C) and t.mate(A, "A", B),
            5,
            IN("B"),
            IN("C"),
            OUT("A", "AB", 1),
            SEMI("A", "A", B),
        ),
        case(
            "Ma2",
            lambda t: t.non_isolated(B) and t.mate(A, "A", C),
            5,
            IN("B"),
            IN("C"),
            OUT("A", "AB", 1),
            SEMI("A", "A", C),
        ),
        case(
            "Ib",
            lambda t: t.non_isolated(B)
            and t.non_isolated(C)
            and t.corooted(B, C)
            and t.non_isolated(BC),
            5,
            IN("B"),
            IN("C"),
            OUT("A", "AB", 1),
            TCOV("A", "AB", 1),
        ),
        case(
            "W",
            ALWAYS,
            6,
            OUT("A", "C", 2),
            OUT("A", "AB", 1),
            OUT("B", "C", 2),
            TCOV("B", "AB", 1),
        ),
    ],
    (2, 2, 2, 2): [
        case(
            "Ia",
            lambda t: t.non_isolated(C) and t.non_isolated(A) and t.non_isolated(AC),
            5,
            IN("C"),
            IN("A"),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
        ),
        case(
            "Ib",
            lambda t: t.non_isolated(C) and t.non_isolated(B) and t.non_isolated(BC),
            5,
            IN("C"),
            IN("B"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
        ),
        case(
            "W",
            ALWAYS,
            6,
            OUT("C", "A", 2),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            OUT("B", "C", 2),
        ),
    ],
    (2, 2, 2, 3): [
        case(
            "I",
            lambda t: (t.isolated(A) or t.isolated(AC))
            and (t.isolated(B) or t.isolated(BC))
            and t.non_isolated(C),
            6,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            TCOV("B", "AB", 1),
        ),
        case(
            "S",
            lambda t: (t.isolated(A) or t.isolated(AC))
            and (t.isolated(B) or t.isolated(BC))
            and t.has_clean_short_branch,
            6,
            SHORT("C"),
            OUT("C", "A", 2),
            OUT("A", "AB", 1),
            OUT("AB", "B", 1),
            OUT("AB", "B", 1),
        ),
        case(
            "Ma",
            lambda t: t.isolated(A)
            and t.isolated(B)
            and t.isolated(C)
            and t.mate(A, "A", C),
            6,
            IN("C"),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
            OUT("A", "AB", 1),
            SEMI("A", "A", C),
        ),
        case(
            "Mb",
            lambda t: t.isolated(A)
            and t.isolated(B)
            and t.isolated(C)
            and t.mate(B, "B", C),
            6,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            SEMI("B", "B", C),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
    (2, 2, 2, 4): [
        case(
            "I",
            lambda t: t.non_isolated(C)
            and (t.isolated(A) or (t.corooted(A, C) and t.isolated(AC)))
            and (t.isolated(B) or (t.corooted(B, C) and t.isolated(BC))),
            6,
            IN("C"),
            OUT("A", "AB", 1),
            OUT("A", "AB", 1),
            OUT("B", "AB", 1),
            OUT("B", "AB", 1),
        ),
        reduce_case(">>", ALWAYS, "AB"),
    ],
}

TABLE: dict[tuple[int, int, int, int], list[Case]] = {}
TABLE.update(_G1)
TABLE.update(_G2_ABC)
TABLE.update(_G2_ABX)
TABLE.update(_G2_ACX)
TABLE.update(_G3)

assert len(TABLE) == 56


def known_compositions() -> list[tuple[int, int, int, int]]:
    return sorted(TABLE)


def normalize_ab_swap(tree: TaggedTree) -> tuple[TaggedTree, bool]:
    """Swap A and B tags when the B class has more leaves."""
    la, lb, _, _ = tree.composition()
    if lb > la:
        return tree.with_swapped_tags(), True
    return tree, False


# ---------------------------------------------------------------------------
# Recipe instantiation


def _spec_options(tree: TaggedTree, topo: Topology, spec: PathSpec, used: set[int]):
    if spec.kind in ("in", "out", "tcov"):
        firsts = [u for u in topo.classes[spec.c1] if u not in used]
        if spec.kind == "in":
            for u, v in combinations(firsts, 2):
                yield (u, v, (u, v))
        elif spec.kind == "out":
            for u in firsts:
                for v in topo.classes[spec.c2]:
                    if v not in used and v != u:
                        yield (u, v, (u, v))
        else:
            for u in firsts:
                for v in topo.classes[spec.c2]:
                    if v in used and v != u:
                        yield (u, v, (u,))
    elif spec.kind == "semi":
        if spec.covered_src:
            sources = [u for u in topo.classes[spec.c1] if u in used]
        else:
            sources = [u for u in topo.classes[spec.c1] if u not in used]
        mates = topo.mate_nodes(frozenset({spec.c1}), spec.tag, spec.host)
        for u in sources:
            for m in mates:
                yield (u, m, (u,) if not spec.covered_src else ())
    elif spec.kind == "short":
        if spec.c1 == "C":
            cands = topo.solo_candidates()
            rest = [u for u in topo.classes["C"] if u not in cands]
            pool = cands + rest
        else:
            pool = topo.classes[spec.c1]
        for u in pool:
            if u not in used:
                yield (u, u, (u,))
    elif spec.kind == "cut":
        for n in topo.link_bads(frozenset({spec.c1}), frozenset({spec.c2})):
            yield (n, n, ())
    else:  # pragma: no cover
        raise PreconditionViolated(f"unknown path spec {spec.kind}")


def _instantiate(tree: TaggedTree, topo: Topology, cs: Case) -> Cover | None:
    """Bind a recipe to concrete nodes, backtracking until the resulting
    cover validates at the declared cost; None when no binding works."""
    recipe = cs.recipe
    budget = [20000]

    def backtrack(i: int, used: set[int], paths: list[CoverPath]) -> Cover | None:
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if i == len(recipe):
            cover = Cover(list(paths))
            try:
                cover.validate(tree)
            except PreconditionViolated:
                return None
            if cover.total_cost != cs.cost:
                return None
            return cover
        spec = recipe[i]
        for u, v, consumed in _spec_options(tree, topo, spec, used):
            cp = path_cost(tree, u, v)
            if cp.cost != spec.cost:
                continue
            paths.append(cp)
            used.update(consumed)
            got = backtrack(i + 1, used, paths)
            if got is not None:
                return got
            paths.pop()
            used.difference_update(consumed)
        return None

    return backtrack(0, set(), [])


def _reduce_and_recurse(
    tree: TaggedTree, cs: Case, depth: int
) -> tuple[int, Cover, list[str]] | None:
    """Spend one in-traversal of the named class and recurse; every choice
    of endpoints is tried and the cheapest valid outcome kept."""
    leaves = [u for u in tree.leaves() if tree.leaf_class(u) == cs.reduce_class]
    best: tuple[int, Cover, list[str]] | None = None
    for u, v in combinations(sorted(leaves), 2):
        first = path_cost(tree, u, v)
        reduced, support = reduce_by_paths(tree, [(u, v)])
        try:
            sub_cost, sub_cover, sub_labels = optimal_cover_of_residual(reduced, _depth=depth - 1)
        except (UnknownComposition, NoCaseMatched):
            continue
        total = first.cost + sub_cost
        if best is not None and total >= best[0]:
            continue
        lifted = lift_paths(tree, support, sub_cover.paths)
        cover = Cover([first] + lifted)
        try:
            cover.validate(tree)
        except PreconditionViolated:
            continue
        if cover.total_cost != total:
            continue
        best = (total, cover, sub_labels)
    return best


def optimal_cover_of_residual(
    tree: TaggedTree, _depth: int = 16
) -> tuple[int, Cover, list[str]]:
    """Cost and witness cover for a residual tree via the composition tables.

    The first topology case whose predicate holds and whose recipe binds is
    the primary answer.  Because randomized cross-checking showed a few
    printed predicates to be narrower than the topologies their covers
    serve, every other case of the composition is also offered as a
    candidate; each candidate is a fully validated cover, so taking the
    cheapest one never undercuts the true optimum.
    """
    if _depth <= 0:
        raise NoCaseMatched("reduction recursion too deep")
    work, _ = normalize_ab_swap(tree)
    comp = work.composition()
    cases = TABLE.get(comp)
    if cases is None:
        raise UnknownComposition(str(comp))
    topo = Topology(work)
    primary: tuple[int, Cover, list[str]] | None = None
    best: tuple[int, Cover, list[str]] | None = None
    for cs in cases:
        fired = cs.cond(topo)
        if best is not None and cs.cost is not None and cs.cost >= best[0]:
            if primary is not None or not fired:
                continue
        if cs.reduce_class is not None:
            got = _reduce_and_recurse(work, cs, _depth)
            if got is None:
                continue
            cost, cover, sub_labels = got
            labels = [f"{comp} {cs.label}"] + sub_labels
        else:
            cover = _instantiate(work, topo, cs)
            if cover is None:
                continue
            cost, labels = cs.cost, [f"{comp} {cs.label}"]
        if fired and primary is None:
            primary = (cost, cover, labels)
        if best is None or cost < best[0]:
            best = (cost, cover, labels)
    if best is None:
        raise NoCaseMatched(str(comp))
    if primary is not None and primary[0] <= best[0]:
        return primary
    if primary is not None:
        return best[0], best[1], best[2] + ["*"]
    return best[0], best[1], best[2] + ["*"]
