import pytest

from conftest import bt

import trees as fig

from invindel.errors import DegenerateTree, PreconditionViolated
from invindel.oracle import OracleBudget, brute_force_tau, random_tagged_tree
from invindel.reduction import (
    apply_p_reduction,
    balanced_simultaneous_reduction,
    compute_residual,
    essential_leaf,
    reduce_from_3_to_1,
    solo_leaf_search_and_clean_reduction,
)
from invindel.treecover import analyze_topology


def test_p_reduction_single_bad_node():
    lone = bt({0: "bA"}, [])
    assert apply_p_reduction(lone, 0, 0).is_empty


def test_p_reduction_keeps_other_structure():
    tree = fig.REDUCTION1_II
    reduced = apply_p_reduction(tree, 3, 5)  # the two inner B-leaves
    reduced.validate()
    # three leaves remain: two A-leaves and the short-branch B-leaf
    assert reduced.composition() == (2, 1, 0, 0)
    assert 8 in reduced.leaves()


def test_reduction1_safety():
    # spending the clean in-traversal keeps the solo leaf and the total
    # splits additively; spending it on the solo leaf would not
    tree = fig.REDUCTION1_I
    safe = apply_p_reduction(tree, 3, 5)
    assert brute_force_tau(tree) == 2 + brute_force_tau(safe)
    unsafe = apply_p_reduction(tree, 8, 5)
    assert brute_force_tau(tree) < 2 + brute_force_tau(unsafe)

    tree = fig.REDUCTION1_II
    first = apply_p_reduction(tree, 3, 5)
    assert brute_force_tau(tree) == 1 + brute_force_tau(first)
    second = apply_p_reduction(tree, 5, 8)
    assert brute_force_tau(tree) == 1 + brute_force_tau(second)


def test_balanced_reduction_counts():
    tree = bt(
        {0: "g", 1: "bA", 2: "bA", 3: "bA", 4: "bA", 5: "b", 6: "bB"},
        [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)],
    )
    reduced, remaining = balanced_simultaneous_reduction(tree, "A", True)
    assert len(remaining) == 2
    assert reduced.composition()[0] == 2
    with pytest.raises(PreconditionViolated):
        balanced_simultaneous_reduction(tree, "B", False)


def test_balanced_reduction_preserving():
    # topology facts outside the reduced class survive a balanced reduction
    tree = bt(
        {
            0: "b",
            1: "g", 2: "bA", 3: "bA", 4: "bA", 5: "bA", 6: "bA", 7: "bA",
            8: "g", 9: "bB", 10: "bB", 11: "b", 12: "b",
        },
        [
            (0, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
            (0, 8), (8, 9), (8, 10), (8, 11), (11, 12),
        ],
    )
    before = analyze_topology(tree)
    reduced, remaining = balanced_simultaneous_reduction(tree, "A", True)
    after = analyze_topology(reduced)
    assert len(remaining) == 2
    assert after.composition == (2, 2, 1, 0)
    assert before.isolated["A"] == after.isolated["A"]
    assert before.isolated["B"] == after.isolated["B"]
    assert before.solo_candidates == after.solo_candidates
    assert before.links[("A", "B")] == after.links[("A", "B")]


def test_balanced_reduction_respects_solo():
    tree = bt(
        {
            0: "g", 1: "b", 2: "b", 3: "b", 4: "b", 5: "bA", 6: "b", 7: "bA",
        },
        [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (6, 7)],
    )
    reduced, remaining = balanced_simultaneous_reduction(tree, "C", True, solo=2)
    assert 2 in remaining and len(remaining) == 2


def test_essential_leaf_destroy_solo():
    wide = OracleBudget(max_tree_nodes=20)
    # keeping any starred leaf keeps the reduction safe; the branch that is
    # also a whole-tree branch never is one here, so the rule falls through
    # to the intersecting-fragments rule
    tree = fig.DESTROY_SOLO_I
    leaves = [5, 9, 13]
    kept = essential_leaf(tree, leaves)
    assert kept in (5, 9)
    reduced, kept2 = reduce_from_3_to_1(tree, leaves)
    others = sorted(set(leaves) - {kept2})
    assert brute_force_tau(tree, wide) == 1 + brute_force_tau(reduced, wide)

    tree = fig.DESTROY_SOLO_II
    kept = essential_leaf(tree, leaves)
    assert kept in (5, 9)
    reduced, _ = reduce_from_3_to_1(tree, leaves)
    assert brute_force_tau(tree, wide) == 1 + brute_force_tau(reduced, wide)


def test_essential_leaf_intersecting_fragments():
    wide = OracleBudget(max_tree_nodes=20)
    tree = fig.RED3TO1_III
    leaves = [2, 10, 13]
    kept = essential_leaf(tree, leaves)
    assert kept in (10, 13)
    reduced, _ = reduce_from_3_to_1(tree, leaves)
    assert brute_force_tau(tree, wide) == 1 + brute_force_tau(reduced, wide)


def test_essential_leaf_isolated_star():
    star = bt(
        {0: "b", 1: "bA", 2: "bA", 3: "bA", 4: "b", 5: "bB"},
        [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)],
    )
    kept = essential_leaf(star, [1, 2, 3])
    reduced, _ = reduce_from_3_to_1(star, [1, 2, 3])
    assert brute_force_tau(star) == 1 + brute_force_tau(reduced)


def test_essential_leaf_requires_three():
    with pytest.raises(PreconditionViolated):
        essential_leaf(fig.SOLO_I, [2, 4])


def test_compute_residual_worked_example():
    res = compute_residual(fig.REDUCTION3)
    assert res.reduction_cost == 7
    assert res.residual.composition() == (2, 1, 1, 3)
    assert res.solo_leaf in (39, 40)
    topo = analyze_topology(res.residual)
    assert topo.isolated["A"] and topo.isolated["B"]
    assert not topo.isolated["C"] and not topo.isolated["AB"]
    # the full certificate re-validates on the input tree
    cover = res.full_cover()
    cover.validate(fig.REDUCTION3)
    assert cover.total_cost == res.total_cost


def test_compute_residual_rejects_degenerate():
    from invindel.components import TaggedTree

    with pytest.raises(DegenerateTree):
        compute_residual(TaggedTree({}, {}))


def test_solo_search_prefers_keeping_solo():
    res = compute_residual(fig.SOLO_I)
    assert res.total_cost == 5
    # the winning cover uses a short path on a clean short-branch leaf
    shorts = [p for p in res.full_cover().paths if p.kind == "short"]
    assert any(not fig.SOLO_I.tags(p.u) for p in shorts)

    res = compute_residual(fig.SOLO_III)
    assert res.total_cost == 5
    shorts = [p for p in res.full_cover().paths if p.kind == "short"]
    assert not any(not fig.SOLO_III.tags(p.u) for p in shorts)


def test_solo_clean_reduction_standalone():
    tree = bt(
        {
            0: "g", 1: "bA", 2: "b", 3: "bB", 4: "b", 5: "b", 6: "b", 7: "b",
            8: "b", 9: "b", 10: "b",
        },
        [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (0, 6), (6, 7), (0, 8), (0, 9), (9, 10)],
    )
    res = solo_leaf_search_and_clean_reduction(tree)
    assert res.total_cost == brute_force_tau(tree)
    res.full_cover().validate(tree)


def test_reduction_safety_random(rng):
    # tau decomposes additively over the performed reduction for every
    # sampled mixed tree
    budget = OracleBudget(max_tree_nodes=14)
    checked = 0
    while checked < 150:
        tree = random_tagged_tree(rng, max_nodes=12, max_leaves=8)
        leaves = tree.leaves()
        shared = frozenset.intersection(*(tree.tags(u) for u in leaves))
        if shared or all(not tree.tags(u) for u in leaves):
            continue
        checked += 1
        res = compute_residual(tree)
        assert res.reduction_cost + brute_force_tau(res.residual, budget) == brute_force_tau(
            tree, budget
        )
        cover = res.full_cover()
        cover.validate(tree)
        assert cover.total_cost == res.total_cost == brute_force_tau(tree, budget)


def test_residual_composition_in_tables(rng):
    from invindel.residual import known_compositions, normalize_ab_swap

    table = set(known_compositions())
    checked = 0
    while checked < 200:
        tree = random_tagged_tree(rng, max_nodes=12, max_leaves=8)
        leaves = tree.leaves()
        shared = frozenset.intersection(*(tree.tags(u) for u in leaves))
        if shared or all(not tree.tags(u) for u in leaves):
            continue
        checked += 1
        res = compute_residual(tree)
        normalized, _ = normalize_ab_swap(res.residual)
        assert normalized.composition() in table


def test_clean_class_of_six_with_solo():
    # six clean leaves and a short-branch candidate: two indel-neutral
    # in-traversals reduce the class to two at cost four, keeping the
    # candidate alive for the residual stage
    tree = bt(
        {
            0: "b", 1: "b", 2: "b", 3: "b", 4: "bA", 5: "b", 6: "b", 7: "b",
            8: "b", 9: "b", 10: "bB", 11: "bA", 12: "bA", 13: "b", 14: "b", 15: "b",
        },
        [
            (0, 1), (0, 4), (0, 9), (0, 11), (1, 2), (1, 5), (1, 6), (1, 7),
            (1, 12), (1, 14), (2, 3), (7, 8), (9, 10), (12, 13), (14, 15),
        ],
    )
    assert len([u for u in tree.leaves() if not tree.tags(u)]) == 6
    res = compute_residual(tree)
    clean_steps = [s for s in res.steps if s.leaf_class == "C"]
    assert sum(s.cost for s in clean_steps) == 4
    # keeping the short-branch candidate beats every other hypothesis here
    assert res.solo_leaf == 5
    assert 5 in res.residual.leaves()
    wide = OracleBudget(max_tree_nodes=18)
    assert brute_force_tau(tree, wide) == res.reduction_cost + brute_force_tau(
        res.residual, wide
    )
    assert res.total_cost == brute_force_tau(tree, wide) == 8
