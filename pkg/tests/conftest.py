import random

import pytest

from invindel.components import TaggedTree


def bt(specs: dict[int, str], edges: list[tuple[int, int]]) -> TaggedTree:
    """Build a tagged tree from compact node specs and validate its form."""
    tree = TaggedTree.from_spec(specs, edges)
    tree.validate()
    return tree


def canon(tree: TaggedTree):
    """Canonical encoding of an unrooted labeled tree, for isomorphism checks."""
    if tree.is_empty:
        return ()

    def enc(u, parent):
        subs = tuple(sorted(enc(v, u) for v in tree.adj[u] if v != parent))
        return (tree.is_bad(u), tuple(sorted(tree.tags(u))), subs)

    return min(enc(r, None) for r in tree.nodes)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
