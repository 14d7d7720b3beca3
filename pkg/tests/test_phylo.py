import random

import pytest
from hypothesis import given, settings, strategies as st

from triviso.oracle import all_rooted_trees, brute_tree_iso
from triviso.phylo import PhyloError, PhyloTree, format_newick, parse_newick, phylo_isomorphic, random_phylo_tree

from conftest import data_path


def read_tree(name):
    return parse_newick(data_path(name).read_text())


def is_tree_isomorphism(t1, t2, phi):
    if sorted(phi) != list(range(t2.size)) or phi[t1.root] != t2.root:
        return False
    if any(phi[leaf] != t2.taxa[x] for x, leaf in t1.taxa.items()):
        return False
    return all(p < 0 or t2.parent[phi[v]] == phi[p] for v, p in enumerate(t1.parent))


def test_parse_newick():
    t = read_tree("balanced4.nwk")
    assert t.parent == (-1, 0, 1, 1, 0, 4, 4)
    assert t.taxa == {"a": 2, "b": 3, "c": 5, "d": 6}
    assert format_newick(t) == "((a,b),(c,d));"
    assert parse_newick("(a:0.1,(b:2,c)x:3);").taxa.keys() == {"a", "b", "c"}
    assert parse_newick("a;").size == 1
    for bad in ("((a,b);", "(a,a);", "(a,,b);", "();", "(a)(b);", ""):
        with pytest.raises(PhyloError):
            parse_newick(bad)


def test_identical_trees_identity_mapping():
    t = read_tree("balanced4.nwk")
    assert phylo_isomorphic(t, t) == list(range(t.size))


def test_relabelled_internal_nodes_recovered():
    t = read_tree("balanced4.nwk")
    u = read_tree("balanced4_shuffled.nwk")
    phi = phylo_isomorphic(t, u)
    assert phi == [0, 4, 6, 5, 1, 3, 2]
    assert is_tree_isomorphism(t, u, phi)
    m = [3, 0, 6, 2, 5, 1, 4]
    assert phylo_isomorphic(t, t.relabeled(m)) == m


def test_caterpillar_vs_balanced():
    t, c = read_tree("balanced4.nwk"), read_tree("caterpillar4.nwk")
    assert phylo_isomorphic(t, c) is None
    assert brute_tree_iso(t, c) is None


def test_taxa_mismatch_raises():
    with pytest.raises(PhyloError):
        phylo_isomorphic(parse_newick("(a,b);"), parse_newick("(a,c);"))


def test_unary_chains_and_sizes():
    t = parse_newick("(((a,b)),c);")
    u = parse_newick("((a,b),c);")
    assert t.size == u.size + 1
    assert phylo_isomorphic(t, u) is None
    assert phylo_isomorphic(t, parse_newick("(c,((b,a)));")) is not None


def test_bad_trees_rejected():
    with pytest.raises(PhyloError):
        PhyloTree((-1, 0, 0), 0, {"a": 1})
    with pytest.raises(PhyloError):
        PhyloTree((-1, 2, 1), 0, {"a": 1})


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_all_pairs_small_leaf_counts(k):
    trees = all_rooted_trees(k)
    for i, t in enumerate(trees):
        for j, u in enumerate(trees):
            phi = phylo_isomorphic(t, u)
            assert (phi is not None) == (i == j) == (brute_tree_iso(t, u) is not None)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 30))
def test_random_trees_against_oracle(seed, n):
    rng = random.Random(seed)
    t = random_phylo_tree(n, rng)
    m = list(range(n))
    rng.shuffle(m)
    u = t.relabeled(m)
    phi = phylo_isomorphic(t, u)
    assert phi is not None and is_tree_isomorphism(t, u, phi)
    # swap two taxa: usually breaks the isomorphism
    names = sorted(t.taxa)
    if len(names) >= 2:
        x, y = rng.sample(names, 2)
        taxa = dict(u.taxa)
        taxa[x], taxa[y] = taxa[y], taxa[x]
        w = PhyloTree(u.parent, u.root, taxa)
        got = phylo_isomorphic(t, w)
        want = brute_tree_iso(t, w)
        assert (got is None) == (want is None)
        if got is not None:
            assert is_tree_isomorphism(t, w, got)


def test_deep_caterpillar():
    spine = 500
    parent = [-1] + list(range(spine - 1)) + list(range(spine))
    inner = set(parent)
    t = PhyloTree(tuple(parent), 0, {f"t{v}": v for v in range(len(parent)) if v not in inner})
    rng = random.Random(4)
    m = list(range(t.size))
    rng.shuffle(m)
    u = t.relabeled(m)
    assert phylo_isomorphic(t, u) == m
    assert phylo_isomorphic(t, _swap(u, "t500", "t999")) is None


def _swap(t, x, y):
    taxa = dict(t.taxa)
    taxa[x], taxa[y] = taxa[y], taxa[x]
    return PhyloTree(t.parent, t.root, taxa)
