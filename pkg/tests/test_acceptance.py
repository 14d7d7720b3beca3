"""Acceptance checks for the headline claims, one test per criterion.

Each test prints a single PASS/FAIL line (visible even under captured output)
before asserting.
"""
import itertools
import math
import random
import time

import numpy as np
import pytest

from triviso.autengine import aut_e
from triviso.bench import isomorphic_pair, random_cubic, random_subcubic, relabel_random
from triviso.blocks import minimal_block_system, smallest_block
from triviso.colorauto import ColoredDomain, Coset, c_b
from triviso.graphcore import build_x
from triviso.group import close, group_order, is_smooth, sgs_index2_subgroup
from triviso.iso import isomorphic, verify_mapping
from triviso.oracle import (all_rooted_trees, brute_color_aut, brute_iso, brute_sgs, brute_tree_iso,
                            connected_subcubic_graphs, random_two_group)
from triviso.perm import Permutation, generated_elements, identity
from triviso.phylo import PhyloTree, phylo_isomorphic, random_phylo_tree

from conftest import cyc

EXAMPLE_MAPPING = [2, 1, 7, 4, 5, 6, 3, 8, 9, 10]


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
        assert ok, f"{name}: {detail}"
    return emit


def elements(coset, n):
    if coset.is_empty:
        return set()
    return {coset.rep * g for g in generated_elements(list(coset.gens), n)}


def test_example_isomorphic_pair(example1, report):
    a, b = example1
    t0 = time.perf_counter()
    ok, mapping = isomorphic(a, b, want_mapping=True)
    dt = time.perf_counter() - t0
    good = ok and verify_mapping(a, b, mapping) and verify_mapping(a, b, [x - 1 for x in EXAMPLE_MAPPING])
    report("example-isomorphic", good and dt < 1.0, f"time={dt:.3f}s")


def test_example_non_isomorphic_pair(example2, report):
    t0 = time.perf_counter()
    ok, _ = isomorphic(*example2)
    dt = time.perf_counter() - t0
    report("example-non-isomorphic", not ok and dt < 1.0, f"time={dt:.3f}s")


def test_star_edge_automorphisms(star, report):
    res = aut_e((star, (0, 1)))
    got = generated_elements(list(res.generators), 4)
    report("star-aut-e", got == {identity(4), cyc("(3 4)", 4)}, f"order={len(got)}")


def test_klein_blocks(klein, report):
    block = smallest_block(klein, 0, 2)
    system = minimal_block_system(klein, range(4))
    ok = tuple(block) == (0, 2) and len(system.blocks) == 2
    report("klein-blocks", ok, f"block={[x + 1 for x in block]} blocks={len(system.blocks)}")


def test_iso_against_brute_force(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = checked = 0
    for n in range(1, 9):
        graphs = connected_subcubic_graphs(n)
        for i, j in itertools.combinations_with_replacement(range(len(graphs)), 2):
            a = graphs[i]
            b = graphs[j] if i != j else relabel_random(graphs[j], rng)
            ok, mapping = isomorphic(a, b, want_mapping=True)
            if ok != brute_iso(a, b) or (ok and not verify_mapping(a, b, mapping)):
                bad += 1
            checked += 1
    for n in (9, 10):
        for _ in range(200):
            a = random_subcubic(n, rng)
            b = relabel_random(a, rng) if rng.random() < 0.5 else random_subcubic(n, rng)
            ok, mapping = isomorphic(a, b, want_mapping=True)
            if ok != brute_iso(a, b) or (ok and not verify_mapping(a, b, mapping)):
                bad += 1
            checked += 1
    dt = time.perf_counter() - t0
    report("iso-oracle", bad == 0 and dt < 600, f"pairs={checked} disagreements={bad} time={dt:.1f}s")


def test_color_automorphisms_against_brute_force(report):
    bad = runs = 0
    for seed in range(500):
        rng = random.Random(seed)
        n = rng.randint(1, 12)
        gens = random_two_group(rng, n)
        k = rng.randint(2, 4)
        colors = [rng.randrange(k) for _ in range(n)]
        sigma = Permutation(rng.sample(range(n), n))
        if rng.random() < 0.5:
            elems = sorted(generated_elements(gens, n), key=lambda p: p.images.tobytes())
            sigma = rng.choice(elems)
        dom = ColoredDomain.from_colors(colors)
        for mode in ("direct", "tree"):
            res = c_b(Coset(sigma, tuple(gens)), range(n), dom, mode=mode)
            got = elements(res, n)
            if got != brute_color_aut(gens, colors, range(n), sigma):
                bad += 1
            elif got:
                base = elements(c_b(Coset.of_group(gens, n), range(n), dom, mode=mode), n)
                if got != {res.rep * h for h in base}:
                    bad += 1
        runs += 1
    report("color-aut-oracle", bad == 0, f"instances={runs} failures={bad}")


def test_two_group_invariant_on_cubic_instances(report):
    rng = random.Random(77)
    levels = bad = 0
    instances = 60
    for _ in range(instances):
        n = rng.randrange(4, 19, 2)
        g = random_cubic(n, rng)
        h = relabel_random(g, rng) if rng.random() < 0.5 else random_cubic(n, rng)
        x = build_x(g, rng.choice(g.edges()), h, rng.choice(h.edges()))
        assert x.graph.n <= 40
        res = aut_e(x, trace=True)
        for gens in res.level_generators:
            order = group_order(list(gens), x.graph.n)
            levels += 1
            bad += order & (order - 1) != 0
    report("two-group-invariant", bad == 0, f"instances={instances} levels={levels} violations={bad}")


def _random_generators(rng):
    n = rng.randint(2, 8)
    gens = [Permutation(rng.sample(range(n), n)) for _ in range(rng.randint(1, 3))]
    try:
        return n, gens, generated_elements(gens, n, limit=5040)
    except OverflowError:
        return n, gens, None


def test_sift_membership_and_order(report):
    rng = random.Random(5)
    sets = bad = 0
    while sets < 100:
        n, gens, elems = _random_generators(rng)
        if elems is None or len(elems) == math.factorial(n):
            continue
        chain = close(gens, n)
        bad += chain.order() != len(elems)
        bad += sum(not chain.contains(p) for p in elems)
        outside = 0
        while outside < 100:
            p = Permutation(rng.sample(range(n), n))
            if p not in elems:
                bad += chain.contains(p)
                outside += 1
        sets += 1
    report("sift", bad == 0, f"sets={sets} failures={bad}")


def test_index2_smooth_split(report):
    instances = bad = 0
    seed = 0
    while instances < 100:
        rng = random.Random(seed)
        seed += 1
        n = rng.randint(2, 10)
        gens = random_two_group(rng, n)
        moved = sorted({x for p in gens for x in p.support()})
        if not moved:
            continue
        seq = brute_sgs(gens, n)
        elems = generated_elements(seq, n)
        orbit = sorted({p(moved[0]) for p in elems})
        if len(orbit) < 2:
            continue
        first = minimal_block_system(seq, orbit).blocks[0]
        block = set(first)

        def member(p, a=first[0], block=block):
            return p(a) in block

        _, sub = sgs_index2_subgroup(seq, member)
        want = {p for p in elems if member(p)}
        ok = 2 * len(want) == len(elems)
        ok = ok and generated_elements(list(sub), n) == want and is_smooth(list(sub), n)
        bad += not ok
        instances += 1
    report("sgs-index2", bad == 0, f"instances={instances} failures={bad}")


def _swap_two_taxa(t, rng):
    names = sorted(t.taxa)
    x, y = rng.sample(names, 2)
    taxa = dict(t.taxa)
    taxa[x], taxa[y] = taxa[y], taxa[x]
    return PhyloTree(t.parent, t.root, taxa)


def _time_phylo(n, seed, reps=5):
    best = math.inf
    for r in range(reps):
        rng = random.Random(seed + r)
        t = random_phylo_tree(n, rng)
        m = list(range(n))
        rng.shuffle(m)
        u = t.relabeled(m)
        t0 = time.perf_counter()
        phi = phylo_isomorphic(t, u)
        best = min(best, time.perf_counter() - t0)
        assert phi is not None
    return best


def test_phylo_against_oracle_and_scaling(report):
    rng = random.Random(11)
    bad = checked = 0
    for k in range(1, 6):
        trees = all_rooted_trees(k)
        for i, j in itertools.product(range(len(trees)), repeat=2):
            got = phylo_isomorphic(trees[i], trees[j])
            bad += (got is None) != (brute_tree_iso(trees[i], trees[j]) is None)
            checked += 1
    for k in (6, 7):
        for t in all_rooted_trees(k):
            m = list(range(t.size))
            rng.shuffle(m)
            u = t.relabeled(m)
            for other in (u, _swap_two_taxa(u, rng)):
                got = phylo_isomorphic(t, other)
                bad += (got is None) != (brute_tree_iso(t, other) is None)
                checked += 1
    small = _time_phylo(10**4, 1)
    large = _time_phylo(10**5, 2)
    ratio = large / small
    report("phylo", bad == 0 and ratio <= 15,
           f"comparisons={checked} disagreements={bad} ratio={ratio:.1f}")


def test_scaling_on_isomorphic_cubic_pairs(report):
    sizes = [50, 100, 200, 400]
    times = []
    for n in sizes:
        best = math.inf
        for rep in range(3):
            g, h = isomorphic_pair(n, random.Random(f"scale-{n}-{rep}"))
            t0 = time.perf_counter()
            ok, mapping = isomorphic(g, h, want_mapping=True)
            best = min(best, time.perf_counter() - t0)
            assert ok and verify_mapping(g, h, mapping)
        times.append(best)
    slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
    detail = " ".join(f"n={n}:{t:.2f}s" for n, t in zip(sizes, times))
    report("scaling", slope <= 4.5 and times[-1] < 300, f"exponent={slope:.2f} {detail}")
