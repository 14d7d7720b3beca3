import random

import pytest

from triviso.bench import (GenerationFailed, MODES, isomorphic_pair, pair_rng, pairing_model, random_cubic,
                           random_pair, random_subcubic, run_bench, semirandom_pair)
from triviso.graphcore import validate
from triviso.oracle import brute_iso


def test_random_cubic_is_valid_and_seeded():
    for n in (4, 10, 30):
        g = random_cubic(n, random.Random(n))
        report = validate(g, 3)
        assert report.valid and report.connected
        assert all(d == 3 for d in g.degrees())
        assert g == random_cubic(n, random.Random(n))


def test_random_subcubic_is_valid():
    rng = random.Random(8)
    for _ in range(30):
        g = random_subcubic(rng.randint(1, 15), rng)
        assert validate(g, 3).valid


def test_pairing_model_rejects_odd_degree_sum():
    with pytest.raises((GenerationFailed, ValueError)):
        pairing_model([3, 3, 3], random.Random(0))


def test_pair_makers():
    g, h = isomorphic_pair(10, pair_rng("isomorphic", 10, 0, 0))
    assert brute_iso(g, h)
    a, b = random_pair(10, random.Random(1))
    assert validate(a, 3).valid and validate(b, 3).valid
    for seed in range(10):
        g1, g2 = semirandom_pair(10, random.Random(seed))
        assert g1.degrees()[:-1] == g2.degrees()[:-1]
        assert g1.degrees()[-1] in (1, 3) and g2.degrees()[-1] in (1, 3)
        assert validate(g1, 3).valid and validate(g2, 3).valid


def test_pair_rng_is_deterministic():
    assert pair_rng("random", 20, 3, 1).random() == pair_rng("random", 20, 3, 1).random()
    assert pair_rng("random", 20, 3, 1).random() != pair_rng("random", 20, 3, 2).random()


def test_run_bench_rows():
    rows = list(run_bench([20, 30], "isomorphic", 0, 2))
    assert [(r.n, r.rep) for r in rows] == [(20, 0), (20, 1), (30, 0), (30, 1)]
    assert all(r.verdict for r in rows)
    assert rows[0].csv(with_time=False) == "20,isomorphic,0,0,,True"
    for mode in MODES:
        assert len(list(run_bench([12], mode, 1, 1))) == 1
    with pytest.raises(ValueError):
        list(run_bench([12], "sideways", 0, 1))
