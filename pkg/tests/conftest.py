from pathlib import Path

import pytest

from triviso.graphcore import Graph, read_edge_list
from triviso.perm import Permutation

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    return DATA / name


def load(name: str) -> Graph:
    return read_edge_list(DATA / name)


def graph1(edges, n=None) -> Graph:
    """Graph from 1-based edge pairs."""
    return Graph.from_edges([(u - 1, v - 1) for u, v in edges], n)


def cyc(text: str, n: int) -> Permutation:
    return Permutation.from_cycles(text, n)


KLEIN = ("(1 3)(2 4)", "(1 2)(3 4)")


@pytest.fixture
def klein():
    return [cyc(c, 4) for c in KLEIN]


@pytest.fixture
def example1():
    return load("example1_a.txt"), load("example1_b.txt")


@pytest.fixture
def example2():
    return load("example2_a.txt"), load("example2_b.txt")


@pytest.fixture
def star():
    return load("star.txt")
