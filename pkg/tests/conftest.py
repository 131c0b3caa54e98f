import pytest

from arrcoh.arrangement import Arrangement
from arrcoh.fields import PrimeField, Rationals


def build(backend, dim, forms):
    return Arrangement(
        backend,
        dim,
        [(backend.parse(str(c)), tuple(backend.parse(str(x)) for x in cs)) for c, cs in forms],
    )


# name -> (dimension, forms); forms are (constant, coeffs) with string-able scalars
CORPUS_SPECS = {
    "boolean2": (2, [(0, (1, 0)), (0, (0, 1))]),
    "boolean3": (3, [(0, (1, 0, 0)), (0, (0, 1, 0)), (0, (0, 0, 1))]),
    "gm": (1, [(0, (1,))]),
    "two_points": (1, [(0, (1,)), (-1, (1,))]),
    "three_points": (1, [(0, (1,)), (-1, (1,)), (-2, (1,))]),
    "parallel_pair": (2, [(0, (1, 0)), (-1, (1, 0))]),
    "parallel_triple": (2, [(0, (1, 0)), (-1, (1, 0)), (-2, (1, 0))]),
    "triangle_concurrent": (2, [(0, (1, 0)), (0, (0, 1)), (0, (1, -1))]),
    "four_concurrent": (2, [(0, (1, 0)), (0, (0, 1)), (0, (1, 1)), (0, (1, -1))]),
    "mixed_parallel": (2, [(0, (1, 0)), (0, (0, 1)), (0, (1, -1)), (-1, (1, 0))]),
    "generic_triangle": (2, [(0, (1, 0)), (0, (0, 1)), (-1, (1, 1))]),
    "braid3": (3, [(0, (1, -1, 0)), (0, (0, 1, -1)), (0, (1, 0, -1))]),
    "braid3_coords": (
        3,
        [
            (0, (1, 0, 0)),
            (0, (0, 1, 0)),
            (0, (0, 0, 1)),
            (0, (1, -1, 0)),
            (0, (0, 1, -1)),
            (0, (1, 0, -1)),
        ],
    ),
}


def make_corpus(backend):
    out = []
    for name, (dim, forms) in CORPUS_SPECS.items():
        try:
            out.append((name, build(backend, dim, forms)))
        except ValueError:
            # degenerate over small prime fields (coincident hyperplanes)
            continue
    return out


@pytest.fixture(scope="session")
def q():
    return Rationals()


@pytest.fixture(scope="session")
def q_corpus(q):
    return make_corpus(q)


@pytest.fixture(scope="session")
def q_named(q_corpus):
    return dict(q_corpus)


@pytest.fixture(scope="session")
def f5():
    return PrimeField(5)
