import functools

import pytest

from polytract import MConvexSet, enumerate_mconvex, simplex
from polytract.mconvex import lattice_points

SHAPES = [(3, 2), (2, 3), (4, 2), (3, 3)]


@functools.lru_cache(maxsize=None)
def family(shapes=tuple(SHAPES)):
    """Every M-convex subset of the listed simplices (264 sets)."""
    return tuple(J for n, r in shapes for J in enumerate_mconvex(n, r))


def uniform(k, n):
    return MConvexSet(n, k, [p for p in lattice_points(n, k) if max(p) <= 1])


def named_sets():
    fano_lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    fano = []
    for p in lattice_points(7, 3):
        if max(p) <= 1:
            s = tuple(i for i in range(7) if p[i])
            if s not in fano_lines:
                fano.append(p)
    return {
        "U22": uniform(2, 2),
        "U23": uniform(2, 3),
        "U24": uniform(2, 4),
        "Fano": MConvexSet(7, 3, fano),
        "U+23": MConvexSet(3, 2, [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]),
        "D22": simplex(2, 2),
        "D23-e2": MConvexSet(3, 2, [p for p in lattice_points(3, 2) if p != (0, 2, 0)]),
        "D23": simplex(3, 2),
        "D32": simplex(2, 3),
    }


@pytest.fixture(scope="session")
def fam():
    return family()


@pytest.fixture(scope="session")
def named():
    return named_sets()
