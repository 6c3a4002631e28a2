import random

import pytest

from orthocolor.colorings import Coloring
from orthocolor.families import cube, generate_family, polyomino, rook
from orthocolor.graph import graph_from_edges


def classes_to_coloring(classes, v):
    colors = [0] * v
    for color, members in enumerate(classes, start=1):
        for x in members:
            colors[x - 1] = color
    return Coloring(len(classes), tuple(colors))


# the four 4-colorings of the cube, given as color classes
CUBE_CLASSES = [
    [{1, 3}, {2, 4}, {5, 7}, {6, 8}],
    [{1, 8}, {4, 5}, {2, 7}, {3, 6}],
    [{1, 6}, {2, 5}, {3, 8}, {4, 7}],
    [{1, 7}, {2, 8}, {3, 5}, {4, 6}],
]


@pytest.fixture
def cube_graph():
    return generate_family(cube()).graph


@pytest.fixture
def cube_colorings():
    return [classes_to_coloring(cls, 8) for cls in CUBE_CLASSES]


@pytest.fixture
def rook2():
    return generate_family(rook(2, 2)).graph


@pytest.fixture
def diagonal_polyomino():
    return generate_family(polyomino([(1, 1), (2, 2), (3, 3), (4, 4)])).graph


def random_graph(rng: random.Random, v: int, p: float):
    edges = [(a, b) for a in range(1, v + 1) for b in range(a + 1, v + 1) if rng.random() < p]
    return graph_from_edges(v, edges)


def seeded_corpus(seed: int, count: int, vmin: int, vmax: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        v = rng.randint(vmin, vmax)
        p = rng.choice([0.0, 0.1, 0.2, 0.3, 0.5, 0.7])
        out.append(random_graph(rng, v, p))
    return out
