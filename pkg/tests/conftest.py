"""Shared randomized generators for the property suites (all seeded)."""

from __future__ import annotations

import random

from motivic_plumbing import (
    ClosedCover,
    Curve,
    GwElement,
    GwMatrix,
    IntMatrix,
    Intersection,
    PlumbingGraph,
    Point,
    Rational,
)


def random_gw(rng: random.Random, bound: int = 9) -> GwElement:
    return GwElement(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def random_gw_matrix(rng: random.Random, rows: int, cols: int, bound: int = 4) -> GwMatrix:
    return GwMatrix.from_rows(
        [[random_gw(rng, bound) for _ in range(cols)] for _ in range(rows)]
    )


def random_tree_graph(rng: random.Random, max_vertices: int = 12) -> PlumbingGraph:
    """Random orientable transverse tree with rational points."""
    n = rng.randint(1, max_vertices)
    vertices = tuple(
        Curve(f"t{i}", 2 * rng.randint(-4, 2)) for i in range(n)
    )
    edges = []
    for i in range(1, n):
        parent = rng.randrange(i)
        unit = rng.choice((1, -1))
        edges.append(Intersection(f"t{parent}", f"t{i}", (Point(unit_class=unit),)))
    return PlumbingGraph(vertices, tuple(edges), Rational())


def permute_graph(rng: random.Random, g: PlumbingGraph) -> PlumbingGraph:
    """Relabel/reorder the vertices by a random permutation."""
    order = list(range(len(g.vertices)))
    rng.shuffle(order)
    vertices = tuple(g.vertices[i] for i in order)
    return PlumbingGraph(vertices, g.edges, g.base_field)


def random_cover(rng: random.Random, max_indices: int = 4) -> ClosedCover:
    """Random downward-closed component-count table on up to 6 subsets deep."""
    n = rng.randint(1, max_indices)
    components = {frozenset({i}): rng.randint(1, 2) for i in range(n)}
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.6:
                components[frozenset({i, j})] = rng.randint(1, 2)
                pairs.append((i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                faces = [frozenset(p) for p in ((i, j), (i, k), (j, k))]
                if all(f in components for f in faces) and rng.random() < 0.5:
                    components[frozenset({i, j, k})] = 1
    return ClosedCover(n, components)
