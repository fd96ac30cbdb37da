"""Seeded random generators for the verification suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactla import Vec, span_rank
from .manifold import (
    SimplifiedGraph,
    SurgeryPair,
    Unachievable,
    VertexLabel,
    witness_euler,
    witness_surgeries,
)
from .normball import SumAbsNorm, make_norm
from .polytope import NotFullDimensional, RatPolytope, convex_hull


def random_norm(rng: random.Random, dmax: int = 4, kmax: int = 7,
                bound: int = 5) -> SumAbsNorm:
    """Spanning unit-weight norm with integer betas in [-bound, bound]."""
    d = rng.randint(1, dmax)
    k = rng.randint(d, kmax)
    while True:
        betas = [
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d))
            for _ in range(k)
        ]
        nonzero = [b for b in betas if any(x != 0 for x in b)]
        if span_rank(nonzero) == d:
            return make_norm(d, [(1, b) for b in betas])


def random_rational(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_graph(rng: random.Random, max_vertices: int = 4,
                 max_genus: int = 2) -> SimplifiedGraph:
    """Validated graph with achievable (e, chi) witnesses on every vertex."""
    n = rng.randint(1, max_vertices)
    edges = []
    for u in range(n):
        for v in range(u, n):
            for _ in range(rng.randint(0, 1)):
                p = rng.choice([-3, -2, -1, 1, 2, 3])
                edges.append((u, v, p))
    vertices = []
    for i in range(n):
        deg = sum((u == i) + (v == i) for u, v, _ in edges)
        genus = rng.randint(0, max_genus)
        e = random_rational(rng)
        chi = Fraction(-rng.randint(1, 4))
        try:
            surgeries = witness_surgeries(e, chi, genus, deg)
        except Unachievable as exc:
            surgeries = witness_surgeries(e, exc.suggestion, genus, deg)
        vertices.append(
            VertexLabel(genus=genus, euler_number=witness_euler(surgeries),
                        surgeries=tuple(surgeries))
        )
    return SimplifiedGraph(tuple(vertices), tuple(edges))


def random_polygon(rng: random.Random, max_points: int = 6,
                   bound: int = 6) -> RatPolytope:
    """Symmetric full-dimensional rational polygon."""
    while True:
        pts = set()
        for _ in range(rng.randint(2, max_points)):
            p = (random_rational(rng, bound, 3), random_rational(rng, bound, 3))
            if any(x != 0 for x in p):
                pts.add(p)
                pts.add((-p[0], -p[1]))
        try:
            return convex_hull(pts, 2)
        except NotFullDimensional:
            continue


def random_realization_target(rng: random.Random, dmax: int = 3,
                              nmax: int = 5, max_genus: int = 2):
    """(betas, genera, fibered) triple accepted by realize()."""
    d = rng.randint(1, dmax)
    n = rng.randint(d, nmax)
    fibered = rng.choice([True, False])
    while True:
        betas = [
            tuple(random_rational(rng) for _ in range(d)) for _ in range(n)
        ]
        if fibered:
            betas = [
                b if any(x != 0 for x in b)
                else tuple(Fraction(1) for _ in range(d))
                for b in betas
            ]
        nonzero = [b for b in betas if any(x != 0 for x in b)]
        if span_rank(nonzero) == d:
            genera = [rng.randint(0, max_genus) for _ in range(n)]
            return betas, genera, fibered
