"""Exact symmetric rational polytopes: hulls, facets, ridges, completeness.

Everything is brute force over exact rationals; the intended scale is
ambient dimension <= 6 and a few dozen vertices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactla import (
    Mat,
    Vec,
    dot,
    is_zero,
    kernel_basis,
    neg_vec,
    rank,
    rat_from_str,
    rat_to_str,
    scale_vec,
    solve,
    vec,
)


class NotFullDimensional(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class DegenerateGeometry(ValueError):
    pass


class ZeroNormal(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RatPolytope:
    """Symmetric full-dimensional polytope given by its vertex set.

    Vertices are lexicographically sorted; the set is minimal and closed
    under negation, with the origin in the interior.
    """

    dim: int
    vertices: tuple[Vec, ...]

    @classmethod
    def unchecked(cls, dim: int, vertices) -> "RatPolytope":
        # internal: callers guarantee minimality (e.g. Construction output)
        return cls(dim, tuple(sorted(set(vertices))))


@dataclass(frozen=True)
class FaceFan:
    """Facets, ridges and the deduplicated ridge-hyperplane family.

    facets: (normal with <normal,x> = 1 on the facet, vertex index set)
    ridges: (pair of facet indices, vertex index set)
    ridge_hyperplanes: primitive integral normals, first nonzero positive
    """

    facets: tuple[tuple[Vec, frozenset[int]], ...]
    ridges: tuple[tuple[tuple[int, int], frozenset[int]], ...]
    ridge_hyperplanes: tuple[Vec, ...]


def primitive_normal(v: Vec) -> Vec:
    """Scale to a primitive integral vector with first nonzero entry > 0."""
    if is_zero(v):
        raise ZeroNormal("cannot normalize the zero vector")
    den = math.lcm(*(x.denominator for x in v))
    ints = [x * den for x in v]
    g = math.gcd(*(abs(int(x)) for x in ints))
    ints = [x / g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _facet_normals(points: tuple[Vec, ...], dim: int) -> list[Vec]:
    """All supporting hyperplanes <n,x> = 1 spanned by dim of the points."""
    normals = set()
    for combo in itertools.combinations(points, dim):
        n = solve(combo, (Fraction(1),) * dim)
        if n is None or rank(combo) < dim:
            continue
        if all(dot(n, p) <= 1 for p in points):
            normals.add(n)
    return sorted(normals)


def convex_hull(points, dim: int) -> RatPolytope:
    """Minimal symmetric vertex description of the hull of the points."""
    pts = tuple(sorted({vec(p) for p in points}))
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("point of wrong dimension")
    for p in pts:
        if neg_vec(p) not in pts:
            raise NotSymmetric("point set not closed under negation: %s" % (p,))
    pts = tuple(p for p in pts if not is_zero(p))
    if rank(pts) < dim:
        raise NotFullDimensional("points do not span the ambient space")
    normals = _facet_normals(pts, dim)
    verts = []
    for p in pts:
        active = [n for n in normals if dot(n, p) == 1]
        if len(active) >= dim and rank(tuple(active)) == dim:
            verts.append(p)
    return RatPolytope(dim, tuple(verts))


def facets_of(p: RatPolytope) -> tuple[tuple[Vec, frozenset[int]], ...]:
    """Facet normals with their vertex index sets, brute force."""
    facets = []
    for n in _facet_normals(p.vertices, p.dim):
        idx = frozenset(i for i, v in enumerate(p.vertices) if dot(n, v) == 1)
        members = tuple(p.vertices[i] for i in idx)
        if rank(members) != p.dim:
            raise DegenerateGeometry(
                "facet %s has vertex set of deficient rank" % (n,)
            )
        facets.append((n, idx))
    return tuple(facets)


def _ridges_from_facets(p, facets):
    ridges = []
    for (a, (na, sa)), (b, (nb, sb)) in itertools.combinations(
        enumerate(facets), 2
    ):
        common = sa & sb
        if not common:
            continue
        members = tuple(p.vertices[i] for i in common)
        if rank(members) == p.dim - 1:
            ridges.append(((a, b), common))
    return tuple(ridges)


@lru_cache(maxsize=None)
def face_fan(p: RatPolytope) -> FaceFan:
    """Facet and ridge structure plus the minimal ridge-hyperplane family."""
    facets = facets_of(p)
    if p.dim == 1:
        return FaceFan(facets, (), ())
    ridges = _ridges_from_facets(p, facets)
    seen = {s for _, s in ridges}
    if len(seen) != len(ridges):
        raise DegenerateGeometry("a ridge is shared by more than two facets")
    hyperplanes = set()
    for _, common in ridges:
        members = tuple(p.vertices[i] for i in common)
        normal_space = kernel_basis(members)
        if len(normal_space) != 1:
            raise DegenerateGeometry("ridge span has wrong codimension")
        hyperplanes.add(primitive_normal(normal_space[0]))
    return FaceFan(facets, ridges, tuple(sorted(hyperplanes)))


def ridge_hyperplanes(p: RatPolytope) -> tuple[Vec, ...]:
    return face_fan(p).ridge_hyperplanes


def is_complete(p: RatPolytope) -> tuple[bool, list[tuple[Vec, Vec]]]:
    """Completeness test of the induced cellular decomposition.

    A pair (hyperplane, facet normal) is a violation when the hyperplane
    separates the facet's vertices strictly.
    """
    fan = face_fan(p)
    violations = []
    for beta in fan.ridge_hyperplanes:
        for normal, idx in fan.facets:
            values = [dot(beta, p.vertices[i]) for i in idx]
            if any(v > 0 for v in values) and any(v < 0 for v in values):
                violations.append((beta, normal))
    return (not violations, violations)


def edges_of(p: RatPolytope, facets=None) -> list[tuple[int, int]]:
    """Vertex index pairs spanning 1-dimensional faces.

    A pair is an edge iff the intersection of all facets containing both
    endpoints contains no other vertex.
    """
    if facets is None:
        facets = facets_of(p)
    edges = []
    for i, j in itertools.combinations(range(len(p.vertices)), 2):
        shared = [s for _, s in facets if i in s and j in s]
        if not shared:
            continue
        common = frozenset.intersection(*shared)
        if common == {i, j}:
            edges.append((i, j))
    return edges


def section(p: RatPolytope, beta: Vec, facets=None) -> RatPolytope:
    """Slice of p by the hyperplane orthogonal to beta.

    The result has ambient dimension p.dim but geometric dimension one
    less; its vertex set is minimal and symmetric.
    """
    if is_zero(beta):
        raise ZeroNormal("section normal must be nonzero")
    if len(beta) != p.dim:
        raise DimensionMismatch("normal of wrong dimension")
    values = [dot(beta, v) for v in p.vertices]
    candidates = {v for v, t in zip(p.vertices, values) if t == 0}
    for i, j in edges_of(p, facets):
        ti, tj = values[i], values[j]
        if (ti > 0 > tj) or (tj > 0 > ti):
            u, w = p.vertices[i], p.vertices[j]
            s = ti / (ti - tj)
            crossing = tuple(a + s * (b - a) for a, b in zip(u, w))
            candidates.add(crossing)
    # minimalize inside the hyperplane via coordinates on a kernel basis
    plane = kernel_basis((beta,))
    coords = []
    basis_cols = tuple(zip(*plane))  # rows of the (dim x (dim-1)) basis matrix
    for c in candidates:
        x = solve(basis_cols, c)
        if x is None:
            raise DegenerateGeometry("section point off the hyperplane")
        coords.append(x)
    hull = convex_hull(coords, p.dim - 1)
    lifted = []
    for x in hull.vertices:
        v = tuple(
            sum((xi * b[k] for xi, b in zip(x, plane)), Fraction(0))
            for k in range(p.dim)
        )
        lifted.append(v)
    return RatPolytope.unchecked(p.dim, lifted)


def cone_refines(q: RatPolytope, p: RatPolytope) -> bool:
    """True iff every facet cone of q sits inside a single facet cone of p.

    Cone membership is the exact argmax test against p's facet normals.
    """
    if q.dim != p.dim:
        raise DimensionMismatch("ambient dimensions differ")
    p_facets = facets_of(p)
    q_facets = facets_of(q)
    for _, idx in q_facets:
        candidates = None
        for i in idx:
            v = q.vertices[i]
            values = [(k, dot(n, v)) for k, (n, _) in enumerate(p_facets)]
            best = max(t for _, t in values)
            argmax = {k for k, t in values if t == best}
            candidates = argmax if candidates is None else candidates & argmax
            if not candidates:
                return False
    return True


# ---------------------------------------------------------------------------
# serialization


def polytope_to_json(p: RatPolytope) -> dict:
    return {
        "dim": p.dim,
        "vertices": [[rat_to_str(x) for x in v] for v in p.vertices],
    }


def polytope_from_json(obj: dict) -> RatPolytope:
    dim = int(obj["dim"])
    verts = []
    for i, row in enumerate(obj["vertices"]):
        if len(row) != dim:
            raise ValueError("vertices[%d] has wrong dimension" % i)
        try:
            verts.append(tuple(rat_from_str(s) for s in row))
        except ValueError as exc:
            raise ValueError("vertices[%d]: %s" % (i, exc)) from exc
    return convex_hull(verts, dim)


def polytope_to_off(p: RatPolytope) -> str:
    """OFF export with 12-significant-digit decimal approximations.

    Plot-only; the JSON form is the authoritative one.
    """
    fan = face_fan(p)
    lines = [
        "OFF",
        "# decimal approximations (12 significant digits) of exact rationals;",
        "# the JSON output is authoritative",
        "%d %d 0" % (len(p.vertices), len(fan.facets)),
    ]
    for v in p.vertices:
        lines.append(" ".join("%.12g" % float(x) for x in v))
    for _, idx in fan.facets:
        members = sorted(idx)
        lines.append("%d %s" % (len(members), " ".join(map(str, members))))
    return "\n".join(lines) + "\n"
