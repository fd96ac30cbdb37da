"""Sum-of-absolute-values norms and their exact polyhedral unit balls.

Two independent ball constructions are provided: the inductive symmetric
deflation and a hyperplane-arrangement oracle.  They must agree exactly,
which the test suite checks on fuzzed inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactla import (
    Vec,
    dot,
    is_zero,
    kernel_basis,
    rank,
    rat_from_str,
    rat_to_str,
    scale_vec,
    span_rank,
    transpose,
    vec,
)
from .polytope import (
    DimensionMismatch,
    RatPolytope,
    face_fan,
    section,
)
from . import exactla


class NotANorm(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


class RankDeficient(ValueError):
    pass


DEFAULT_MAX_K = 12


@dataclass(frozen=True)
class SumAbsNorm:
    """Weighted family of linear functionals v -> sum_i w_i |<beta_i, v>|.

    Weights are positive; betas may repeat or be zero (zero betas carry
    fiberedness information and do not affect the ball).
    """

    dim: int
    functionals: tuple[tuple[Fraction, Vec], ...]

    def __post_init__(self):
        for w, beta in self.functionals:
            if w <= 0:
                raise ValueError("weights must be positive, got %s" % w)
            if len(beta) != self.dim:
                raise DimensionMismatch("beta of wrong dimension")


def make_norm(dim, functionals) -> SumAbsNorm:
    return SumAbsNorm(
        dim, tuple((Fraction(w), vec(b)) for w, b in functionals)
    )


def evaluate(nrm: SumAbsNorm, v: Vec) -> Fraction:
    if len(v) != nrm.dim:
        raise DimensionMismatch("vector of wrong dimension")
    return sum(
        (w * abs(dot(beta, v)) for w, beta in nrm.functionals), Fraction(0)
    )


def folded_betas(nrm: SumAbsNorm) -> list[Vec]:
    """Weights folded into the betas; zero betas dropped."""
    return [
        scale_vec(w, beta)
        for w, beta in nrm.functionals
        if not is_zero(beta)
    ]


def is_norm(nrm: SumAbsNorm) -> bool:
    """True iff the weighted functionals separate points, i.e. span Q^d."""
    betas = folded_betas(nrm)
    return span_rank(betas) == nrm.dim if nrm.dim > 0 else True


def _base_subset(betas: list[Vec], d: int) -> list[int]:
    """First linearly independent d-subset of the betas, in input order."""
    chosen: list[int] = []
    for i, b in enumerate(betas):
        if span_rank([betas[j] for j in chosen] + [b]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                return chosen
    raise NotANorm("functionals do not span the space")


def _chamber_facets(betas: list[Vec], p: RatPolytope):
    """Facets of a sum-abs ball from its chamber functionals.

    Every facet normal of the ball of sum |<beta_i, .>| is a signed sum
    of the betas, so facet enumeration needs no subset brute force.
    """
    d = p.dim
    facets = []
    seen = set()
    for signs in itertools.product((1, -1), repeat=len(betas)):
        w = tuple(
            sum((s * b[k] for s, b in zip(signs, betas)), Fraction(0))
            for k in range(d)
        )
        if w in seen:
            continue
        seen.add(w)
        idx = frozenset(
            i for i, v in enumerate(p.vertices) if dot(w, v) == 1
        )
        if len(idx) >= d and rank(tuple(p.vertices[i] for i in idx)) == d:
            facets.append((w, idx))
    return tuple(facets)


def unit_ball_deflate(nrm: SumAbsNorm) -> RatPolytope:
    """Exact unit ball by inductive symmetric deflation.

    Base case: the cross polytope of the first independent d-subset of
    the (weight-folded) betas.  Each remaining beta folds in by scaling
    the old vertices by 1/(1 + |<beta, v>|) and adjoining the section by
    the beta's orthogonal hyperplane.
    """
    if not is_norm(nrm):
        raise NotANorm("functionals do not span the space")
    d = nrm.dim
    betas = folded_betas(nrm)
    base = _base_subset(betas, d)
    base_betas = [betas[i] for i in base]
    verts: set[Vec] = set()
    for i in base:
        others = tuple(b for j, b in zip(base, base_betas) if j != i)
        if d == 1:
            u: Vec = (Fraction(1),)
        else:
            (u,) = kernel_basis(others)
        u = scale_vec(1 / abs(dot(betas[i], u)), u)
        verts.add(u)
        verts.add(tuple(-x for x in u))
    used = list(base_betas)
    remaining = [b for j, b in enumerate(betas) if j not in base]
    ball = RatPolytope.unchecked(d, verts)
    for beta in remaining:
        scaled = {
            scale_vec(1 / (1 + abs(dot(beta, v))), v) for v in ball.vertices
        }
        if d > 1:
            facets = _chamber_facets(used, ball)
            cut = section(ball, beta, facets=facets)
            scaled.update(cut.vertices)
        used.append(beta)
        ball = RatPolytope.unchecked(d, scaled)
    return ball


def unit_ball_oracle(nrm: SumAbsNorm, max_k: int = DEFAULT_MAX_K) -> RatPolytope:
    """Independent ball computation via arrangement line enumeration.

    The ball is the polar dual of the zonotope of the betas, so its
    vertices sit on the lines cut out by rank-(d-1) subsets of the
    orthogonal hyperplanes, rescaled to norm one.
    """
    if not is_norm(nrm):
        raise NotANorm("functionals do not span the space")
    d = nrm.dim
    betas = folded_betas(nrm)
    if len(betas) > max_k:
        raise ResourceLimit(
            "%d functionals exceed the bound %d" % (len(betas), max_k)
        )
    distinct = sorted(set(betas))
    verts = set()
    if d == 1:
        lines = [(Fraction(1),)]
    else:
        lines = []
        for combo in itertools.combinations(distinct, d - 1):
            ker = kernel_basis(combo)
            if len(ker) != 1:
                continue
            lines.append(ker[0])
    for u in lines:
        value = sum((abs(dot(b, u)) for b in betas), Fraction(0))
        v = scale_vec(1 / value, u)
        verts.add(v)
        verts.add(tuple(-x for x in v))
    return RatPolytope.unchecked(d, verts)


def weight_solve(p: RatPolytope):
    """Positive weights on p's ridge hyperplanes realizing p as a ball.

    Solves sum_i w_i |<beta_i, v>| = 1 at every vertex; an underdetermined
    system gets the least-index particular solution.  Whatever comes out
    is re-verified against the oracle ball; returns None when infeasible.
    """
    if p.dim == 1:
        (v,) = (w for w in p.vertices if w[0] > 0)
        return [((Fraction(1),), 1 / v[0])]
    betas = face_fan(p).ridge_hyperplanes
    if not betas:
        return None
    rows = tuple(
        tuple(abs(dot(b, v)) for b in betas) for v in p.vertices
    )
    rhs = (Fraction(1),) * len(rows)
    w = exactla.solve(rows, rhs)
    if w is None or any(x <= 0 for x in w):
        return None
    candidate = make_norm(p.dim, list(zip(w, betas)))
    if unit_ball_oracle(candidate, max_k=max(DEFAULT_MAX_K, len(betas))) != p:
        return None
    return list(zip(betas, w))


def completion(p: RatPolytope) -> SumAbsNorm:
    """Unit-weight norm on p's ridge hyperplanes.

    Its ball induces a cone partition refining the one of p.
    """
    betas = face_fan(p).ridge_hyperplanes
    nrm = make_norm(p.dim, [(1, b) for b in betas])
    if not is_norm(nrm):
        raise NotANorm("ridge hyperplanes do not span; degenerate polytope")
    return nrm


def pullback(nrm: SumAbsNorm, emb, scale) -> SumAbsNorm:
    """Pull the norm back along a full-column-rank linear embedding.

    evaluate(result, v) = scale * evaluate(nrm, emb v); zero pulled-back
    betas are retained.
    """
    emb = tuple(vec(r) for r in emb)
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if len(emb) != nrm.dim:
        raise DimensionMismatch("embedding has %d rows, norm dim %d"
                                % (len(emb), nrm.dim))
    m = len(emb[0]) if emb else 0
    if rank(emb) != m:
        raise RankDeficient("embedding must have full column rank")
    cols = transpose(emb)
    functionals = []
    for w, beta in nrm.functionals:
        new_beta = tuple(dot(c, beta) for c in cols)
        functionals.append((scale * w, new_beta))
    return SumAbsNorm(m, tuple(functionals))


# ---------------------------------------------------------------------------
# serialization


def norm_to_json(nrm: SumAbsNorm) -> dict:
    return {
        "dim": nrm.dim,
        "functionals": [
            {"weight": rat_to_str(w), "beta": [rat_to_str(x) for x in b]}
            for w, b in nrm.functionals
        ],
    }


def norm_from_json(obj: dict) -> SumAbsNorm:
    dim = int(obj["dim"])
    functionals = []
    for i, f in enumerate(obj["functionals"]):
        try:
            w = rat_from_str(f["weight"])
            beta = tuple(rat_from_str(s) for s in f["beta"])
        except ValueError as exc:
            raise ValueError("functionals[%d]: %s" % (i, exc)) from exc
        if len(beta) != dim:
            raise ValueError("functionals[%d]: beta has wrong dimension" % i)
        if w <= 0:
            raise ValueError("functionals[%d]: weight must be positive" % i)
        functionals.append((w, beta))
    return SumAbsNorm(dim, tuple(functionals))
