"""Acceptance suite: one test (and one pass/fail line under -v) per criterion."""

import itertools
import random
import time
from fractions import Fraction as F

from graphnorm import fuzz
from graphnorm.exactla import (
    from_columns,
    matvec,
    rank_fraction_free,
    solve,
    scale_vec,
    vec,
)
from graphnorm.manifold import (
    SimplifiedGraph,
    derived_chi,
    invariants,
    nonvanishing_norm,
    realize,
    reduced_plumbing_matrix,
    witness_euler,
)
from graphnorm.normball import (
    evaluate,
    make_norm,
    pullback,
    unit_ball_deflate,
    unit_ball_oracle,
    weight_solve,
)
from graphnorm.polytope import (
    cone_refines,
    convex_hull,
    face_fan,
    is_complete,
)


def timed(budget):
    start = time.monotonic()

    def check():
        assert time.monotonic() - start < budget
    return check


def octahedron():
    return convex_hull(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
        3,
    )


def cube():
    return convex_hull(list(itertools.product((1, -1), repeat=3)), 3)


def apex_polytope(eps):
    """Cube of half-side 1/6 with apexes at distance eps on each axis."""
    pts = []
    for i in range(3):
        v = [F(0)] * 3
        v[i] = eps
        pts.append(tuple(v))
        pts.append(tuple(-x for x in v))
    pts += [tuple(F(s, 6) for s in signs)
            for signs in itertools.product((1, -1), repeat=3)]
    return convex_hull(pts, 3)


def test_criterion_1_octahedron_fixture():
    done = timed(1.0)
    nrm = make_norm(3, [(1, (1, 0, 0)), (1, (0, 1, 0)), (1, (0, 0, 1))])
    ball = unit_ball_deflate(nrm)
    expected = set()
    for i in range(3):
        v = [F(0)] * 3
        v[i] = F(1)
        expected.add(tuple(v))
        expected.add(tuple(-x for x in v))
    assert set(ball.vertices) == expected
    assert is_complete(ball)[0]
    assert set(face_fan(ball).ridge_hyperplanes) == {
        vec([1, 0, 0]), vec([0, 1, 0]), vec([0, 0, 1])
    }
    done()


def test_criterion_2_cube_completion():
    done = timed(5.0)
    c = cube()
    ok, violations = is_complete(c)
    assert not ok
    assert {b for b, _ in violations} == {
        vec([1, 1, 0]), vec([1, -1, 0]), vec([1, 0, 1]),
        vec([1, 0, -1]), vec([0, 1, 1]), vec([0, 1, -1]),
    }
    from graphnorm.normball import completion
    ball = unit_ball_deflate(completion(c))
    verts = set(ball.vertices)
    for v in ((F(0), F(0), F(1, 4)), (F(1, 6), F(1, 6), F(1, 6))):
        assert v in verts and tuple(-x for x in v) in verts
    assert cone_refines(ball, c)
    done()


def test_criterion_3_three_chain_incomplete():
    done = timed(1.0)
    p = convex_hull(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
         (-1, 1, 1), (1, -1, -1)],
        3,
    )
    assert not is_complete(p)[0]
    done()


def test_criterion_4_apex_weights():
    done = timed(5.0)
    sol = weight_solve(apex_polytope(F(1, 4)))
    assert sol is not None
    assert len(sol) == 6
    assert all(w == 1 for _, w in sol)
    assert {b for b, _ in sol} == {
        vec([1, 1, 0]), vec([1, -1, 0]), vec([1, 0, 1]),
        vec([1, 0, -1]), vec([0, 1, 1]), vec([0, 1, -1]),
    }
    assert weight_solve(apex_polytope(F(1, 8))) is None
    done()


def test_criterion_5_oracle_equivalence_200():
    done = timed(60.0)
    rng = random.Random(2024)
    for _ in range(200):
        nrm = fuzz.random_norm(rng, dmax=4, kmax=7, bound=5)
        ball = unit_ball_deflate(nrm)
        assert ball == unit_ball_oracle(nrm)
        for v in ball.vertices:
            assert evaluate(nrm, v) == 1
    done()


def test_criterion_6_realization_roundtrip_100():
    done = timed(120.0)
    rng = random.Random(6021)
    for _ in range(100):
        betas, genera, fibered = fuzz.random_realization_target(
            rng, dmax=3, nmax=5, max_genus=2
        )
        r = realize(betas, genera, fibered)
        assert r.verified
        assert r.ledger["kernel_spans_rescaled_targets"]
        for j, v in enumerate(r.graph.vertices):
            assert derived_chi(v, r.graph.degree(j)) == r.chi_targets[j]
            assert witness_euler(v.surgeries) == v.euler_number
        assert invariants(r.graph).fibered == fibered
    done()


def test_criterion_7_invariant_formulas_100():
    done = timed(30.0)
    rng = random.Random(77)
    for _ in range(100):
        pieces = [fuzz.random_graph(rng, max_vertices=3)
                  for _ in range(rng.randint(1, 3))]
        verts, edges, offset = [], [], 0
        for g in pieces:
            verts.extend(g.vertices)
            edges.extend((u + offset, v + offset, p) for u, v, p in g.edges)
            offset += len(g.vertices)
        union = SimplifiedGraph(tuple(verts), tuple(edges))
        rep = invariants(union)
        # path one: the closed formulas
        assert rep.null_space_dim == rep.b1_gamma + 2 * sum(
            v.genus for v in union.vertices
        )
        a = reduced_plumbing_matrix(union)
        assert rep.kernel_dim == len(a) - rank_fraction_free(a)
        assert rep.b2 == rep.kernel_dim + rep.null_space_dim
        # path two: additivity over the partition into the original pieces
        parts = [invariants(g) for g in pieces]
        assert rep.b1_gamma == sum(p.b1_gamma for p in parts)
        assert rep.null_space_dim == sum(p.null_space_dim for p in parts)
        assert rep.kernel_dim == sum(p.kernel_dim for p in parts)
        assert rep.b2 == sum(p.b2 for p in parts)
    done()


def test_criterion_8_planar_program_50():
    done = timed(60.0)
    rng = random.Random(888)
    for _ in range(50):
        polygon = fuzz.random_polygon(rng)
        assert is_complete(polygon)[0]
        sol = weight_solve(polygon)
        assert sol is not None
        betas = [scale_vec(w, b) for b, w in sol]
        r = realize(betas, [0] * len(betas), True)
        assert r.verified
        nrm_g, basis = nonvanishing_norm(r.graph)
        # change of basis from the canonical kernel basis to the rescaled
        # kernel columns, in which the norm is the prescribed one
        k_mat = from_columns(r.rescaled_kernel)
        m = from_columns([solve(k_mat, b) for b in basis])
        ball = unit_ball_deflate(nrm_g)
        mapped = {matvec(m, c) for c in ball.vertices}
        assert mapped == set(polygon.vertices)
    done()


def test_criterion_9_pullback_identity_1000():
    done = timed(10.0)
    rng = random.Random(909)
    checked = 0
    while checked < 1000:
        nrm = fuzz.random_norm(rng, dmax=3, kmax=5, bound=4)
        cols = rng.randint(1, nrm.dim)
        emb = tuple(
            tuple(F(rng.randint(-3, 3)) for _ in range(cols))
            for _ in range(nrm.dim)
        )
        from graphnorm.exactla import rank
        if rank(emb) != cols:
            continue
        pulled = pullback(nrm, emb, F(1, 2))
        v = tuple(F(rng.randint(-5, 5)) for _ in range(cols))
        assert evaluate(pulled, v) == evaluate(nrm, matvec(emb, v)) / 2
        checked += 1
    done()
