"""Simplified decomposition graphs of good graph manifolds.

Vertices carry (genus, Euler number, surgery witness), edges carry the
fiber intersection number p(E).  From this data the module extracts the
reduced plumbing matrix, the Thurston norm, the Betti/null-space
invariants, and runs the inverse synthesis that realizes a prescribed
sum-of-absolute-values norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import (
    Mat,
    Vec,
    dot,
    from_columns,
    is_zero,
    kernel_basis,
    matvec,
    prescribed_kernel_matrix,
    rat_from_str,
    rat_to_str,
    same_span,
    scale_vec,
    span_rank,
    transpose,
    vec,
)
from .normball import NotANorm, SumAbsNorm, evaluate, make_norm


class InvalidGraph(ValueError):
    pass


class NotRealizable(ValueError):
    pass


class Unachievable(ValueError):
    def __init__(self, chi_target, suggestion):
        super().__init__(
            "chi target %s is not achievable; nearest achievable is %s"
            % (rat_to_str(chi_target), rat_to_str(suggestion))
        )
        self.chi_target = chi_target
        self.suggestion = suggestion


class WitnessFailure(RuntimeError):
    """A realization verification check failed; indicates a bug."""

    def __init__(self, ledger):
        failed = [k for k, v in ledger.items() if v is False]
        super().__init__("verification failed: %s" % ", ".join(failed))
        self.ledger = ledger


# ---------------------------------------------------------------------------
# graph data


@dataclass(frozen=True)
class SurgeryPair:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0:
            raise ValueError("surgery coefficient p must be nonzero")

    def coprime(self) -> bool:
        return math.gcd(abs(self.p), abs(self.q)) == 1


@dataclass(frozen=True)
class VertexLabel:
    genus: int
    euler_number: Fraction
    surgeries: tuple[SurgeryPair, ...] = ()


@dataclass(frozen=True)
class SimplifiedGraph:
    """Vertices with labels; edges (u, v, p) may be loops or parallel."""

    vertices: tuple[VertexLabel, ...]
    edges: tuple[tuple[int, int, int], ...]

    def degree(self, i: int) -> int:
        deg = 0
        for u, v, _ in self.edges:
            deg += (u == i) + (v == i)
        return deg

    def component_count(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v, _ in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(i) for i in range(len(self.vertices))})


@dataclass(frozen=True)
class InvariantReport:
    b1_gamma: int
    null_space_dim: int
    kernel_dim: int
    b2: int
    fibered: bool


@dataclass(frozen=True)
class RealizationResult:
    graph: SimplifiedGraph
    scale_N: int
    chi_targets: tuple[Fraction, ...]
    rescaled_kernel: tuple[Vec, ...]
    target: SumAbsNorm
    abar: Mat
    ledger: dict = field(compare=False)

    @property
    def verified(self) -> bool:
        return all(self.ledger.values())


# ---------------------------------------------------------------------------
# invariants of a single piece


def derived_chi(v: VertexLabel, degree: int) -> Fraction:
    """Orbifold Euler characteristic 2 - 2g - b - sum(1 - 1/|p|)."""
    chi = Fraction(2 - 2 * v.genus - degree)
    for s in v.surgeries:
        chi -= 1 - Fraction(1, abs(s.p))
    return chi


def witness_euler(surgeries) -> Fraction:
    return -sum((Fraction(s.q, s.p) for s in surgeries), Fraction(0))


def seifert_rank(chi: Fraction, e: Fraction, has_boundary: bool) -> int:
    """Dimension of the nonvanishing homology of a single Seifert piece."""
    if chi < 0 and (has_boundary or e == 0):
        return 1
    return 0


# ---------------------------------------------------------------------------
# validation


def validate(g: SimplifiedGraph) -> list[str]:
    """All violations of the standing assumptions; empty list means ok."""
    violations = []
    for i, v in enumerate(g.vertices):
        if v.genus < 0:
            violations.append("NegativeGenus(vertex %d)" % i)
        chi = derived_chi(v, g.degree(i))
        if chi >= 0:
            violations.append(
                "ChiNonNegative(vertex %d): chi = %s" % (i, rat_to_str(chi))
            )
        for s in v.surgeries:
            if not s.coprime():
                violations.append(
                    "NonCoprimeSurgery(vertex %d): (%d,%d)" % (i, s.p, s.q)
                )
        if witness_euler(v.surgeries) != v.euler_number:
            violations.append(
                "EulerWitnessMismatch(vertex %d): label %s, witness %s"
                % (i, rat_to_str(v.euler_number),
                   rat_to_str(witness_euler(v.surgeries)))
            )
    for k, (u, v, p) in enumerate(g.edges):
        if p == 0:
            violations.append("ZeroEdge(edge %d)" % k)
        if not (0 <= u < len(g.vertices) and 0 <= v < len(g.vertices)):
            violations.append("BadEndpoint(edge %d)" % k)
    return violations


def _require_valid(g: SimplifiedGraph):
    violations = validate(g)
    if violations:
        raise InvalidGraph("; ".join(violations))


# ---------------------------------------------------------------------------
# plumbing matrix and norm data


def reduced_plumbing_matrix(g: SimplifiedGraph) -> Mat:
    _require_valid(g)
    n = len(g.vertices)
    a = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        a[i][i] = v.euler_number
    for u, v, p in g.edges:
        if u == v:
            a[u][u] += 2 * Fraction(1, p)
        else:
            a[u][v] += Fraction(1, p)
            a[v][u] += Fraction(1, p)
    return tuple(tuple(r) for r in a)


def thurston_value(g: SimplifiedGraph, l: Vec) -> Fraction:
    """Norm of the class meeting the i-th fibers l_i times.

    Only tuples annihilating the reduced plumbing matrix are represented
    by surfaces (up to a multiple); anything else raises.
    """
    a = reduced_plumbing_matrix(g)
    if len(l) != len(g.vertices):
        raise ValueError("tuple of wrong length")
    if not is_zero(matvec(a, l)):
        raise NotRealizable(
            "tuple %s does not annihilate the plumbing matrix"
            % ([rat_to_str(x) for x in l],)
        )
    total = Fraction(0)
    for i, v in enumerate(g.vertices):
        total += -derived_chi(v, g.degree(i)) * abs(l[i])
    return total


def nonvanishing_norm(g: SimplifiedGraph) -> tuple[SumAbsNorm, list[Vec]]:
    """Norm on ker A in the canonical kernel basis, plus that basis.

    Functionals are (-chi_i, i-th row of the matrix whose columns are the
    basis vectors); zero rows are retained (they flag non-fibering pieces).
    """
    a = reduced_plumbing_matrix(g)
    basis = kernel_basis(a)
    d = len(basis)
    functionals = []
    for i, v in enumerate(g.vertices):
        weight = -derived_chi(v, g.degree(i))
        beta = tuple(b[i] for b in basis)
        functionals.append((weight, beta))
    return SumAbsNorm(d, tuple(functionals)), basis


def invariants(g: SimplifiedGraph) -> InvariantReport:
    _require_valid(g)
    nrm, basis = nonvanishing_norm(g)
    b1 = len(g.edges) - len(g.vertices) + g.component_count()
    null_dim = b1 + 2 * sum(v.genus for v in g.vertices)
    kernel_dim = len(basis)
    fibered = kernel_dim > 0 and all(
        not is_zero(beta) for _, beta in nrm.functionals
    )
    return InvariantReport(
        b1_gamma=b1,
        null_space_dim=null_dim,
        kernel_dim=kernel_dim,
        b2=kernel_dim + null_dim,
        fibered=fibered,
    )


# ---------------------------------------------------------------------------
# surgery witnesses


def _egyptian(x: Fraction, max_terms: int) -> list[int] | None:
    """Greedy unit-fraction denominators summing to x, each term <= 1/2.

    Gives up (None) past max_terms; the greedy remainders can otherwise
    run away on residuals with large denominators.
    """
    out = []
    while x > Fraction(1, 2):
        out.append(2)
        x -= Fraction(1, 2)
    while x > 0:
        if len(out) >= max_terms:
            return None
        p = -(-x.denominator // x.numerator)  # ceil(1/x)
        out.append(p)
        x -= Fraction(1, p)
    return out


def _balanced_pairs(rho: Fraction) -> list[int] | None:
    """Pair denominators P with sum of 2(1 - 1/P) equal to rho, or None.

    First tries the congruence schedule with denominators 2*delta and 2;
    falls back to an Egyptian-fraction split when the congruence leaves a
    negative integer remainder.
    """
    if rho == 0:
        return []
    if rho < 1:
        return None
    c, delta = rho.numerator, rho.denominator
    if delta == 1:
        return [2] * c
    m = (-c) % delta
    r = (c + m) // delta - 2 * m
    if r >= 0:
        return [2 * delta] * m + [2] * r
    # fallback: t pairs with sum of 1/P equal to t - rho/2
    t = rho.numerator // (2 * rho.denominator) + 1
    tau = t - rho / 2
    ps = _egyptian(tau, t)
    if ps is None:
        return None
    while len(ps) < t:  # split a term, preserving the sum
        ps = sorted(ps)
        ps = ps[:-1] + [2 * ps[-1], 2 * ps[-1]]
    return ps


def _try_witness(e: Fraction, chi_target: Fraction, genus: int,
                 degree: int) -> list[SurgeryPair] | None:
    out = []
    rho = Fraction(2 - 2 * genus - degree) - chi_target
    if e != 0:
        b = e.denominator
        out.append(SurgeryPair(b, -e.numerator))
        rho -= 1 - Fraction(1, b)
    if rho < 0:
        return None
    pairs = _balanced_pairs(rho)
    if pairs is None:
        return None
    for p in sorted(pairs, reverse=True):
        out.append(SurgeryPair(p, 1))
        out.append(SurgeryPair(p, -1))
    return out


def _min_achievable(e, chi_target, genus, degree) -> Fraction:
    """Largest achievable chi strictly below an unachievable target."""
    candidate = chi_target
    for _ in range(4 * chi_target.denominator + 8):
        candidate -= 1
        if _try_witness(e, candidate, genus, degree) is not None:
            return candidate
    raise WitnessFailure({"achievable-search": False})


def witness_surgeries(e: Fraction, chi_target: Fraction, genus: int,
                      degree: int) -> list[SurgeryPair]:
    """Surgery list certifying that (e, chi_target) is jointly achievable.

    A designated fiber realizes e, then balanced +/- pairs burn the
    remaining Euler-characteristic deficit without touching e.
    """
    e = Fraction(e)
    chi_target = Fraction(chi_target)
    if chi_target >= 0:
        raise ValueError("chi target must be negative")
    out = _try_witness(e, chi_target, genus, degree)
    if out is None:
        raise Unachievable(chi_target,
                           _min_achievable(e, chi_target, genus, degree))
    return out


# ---------------------------------------------------------------------------
# realization of a prescribed norm


def realize(betas: list[Vec], genera: list[int],
            fibered: bool) -> RealizationResult:
    """Graph manifold whose nonvanishing norm is sum_i |<beta_i, .>|.

    The i-th piece gets base genus genera[i].  With fibered=False a zero
    functional is appended (when none is present) so that no class meets
    every fiber; with fibered=True all betas must be nonzero.
    """
    betas = [vec(b) for b in betas]
    genera = [int(x) for x in genera]
    if len(betas) != len(genera):
        raise ValueError("need one genus per functional")
    if not betas:
        raise NotANorm("empty functional family")
    d = len(betas[0])
    if any(len(b) != d for b in betas):
        raise ValueError("functionals of mixed dimension")
    nonzero = [b for b in betas if not is_zero(b)]
    if span_rank(nonzero) != d:
        raise NotANorm("functionals do not span the space")
    if fibered and len(nonzero) != len(betas):
        raise NotANorm("a fibered realization needs all functionals nonzero")
    if not fibered and len(nonzero) == len(betas):
        betas = betas + [(Fraction(0),) * d]
        genera = genera + [0]
    n = len(betas)
    ks = [2 * g + n + 2 for g in genera]
    chi_targets = tuple(Fraction(-k) for k in ks)
    p_mat = tuple(betas)  # rows
    vs = transpose(p_mat)  # columns v_1..v_d
    rescaled = tuple(
        tuple(x / k for x, k in zip(v, ks)) for v in vs
    )
    abar = prescribed_kernel_matrix(list(rescaled)).matrix
    nonzero_entries = [abs(int(x)) for row in abar for x in row if x != 0]
    scale_n = math.lcm(*nonzero_entries) if nonzero_entries else 1
    a = tuple(tuple(x / scale_n for x in row) for row in abar)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if abar[i][j] != 0:
                edges.append((i, j, int(scale_n / abar[i][j])))
    vertices = []
    for i in range(n):
        deg = sum((u == i) + (v == i) for u, v, _ in edges)
        e_i = a[i][i]
        surgeries = _try_witness(e_i, chi_targets[i], genera[i], deg)
        if surgeries is None:
            # the lcm scaling can leave e_i with a denominator too large
            # for any surgery schedule; a loop with 2/p(E) = a_ii moves
            # the diagonal entry off the Euler number at the cost of two
            # extra boundary components
            edges.append((i, i, int(2 / e_i)))
            e_i = Fraction(0)
            deg += 2
            surgeries = witness_surgeries(e_i, chi_targets[i], genera[i], deg)
        vertices.append(
            VertexLabel(genus=genera[i], euler_number=e_i,
                        surgeries=tuple(surgeries))
        )
    graph = SimplifiedGraph(tuple(vertices), tuple(edges))
    target = make_norm(d, [(1, b) for b in betas])

    ledger = _verify_realization(
        graph, a, abar, scale_n, rescaled, betas, chi_targets, fibered
    )
    result = RealizationResult(
        graph=graph,
        scale_N=scale_n,
        chi_targets=chi_targets,
        rescaled_kernel=rescaled,
        target=target,
        abar=abar,
        ledger=ledger,
    )
    if not result.verified:
        raise WitnessFailure(ledger)
    return result


def _verify_realization(graph, a, abar, scale_n, rescaled, betas,
                        chi_targets, fibered):
    ledger = {}
    ledger["graph_valid"] = not validate(graph)
    ledger["plumbing_matrix_matches"] = reduced_plumbing_matrix(graph) == a
    basis = kernel_basis(a)
    ledger["kernel_spans_rescaled_targets"] = same_span(basis, rescaled)
    chi_ok = True
    euler_ok = True
    for i, v in enumerate(graph.vertices):
        if derived_chi(v, graph.degree(i)) != chi_targets[i]:
            chi_ok = False
        if witness_euler(v.surgeries) != v.euler_number:
            euler_ok = False
    ledger["chi_targets_hit"] = chi_ok
    ledger["euler_witness_matches"] = euler_ok
    # term-by-term norm identity: -chi_j times the j-th row of the
    # rescaled kernel matrix reproduces the j-th input functional
    rows = from_columns(rescaled)
    term_ok = all(
        scale_vec(-chi_targets[j], rows[j]) == betas[j]
        for j in range(len(betas))
    )
    ledger["norm_identity"] = term_ok
    ledger["fibered_flag_matches"] = invariants(graph).fibered == fibered
    return ledger


# ---------------------------------------------------------------------------
# serialization


def graph_to_json(g: SimplifiedGraph) -> dict:
    return {
        "vertices": [
            {
                "genus": v.genus,
                "euler_number": rat_to_str(v.euler_number),
                "surgeries": [[s.p, s.q] for s in v.surgeries],
            }
            for v in g.vertices
        ],
        "edges": [{"u": u, "v": v, "p": p} for u, v, p in g.edges],
    }


def graph_from_json(obj: dict) -> SimplifiedGraph:
    vertices = []
    for i, v in enumerate(obj["vertices"]):
        try:
            e = rat_from_str(str(v["euler_number"]))
        except ValueError as exc:
            raise ValueError("vertices[%d].euler_number: %s" % (i, exc))
        surgeries = []
        for k, pair in enumerate(v.get("surgeries", [])):
            p, q = int(pair[0]), int(pair[1])
            if p == 0:
                raise ValueError(
                    "vertices[%d].surgeries[%d]: p must be nonzero" % (i, k)
                )
            surgeries.append(SurgeryPair(p, q))
        vertices.append(
            VertexLabel(genus=int(v["genus"]), euler_number=e,
                        surgeries=tuple(surgeries))
        )
    edges = []
    for k, edge in enumerate(obj.get("edges", [])):
        p = int(edge["p"])
        if p == 0:
            raise ValueError("edges[%d].p: must be nonzero" % k)
        edges.append((int(edge["u"]), int(edge["v"]), p))
    return SimplifiedGraph(tuple(vertices), tuple(edges))


def realization_to_json(r: RealizationResult) -> dict:
    return {
        "graph": graph_to_json(r.graph),
        "scale_N": r.scale_N,
        "chi_targets": [rat_to_str(c) for c in r.chi_targets],
        "kernel": [[rat_to_str(x) for x in v] for v in r.rescaled_kernel],
        "verified": r.verified,
        "ledger": dict(r.ledger),
    }
