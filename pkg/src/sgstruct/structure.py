"""Clique-neighbourhood decomposition of a signed graph and its property checks."""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .cliques import m_neighborhoods, plex_degree
from .errors import PatternWitnessError
from .graph import SignedGraph, Sign, induced_subgraph, ktilde, switch
from .hoffman import AssociatedHoffmanGraph, HoffmanSignedGraph, associated_hoffman_graph, hoffman_smallest_eigenvalue
from .spectra import smallest_eigenvalue
from .switching import is_pattern_free, ktilde_family

EPS = 1e-9


@dataclass(frozen=True)
class KappaConfig:
    """User-supplied constants: named kappa values and a table of Ramsey numbers R(m, s, t)."""

    kappa: Mapping[str, int] = field(default_factory=dict)
    ramsey: Mapping[tuple, int] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Mapping) -> "KappaConfig":
        kappa = {}
        for k, v in dict(data.get("kappa", {})).items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"kappa.{k}: expected a positive integer, got {v!r}")
            kappa[str(k)] = v
        ramsey = {}
        for key, v in dict(data.get("ramsey", {})).items():
            try:
                triple = tuple(int(p) for p in str(key).split(","))
            except ValueError:
                raise ValueError(f"ramsey key {key!r}: expected 'm,s,t'") from None
            if len(triple) != 3:
                raise ValueError(f"ramsey key {key!r}: expected 'm,s,t'")
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"ramsey.{key}: expected a positive integer, got {v!r}")
            ramsey[triple] = v
        return cls(kappa, ramsey)

    def valency_threshold(self, lam: float, n: int) -> int | None:
        """``d(lambda, n) = R(n, 2 - floor(lambda), floor(lambda - 1)^2)`` if tabulated."""
        key = (n, 2 - math.floor(lam), math.floor(lam - 1) ** 2)
        return self.ramsey.get(key)


@dataclass(frozen=True)
class DecompositionParams:
    m: int
    n: int
    lam: float | None = None
    kappa: KappaConfig | None = None
    valency_bound: int | None = None

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be >= 2")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.lam is not None and self.lam > -1:
            raise ValueError("lambda must be <= -1")


@dataclass(frozen=True)
class Piece:
    fat: int
    vertices: tuple
    graph: SignedGraph
    clique: tuple
    plus: frozenset
    minus: frozenset


@dataclass(frozen=True)
class Decomposition:
    pieces: tuple
    residual: SignedGraph
    params: DecompositionParams
    warnings: tuple = ()
    hoffman: AssociatedHoffmanGraph | None = None


def _piece_edges(G: SignedGraph, pieces) -> set[tuple[int, int]]:
    covered = set()
    for p in pieces:
        vs = set(p.vertices)
        for u, v, _ in G.edges():
            if u in vs and v in vs:
                covered.add((u, v))
    return covered


def residual_graph(G: SignedGraph, pieces) -> SignedGraph:
    covered = _piece_edges(G, pieces)
    return SignedGraph(G.vertices, [(u, v, s) for u, v, s in G.edges() if (u, v) not in covered])


def decompose(G: SignedGraph, params: DecompositionParams, *, check_free: bool = False) -> Decomposition:
    """Pieces are the induced subgraphs on the distinct m-neighbourhoods of maximal positive cliques with >= n vertices.

    With ``check_free`` the host is first checked for induced copies of the two
    ``Ktilde_2m`` patterns up to switching; a hit raises :class:`PatternWitnessError`.
    """
    if check_free:
        free, hit = is_pattern_free(G, ktilde_family(params.m))
        if not free:
            kind = ("Ktilde_zero", "Ktilde_minus")[hit.pattern_index]
            raise PatternWitnessError(
                f"graph contains an induced {kind} pattern for m={params.m}", witness=hit.vertices, pattern=kind
            )
    g = associated_hoffman_graph(G, params.m, params.n)
    pieces = []
    for src in g.fat_sources:
        support = src.split.support
        verts = tuple(v for v in G.vertices if v in support)
        pieces.append(Piece(src.fat, verts, induced_subgraph(G, verts), src.clique, src.split.plus, src.split.minus))
    return Decomposition(tuple(pieces), residual_graph(G, pieces), params, g.warnings, g)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: float
    bound: float | None
    satisfied: bool | None


@dataclass(frozen=True)
class DecompositionReport:
    membership: dict
    max_membership: int
    coverage_gaps: tuple
    plex_degrees: tuple
    intersections: dict
    max_pairwise_intersection: int
    residual_max_valency: int
    bounds_checked: tuple
    integrity_issues: tuple

    @property
    def ok(self) -> bool:
        return not self.integrity_issues and all(b.satisfied is not False for b in self.bounds_checked)


def plex_bound(lam: float) -> int:
    return math.floor(lam * lam + 2 * lam + 2 + EPS)


def membership_bound(lam: float) -> int:
    return math.floor(-lam + EPS)


def intersection_bound(lam: float) -> int:
    return 4 * math.floor(-lam + EPS) - 4


def verify_decomposition(G: SignedGraph, D: Decomposition) -> DecompositionReport:
    """Recompute every number of the decomposition from G and the recorded cliques.

    Violations are reported, never raised.  A piece whose vertex set or graph
    differs from the induced subgraph on its clique's recomputed
    m-neighbourhood is listed under ``integrity_issues``.
    """
    m = D.params.m
    issues = []
    for k, p in enumerate(D.pieces):
        try:
            split = m_neighborhoods(G, p.clique, m)
        except KeyError:
            issues.append(f"piece {k}: clique uses unknown vertices")
            continue
        want = tuple(v for v in G.vertices if v in split.support)
        if tuple(sorted(p.vertices)) != tuple(sorted(want)):
            issues.append(f"piece {k}: vertex set differs from the recomputed neighbourhood of its clique")
        elif p.graph != induced_subgraph(G, want):
            issues.append(f"piece {k}: graph is not the induced subgraph on its vertex set")
    membership = {v: 0 for v in G.vertices}
    for p in D.pieces:
        for v in p.vertices:
            if v in membership:
                membership[v] += 1
    gaps = tuple(v for v, c in membership.items() if c == 0)
    plex = []
    for p in D.pieces:
        if not p.vertices:
            plex.append(0)
            continue
        sub = induced_subgraph(G, [v for v in p.vertices if v in G])
        plex.append(plex_degree(switch(sub, [v for v in p.minus if v in sub])))
    inter = {}
    for i, j in itertools.combinations(range(len(D.pieces)), 2):
        inter[(i, j)] = len(set(D.pieces[i].vertices) & set(D.pieces[j].vertices))
    residual = residual_graph(G, D.pieces)
    if residual != D.residual:
        issues.append("residual graph differs from E(G) minus the piece edges")
    valency = max((residual.degree(v) for v in residual.vertices), default=0)
    max_member = max(membership.values(), default=0)
    max_inter = max(inter.values(), default=0)
    max_plex = max(plex, default=0)
    checks = []
    lam = D.params.lam
    if lam is not None:
        checks.append(BoundCheck("membership", max_member, membership_bound(lam), max_member <= membership_bound(lam)))
        checks.append(BoundCheck("plex", max_plex, plex_bound(lam), max_plex <= plex_bound(lam)))
        checks.append(BoundCheck("intersection", max_inter, intersection_bound(lam), max_inter <= intersection_bound(lam)))
        bound = D.params.valency_bound
        if bound is None and D.params.kappa is not None:
            d = D.params.kappa.valency_threshold(lam, D.params.n)
            bound = None if d is None else d - 1
        checks.append(BoundCheck("residual_valency", valency, bound, None if bound is None else valency <= bound))
    return DecompositionReport(
        membership, max_member, gaps, tuple(plex), inter, max_inter, valency, tuple(checks), tuple(issues)
    )


# -- constants --------------------------------------------------------------

def lower_bound_from_kappa(t: int, kappa: int) -> float:
    """``-t(t-1)(t-2)kappa/2 - 2t kappa + kappa + t - 1``."""
    if t < 2:
        raise ValueError("t must be >= 2")
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    return -t * (t - 1) * (t - 2) * kappa / 2 - 2 * t * kappa + kappa + t - 1


def q_threshold(m: int, t: int) -> int:
    """``max{2(m^2+m), 4(t-1)(m-1)+m}``."""
    return max(2 * (m * m + m), 4 * (t - 1) * (m - 1) + m)


def ktilde_index(lam: float, limit: int = 64) -> int:
    """Least m with both ``Ktilde_2m`` patterns below ``lam``."""
    for m in range(1, limit + 1):
        if max(smallest_eigenvalue(ktilde(m, False)), smallest_eigenvalue(ktilde(m, True))) < lam:
            return m
    raise ValueError(f"no m <= {limit} with both patterns below {lam}")


# -- sigma families ---------------------------------------------------------

def _canonical(A: np.ndarray, perms: np.ndarray) -> bytes:
    P = A[perms[:, :, None], perms[:, None, :]]
    flat = P.reshape(len(perms), -1)
    order = np.lexsort(flat.T[::-1])
    return flat[order[0]].tobytes()


MAX_SIGN_PATTERNS = 200_000


def _slim_patterns(k: int, hub_restricted: bool):
    """Signed graphs on ``0..k-1`` up to isomorphism; with ``hub_restricted`` vertex 0 has no positive edge."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    raw = 2 ** (k - 1) * 3 ** ((k - 1) * (k - 2) // 2) if hub_restricted else 3 ** len(pairs)
    if raw > MAX_SIGN_PATTERNS:
        raise ValueError(f"{raw} sign patterns on {k} slim vertices exceed the enumeration limit {MAX_SIGN_PATTERNS}")
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.intp).reshape(-1, k)
    seen = set()
    for signs in itertools.product((0, 1, -1), repeat=len(pairs)):
        if hub_restricted and any(s == 1 for (i, _), s in zip(pairs, signs) if i == 0):
            continue
        A = np.zeros((k, k), dtype=np.int8)
        for (i, j), s in zip(pairs, signs):
            A[i, j] = A[j, i] = s
        key = _canonical(A, perms)
        if key in seen:
            continue
        seen.add(key)
        yield [(i, j, s) for (i, j), s in zip(pairs, signs) if s]


@dataclass(frozen=True)
class SigmaFamilies:
    lam: float
    h0: HoffmanSignedGraph
    family1: tuple
    family2: tuple


def sigma_families(lam: float) -> SigmaFamilies:
    """Fat Hoffman graphs whose smallest eigenvalue is below ``lam``.

    ``h0``: one slim vertex positive to ``floor(-lam)+1`` fat vertices.
    ``family1``: ``floor((lam+1)^2)+2`` slim vertices and one fat vertex
    positive to all, slim vertex 0 having no positive slim neighbour (a hub
    with ``floor((lam+1)^2)+1`` non-positive neighbours, the smallest size that
    forces the eigenvalue below ``lam``).
    ``family2``: ``floor(-lam)`` slim vertices and two fat vertices positive
    to all.  Slim-slim signs range over all patterns up to isomorphism.
    """
    if not lam < -1:
        raise ValueError("lambda must be < -1")
    a = math.floor(-lam + EPS)
    h0 = HoffmanSignedGraph.from_parts(1, a + 1, [], [(0, j, Sign.PLUS) for j in range(a + 1)])
    k1 = math.floor((lam + 1) ** 2 + EPS) + 2
    fam1 = tuple(
        HoffmanSignedGraph.from_parts(k1, 1, edges, [(x, 0, Sign.PLUS) for x in range(k1)])
        for edges in _slim_patterns(k1, hub_restricted=True)
    )
    fam2 = tuple(
        HoffmanSignedGraph.from_parts(a, 2, edges, [(x, j, Sign.PLUS) for x in range(a) for j in (0, 1)])
        for edges in _slim_patterns(a, hub_restricted=False)
    )
    for h in (h0, *fam1, *fam2):
        lmin = hoffman_smallest_eigenvalue(h)
        if not lmin < lam:
            raise ArithmeticError(f"generated member has smallest eigenvalue {lmin} >= {lam}")
    return SigmaFamilies(lam, h0, fam1, fam2)
