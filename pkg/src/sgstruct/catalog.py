"""Minimal forbidden fat Hoffman graphs for the bound -2 and small-eigenvalue classification."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import SignedGraphError
from .graph import SignedGraph, Sign, complete, induced_subgraph, star
from .hoffman import HoffmanSignedGraph, hoffman_smallest_eigenvalue, induced_hoffman_subgraph, special_matrix
from .spectra import eigenvalues, smallest_eigenvalue
from .switching import SwitchingEquivalenceWitness, fundamental_cycle_switching, switching_equivalent

ONE_PLUS_SQRT2 = 1.0 + math.sqrt(2.0)


@dataclass(frozen=True)
class CatalogEntry:
    matrix: tuple
    case: str
    smallest: float

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(len(self.matrix), -1)

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class ForbiddenCatalog:
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


_CASE_II = (
    ((-1, 2), (2, -1)),
    ((-1, -2), (-2, -1)),
    ((-1, -1, 1), (-1, -1, 1), (1, 1, -1)),
    ((-1, -1, -1), (-1, -1, -1), (-1, -1, -1)),
    ((-1, 1, 1), (1, -1, 0), (1, 0, -1)),
    ((-1, -1, 1), (-1, -1, 0), (1, 0, -1)),
    ((-1, -1, -1), (-1, -1, 0), (-1, 0, -1)),
)


def catalog_f_minus2() -> ForbiddenCatalog:
    """Special matrices of the minimal forbidden fat Hoffman graphs for -2.

    Case ``i`` (a slim vertex with two or more fat neighbours): ``(-3)`` and
    ``[[-2, a2], [a2, a1]]`` with ``a1`` in ``{-1, -2}`` and
    ``1 <= |a2| <= 1 - a1``.  Case ``ii`` (one fat neighbour each): seven fixed
    matrices.
    """
    mats = [(((-3,),), "i")]
    for a1 in (-1, -2):
        for mag in range(1, 2 - a1):
            for a2 in (mag, -mag):
                mats.append((((-2, a2), (a2, a1)), "i"))
    mats += [(M, "ii") for M in _CASE_II]
    entries = tuple(CatalogEntry(M, case, eigenvalues(np.array(M)).smallest) for M, case in mats)
    return ForbiddenCatalog(entries)


def _canonical_forms(M: np.ndarray) -> set[bytes]:
    """All images of M under simultaneous permutation and +-1 diagonal conjugation."""
    k = M.shape[0]
    out = set()
    for perm in itertools.permutations(range(k)):
        P = M[np.ix_(perm, perm)]
        for signs in itertools.product((1, -1), repeat=k):
            d = np.array(signs)
            out.add((P * np.outer(d, d)).astype(np.int64).tobytes())
    return out


def matches_up_to_switching(S, T) -> bool:
    S = np.asarray(S, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    if S.shape != T.shape:
        return False
    return np.ascontiguousarray(S).tobytes() in _canonical_forms(T)


@dataclass(frozen=True)
class ForbiddenWitness:
    slim: tuple
    fat: tuple
    catalog_index: int


def _fat_subhoffman_candidates(h: HoffmanSignedGraph, max_slim: int, max_fat: int):
    """Vertex sets of fat induced Hoffman subgraphs, smallest first."""
    for ks in range(1, max_slim + 1):
        for slim in itertools.combinations(h.slim, ks):
            pool = sorted({F for x in slim for F in h.fat_neighbors(x)}, key=h.graph.index)
            for kf in range(1, min(max_fat, len(pool)) + 1):
                for fat in itertools.combinations(pool, kf):
                    fs = set(fat)
                    if not all(fs.intersection(h.fat_neighbors(x)) for x in slim):
                        continue
                    if not all(set(slim).intersection(h.graph.neighbors(F)) for F in fat):
                        continue
                    yield slim, fat


def contains_minimal_forbidden(
    h: HoffmanSignedGraph, catalog: ForbiddenCatalog | None = None, *, max_slim: int = 3, max_fat: int = 4
) -> ForbiddenWitness | None:
    """First fat induced subgraph whose special matrix is a catalog entry up to switching and order."""
    if not h.is_fat():
        raise SignedGraphError("Hoffman graph is not fat: some slim vertex has no fat neighbour")
    catalog = catalog or catalog_f_minus2()
    forms = [(_canonical_forms(e.array()), e.size) for e in catalog]
    for slim, fat in _fat_subhoffman_candidates(h, max_slim, max_fat):
        sub = induced_hoffman_subgraph(h, slim + fat)
        key = np.ascontiguousarray(special_matrix(sub), dtype=np.int64).tobytes()
        for idx, (fs, size) in enumerate(forms):
            if size == len(slim) and key in fs:
                return ForbiddenWitness(slim, fat, idx)
    return None


# -- realizations -----------------------------------------------------------

def realizations(S, max_fat: int = 4) -> list[HoffmanSignedGraph]:
    """Fat Hoffman graphs with special matrix exactly S and at most ``max_fat`` fat vertices.

    Fat vertices are interchangeable and can be switched, so each fat column
    is taken with its first nonzero entry positive and columns as a multiset.
    """
    S = np.asarray(S, dtype=np.int64)
    k = S.shape[0]
    columns = [c for c in itertools.product((0, 1, -1), repeat=k) if any(c) and next(x for x in c if x) == 1]
    out = []
    for f in range(1, max_fat + 1):
        for combo in itertools.combinations_with_replacement(range(len(columns)), f):
            C = np.array([columns[i] for i in combo], dtype=np.int64).T.reshape(k, f)
            if not np.all(np.any(C != 0, axis=1)):
                continue
            A = S + C @ C.T
            if np.any(np.diag(A) != 0) or np.any(np.abs(A) > 1):
                continue
            slim_edges = [(i, j, int(A[i, j])) for i in range(k) for j in range(i + 1, k) if A[i, j]]
            att = [(i, j, int(C[i, j])) for i in range(k) for j in range(f) if C[i, j]]
            out.append(HoffmanSignedGraph.from_parts(k, f, slim_edges, att))
    return out


def proper_fat_subgraphs(h: HoffmanSignedGraph):
    whole = (len(h.slim), len(h.fat))
    for slim, fat in _fat_subhoffman_candidates(h, len(h.slim), len(h.fat)):
        if (len(slim), len(fat)) != whole:
            yield induced_hoffman_subgraph(h, slim + fat)


def is_minimal_forbidden(h: HoffmanSignedGraph, lam: float = -2.0, tol: float = 1e-9) -> bool:
    """Smallest eigenvalue below ``lam`` while every proper fat induced subgraph stays at or above it."""
    if not h.is_fat() or hoffman_smallest_eigenvalue(h) >= lam - tol:
        return False
    return all(hoffman_smallest_eigenvalue(g) >= lam - tol for g in proper_fat_subgraphs(h))


def minimal_realizations(S, max_fat: int = 4) -> list[HoffmanSignedGraph]:
    return [h for h in realizations(S, max_fat) if is_minimal_forbidden(h)]


# -- small classifier -------------------------------------------------------

class SmallClass(str, enum.Enum):
    POSITIVE_CLIQUE = "positive_clique_class"
    OBSTRUCTION = "contains_sqrt2_obstruction"


@dataclass(frozen=True)
class SmallClassification:
    kind: SmallClass
    switch_set: frozenset | None = None
    obstruction: tuple | None = None
    pattern: str | None = None
    witness: SwitchingEquivalenceWitness | None = None
    smallest: float = float("nan")


def classify_small(G: SignedGraph) -> SmallClassification:
    """Either a switching set turning connected G into a positive clique, or an
    induced 3-vertex subgraph switching equivalent to ``(K_3,-)`` or ``(K_{1,2},+)``.

    A complete graph is a switched positive clique iff every triangle is
    balanced; a connected non-complete graph has an induced path on three
    vertices, which is a switched ``(K_{1,2},+)``.
    """
    if G.order == 0:
        raise SignedGraphError("graph is empty")
    if not G.is_connected():
        raise SignedGraphError("graph is not connected")
    lam = smallest_eigenvalue(G)
    n = G.order
    if G.edge_count == n * (n - 1) // 2:
        target = SignedGraph(G.vertices, [(G.vertices[i], G.vertices[j], s) for i, j, s in complete(n).edges()])
        U = fundamental_cycle_switching(target, G)
        if U is not None:
            if 2 * len(U) > n:
                U = frozenset(G.vertices) - U  # complementary set gives the same switching class
            return SmallClassification(SmallClass.POSITIVE_CLIQUE, switch_set=U, smallest=lam)
        for a, b, c in itertools.combinations(G.vertices, 3):
            if int(G.sign(a, b)) * int(G.sign(b, c)) * int(G.sign(a, c)) == -1:
                return _obstruction(G, (a, b, c), complete(3, Sign.MINUS), "K3_minus", lam)
        raise AssertionError("unbalanced complete graph without an unbalanced triangle")
    for y in G.vertices:
        nb = list(G.neighbors(y))
        for x, z in itertools.combinations(nb, 2):
            if not G.has_edge(x, z):
                return _obstruction(G, (x, y, z), star(2), "K12_plus", lam)
    raise AssertionError("connected non-complete graph without an induced path")


def _obstruction(G, verts, pattern, name, lam) -> SmallClassification:
    sub = induced_subgraph(G, verts)
    w = switching_equivalent(pattern, sub)
    if w is None:
        raise AssertionError("obstruction failed to replay")
    return SmallClassification(
        SmallClass.OBSTRUCTION, obstruction=tuple(sub.vertices), pattern=name, witness=w, smallest=lam
    )


def clique_components(G: SignedGraph) -> list[SmallClassification]:
    """Classify each connected component (degenerate decomposition for eigenvalue -1)."""
    return [classify_small(induced_subgraph(G, comp)) for comp in G.components()]
