"""Hoffman signed graphs: special matrices, switching, fat-vertex expansion and
the associated Hoffman graph of a signed graph built from its large positive cliques."""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .cliques import NeighborhoodSplit, ktilde_witness, m_neighborhoods, maximal_positive_cliques
from .errors import BelowThresholdWarning, PatternWitnessError, SignedGraphError
from .graph import Sign, SignedGraph, induced_subgraph, switch
from .spectra import Spectrum, eigenvalues
from .switching import iter_switching_embeddings

SLIM = "s"
FAT = "f"


class HoffmanSignedGraph:
    """A signed graph whose vertices are labelled slim (``"s"``) or fat (``"f"``).

    Fat vertices are pairwise non-adjacent and each has at least one neighbour.
    Slim and fat vertex tuples follow the order of the underlying graph.
    """

    __slots__ = ("graph", "labels", "slim", "fat", "_special")

    def __init__(self, graph: SignedGraph, labels: Mapping[int, str] | Sequence[str]):
        if not isinstance(labels, Mapping):
            labels = list(labels)
            if len(labels) != graph.order:
                raise SignedGraphError(f"expected {graph.order} labels, got {len(labels)}")
            labels = dict(zip(graph.vertices, labels))
        lab = {}
        for v in graph.vertices:
            if v not in labels:
                raise SignedGraphError(f"vertex {v} has no label")
            t = labels[v]
            if t not in (SLIM, FAT):
                raise SignedGraphError(f"label for vertex {v} must be 's' or 'f', got {t!r}")
            lab[v] = t
        fat = tuple(v for v in graph.vertices if lab[v] == FAT)
        fat_set = set(fat)
        for F in fat:
            if not graph.degree(F):
                raise SignedGraphError(f"fat vertex {F} has no neighbours")
            clash = fat_set.intersection(graph.neighbors(F))
            if clash:
                raise SignedGraphError(f"fat vertices {F} and {min(clash)} are adjacent")
        self.graph = graph
        self.labels = lab
        self.fat = fat
        self.slim = tuple(v for v in graph.vertices if lab[v] == SLIM)
        self._special = None

    @classmethod
    def from_parts(
        cls,
        n_slim: int,
        n_fat: int,
        slim_edges: Iterable[tuple[int, int, object]] = (),
        attachments: Iterable[tuple[int, int, object]] = (),
    ) -> "HoffmanSignedGraph":
        """Slim vertices ``0..n_slim-1`` and fat vertices ``n_slim..n_slim+n_fat-1``.

        ``attachments`` are ``(slim, j, sign)`` with ``j`` the 0-based fat index.
        """
        edges = list(slim_edges)
        for x, j, s in attachments:
            if not 0 <= j < n_fat:
                raise SignedGraphError(f"fat index {j} out of range")
            edges.append((x, n_slim + j, s))
        G = SignedGraph(range(n_slim + n_fat), edges)
        return cls(G, [SLIM] * n_slim + [FAT] * n_fat)

    def is_fat(self) -> bool:
        """Every slim vertex has a fat neighbour."""
        fat = set(self.fat)
        return all(fat.intersection(self.graph.neighbors(x)) for x in self.slim)

    def slim_graph(self) -> SignedGraph:
        if not self.slim:
            raise SignedGraphError("Hoffman graph has no slim vertices")
        return induced_subgraph(self.graph, self.slim)

    def fat_neighbors(self, x: int) -> dict[int, Sign]:
        return {F: s for F, s in self.graph.neighbors(x).items() if self.labels[F] == FAT}

    def label_list(self) -> list[str]:
        return [self.labels[v] for v in self.graph.vertices]

    def __eq__(self, other):
        if not isinstance(other, HoffmanSignedGraph):
            return NotImplemented
        return self.graph == other.graph and self.labels == other.labels

    def __hash__(self):
        return hash((self.graph, tuple(self.label_list())))

    def __repr__(self):
        return f"HoffmanSignedGraph(slim={len(self.slim)}, fat={len(self.fat)}, edges={self.graph.edge_count})"


def slim_fat_blocks(h: HoffmanSignedGraph) -> tuple[np.ndarray, np.ndarray]:
    """``(A_s, C)``: slim adjacency block and the slim-by-fat signed incidence block."""
    A = h.graph.adjacency_matrix()
    si = [h.graph.index(v) for v in h.slim]
    fi = [h.graph.index(v) for v in h.fat]
    return A[np.ix_(si, si)].copy(), A[np.ix_(si, fi)].copy()


def special_matrix(h: HoffmanSignedGraph) -> np.ndarray:
    """``A_s - C C^T`` as an int64 array indexed by the slim vertices."""
    if h._special is None:
        A_s, C = slim_fat_blocks(h)
        S = A_s - C @ C.T
        S.setflags(write=False)
        h._special = S
    return h._special


def hoffman_eigenvalues(h: HoffmanSignedGraph) -> Spectrum:
    return eigenvalues(special_matrix(h))


def hoffman_smallest_eigenvalue(h: HoffmanSignedGraph) -> float:
    if not h.slim:
        raise ValueError("Hoffman graph has no slim vertices")
    return hoffman_eigenvalues(h).smallest


def hoffman_switch(h: HoffmanSignedGraph, U: Iterable[int]) -> HoffmanSignedGraph:
    return HoffmanSignedGraph(switch(h.graph, U), h.labels)


def induced_hoffman_subgraph(h: HoffmanSignedGraph, S: Iterable[int]) -> HoffmanSignedGraph:
    """Induced Hoffman subgraph; fails if a kept fat vertex loses all its neighbours."""
    sub = induced_subgraph(h.graph, S)
    return HoffmanSignedGraph(sub, {v: h.labels[v] for v in sub.vertices})


def expand(h: HoffmanSignedGraph, n: int) -> SignedGraph:
    """``G(h, n)``: every fat vertex becomes a positive n-clique.

    Slim vertices become ``0..s-1`` in slim order, followed by ``n`` vertices
    per fat vertex in fat order.  A slim neighbour of a fat vertex is joined
    to all of its clique with the original sign.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sidx = {v: i for i, v in enumerate(h.slim)}
    s = len(h.slim)
    edges = [(sidx[u], sidx[v], sg) for u, v, sg in h.graph.edges() if u in sidx and v in sidx]
    for j, F in enumerate(h.fat):
        block = range(s + j * n, s + (j + 1) * n)
        edges += [(a, b, Sign.PLUS) for a in block for b in block if a < b]
        for x, sg in h.graph.neighbors(F).items():
            edges += [(sidx[x], a, sg) for a in block]
    return SignedGraph(range(s + n * len(h.fat)), edges)


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple
    target: float

    def gaps(self) -> list[float]:
        return [lam - self.target for _, lam in self.rows]


def convergence_probe(h: HoffmanSignedGraph, n_values: Iterable[int]) -> ConvergenceTable:
    """Smallest eigenvalue of ``G(h, n)`` for each ``n``, next to the limit ``lambda_min(h)``."""
    ns = list(n_values)
    if not ns:
        raise ValueError("n_values must be non-empty")
    rows = tuple((n, eigenvalues(expand(h, n).adjacency_matrix()).smallest) for n in ns)
    return ConvergenceTable(rows, hoffman_smallest_eigenvalue(h))


# -- associated Hoffman graph ---------------------------------------------

@dataclass(frozen=True)
class FatSource:
    fat: int
    clique: tuple
    split: NeighborhoodSplit


@dataclass(frozen=True)
class AssociatedHoffmanGraph:
    host: HoffmanSignedGraph
    fat_sources: tuple
    m: int
    n: int
    warnings: tuple = ()

    @property
    def slim_graph(self) -> SignedGraph:
        return self.host.slim_graph()


def threshold(m: int) -> int:
    """Clique size ``2(m^2+m)`` above which the clique lemmas are guaranteed."""
    return 2 * (m * m + m)


def associated_hoffman_graph(
    G: SignedGraph,
    m: int,
    n: int,
    *,
    representatives: Mapping[frozenset, Sequence[int]] | None = None,
) -> AssociatedHoffmanGraph:
    """Attach one fat vertex per distinct m-neighbourhood of a maximal positive clique with >= n vertices.

    The fat vertex is positive to the plus side and negative to the minus side.
    Each class is represented by the clique whose sorted vertex list is
    lexicographically smallest, unless ``representatives`` maps the class
    support to another clique of that class.  Fat ids start at
    ``max(V(G)) + 1`` in the order of the chosen representatives.
    Below ``n >= 2(m^2+m)`` the object is still built but a
    :class:`BelowThresholdWarning` is emitted and recorded.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    notes = []
    if n < threshold(m):
        msg = f"n={n} is below 2(m^2+m)={threshold(m)}; neighbourhood lemmas are not guaranteed"
        warnings.warn(msg, BelowThresholdWarning, stacklevel=2)
        notes.append(msg)
    classes: dict[frozenset, list[tuple[tuple, NeighborhoodSplit]]] = {}
    for C in maximal_positive_cliques(G, n):
        split = m_neighborhoods(G, C, m)
        both = split.plus & split.minus
        if both:
            x = min(both)
            raise PatternWitnessError(
                f"vertex {x} has >= {m} positive and >= {m} negative neighbours in clique {list(C)}",
                witness=ktilde_witness(G, C.vertices, x, m),
                pattern="Ktilde_minus",
            )
        if not split.support:
            notes.append(f"clique {sorted(C)} has an empty {m}-neighbourhood and is skipped")
            continue
        classes.setdefault(split.support, []).append((tuple(sorted(C.vertices)), split))
    chosen = []
    for support, members in classes.items():
        members.sort(key=lambda t: t[0])
        pick = members[0]
        if representatives and support in representatives:
            want = tuple(sorted(representatives[support]))
            match = [t for t in members if t[0] == want]
            if not match:
                raise ValueError(f"{list(want)} is not a clique of the class {sorted(support)}")
            pick = match[0]
        chosen.append(pick)
    chosen.sort(key=lambda t: t[0])
    base = max(G.vertices, default=-1) + 1
    edges = list(G.edges())
    sources = []
    for j, (clique, split) in enumerate(chosen):
        F = base + j
        edges += [(x, F, Sign.PLUS) for x in sorted(split.plus)]
        edges += [(x, F, Sign.MINUS) for x in sorted(split.minus)]
        sources.append(FatSource(F, clique, split))
    verts = list(G.vertices) + [base + j for j in range(len(chosen))]
    labels = {v: SLIM for v in G.vertices}
    labels.update({base + j: FAT for j in range(len(chosen))})
    host = HoffmanSignedGraph(SignedGraph(verts, edges), labels)
    return AssociatedHoffmanGraph(host, tuple(sources), m, n, tuple(notes))


def fat_count_per_vertex(g: AssociatedHoffmanGraph | HoffmanSignedGraph) -> dict[int, int]:
    h = g.host if isinstance(g, AssociatedHoffmanGraph) else g
    return {x: len(h.fat_neighbors(x)) for x in h.slim}


def find_expansion_copy(G: SignedGraph, h: HoffmanSignedGraph, p: int) -> dict | None:
    """An induced copy of ``G(h, p)`` inside G with signs matching exactly.

    Returns the vertex map from ``expand(h, p)`` into G, or ``None``.
    """
    target = expand(h, p)
    for phi, _ in iter_switching_embeddings(target, G, switching=False):
        return phi
    return None
