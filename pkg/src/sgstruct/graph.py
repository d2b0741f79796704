"""Signed graphs, switching and the standard families used throughout the package."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from typing import Union

import numpy as np

from .errors import SignedGraphError


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    def __mul__(self, other):
        if isinstance(other, Sign):
            return Sign(int(self) * int(other))
        return int(self) * other

    __rmul__ = __mul__

    def __neg__(self):
        return Sign(-int(self))

    def __str__(self):
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, value) -> "Sign":
        if isinstance(value, Sign):
            return value
        if value in ("+", 1, "plus"):
            return cls.PLUS
        if value in ("-", -1, "minus"):
            return cls.MINUS
        raise SignedGraphError(f"invalid sign {value!r}")


SignLike = Union[Sign, str, int]
Edge = tuple[int, int, Sign]


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SignedGraph:
    """Immutable simple graph whose edges carry a sign.

    Vertices are integer ids kept in the given order; that order is the
    row/column order of :meth:`adjacency_matrix`.  Operations never mutate a
    graph, they return new ones.
    """

    __slots__ = ("_vertices", "_index", "_adj", "_hash", "_matrix")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int, SignLike]] = ()):
        verts = tuple(int(v) for v in vertices)
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise SignedGraphError("vertex ids must be unique")
        adj: dict[int, dict[int, Sign]] = {v: {} for v in verts}
        for u, v, s in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SignedGraphError(f"self-loop at vertex {u}: ({u}, {v}, {s})")
            if u not in index or v not in index:
                raise SignedGraphError(f"edge ({u}, {v}, {s}) uses an unknown vertex")
            if v in adj[u]:
                raise SignedGraphError(f"duplicate edge ({u}, {v}, {s})")
            sign = Sign.parse(s)
            adj[u][v] = sign
            adj[v][u] = sign
        self._vertices = verts
        self._index = index
        self._adj = adj
        self._hash = None
        self._matrix = None

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def order(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: int) -> int:
        return self._index[v]

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v, sign)`` with ``u`` before ``v`` in vertex order."""
        out = []
        for u in self._vertices:
            iu = self._index[u]
            for v, s in self._adj[u].items():
                if self._index[v] > iu:
                    out.append((u, v, s))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def sign(self, u: int, v: int) -> Sign | None:
        return self._adj[u].get(v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> Mapping[int, Sign]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def positive_neighbors(self, v: int) -> set[int]:
        return {u for u, s in self._adj[v].items() if s is Sign.PLUS}

    def negative_neighbors(self, v: int) -> set[int]:
        return {u for u, s in self._adj[v].items() if s is Sign.MINUS}

    def adjacency_matrix(self) -> np.ndarray:
        """Integer 0/+1/-1 adjacency matrix in vertex order (read-only)."""
        if self._matrix is None:
            n = len(self._vertices)
            A = np.zeros((n, n), dtype=np.int64)
            for u, nb in self._adj.items():
                i = self._index[u]
                for v, s in nb.items():
                    A[i, self._index[v]] = int(s)
            A.setflags(write=False)
            self._matrix = A
        return self._matrix

    # -- derived graphs --------------------------------------------------
    def relabeled(self) -> "SignedGraph":
        """Copy with vertices renamed ``0..n-1`` in the current order."""
        idx = self._index
        return SignedGraph(range(len(self._vertices)), ((idx[u], idx[v], s) for u, v, s in self.edges()))

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        return len(self.components()) == 1

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for root in self._vertices:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp, key=self._index.__getitem__))
        return comps

    # -- value semantics -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"SignedGraph(order={self.order}, edges={self.edge_count})"


def build_signed_graph(vertex_count: int, signed_edges: Iterable[tuple[int, int, SignLike]]) -> SignedGraph:
    """Graph on ``0..vertex_count-1``; rejects duplicates, loops, and out-of-range ids."""
    if vertex_count < 0:
        raise SignedGraphError("vertex_count must be non-negative")
    return SignedGraph(range(vertex_count), signed_edges)


class Family(str, enum.Enum):
    COMPLETE_PLUS = "complete_plus"
    COMPLETE_MINUS = "complete_minus"
    STAR_PLUS = "star_plus"
    KTILDE_ZERO = "ktilde_zero"
    KTILDE_MINUS = "ktilde_minus"


def complete(n: int, sign: SignLike = Sign.PLUS) -> SignedGraph:
    s = Sign.parse(sign)
    return build_signed_graph(n, [(i, j, s) for i in range(n) for j in range(i + 1, n)])


def star(t: int, sign: SignLike = Sign.PLUS) -> SignedGraph:
    s = Sign.parse(sign)
    return build_signed_graph(t + 1, [(0, j, s) for j in range(1, t + 1)])


def ktilde(t: int, minus: bool) -> SignedGraph:
    """Positive clique on ``1..2t`` with apex 0 positive to ``1..t``.

    With ``minus`` the apex is negative to ``t+1..2t``, otherwise non-adjacent.
    """
    edges = [(i, j, Sign.PLUS) for i in range(1, 2 * t + 1) for j in range(i + 1, 2 * t + 1)]
    edges += [(0, j, Sign.PLUS) for j in range(1, t + 1)]
    if minus:
        edges += [(0, j, Sign.MINUS) for j in range(t + 1, 2 * t + 1)]
    return build_signed_graph(2 * t + 1, edges)


def standard_family(kind: Family | str, t: int) -> SignedGraph:
    """Named graphs by parameter ``t``.

    ``complete_plus``/``complete_minus`` give ``(K_t, +/-)``, ``star_plus`` gives
    ``(K_{1,t}, +)``, and the two ``ktilde`` kinds give the ``2t+1``-vertex apex
    graphs built by :func:`ktilde`.
    """
    if t < 1:
        raise SignedGraphError(f"family parameter must be >= 1, got {t}")
    kind = Family(kind)
    if kind is Family.COMPLETE_PLUS:
        return complete(t, Sign.PLUS)
    if kind is Family.COMPLETE_MINUS:
        return complete(t, Sign.MINUS)
    if kind is Family.STAR_PLUS:
        return star(t)
    return ktilde(t, minus=kind is Family.KTILDE_MINUS)


def switch(G: SignedGraph, U: Iterable[int]) -> SignedGraph:
    """Flip the sign of every edge with exactly one endpoint in ``U``."""
    U = frozenset(U)
    unknown = [u for u in U if u not in G]
    if unknown:
        raise SignedGraphError(f"switching set contains unknown vertices {sorted(unknown)}")
    if not U:
        return G
    return SignedGraph(G.vertices, ((u, v, -s if (u in U) != (v in U) else s) for u, v, s in G.edges()))


def induced_subgraph(G: SignedGraph, S: Iterable[int]) -> SignedGraph:
    """Induced subgraph on ``S``, keeping the host's ids and vertex order."""
    S = set(S)
    if not S:
        raise SignedGraphError("induced subgraph needs a non-empty vertex set")
    unknown = [v for v in S if v not in G]
    if unknown:
        raise SignedGraphError(f"unknown vertices {sorted(unknown)}")
    verts = [v for v in G.vertices if v in S]
    return SignedGraph(verts, ((u, v, s) for u, v, s in G.edges() if u in S and v in S))


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    """Union with vertices renumbered consecutively, first graph first."""
    edges = []
    offset = 0
    for g in graphs:
        h = g.relabeled()
        edges += [(u + offset, v + offset, s) for u, v, s in h.edges()]
        offset += h.order
    return build_signed_graph(offset, edges)


def add_edges(G: SignedGraph, extra: Iterable[tuple[int, int, SignLike]]) -> SignedGraph:
    return SignedGraph(G.vertices, list(G.edges()) + list(extra))
