"""Switching equivalence and switching-pattern search.

Two routes are used.  For graphs on the same underlying graph, signs of the
fundamental cycles of a spanning forest decide equivalence in linear time.
For the general case (and for induced-pattern search) a backtracking
embedding search assigns, alongside each vertex image, the switching sign
forced by an already-placed neighbour, so sign conflicts prune immediately.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, permutations

from .graph import SignedGraph, Sign, complete, induced_subgraph, ktilde, star, switch


@dataclass(frozen=True)
class SwitchingEquivalenceWitness:
    """``isomorphism`` maps V(G) onto V(H); switching its image on ``switch_set`` gives H."""

    isomorphism: dict
    switch_set: frozenset

    def replay(self, G: SignedGraph, H: SignedGraph) -> bool:
        phi = self.isomorphism
        if sorted(phi) != sorted(G.vertices) or sorted(phi.values()) != sorted(H.vertices):
            return False
        if G.edge_count != H.edge_count:
            return False
        U = self.switch_set
        for u, v, s in G.edges():
            a, b = phi[u], phi[v]
            t = H.sign(a, b)
            if t is None:
                return False
            flipped = (a in U) != (b in U)
            if (s * (-1 if flipped else 1)) != t:
                return False
        return True


@dataclass(frozen=True)
class PatternFamily:
    patterns: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if any(p.order == 0 for p in self.patterns):
            raise ValueError("patterns must be non-empty graphs")


@dataclass(frozen=True)
class PatternHit:
    vertices: tuple
    pattern_index: int
    embedding: dict


# -- same underlying graph ------------------------------------------------

def fundamental_cycle_switching(G: SignedGraph, H: SignedGraph) -> frozenset | None:
    """Switching set turning G into H when both share vertices and edges.

    Grows a BFS forest; each non-tree edge closes one fundamental cycle and the
    cycle signs in G and H must agree.  Returns ``None`` if they differ, and
    raises if the underlying graphs are not identical.
    """
    if set(G.vertices) != set(H.vertices) or G.edge_count != H.edge_count:
        raise ValueError("graphs must share the same underlying graph")
    for u, v, _ in G.edges():
        if not H.has_edge(u, v):
            raise ValueError("graphs must share the same underlying graph")

    # parity[v]: product of sigma*tau along the tree path from the root to v,
    # i.e. whether v must be switched.
    parity: dict[int, int] = {}
    for root in G.vertices:
        if root in parity:
            continue
        parity[root] = 1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, s in G.neighbors(x).items():
                r = int(s) * int(H.sign(x, y))
                if y not in parity:
                    parity[y] = parity[x] * r
                    queue.append(y)
                elif parity[x] * parity[y] != r:
                    return None
    return frozenset(v for v, p in parity.items() if p == -1)


def enumerate_switching(G: SignedGraph, H: SignedGraph) -> frozenset | None:
    """Brute-force oracle: try all ``2^n`` switching sets (small graphs only)."""
    verts = G.vertices
    for k in range(len(verts) + 1):
        for U in combinations(verts, k):
            if switch(G, U) == H:
                return frozenset(U)
    return None


# -- embedding search ------------------------------------------------------

def _unbalanced_triangles(G: SignedGraph) -> dict[int, int]:
    count = {v: 0 for v in G.vertices}
    for u in G.vertices:
        nu = G.neighbors(u)
        for v in nu:
            if v <= u:
                continue
            nv = G.neighbors(v)
            for w in nu:
                if w <= v or w not in nv:
                    continue
                if nu[v] * nu[w] * nv[w] == -1:
                    count[u] += 1
                    count[v] += 1
                    count[w] += 1
    return count


def _search_order(P: SignedGraph) -> list[tuple[int, int | None]]:
    """BFS order over P's components: (vertex, already-placed neighbour or None)."""
    order: list[tuple[int, int | None]] = []
    placed: set[int] = set()
    remaining = sorted(P.vertices, key=lambda v: -P.degree(v))
    for root in remaining:
        if root in placed:
            continue
        placed.add(root)
        order.append((root, None))
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(P.neighbors(x), key=lambda v: -P.degree(v)):
                if y not in placed:
                    placed.add(y)
                    order.append((y, x))
                    queue.append(y)
    return order


def iter_switching_embeddings(
    P: SignedGraph, H: SignedGraph, *, exact: bool = False, switching: bool = True
) -> Iterator[tuple[dict, dict]]:
    """Yield ``(phi, parity)`` for induced embeddings of P into H up to switching.

    ``phi`` maps V(P) injectively into V(H) so that adjacency is preserved and
    reflected, and ``sigma_P(ab) * parity[a] * parity[b] == tau_H(phi a, phi b)``.
    With ``exact`` the embedding must be a bijection (isomorphism search).
    With ``switching=False`` every parity is +1, i.e. signs must match as they are.
    """
    if P.order > H.order:
        return
    if exact and (P.order != H.order or P.edge_count != H.edge_count):
        return
    order = _search_order(P)
    if exact:
        tri_p = _unbalanced_triangles(P)
        tri_h = _unbalanced_triangles(H)

        def compatible(a, x):
            return P.degree(a) == H.degree(x) and tri_p[a] == tri_h[x]
    else:
        def compatible(a, x):
            return P.degree(a) <= H.degree(x)

    phi: dict[int, int] = {}
    parity: dict[int, int] = {}
    used: set[int] = set()
    placed_before: list[list[int]] = [[b for b, _ in order[:i]] for i in range(len(order))]

    def candidates(i):
        a, anchor = order[i]
        if anchor is None:
            return [x for x in H.vertices if x not in used]
        return [x for x in H.neighbors(phi[anchor]) if x not in used]

    def rec(i):
        if i == len(order):
            yield dict(phi), dict(parity)
            return
        a, anchor = order[i]
        nbrs_a = P.neighbors(a)
        for x in candidates(i):
            if not compatible(a, x):
                continue
            if anchor is None:
                pa = 1
            else:
                pa = int(nbrs_a[anchor]) * int(H.sign(x, phi[anchor])) * parity[anchor]
                if not switching and pa != 1:
                    continue
            nbrs_x = H.neighbors(x)
            ok = True
            for b in placed_before[i]:
                y = phi[b]
                sp = nbrs_a.get(b)
                sh = nbrs_x.get(y)
                if (sp is None) != (sh is None):
                    ok = False
                    break
                if sp is not None and int(sp) * pa * parity[b] != int(sh):
                    ok = False
                    break
            if not ok:
                continue
            phi[a] = x
            parity[a] = pa
            used.add(x)
            yield from rec(i + 1)
            used.discard(x)
            del phi[a]
            del parity[a]

    yield from rec(0)


def switching_equivalent(G: SignedGraph, H: SignedGraph) -> SwitchingEquivalenceWitness | None:
    """Witness that H is isomorphic to a switching of G, or ``None``."""
    if G.order != H.order or G.edge_count != H.edge_count:
        return None
    if set(G.vertices) == set(H.vertices) and all(H.has_edge(u, v) for u, v, _ in G.edges()):
        U = fundamental_cycle_switching(G, H)
        if U is not None:
            return SwitchingEquivalenceWitness({v: v for v in G.vertices}, U)
    for phi, parity in iter_switching_embeddings(G, H, exact=True):
        U = frozenset(phi[a] for a, p in parity.items() if p == -1)
        return SwitchingEquivalenceWitness(phi, U)
    return None


def find_switching_pattern(G: SignedGraph, F: PatternFamily | Sequence[SignedGraph]) -> PatternHit | None:
    """First induced subgraph of G switching equivalent to a pattern in F."""
    patterns = F.patterns if isinstance(F, PatternFamily) else tuple(F)
    for k, P in enumerate(patterns):
        for phi, _ in iter_switching_embeddings(P, G):
            verts = tuple(sorted(phi.values(), key=G.index))
            return PatternHit(verts, k, phi)
    return None


def is_pattern_free(G: SignedGraph, F: PatternFamily | Sequence[SignedGraph]) -> tuple[bool, PatternHit | None]:
    hit = find_switching_pattern(G, F)
    return hit is None, hit


def subset_pattern_scan(G: SignedGraph, F: Iterable[SignedGraph]) -> PatternHit | None:
    """Oracle: every vertex subset of pattern size, compared by the 2^n switching brute force.

    Independent of the embedding search; only usable on small graphs.
    """
    for k, P in enumerate(F):
        Pd = P.relabeled()
        for S in combinations(G.vertices, P.order):
            sub = induced_subgraph(G, S)
            if sub.edge_count != Pd.edge_count:
                continue
            for perm in permutations(S):
                mapping = dict(zip(range(P.order), perm))
                image = SignedGraph(S, ((mapping[u], mapping[v], s) for u, v, s in Pd.edges()))
                if all(sub.has_edge(u, v) for u, v, _ in image.edges()):
                    if enumerate_switching(image, sub) is not None:
                        return PatternHit(tuple(S), k, mapping)
    return None


def ktilde_family(m: int) -> PatternFamily:
    return PatternFamily((ktilde(m, minus=False), ktilde(m, minus=True)), name=f"Ktilde_{2 * m}")


def forbidden_family(t: int) -> PatternFamily:
    """The four patterns ``Ktilde_2t^(0)``, ``Ktilde_2t^(-)``, ``(K_{t+1},-)``, ``(K_{1,t},+)``."""
    return PatternFamily(
        (ktilde(t, False), ktilde(t, True), complete(t + 1, Sign.MINUS), star(t)),
        name=f"forbidden_{t}",
    )
