"""Positive cliques, m-neighbourhoods and quasi-positive cliques."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from collections.abc import Iterable

from .errors import LemmaViolation, PatternWitnessError
from .graph import SignedGraph, Sign, induced_subgraph, switch


@dataclass(frozen=True)
class PositiveClique:
    vertices: tuple
    maximal: bool = False

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def is_positive_clique(G: SignedGraph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(G.sign(u, v) is Sign.PLUS for i, u in enumerate(vs) for v in vs[i + 1:])


def make_clique(G: SignedGraph, vertices: Iterable[int]) -> PositiveClique:
    """Wrap a vertex set as a :class:`PositiveClique`, checking it and its maximality."""
    vs = tuple(sorted(set(vertices), key=G.index))
    if not is_positive_clique(G, vs):
        raise ValueError(f"{list(vs)} is not a positive clique")
    common = set(G.vertices).difference(vs)
    for v in vs:
        common &= G.positive_neighbors(v)
    return PositiveClique(vs, maximal=not common)


@dataclass(frozen=True)
class CliqueCatalog:
    host: SignedGraph
    n_min: int
    cliques: tuple

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def maximal_positive_cliques(G: SignedGraph, n_min: int = 1) -> CliqueCatalog:
    """Maximal cliques of the positive graph with at least ``n_min`` vertices.

    Bron-Kerbosch with Tomita pivoting; cliques are reported with vertices in
    host order and the catalog sorted lexicographically by that list.
    """
    if n_min < 1:
        raise ValueError("n_min must be >= 1")
    pos = {v: G.positive_neighbors(v) for v in G.vertices}
    found: list[tuple] = []

    def expand(R: list[int], P: set[int], X: set[int]):
        if not P and not X:
            if len(R) >= n_min:
                found.append(tuple(sorted(R, key=G.index)))
            return
        if len(R) + len(P) < n_min:
            return
        pivot = max(P | X, key=lambda u: len(P & pos[u]))
        for v in list(P - pos[pivot]):
            expand(R + [v], P & pos[v], X & pos[v])
            P.discard(v)
            X.add(v)

    expand([], set(G.vertices), set())
    found.sort(key=lambda c: [G.index(v) for v in c])
    return CliqueCatalog(G, n_min, tuple(PositiveClique(c, maximal=True) for c in found))


@dataclass(frozen=True)
class NeighborhoodSplit:
    """Vertices with at least ``m`` positive (``plus``) / negative (``minus``) neighbours in C."""

    plus: frozenset
    minus: frozenset
    rest: frozenset
    m: int

    @property
    def disjoint(self) -> bool:
        return not (self.plus & self.minus)

    @property
    def support(self) -> frozenset:
        return self.plus | self.minus


def _counts(G: SignedGraph, C: Iterable[int], x: int) -> tuple[int, int, int]:
    """(positive, negative, non-adjacent) counts of x inside C, x itself excluded."""
    nb = G.neighbors(x)
    p = n = z = 0
    for c in C:
        if c == x:
            continue
        s = nb.get(c)
        if s is None:
            z += 1
        elif s is Sign.PLUS:
            p += 1
        else:
            n += 1
    return p, n, z


def m_neighborhoods(G: SignedGraph, C: PositiveClique | Iterable[int], m: int) -> NeighborhoodSplit:
    if m < 1:
        raise ValueError("m must be >= 1")
    cv = tuple(C)
    plus, minus, rest = set(), set(), set()
    for x in G.vertices:
        p, n, _ = _counts(G, cv, x)
        if p >= m:
            plus.add(x)
        if n >= m:
            minus.add(x)
        if p < m and n < m:
            rest.add(x)
    return NeighborhoodSplit(frozenset(plus), frozenset(minus), frozenset(rest), m)


class Case(str, enum.Enum):
    PLUS = "i"
    MINUS = "ii"
    FEW = "iii"
    VIOLATION = "violation"


@dataclass(frozen=True)
class VertexCase:
    vertex: int
    case: Case
    positive: int
    negative: int
    nonadjacent: int
    witness: tuple = ()
    pattern: str | None = None


@dataclass(frozen=True)
class TrichotomyReport:
    m: int
    clique: tuple
    vertices: tuple = field(default=())

    @property
    def violations(self) -> list[VertexCase]:
        return [v for v in self.vertices if v.case is Case.VIOLATION]


def trichotomy_check(G: SignedGraph, C: PositiveClique | Iterable[int], m: int) -> TrichotomyReport:
    """Classify each vertex by its counts inside a positive clique of size >= 3m-2.

    Case (i): >= m positive, <= m-1 negative and <= m-1 non-neighbours.
    Case (ii): >= m negative, <= m-1 positive and <= m-1 non-neighbours.
    Case (iii): <= m-1 positive and <= m-1 negative.
    Anything else is a violation; its witness is the vertex plus m clique
    vertices of each of two offending kinds, which induces a graph switching
    equivalent to a ``Ktilde_2m`` pattern.
    """
    cv = tuple(C)
    if len(cv) < 3 * m - 2:
        raise ValueError(f"clique has {len(cv)} vertices, need at least 3m-2 = {3 * m - 2}")
    out = []
    for x in G.vertices:
        p, n, z = _counts(G, cv, x)
        if p >= m and n < m and z < m:
            case = VertexCase(x, Case.PLUS, p, n, z)
        elif n >= m and p < m and z < m:
            case = VertexCase(x, Case.MINUS, p, n, z)
        elif p < m and n < m:
            case = VertexCase(x, Case.FEW, p, n, z)
        else:
            nb = G.neighbors(x)
            kinds = {
                "+": [c for c in cv if c != x and nb.get(c) is Sign.PLUS],
                "-": [c for c in cv if c != x and nb.get(c) is Sign.MINUS],
                "0": [c for c in cv if c != x and c not in nb],
            }
            big = [k for k in ("+", "-", "0") if len(kinds[k]) >= m][:2]
            witness = (x, *kinds[big[0]][:m], *kinds[big[1]][:m])
            pattern = "Ktilde_minus" if set(big) == {"+", "-"} else "Ktilde_zero"
            case = VertexCase(x, Case.VIOLATION, p, n, z, tuple(sorted(witness, key=G.index)), pattern)
        out.append(case)
    return TrichotomyReport(m, cv, tuple(out))


class CliqueRelation(str, enum.Enum):
    SEPARATED = "separated"
    SAME_NEIGHBORHOOD = "same_neighborhood"


@dataclass(frozen=True)
class RelationEvidence:
    relation: CliqueRelation
    in_plus: int
    in_minus: int
    max_other_neighbors: int
    same_support: bool


def clique_relation(G: SignedGraph, C: PositiveClique | Iterable[int], C2: PositiveClique | Iterable[int], m: int) -> RelationEvidence:
    """Decide whether two large positive cliques are separated or share their m-neighbourhood.

    ``separated``: at most m-1 vertices of C2 in each side of C's split and
    every other vertex of C2 has at most 2m-2 neighbours in C.
    ``same_neighborhood``: the two supports (plus together with minus) coincide.
    Raises :class:`LemmaViolation` when neither holds, which only happens if the
    host contains a ``Ktilde_2m`` pattern.
    """
    c1, c2 = tuple(C), tuple(C2)
    need = 2 * (m * m + m)
    if min(len(c1), len(c2)) < need:
        raise ValueError(f"both cliques need at least 2(m^2+m) = {need} vertices")
    s1 = m_neighborhoods(G, c1, m)
    s2 = m_neighborhoods(G, c2, m)
    in_plus = sum(1 for v in c2 if v in s1.plus)
    in_minus = sum(1 for v in c2 if v in s1.minus)
    c1set = set(c1)
    others = [v for v in c2 if v not in s1.plus and v not in s1.minus]
    max_other = max((len(c1set.intersection(G.neighbors(v)) - {v}) for v in others), default=0)
    same = s1.support == s2.support
    separated = in_plus <= m - 1 and in_minus <= m - 1 and max_other <= 2 * m - 2
    counts = dict(in_plus=in_plus, in_minus=in_minus, max_other_neighbors=max_other, same_support=same)
    if separated and same:
        raise LemmaViolation("both relations hold; cliques are too small for the lemma", counts)
    if separated:
        return RelationEvidence(CliqueRelation.SEPARATED, in_plus, in_minus, max_other, same)
    if same:
        return RelationEvidence(CliqueRelation.SAME_NEIGHBORHOOD, in_plus, in_minus, max_other, same)
    raise LemmaViolation("lemma violation: cliques neither separated nor sharing their neighbourhood", counts)


@dataclass(frozen=True)
class QuasiPositiveClique:
    vertices: frozenset
    graph: SignedGraph
    switch_set: frozenset
    clique: tuple


def ktilde_witness(G: SignedGraph, C: Iterable[int], x: int, m: int) -> tuple:
    """x with m positive and m negative neighbours from C: a ``Ktilde_2m^(-)`` copy."""
    nb = G.neighbors(x)
    cv = [c for c in C if c != x]
    pos = [c for c in cv if nb.get(c) is Sign.PLUS][:m]
    neg = [c for c in cv if nb.get(c) is Sign.MINUS][:m]
    return tuple(sorted((x, *pos, *neg), key=G.index))


def quasi_positive_clique(G: SignedGraph, C: PositiveClique | Iterable[int], m: int) -> QuasiPositiveClique:
    """Induced subgraph on plus and minus sides, switched on the minus side."""
    cv = tuple(C)
    split = m_neighborhoods(G, cv, m)
    both = split.plus & split.minus
    if both:
        x = min(both, key=G.index)
        raise PatternWitnessError(
            f"vertex {x} lies in both the positive and negative {m}-neighbourhood",
            witness=ktilde_witness(G, cv, x, m),
            pattern="Ktilde_minus",
        )
    sub = induced_subgraph(G, split.support)
    return QuasiPositiveClique(split.support, switch(sub, split.minus), split.minus, cv)


def plex_degree(G: SignedGraph) -> int:
    """Smallest t such that the positive graph of G is a t-plex."""
    n = G.order
    if n == 0:
        return 1
    worst = max(n - 1 - len(G.positive_neighbors(v)) for v in G.vertices)
    return 1 + worst
