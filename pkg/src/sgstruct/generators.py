"""Seeded random signed graphs and Hoffman graphs for property checks."""

from __future__ import annotations

import numpy as np

from .graph import SignedGraph, Sign, complete, switch
from .hoffman import HoffmanSignedGraph

DEFAULT_SEED = 20240601


def rng_from(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_signed_graph(n: int, rng, p_edge: float = 0.5, p_minus: float = 0.5) -> SignedGraph:
    rng = rng_from(rng)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_edge:
                edges.append((i, j, Sign.MINUS if rng.random() < p_minus else Sign.PLUS))
    return SignedGraph(range(n), edges)


def random_connected_signed_graph(n: int, rng, p_edge: float = 0.5, p_minus: float = 0.5) -> SignedGraph:
    rng = rng_from(rng)
    while True:
        G = random_signed_graph(n, rng, p_edge, p_minus)
        if G.is_connected():
            return G


def random_subset(vertices, rng) -> frozenset:
    rng = rng_from(rng)
    return frozenset(v for v in vertices if rng.random() < 0.5)


def random_switched_clique(n: int, rng) -> tuple[SignedGraph, frozenset]:
    rng = rng_from(rng)
    U = random_subset(range(n), rng)
    return switch(complete(n), U), U


def random_permutation_relabel(G: SignedGraph, rng) -> tuple[SignedGraph, dict]:
    """Isomorphic copy on the same ids with vertices permuted; returns the map old -> new."""
    rng = rng_from(rng)
    perm = rng.permutation(G.order)
    phi = {v: G.vertices[int(perm[i])] for i, v in enumerate(G.vertices)}
    return SignedGraph(G.vertices, [(phi[u], phi[v], s) for u, v, s in G.edges()]), phi


def random_hoffman_graph(
    n_slim: int, n_fat: int, rng, p_edge: float = 0.4, p_attach: float = 0.5, p_minus: float = 0.5
) -> HoffmanSignedGraph:
    """Random Hoffman graph; each fat vertex gets at least one slim neighbour."""
    rng = rng_from(rng)
    if n_fat and not n_slim:
        raise ValueError("fat vertices need slim neighbours")

    def sign():
        return Sign.MINUS if rng.random() < p_minus else Sign.PLUS

    slim = random_signed_graph(n_slim, rng, p_edge, p_minus)
    att = []
    for j in range(n_fat):
        chosen = [x for x in range(n_slim) if rng.random() < p_attach]
        if not chosen:
            chosen = [int(rng.integers(n_slim))]
        att += [(x, j, sign()) for x in chosen]
    return HoffmanSignedGraph.from_parts(n_slim, n_fat, slim.edges(), att)


def random_fat_hoffman_graph(n_slim: int, n_fat: int, rng, **kw) -> HoffmanSignedGraph:
    """Random Hoffman graph in which every slim vertex has a fat neighbour."""
    rng = rng_from(rng)
    h = random_hoffman_graph(n_slim, n_fat, rng, **kw)
    if h.is_fat():
        return h
    edges = list(h.graph.edges())
    for x in h.slim:
        if not h.fat_neighbors(x):
            F = h.fat[int(rng.integers(len(h.fat)))]
            edges.append((x, F, Sign.MINUS if rng.random() < 0.5 else Sign.PLUS))
    return HoffmanSignedGraph(SignedGraph(h.graph.vertices, edges), h.labels)
