"""Representations of Hoffman signed graphs of norm m and the lattices they generate."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NoRepresentationError, NotPositiveSemidefiniteError
from .graph import SignedGraph
from .hoffman import FAT, SLIM, HoffmanSignedGraph, special_matrix
from .spectra import as_symmetric, cholesky_psd, eigenvalues, snap_integer

GRAM_TOL = 1e-8


def fat_correction(h: HoffmanSignedGraph, x: int, y: int) -> int:
    """Common fat neighbours with equal signs minus those with opposite signs."""
    for v in (x, y):
        if h.labels.get(v) != SLIM:
            raise ValueError(f"vertex {v} is not a slim vertex")
    fx, fy = h.fat_neighbors(x), h.fat_neighbors(y)
    return sum(int(s) * int(fy[F]) for F, s in fx.items() if F in fy)


def gram_table(h: HoffmanSignedGraph, m: int) -> np.ndarray:
    """Inner products a representation of norm m must realise, in graph vertex order."""
    A = h.graph.adjacency_matrix().astype(np.float64)
    diag = [m if h.labels[v] == SLIM else 1 for v in h.graph.vertices]
    return A + np.diag(diag)


@dataclass(frozen=True)
class Representation:
    """``vectors[i]`` is the image of ``vertices[i]``."""

    vertices: tuple
    vectors: np.ndarray
    norm: int
    labels: tuple

    def vector(self, v: int) -> np.ndarray:
        return self.vectors[self.vertices.index(v)]

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


@dataclass(frozen=True)
class ReducedRepresentation:
    vertices: tuple
    vectors: np.ndarray
    norm: int
    fat_corrections: dict

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


def build_representation(h: HoffmanSignedGraph, m: int, tol: float = 1e-9) -> Representation:
    """Explicit representation of norm m, which exists exactly when ``lambda_min(h) >= -m``.

    Coordinates are one per slim vertex followed by one per fat vertex.  The
    slim block of a slim vector is its row of a square PSD factor of
    ``S(h) + mI``; fat vertex F is the unit vector ``e_F`` and each slim x adds
    ``sign(x, F) e_F`` for its fat neighbours.
    """
    if m < 1:
        raise ValueError("norm must be a positive integer")
    s, f = len(h.slim), len(h.fat)
    if s:
        M = special_matrix(h).astype(np.float64) + m * np.eye(s)
        lam = eigenvalues(M).smallest
        if lam < -tol:
            raise NoRepresentationError(
                f"no representation of norm {m}: smallest eigenvalue is {lam - m:.12g} < {-m}"
            )
        try:
            L = cholesky_psd(M, tol=max(tol, 1e-9))
        except NotPositiveSemidefiniteError as exc:
            raise NoRepresentationError(f"no representation of norm {m}: {exc}") from exc
    else:
        L = np.zeros((0, 0))
    fpos = {F: s + j for j, F in enumerate(h.fat)}
    spos = {x: i for i, x in enumerate(h.slim)}
    vecs = np.zeros((h.graph.order, s + f))
    for r, v in enumerate(h.graph.vertices):
        if h.labels[v] == FAT:
            vecs[r, fpos[v]] = 1.0
        else:
            vecs[r, :s] = L[spos[v]]
            for F, sg in h.fat_neighbors(v).items():
                vecs[r, fpos[F]] = int(sg)
    rep = Representation(h.graph.vertices, vecs, m, tuple(h.label_list()))
    err = np.abs(rep.gram() - gram_table(h, m)).max() if vecs.size else 0.0
    if err > GRAM_TOL * (1 + m):
        raise ArithmeticError(f"representation Gram deviates by {err:.3e}")
    return rep


def reduce_representation(phi: Representation, h: HoffmanSignedGraph) -> ReducedRepresentation:
    """Project slim vectors off the fat unit vectors: ``psi(x) = phi(x) - sum (phi x, phi F) phi F``."""
    rows = {v: i for i, v in enumerate(phi.vertices)}
    fat_vecs = np.zeros((len(h.fat), phi.vectors.shape[1]))
    for j, F in enumerate(h.fat):
        fat_vecs[j] = phi.vectors[rows[F]]
    out = []
    for x in h.slim:
        v = phi.vectors[rows[x]]
        if len(h.fat):
            v = v - (fat_vecs @ v) @ fat_vecs
        out.append(v)
    vecs = np.array(out).reshape(len(h.slim), phi.vectors.shape[1])
    corr = {(x, y): fat_correction(h, x, y) for x in h.slim for y in h.slim}
    return ReducedRepresentation(h.slim, vecs, phi.norm, corr)


def reduced_gram_table(h: HoffmanSignedGraph, m: int) -> np.ndarray:
    return special_matrix(h).astype(np.float64) + m * np.eye(len(h.slim))


# -- lattices ---------------------------------------------------------------

@dataclass(frozen=True)
class LatticeDescription:
    generators: np.ndarray
    gram: np.ndarray

    @classmethod
    def from_gram(cls, gram) -> "LatticeDescription":
        G = snap_integer(as_symmetric(gram))
        return cls(np.zeros((G.shape[0], 0)), G)


@dataclass(frozen=True)
class MinimalNorm:
    value: int | None
    certified: bool
    radius: int

    @property
    def box_limited(self) -> bool:
        return not self.certified


MAX_BOX = 5_000_000


def lattice_minimal_norm(lattice: LatticeDescription | np.ndarray, radius: int) -> MinimalNorm:
    """Smallest positive ``c^T G c`` over integer coefficients ``c`` with entries in ``[-radius, radius]``.

    Coefficient vectors giving the zero lattice vector are skipped.  The value
    is certified when the Gram is positive definite and the box covers every
    vector of at most that norm (``|c_i| <= sqrt(mu * (G^-1)_ii)``), otherwise it
    is only an upper bound and flagged box-limited.
    """
    G = lattice.gram if isinstance(lattice, LatticeDescription) else np.asarray(lattice)
    G = as_symmetric(G)
    k = G.shape[0]
    if radius < 1:
        raise ValueError("radius must be >= 1")
    w = eigenvalues(G).smallest if k else 0.0
    if w < -1e-9:
        raise NotPositiveSemidefiniteError("lattice Gram is indefinite")
    if (2 * radius + 1) ** k > MAX_BOX:
        raise ValueError(f"search box (2*{radius}+1)^{k} exceeds {MAX_BOX} points")
    best = None
    rng = np.arange(-radius, radius + 1)
    # first nonzero coefficient positive: c and -c give the same norm
    for lead in range(k):
        rest = k - lead - 1
        combos = list(itertools.product(rng, repeat=rest))
        tails = np.array(combos, dtype=np.float64).reshape(len(combos), rest)
        for a in range(1, radius + 1):
            C = np.zeros((tails.shape[0], k))
            C[:, lead] = a
            C[:, lead + 1:] = tails
            q = np.einsum("ij,jk,ik->i", C, G, C)
            q = q[q > 0.5]
            if q.size:
                v = int(round(q.min()))
                best = v if best is None else min(best, v)
    certified = False
    if best is not None and w > 1e-9:
        inv = np.linalg.inv(G)
        need = np.floor(np.sqrt(best * np.clip(np.diag(inv), 0, None)) + 1e-9)
        certified = bool(np.all(need <= radius))
    return MinimalNorm(best, certified, radius)


def lattice_from_hoffman(h: HoffmanSignedGraph, m: int, reduced: bool = False) -> LatticeDescription:
    """Generators and integer Gram of the lattice spanned by a (reduced) representation of norm m."""
    phi = build_representation(h, m)
    if reduced:
        gens = reduce_representation(phi, h).vectors
    else:
        gens = phi.vectors
    raw = gens @ gens.T
    try:
        gram = snap_integer(raw)
    except ArithmeticError as exc:
        raise ArithmeticError(f"lattice Gram is not integral: {exc}") from exc
    return LatticeDescription(gens, gram)


def graph_lattice(G: SignedGraph, m: int) -> LatticeDescription:
    """Lattice of a slim-only graph: Gram ``A + mI``."""
    return lattice_from_hoffman(HoffmanSignedGraph(G, [SLIM] * G.order), m)


def minimal_norm_radius(k: int, budget: int = MAX_BOX) -> int:
    """Largest box radius keeping ``(2r+1)^k`` within ``budget``."""
    if k == 0:
        return 1
    return max(1, int((budget ** (1.0 / k) - 1) // 2))


__all__ = [
    "GRAM_TOL",
    "LatticeDescription",
    "MinimalNorm",
    "ReducedRepresentation",
    "Representation",
    "build_representation",
    "fat_correction",
    "gram_table",
    "graph_lattice",
    "lattice_from_hoffman",
    "lattice_minimal_norm",
    "minimal_norm_radius",
    "reduce_representation",
    "reduced_gram_table",
]

