"""Integer Gram factorisations: s-integrability certificates for signed graphs.

A certificate for G is an integer matrix N whose columns are indexed by the
vertices and satisfy ``N^T N = s (A + k I)`` with ``k = ceil(-lambda_min)``.
The search places one column per vertex.  Coordinates that no earlier column
uses are interchangeable and can be sign-flipped, so each column only ever
opens new coordinates as a nonincreasing run of positive entries; this makes
the search exhaustive up to signed coordinate permutations.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import SignedGraph
from .hoffman import HoffmanSignedGraph, slim_fat_blocks, special_matrix
from .spectra import ceil_shift, eigenvalues

DEFAULT_BUDGET = 10_000_000

FOUND = "certificate"
UNDECIDED = "undecided within budget"
IMPOSSIBLE = "impossible at max_dim"


@dataclass(frozen=True)
class IntegrabilityCertificate:
    s: int
    shift: int
    N: tuple
    target: tuple

    def matrix(self) -> np.ndarray:
        return np.array(self.N, dtype=object).reshape(len(self.N), -1)

    def target_matrix(self) -> np.ndarray:
        return np.array(self.target, dtype=object).reshape(len(self.target), -1)


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    N: np.ndarray | None
    nodes: int
    max_dim: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


@dataclass(frozen=True)
class IntegrabilityResult:
    status: str
    certificate: IntegrabilityCertificate | None
    nodes: int
    max_dim: int
    shift: int
    s: int


class _BudgetExceeded(Exception):
    pass


def _exact_product(N) -> np.ndarray:
    M = np.array(N, dtype=object)
    if M.ndim != 2:
        raise ValueError("certificate matrix must be two-dimensional")
    return M.T.dot(M)


def _search_order(T: np.ndarray) -> list[int]:
    """BFS over the support graph of T so each column meets constrained partners early."""
    n = T.shape[0]
    seen, order = set(), []
    for root in sorted(range(n), key=lambda i: -int(np.count_nonzero(T[i]))):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in np.nonzero(T[i])[0]:
                j = int(j)
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    return order


def _tails(norm: int, slots: int, cap: int | None = None):
    """Nonincreasing positive integer sequences with squares summing to ``norm``."""
    if norm == 0:
        yield ()
        return
    if slots == 0:
        return
    top = math.isqrt(norm) if cap is None else min(cap, math.isqrt(norm))
    for a in range(top, 0, -1):
        for rest in _tails(norm - a * a, slots - 1, a):
            yield (a,) + rest


def integer_gram_factor(T, *, max_dim: int, budget: int = DEFAULT_BUDGET) -> SearchOutcome:
    """Search for an integer ``d x n`` matrix N with ``N^T N = T`` and ``d <= max_dim``.

    ``status`` is ``"certificate"`` with the matrix, ``"impossible at max_dim"``
    when the whole space was exhausted, or ``"undecided within budget"`` once
    ``budget`` search nodes have been spent.
    """
    T = np.asarray(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("target must be square")
    if not np.array_equal(T, T.T):
        raise ValueError("target must be symmetric")
    T = [[int(x) for x in row] for row in T.tolist()]
    n = len(T)
    if any(T[i][i] < 0 for i in range(n)):
        return SearchOutcome(IMPOSSIBLE, None, 0, max_dim)
    order = _search_order(np.array(T, dtype=np.int64).reshape(n, n)) if n else []
    cols: list[list[int]] = []  # placed columns, each over coordinates 0..dim-1
    dim = 0
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded

    def place(k: int) -> bool:
        if k == n:
            return True
        j = order[k]
        norm = T[j][j]
        targets = [T[j][order[i]] for i in range(k)]
        # suffix norms of earlier columns for Cauchy-Schwarz pruning
        suffix = [[0] * (dim + 1) for _ in range(k)]
        for i in range(k):
            c = cols[i]
            for t in range(dim - 1, -1, -1):
                suffix[i][t] = suffix[i][t + 1] + c[t] * c[t]
        entries = [0] * dim
        partial = [0] * k

        def assign(t: int, remaining: int) -> bool:
            nonlocal dim
            tick()
            for i in range(k):
                gap = targets[i] - partial[i]
                if gap * gap > remaining * suffix[i][t]:
                    return False
            if t == dim:
                if any(partial[i] != targets[i] for i in range(k)):
                    return False
                old = dim
                for tail in _tails(remaining, max_dim - old):
                    tick()
                    col = entries + list(tail)
                    for c in cols:
                        c.extend([0] * len(tail))
                    cols.append(col)
                    dim = old + len(tail)
                    if place(k + 1):
                        return True
                    cols.pop()
                    for c in cols:
                        del c[old:]
                    dim = old
                return False
            bound = math.isqrt(remaining)
            for a in _value_order(bound):
                entries[t] = a
                if a:
                    for i in range(k):
                        partial[i] += a * cols[i][t]
                ok = assign(t + 1, remaining - a * a)
                if a:
                    for i in range(k):
                        partial[i] -= a * cols[i][t]
                if ok:
                    return True
            entries[t] = 0
            return False

        return assign(0, norm)

    try:
        ok = place(0)
    except _BudgetExceeded:
        return SearchOutcome(UNDECIDED, None, nodes, max_dim)
    if not ok:
        return SearchOutcome(IMPOSSIBLE, None, nodes, max_dim)
    N = np.zeros((dim, n), dtype=np.int64)
    for k, j in enumerate(order):
        N[:, j] = cols[k]
    return SearchOutcome(FOUND, N, nodes, max_dim)


def _value_order(bound: int) -> list[int]:
    out = [0]
    for a in range(1, bound + 1):
        out += [a, -a]
    return out


def integrability_target(G: SignedGraph, s: int) -> tuple[int, np.ndarray]:
    """``(k, s(A + kI))`` with ``k = ceil(-lambda_min(G))``."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    A = G.adjacency_matrix()
    k = ceil_shift(eigenvalues(A).smallest) if G.order else 0
    return k, s * (A + k * np.eye(G.order, dtype=np.int64))


def integrability_search(
    G: SignedGraph, s: int = 1, *, max_dim: int | None = None, budget: int = DEFAULT_BUDGET
) -> IntegrabilityResult:
    """Look for an s-integrability certificate of G with at most ``max_dim`` rows (default ``2|V|``)."""
    k, T = integrability_target(G, s)
    if max_dim is None:
        max_dim = 2 * G.order
    out = integer_gram_factor(T, max_dim=max_dim, budget=budget)
    cert = None
    if out.found:
        cert = IntegrabilityCertificate(s, k, tuple(map(tuple, out.N.tolist())), tuple(map(tuple, T.tolist())))
        if not verify_certificate(cert, G):
            raise ArithmeticError("search produced a certificate that fails verification")
    return IntegrabilityResult(out.status, cert, out.nodes, max_dim, k, s)


def verify_certificate(cert: IntegrabilityCertificate, G: SignedGraph) -> bool:
    """Exact integer check of ``N^T N == s(A + kI)`` against G's own shift."""
    N = np.array(cert.N, dtype=object)
    if N.ndim != 2 and not (N.ndim == 1 and N.size == 0):
        raise ValueError("certificate matrix must be two-dimensional")
    if N.ndim == 2 and N.shape[1] != G.order:
        raise ValueError(f"certificate has {N.shape[1]} columns but the graph has {G.order} vertices")
    k, T = integrability_target(G, cert.s)
    if k != cert.shift:
        return False
    stored = np.array(cert.target, dtype=object)
    if stored.shape != T.shape or not np.array_equal(stored, T.astype(object)):
        return False
    return bool(np.array_equal(_exact_product(N), T.astype(object)))


# -- correspondence between reduced and full Gram certificates -------------

def full_gram(h: HoffmanSignedGraph, m: int) -> np.ndarray:
    """Integer Gram ``[[S + mI + CC^T, C], [C^T, I]]`` in (slim, fat) order."""
    A_s, C = slim_fat_blocks(h)
    s, f = C.shape
    top = np.hstack([A_s + m * np.eye(s, dtype=np.int64), C])
    bottom = np.hstack([C.T, np.eye(f, dtype=np.int64)])
    return np.vstack([top, bottom])


def reduced_gram(h: HoffmanSignedGraph, m: int) -> np.ndarray:
    return special_matrix(h) + m * np.eye(len(h.slim), dtype=np.int64)


def lift_certificate(N_red, h: HoffmanSignedGraph, s: int) -> np.ndarray:
    """From ``N^T N = s(S + mI)`` to a factor of ``s`` times the full Gram.

    Each fat vertex F gets a block of ``s`` ones in fresh coordinates ``u_F``;
    slim column x becomes ``N_x + sum_F C_xF u_F``.
    """
    N_red = np.asarray(N_red, dtype=np.int64)
    _, C = slim_fat_blocks(h)
    d = N_red.shape[0]
    nf = C.shape[1]
    U = np.zeros((nf * s, nf), dtype=np.int64)
    for j in range(nf):
        U[j * s:(j + 1) * s, j] = 1
    top = np.hstack([N_red, np.zeros((d, nf), dtype=np.int64)])
    bottom = np.hstack([U @ C.T, U])
    return np.vstack([top, bottom])


def reduce_certificate(M, h: HoffmanSignedGraph) -> np.ndarray:
    """From a factor of ``s`` times the full Gram to one of ``s(S + mI)``: ``N_x = M_x - sum_F C_xF M_F``."""
    M = np.asarray(M, dtype=np.int64)
    _, C = slim_fat_blocks(h)
    s_count = C.shape[0]
    return M[:, :s_count] - M[:, s_count:] @ C.T
