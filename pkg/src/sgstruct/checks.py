"""Seeded property suites: each case records pass/fail and enough detail to replay it."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .catalog import ONE_PLUS_SQRT2, catalog_f_minus2, is_minimal_forbidden, realizations
from .cliques import trichotomy_check
from .errors import NoRepresentationError
from .generators import (
    DEFAULT_SEED,
    random_hoffman_graph,
    random_signed_graph,
    random_subset,
    rng_from,
)
from .graph import SignedGraph, Sign, induced_subgraph, switch
from .hoffman import (
    HoffmanSignedGraph,
    expand,
    hoffman_eigenvalues,
    hoffman_smallest_eigenvalue,
    hoffman_switch,
)
from .lattice import build_representation, gram_table, reduce_representation, reduced_gram_table
from .spectra import ceil_shift, eigenvalues, spectrum
from .switching import is_pattern_free, ktilde_family, switching_equivalent

SUITES = ("switching", "interlacing", "hoffman", "trichotomy", "catalog", "convergence")


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    seed: int
    cases: tuple

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def failed(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failed


# -- corpora shared with the tests ------------------------------------------

def hoffman_battery() -> list[tuple[str, HoffmanSignedGraph]]:
    """Six small Hoffman graphs with single, multiple and mixed-sign fat attachments."""
    P, M = Sign.PLUS, Sign.MINUS
    F = HoffmanSignedGraph.from_parts
    return [
        ("h0_two_fat", F(1, 2, [], [(0, 0, P), (0, 1, P)])),
        ("h0_three_fat", F(1, 3, [], [(0, 0, P), (0, 1, P), (0, 2, P)])),
        ("mixed_single", F(1, 2, [], [(0, 0, P), (0, 1, M)])),
        ("negative_pair_shared_fat", F(2, 1, [(0, 1, M)], [(0, 0, P), (1, 0, P)])),
        ("pair_two_fat_mixed", F(2, 2, [], [(0, 0, P), (0, 1, M), (1, 1, P)])),
        ("path_three_fat", F(3, 2, [(0, 1, P), (1, 2, M)], [(0, 0, P), (1, 0, P), (1, 1, M), (2, 1, P)])),
    ]


def hoffman_corpus(count: int, seed: int, max_slim: int = 8, max_fat: int = 4) -> list[HoffmanSignedGraph]:
    rng = rng_from(seed)
    out = []
    for _ in range(count):
        s = int(rng.integers(1, max_slim + 1))
        f = int(rng.integers(0, max_fat + 1))
        out.append(random_hoffman_graph(s, f, rng))
    return out


def trichotomy_corpus(count: int, seed: int, m: int = 2) -> list[tuple[SignedGraph, tuple]]:
    """Graphs with a positive clique of size >= 3m-2 that pass the ``Ktilde_2m`` pattern scan.

    Outside vertices attach to the clique as a near-positive, near-negative
    or sparse neighbour; candidates failing the scan are discarded.
    """
    rng = rng_from(seed)
    fam = ktilde_family(m)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("could not generate enough pattern-free graphs")
        k = int(rng.integers(3 * m - 2, 3 * m + 3))
        extra = int(rng.integers(1, 5))
        n = k + extra
        edges = [(i, j, Sign.PLUS) for i in range(k) for j in range(i + 1, k)]
        for x in range(k, n):
            kind = int(rng.integers(3))
            for c in range(k):
                r = rng.random()
                if kind == 0:
                    edges += [(c, x, Sign.PLUS)] if r < 0.85 else []
                elif kind == 1:
                    edges += [(c, x, Sign.MINUS)] if r < 0.85 else []
                elif r < 0.15:
                    edges.append((c, x, Sign.PLUS if rng.random() < 0.5 else Sign.MINUS))
            for y in range(k, x):
                if rng.random() < 0.5:
                    edges.append((y, x, Sign.PLUS if rng.random() < 0.5 else Sign.MINUS))
        G = SignedGraph(range(n), edges)
        free, _ = is_pattern_free(G, fam)
        if free:
            out.append((G, tuple(range(k))))
    return out


# -- suites -----------------------------------------------------------------

def suite_switching(seed: int) -> list[CaseResult]:
    rng = rng_from(seed)
    cases = []
    for i in range(200):
        n = int(rng.integers(1, 13))
        G = random_signed_graph(n, rng)
        U = random_subset(G.vertices, rng)
        H = switch(G, U)
        a, b = spectrum(G).as_array(), spectrum(H).as_array()
        err = float(np.abs(a - b).max()) if n else 0.0
        w = switching_equivalent(G, H)
        ok = err <= 1e-9 and w is not None and w.replay(G, H)
        cases.append(CaseResult(f"switch#{i}", ok, {"n": n, "U": sorted(U), "max_diff": err}))
    return cases


def suite_interlacing(seed: int) -> list[CaseResult]:
    rng = rng_from(seed)
    cases = []
    for i in range(200):
        n = int(rng.integers(2, 13))
        G = random_signed_graph(n, rng)
        S = sorted(random_subset(G.vertices, rng)) or [0]
        lam_g = spectrum(G).smallest
        lam_s = spectrum(induced_subgraph(G, S)).smallest
        cases.append(CaseResult(f"interlace#{i}", lam_s >= lam_g - 1e-9, {"n": n, "S": S, "gap": lam_s - lam_g}))
    return cases


def check_representation(h: HoffmanSignedGraph) -> dict:
    """Round-trip a Hoffman graph through its norm-m representation; returns the measured errors."""
    lam = hoffman_smallest_eigenvalue(h)
    m = max(1, ceil_shift(lam))
    phi = build_representation(h, m)
    full_err = float(np.abs(phi.gram() - gram_table(h, m)).max())
    psi = reduce_representation(phi, h)
    red_err = float(np.abs(psi.gram() - reduced_gram_table(h, m)).max())
    rows = {v: i for i, v in enumerate(phi.vertices)}
    stack = np.vstack([psi.vectors] + [phi.vectors[rows[F]][None, :] for F in h.fat])
    B = stack @ stack.T
    s = len(h.slim)
    target = np.zeros_like(B)
    target[:s, :s] = reduced_gram_table(h, m)
    target[s:, s:] = np.eye(len(h.fat))
    block_err = float(np.abs(B - target).max())
    refused = None
    if m > 1 and lam < -(m - 1) - 1e-9:
        try:
            build_representation(h, m - 1)
            refused = False
        except NoRepresentationError:
            refused = True
    return {"m": m, "lambda_min": lam, "full_err": full_err, "reduced_err": red_err, "block_err": block_err, "refused": refused}


def suite_hoffman(seed: int) -> list[CaseResult]:
    rng = rng_from(seed)
    cases = []
    for i, h in enumerate(hoffman_corpus(100, int(rng.integers(2**63)))):
        U = random_subset(h.graph.vertices, rng)
        a = hoffman_eigenvalues(h).as_array()
        b = hoffman_eigenvalues(hoffman_switch(h, U)).as_array()
        r = check_representation(h)
        ok = (
            float(np.abs(a - b).max()) <= 1e-9
            and r["full_err"] <= 1e-8
            and r["reduced_err"] <= 1e-8
            and r["block_err"] <= 1e-8
            and r["refused"] is not False
        )
        cases.append(CaseResult(f"hoffman#{i}", ok, {"slim": len(h.slim), "fat": len(h.fat), **r}))
    return cases


def suite_trichotomy(seed: int) -> list[CaseResult]:
    cases = []
    for i, (G, C) in enumerate(trichotomy_corpus(50, seed)):
        rep = trichotomy_check(G, C, 2)
        cases.append(CaseResult(f"trichotomy#{i}", not rep.violations, {"n": G.order, "clique": list(C)}))
    return cases


def suite_catalog(seed: int) -> list[CaseResult]:
    cases = []
    for i, e in enumerate(catalog_f_minus2()):
        cases.append(
            CaseResult(f"catalog#{i}", e.smallest <= -ONE_PLUS_SQRT2 + 1e-9, {"matrix": e.matrix, "smallest": e.smallest})
        )
        reals = realizations(e.array())
        minimal = [h for h in reals if is_minimal_forbidden(h)]
        cases.append(
            CaseResult(f"realizations#{i}", bool(reals), {"realizations": len(reals), "minimal": len(minimal)})
        )
    return cases


def suite_convergence(seed: int, n_values=tuple(range(1, 51)) + (200,)) -> list[CaseResult]:
    cases = []
    for name, h in hoffman_battery():
        target = hoffman_smallest_eigenvalue(h)
        for n in n_values:
            lam = eigenvalues(expand(h, n).adjacency_matrix()).smallest
            cases.append(CaseResult(f"{name}@n={n}", lam >= target - 1e-9, {"n": n, "value": lam, "limit": target}))
    return cases


_RUNNERS: dict[str, Callable[[int], list[CaseResult]]] = {
    "switching": suite_switching,
    "interlacing": suite_interlacing,
    "hoffman": suite_hoffman,
    "trichotomy": suite_trichotomy,
    "catalog": suite_catalog,
    "convergence": suite_convergence,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SuiteResult(name, seed, tuple(_RUNNERS[name](seed)))

