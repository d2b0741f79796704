import itertools

import numpy as np
import pytest

from sgstruct.graph import SignedGraph, Sign

P, M = Sign.PLUS, Sign.MINUS

AC_TITLES = {
    "AC1": "switching invariance of spectra",
    "AC2": "standard spectra",
    "AC3": "expansion lower bound and convergence",
    "AC4": "norm-m representation round trip",
    "AC5": "representation block decomposition",
    "AC6": "forbidden catalog eigenvalues",
    "AC7": "integrability certificates",
    "AC8": "neighbourhood trichotomy",
    "AC9": "decomposition end to end",
    "AC10": "small-eigenvalue classifier",
    "AC11": "oracle equivalence",
}
_ac_ids: dict[str, str] = {}
_ac_outcomes: dict[str, list[bool]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _ac_ids[item.nodeid] = m.args[0]


def pytest_runtest_logreport(report):
    ac = _ac_ids.get(report.nodeid)
    if ac is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ac_outcomes.setdefault(ac, []).append(report.outcome == "passed")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id): acceptance criterion this test decides")


def pytest_terminal_summary(terminalreporter):
    if not _ac_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda k: int(k[2:])
    for ac in sorted(_ac_outcomes, key=key):
        ok = all(_ac_outcomes[ac])
        terminalreporter.write_line(f"{ac:<5} {'PASS' if ok else 'FAIL'}  {AC_TITLES.get(ac, '')}")


# -- small builders ---------------------------------------------------------

def graph(n, edges):
    return SignedGraph(range(n), edges)


def brute_eigs(G):
    """Reference spectrum straight from numpy on a freshly built dense matrix."""
    n = G.order
    A = np.zeros((n, n))
    idx = {v: i for i, v in enumerate(G.vertices)}
    for u, v, s in G.edges():
        A[idx[u], idx[v]] = A[idx[v], idx[u]] = int(s)
    return np.linalg.eigvalsh(A) if n else np.zeros(0)


def all_subsets(vs):
    vs = list(vs)
    for r in range(len(vs) + 1):
        yield from itertools.combinations(vs, r)


@pytest.fixture
def two_k5_shared():
    return graph(9, [(i, j, P) for i in range(5) for j in range(i + 1, 5)]
                 + [(i, j, P) for i in range(4, 9) for j in range(i + 1, 9)])
