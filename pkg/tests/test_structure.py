import dataclasses
import math

import pytest

from sgstruct.errors import BelowThresholdWarning, PatternWitnessError
from sgstruct.graph import add_edges, complete, disjoint_union, ktilde
from sgstruct.hoffman import hoffman_smallest_eigenvalue, special_matrix
from sgstruct.spectra import smallest_eigenvalue
from sgstruct.structure import (
    DecompositionParams, KappaConfig, decompose, intersection_bound, ktilde_index, lower_bound_from_kappa,
    membership_bound, plex_bound, q_threshold, sigma_families, verify_decomposition,
)

pytestmark = pytest.mark.filterwarnings("ignore::sgstruct.errors.BelowThresholdWarning")


def test_params_validation():
    for bad in (dict(m=1, n=4), dict(m=2, n=0), dict(m=2, n=4, lam=-0.5)):
        with pytest.raises(ValueError):
            DecompositionParams(**bad)


def test_single_clique():
    G = complete(5)
    D = decompose(G, DecompositionParams(2, 4, lam=-1))
    assert len(D.pieces) == 1 and D.pieces[0].vertices == tuple(range(5))
    assert D.residual.edge_count == 0
    R = verify_decomposition(G, D)
    assert R.max_membership == 1 and R.plex_degrees == (1,) and R.residual_max_valency == 0
    assert [b.satisfied for b in R.bounds_checked[:3]] == [True, True, True]


def test_shared_vertex(two_k5_shared):
    D = decompose(two_k5_shared, DecompositionParams(2, 4, lam=-2))
    assert sorted(p.vertices for p in D.pieces) == [(0, 1, 2, 3, 4), (4, 5, 6, 7, 8)]
    assert D.residual.edge_count == 0
    R = verify_decomposition(two_k5_shared, D)
    assert R.membership[4] == 2 and R.max_membership == 2
    assert R.max_pairwise_intersection == 1 and R.ok


def test_joining_edge_survives_in_residual():
    G = add_edges(disjoint_union(complete(5), complete(5)), [(0, 5, 1)])
    D = decompose(G, DecompositionParams(2, 4))
    assert len(D.pieces) == 2
    assert [(u, v) for u, v, _ in D.residual.edges()] == [(0, 5)]
    assert verify_decomposition(G, D).residual_max_valency == 1


def test_corruption_is_flagged(two_k5_shared):
    D = decompose(two_k5_shared, DecompositionParams(2, 4, lam=-2))
    p = D.pieces[0]
    broken = dataclasses.replace(p, vertices=p.vertices[1:])
    bad = dataclasses.replace(D, pieces=(broken,) + D.pieces[1:])
    R = verify_decomposition(two_k5_shared, bad)
    assert R.integrity_issues and not R.ok


def test_decompose_checks_patterns():
    with pytest.raises(PatternWitnessError) as e:
        decompose(ktilde(2, True), DecompositionParams(2, 4), check_free=True)
    assert e.value.witness == (0, 1, 2, 3, 4)


def test_below_threshold_warning_recorded():
    with pytest.warns(BelowThresholdWarning):
        D = decompose(complete(5), DecompositionParams(2, 4))
    assert D.warnings


def test_residual_valency_from_kappa_config(two_k5_shared):
    lam = -2
    key = f"4,{2 - math.floor(lam)},{math.floor(lam - 1) ** 2}"
    cfg = KappaConfig.from_dict({"kappa": {"kappa2": 3}, "ramsey": {key: 5}})
    D = decompose(two_k5_shared, DecompositionParams(2, 4, lam=lam, kappa=cfg))
    last = verify_decomposition(two_k5_shared, D).bounds_checked[-1]
    assert last.name == "residual_valency" and last.bound == 4 and last.satisfied
    D = decompose(two_k5_shared, DecompositionParams(2, 4, lam=lam))
    assert verify_decomposition(two_k5_shared, D).bounds_checked[-1].satisfied is None
    D = decompose(two_k5_shared, DecompositionParams(2, 4, lam=lam, valency_bound=0))
    assert verify_decomposition(two_k5_shared, D).bounds_checked[-1].satisfied is True


def test_kappa_config_rejects_bad_values():
    for bad in ({"kappa": {"k": 0}}, {"ramsey": {"1,2": 3}}, {"ramsey": {"a,b,c": 3}}, {"ramsey": {"1,2,3": -1}}):
        with pytest.raises(ValueError):
            KappaConfig.from_dict(bad)


@pytest.mark.parametrize("lam,mem,plex,inter", [(-1, 1, 1, 0), (-2, 2, 2, 4), (-2.5, 2, 3, 4), (-3, 3, 5, 8)])
def test_bound_formulas(lam, mem, plex, inter):
    assert membership_bound(lam) == mem
    assert plex_bound(lam) == plex
    assert intersection_bound(lam) == inter


@pytest.mark.parametrize("t,kappa,value", [(2, 1, -2), (3, 1, -6), (2, 10, -29)])
def test_lower_bound_from_kappa(t, kappa, value):
    assert lower_bound_from_kappa(t, kappa) == value
    expanded = -t * (t - 1) * (t - 2) * kappa / 2 - 2 * t * kappa + kappa + t - 1
    assert expanded == value


def test_lower_bound_from_kappa_domain():
    with pytest.raises(ValueError):
        lower_bound_from_kappa(1, 1)
    with pytest.raises(ValueError):
        lower_bound_from_kappa(2, 0)


def test_q_threshold():
    assert q_threshold(2, 2) == 12
    assert q_threshold(2, 10) == 4 * 9 + 2


def test_ktilde_index_against_direct_scan():
    for lam in (-1.5, -2, -2.5):
        m = ktilde_index(lam)
        worst = lambda k: max(smallest_eigenvalue(ktilde(k, False)), smallest_eigenvalue(ktilde(k, True)))
        assert worst(m) < lam and (m == 1 or worst(m - 1) >= lam)


def test_sigma_families():
    fam = sigma_families(-2)
    assert len(fam.h0.fat) == 3 and hoffman_smallest_eigenvalue(fam.h0) == pytest.approx(-3)
    pair = [h for h in fam.family2 if h.graph.edge_count == 4]
    assert len(pair) == 1
    assert special_matrix(pair[0]).tolist() == [[-2, -2], [-2, -2]]
    assert hoffman_smallest_eigenvalue(pair[0]) == pytest.approx(-4)
    fam = sigma_families(-1.5)
    assert len(fam.h0.fat) == 2 and hoffman_smallest_eigenvalue(fam.h0) == pytest.approx(-2)
    for lam in (-1.5, -2, -2.5):
        f = sigma_families(lam)
        assert all(hoffman_smallest_eigenvalue(h) < lam for h in (f.h0, *f.family1, *f.family2))
    with pytest.raises(ValueError):
        sigma_families(-1)
