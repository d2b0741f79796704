import numpy as np
import pytest

from sgstruct.checks import trichotomy_corpus
from sgstruct.cliques import (
    Case, CliqueRelation, clique_relation, is_positive_clique, m_neighborhoods, make_clique,
    maximal_positive_cliques, plex_degree, quasi_positive_clique, trichotomy_check,
)
from sgstruct.errors import LemmaViolation, PatternWitnessError
from sgstruct.generators import random_signed_graph, rng_from
from sgstruct.graph import add_edges, complete, disjoint_union, induced_subgraph, ktilde, star, switch
from sgstruct.spectra import spectrum
from sgstruct.switching import switching_equivalent

from conftest import M, P, all_subsets


def brute_maximal_cliques(G, n_min=1):
    cl = [set(S) for S in all_subsets(G.vertices) if S and all(G.sign(a, b) is P for i, a in enumerate(S) for b in S[i + 1:])]
    return sorted(tuple(sorted(S)) for S in cl if len(S) >= n_min and not any(S < T for T in cl))


def test_catalog_examples():
    assert [C.vertices for C in maximal_positive_cliques(complete(5), 4)] == [(0, 1, 2, 3, 4)]
    K0 = ktilde(2, False)
    assert [C.vertices for C in maximal_positive_cliques(K0, 4)] == [(1, 2, 3, 4)]
    assert sorted(C.vertices for C in maximal_positive_cliques(K0, 3)) == [(0, 1, 2), (1, 2, 3, 4)]
    assert len(maximal_positive_cliques(complete(3, M), 2)) == 0


def test_bron_kerbosch_against_brute_force():
    rng = rng_from(21)
    for _ in range(60):
        G = random_signed_graph(int(rng.integers(1, 13)), rng, p_edge=0.6, p_minus=0.3)
        got = sorted(tuple(sorted(C.vertices)) for C in maximal_positive_cliques(G, 1))
        assert got == brute_maximal_cliques(G)


def test_make_clique_validates():
    assert is_positive_clique(complete(4), (0, 1, 2))
    assert make_clique(complete(4), (0, 1, 2, 3)).maximal
    assert not make_clique(complete(4), (0, 1)).maximal
    with pytest.raises(ValueError):
        make_clique(complete(3, M), (0, 1))


def test_neighborhood_examples():
    s = m_neighborhoods(complete(5), range(5), 2)
    assert s.plus == frozenset(range(5)) and not s.minus
    s = m_neighborhoods(ktilde(2, True), (1, 2, 3, 4), 2)
    assert 0 in s.plus and 0 in s.minus and not s.disjoint
    s = m_neighborhoods(disjoint_union(complete(4), complete(4)), (0, 1, 2, 3), 2)
    assert {4, 5, 6, 7} <= s.rest


def test_neighborhood_counts_by_hand():
    rng = rng_from(22)
    for _ in range(30):
        G = random_signed_graph(10, rng)
        cat = maximal_positive_cliques(G, 2)
        for C in cat:
            s = m_neighborhoods(G, C, 2)
            for x in G.vertices:
                pos = sum(1 for c in C.vertices if c != x and G.sign(x, c) is P)
                neg = sum(1 for c in C.vertices if c != x and G.sign(x, c) is M)
                assert (x in s.plus) == (pos >= 2) and (x in s.minus) == (neg >= 2)
                assert (x in s.rest) == (pos < 2 and neg < 2)


def test_trichotomy_positive_clique():
    r = trichotomy_check(complete(5), range(5), 2)
    assert all(v.case is Case.PLUS for v in r.vertices)


def test_trichotomy_ktilde_minus_violation_is_witnessed():
    G = ktilde(2, True)
    r = trichotomy_check(G, (1, 2, 3, 4), 2)
    assert [v.vertex for v in r.violations] == [0]
    v = r.violations[0]
    assert v.pattern == "Ktilde_minus" and v.witness == (0, 1, 2, 3, 4)
    assert switching_equivalent(ktilde(2, True), induced_subgraph(G, v.witness)) is not None


def test_trichotomy_precondition():
    with pytest.raises(ValueError):
        trichotomy_check(complete(5), (0, 1, 2), 2)


def test_trichotomy_on_pattern_free_corpus():
    for G, C in trichotomy_corpus(10, seed=99):
        assert not trichotomy_check(G, C, 2).violations


def test_clique_relation_examples():
    big = complete(12)
    assert clique_relation(big, range(12), range(12), 2).relation is CliqueRelation.SAME_NEIGHBORHOOD
    two = disjoint_union(complete(12), complete(12))
    ev = clique_relation(two, range(12), range(12, 24), 2)
    assert ev.relation is CliqueRelation.SEPARATED and ev.max_other_neighbors == 0
    joined = add_edges(two, [(0, 12, P)])
    ev = clique_relation(joined, range(12), range(12, 24), 2)
    assert ev.relation is CliqueRelation.SEPARATED and ev.max_other_neighbors == 1


def test_clique_relation_rejects_small_and_reports_violation():
    with pytest.raises(ValueError):
        clique_relation(complete(5), range(5), range(5), 2)
    # second clique half-attached to the first: neither relation holds
    G = disjoint_union(complete(12), complete(12))
    G = add_edges(G, [(a, b, P) for a in range(12) for b in range(12, 15)])
    with pytest.raises(LemmaViolation) as e:
        clique_relation(G, range(12), range(12, 24), 2)
    assert "in_plus" in e.value.counts


def test_quasi_positive_clique_examples():
    q = quasi_positive_clique(complete(5), range(5), 2)
    assert q.graph == complete(5) and not q.switch_set
    G = switch(complete(5), {0, 1})
    q = quasi_positive_clique(G, (2, 3, 4), 2)
    assert q.switch_set == {0, 1}
    assert q.graph == complete(5)
    assert plex_degree(q.graph) == 1
    H = disjoint_union(complete(6), complete(6, M))
    q = quasi_positive_clique(H, range(6), 2)
    assert q.graph == complete(6)


def test_quasi_positive_clique_rejects_overlap():
    with pytest.raises(PatternWitnessError) as e:
        quasi_positive_clique(ktilde(2, True), (1, 2, 3, 4), 2)
    assert e.value.witness == (0, 1, 2, 3, 4)


def test_quasi_positive_clique_preserves_spectrum():
    for G, C in trichotomy_corpus(8, seed=5):
        q = quasi_positive_clique(G, C, 2)
        sub = induced_subgraph(G, q.vertices)
        assert np.allclose(spectrum(sub).as_array(), spectrum(q.graph).as_array(), atol=1e-9)


def test_plex_degree():
    assert plex_degree(complete(5)) == 1
    assert plex_degree(star(3)) == 3
