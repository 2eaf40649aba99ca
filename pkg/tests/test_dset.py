import itertools
from math import comb

import pytest
from hypothesis import given, settings

from conftest import der, derangements
from derangefreq.dset import (
    EnumerationLimitError,
    SizeMismatchError,
    check_membership,
    derangement_set,
    edge_requirement,
    membership_via_requirements,
    non_min_elements,
)
from derangefreq.graph import EdgeSet, OrderedGraph, complete_graph, empty_graph, enumerate_graphs
from derangefreq.perm import Permutation, canopy, enumerate_derangements, parse_cycle_form


def test_example_membership(example_graph):
    g = example_graph
    assert check_membership(g, der("(1234)(567)", 7)).member

    rep = check_membership(g, der("(1234567)", 7))
    assert not rep.member
    assert [(f.t, f.lam, set(f.rho)) for f in rep.failures] == [(5, 4, {5, 6, 7})]

    rep = check_membership(g, der("(13472)(56)", 7))
    assert not rep.member
    # t=3 is the failure named in the worked example; t=7 (lambda 4, rho {7})
    # also fails because 4-7 is not an edge
    assert [(f.t, f.lam, set(f.rho)) for f in rep.failures] == [(3, 1, {3, 4, 7}), (7, 4, {7})]


def test_size_mismatch(example_graph):
    with pytest.raises(SizeMismatchError):
        check_membership(example_graph, der("(12)", 2))
    with pytest.raises(SizeMismatchError):
        membership_via_requirements(example_graph, der("(12)", 2))


def test_report_member_iff_no_failures(example_graph):
    for w in itertools.islice(enumerate_derangements(7), 0, 2000, 7):
        rep = check_membership(example_graph, w)
        assert rep.member == (rep.failures == ())


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_admits_every_derangement(n):
    d = derangement_set(complete_graph(n))
    assert d == list(enumerate_derangements(n))


@pytest.mark.parametrize("n", range(2, 7))
def test_empty_graph_admits_nothing(n):
    assert derangement_set(empty_graph(n)) == []


def test_example_derangement_set(example_graph):
    d = [str(w) for w in derangement_set(example_graph)]
    assert "(1234)(567)" in d
    assert "(1234567)" not in d
    assert "(13472)(56)" not in d


def test_dset_limit():
    with pytest.raises(EnumerationLimitError):
        derangement_set(empty_graph(9))
    assert derangement_set(empty_graph(9), force=True) == []


def test_edge_requirement_examples():
    w = der("(13472)(56)", 7)
    assert edge_requirement(w, 3).pairs() == [(1, 3), (1, 4), (1, 7)]
    assert edge_requirement(w, 6).pairs() == [(5, 6)]
    assert edge_requirement(der("(12)", 2), 1).pairs() == [(1, 2)]
    with pytest.raises(ValueError):
        edge_requirement(w, 8)


@given(derangements(max_n=9))
def test_edge_requirement_sizes(w):
    u = non_min_elements(w)
    c = canopy(w)
    for t in range(1, w.n + 1):
        e = edge_requirement(w, t)
        assert len(e) == len(c.rho(t)) - (t not in u)


def test_non_min_elements():
    assert set(non_min_elements(der("(13472)(56)", 7))) == {2, 3, 4, 6, 7}
    assert set(non_min_elements(der("(12)(34)", 4))) == {2, 4}
    for n in range(2, 10):
        w = der("(1" + "".join(map(str, range(n, 1, -1))) + ")", n)
        assert set(non_min_elements(w)) == set(range(2, n + 1))


@given(derangements(max_n=10))
def test_non_min_size(w):
    u = non_min_elements(w)
    assert len(u) == w.n - w.num_cycles
    assert all((s in u) != (s == w.cycle_min(s)) for s in range(1, w.n + 1))


def test_membership_via_requirements_examples(example_graph):
    assert membership_via_requirements(example_graph, der("(1234)(567)", 7))
    assert not membership_via_requirements(example_graph, der("(13472)(56)", 7))
    for n in range(2, 6):
        for w in enumerate_derangements(n):
            assert not membership_via_requirements(empty_graph(n), w)


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


@pytest.mark.parametrize("n", range(1, 6))
def test_two_membership_formulations_agree(n):
    perms = all_permutations(n)
    for g in enumerate_graphs(n):
        for w in perms:
            assert check_membership(g, w).member == membership_via_requirements(g, w)


@pytest.mark.parametrize("n", range(1, 6))
def test_fixed_point_permutations_always_rejected(n):
    with_fixed = [w for w in all_permutations(n) if w.fixed_points()]
    for g in enumerate_graphs(n):
        for w in with_fixed:
            rep = check_membership(g, w)
            assert not rep.member
            assert {f.t for f in rep.failures} >= set(w.fixed_points())


@pytest.mark.parametrize("n", range(2, 7))
def test_requirement_sets_disjoint_and_nested(n):
    for w in enumerate_derangements(n):
        u = sorted(non_min_elements(w))
        reqs = {t: edge_requirement(w, t) for t in range(1, n + 1)}
        for a, b in itertools.combinations(u, 2):
            assert reqs[a].isdisjoint(reqs[b]), (w, a, b)
        for cycle in w.cycles:
            s = cycle[0]
            assert reqs[w(s)].issubset(reqs[s]), (w, s)


@settings(max_examples=60)
@given(derangements(min_n=2, max_n=5))
def test_monotone_in_graph(w):
    n = w.n
    member = [check_membership(OrderedGraph(n, m), w).member for m in range(1 << comb(n, 2))]
    for m, ok in enumerate(member):
        if ok:
            for i in range(comb(n, 2)):
                assert member[m | (1 << i)]


def test_dset_monotone_under_edge_addition():
    n = 4
    sets = {g.mask: set(derangement_set(g)) for g in enumerate_graphs(n)}
    for m, d in sets.items():
        for i in range(comb(n, 2)):
            assert d <= sets[m | (1 << i)]


def test_parse_then_member_on_arbitrary_permutation(example_graph):
    w = parse_cycle_form("(1234)(56)", 7)  # fixes 7
    rep = check_membership(example_graph, w)
    assert not rep.member
    assert 7 in {f.t for f in rep.failures}
    assert edge_requirement(w, 7) == EdgeSet(7, 0)
