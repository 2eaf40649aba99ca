import itertools

import pytest
from hypothesis import given

from conftest import der, derangements, permutations
from derangefreq.perm import (
    CycleFormatError,
    Derangement,
    FixedPointError,
    Permutation,
    as_derangement,
    canopy,
    enumerate_derangements,
    enumerate_derangements_with_k_cycles,
    parse_cycle_form,
    relabel_cycles,
    standard_cycle_form,
)


def derangement_number(n):
    # D(n) = (n-1)(D(n-1) + D(n-2)), D(0)=1, D(1)=0
    a, b = 1, 0
    for m in range(2, n + 1):
        a, b = b, (m - 1) * (a + b)
    return b if n >= 1 else a


def test_parse_compact_two_cycles():
    w = parse_cycle_form("(13472)(56)", 7)
    assert {t: w(t) for t in range(1, 8)} == {1: 3, 3: 4, 4: 7, 7: 2, 2: 1, 5: 6, 6: 5}


def test_parse_small_cases():
    assert parse_cycle_form("(1 2)", 2).images == (2, 1)
    assert parse_cycle_form("(1 3)", 4).images == (3, 2, 1, 4)
    assert parse_cycle_form("(1,3)", 4) == parse_cycle_form("(13)", 4)
    assert parse_cycle_form("(1, 3) (2 ,4)", 4).images == (3, 4, 1, 2)
    assert parse_cycle_form("", 3) == Permutation.identity(3)


def test_parse_large_n_needs_separators():
    w = parse_cycle_form("(1 10 3)(2,11)", 11)
    assert w(1) == 10 and w(10) == 3 and w(3) == 1 and w(2) == 11
    with pytest.raises(CycleFormatError, match="compact"):
        parse_cycle_form("(123)", 10)


@pytest.mark.parametrize("text, n, msg", [
    ("(12", 3, "unbalanced"),
    ("(1(2))", 3, "unbalanced"),
    ("12)", 3, "expected '\\('"),
    ("(12))", 3, "expected '\\('"),
    ("()", 3, "empty cycle"),
    ("(1,,2)", 3, "empty element"),
    ("(1,2,)", 3, "trailing"),
    ("(14)", 3, "outside"),
    ("(0 1)", 3, "outside"),
    ("(12)(23)", 3, "repeated"),
    ("(1a)", 3, "unexpected"),
])
def test_parse_errors(text, n, msg):
    with pytest.raises(CycleFormatError, match=msg):
        parse_cycle_form(text, n)


def test_parse_error_reports_column():
    with pytest.raises(CycleFormatError) as e:
        parse_cycle_form("(12)(3 9)", 5)
    assert e.value.column == 8


def test_standard_cycle_form():
    assert standard_cycle_form(Permutation((3, 1, 4, 7, 6, 5, 2))) == "(13472)(56)"
    assert standard_cycle_form(Permutation.identity(3)) == ""
    assert standard_cycle_form(Permutation((2, 1, 4, 3))) == "(12)(34)"
    # input rotated and out of order still normalizes
    assert standard_cycle_form(parse_cycle_form("(65)(72134)", 7)) == "(13472)(56)"
    assert standard_cycle_form(parse_cycle_form("(10 2)", 10)) == "(2 10)"


@given(permutations(max_n=12))
def test_standard_form_round_trip(w):
    assert parse_cycle_form(standard_cycle_form(w), w.n) == w


@given(permutations(max_n=10))
def test_cycles_partition_and_reproduce_map(w):
    elems = [x for c in w.cycles for x in c]
    assert sorted(elems) == list(range(1, w.n + 1))
    for c in w.cycles:
        assert c[0] == min(c)
        for a, b in zip(c, c[1:] + c[:1]):
            assert w(a) == b
    mins = [c[0] for c in w.cycles]
    assert mins == sorted(mins)


def test_as_derangement():
    assert isinstance(as_derangement(parse_cycle_form("(12)(34)", 4)), Derangement)
    with pytest.raises(FixedPointError) as e:
        as_derangement(Permutation.identity(2))
    assert e.value.vertex == 1
    with pytest.raises(FixedPointError) as e:
        as_derangement(parse_cycle_form("(13)", 4))
    assert e.value.vertex == 2


@pytest.mark.parametrize("text, t, lam, rho", [
    ("(1234567)", 5, 4, {5, 6, 7}),
    ("(13472)(56)", 3, 1, {3, 4, 7}),
    ("(12)", 1, 1, {1, 2}),
    ("(13472)(56)", 6, 5, {6}),
])
def test_canopy_examples(text, t, lam, rho):
    n = max(int(ch) for ch in text if ch.isdigit())
    c = canopy(parse_cycle_form(text, n))
    assert c.lam(t) == lam
    assert c.rho(t) == rho


def brute_canopy(w, t):
    """lambda and rho from explicit powers of w, searching exponents directly."""
    def power(x, e):
        for _ in range(abs(e)):
            x = w(x) if e > 0 else w.inverse(x)
        return x
    k = next(k for k in range(1, w.n + 1) if power(t, k) <= t)
    ell = next(l for l in range(1, w.n + 1) if power(t, -l) <= t)
    return power(t, -ell), {power(t, j) for j in range(k)}


def left_walk_lambda(w, t):
    """First smaller element to the left of t in the standard cycle string."""
    cycle = w.cycle_of(t)
    i = cycle.index(t)
    for x in reversed(cycle[:i]):
        if x < t:
            return x
    return t


@given(permutations(max_n=10))
def test_canopy_invariants(w):
    c = canopy(w)
    for t in range(1, w.n + 1):
        lam, rho = c.lam(t), c.rho(t)
        assert (lam, set(rho)) == brute_canopy(w, t)
        assert t in rho
        assert lam <= t
        assert all(s > lam for s in rho - {t})
        if w.is_cycle_min(t):
            assert lam == t
            assert rho == set(w.cycle_of(t))
        else:
            assert lam < t
            assert lam == left_walk_lambda(w, t)
        # forward run stays above t until it stops
        x, run = t, []
        for _ in range(len(rho) - 1):
            x = w(x)
            run.append(x)
        assert all(y > t for y in run)
        assert w(x) <= t


def test_enumerate_derangements_counts():
    assert [str(w) for w in enumerate_derangements(2)] == ["(12)"]
    assert list(enumerate_derangements(1)) == []
    assert list(enumerate_derangements(0)) == []
    for n in range(2, 8):
        got = list(enumerate_derangements(n))
        assert len(got) == derangement_number(n)
        brute = [p for p in itertools.permutations(range(1, n + 1))
                 if all(p[i] != i + 1 for i in range(n))]
        assert [w.images for w in got] == brute  # lexicographic, same order
    assert derangement_number(4) == 9 and derangement_number(5) == 44


def test_enumerate_with_k_cycles():
    two = [str(w) for w in enumerate_derangements_with_k_cycles(4, 2)]
    assert sorted(two) == ["(12)(34)", "(13)(24)", "(14)(23)"]
    assert len(list(enumerate_derangements_with_k_cycles(4, 1))) == 6
    assert [str(w) for w in enumerate_derangements_with_k_cycles(2, 1)] == ["(12)"]
    with pytest.raises(ValueError):
        list(enumerate_derangements_with_k_cycles(4, 3))
    for n in range(2, 7):
        total = sum(len(list(enumerate_derangements_with_k_cycles(n, k)))
                    for k in range(1, n // 2 + 1))
        assert total == derangement_number(n)


@given(derangements())
def test_derangement_strategy_has_no_fixed_points(w):
    assert w.fixed_points() == []
    assert all(len(c) >= 2 for c in w.cycles)


def test_derangement_equals_permutation_with_same_images():
    assert der("(12)", 2) == parse_cycle_form("(12)", 2)
    assert hash(der("(12)", 2)) == hash(parse_cycle_form("(12)", 2))


def test_relabel_cycles():
    w, labels = relabel_cycles([["a", "c"], ["b", "d"]])
    assert labels == ("a", "b", "c", "d")
    assert str(w) == "(13)(24)"
    w, labels = relabel_cycles([[10, 30]], labels=[10, 20, 30, 40])
    assert w.images == (3, 2, 1, 4)
