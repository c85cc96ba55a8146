"""Squarefree monomial ideals, symbolic powers, Newton-region multipliers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linserlab.symbolic import (
    StabilizationError,
    asymptotic_multiplier,
    bight,
    containment_suite,
    contains,
    els_chain_check,
    howald_multiplier,
    ideal,
    ideal_from_json,
    ideal_to_json,
    intersect,
    maximal_ideal,
    minimal_primes,
    newton_region_contains,
    power,
    product,
    subset,
    symbolic_power,
    unit_ideal,
)

EDGES = ideal([(1, 1, 0), (1, 0, 1), (0, 1, 1)])  # (xy, xz, yz)


def squarefree_ideals(max_vars=4, max_gens=4):
    def build(n, supports):
        gens = [tuple(1 if k in s else 0 for k in range(n)) for s in supports]
        return ideal(gens, nvars=n)

    return st.integers(min_value=2, max_value=max_vars).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(st.sets(st.integers(min_value=0, max_value=n - 1),
                             min_size=1, max_size=n),
                     min_size=1, max_size=max_gens),
        )
    )


def test_canonical_generators():
    i = ideal([(2, 0), (1, 1), (3, 1), (1, 1)])
    assert i.gens == ((1, 1), (2, 0))
    assert i == ideal([(1, 1), (2, 0)])
    assert str(i) == "(x*y, x^2)"
    assert str(ideal([(0, 0)])) == "(1)"
    assert unit_ideal(("x", "y")).is_unit()


def test_construction_errors():
    with pytest.raises(ValueError):
        ideal([(1, -1)])
    with pytest.raises(ValueError):
        ideal([(1, 0), (1, 1, 0)])
    with pytest.raises(ValueError):
        ideal([], nvars=None)
    with pytest.raises(ValueError):
        ideal([(1,) * 13])


def test_power_and_products():
    mm = maximal_ideal(("x", "y"))
    assert power(mm, 0) == unit_ideal(("x", "y"))
    assert power(mm, 2).gens == ((0, 2), (1, 1), (2, 0))
    x = ideal([(1, 0)], variables=("x", "y"))
    y = ideal([(0, 1)], variables=("x", "y"))
    assert intersect(x, y) == ideal([(1, 1)], variables=("x", "y"))
    assert product(x, y) == ideal([(1, 1)], variables=("x", "y"))
    assert subset(product(x, y), intersect(x, y))
    with pytest.raises(ValueError):
        intersect(x, ideal([(1, 0)], variables=("u", "v")))
    with pytest.raises(ValueError):
        contains(x, (1, 0, 0))
    with pytest.raises(ValueError):
        power(x, -1)


def test_minimal_primes_of_edge_ideal():
    primes = minimal_primes(EDGES)
    assert [p.variables for p in primes] == [(0, 1), (0, 2), (1, 2)]
    assert bight(EDGES) == 2
    mm = maximal_ideal(("x", "y", "z"))
    assert [p.variables for p in minimal_primes(mm)] == [(0, 1, 2)]
    assert bight(mm) == 3
    with pytest.raises(ValueError):
        minimal_primes(ideal([(2, 0)]))
    with pytest.raises(ValueError):
        minimal_primes(unit_ideal(("x",)))


def test_xyz_separates_symbolic_from_ordinary():
    xyz = (1, 1, 1)
    assert contains(symbolic_power(EDGES, 2), xyz)
    assert not contains(power(EDGES, 2), xyz)
    assert symbolic_power(EDGES, 1) == EDGES


@settings(max_examples=60, deadline=None)
@given(
    i=squarefree_ideals(),
    m=st.integers(min_value=1, max_value=3),
    data=st.data(),
)
def test_symbolic_membership_matches_prime_valuations(i, m, data):
    a = tuple(data.draw(st.integers(min_value=0, max_value=3))
              for _ in range(i.nvars))
    primes = minimal_primes(i)
    # covers intersect every generator support minimally
    for p in primes:
        s = set(p.variables)
        assert all(any(g[k] for k in s) for g in i.gens)
        for drop in s:
            smaller = s - {drop}
            assert not all(any(g[k] for k in smaller) for g in i.gens)
    expected = all(sum(a[k] for k in p.variables) >= m for p in primes)
    assert contains(symbolic_power(i, m), a) == expected


@settings(max_examples=40, deadline=None)
@given(i=squarefree_ideals(max_vars=3, max_gens=3),
       r=st.integers(min_value=1, max_value=3))
def test_ordinary_powers_sit_inside_symbolic(i, r):
    assert subset(power(i, r), symbolic_power(i, r))
    assert subset(symbolic_power(i, r + 1), symbolic_power(i, r))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_containment_suite_edge_ideal(r):
    suite = containment_suite(EDGES, r)
    assert suite.els
    assert suite.harbourne
    assert isinstance(suite.hh1, bool) and isinstance(suite.hh4, bool)
    with pytest.raises(ValueError):
        containment_suite(EDGES, 0)


def test_newton_region_membership():
    i = ideal([(2,)], variables=("x",))
    assert newton_region_contains(i, 1, (2,))
    assert newton_region_contains(i, 1, (Fraction(5, 2),))
    assert not newton_region_contains(i, 1, (1,))
    assert not newton_region_contains(i, 2, (3,))
    with pytest.raises(ValueError):
        newton_region_contains(i, 0, (1,))


def test_howald_one_variable():
    i = ideal([(2,)], variables=("x",))
    assert howald_multiplier(i, 1) == i
    # the ideal jumps exactly at the log-canonical threshold 1/2
    assert howald_multiplier(i, Fraction(1, 4)) == unit_ideal(("x",))
    assert howald_multiplier(i, Fraction(1, 2)) == ideal([(1,)],
                                                         variables=("x",))


@pytest.mark.parametrize("t,k", [(2, 1), (3, 2), (5, 4)])
def test_howald_maximal_ideal_powers(t, k):
    mm = maximal_ideal(("x", "y"))
    assert howald_multiplier(mm, t) == power(mm, k)
    # fractional coefficients round down through the open condition
    assert howald_multiplier(mm, Fraction(2 * t + 1, 2)) == power(mm, k)


@settings(max_examples=25, deadline=None)
@given(
    i=squarefree_ideals(max_vars=3, max_gens=3),
    k=st.integers(min_value=2, max_value=3),
    c=st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]),
)
def test_howald_respects_power_scaling(i, k, c):
    assert howald_multiplier(power(i, k), c) == howald_multiplier(i, k * c)


@settings(max_examples=25, deadline=None)
@given(
    i=squarefree_ideals(max_vars=3, max_gens=3),
    c=st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]),
)
def test_howald_monotone_in_coefficient(i, c):
    assert subset(howald_multiplier(i, c + 1), howald_multiplier(i, c))


def test_asymptotic_multiplier_edge_ideal():
    j2 = asymptotic_multiplier(EDGES, 2)
    assert j2 == EDGES
    for r in (1, 2, 3):
        assert power(j2, r) == power(EDGES, r)


def test_asymptotic_multiplier_maximal_ideal():
    mm = maximal_ideal(("x", "y"))
    assert asymptotic_multiplier(mm, 3) == power(mm, 2)


def test_asymptotic_validation():
    with pytest.raises(ValueError):
        asymptotic_multiplier(EDGES, 0)
    with pytest.raises(ValueError):
        asymptotic_multiplier(EDGES, 2, p_range=(1, 2))
    with pytest.raises(ValueError):
        asymptotic_multiplier(EDGES, Fraction(1, 2), p_range=(1, 2, 3))
    assert issubclass(StabilizationError, RuntimeError)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_els_chain(r):
    chain = els_chain_check(EDGES, r)
    assert chain.left and chain.middle and chain.right


def test_ideal_json_round_trip():
    doc = ideal_to_json(EDGES)
    assert doc == {"vars": ["x", "y", "z"],
                   "gens": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}
    assert ideal_from_json(doc) == EDGES
