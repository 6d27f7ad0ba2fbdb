import itertools

import pytest

import oracles
from rstirling import polyalg as pa
from rstirling import rings
from rstirling.combinatorics import Parameters
from rstirling.errors import DomainError, UnsupportedError
from rstirling.groebner import Ideal, buchberger, hilbert_text
from rstirling.polyalg import GREVLEX, LEX, NEGLEX, Polynomial


def P(text, n):
    return pa.parse_polynomial(text, n)


def test_variables_ideal():
    Q = buchberger([P("x1", 2), P("x2", 2)])
    assert [pa.to_text(g) for g in Q.basis] == ["x1", "x2"]
    assert Q.standard_monomials == [(0, 0)]
    assert Q.hilbert_series() == [1]


def test_two_variable_coinvariants():
    # neglex makes x2 > x1, so x1 + x2 leads with x2 and {1, x1} survives
    Q = buchberger([pa.elementary(1, 2, 2), pa.elementary(2, 2, 2)])
    assert Q.leading_terms() == [(2, 0), (0, 1)]
    assert set(Q.standard_monomials) == {(0, 0), (1, 0)}
    assert Q.dimension == 2


def test_example_ideal_dimension():
    Q = buchberger(rings.build_ideal(Parameters(4, 3, 2)).generators)
    assert Q.dimension == 30
    assert Q.hilbert_series() == [1, 4, 8, 9, 6, 2]
    assert hilbert_text(Q.hilbert_series()) == "1 + 4q + 8q^2 + 9q^3 + 6q^4 + 2q^5"


def test_hilbert_text_edge_cases():
    assert hilbert_text([1]) == "1"
    assert hilbert_text([1, 1]) == "1 + q"
    assert hilbert_text([0, 0, 3]) == "3q^2"


def test_single_power():
    Q = buchberger([P("x1^2", 1)])
    assert Q.leading_terms() == [(2,)]


def test_infinite_quotient_unsupported():
    Q = buchberger([P("x1^2", 2)])
    with pytest.raises(UnsupportedError):
        Q.standard_monomials


def test_ideal_validation():
    with pytest.raises(DomainError):
        Ideal([])
    with pytest.raises(DomainError):
        Ideal([Polynomial.zero(2)])
    with pytest.raises(DomainError):
        Ideal([P("x1", 1), P("x1", 2)])


def test_reduced_and_criterion():
    for p in Parameters.all_up_to(4):
        Q = rings.quotient(p)
        assert Q.is_reduced()
        assert Q.s_pairs_reduce_to_zero()


def test_generators_reduce_to_zero_and_standard_fixed():
    p = Parameters(5, 3, 1)
    Q = rings.quotient(p)
    for g in rings.build_ideal(p).generators:
        assert Q.normal_form(g).is_zero()
    for m in Q.standard_monomials:
        assert Q.normal_form(Polynomial.monomial(m)) == Polynomial.monomial(m)


def test_normal_form_rejects_wrong_ambient():
    Q = rings.quotient(Parameters(3, 2, 1))
    with pytest.raises(DomainError):
        Q.normal_form(P("x1", 2))


def test_other_orders_same_dimension():
    gens = rings.build_ideal(Parameters(4, 3, 1)).generators
    dims = {buchberger(gens, order).dimension for order in (NEGLEX, LEX, GREVLEX)}
    assert dims == {rings.quotient(Parameters(4, 3, 1)).dimension}


def test_staircase_for_full_coinvariants():
    for n in range(1, 5):
        Q = rings.quotient(Parameters(n, n, n))
        assert set(Q.standard_monomials) == set(itertools.product(*[range(n - i) for i in range(n)]))
        # Hilbert series is the q-factorial [n]_q!
        qfact = [1]
        for i in range(1, n + 1):
            nxt = [0] * (len(qfact) + i - 1)
            for a, c in enumerate(qfact):
                for b in range(i):
                    nxt[a + b] += c
            qfact = nxt
        assert Q.hilbert_series() == qfact


def test_hilbert_series_matches_linear_algebra():
    for p in [Parameters(3, 2, 1), Parameters(4, 3, 2), Parameters(4, 2, 0), Parameters(4, 4, 4)]:
        Q = rings.quotient(p)
        series = Q.hilbert_series()
        dims = oracles.quotient_dimensions_by_linear_algebra(
            oracles.stirling_ideal_dicts(p.n, p.k, p.r), p.n, len(series)
        )
        assert dims[: len(series)] == series
        assert dims[len(series)] == 0
        assert sum(series) == Q.dimension


def test_initial_ideal_for_full_coinvariants():
    Q = rings.quotient(Parameters(3, 3, 3))
    # complement of the staircase (2, 1, 0) is generated by x1^3, x2^2, x3
    assert sorted(Q.leading_terms()) == sorted([(3, 0, 0), (0, 2, 0), (0, 0, 1)])


def test_coordinates_of_standard_combination():
    Q = rings.quotient(Parameters(4, 3, 2))
    f = P("2*x2 - 3*x1^2", 4)
    assert Q.coordinates(f) == {(0, 1, 0, 0): 2, (2, 0, 0, 0): -3}


def test_to_text_lists_basis():
    Q = buchberger([P("x1", 2), P("x2^2", 2)])
    assert Q.to_text().splitlines() == ["x1", "x2^2"]
