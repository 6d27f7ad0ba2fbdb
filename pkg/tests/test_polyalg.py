import itertools
from fractions import Fraction

import pytest

import oracles
from rings_helpers import degree_blocks
from rstirling import combinatorics as cb
from rstirling import polyalg as pa
from rstirling.combinatorics import Parameters
from rstirling.errors import DomainError, InvariantViolation
from rstirling.intmat import determinant
from rstirling.polyalg import NEGLEX, Polynomial


def P(text, n):
    return pa.parse_polynomial(text, n)


def x(i, n):
    return Polynomial.variable(i, n)


# -- arithmetic and text ------------------------------------------------------------


def test_zero_coefficients_dropped():
    f = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert f.terms == {(1, 0): 1}
    assert (f - f).is_zero()


def test_arithmetic_basics():
    a, b = x(1, 2), x(2, 2)
    assert (a + b) ** 2 == a * a + 2 * a * b + b * b
    assert (a - b) * (a + b) == a ** 2 - b ** 2
    assert 3 - a == Polynomial.constant(3, 2) - a
    assert (a * Fraction(1, 2)).terms == {(1, 0): Fraction(1, 2)}
    assert (a * 2).scale(Fraction(1, 2)) == a


def test_ambient_mismatch():
    with pytest.raises(DomainError):
        x(1, 2) + x(1, 3)


def test_text_round_trip():
    f = P("3/2*x1^2*x3 - x2 + 5", 3)
    assert pa.parse_polynomial(pa.to_text(f), 3) == f
    assert pa.to_text(Polynomial.zero(2)) == "0"
    assert pa.to_text(Polynomial.one(2)) == "1"


def test_text_sorted_neglex_descending():
    f = x(1, 2) ** 2 + x(2, 2)
    assert pa.to_text(f) == "x2 + x1^2"


def test_with_nvars_refuses_to_drop_variables():
    f = x(3, 3)
    with pytest.raises(DomainError):
        f.with_nvars(2)
    assert x(1, 3).with_nvars(1) == x(1, 1)


def test_degree_homogeneity():
    f = P("x1^2 + x1*x2", 2)
    assert f.degree() == 2 and f.is_homogeneous()
    assert not P("x1 + 1", 2).is_homogeneous()


# -- neglex --------------------------------------------------------------------------


def test_neglex_examples():
    assert pa.neglex_cmp((0, 1), (2, 0)) == 1  # x2 > x1^2
    assert pa.neglex_cmp((1, 2), (1, 2)) == 0
    assert pa.neglex_cmp((0, 0, 0), (0, 1, 0)) == -1
    with pytest.raises(DomainError):
        pa.neglex_cmp((1,), (1, 0))


def test_neglex_decided_at_last_difference():
    for a in itertools.product(range(3), repeat=3):
        for b in itertools.product(range(3), repeat=3):
            diff = [i for i in range(3) if a[i] != b[i]]
            expected = 0 if not diff else (1 if a[diff[-1]] > b[diff[-1]] else -1)
            assert pa.neglex_cmp(a, b) == expected


def test_leading_monomial():
    assert P("x1^3 + x2", 2).leading_monomial(NEGLEX) == (0, 1)
    assert P("x1^3 + x2", 2).leading_monomial(pa.LEX) == (3, 0)


# -- symmetric functions ---------------------------------------------------------------


def test_symmetric_examples():
    assert pa.elementary(2, 3, 3) == P("x1*x2 + x1*x3 + x2*x3", 3)
    assert pa.homogeneous(2, 2, 2) == P("x1^2 + x1*x2 + x2^2", 2)
    assert pa.elementary(4, 3, 3).is_zero()
    assert pa.elementary(0, 2, 4) == 1 and pa.homogeneous(0, 2, 4) == 1
    with pytest.raises(DomainError):
        pa.elementary(1, 4, 3)
    with pytest.raises(DomainError):
        pa.homogeneous(-1, 2, 3)


def test_symmetric_against_oracle():
    for n in range(1, 6):
        for m in range(0, n + 1):
            for d in range(0, 5):
                assert pa.elementary(d, m, n).terms == oracles.elementary_dict(d, m, n)
                assert pa.homogeneous(d, m, n).terms == oracles.homogeneous_dict(d, m, n)


def test_homogeneous_recursion_identity():
    n = 6
    for i in range(2, n + 1):
        for d in range(1, 7):
            lhs = pa.homogeneous(d, i, n) - x(i, n) * pa.homogeneous(d - 1, i, n)
            assert lhs == pa.homogeneous(d, i - 1, n)


# -- divided differences ---------------------------------------------------------------------


def test_divided_difference_examples():
    assert pa.divided_difference(1, x(1, 2)) == 1
    assert pa.divided_difference(1, P("x1^2*x2", 3)) == P("x1*x2", 3)
    assert pa.divided_difference(2, pa.elementary(2, 3, 3)).is_zero()
    with pytest.raises(DomainError):
        pa.divided_difference(3, x(1, 3))


def test_divided_difference_matches_monomial_formula():
    for m in itertools.product(range(4), repeat=3):
        f = Polynomial.monomial(m, 3)
        for i in (1, 2):
            assert pa.divided_difference(i, f).terms == oracles.divided_difference_dict(i, {m: 3})


def test_divided_difference_rejects_rational_function(monkeypatch):
    # a swap that is not the transposition leaves a numerator not divisible by x1 - x2
    monkeypatch.setattr(Polynomial, "swap_variables", lambda self, i: Polynomial.zero(self.nvars))
    with pytest.raises(InvariantViolation):
        pa.divided_difference(1, x(1, 2) + 1)


def test_permute_variables():
    f = P("x1^2*x3", 3)
    assert pa.permute_variables((1, 2, 3), f) == f
    assert pa.permute_variables((2, 1), x(1, 2)) == x(2, 2)
    # x_i -> x_{w(i)}: x1 -> x3, x3 -> x2
    assert pa.permute_variables((3, 1, 2), f) == P("x3^2*x2", 3)
    # ambient extends when the permutation is larger
    assert pa.permute_variables((2, 3, 1), x(1, 1)) == x(2, 3)


def test_permute_variables_sigma_example():
    sig = cb.sigma_perm(cb.parse_word("242141"))  # 132546
    mono = Polynomial.monomial((1, 2, 3, 4, 5, 6))
    got = pa.permute_variables(sig, mono)
    expected = [0] * 6
    for i, e in enumerate((1, 2, 3, 4, 5, 6)):
        expected[sig[i] - 1] = e
    assert got == Polynomial.monomial(tuple(expected))


# -- Schubert polynomials -------------------------------------------------------------------


def test_schubert_examples():
    assert pa.to_text(pa.schubert((3, 2, 1))) == "x1^2*x2"
    assert pa.schubert((1, 2, 3)) == 1
    assert pa.schubert((1, 3, 2)) == P("x1 + x2", 3)


def test_schubert_against_transition_oracle():
    for m in range(1, 6):
        for w in itertools.permutations(range(1, m + 1)):
            expected = {e[:m]: c for e, c in oracles.schubert_by_transition(w).items()}
            assert pa.schubert(w).terms == expected


def test_schubert_path_independent():
    for w in itertools.permutations(range(1, 6)):
        assert pa.schubert(w, path="first") == pa.schubert(w, path="last")
    with pytest.raises(DomainError):
        pa.schubert((1, 2), path="middle")


def test_schubert_degree_is_length():
    for w in itertools.permutations(range(1, 5)):
        assert pa.schubert(w).degree() == cb.length(w)


def test_schubert_cache_resize():
    pa.set_schubert_cache_size(5)
    try:
        assert pa.schubert((4, 3, 2, 1, 5)) == pa.schubert((4, 3, 2, 1, 5), path="last")
    finally:
        pa.set_schubert_cache_size(pa.DEFAULT_SCHUBERT_CACHE)
    with pytest.raises(DomainError):
        pa.set_schubert_cache_size(0)


# -- word Schubert polynomials ----------------------------------------------------------------


def test_word_schubert_permutation_word_is_classical():
    for w in itertools.permutations(range(1, 5)):
        assert pa.word_schubert(w, 4) == pa.schubert(w)


def test_word_schubert_accepts_parameters():
    w = (1, 2, 4, 5, 5, 5, 5)
    assert pa.word_schubert(w, Parameters(7, 5, 0)) == pa.word_schubert(w, 5)


def test_word_schubert_generator_example():
    # w^3 in [5]^7; its Schubert polynomial is e_{7-3+1} = e_5 in 7 variables
    w = cb.parse_word("1245555")
    assert pa.word_schubert(w, 5) == pa.elementary(5, 7, 7)


def test_word_schubert_integral_and_local():
    for n in range(1, 6):
        for k in range(1, n + 1):
            for w in itertools.product(range(1, k + 1), repeat=n):
                f = pa.word_schubert(w, k)
                assert f.nvars == n
                assert f.is_integral()


def test_word_schubert_rejects_letters_out_of_range():
    with pytest.raises(DomainError):
        pa.word_schubert((1, 3), 2)


def test_inverse_transport_breaks_unimodularity():
    # the alternative action x_i -> x_{sigma^{-1}(i)} spans a proper sublattice
    p = Parameters(4, 2, 0)
    blocks = degree_blocks(p, lambda w: pa._word_schubert(w, p.k, transport=False))
    dets = [determinant(b) for b in blocks.values()]
    assert any(abs(d) != 1 for d in dets)


# -- key polynomials ------------------------------------------------------------------------


def test_demazure_dominant_is_monomial():
    assert pa.demazure((3, 1, 1, 0)) == Polynomial.monomial((3, 1, 1, 0))
    assert pa.demazure((0, 0, 0, 0)) == 1


def test_demazure_example_leading_term():
    gamma = cb.reverse_skip({3, 4}, 4)
    assert gamma == (3, 3, 0, 0)
    f = pa.demazure(gamma)
    assert f.leading_monomial(NEGLEX) == gamma and f.terms[gamma] == 1


def test_demazure_against_kohnert():
    for n in range(1, 5):
        for gamma in itertools.product(range(4), repeat=n):
            if sum(gamma) <= 6:
                assert pa.demazure(gamma).terms == oracles.key_polynomial_by_kohnert(gamma)


def test_demazure_positive():
    for n in range(1, 6):
        for gamma in itertools.product(range(7), repeat=n):
            if sum(gamma) <= 6:
                assert all(isinstance(c, int) and c > 0 for c in pa.demazure(gamma).terms.values())


def test_demazure_reverse_skip_leading_form():
    for n in range(1, 7):
        for k in range(1, n + 1):
            for S in itertools.combinations(range(1, n + 1), n - k + 1):
                gamma = cb.reverse_skip(S, n)
                f = pa.demazure(gamma)
                assert f.leading_monomial(NEGLEX) == gamma
                assert f.terms[gamma] == 1


def test_demazure_rejects_negative():
    with pytest.raises(DomainError):
        pa.demazure((1, -1))
