from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcong.arith import RatFun, UniPoly, cyclotomic, poly_gcd, q_integer
from qcong.qfactor import (ONE, cf_mul, cyclo_multiplicity, evaluate, mon, numeric, sum_numeric,
                           sum_to_ratfun)
from qcong.qseries import (
    A,
    B,
    ClassicalKind,
    IdentityKind,
    A_n,
    A_n_factored,
    A_n_via_T,
    Q,
    T_factor,
    T_two_summand,
    classical_sum,
    crt_weight,
    identity_corpus,
    mu_closed,
    mu_terms,
    nu_closed,
    pairing_m,
    pfaff_sides,
    phi43_T_sides,
    qint_vanishing_m,
    rhs_minus,
    rhs_minus_param,
    rhs_plus,
    rhs_plus_param,
    term_minus,
    term_plus,
    theorem_t,
    watson_sides,
)

import _oracle as orc

QS = [Fraction(2), Fraction(-3, 7), Fraction(5, 2)]


# --- case tables --------------------------------------------------------------------------

@pytest.mark.parametrize("n,family,expected", [
    (5, "plus", (1, 1)), (7, "plus", (3, 5)), (13, "plus", (1, 3)), (1, "plus", (1, 0)),
    (7, "minus", (1, 2)), (5, "minus", (3, 4)), (11, "minus", (1, 3)), (9, "minus", (3, 7)),
])
def test_case_tables(n, family, expected):
    assert theorem_t(n, family) == expected


def test_vanishing_and_pairing_lengths():
    assert qint_vanishing_m(5, 1) == 1
    assert qint_vanishing_m(7, 1) == 5
    assert qint_vanishing_m(5, -1) == 4
    assert pairing_m(5, 4, 1) == 1
    assert pairing_m(5, 4, -1) == 4


# --- summands against factor-by-factor evaluation -----------------------------------------------

def test_first_summands():
    assert term_plus(0) == ONE
    assert numeric(term_minus(0), 2) == Fraction(-1, 2)


@pytest.mark.parametrize("k", range(7))
@pytest.mark.parametrize("qv", QS)
def test_summands_match_direct_evaluation(k, qv):
    assert numeric(term_plus(k), qv) == orc.plus_summand_sixth(k, qv)
    assert numeric(term_plus(k, form="fifth"), qv) == orc.plus_summand(k, qv)
    assert numeric(term_minus(k), qv) == orc.minus_summand_sixth(k, qv)
    assert numeric(term_minus(k, form="fifth"), qv) == orc.minus_summand(k, qv)


@pytest.mark.parametrize("k", range(6))
def test_summand_forms_agree_exactly(k):
    assert term_plus(k) == term_plus(k, form="fifth")
    assert term_minus(k) == term_minus(k, form="fifth")


@settings(max_examples=60)
@given(st.integers(0, 5),
       st.fractions(min_value=-30, max_value=30, max_denominator=7).filter(lambda x: abs(x) not in (0, 1)),
       st.fractions(min_value=-30, max_value=30, max_denominator=7).filter(lambda x: abs(x) not in (0, 1)))
def test_parametric_summands_match_direct_evaluation(k, a, b):
    qv = Fraction(3, 2)
    try:
        ref = orc.plus_summand(k, qv, a, b)
    except ZeroDivisionError:
        ref = None
    if ref is not None:
        assert numeric(term_plus(k, parametric=True), qv, a, b) == ref
    try:
        ref = orc.minus_summand(k, qv, a, b)
    except ZeroDivisionError:
        return
    assert numeric(term_minus(k, parametric=True), qv, a, b) == ref


@pytest.mark.parametrize("k", range(6))
def test_parametric_reduces_at_a_b_one(k):
    assert evaluate(term_plus(k, parametric=True), 1, 1) == term_plus(k)
    assert evaluate(term_minus(k, parametric=True), 1, 1) == term_minus(k)


# --- closed forms ------------------------------------------------------------------------

def test_rhs_plus_examples():
    qi5 = RatFun(q_integer(5))
    assert rhs_plus(5) == qi5 / RatFun(UniPoly([1, 0, 1])) ** 2
    assert rhs_plus(3).is_zero()
    assert rhs_plus(1) == RatFun(UniPoly([1]))


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
@pytest.mark.parametrize("qv", QS)
def test_A_n_matches_displayed_formula(n, qv):
    assert A_n(n)(qv) == orc.A_n_direct(n, qv)


def test_A_n_preconditions_and_multiplicity():
    with pytest.raises(ValueError):
        A_n(3)
    assert cyclo_multiplicity(A_n_factored(7), 7) == 1
    # finite at q = 2 for n = 5 as well
    assert A_n(5)(2) == orc.A_n_direct(5, 2)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 15, 19])
def test_A_n_equals_T_form(n):
    assert A_n(n) == sum_to_ratfun([A_n_via_T(n)])


def test_rhs_minus_examples():
    assert rhs_minus(5).is_zero()
    r11 = rhs_minus(11)
    assert poly_gcd(r11.den, cyclotomic(11)).degree == 0
    x = RatFun(UniPoly([1, 0, -1])) * RatFun(UniPoly([1, 0, 0, 0, 0, 0, -1]))
    y = RatFun(UniPoly([1, 0, 0, 0, -1])) * RatFun(UniPoly([1, 0, 0, 0, 0, 0, 0, 0, -1]))
    assert rhs_minus(7) == A_n(7) * (x / y) ** 2


def test_T_two_summand_is_undefined_at_three():
    with pytest.raises(ZeroDivisionError):
        T_two_summand(3, 1)


@pytest.mark.parametrize("tn", [5, 7, 9, 11, 15])
@pytest.mark.parametrize("bv", [Fraction(2), Fraction(-5, 3)])
def test_T_reduced_form_matches_two_summands(tn, bv):
    for qv in (Fraction(3), Fraction(2, 7)):
        two = sum_numeric(T_two_summand(tn, B), qv, b=bv)
        assert numeric(T_factor(tn, B), qv, b=bv) == two
    assert numeric(evaluate(T_factor(tn, B), b=1), 3) == numeric(T_factor(tn, 1), 3)


def test_T_direct_substitution():
    qv, b, tn = Fraction(3), Fraction(2), 7
    first = (1 - qv) * (qv ** -2 - qv ** (-1 - tn)) / ((1 - qv ** (-2 - tn)) * (qv ** -2 - qv ** (1 - tn)))
    second = ((qv ** -tn - qv ** (-2 - tn)) * (qv ** -2 - qv ** -tn) * (b / qv - qv) * (1 / (b * qv) - qv)
              / ((1 - qv ** (-2 - tn)) * (b / qv - qv ** -tn) * (1 / (b * qv) - qv ** -tn)
                 * (qv ** -2 - qv ** (1 - tn))))
    assert numeric(T_factor(tn, b), qv) == first + second


def test_crt_weight_is_one_at_the_a_roots():
    for tn in (5, 7, 21):
        for root in (mon(1, tn), mon(1, -tn)):
            w = evaluate(crt_weight(A, B, tn), a=root)
            for qv, bv in ((Fraction(2), Fraction(3)), (Fraction(-1, 3), Fraction(7, 2))):
                assert numeric(w, qv, b=bv) == 1
            assert numeric(evaluate(crt_weight(B, A, tn), a=root), 2, b=3) == 0


def test_parametric_rhs_examples():
    assert rhs_plus_param(1, 1, 0, 2, 3) == RatFun(UniPoly([1]))
    r = rhs_plus_param(5, 1, 1, 2, 3)
    assert not r.den.is_zero()
    assert not rhs_minus_param(7, 1, 2, 2, 3).den.is_zero()
    with pytest.raises(ZeroDivisionError):
        rhs_plus_param(5, 1, 1, 2, 2)


def test_mu_nu_finite():
    assert mu_closed(5, 2)(3) == sum_numeric(mu_terms(5, B), 3, b=2)
    assert nu_closed(7, 3)(2) is not None
    with pytest.raises(ZeroDivisionError):
        mu_closed(5, 1)


# --- identities ------------------------------------------------------------------------------

def test_watson_examples():
    assert watson_sides(2, 3, 5, 7, 11, 0).holds()
    assert watson_sides(4, 2, 3, 5, 7, 1).holds()
    tn, beta = 13, 2
    assert watson_sides(Q(1), Q(2), Q(1 + tn), Q(1) * beta, Q(1) / beta, 3, step=4).holds()


def test_watson_numeric_mode():
    w = watson_sides(4, 2, 3, 5, 7, 3, q_val=Fraction(1, 3))
    assert w.lhs == w.rhs


def test_pfaff_examples():
    assert pfaff_sides(2, 3, 5, 0).holds()
    assert pfaff_sides(2, 3, 5, 1).holds()
    assert pfaff_sides(2, 3, 7, 2).holds()


def test_phi43_examples():
    assert phi43_T_sides(3, 1, 2).holds()
    assert phi43_T_sides(7, 1, 3).holds()
    assert phi43_T_sides(5, 3, 2).holds()
    with pytest.raises(ValueError):
        phi43_T_sides(5, 1, 2)


def test_identity_corpus_shapes():
    assert len(identity_corpus(IdentityKind.PFAFF)) == 70
    assert len(identity_corpus("phi43t")) == 21
    a = [i.parameters for i in identity_corpus("pfaff", seed=3)]
    b = [i.parameters for i in identity_corpus("pfaff", seed=3)]
    assert a == b


def test_wrong_identity_is_detected():
    w = watson_sides(4, 2, 3, 5, 7, 2)
    w.rhs_terms = [cf_mul(w.rhs_terms[0], ONE)] + w.rhs_terms[2:]
    assert not w.holds()


# --- classical sums -----------------------------------------------------------------------

@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_van_hamme_against_independent_sum(p):
    assert classical_sum(ClassicalKind.VAN_HAMME, p) == orc.van_hamme_lhs(p)


def test_corollary_closed_forms():
    # p = 5: p (1/2)_1^2 / 1!^2
    assert classical_sum(ClassicalKind.PLUS_RHS, 5) == Fraction(5, 4)
    assert classical_sum(ClassicalKind.PLUS_RHS, 7) == 0
    assert classical_sum(ClassicalKind.MINUS_RHS, 13) == 0
    # p = 7: 5p(p-3)(1/2)_2^2 / ((7p-3) 2!^2)
    assert classical_sum(ClassicalKind.MINUS_RHS, 7) == Fraction(5 * 7 * 4) * Fraction(3, 4) ** 2 / (46 * 4)
    with pytest.raises(ValueError):
        classical_sum(ClassicalKind.MINUS_LHS, 3)


def test_corollary_sums_against_independent_terms():
    p = 7
    lhs = Fraction(0)
    for k in range(p):
        lhs += (8 * k + 1) * orc.rf(Fraction(1, 4), k) ** 5 * orc.rf(Fraction(1, 2), k) / (
            orc.rf(Fraction(3, 4), k) * orc.rf(Fraction(1), k) ** 5)
    assert classical_sum(ClassicalKind.PLUS_LHS, p) == lhs
