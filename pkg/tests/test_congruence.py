from fractions import Fraction
import itertools

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qcong.arith import RatFun, UniPoly, cyclotomic, poly_divrem, q_integer
from qcong.congruence import (
    ModFactor,
    Modulus,
    ParamRoot,
    Status,
    combine_status,
    congruent,
    congruent_zero,
    crt_weight_check,
    cyclo_mod,
    degree_bound,
    head_modulus,
    lcm_identity_check,
    local_check,
    negate,
    parametric_congruent_zero,
    point_stream,
    poly_crt,
    ratfun_congruent_zero,
    ratfun_residue,
)
from qcong.qfactor import (
    ONE,
    cf_div,
    cf_mul,
    cf_pow,
    const,
    cyclo_factor,
    mon,
    one_minus,
    q_integer_factor,
    qpow,
    qpow_factor,
)
from qcong.qseries import A, B, Q, rhs_plus_param_terms, single_closed_form_plus, term_plus

import _oracle as orc
from _oracle import q

PHI5 = RatFun(cyclotomic(5))


def P(*coeffs):
    return UniPoly(coeffs)


# --- status bookkeeping ---------------------------------------------------------------------

def test_combine_status_fail_dominates():
    assert combine_status([]) is Status.PASS
    assert combine_status([Status.PASS, Status.ILL_POSED]) is Status.ILL_POSED
    assert combine_status([Status.ILL_POSED, Status.FAIL, Status.PASS]) is Status.FAIL


def test_modulus_labels():
    assert str(head_modulus(7)) == "[7]·Φ₇(q)²"
    assert str(Modulus.of(cyclo_mod(13, 3))) == "Φ₁₃(q)³"
    roots = Modulus.of(ModFactor("atom", ParamRoot("a", -5)), ModFactor("atom", ParamRoot("b", 5)))
    assert str(roots) == "(1 - a·q^5)·(b - q^5)"
    assert str(Modulus.of()) == "1"


def test_modulus_merges_cyclotomic_exponents():
    assert head_modulus(9).cyclotomic_exponents() == {3: 1, 9: 3}
    assert head_modulus(9).as_poly() == q_integer(9) * cyclotomic(9) ** 2
    with pytest.raises(ValueError):
        Modulus.of(ModFactor("atom", ParamRoot("a", 3))).as_poly()


def test_param_root_specialisation():
    assert ParamRoot("a", -3).poly(Fraction(2)) == P(1, 0, 0, -2)
    assert ParamRoot("b", 2).poly(Fraction(5)) == P(5, 0, -1)


# --- rational functions ----------------------------------------------------------------------

def test_ratfun_examples():
    m2 = Modulus.of(cyclo_mod(5, 2))
    x = PHI5 ** 2 * RatFun(P(1, 1)) / RatFun(P(1, 0, 1))
    assert ratfun_congruent_zero(x, m2).status is Status.PASS
    assert ratfun_congruent_zero(PHI5, m2).status is Status.FAIL
    assert ratfun_congruent_zero(RatFun(P(1)) / PHI5, Modulus.of(cyclo_mod(5))).status is Status.ILL_POSED
    assert ratfun_congruent_zero(RatFun(UniPoly()), m2).status is Status.PASS


coprime_pairs = [(cyclotomic(5) ** 2, P(1, 0, 1)), (cyclotomic(7), cyclotomic(3) ** 2),
                 (P(2, 1), P(-3, 0, 1)), (cyclotomic(9), P(1, 1) ** 2)]
small_polys = st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), max_size=7).map(UniPoly)


@settings(max_examples=80)
@given(st.sampled_from(coprime_pairs), small_polys, small_polys, st.sampled_from([0, 1, 2]))
def test_congruence_over_coprime_product_is_the_conjunction(pair, x, y, mode):
    M1, M2 = pair
    # bias toward multiples of one factor so both outcomes occur
    num = [x, x * M1, x * M1 * M2][mode] + y * (M2 if mode == 1 else M1 * M2)
    val = RatFun(num, P(3, 1))
    whole = ratfun_congruent_zero(val, Modulus.of(ModFactor("poly", M1 * M2))).status
    parts = [ratfun_congruent_zero(val, Modulus.of(ModFactor("poly", M))).status for M in (M1, M2)]
    assert (whole is Status.PASS) == all(s is Status.PASS for s in parts)


def test_poly_crt_example():
    M1, M2 = P(-1, 1), P(1, 1)
    R = poly_crt(P(1), M1, P(0), M2)
    assert R == P(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        poly_crt(P(1), M1, P(0), M1 * M2)


@settings(max_examples=80)
@given(st.sampled_from(coprime_pairs), small_polys, small_polys)
def test_poly_crt_reduces_to_both_residues(pair, r1, r2):
    M1, M2 = pair
    r1, r2 = r1 % M1, r2 % M2
    R = poly_crt(r1, M1, r2, M2)
    assert R % M1 == r1 and R % M2 == r2
    assert R.degree < (M1 * M2).degree


def test_ratfun_residue_inverts_denominator():
    M = cyclotomic(7) ** 2
    x = RatFun(P(1, 2, 3), P(1, 1))
    r = ratfun_residue(x, M)
    assert poly_divrem(r * P(1, 1) - P(1, 2, 3), M)[1].is_zero()


# --- the local engine against sympy ------------------------------------------------------------

def _sym_term(recipe):
    coeff, factors = recipe
    cf, expr = const(coeff), sp.Rational(coeff.numerator, coeff.denominator)
    for kind, arg, e in factors:
        if kind == "cyclo":
            f, s = cyclo_factor(arg), orc.sym_phi(arg)
        elif kind == "qpow":
            f, s = qpow_factor(arg), 1 - q ** arg
        elif kind == "qint":
            f, s = q_integer_factor(arg), orc.sym_qint(arg)
        elif kind == "shift":
            f, s = qpow(arg), q ** arg
        else:
            c, ex = arg
            f, s = one_minus(mon(c, ex)), 1 - sp.Rational(c.numerator, c.denominator) * q ** ex
        cf, expr = cf_mul(cf, cf_pow(f, e)), expr * s ** e
    return cf, expr


factor_recipe = st.one_of(
    st.tuples(st.just("cyclo"), st.sampled_from([1, 2, 3, 5, 10]), st.integers(-1, 3)),
    st.tuples(st.just("qpow"), st.sampled_from([-10, -5, -3, 2, 5, 15]), st.integers(-1, 2)),
    st.tuples(st.just("qint"), st.sampled_from([5, 7, 10]), st.integers(-1, 2)),
    st.tuples(st.just("shift"), st.integers(-4, 4), st.just(1)),
    st.tuples(st.just("binom"), st.tuples(st.sampled_from([Fraction(2), Fraction(-1, 3)]),
                                          st.integers(1, 4)), st.integers(-1, 1)),
)
term_recipe = st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=3).filter(bool),
                      st.lists(factor_recipe, max_size=4))


@settings(max_examples=120, deadline=None)
@given(st.lists(term_recipe, min_size=1, max_size=4), st.integers(1, 4))
def test_local_check_matches_sympy(recipes, m):
    built = [_sym_term(s) for s in recipes]
    terms = [cf for cf, _ in built]
    expr = sum(s for _, s in built)
    ours = local_check(terms, 5, m).status.value
    assert ours == orc.sym_status(expr, orc.sym_phi(5) ** m)


@settings(max_examples=40, deadline=None)
@given(st.lists(term_recipe, min_size=1, max_size=3))
def test_cancelling_pairs_always_pass(recipes):
    terms = [_sym_term(s)[0] for s in recipes]
    terms += [cf_mul(const(-1), t) for t in terms]
    assert local_check(terms, 5, 6).status is Status.PASS


def test_local_check_valuation():
    r = local_check([cyclo_factor(7, 2), cf_mul(cyclo_factor(7, 3), qpow(1))], 7, 5)
    assert r.status is Status.FAIL and r.valuation == 2
    assert local_check([cf_div(ONE, cyclo_factor(7))], 7, 1).status is Status.ILL_POSED
    with pytest.raises(ValueError):
        local_check([one_minus(A * Q(1))], 7, 1)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_small_sums_match_sympy(n):
    terms = [term_plus(k) for k in range(n)]
    for m in (1, 2, 3, 4):
        assert local_check(terms, n, m).status.value == orc.sym_status(orc.sym_plus_sum(n - 1),
                                                                       orc.sym_phi(n) ** m)


def test_congruent_with_poly_factor():
    lhs = [cf_mul(cyclo_factor(5), one_minus(mon(Fraction(2), 1)))]
    mod = Modulus.of(cyclo_mod(5), ModFactor("poly", P(1, -2)))
    assert congruent_zero(lhs, mod).status is Status.PASS
    assert congruent(lhs, [ONE], mod).status is Status.FAIL


# --- the parametric engine ----------------------------------------------------------------------

def test_point_streams_are_disjoint_primes():
    a = list(itertools.islice(point_stream("a"), 5))
    b = list(itertools.islice(point_stream("b"), 5))
    assert a == [2, 5, 11, 17, 23] and b == [3, 7, 13, 19, 29]
    assert list(itertools.islice(point_stream("a", seed=1), 3)) == [3, 7, 13]
    assert list(itertools.islice(point_stream("b", seed=4), 3)) == list(itertools.islice(point_stream("b", 4), 3))


def test_degree_bound_counts_param_span():
    t = cf_div(one_minus(A * Q(1)), one_minus(A * Q(3)))
    assert degree_bound([t, ONE], "a") == 1 + 2
    assert degree_bound([t], "b") == 2


def _roots(tn):
    return Modulus.of(ModFactor("atom", ParamRoot("a", -tn)), ModFactor("atom", ParamRoot("a", tn)))


def _plus_difference(n):
    # the 8k+1 sum with parameters minus its single closed form, which agree at the a-roots
    M = (n - 1) // 4
    terms = [term_plus(k, parametric=True) for k in range(M + 1)]
    return terms + negate([single_closed_form_plus(n, B)])


@pytest.mark.parametrize("n", [1, 5, 9])
def test_parametric_engine_at_the_a_roots(n):
    v = parametric_congruent_zero(_plus_difference(n), _roots(n), "plus-param", {"n": n})
    assert v.status is Status.PASS
    assert len(v.parts) == 2


def test_parametric_engine_uses_more_points_than_the_bound():
    diff = _plus_difference(5)
    bound = degree_bound(diff, "b")
    v = parametric_congruent_zero(diff, _roots(5))
    for part in v.parts:
        used = len(part.notes) and int(part.notes[0].split(", ")[1].split()[0])
        assert used == bound + 1


def test_parametric_engine_detects_a_perturbation():
    bad = _plus_difference(5) + [cf_mul(const(Fraction(1, 1000)), one_minus(B * Q(1)))]
    v = parametric_congruent_zero(bad, _roots(5), "plus-param", {"n": 5})
    assert v.status is Status.FAIL
    assert v.failures()
    # the combined closed form is a different function, so it is not a-root congruent on its own
    wrong = [term_plus(k, parametric=True) for k in range(2)] + negate(rhs_plus_param_terms(5, A, B, 1))
    assert parametric_congruent_zero(wrong, Modulus.of(cyclo_mod(5, 3))).status is Status.FAIL


def test_parametric_engine_reports_identically_vanishing_denominator():
    t = cf_div(ONE, one_minus(A * Q(-3)))
    v = parametric_congruent_zero([t], Modulus.of(ModFactor("atom", ParamRoot("a", 3))))
    assert v.status is Status.ILL_POSED


def test_parametric_cyclotomic_grid():
    # (1 - a q^5)(1 - q^5) / (1 - q) carries Phi_5 for every a
    t = cf_mul(one_minus(A * Q(5)), q_integer_factor(5))
    assert parametric_congruent_zero([t], Modulus.of(cyclo_mod(5))).status is Status.PASS
    assert parametric_congruent_zero([t], Modulus.of(cyclo_mod(5, 2))).status is Status.FAIL


def test_parametric_witness_is_reproducible():
    t = cf_mul(one_minus(A * Q(5)), q_integer_factor(5))
    mod = Modulus.of(cyclo_mod(5), ModFactor("atom", ParamRoot("a", -5)))
    w1 = parametric_congruent_zero([t], mod, seed=2).witness
    w2 = parametric_congruent_zero([t], mod, seed=2).witness
    w3 = parametric_congruent_zero([t], mod, seed=3).witness
    assert w1 == w2 != w3


# --- structural checks -----------------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 9, 15])
def test_lcm_identity(n):
    v = lcm_identity_check(n)
    assert v.status is Status.PASS
    ref = sp.lcm(orc.sym_phi(n) ** 3, orc.sym_qint(n))
    assert sp.expand(ref - orc.sym_head_modulus(n)) == 0


def test_lcm_identity_preconditions():
    with pytest.raises(ValueError):
        lcm_identity_check(1)
    with pytest.raises(ValueError):
        lcm_identity_check(8)


def test_crt_weight_check_small():
    v = crt_weight_check(5, count=2)
    assert v.status is Status.PASS
    assert v.modulus.startswith("(1 - a·q^5)")
