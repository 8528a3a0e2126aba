import json

import pytest
import sympy as sp

from qcong.congruence import Status
from qcong.verify import (
    TARGETS,
    conjecture_threshold,
    explore_conjecture,
    half_sum_rhs,
    verify_combined,
    verify_corollary,
    verify_crt_weight,
    verify_half_sum,
    verify_lcm,
    verify_minus_a_limit,
    verify_minus_param,
    verify_minus_sum,
    verify_pairing,
    verify_plus_a_limit,
    verify_plus_param,
    verify_plus_sum,
    verify_qint_vanishing,
    verify_reflection,
    verify_van_hamme,
)

import _oracle as orc
from _oracle import q


def _check(v, check):
    return next(p for p in v.parts if p.instance.get("check", "").startswith(check))


# --- the 8k+1 and 8k-1 sums --------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11])
def test_plus_sum_passes(n):
    v = verify_plus_sum(n)
    assert v.status is Status.PASS, v.failures()
    assert v.modulus == f"[{n}]·Φ{str(n).translate(str.maketrans('0123456789', '₀₁₂₃₄₅₆₇₈₉'))}(q)²"


@pytest.mark.parametrize("n", [3, 5])
def test_plus_sum_agrees_with_sympy(n):
    diff = orc.sym_plus_sum(n - 1) - orc.sym_rhs_plus(n)
    assert orc.sym_status(diff, orc.sym_head_modulus(n)) == "pass"
    # and the oracle is sharp enough to reject a wrong right-hand side
    assert orc.sym_status(diff + orc.sym_qint(n), orc.sym_head_modulus(n)) == "fail"
    assert verify_plus_sum(n).status is Status.PASS


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_minus_sum_passes(n):
    v = verify_minus_sum(n)
    assert v.status is Status.PASS, v.failures()


def test_minus_sum_notes_rational_A_n():
    assert any("rational function" in note for note in verify_minus_sum(7).notes)
    assert _check(verify_minus_sum(7), "A_n equals").passed


def test_preconditions():
    for bad in (4, 0, -3):
        with pytest.raises(ValueError):
            verify_plus_sum(bad)
    with pytest.raises(ValueError):
        verify_minus_sum(3)
    with pytest.raises(ValueError):
        verify_corollary(2, 3)
    with pytest.raises(ValueError):
        verify_corollary(1, 9)
    with pytest.raises(ValueError):
        verify_lcm(1)


@pytest.mark.parametrize("n,M", [(5, 1), (9, 2), (13, 3), (7, 5)])
def test_tail_multiplicity_starts_after_M(n, M):
    tail = _check(verify_plus_sum(n), "tail summands")
    assert tail.passed
    # at k = M itself the summand carries no factor Phi_n
    assert f"multiplicity at k = M = {M} is 0" in tail.notes


def test_headline_failure_is_reported_with_a_witness():
    v = verify_plus_sum(5)
    assert len(v.witness) == 64
    assert v.witness == verify_plus_sum(5).witness
    assert v.witness != verify_plus_sum(9).witness
    json.dumps(v.to_dict())


# --- parametric forms --------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3, 5])
def test_plus_param(n):
    v = verify_plus_param(n)
    assert v.status is Status.PASS, v.failures()
    assert "(1 - a·q^" in v.modulus and "(b - q^" in v.modulus


@pytest.mark.parametrize("n", [5, 7])
def test_minus_param(n):
    assert verify_minus_param(n).status is Status.PASS


@pytest.mark.parametrize("n", [3, 5])
def test_a_limits(n):
    assert verify_plus_a_limit(n).status is Status.PASS
    assert verify_minus_a_limit(n + 2).status is Status.PASS


def test_param_seed_changes_points_not_verdict():
    v0, v1 = verify_plus_param(5, seed=0), verify_plus_param(5, seed=1)
    assert v0.status is v1.status is Status.PASS
    assert v0.witness != v1.witness


# --- auxiliary congruences ----------------------------------------------------------------------

@pytest.mark.parametrize("n,d,m,r,k", [(5, 4, 1, 1, 0), (5, 4, 1, 1, 1), (7, 4, 5, 1, 2),
                                       (7, 2, 3, 1, 3), (9, 4, 2, 1, 1), (11, 3, 3, 2, 0)])
def test_reflection(n, d, m, r, k):
    assert verify_reflection(n, d, m, r, k, a_val=3).status is Status.PASS


def test_reflection_preconditions():
    with pytest.raises(ValueError):
        verify_reflection(5, 4, 2, 1, 0)
    with pytest.raises(ValueError):
        verify_reflection(5, 4, 1, 1, 2)


@pytest.mark.parametrize("n,d,r", [(5, 4, 1), (5, 4, -1), (7, 4, 1), (7, 4, -1), (9, 4, 1), (7, 3, 1)])
def test_pairing_admissible_cases(n, d, r):
    v = verify_pairing(n, d, r, a_val=3, b_val=5)
    assert v.status is Status.PASS, v.failures()


def test_pairing_note_marks_an_unavailable_cancellation_even_when_it_passes():
    # (q;q^4)_4 contains 1 - q^5, yet the n=5, d=4, r=-1 sum still vanishes
    v = verify_pairing(5, 4, -1)
    assert v.status is Status.PASS and v.notes
    assert not verify_pairing(5, 4, 1).notes


def test_pairing_counterexample_is_flagged():
    v = verify_pairing(5, 3, 1)
    assert v.status is Status.FAIL
    assert any("1 - q^5" in note for note in v.notes)


def test_pairing_counterexample_against_sympy():
    # n=5, d=3, r=1, m=3: the sum is nonzero modulo Phi_5 at a=2, b=3, and well defined there
    a, b = sp.Integer(2), sp.Integer(3)
    total = 0
    for k in range(4):
        num = 1
        for x in (q, a * q, q / a, b * q, q / b, q ** 2):
            num *= orc.sym_poch(x, 3, k)
        den = 1
        for x in (a * q ** 3, q ** 3 / a, q ** 3 / b, q ** 3, b * q ** 3, q ** 2):
            den *= orc.sym_poch(x, 3, k)
        total += orc.sym_qint(6 * k + 1) * num / den * q ** (3 * k)
    assert orc.sym_status(total, orc.sym_phi(5)) == "fail"
    assert verify_pairing(5, 3, 1, a_val=2, b_val=3).parts[1].status is Status.FAIL


def test_pairing_ill_posed_case():
    v = verify_pairing(5, 3, -1)
    assert v.status is Status.ILL_POSED


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11, 15, 21])
@pytest.mark.parametrize("r", [1, -1])
def test_qint_vanishing(n, r):
    assert verify_qint_vanishing(n, r).status is Status.PASS


# --- q = 1 corollaries ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_corollaries(p):
    for which in (1, 2):
        v = verify_corollary(which, p)
        assert v.status is Status.PASS
        assert v.modulus == f"{p}^3"
        assert any(note.startswith(f"v_{p}(LHS - RHS) = ") for note in v.notes)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_van_hamme(p):
    v = verify_van_hamme(p)
    assert v.status is Status.PASS
    assert orc.vp(orc.van_hamme_lhs(p) - p, p) >= 3


def test_conjecture_report():
    rep = explore_conjecture(5, 1)
    assert rep.threshold == conjecture_threshold(5, 1) == 4
    assert conjecture_threshold(7, 2) == 5
    assert rep.line().startswith("p=5 r=1 valuation=")
    assert set(rep.to_dict()) == {"p", "r", "valuation", "threshold", "meets"}
    with pytest.raises(ValueError):
        explore_conjecture(3, 9)
    with pytest.raises(ValueError):
        explore_conjecture(4, 1)


# --- half sum, combined, structure --------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_half_sum(n):
    assert verify_half_sum(n).status is Status.PASS
    if n % 4 == 3:
        assert half_sum_rhs(n) == []
        rhs = sp.Integer(0)
    else:
        M = (n - 1) // 4
        rhs = orc.sym_poch(q ** 2, 4, M) ** 2 / orc.sym_poch(q ** 4, 4, M) ** 2 * q ** ((n - 1) // 2)
    assert orc.sym_status(orc.sym_half_sum(n - 1) - rhs, orc.sym_phi(n) ** 2) == "pass"


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_combined(n):
    assert verify_combined(n).status is Status.PASS


@pytest.mark.parametrize("n", [3, 5, 21, 51])
def test_lcm(n):
    assert verify_lcm(n).status is Status.PASS


def test_crt_weight():
    assert verify_crt_weight(5).status is Status.PASS


def test_target_table_shapes():
    assert len(TARGETS) == 16
    for name, (fn, arity, seeded) in TARGETS.items():
        assert callable(fn) and arity in ("n", "p", "n,r", "n,d,m,r,k", "n,d,r")
        assert isinstance(seeded, bool)
