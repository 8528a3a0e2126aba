"""One verification routine per result, each returning a CongruenceVerdict.

Every routine checks the headline congruence and the stronger intermediate
congruences that its proof relies on; these appear as the verdict's parts.
Precondition violations raise ValueError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import is_prime, padic_valuation
from .congruence import (
    CongruenceVerdict, ModFactor, Modulus, ParamRoot, Status, congruent, crt_weight_check,
    cyclo_mod, four_atom_modulus, group_verdict, head_modulus, lcm_identity_check, make_verdict,
    negate, parametric_congruent_zero, qint_mod,
)
from .qfactor import (
    CycloFactored, cf_mul, cf_prod, const, cyclo_multiplicity, evaluate, qpow, sum_is_zero,
)
from .qseries import (
    A, B, A_n_factored, A_n_via_T, ClassicalKind, TheoremId, bracket, classical_sum,
    limit_minus_terms, limit_plus_terms, mu_terms, nu_terms, pairing_m, qint_vanishing_m,
    ratio_x, reflection_sides, rhs_minus_factored, rhs_minus_param_terms, rhs_plus_factored,
    rhs_plus_param_terms, single_closed_form_minus, single_closed_form_plus, term_half,
    term_minus, term_pairing, term_plus, term_qint_vanishing, theorem_t,
)

CONJECTURE_GUARD = 10 ** 4


def _odd(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n % 2 == 0 or n < minimum:
        raise ValueError(f"n must be an odd integer >= {minimum}, got {n}")


def _phi_cubed(n: int) -> Modulus:
    return Modulus.of(cyclo_mod(n, 3))


def _form_identity(builder: Callable, n: int, name: str, inst: dict) -> CongruenceVerdict:
    """The two displayed shapes of each summand agree exactly."""
    bad = [k for k in range(n) if not sum_is_zero([builder(k), cf_mul(const(-1), builder(k, form="fifth"))])]
    status = Status.PASS if not bad else Status.FAIL
    return make_verdict(name, dict(inst, check="summand forms agree"), "exact", status,
                        {"terms": n, "bad": bad}, [f"summands differ at k = {bad}"] if bad else [])


def _tail_multiplicity(terms: list[CycloFactored], n: int, M: int, name: str,
                       inst: dict) -> CongruenceVerdict:
    """Every summand with M < k <= n-1 is divisible by Phi_n^3."""
    mults = {k: cyclo_multiplicity(terms[k], n) for k in range(M + 1, len(terms)) if not terms[k].is_zero()}
    bad = {k: v for k, v in mults.items() if v < 3}
    notes = []
    if 0 <= M < len(terms) and not terms[M].is_zero():
        notes.append(f"multiplicity at k = M = {M} is {cyclo_multiplicity(terms[M], n)}")
    if bad:
        notes.append(f"multiplicity below 3 at {bad}")
    return make_verdict(name, dict(inst, check="tail summands vanish to order 3"), _phi_cubed(n),
                        Status.FAIL if bad else Status.PASS, {"multiplicities": mults}, notes)


# --- the 8k+1 and 8k-1 sums -------------------------------------------------------------------

def verify_plus_sum(n: int) -> CongruenceVerdict:
    """sum_{k<n} [8k+1] (q;q^4)_k^6 (q^2;q^2)_2k / ((q^4;q^4)_k^6 (q;q^2)_2k) q^4k modulo [n] Phi_n^2."""
    _odd(n)
    name = TheoremId.PLUS_SUM.value
    t, M = theorem_t(n, "plus")
    tn = t * n
    inst = {"n": n}
    full = [term_plus(k) for k in range(n)]
    rhs = [rhs_plus_factored(n)]
    trunc = full[:M + 1]
    parts = [
        congruent(full, rhs, head_modulus(n), name, dict(inst, check="headline")),
        congruent(full, rhs, _phi_cubed(n), name, dict(inst, check="full sum modulo Phi_n^3")),
        congruent(trunc, rhs, _phi_cubed(n), name, dict(inst, check=f"sum to M = {M} modulo Phi_n^3")),
        congruent(trunc, limit_plus_terms(tn), _phi_cubed(n), name,
                  dict(inst, check="sum to M against the b -> 1 closed form")),
        _tail_multiplicity(full, n, M, name, inst),
        _form_identity(term_plus, n, name, inst),
    ]
    return group_verdict(name, inst, head_modulus(n), parts, [f"t = {t}, M = {M}"])


def verify_minus_sum(n: int) -> CongruenceVerdict:
    """sum_{k<n} [8k-1] (q^-1;q^4)_k^6 (q^2;q^2)_2k / ((q^4;q^4)_k^6 (q^-1;q^2)_2k) q^8k modulo [n] Phi_n^2."""
    _odd(n, 5)
    name = TheoremId.MINUS_SUM.value
    t, M = theorem_t(n, "minus")
    tn = t * n
    inst = {"n": n}
    full = [term_minus(k) for k in range(n)]
    rhs = [rhs_minus_factored(n)]
    trunc = full[:M + 1]
    notes = [f"t = {t}, M = {M}"]
    if n % 4 == 3:
        notes.append("A_n is a rational function; congruences are taken with denominators coprime to the modulus")
    parts = [
        congruent(full, rhs, head_modulus(n), name, dict(inst, check="headline")),
        congruent(full, rhs, _phi_cubed(n), name, dict(inst, check="full sum modulo Phi_n^3")),
        congruent(trunc, rhs, _phi_cubed(n), name, dict(inst, check=f"sum to M = {M} modulo Phi_n^3")),
        congruent(trunc, limit_minus_terms(tn), _phi_cubed(n), name,
                  dict(inst, check="sum to M against the b -> 1 closed form")),
        _tail_multiplicity(full, n, M, name, inst),
        _form_identity(term_minus, n, name, inst),
    ]
    if n % 4 == 3:
        ok = sum_is_zero([A_n_factored(n), cf_mul(const(-1), A_n_via_T(n))])
        parts.append(make_verdict(name, dict(inst, check="A_n equals -q^-1 (q^n-2)[n][n+2] T(n,1,q)"),
                                  "exact", Status.PASS if ok else Status.FAIL, {"equal": ok}))
    return group_verdict(name, inst, head_modulus(n), parts, notes)


# --- parametric versions --------------------------------------------------------------------------

def _a_roots(tn: int) -> Modulus:
    return Modulus.of(ModFactor("atom", ParamRoot("a", -tn)), ModFactor("atom", ParamRoot("a", tn)))


def verify_plus_param(n: int, seed: int = 0) -> CongruenceVerdict:
    """The two-parameter 8k+1 congruence modulo Phi_n (1-aq^tn)(a-q^tn)(1-bq^tn)(b-q^tn)."""
    _odd(n)
    name = TheoremId.PLUS_PARAM.value
    t, M = theorem_t(n, "plus")
    tn = t * n
    inst = {"n": n, "seed": seed}
    lhs = [term_plus(k, True) for k in range(M + 1)]
    modulus = Modulus(tuple([cyclo_mod(n)] + four_atom_modulus(tn)))
    parts = [
        parametric_congruent_zero(lhs + negate(rhs_plus_param_terms(n, A, B, t)), modulus, name,
                                  dict(inst, check="combined closed form"), seed=seed),
        parametric_congruent_zero(lhs + negate([single_closed_form_plus(tn, B)]), _a_roots(tn), name,
                                  dict(inst, check="single closed form at the a-roots"), seed=seed),
    ]
    return group_verdict(name, inst, modulus, parts, [f"t = {t}, M = {M}"])


def verify_minus_param(n: int, seed: int = 0) -> CongruenceVerdict:
    """The two-parameter 8k-1 congruence modulo Phi_n (1-aq^tn)(a-q^tn)(1-bq^tn)(b-q^tn)."""
    _odd(n, 5)
    name = TheoremId.MINUS_PARAM.value
    t, M = theorem_t(n, "minus")
    tn = t * n
    inst = {"n": n, "seed": seed}
    lhs = [term_minus(k, True) for k in range(M + 1)]
    modulus = Modulus(tuple([cyclo_mod(n)] + four_atom_modulus(tn)))
    parts = [
        parametric_congruent_zero(lhs + negate(rhs_minus_param_terms(n, A, B, t)), modulus, name,
                                  dict(inst, check="combined closed form"), seed=seed),
        parametric_congruent_zero(lhs + negate([single_closed_form_minus(tn, B)]), _a_roots(tn), name,
                                  dict(inst, check="single closed form at the a-roots"), seed=seed),
    ]
    return group_verdict(name, inst, modulus, parts, [f"t = {t}, M = {M}"])


def _b_limit_modulus(n: int, tn: int) -> Modulus:
    return Modulus.of(cyclo_mod(n, 2), ModFactor("atom", ParamRoot("b", -tn)),
                      ModFactor("atom", ParamRoot("b", tn)))


def verify_plus_a_limit(n: int, seed: int = 0) -> CongruenceVerdict:
    """a = 1 in the 8k+1 parametric sum, against mu(b, tn), modulo Phi_n^2 (1-bq^tn)(b-q^tn)."""
    _odd(n)
    name = TheoremId.PLUS_A_LIMIT.value
    t, M = theorem_t(n, "plus")
    tn = t * n
    lhs = [evaluate(term_plus(k, True), a=1) for k in range(M + 1)]
    modulus = _b_limit_modulus(n, tn)
    return parametric_congruent_zero(lhs + negate(mu_terms(tn, B)), modulus, name, {"n": n, "seed": seed},
                                     seed=seed)


def verify_minus_a_limit(n: int, seed: int = 0) -> CongruenceVerdict:
    """a = 1 in the 8k-1 parametric sum, against q^(-1-tn)[tn][tn+2] nu(tn, b, q)."""
    _odd(n, 5)
    name = TheoremId.MINUS_A_LIMIT.value
    t, M = theorem_t(n, "minus")
    tn = t * n
    lhs = [evaluate(term_minus(k, True), a=1) for k in range(M + 1)]
    head = cf_prod([qpow(-1 - tn), bracket(tn), bracket(tn + 2)])
    rhs = [cf_mul(head, x) for x in nu_terms(tn, B)]
    modulus = _b_limit_modulus(n, tn)
    return parametric_congruent_zero(lhs + negate(rhs), modulus, name, {"n": n, "seed": seed}, seed=seed)


# --- auxiliary congruences --------------------------------------------------------------------------

def verify_reflection(n: int, d: int, m: int, r: int, k: int, a_val=None, seed: int = 0) -> CongruenceVerdict:
    """(aq^r;q^d)_{m-k}/(q^d/a;q^d)_{m-k} against its reflected form modulo Phi_n.

    Decided for symbolic a by interpolation; a_val adds a check at that value.
    """
    name = TheoremId.REFLECTION.value
    inst = {"n": n, "d": d, "m": m, "r": r, "k": k}
    lhs, rhs = reflection_sides(n, d, m, r, k, A)
    modulus = Modulus.of(cyclo_mod(n))
    parts = [parametric_congruent_zero([lhs, cf_mul(const(-1), rhs)], modulus, name,
                                       dict(inst, check="symbolic a"), seed=seed)]
    if a_val is not None:
        lv, rv = reflection_sides(n, d, m, r, k, a_val)
        parts.append(congruent([lv], [rv], modulus, name, dict(inst, a=str(a_val))))
    return group_verdict(name, inst, modulus, parts)


def verify_pairing(n: int, d: int, r: int, m: int | None = None, a_val=None, b_val=None,
                   seed: int = 0) -> CongruenceVerdict:
    """The well-poised two-parameter sum up to m vanishes modulo Phi_n."""
    if n < 1 or d < 1 or math.gcd(n, d) != 1:
        raise ValueError("need positive n, d with gcd(n, d) = 1")
    if m is None:
        m = pairing_m(n, d, r)
    if not 0 <= m <= n - 1 or (d * m + r) % n:
        raise ValueError("need 0 <= m <= n-1 and d*m = -r (mod n)")
    name = TheoremId.PAIRING.value
    inst = {"n": n, "d": d, "r": r, "m": m}
    modulus = Modulus.of(cyclo_mod(n))
    try:
        terms = [term_pairing(k, d, r) for k in range(m + 1)]
    except ZeroDivisionError as exc:
        return make_verdict(name, inst, modulus, Status.ILL_POSED, {"error": str(exc)},
                            [f"a summand is undefined: {exc}"])
    notes = []
    hit = [d + r - 2 + d * j for j in range(m) if (d + r - 2 + d * j) % n == 0]
    if hit:
        # the (q^2;q^d)/(q^{d+r-2};q^d) pair reflects only if no factor 1 - q^e has n | e
        notes.append(f"(q^{d + r - 2};q^{d})_{m} contains 1 - q^{hit[0]}, so the k <-> m-k "
                     "cancellation is not available modulo Phi_n")
    parts = [parametric_congruent_zero(terms, modulus, name, dict(inst, check="symbolic a, b"),
                                       seed=seed, notes=notes)]
    if a_val is not None and b_val is not None:
        vals = [evaluate(t, a_val, b_val) for t in terms]
        parts.append(congruent(vals, [], modulus, name, dict(inst, a=str(a_val), b=str(b_val))))
    return group_verdict(name, inst, modulus, parts, notes=notes)


def verify_qint_vanishing(n: int, r: int) -> CongruenceVerdict:
    """Both truncations (at m and at n-1) of the r = +-1 sum vanish modulo [n]."""
    _odd(n)
    name = TheoremId.QINT_VANISHING.value
    m = qint_vanishing_m(n, r)
    inst = {"n": n, "r": r, "m": m}
    terms = [term_qint_vanishing(k, r) for k in range(max(m + 1, n))]
    modulus = Modulus.of(qint_mod(n))
    parts = [congruent(terms[:m + 1], [], modulus, name, dict(inst, check="sum to m")),
             congruent(terms[:n], [], modulus, name, dict(inst, check="sum to n-1"))]
    note = "denominator step 4 in (q^{2+r};q^4)_k is taken from the surrounding 8k+-1 sums"
    return group_verdict(name, inst, modulus, parts, [note])


# --- q = 1 corollaries -------------------------------------------------------------------------

def _valuation_verdict(name: str, inst: dict, diff: Fraction, p: int, need: int,
                       notes=()) -> CongruenceVerdict:
    v = padic_valuation(diff, p)
    status = Status.PASS if v >= need else Status.FAIL
    shown = "inf" if v == math.inf else int(v)
    return make_verdict(name, inst, f"{p}^{need}", status,
                        {"difference": str(diff)}, list(notes) + [f"v_{p}(LHS - RHS) = {shown}"])


def verify_corollary(which: int, p: int) -> CongruenceVerdict:
    """v_p(LHS - RHS) >= 3 for the q = 1 form of the 8k+1 (which=1) or 8k-1 (which=2) sum."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if which == 1:
        name = TheoremId.COROLLARY_PLUS.value
        diff = classical_sum(ClassicalKind.PLUS_LHS, p) - classical_sum(ClassicalKind.PLUS_RHS, p)
    elif which == 2:
        if p <= 3:
            raise ValueError("the 8k-1 corollary needs p > 3")
        name = TheoremId.COROLLARY_MINUS.value
        diff = classical_sum(ClassicalKind.MINUS_LHS, p) - classical_sum(ClassicalKind.MINUS_RHS, p)
    else:
        raise ValueError("which must be 1 or 2")
    return _valuation_verdict(name, {"p": p}, diff, p, 3, [f"p = {p % 4} (mod 4) branch"])


def verify_van_hamme(p: int) -> CongruenceVerdict:
    """sum_{k<=(p-1)/2} (4k+1) (1/2)_k^4 / k!^4 = p (mod p^3)."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    diff = classical_sum(ClassicalKind.VAN_HAMME, p) - p
    return _valuation_verdict(TheoremId.VAN_HAMME.value, {"p": p}, diff, p, 3)


# --- the half sum and the combined congruence ----------------------------------------------------------

def half_sum_rhs(n: int) -> list[CycloFactored]:
    if n % 4 == 3:
        return []
    return [cf_mul(ratio_x((n - 1) // 4), qpow((n - 1) // 2))]


def verify_half_sum(n: int) -> CongruenceVerdict:
    """sum_{k<n} (q;q^2)_k^2 (q^2;q^4)_k / ((q^2;q^2)_k^2 (q^4;q^4)_k) q^2k modulo Phi_n^2."""
    _odd(n)
    name = TheoremId.HALF_SUM.value
    terms = [term_half(k) for k in range(n)]
    return congruent(terms, half_sum_rhs(n), Modulus.of(cyclo_mod(n, 2)), name, {"n": n})


def verify_combined(n: int) -> CongruenceVerdict:
    """The 8k+1 sum against [n] q^((1-n)/2) times the half sum, modulo [n] Phi_n^2."""
    _odd(n)
    name = TheoremId.COMBINED.value
    lhs = [term_plus(k) for k in range(n)]
    head = cf_mul(bracket(n), qpow((1 - n) // 2))
    rhs = [cf_mul(head, term_half(k)) for k in range(n)]
    return congruent(lhs, rhs, head_modulus(n), name, {"n": n})


@dataclass(frozen=True)
class ConjectureReport:
    p: int
    r: int
    valuation: float
    threshold: int
    meets: bool

    def line(self) -> str:
        v = "inf" if self.valuation == math.inf else int(self.valuation)
        flag = "meets" if self.meets else "SHORTFALL"
        return f"p={self.p} r={self.r} valuation={v} threshold={self.threshold} {flag}"

    def to_dict(self) -> dict:
        v = "inf" if self.valuation == math.inf else int(self.valuation)
        return {"p": self.p, "r": self.r, "valuation": v, "threshold": self.threshold, "meets": self.meets}


def conjecture_threshold(p: int, r: int) -> int:
    return r + 3 if p % 4 == 1 else 2 * r + 1


def explore_conjecture(p: int, r: int) -> ConjectureReport:
    """Observed p-adic valuation of the strengthened q = 1 congruence at n = p^r (evidence only)."""
    if not is_prime(p) or p == 2 or r < 1:
        raise ValueError("need an odd prime p and r >= 1")
    if p ** r > CONJECTURE_GUARD:
        raise ValueError(f"p^r = {p ** r} exceeds the guard {CONJECTURE_GUARD}")
    diff = classical_sum(ClassicalKind.CONJ_LHS, p, r) - classical_sum(ClassicalKind.CONJ_RHS, p, r)
    v = padic_valuation(diff, p)
    need = conjecture_threshold(p, r)
    return ConjectureReport(p, r, v, need, v >= need)


# --- structural checks, re-exported for the command line ---------------------------------------------

def verify_lcm(n: int) -> CongruenceVerdict:
    _odd(n, 3)
    return lcm_identity_check(n)


def verify_crt_weight(n: int, seed: int = 0) -> CongruenceVerdict:
    _odd(n)
    return crt_weight_check(n, seed=seed)


# target name -> (routine, instance parameter, accepts seed)
TARGETS: dict[str, tuple[Callable, str, bool]] = {
    TheoremId.PLUS_SUM.value: (verify_plus_sum, "n", False),
    TheoremId.MINUS_SUM.value: (verify_minus_sum, "n", False),
    TheoremId.PLUS_PARAM.value: (verify_plus_param, "n", True),
    TheoremId.MINUS_PARAM.value: (verify_minus_param, "n", True),
    TheoremId.PLUS_A_LIMIT.value: (verify_plus_a_limit, "n", True),
    TheoremId.MINUS_A_LIMIT.value: (verify_minus_a_limit, "n", True),
    TheoremId.QINT_VANISHING.value: (verify_qint_vanishing, "n,r", False),
    TheoremId.REFLECTION.value: (verify_reflection, "n,d,m,r,k", True),
    TheoremId.PAIRING.value: (verify_pairing, "n,d,r", True),
    TheoremId.COROLLARY_PLUS.value: (lambda p: verify_corollary(1, p), "p", False),
    TheoremId.COROLLARY_MINUS.value: (lambda p: verify_corollary(2, p), "p", False),
    TheoremId.VAN_HAMME.value: (verify_van_hamme, "p", False),
    TheoremId.HALF_SUM.value: (verify_half_sum, "n", False),
    TheoremId.COMBINED.value: (verify_combined, "n", False),
    TheoremId.LCM.value: (verify_lcm, "n", False),
    TheoremId.CRT_WEIGHT.value: (verify_crt_weight, "n", True),
}
