"""Builders for the summands, closed forms and identity sides.

Everything is returned in factored form (``CycloFactored`` or lists of them).
Parameters ``a`` and ``b`` are passed as :class:`~qcong.qfactor.Mon` values:
the symbols ``A`` and ``B`` keep them symbolic, ``mon(c, e)`` stands for
``c*q**e`` and plain rationals are accepted too.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .arith import RatFun
from .qfactor import (
    ZERO, CycloFactored, Mon, as_value, cf_div, cf_mul, cf_pow, cf_prod, diff,
    from_mon, mon, mon_sum, one_minus, pochhammer, pochhammer_many, q_integer_factor,
    qpow, qpow_factor, sum_is_zero, sum_numeric, sum_to_ratfun,
)

A = mon(1, 0, 1, 0)
B = mon(1, 0, 0, 1)
Param = Union[Mon, int, Fraction]


class TheoremId(enum.Enum):
    PLUS_SUM = "plus-sum"
    MINUS_SUM = "minus-sum"
    PLUS_PARAM = "plus-param"
    MINUS_PARAM = "minus-param"
    PLUS_A_LIMIT = "plus-a-limit"
    MINUS_A_LIMIT = "minus-a-limit"
    REFLECTION = "reflection"
    PAIRING = "pairing"
    QINT_VANISHING = "qint-vanishing"
    COROLLARY_PLUS = "corollary-plus"
    COROLLARY_MINUS = "corollary-minus"
    VAN_HAMME = "van-hamme"
    HALF_SUM = "half-sum"
    COMBINED = "combined"
    LCM = "lcm"
    CRT_WEIGHT = "crt-weight"


def Q(e: int) -> Mon:
    return mon(1, e)


def _p(x: Param) -> Mon:
    v = x if isinstance(x, Mon) else as_value(x)
    return v


def bracket(m: int) -> CycloFactored:
    """The q-integer [m] for any integer m; [0] is zero."""
    return ZERO if m == 0 else q_integer_factor(m)


def theorem_t(n: int, family: str) -> tuple[int, int]:
    """(t, M) from the case tables; family is 'plus' (8k+1 sums) or 'minus' (8k-1 sums)."""
    if n % 2 == 0 or n < 1:
        raise ValueError(f"n must be a positive odd integer, got {n}")
    if family == "plus":
        return (1, (n - 1) // 4) if n % 4 == 1 else (3, (3 * n - 1) // 4)
    return (3, (3 * n + 1) // 4) if n % 4 == 1 else (1, (n + 1) // 4)


# --- summands -----------------------------------------------------------------------

@lru_cache(maxsize=4096)
def term_plus(k: int, parametric: bool = False, form: str = "sixth") -> CycloFactored:
    """k-th summand of the 8k+1 sum.

    form='sixth' follows the (q;q^4)^6 (q^2;q^2)_{2k} display, form='fifth' the
    equivalent (q;q^4)^5 (q^2;q^4)_k / (q^3;q^4)_k display.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    head = cf_mul(bracket(8 * k + 1), qpow(4 * k))
    if parametric:
        num = pochhammer_many([A * Q(1), Q(1) / A, B * Q(1), Q(1) / B, Q(1), Q(2)], 4, k)
        den = pochhammer_many([A * Q(4), Q(4) / A, B * Q(4), Q(4) / B, Q(4), Q(3)], 4, k)
    elif form == "sixth":
        num = cf_mul(cf_pow(pochhammer(1, 4, k), 6), pochhammer(2, 2, 2 * k))
        den = cf_mul(cf_pow(pochhammer(4, 4, k), 6), pochhammer(1, 2, 2 * k))
    else:
        num = cf_mul(cf_pow(pochhammer(1, 4, k), 5), pochhammer(2, 4, k))
        den = cf_mul(cf_pow(pochhammer(4, 4, k), 5), pochhammer(3, 4, k))
    return cf_div(cf_mul(head, num), den)


@lru_cache(maxsize=4096)
def term_minus(k: int, parametric: bool = False, form: str = "sixth") -> CycloFactored:
    """k-th summand of the 8k-1 sum (same form switch as term_plus)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    head = cf_mul(bracket(8 * k - 1), qpow(8 * k))
    if parametric:
        num = pochhammer_many([Q(-1), A * Q(-1), Q(-1) / A, B * Q(-1), Q(-1) / B, Q(2)], 4, k)
        den = pochhammer_many([A * Q(4), Q(4) / A, B * Q(4), Q(4) / B, Q(4), Q(1)], 4, k)
    elif form == "sixth":
        num = cf_mul(cf_pow(pochhammer(-1, 4, k), 6), pochhammer(2, 2, 2 * k))
        den = cf_mul(cf_pow(pochhammer(4, 4, k), 6), pochhammer(-1, 2, 2 * k))
    else:
        num = cf_mul(cf_pow(pochhammer(-1, 4, k), 5), pochhammer(2, 4, k))
        den = cf_mul(cf_pow(pochhammer(4, 4, k), 5), pochhammer(1, 4, k))
    return cf_div(cf_mul(head, num), den)


@lru_cache(maxsize=4096)
def term_qint_vanishing(k: int, r: int, d: int = 4) -> CycloFactored:
    """[8k+r] (q^r;q^4)_k^5 (q^2;q^4)_k / ((q^4;q^4)_k^5 (q^{2+r};q^d)_k) q^{(6-2r)k}."""
    num = cf_mul(cf_pow(pochhammer(r, 4, k), 5), pochhammer(2, 4, k))
    den = cf_mul(cf_pow(pochhammer(4, 4, k), 5), pochhammer(2 + r, d, k))
    return cf_div(cf_mul(cf_mul(bracket(8 * k + r), qpow((6 - 2 * r) * k)), num), den)


@lru_cache(maxsize=4096)
def term_pairing(k: int, d: int, r: int) -> CycloFactored:
    """k-th summand of the well-poised Phi_n-vanishing sum in a, b with step d."""
    num = pochhammer_many([Q(r), A * Q(r), Q(r) / A, B * Q(r), Q(r) / B, Q(2)], d, k)
    den = pochhammer_many([A * Q(d), Q(d) / A, Q(d) / B, Q(d), B * Q(d), Q(d + r - 2)], d, k)
    head = cf_mul(bracket(2 * d * k + r), qpow((2 * d - 2 * r - 2) * k))
    if head.is_zero() or num.is_zero():
        if den.is_zero():
            raise ZeroDivisionError(f"summand {k} is 0/0")
        return ZERO
    return cf_div(cf_mul(head, num), den)


@lru_cache(maxsize=4096)
def term_half(k: int) -> CycloFactored:
    """(q;q^2)_k^2 (q^2;q^4)_k / ((q^2;q^2)_k^2 (q^4;q^4)_k) q^{2k}."""
    num = cf_mul(cf_pow(pochhammer(1, 2, k), 2), pochhammer(2, 4, k))
    den = cf_mul(cf_pow(pochhammer(2, 2, k), 2), pochhammer(4, 4, k))
    return cf_div(cf_mul(num, qpow(2 * k)), den)


# --- closed forms -------------------------------------------------------------------

def ratio_x(m: int, b: Param | None = None) -> CycloFactored:
    """(bq^2, q^2/b; q^4)_m / (bq^4, q^4/b; q^4)_m; b=None gives (q^2;q^4)_m^2/(q^4;q^4)_m^2."""
    if b is None:
        return cf_pow(cf_div(pochhammer(2, 4, m), pochhammer(4, 4, m)), 2)
    b = _p(b)
    num = pochhammer_many([b * Q(2), Q(2) / b], 4, m)
    den = pochhammer_many([b * Q(4), Q(4) / b], 4, m)
    return cf_div(num, den)


def rhs_plus_factored(n: int) -> CycloFactored:
    if n % 2 == 0 or n < 1:
        raise ValueError(f"n must be a positive odd integer, got {n}")
    if n % 4 == 3:
        return ZERO
    return cf_mul(bracket(n), ratio_x((n - 1) // 4))


def rhs_plus(n: int) -> RatFun:
    return sum_to_ratfun([rhs_plus_factored(n)])


def _laurent(poly: dict[int, int]) -> CycloFactored:
    return mon_sum(mon(c, e) for e, c in poly.items() if c)


def _laurent_mul(x: dict[int, int], y: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in x.items():
        for e2, c2 in y.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def A_n_factored(n: int) -> CycloFactored:
    """A_n built from its displayed difference-over-product form."""
    if n % 2 == 0 or n <= 3:
        raise ValueError(f"A_n needs odd n > 3, got {n}")
    one_minus_q = lambda e: {0: 1, e: -1}  # noqa: E731
    cube = _laurent_mul(_laurent_mul(one_minus_q(1 - n), one_minus_q(1 - n)), one_minus_q(1 - n))
    other = {-n - 2: 1}
    for f in ({0: 1, 1: 1}, one_minus_q(2), one_minus_q(2), one_minus_q(2 - n)):
        other = _laurent_mul(other, f)
    diffpoly = dict(cube)
    for e, c in other.items():
        diffpoly[e] = diffpoly.get(e, 0) - c
    num = cf_prod([qpow(n + 1), _laurent({n: 1, 0: -2}), bracket(n), _laurent(diffpoly)])
    den = cf_mul(qpow_factor(3 - n), cf_pow(qpow_factor(1 - n), 2))
    return cf_div(num, den)


def A_n(n: int) -> RatFun:
    return sum_to_ratfun([A_n_factored(n)])


def A_n_via_T(n: int) -> CycloFactored:
    """-q^{-1} (q^n - 2) [n][n+2] T(n, 1, q), the form the limit argument produces."""
    return cf_prod([const_factor(-1), qpow(-1), _laurent({n: 1, 0: -2}), bracket(n),
                    bracket(n + 2), T_factor(n, 1)])


def const_factor(c) -> CycloFactored:
    return CycloFactored(c)


def rhs_minus_factored(n: int) -> CycloFactored:
    if n % 2 == 0 or n <= 3:
        raise ValueError(f"n must be odd and > 3, got {n}")
    if n % 4 == 1:
        return ZERO
    return cf_mul(A_n_factored(n), ratio_x((n + 1) // 4))


def rhs_minus(n: int) -> RatFun:
    return sum_to_ratfun([rhs_minus_factored(n)])


def T_factor(tn: int, b: Param = B) -> CycloFactored:
    """T(tn, b, q) in reduced form (q-1) P / ((q x - b)(x - q^2)(b q x - 1)), x = q^{-tn}.

    The two-summand display is 0/0 at tn = 3; this form is valid for every odd tn >= 3.
    """
    if tn < 3 or tn % 2 == 0:
        raise ValueError(f"T needs odd tn >= 3, got {tn}")
    b = _p(b)
    x = -tn
    p = mon_sum([b ** 2 * Q(2 + x), -b * Q(4 + x), -b * Q(3 + x), b * Q(2 + 2 * x),
                 b * Q(2), -b * Q(1 + x), -b * Q(x), Q(2 + x)])
    num = cf_mul(diff(Q(1), mon(1)), p)
    den = cf_prod([diff(Q(1 + x), b), diff(Q(x), Q(2)), diff(b * Q(1 + x), mon(1))])
    return cf_div(num, den)


def T_two_summand(tn: int, b: Param = B) -> list[CycloFactored]:
    """The two summands of T exactly as displayed (raises at tn = 3, where they are 0/0)."""
    b = _p(b)
    t1 = cf_div(cf_mul(one_minus(Q(1)), diff(Q(-2), Q(-1 - tn))),
                cf_mul(one_minus(Q(-2 - tn)), diff(Q(-2), Q(1 - tn))))
    n2 = cf_prod([diff(Q(-tn), Q(-2 - tn)), diff(Q(-2), Q(-tn)), diff(b * Q(-1), Q(1)),
                  diff(Q(-1) / b, Q(1))])
    d2 = cf_prod([one_minus(Q(-2 - tn)), diff(b * Q(-1), Q(-tn)), diff(Q(-1) / b, Q(-tn)),
                  diff(Q(-2), Q(1 - tn))])
    return [t1, cf_div(n2, d2)]


def T_ratfun(tn: int, b: Param) -> RatFun:
    return sum_to_ratfun([T_factor(tn, b)])


def crt_weight(a: Param, b: Param, tn: int) -> CycloFactored:
    """(1 - b q^tn)(b - q^tn)(-1 - a^2 + a q^tn) / ((a - b)(1 - ab)); equals 1 where a = q^{+-tn}."""
    a, b = _p(a), _p(b)
    num = cf_prod([one_minus(b * Q(tn)), diff(b, Q(tn)), mon_sum([mon(-1), -(a ** 2), a * Q(tn)])])
    den = cf_mul(diff(a, b), one_minus(a * b))
    return cf_div(num, den)


def rhs_plus_param_terms(n: int, a: Param = A, b: Param = B, t: int | None = None) -> list[CycloFactored]:
    """The two CRT-weighted closed forms of the parametric 8k+1 congruence."""
    if t is None:
        t = theorem_t(n, "plus")[0]
    tn = t * n
    m = (tn - 1) // 4
    a, b = _p(a), _p(b)
    br = bracket(tn)
    return [cf_prod([br, crt_weight(a, b, tn), ratio_x(m, b)]),
            cf_prod([br, crt_weight(b, a, tn), ratio_x(m, a)])]


def rhs_plus_param(n: int, t: int, M: int, a_val: Param, b_val: Param) -> RatFun:
    return sum_to_ratfun(rhs_plus_param_terms(n, a_val, b_val, t))


def rhs_minus_param_terms(n: int, a: Param = A, b: Param = B, t: int | None = None) -> list[CycloFactored]:
    if t is None:
        t = theorem_t(n, "minus")[0]
    tn = t * n
    if tn < 3:
        raise ValueError("the 8k-1 closed form needs tn >= 3")
    m = (tn + 1) // 4
    a, b = _p(a), _p(b)
    head = cf_prod([qpow(-1 - tn), bracket(tn), bracket(tn + 2)])
    return [cf_prod([head, crt_weight(a, b, tn), ratio_x(m, b), T_factor(tn, b)]),
            cf_prod([head, crt_weight(b, a, tn), ratio_x(m, a), T_factor(tn, a)])]


def rhs_minus_param(n: int, t: int, M: int, a_val: Param, b_val: Param) -> RatFun:
    return sum_to_ratfun(rhs_minus_param_terms(n, a_val, b_val, t))


def single_closed_form_plus(tn: int, b: Param = B) -> CycloFactored:
    """[tn] (bq^2, q^2/b; q^4)_m / (bq^4, q^4/b; q^4)_m with m = (tn-1)/4."""
    return cf_mul(bracket(tn), ratio_x((tn - 1) // 4, b))


def single_closed_form_minus(tn: int, b: Param = B) -> CycloFactored:
    """q^{-1-tn} [tn][tn+2] T(tn,b,q) (bq^2, q^2/b; q^4)_m / (bq^4, q^4/b; q^4)_m, m = (tn+1)/4."""
    return cf_prod([qpow(-1 - tn), bracket(tn), bracket(tn + 2), T_factor(tn, b),
                    ratio_x((tn + 1) // 4, b)])


def _one_minus_b_sq(b: Mon) -> CycloFactored:
    return cf_pow(one_minus(b), 2)


def mu_terms(tn: int, b: Param = B) -> list[CycloFactored]:
    """The two summands of mu(b, tn), the a -> 1 limit of the 8k+1 closed form."""
    b = _p(b)
    m = (tn - 1) // 4
    w1 = cf_div(cf_prod([one_minus(b * Q(tn)), diff(b, Q(tn)), _laurent({0: -2, tn: 1})]),
                _one_minus_b_sq(b))
    w2 = cf_div(cf_prod([const_factor(-1), cf_pow(qpow_factor(tn), 2),
                         mon_sum([mon(-1), -(b ** 2), b * Q(tn)])]),
                _one_minus_b_sq(b))
    br = bracket(tn)
    return [cf_prod([br, w1, ratio_x(m, b)]), cf_prod([br, w2, ratio_x(m)])]


def mu_closed(tn: int, b_val: Param) -> RatFun:
    return sum_to_ratfun(mu_terms(tn, b_val))


def nu_terms(tn: int, b: Param = B) -> list[CycloFactored]:
    """The two summands of nu(tn, b, q), the a -> 1 limit of the 8k-1 bracket."""
    b = _p(b)
    m = (tn + 1) // 4
    w1 = cf_div(cf_prod([one_minus(b * Q(tn)), diff(b, Q(tn)), _laurent({0: -2, tn: 1})]),
                _one_minus_b_sq(b))
    w2 = cf_div(cf_prod([const_factor(-1), cf_pow(qpow_factor(tn), 2),
                         mon_sum([mon(-1), -(b ** 2), b * Q(tn)])]),
                _one_minus_b_sq(b))
    return [cf_prod([w1, ratio_x(m, b), T_factor(tn, b)]),
            cf_prod([w2, ratio_x(m), T_factor(tn, 1)])]


def nu_closed(tn: int, b_val: Param) -> RatFun:
    return sum_to_ratfun(nu_terms(tn, b_val))


def harmonic_terms(m: int) -> list[CycloFactored]:
    """sum_{j=1}^{m} q^{4j}/(1-q^{4j})^2 - sum_{j=0}^{m-1} q^{4j+2}/(1-q^{4j+2})^2, termwise."""
    out = [cf_div(qpow(4 * j), cf_pow(qpow_factor(4 * j), 2)) for j in range(1, m + 1)]
    out += [cf_mul(const_factor(-1), cf_div(qpow(4 * j + 2), cf_pow(qpow_factor(4 * j + 2), 2)))
            for j in range(m)]
    return out


def limit_plus_terms(tn: int) -> list[CycloFactored]:
    """[tn] X^2 [1 + (1-q^tn)^2 (q^tn - 2) H], the b -> 1 limit for the 8k+1 sum."""
    m = (tn - 1) // 4
    head = cf_mul(bracket(tn), ratio_x(m))
    lift = cf_prod([head, cf_pow(qpow_factor(tn), 2), _laurent({tn: 1, 0: -2})])
    return [head] + [cf_mul(lift, h) for h in harmonic_terms(m)]


def limit_minus_terms(tn: int) -> list[CycloFactored]:
    """The Phi_n^3 closed form for the M-truncated 8k-1 sum obtained from the b -> 1 limit."""
    m = (tn + 1) // 4
    t1 = T_factor(tn, 1)
    head = cf_prod([qpow(-1 - tn), bracket(tn), bracket(tn + 2), ratio_x(m), t1])
    g = _laurent({tn: 1, 0: -2})
    lift = cf_prod([head, cf_pow(qpow_factor(tn), 2), g])
    out = [cf_mul(lift, h) for h in harmonic_terms(m)]
    out.append(cf_prod([const_factor(-1), head, qpow(tn), g]))
    return out


# --- reflection and vanishing helpers ----------------------------------------------------------------------

def reflection_sides(n: int, d: int, m: int, r: int, k: int, a: Param = A) -> tuple[CycloFactored, CycloFactored]:
    """Both sides of the reflection congruence for (a q^r; q^d)/(q^d/a; q^d)."""
    if not (1 <= m <= n - 1) or d < 1:
        raise ValueError("need positive d and 1 <= m <= n-1")
    if (d * m + r) % n:
        raise ValueError("need d*m = -r (mod n)")
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    a = _p(a)

    def ratio(j):
        return cf_div(pochhammer(a * Q(r), d, j), pochhammer(Q(d) / a, d, j))

    e = m * (d * m - d + 2 * r) // 2 + (d - r) * k
    rhs = cf_prod([from_mon((-a) ** (m - 2 * k)), ratio(k), qpow(e)])
    return ratio(m - k), rhs


def qint_vanishing_m(n: int, r: int) -> int:
    if r not in (1, -1):
        raise ValueError("r must be +1 or -1")
    return (n - r) // 4 if (n - r) % 4 == 0 else (3 * n - r) // 4


def pairing_m(n: int, d: int, r: int) -> int:
    for m in range(n):
        if (d * m + r) % n == 0:
            return m
    raise ValueError(f"no m in [0, {n - 1}] with {d}*m = -{r} (mod {n})")


# --- identity instances ------------------------------------------------------------------

class IdentityKind(enum.Enum):
    WATSON = "watson"
    PFAFF = "pfaff"
    PHI43_T = "phi43t"


@dataclass
class IdentityInstance:
    """Two independently built sides of a terminating identity."""

    kind: IdentityKind
    parameters: dict
    m_or_n: int
    lhs_terms: list[CycloFactored]
    rhs_terms: list[CycloFactored]
    q_val: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def lhs(self):
        if self.q_val is not None:
            return sum_numeric(self.lhs_terms, self.q_val)
        return sum_to_ratfun(self.lhs_terms)

    @property
    def rhs(self):
        if self.q_val is not None:
            return sum_numeric(self.rhs_terms, self.q_val)
        return sum_to_ratfun(self.rhs_terms)

    def holds(self) -> bool:
        if self.q_val is not None:
            return self.lhs == self.rhs
        neg = [cf_mul(const_factor(-1), t) for t in self.rhs_terms]
        return sum_is_zero(self.lhs_terms + neg)


def watson_sides(a: Param, b: Param, c: Param, d: Param, e: Param, m: int,
                 q_val=None, step: int = 1) -> IdentityInstance:
    """Terminating 8phi7 (with its sqrt(a) columns folded into (1-aq^{2k})/(1-a)) and its 4phi3 image.

    Parameters may be rationals or monomials c*q**e; `step` replaces q by q**step.
    """
    a, b, c, d, e = (_p(x) for x in (a, b, c, d, e))
    qq = Q(step)
    qm = qq ** (-m)
    z = a ** 2 * qq ** (m + 2) / (b * c * d * e)
    lhs = []
    for k in range(m + 1):
        wp = cf_div(one_minus(a * qq ** (2 * k)), one_minus(a))
        num = pochhammer_many([a, b, c, d, e, qm], step, k)
        den = pochhammer_many([qq, a * qq / b, a * qq / c, a * qq / d, a * qq / e, a * qq ** (m + 1)],
                              step, k)
        lhs.append(cf_div(cf_prod([wp, num, from_mon(z ** k)]), den))
    pref = cf_div(pochhammer_many([a * qq, a * qq / (d * e)], step, m),
                  pochhammer_many([a * qq / d, a * qq / e], step, m))
    rhs = []
    for k in range(m + 1):
        num = pochhammer_many([a * qq / (b * c), d, e, qm], step, k)
        den = pochhammer_many([qq, a * qq / b, a * qq / c, d * e * qm / a], step, k)
        rhs.append(cf_div(cf_prod([pref, num, from_mon(qq ** k)]), den))
    params = {"a": str(a), "b": str(b), "c": str(c), "d": str(d), "e": str(e), "step": step}
    return IdentityInstance(IdentityKind.WATSON, params, m, lhs, rhs,
                            None if q_val is None else Fraction(q_val))


def pfaff_sides(a: Param, b: Param, c: Param, m: int, q_val=None, step: int = 1) -> IdentityInstance:
    """Terminating balanced 3phi2 and its product evaluation."""
    a, b, c = _p(a), _p(b), _p(c)
    qq = Q(step)
    lhs = []
    for k in range(m + 1):
        num = pochhammer_many([a, b, qq ** (-m)], step, k)
        den = pochhammer_many([qq, c, a * b * qq ** (1 - m) / c], step, k)
        lhs.append(cf_div(cf_mul(num, from_mon(qq ** k)), den))
    rhs = [cf_div(pochhammer_many([c / a, c / b], step, m), pochhammer_many([c, c / (a * b)], step, m))]
    params = {"a": str(a), "b": str(b), "c": str(c), "step": step}
    return IdentityInstance(IdentityKind.PFAFF, params, m, lhs, rhs,
                            None if q_val is None else Fraction(q_val))


def phi43_T_sides(n: int, t: int, b_val: Param, q_val=None) -> IdentityInstance:
    """The terminating 4phi3 in base q^4 and its closed form through T(tn, b, q)."""
    tn = t * n
    if tn < 3 or tn % 4 != 3:
        raise ValueError(f"need tn >= 3 with tn = 3 (mod 4), got {tn}")
    b = _p(b_val)
    m = (tn + 1) // 4
    top = [Q(2 - tn), b * Q(-1), Q(-1) / b, Q(-1 - tn)]
    bottom = [Q(4), Q(4 - tn), Q(1), Q(-2 - tn)]

    def term(k):
        return cf_div(cf_mul(pochhammer_many(top, 4, k), qpow(4 * k)), pochhammer_many(bottom, 4, k))

    lhs = [term(k) for k in range(m + 1)]
    notes = []
    if not term(m + 1).is_zero():
        raise AssertionError("the 4phi3 should terminate after (tn+1)/4 terms")
    notes.append("terminates naturally after (tn+1)/4")
    rhs = [cf_prod([qpow(-tn - 1), T_factor(tn, b),
                    cf_div(pochhammer_many([b * Q(2), Q(2) / b], 4, m), pochhammer_many([Q(-1), Q(1)], 4, m))])]
    return IdentityInstance(IdentityKind.PHI43_T, {"n": n, "t": t, "b": str(b)}, n, lhs, rhs,
                            None if q_val is None else Fraction(q_val), notes)


def _random_param(rng: random.Random) -> Fraction:
    num = rng.randint(2, 29) * rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, 9))


def _draw(rng: random.Random, build, arity: int, m: int) -> IdentityInstance:
    while True:
        try:
            return build(*(_random_param(rng) for _ in range(arity)), m)
        except ZeroDivisionError:
            continue


def identity_corpus(kind: IdentityKind | str, seed: int = 0, per_m: int = 10,
                    max_m: int = 6) -> list[IdentityInstance]:
    """Deterministic batch of admissible instances of one identity family.

    Watson and Pfaff get `per_m` random rational tuples for each m <= max_m; Watson also
    gets the base-q^4 specialisation used for the 8k+1 sums.  The 4phi3 family runs
    over odd n <= 13 with three b values each.
    """
    kind = IdentityKind(kind)
    rng = random.Random(seed)
    out: list[IdentityInstance] = []
    if kind is IdentityKind.PHI43_T:
        for n in range(1, 14, 2):
            t = 1 if n % 4 == 3 else 3
            for b in (Fraction(2), Fraction(-3, 5), _random_param(rng)):
                out.append(phi43_T_sides(n, t, b))
        return out
    build, arity = (watson_sides, 5) if kind is IdentityKind.WATSON else (pfaff_sides, 3)
    for m in range(max_m + 1):
        out.extend(_draw(rng, build, arity, m) for _ in range(per_m))
    if kind is IdentityKind.WATSON:
        for tn in (5, 13, 21):
            for beta in (Fraction(2), _random_param(rng)):
                out.append(watson_sides(Q(1), Q(2), Q(1 + tn), Q(1) * beta, Q(1) / beta,
                                        (tn - 1) // 4, step=4))
    return out


# --- classical (q = 1) sums -------------------------------------------------------------

class ClassicalKind(enum.Enum):
    PLUS_LHS = "plus_lhs"
    PLUS_RHS = "plus_rhs"
    MINUS_LHS = "minus_lhs"
    MINUS_RHS = "minus_rhs"
    VAN_HAMME = "van_hamme"
    CONJ_LHS = "conj_lhs"
    CONJ_RHS = "conj_rhs"


def rising(x: Fraction, k: int) -> Fraction:
    """(x)_k = x (x+1) ... (x+k-1)."""
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def classical_sum(kind: ClassicalKind | str, p: int, r: int = 1) -> Fraction:
    kind = ClassicalKind(kind) if isinstance(kind, str) else kind
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    h, qt, tq = Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)
    if kind in (ClassicalKind.PLUS_LHS, ClassicalKind.CONJ_LHS):
        count = p if kind is ClassicalKind.PLUS_LHS else p ** r
        # (1/4)_k^5 (1/2)_k / ((3/4)_k k!^5), weighted by 8k+1
        total = Fraction(0)
        u = Fraction(1)
        for k in range(count):
            total += (8 * k + 1) * u
            u *= (qt + k) ** 5 * (h + k) / ((tq + k) * Fraction(k + 1) ** 5)
        return total
    if kind is ClassicalKind.PLUS_RHS:
        if p % 4 == 3:
            return Fraction(0)
        m = (p - 1) // 4
        return p * rising(h, m) ** 2 / Fraction(rising(Fraction(1), m)) ** 2
    if kind is ClassicalKind.MINUS_LHS:
        if p <= 3:
            raise ValueError("the 8k-1 corollary needs p > 3")
        total = Fraction(0)
        u = Fraction(1)
        for k in range(p):
            total += (8 * k - 1) * u
            u *= (h + k) * (-qt + k) ** 5 / ((qt + k) * Fraction(k + 1) ** 5)
        return total
    if kind is ClassicalKind.MINUS_RHS:
        if p <= 3:
            raise ValueError("the 8k-1 corollary needs p > 3")
        if p % 4 == 1:
            return Fraction(0)
        m = (p + 1) // 4
        return Fraction(5 * p * (p - 3)) * rising(h, m) ** 2 / ((7 * p - 3) * rising(Fraction(1), m) ** 2)
    if kind is ClassicalKind.VAN_HAMME:
        total = Fraction(0)
        u = Fraction(1)
        for k in range((p - 1) // 2 + 1):
            total += (4 * k + 1) * u
            u *= (h + k) ** 4 / Fraction(k + 1) ** 4
        return total
    if kind is ClassicalKind.CONJ_RHS:
        n = p ** r
        total = Fraction(0)
        u = Fraction(1)
        for k in range(n):
            total += u
            u *= (h + k) ** 3 / Fraction(k + 1) ** 3
        return n * total
    raise ValueError(f"unknown kind {kind}")
