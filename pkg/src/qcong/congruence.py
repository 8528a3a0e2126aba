"""Congruence decisions for factored sums.

Three verdict states: PASS, FAIL and ILL_POSED (a denominator shares a factor
with the modulus, so the congruence has no meaning).

Cyclotomic moduli are decided locally: for each Phi_d**m the sum is mapped into
Q[q]/(Phi_d**K), with K just large enough to see whether its Phi_d-adic
valuation reaches m.  Parametric moduli are decided by exact substitution plus
interpolation-complete sampling of the remaining parameter(s).
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import _intpoly as ip
from .arith import (
    LaurentPoly, RatFun, UniPoly, cyclotomic, cyclotomic_ints, divisors, poly_divrem,
    poly_gcd, poly_inverse_mod, poly_xgcd, q_integer,
)
from .qfactor import (
    CycloFactored, Mon, cf_div, cf_mul, const, evaluate,
    mon, param_factors, poly_phi_valuation, sum_is_zero, sum_to_ratfun,
)

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    ILL_POSED = "ill-posed"


def combine_status(statuses: Iterable[Status]) -> Status:
    statuses = list(statuses)
    if Status.FAIL in statuses:
        return Status.FAIL
    if Status.ILL_POSED in statuses:
        return Status.ILL_POSED
    return Status.PASS


def digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


# --- moduli ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamRoot:
    """The linear factor of a parameter that vanishes at param = q**q_exp.

    q_exp < 0 stands for (1 - param q^|q_exp|), q_exp > 0 for (param - q^q_exp).
    """

    param: str
    q_exp: int

    def label(self) -> str:
        e = abs(self.q_exp)
        if self.q_exp < 0:
            return f"(1 - {self.param}·q^{e})"
        return f"({self.param} - q^{e})"

    def value(self) -> Mon:
        return mon(1, self.q_exp)

    def poly(self, val: Fraction) -> UniPoly:
        """The factor with the parameter set to a rational value, as a polynomial in q."""
        e = abs(self.q_exp)
        if self.q_exp < 0:
            return UniPoly([1] + [0] * (e - 1) + [-val])
        return UniPoly([val] + [0] * (e - 1) + [-1])


@dataclass(frozen=True)
class ModFactor:
    kind: str  # "cyclotomic" | "qint" | "atom" | "poly"
    value: object
    multiplicity: int = 1

    def label(self) -> str:
        sup = "" if self.multiplicity == 1 else str(self.multiplicity).translate(_SUP)
        if self.kind == "cyclotomic":
            return f"Φ{str(self.value).translate(_SUB)}(q){sup}"
        if self.kind == "qint":
            return f"[{self.value}]{sup}"
        if self.kind == "atom":
            return f"{self.value.label()}{sup}"
        return f"({self.value}){sup}"


@dataclass(frozen=True)
class Modulus:
    factors: tuple[ModFactor, ...]

    @classmethod
    def of(cls, *factors: ModFactor) -> "Modulus":
        return cls(tuple(factors))

    def __str__(self):
        return "·".join(f.label() for f in self.factors) or "1"

    def cyclotomic_exponents(self) -> dict[int, int]:
        """Merged Phi_d exponents of the product ([n] contributes Phi_d for d | n, d > 1)."""
        out: dict[int, int] = {}
        for f in self.factors:
            if f.kind == "cyclotomic":
                out[f.value] = out.get(f.value, 0) + f.multiplicity
            elif f.kind == "qint":
                for d in divisors(f.value)[1:]:
                    out[d] = out.get(d, 0) + f.multiplicity
        return out

    def param_roots(self) -> list[tuple[ParamRoot, int]]:
        return [(f.value, f.multiplicity) for f in self.factors if f.kind == "atom"]

    def poly_factors(self) -> list[tuple[UniPoly, int]]:
        return [(f.value, f.multiplicity) for f in self.factors if f.kind == "poly"]

    def as_poly(self) -> UniPoly:
        """The modulus as one polynomial in q (parameter factors are not allowed)."""
        out = UniPoly([1])
        for d, e in self.cyclotomic_exponents().items():
            out = out * cyclotomic(d) ** e
        for p, e in self.poly_factors():
            out = out * p ** e
        if self.param_roots():
            raise ValueError("parametric factors have no univariate polynomial form")
        return out


def cyclo_mod(n: int, e: int = 1) -> ModFactor:
    return ModFactor("cyclotomic", n, e)


def qint_mod(n: int, e: int = 1) -> ModFactor:
    return ModFactor("qint", n, e)


def head_modulus(n: int) -> Modulus:
    """[n]·Phi_n(q)^2."""
    return Modulus.of(qint_mod(n), cyclo_mod(n, 2))


def four_atom_modulus(tn: int) -> list[ModFactor]:
    return [ModFactor("atom", ParamRoot("a", -tn)), ModFactor("atom", ParamRoot("a", tn)),
            ModFactor("atom", ParamRoot("b", -tn)), ModFactor("atom", ParamRoot("b", tn))]


# --- verdicts ---------------------------------------------------------------------------

@dataclass
class CongruenceVerdict:
    theorem: str
    instance: dict
    modulus: str
    status: Status
    witness: str
    notes: list[str] = field(default_factory=list)
    parts: list["CongruenceVerdict"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "modulus": self.modulus,
            "status": self.status.value,
            "witness": self.witness,
            "notes": list(self.notes),
            "parts": [p.to_dict() for p in self.parts],
        }

    def failures(self) -> list["CongruenceVerdict"]:
        """Leaf verdicts that did not pass."""
        if not self.parts:
            return [] if self.passed else [self]
        out = []
        for p in self.parts:
            out.extend(p.failures())
        return out


def make_verdict(theorem: str, instance: dict, modulus, status: Status, evidence,
                 notes: Sequence[str] = (), parts: Sequence[CongruenceVerdict] = ()) -> CongruenceVerdict:
    mod = str(modulus)
    wit = digest({"theorem": theorem, "instance": instance, "modulus": mod,
                  "status": status.value, "evidence": evidence,
                  "parts": [p.witness for p in parts]})
    return CongruenceVerdict(theorem, dict(instance), mod, status, wit, list(notes), list(parts))


def group_verdict(theorem: str, instance: dict, modulus, parts: Sequence[CongruenceVerdict],
                  notes: Sequence[str] = ()) -> CongruenceVerdict:
    return make_verdict(theorem, instance, modulus, combine_status(p.status for p in parts),
                        "group", notes, parts)


# --- local arithmetic modulo Phi_d^K ----------------------------------------------------------

class PhiPowerRing:
    """Integer polynomials reduced modulo the monic Phi_d(q)**K.

    Rational residues are kept as fractions N/D of integer residues with D a
    unit, so no inverse is ever formed: D only collects factors coprime to Phi_d.
    """

    def __init__(self, d: int, K: int):
        self.d, self.K = d, K
        self.phi = list(cyclotomic_ints(d))
        self.mod = ip.power(self.phi, K)
        self._res: dict = {}
        self._phi_pows = [[1]]
        for _ in range(1, K):
            self._phi_pows.append(self.mul(self._phi_pows[-1], self.phi))

    def reduce(self, ints: list[int]) -> list[int]:
        return ip.rem_monic(ints, self.mod)

    def mul(self, x: list[int], y: list[int]) -> list[int]:
        if not x or not y:
            return []
        return ip.rem_monic(ip.mul(x, y), self.mod)

    def power(self, x: list[int], e: int) -> list[int]:
        out = [1]
        while e:
            if e & 1:
                out = self.mul(out, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return out

    def factor(self, key, ints_fn, exp: int) -> list[int]:
        """Residue of factor**exp (exp >= 0), the factor's residue cached under key."""
        base = self._res.get(key)
        if base is None:
            base = self._res[key] = self.reduce(ints_fn())
        return self.power(base, exp)

    def phi_power(self, j: int) -> list[int]:
        return self._phi_pows[j] if j < self.K else []

    def valuation(self, vec: list[int]) -> int:
        """Phi_d-adic valuation of a nonzero residue (< K)."""
        v = 0
        while v < self.K:
            nxt = ip.divexact(vec, self.phi)
            if nxt is None:
                break
            vec, v = nxt, v + 1
        return v


def _normalize_pair(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = ip.trim(num)
    if not num:
        return [], [1]
    g = math.gcd(ip.content(num), ip.content(den))
    if g > 1:
        num = [c // g for c in num]
        den = [c // g for c in den]
    return num, den


def term_valuation(t: CycloFactored, d: int) -> int:
    v = dict(t.cyclo).get(d, 0)
    for tp, e in t.polys:
        v += e * poly_phi_valuation(tp, d)
    return v


def _unit_residue(ring: PhiPowerRing, t: CycloFactored) -> tuple[list[int], list[int]]:
    """(N, D) with t / Phi_d**v(t) = N/D modulo Phi_d**K and D a unit (t parameter-free, nonzero)."""
    d = ring.d
    num, den = [1], [1]
    coeff = Fraction(t.coeff)

    def put(res, e):
        nonlocal num, den
        if e > 0:
            num = ring.mul(num, res(e))
        elif e < 0:
            den = ring.mul(den, res(-e))

    put(lambda e: ring.factor("q", lambda: [0, 1], e), t.q_shift)
    for e_idx, e in t.cyclo:
        if e_idx != d:
            put(lambda x, e_idx=e_idx: ring.factor(("c", e_idx), lambda: list(cyclotomic_ints(e_idx)), x), e)
    for tp, e in t.polys:
        coeff *= tp.q_scale() ** e
        v = poly_phi_valuation(tp, d)

        def ints(tp=tp, v=v):
            x = tp.q_ints()
            for _ in range(v):
                x = ip.divexact(x, ring.phi)
            return x

        put(lambda x, tp=tp, ints=ints: ring.factor(("p", tp), ints, x), e)
    num = ip.scale(num, coeff.numerator)
    den = ip.scale(den, coeff.denominator)
    return _normalize_pair(num, den)


@dataclass
class LocalResult:
    status: Status
    valuation: float  # total Phi_d-adic valuation of the sum (inf when it reaches m)
    residue: str  # digest of the residue class when it does not vanish


def local_check(terms: Sequence[CycloFactored], d: int, m: int) -> LocalResult:
    """Decide whether Phi_d(q)**m divides the (reduced) numerator of sum(terms).

    With v0 the least term valuation, K = m - v0 and u_t the unit part of term t,
    the sum is Phi_d**v0 * sum(Phi_d**(v_t - v0) u_t); only that inner sum modulo
    Phi_d**K matters.  Consecutive unit parts are updated by the factor-wise ratio
    of the terms, which is small for hypergeometric summands.
    """
    live = [t for t in terms if not t.is_zero()]
    if not live:
        return LocalResult(Status.PASS, math.inf, "")
    if any(t.has_params() for t in live):
        raise ValueError("local_check needs parameter-free terms")
    vals = [term_valuation(t, d) for t in live]
    v0 = min(vals)
    if v0 >= m:
        return LocalResult(Status.PASS, math.inf, "")
    K = m - v0
    ring = PhiPowerRing(d, K)
    s_num: list[int] = []
    s_den: list[int] = [1]
    prev_t = None
    u_num = u_den = None
    for t, v in zip(live, vals):
        if v - v0 >= K:
            continue
        if prev_t is None:
            u_num, u_den = _unit_residue(ring, t)
        else:
            dn, dd = _unit_residue(ring, cf_div(t, prev_t))
            u_num, u_den = _normalize_pair(ring.mul(u_num, dn), ring.mul(u_den, dd))
        prev_t = t
        # s += phi^j * u_num / u_den
        add = ring.mul(ring.phi_power(v - v0), u_num)
        s_num = ip.add(ring.mul(s_num, u_den), ring.mul(add, s_den)) if s_num else ring.mul(add, [1])
        s_den = ring.mul(s_den, u_den)
        s_num, s_den = _normalize_pair(s_num, s_den)
        if not s_num:
            s_den = [1]
    if not s_num:
        return LocalResult(Status.PASS, math.inf, "")
    w = v0 + ring.valuation(s_num)
    res = digest(s_num)
    return LocalResult(Status.ILL_POSED if w < 0 else Status.FAIL, w, res)


def negate(terms: Iterable[CycloFactored]) -> list[CycloFactored]:
    return [cf_mul(const(-1), t) for t in terms]


def congruent_zero(terms: Sequence[CycloFactored], modulus: Modulus, theorem: str = "",
                   instance: dict | None = None, notes: Sequence[str] = ()) -> CongruenceVerdict:
    """Verdict for sum(terms) = 0 modulo a parameter-free modulus."""
    instance = instance or {}
    parts = []
    for d, m in sorted(modulus.cyclotomic_exponents().items()):
        r = local_check(terms, d, m)
        label = Modulus.of(cyclo_mod(d, m))
        ev = {"d": d, "m": m, "valuation": str(r.valuation), "residue": r.residue}
        note = [] if r.status is Status.PASS else [f"Phi_{d}-adic valuation {r.valuation} < {m}"]
        parts.append(make_verdict(theorem, instance, label, r.status, ev, note))
    polys = modulus.poly_factors()
    if polys:
        pm = Modulus(tuple(ModFactor("poly", p, e) for p, e in polys))
        parts.append(ratfun_congruent_zero(sum_to_ratfun(terms), pm, theorem, instance))
    return group_verdict(theorem, instance, modulus, parts, notes)


def congruent(lhs: Sequence[CycloFactored], rhs: Sequence[CycloFactored], modulus: Modulus,
              theorem: str = "", instance: dict | None = None,
              notes: Sequence[str] = ()) -> CongruenceVerdict:
    """A = B (mod M) decided as A - B = 0 (mod M)."""
    return congruent_zero(list(lhs) + negate(rhs), modulus, theorem, instance, notes)


def ratfun_congruent_zero(x, modulus: Modulus, theorem: str = "",
                          instance: dict | None = None) -> CongruenceVerdict:
    """Verdict for a rational function (or Laurent polynomial) being 0 modulo a univariate modulus."""
    instance = instance or {}
    if isinstance(x, LaurentPoly):
        x = x.to_ratfun()
    elif isinstance(x, UniPoly):
        x = RatFun(x)
    M = modulus.as_poly()
    if x.is_zero():
        return make_verdict(theorem, instance, modulus, Status.PASS, {"numerator": "0"})
    # q-powers are units modulo every factor with nonzero constant term
    num, den = x.num, x.den
    if M.degree == 0:
        return make_verdict(theorem, instance, modulus, Status.PASS, {"modulus": "unit"})
    g = poly_gcd(den, M)
    if g.degree > 0:
        return make_verdict(theorem, instance, modulus, Status.ILL_POSED,
                            {"common_factor": str(g)},
                            [f"denominator shares the factor {g} with the modulus"])
    quo, rem = poly_divrem(num, M)
    if rem.is_zero():
        return make_verdict(theorem, instance, modulus, Status.PASS,
                            {"quotient": digest([str(c) for c in quo.coeffs])})
    return make_verdict(theorem, instance, modulus, Status.FAIL,
                        {"residue": digest([str(c) for c in rem.coeffs])},
                        [f"nonzero residue of degree {rem.degree}"])


# --- polynomial CRT ------------------------------------------------------------------------

def poly_crt(r1: UniPoly, M1: UniPoly, r2: UniPoly, M2: UniPoly) -> UniPoly:
    """The unique R mod M1*M2 with R = r1 (mod M1) and R = r2 (mod M2)."""
    g, s, t = poly_xgcd(M1, M2)
    if g.degree != 0:
        raise ValueError("CRT moduli must be coprime")
    R = r1 * t * M2 + r2 * s * M1
    return R % (M1 * M2)


def ratfun_residue(x: RatFun, M: UniPoly) -> UniPoly:
    """num * den^{-1} mod M for a denominator coprime to M."""
    return (x.num * poly_inverse_mod(x.den, M)) % M


# --- interpolation-complete parametric engine ----------------------------------------------------

def primes() -> Iterator[int]:
    found: list[int] = []
    n = 2
    while True:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n
        n += 1


def point_stream(param: str, seed: int = 0) -> Iterator[Fraction]:
    """Deterministic evaluation points: a takes the primes at even positions from `seed`, b the odd ones."""
    offset = 0 if param == "a" else 1
    for i, p in enumerate(primes()):
        if i >= seed and (i - seed) % 2 == offset:
            yield Fraction(p)


def params_in(terms: Sequence[CycloFactored]) -> list[str]:
    present = set()
    for t in terms:
        if t.a_pow:
            present.add("a")
        if t.b_pow:
            present.add("b")
        for f in param_factors(t):
            if f.range("a") != (0, 0):
                present.add("a")
            if f.range("b") != (0, 0):
                present.add("b")
    return sorted(present)


def degree_bound(terms: Sequence[CycloFactored], which: str, slack: int = 2) -> int:
    """Upper bound on the `which`-span of the numerator of sum(terms) over the common denominator.

    The common denominator L takes, for every parameter-dependent factor, the
    largest denominator exponent over all terms; term t then contributes
    N_t * L / L_t, whose exponent range is the sum of its factor ranges.
    """
    live = [t for t in terms if not t.is_zero()]
    L: dict = {}
    for t in live:
        for f, e in param_factors(t).items():
            if e < 0:
                L[f] = max(L.get(f, 0), -e)
    lo_all, hi_all = math.inf, -math.inf
    for t in live:
        pf = param_factors(t)
        lo = hi = t.a_pow if which == "a" else t.b_pow
        mult = dict(L)
        for f, e in pf.items():
            mult[f] = mult.get(f, 0) + e
        for f, e in mult.items():
            if e:
                flo, fhi = f.range(which)
                lo += e * flo
                hi += e * fhi
        lo_all, hi_all = min(lo_all, lo), max(hi_all, hi)
    if not live:
        return slack
    return int(hi_all - lo_all) + slack


def _eval_all(terms: Sequence[CycloFactored], a, b) -> list[CycloFactored]:
    return [evaluate(t, a, b) for t in terms]


def _draw(stream: Iterator[Fraction], count: int, ok, limit: int = 1000) -> tuple[list[Fraction], int]:
    """First `count` values of the stream accepted by ok(); returns (values, skipped)."""
    out: list[Fraction] = []
    skipped = 0
    while len(out) < count:
        v = next(stream)
        if ok(v):
            out.append(v)
        else:
            skipped += 1
            if skipped > limit:
                raise RuntimeError("admissible point stream exhausted")
    return out, skipped


def _admissible(terms, a, b) -> bool:
    try:
        _eval_all(terms, a, b)
        return True
    except ZeroDivisionError:
        return False


def _root_check(terms, root: ParamRoot, present: list[str], bounds: dict, seed: int,
                theorem: str, instance: dict) -> CongruenceVerdict:
    """Decide divisibility by one parameter root by substituting it exactly."""
    label = Modulus.of(ModFactor("atom", root))
    sub = root.value()
    kw = {root.param: sub}
    try:
        _eval_all(terms, kw.get("a"), kw.get("b"))
    except ZeroDivisionError as exc:
        return make_verdict(theorem, instance, label, Status.ILL_POSED, {"error": str(exc)},
                            [f"a denominator vanishes identically at {root.param} = q^{root.q_exp}"])
    others = [p for p in present if p != root.param]
    if not others:
        ok = sum_is_zero(_eval_all(terms, kw.get("a"), kw.get("b")))
        return make_verdict(theorem, instance, label, Status.PASS if ok else Status.FAIL,
                            {"substitution": root.q_exp, "points": []},
                            [] if ok else ["substituted sum is not identically zero"])
    other = others[0]
    count = bounds[other] + 1

    def ok(v):
        kw2 = dict(kw)
        kw2[other] = v
        return _admissible(terms, kw2.get("a"), kw2.get("b"))

    pts, skipped = _draw(point_stream(other, seed), count, ok)
    assert len(pts) > bounds[other], "interpolation needs more points than the degree bound"
    for v in pts:
        kw2 = dict(kw)
        kw2[other] = v
        if not sum_is_zero(_eval_all(terms, kw2.get("a"), kw2.get("b"))):
            return make_verdict(theorem, instance, label, Status.FAIL,
                                {"substitution": root.q_exp, "point": str(v)},
                                [f"nonzero at {other} = {v} after {root.param} = q^{root.q_exp}"])
    return make_verdict(theorem, instance, label, Status.PASS,
                        {"substitution": root.q_exp, "points": [str(v) for v in pts]},
                        [f"{other}-degree bound {bounds[other]}, {len(pts)} points, {skipped} skipped"])


def _grid(terms, present: list[str], bounds: dict, seed: int):
    """Admissible product grid as (point, evaluated terms) pairs.

    A value of the last parameter is replaced whenever any pair containing it
    is inadmissible, so the grid stays a full product of distinct values.
    """
    if not present:
        return [({}, list(terms))]

    def evals(pt):
        try:
            return _eval_all(terms, pt.get("a"), pt.get("b"))
        except ZeroDivisionError:
            return None

    first = present[0]
    if len(present) == 1:
        out = []
        stream = point_stream(first, seed)
        skipped = 0
        while len(out) <= bounds[first]:
            pt = {first: next(stream)}
            vals = evals(pt)
            if vals is None:
                skipped += 1
                if skipped > 1000:
                    raise RuntimeError("admissible point stream exhausted")
                continue
            out.append((pt, vals))
        return out
    second = present[1]
    firsts, _ = _draw(point_stream(first, seed), bounds[first] + 1, lambda v: True)
    out = []
    stream = point_stream(second, seed)
    accepted = skipped = 0
    while accepted <= bounds[second]:
        v = next(stream)
        column = []
        for u in firsts:
            pt = {first: u, second: v}
            vals = evals(pt)
            if vals is None:
                break
            column.append((pt, vals))
        if len(column) < len(firsts):
            skipped += 1
            if skipped > 1000:
                raise RuntimeError("admissible point stream exhausted")
            continue
        out.extend(column)
        accepted += 1
    return out


def _cyclo_grid_check(terms, d: int, m: int, present: list[str], bounds: dict, seed: int,
                      theorem: str, instance: dict) -> CongruenceVerdict:
    label = Modulus.of(cyclo_mod(d, m))
    grid = _grid(terms, present, bounds, seed)
    for p in present:
        assert len({pt[p] for pt, _ in grid}) > bounds[p], "grid smaller than the degree bound"
    evidence = []
    for pt, vals in grid:
        r = local_check(vals, d, m)
        if r.status is not Status.PASS:
            return make_verdict(theorem, instance, label, r.status,
                                {"point": {k: str(v) for k, v in pt.items()}, "residue": r.residue},
                                [f"Phi_{d}-adic valuation {r.valuation} < {m} at "
                                 + ", ".join(f"{k} = {v}" for k, v in pt.items())])
        evidence.append({k: str(v) for k, v in pt.items()})
    shape = "x".join(str(bounds[p] + 1) for p in present) or "1"
    return make_verdict(theorem, instance, label, Status.PASS, {"grid": evidence},
                        [f"grid {shape} over {', '.join(present) or 'no parameters'}"])


def parametric_congruent_zero(terms: Sequence[CycloFactored], modulus: Modulus, theorem: str = "",
                              instance: dict | None = None, seed: int = 0,
                              notes: Sequence[str] = ()) -> CongruenceVerdict:
    """Verdict for sum(terms) = 0 modulo a product of parameter roots and cyclotomic powers.

    Parameter-root factors are handled by exact substitution followed by
    (bound+1)-point interpolation in the remaining parameter; cyclotomic factors
    by a (bound_a+1) x (bound_b+1) grid of rational parameter values.
    """
    instance = instance or {}
    terms = [t for t in terms if not t.is_zero()]
    present = params_in(terms)
    bounds = {p: degree_bound(terms, p) for p in present}
    parts = []
    for root, mult in modulus.param_roots():
        if mult != 1:
            raise ValueError("parameter roots must be simple")
        parts.append(_root_check(terms, root, present, bounds, seed, theorem, instance))
    for d, m in sorted(modulus.cyclotomic_exponents().items()):
        parts.append(_cyclo_grid_check(terms, d, m, present, bounds, seed, theorem, instance))
    extra = [f"degree bounds {bounds}"] if bounds else []
    return group_verdict(theorem, instance, modulus, parts, list(notes) + extra)


# --- structural checks ------------------------------------------------------------------------

def lcm_identity_check(n: int) -> CongruenceVerdict:
    """lcm(Phi_n^3, [n]) == [n] Phi_n^2, checked through factorizations and through polynomial gcds."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    from .arith import poly_lcm
    phi = cyclotomic(n)
    qn = q_integer(n)
    target = qn * phi ** 2
    by_poly = poly_lcm(phi ** 3, qn)
    exps = {d: 1 for d in divisors(n)[1:]}
    exps[n] = max(exps.get(n, 0), 3)
    by_factors = UniPoly([1])
    for d, e in exps.items():
        by_factors = by_factors * cyclotomic(d) ** e
    ok = by_poly == target.monic() and by_factors == target
    return make_verdict("lcm", {"n": n}, Modulus.of(qint_mod(n), cyclo_mod(n, 2)),
                        Status.PASS if ok else Status.FAIL,
                        {"lcm": digest([str(c) for c in by_poly.coeffs])},
                        [] if ok else ["lcm differs from [n]·Phi_n(q)^2"])


def crt_weight_check(n: int, t: int | None = None, pairs: Sequence[tuple] | None = None,
                     seed: int = 0, count: int = 5) -> CongruenceVerdict:
    """Check the two CRT weights and the residue they reconstruct.

    Symbolically: w(a, b) = 1 and w(b, a) = 0 modulo (1 - a q^tn)(a - q^tn), and the
    mirror statements in b, each by exact substitution of the root.  Numerically,
    at rational (a, b) pairs: the weights modulo the specialised two-factor moduli,
    and poly_crt of the single closed forms against the combined right-hand side.
    """
    from .qseries import A, B, crt_weight, rhs_plus_param_terms, single_closed_form_plus, theorem_t

    if t is None:
        t = theorem_t(n, "plus")[0]
    tn = t * n
    inst = {"n": n, "t": t}
    parts = []
    one = [const(-1)]
    for param, w_one, w_zero in (("a", crt_weight(A, B, tn), crt_weight(B, A, tn)),
                                 ("b", crt_weight(B, A, tn), crt_weight(A, B, tn))):
        roots = Modulus.of(ModFactor("atom", ParamRoot(param, -tn)), ModFactor("atom", ParamRoot(param, tn)))
        parts.append(parametric_congruent_zero([w_one] + one, roots, "crt-weight",
                                               dict(inst, weight=f"unit at {param}-roots"), seed=seed))
        parts.append(parametric_congruent_zero([w_zero], roots, "crt-weight",
                                               dict(inst, weight=f"zero at {param}-roots"), seed=seed))
    if pairs is None:
        a_s, b_s = point_stream("a", seed), point_stream("b", seed)
        pairs = [(next(a_s), next(b_s)) for _ in range(count)]
    for a0, b0 in pairs:
        a0, b0 = Fraction(a0), Fraction(b0)
        pinst = dict(inst, a=str(a0), b=str(b0))
        Ma = ParamRoot("a", -tn).poly(a0) * ParamRoot("a", tn).poly(a0)
        Mb = ParamRoot("b", -tn).poly(b0) * ParamRoot("b", tn).poly(b0)
        ma = Modulus.of(ModFactor("poly", Ma))
        mb = Modulus.of(ModFactor("poly", Mb))
        w_ab = sum_to_ratfun([evaluate(crt_weight(A, B, tn), a0, b0)] + one)
        w_ba = sum_to_ratfun([evaluate(crt_weight(B, A, tn), a0, b0)] + one)
        parts.append(ratfun_congruent_zero(w_ab, ma, "crt-weight", dict(pinst, weight="unit mod M_a")))
        parts.append(ratfun_congruent_zero(w_ba, mb, "crt-weight", dict(pinst, weight="unit mod M_b")))
        r1 = ratfun_residue(sum_to_ratfun([single_closed_form_plus(tn, b0)]), Ma)
        r2 = ratfun_residue(sum_to_ratfun([single_closed_form_plus(tn, a0)]), Mb)
        R = poly_crt(r1, Ma, r2, Mb)
        combined = sum_to_ratfun(rhs_plus_param_terms(n, a0, b0, t))
        parts.append(ratfun_congruent_zero(combined - RatFun(R), Modulus.of(ModFactor("poly", Ma * Mb)),
                                           "crt-weight", dict(pinst, check="CRT reconstruction")))
    modulus = Modulus(tuple(four_atom_modulus(tn)))
    return group_verdict("crt-weight", inst, modulus, parts)
