"""Factored q-products.

A :class:`CycloFactored` value is

    coeff * q**q_shift * a**a_pow * b**b_pow * prod Phi_d(q)**e_d
          * prod (1 - a**i b**j q**k)**e * prod P(q, a, b)**e

with pure-q binomials always split into cyclotomic polynomials, parametric
binomials ``1 - a**i b**j q**k`` (i, j in {-1, 0, 1}) kept as :class:`Atom`, and
anything else kept as a canonical sparse :class:`TriPoly`.  Every value is
immutable and has a unique representation, so identical factors cancel by
exponent arithmetic alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from . import _intpoly as ip
from .arith import RatFun, UniPoly, cyclotomic_ints, divisors


class InadmissibleError(ZeroDivisionError):
    """A denominator factor vanishes at the requested parameter values."""


# --- monomials ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Mon:
    """coef * q**q * a**a * b**b with coef a nonzero rational."""

    coef: Fraction
    q: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if not isinstance(self.coef, Fraction):
            object.__setattr__(self, "coef", Fraction(self.coef))
        if not self.coef:
            raise ValueError("a monomial needs a nonzero coefficient")

    def __mul__(self, other):
        if isinstance(other, Mon):
            return Mon(self.coef * other.coef, self.q + other.q, self.a + other.a, self.b + other.b)
        return Mon(self.coef * other, self.q, self.a, self.b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Mon):
            return Mon(self.coef / other.coef, self.q - other.q, self.a - other.a, self.b - other.b)
        return Mon(self.coef / other, self.q, self.a, self.b)

    def __neg__(self):
        return Mon(-self.coef, self.q, self.a, self.b)

    def __pow__(self, e: int):
        return Mon(self.coef ** e, self.q * e, self.a * e, self.b * e)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, self.a, self.b)

    def has_params(self) -> bool:
        return bool(self.a or self.b)

    def subst(self, a_val: "Mon | None", b_val: "Mon | None") -> "Mon":
        out = Mon(self.coef, self.q, 0 if a_val is not None else self.a,
                  0 if b_val is not None else self.b)
        if a_val is not None and self.a:
            out = out * a_val ** self.a
        if b_val is not None and self.b:
            out = out * b_val ** self.b
        return out

    def numeric(self, q, a=None, b=None) -> Fraction:
        v = self.coef * Fraction(q) ** self.q
        if self.a:
            v *= Fraction(a) ** self.a
        if self.b:
            v *= Fraction(b) ** self.b
        return v

    def __str__(self):
        parts = [] if self.coef == 1 else [str(self.coef)]
        for name, e in (("q", self.q), ("a", self.a), ("b", self.b)):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) or "1"


def mon(c: Union[int, Fraction] = 1, q: int = 0, a: int = 0, b: int = 0) -> Mon:
    return Mon(Fraction(c), q, a, b)


ParamValue = Union[Mon, int, Fraction, None]


def as_value(v: ParamValue) -> Mon | None:
    """Parameter values are monomials c*q**e; plain rationals mean e = 0."""
    if v is None or isinstance(v, Mon):
        if isinstance(v, Mon) and v.has_params():
            raise ValueError("parameter values may only involve q")
        return v
    return Mon(Fraction(v))


# --- atoms and sparse polynomials -------------------------------------------------

@dataclass(frozen=True, order=True, slots=True)
class Atom:
    """The factor 1 - a**a_exp * b**b_exp * q**q_exp (not pure in q)."""

    a_exp: int
    b_exp: int
    q_exp: int

    def __post_init__(self):
        if self.a_exp not in (-1, 0, 1) or self.b_exp not in (-1, 0, 1):
            raise ValueError("atom parameter exponents must lie in {-1, 0, 1}")
        if not self.a_exp and not self.b_exp:
            raise ValueError("pure-q factors belong in cyclotomic form, not atoms")

    def as_mon(self) -> Mon:
        return Mon(Fraction(1), self.q_exp, self.a_exp, self.b_exp)

    def range(self, which: str) -> tuple[int, int]:
        e = self.a_exp if which == "a" else self.b_exp
        return (min(0, e), max(0, e))

    def __str__(self):
        return f"(1 - {self.as_mon()})"


class TriPoly:
    """Sparse polynomial in q, a, b stored in canonical form.

    Canonical means: every variable's minimal exponent is 0, and the coefficient
    of the smallest key is 1.  Two polynomials differing by a monomial factor
    therefore share one canonical TriPoly.
    """

    __slots__ = ("terms", "_hash", "_ints")

    def __init__(self, terms: tuple[tuple[tuple[int, int, int], Fraction], ...]):
        self.terms = terms
        self._hash = hash(terms)
        self._ints = None

    def __eq__(self, other):
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __lt__(self, other):
        return self.terms < other.terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TriPoly({self})"

    def __str__(self):
        out = []
        for (qe, ae, be), c in self.terms:
            m = Mon(c, qe, ae, be)
            out.append(str(m))
        return " + ".join(out)

    def is_pure(self) -> bool:
        return all(not k[1] and not k[2] for k, _ in self.terms)

    def range(self, which: str) -> tuple[int, int]:
        i = 1 if which == "a" else 2
        vals = [k[i] for k, _ in self.terms]
        return (min(vals), max(vals))

    def q_ints(self) -> list[int]:
        """Coefficient list (index = q exponent) of a pure polynomial, scaled to coprime integers."""
        if self._ints is None:
            if not self.is_pure():
                raise ValueError("q_ints needs a polynomial free of a and b")
            den = 1
            for _, c in self.terms:
                den = den * c.denominator // math.gcd(den, c.denominator)
            out = [0] * (self.terms[-1][0][0] + 1)
            for (qe, _, _), c in self.terms:
                out[qe] = int(c * den)
            self._ints = ip.primitive(out)[1]
        return self._ints

    def q_scale(self) -> Fraction:
        """self == q_scale() * q_ints() as polynomials."""
        ints = self.q_ints()
        for (qe, _, _), c in self.terms:
            return c / ints[qe]

    def subst(self, a_val: Mon | None, b_val: Mon | None) -> dict:
        out: dict[tuple[int, int, int], Fraction] = {}
        for (qe, ae, be), c in self.terms:
            m = Mon(c, qe, ae, be).subst(a_val, b_val)
            out[m.key] = out.get(m.key, Fraction(0)) + m.coef
        return out

    def numeric(self, q, a=None, b=None) -> Fraction:
        return sum((Mon(c, *k).numeric(q, a, b) for k, c in self.terms), Fraction(0))


def _normalize_terms(terms: dict) -> tuple[Mon, TriPoly]:
    """Split a sum of at least two monomials into (monomial, canonical TriPoly)."""
    lo = tuple(min(k[i] for k in terms) for i in range(3))
    shifted = {(k[0] - lo[0], k[1] - lo[1], k[2] - lo[2]): c for k, c in terms.items()}
    first = min(shifted)
    lead = shifted[first]
    body = tuple(sorted((k, c / lead) for k, c in shifted.items()))
    return Mon(lead, *lo), TriPoly(body)


# --- the factored value ------------------------------------------------------------

def _items(d: dict) -> tuple:
    return tuple(sorted((k, v) for k, v in d.items() if v))


class CycloFactored:
    """Immutable factored q-rational value; see the module docstring."""

    __slots__ = ("coeff", "q_shift", "a_pow", "b_pow", "cyclo", "atoms", "polys", "_hash")

    def __init__(self, coeff: Union[int, Fraction] = 1, q_shift: int = 0,
                 cyclo: dict | None = None, atoms: dict | None = None,
                 polys: dict | None = None, a_pow: int = 0, b_pow: int = 0):
        coeff = Fraction(coeff)
        self.coeff = coeff
        if not coeff:
            self.q_shift = self.a_pow = self.b_pow = 0
            self.cyclo = self.atoms = self.polys = ()
        else:
            self.q_shift, self.a_pow, self.b_pow = q_shift, a_pow, b_pow
            self.cyclo = _items(cyclo or {})
            self.atoms = _items(atoms or {})
            self.polys = _items(polys or {})
        self._hash = None

    # views
    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    @property
    def scalar(self) -> Fraction:
        return abs(self.coeff)

    @property
    def atoms_num(self) -> dict:
        return {k: v for k, v in self.atoms if v > 0}

    @property
    def atoms_den(self) -> dict:
        return {k: -v for k, v in self.atoms if v < 0}

    def is_zero(self) -> bool:
        return not self.coeff

    def has_params(self) -> bool:
        return bool(self.atoms or self.a_pow or self.b_pow
                    or any(not p.is_pure() for p, _ in self.polys))

    def _key(self):
        return (self.coeff, self.q_shift, self.a_pow, self.b_pow, self.cyclo, self.atoms, self.polys)

    def __eq__(self, other):
        return isinstance(other, CycloFactored) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"CycloFactored({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = [str(self.coeff)]
        if self.q_shift:
            parts.append(f"q^{self.q_shift}")
        if self.a_pow:
            parts.append(f"a^{self.a_pow}")
        if self.b_pow:
            parts.append(f"b^{self.b_pow}")
        parts += [f"Phi{d}^{e}" if e != 1 else f"Phi{d}" for d, e in self.cyclo]
        parts += [f"{a}^{e}" if e != 1 else str(a) for a, e in self.atoms]
        parts += [f"({p})^{e}" if e != 1 else f"({p})" for p, e in self.polys]
        return " * ".join(parts)

    def __mul__(self, other):
        return cf_mul(self, other)

    def __truediv__(self, other):
        return cf_div(self, other)

    def __pow__(self, e):
        return cf_pow(self, e)


ZERO = CycloFactored(0)
ONE = CycloFactored(1)


def _merge(x: tuple, y: tuple, sign: int) -> dict:
    out = dict(x)
    for k, v in y:
        out[k] = out.get(k, 0) + sign * v
    return out


def cf_mul(x: CycloFactored, y: CycloFactored) -> CycloFactored:
    if x.is_zero() or y.is_zero():
        return ZERO
    return CycloFactored(x.coeff * y.coeff, x.q_shift + y.q_shift,
                         _merge(x.cyclo, y.cyclo, 1), _merge(x.atoms, y.atoms, 1),
                         _merge(x.polys, y.polys, 1), x.a_pow + y.a_pow, x.b_pow + y.b_pow)


def cf_div(x: CycloFactored, y: CycloFactored) -> CycloFactored:
    if y.is_zero():
        raise ZeroDivisionError("division by a zero factored value")
    if x.is_zero():
        return ZERO
    return CycloFactored(x.coeff / y.coeff, x.q_shift - y.q_shift,
                         _merge(x.cyclo, y.cyclo, -1), _merge(x.atoms, y.atoms, -1),
                         _merge(x.polys, y.polys, -1), x.a_pow - y.a_pow, x.b_pow - y.b_pow)


def cf_pow(x: CycloFactored, e: int) -> CycloFactored:
    if x.is_zero():
        if e <= 0:
            raise ZeroDivisionError("non-positive power of zero")
        return ZERO
    return CycloFactored(x.coeff ** e, x.q_shift * e,
                         {d: v * e for d, v in x.cyclo}, {k: v * e for k, v in x.atoms},
                         {k: v * e for k, v in x.polys}, x.a_pow * e, x.b_pow * e)


def cf_prod(values: Iterable[CycloFactored]) -> CycloFactored:
    coeff = Fraction(1)
    shift = ap = bp = 0
    cyclo: dict = {}
    atoms: dict = {}
    polys: dict = {}
    for x in values:
        if x.is_zero():
            return ZERO
        coeff *= x.coeff
        shift += x.q_shift
        ap += x.a_pow
        bp += x.b_pow
        for src, dst in ((x.cyclo, cyclo), (x.atoms, atoms), (x.polys, polys)):
            for k, v in src:
                dst[k] = dst.get(k, 0) + v
    return CycloFactored(coeff, shift, cyclo, atoms, polys, ap, bp)


def const(c: Union[int, Fraction]) -> CycloFactored:
    return CycloFactored(c)


def from_mon(m: Mon) -> CycloFactored:
    return CycloFactored(m.coef, m.q, a_pow=m.a, b_pow=m.b)


def qpow(e: int) -> CycloFactored:
    return CycloFactored(1, e)


def cyclo_factor(d: int, e: int = 1) -> CycloFactored:
    return CycloFactored(1, cyclo={d: e})


# --- binomials ----------------------------------------------------------------

def qpow_factor(m: int) -> CycloFactored:
    """1 - q**m in cyclotomic form."""
    if m == 0:
        raise ValueError("1 - q**0 vanishes")
    cyc = {d: 1 for d in divisors(abs(m))}
    if m > 0:
        return CycloFactored(-1, 0, cyc)
    # 1 - q**m = -q**m (1 - q**-m)
    return CycloFactored(1, m, cyc)


def q_integer_factor(n: int) -> CycloFactored:
    """[n] = (1 - q**n)/(1 - q) for any nonzero integer n."""
    return cf_div(qpow_factor(n), qpow_factor(1))


def _poly_factor(terms: dict) -> CycloFactored:
    lead, tp = _normalize_terms(terms)
    return CycloFactored(lead.coef, lead.q, polys={tp: 1}, a_pow=lead.a, b_pow=lead.b)


def one_minus(m: Mon) -> CycloFactored:
    """1 - m in canonical factored form (ZERO when it vanishes)."""
    c = m.coef
    if not m.has_params():
        if m.q == 0:
            return const(1 - c)
        if c == 1:
            return qpow_factor(m.q)
        if c == -1:
            return cf_div(qpow_factor(2 * m.q), qpow_factor(m.q))
        return _poly_factor({(0, 0, 0): Fraction(1), m.key: -c})
    if c == 1 and abs(m.a) <= 1 and abs(m.b) <= 1:
        lead = next(e for e in (m.a, m.b) if e)
        if m.q < 0 or (m.q == 0 and lead < 0):
            # 1 - X = -X (1 - 1/X)
            return CycloFactored(-1, m.q, atoms={Atom(-m.a, -m.b, -m.q): 1}, a_pow=m.a, b_pow=m.b)
        return CycloFactored(1, atoms={Atom(m.a, m.b, m.q): 1})
    return _poly_factor({(0, 0, 0): Fraction(1), m.key: -c})


def from_terms(terms: dict) -> CycloFactored:
    """Factored form of a sum of monomials given as {(q, a, b): coef}."""
    terms = {k: Fraction(c) for k, c in terms.items() if c}
    if not terms:
        return ZERO
    keys = sorted(terms)
    if len(keys) == 1:
        return from_mon(Mon(terms[keys[0]], *keys[0]))
    if len(keys) == 2:
        m1 = Mon(terms[keys[0]], *keys[0])
        m2 = Mon(terms[keys[1]], *keys[1])
        return cf_mul(from_mon(m1), one_minus(-(m2 / m1)))
    return _poly_factor(terms)


def laurent_factor(coeffs: dict[int, Union[int, Fraction]]) -> CycloFactored:
    """Factored form of a Laurent polynomial in q given as {exponent: coef}."""
    return from_terms({(e, 0, 0): c for e, c in coeffs.items()})


def diff(m1: Mon, m2: Mon) -> CycloFactored:
    """m1 - m2 = m1 (1 - m2/m1)."""
    return cf_mul(from_mon(m1), one_minus(m2 / m1))


def pochhammer(base: Union[Mon, int], step: int, k: int) -> CycloFactored:
    """(base; q**step)_k = prod_{j<k} (1 - base q**(step j)); an int base r means q**r.

    A vanishing factor makes the whole product ZERO; dividing by such a
    product then raises, which is how ill-defined sums are detected.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if k < 0:
        raise ValueError("negative Pochhammer length")
    if isinstance(base, int):
        base = Mon(Fraction(1), base)
    out = []
    for j in range(k):
        f = one_minus(base * Mon(Fraction(1), step * j))
        if f.is_zero():
            return ZERO
        out.append(f)
    return cf_prod(out)


def pochhammer_many(bases: Iterable[Union[Mon, int]], step: int, k: int) -> CycloFactored:
    return cf_prod(pochhammer(b, step, k) for b in bases)


# --- evaluation -----------------------------------------------------------------

@lru_cache(maxsize=65536)
def _subst_factor(f, a: Mon | None, b: Mon | None) -> CycloFactored:
    """An atom or TriPoly factor with a and/or b substituted (ZERO if it vanishes)."""
    if isinstance(f, Atom):
        return one_minus(f.as_mon().subst(a, b))
    return from_terms(f.subst(a, b))


def evaluate(x: CycloFactored, a: ParamValue = None, b: ParamValue = None) -> CycloFactored:
    """Substitute a and/or b (monomials c*q**e or rationals); None keeps a parameter symbolic.

    Returns ZERO when a numerator factor vanishes and raises InadmissibleError
    when a denominator factor does.
    """
    a, b = as_value(a), as_value(b)
    if (a is None and b is None) or x.is_zero():
        return x
    lead = Mon(Fraction(1), 0, x.a_pow, x.b_pow).subst(a, b)
    coeff = x.coeff * lead.coef
    shift, ap, bp = x.q_shift + lead.q, lead.a, lead.b
    cyclo = dict(x.cyclo)
    atoms: dict = {}
    polys: dict = {}
    vanishes = False
    factors = list(x.atoms) + [(tp, e) for tp, e in x.polys if not tp.is_pure()]
    for tp, e in x.polys:
        if tp.is_pure():
            polys[tp] = polys.get(tp, 0) + e
    for f, e in factors:
        if isinstance(f, Atom) and not ((a is not None and f.a_exp) or (b is not None and f.b_exp)):
            atoms[f] = atoms.get(f, 0) + e
            continue
        v = _subst_factor(f, a, b)
        if v.is_zero():
            if e < 0:
                raise InadmissibleError(f"denominator factor {f} vanishes")
            vanishes = True
            continue
        coeff *= v.coeff ** e
        shift += v.q_shift * e
        ap += v.a_pow * e
        bp += v.b_pow * e
        for k, w in v.cyclo:
            cyclo[k] = cyclo.get(k, 0) + w * e
        for k, w in v.atoms:
            atoms[k] = atoms.get(k, 0) + w * e
        for k, w in v.polys:
            polys[k] = polys.get(k, 0) + w * e
    if vanishes:
        return ZERO
    return CycloFactored(coeff, shift, cyclo, atoms, polys, ap, bp)



def numeric(x: CycloFactored, q, a=None, b=None) -> Fraction:
    """Value at rational q (and a, b), computed factor by factor."""
    q = Fraction(q)
    if x.is_zero():
        return Fraction(0)
    v = x.coeff * q ** x.q_shift
    if x.a_pow:
        v *= Fraction(a) ** x.a_pow
    if x.b_pow:
        v *= Fraction(b) ** x.b_pow
    for d, e in x.cyclo:
        v *= Fraction(ip.evaluate(list(cyclotomic_ints(d)), q)) ** e
    for atom, e in x.atoms:
        f = 1 - atom.as_mon().numeric(q, a, b)
        if not f and e < 0:
            raise ZeroDivisionError(f"{atom} vanishes at the given point")
        v *= f ** e
    for tp, e in x.polys:
        f = tp.numeric(q, a, b)
        if not f and e < 0:
            raise ZeroDivisionError(f"({tp}) vanishes at the given point")
        v *= f ** e
    return v


def _int_parts(x: CycloFactored) -> tuple[Fraction, list[list[int]], list[list[int]]]:
    """(scale, numerator factors, denominator factors) as integer lists, params excluded."""
    scale = x.coeff
    num: list[list[int]] = []
    den: list[list[int]] = []
    if x.q_shift > 0:
        num.append([0] * x.q_shift + [1])
    elif x.q_shift < 0:
        den.append([0] * (-x.q_shift) + [1])
    for d, e in x.cyclo:
        f = list(cyclotomic_ints(d))
        (num if e > 0 else den).extend([f] * abs(e))
    for tp, e in x.polys:
        f = tp.q_ints()
        s = tp.q_scale()
        scale *= s ** e
        (num if e > 0 else den).extend([f] * abs(e))
    return scale, num, den


def expand(x: CycloFactored, a: ParamValue = None, b: ParamValue = None) -> RatFun:
    """Expand into a reduced RatFun; every parameter must be given or absent."""
    x = evaluate(x, a, b)
    if x.is_zero():
        return RatFun(UniPoly())
    if x.has_params():
        raise ValueError("symbolic parameters remain; supply values for a and b")
    scale, num, den = _int_parts(x)
    n = UniPoly.from_ints(ip.product(num), scale)
    d = UniPoly.from_ints(ip.product(den))
    return RatFun(n, d)


# --- cyclotomic content ------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def poly_phi_valuation(tp: TriPoly, d: int) -> int:
    """Exponent of Phi_d(q) dividing the polynomial tp (exact, also for parametric tp)."""
    f = list(cyclotomic_ints(d))
    slices: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (qe, ae, be), c in tp.terms:
        slices.setdefault((ae, be), {})[qe] = c
    best = None
    for sl in slices.values():
        den = 1
        for c in sl.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [0] * (max(sl) + 1)
        for qe, c in sl.items():
            ints[qe] = int(c * den)
        v = 0
        while best is None or v < best:
            nxt = ip.divexact(ints, f)
            if nxt is None:
                break
            ints, v = nxt, v + 1
        best = v if best is None else min(best, v)
        if best == 0:
            break
    return best or 0


def cyclo_multiplicity(x: CycloFactored, n: int) -> int:
    """Net exponent of Phi_n in x.  Atoms 1 - a**i b**j q**k never contain Phi_n."""
    if x.is_zero():
        raise ValueError("the zero value has infinite multiplicity")
    v = dict(x.cyclo).get(n, 0)
    for tp, e in x.polys:
        v += e * poly_phi_valuation(tp, n)
    return v


# --- parameter ranges (for interpolation bounds) ---------------------------------------

def factor_range(f, which: str) -> tuple[int, int]:
    """Exponent range of parameter `which` in an atom or TriPoly factor."""
    return f.range(which)


def param_factors(x: CycloFactored) -> dict:
    """Parameter-dependent factors with their signed exponents."""
    out = {a: e for a, e in x.atoms}
    out.update({p: e for p, e in x.polys if not p.is_pure()})
    return out


def mon_sum(mons: Iterable[Mon]) -> CycloFactored:
    """Factored form of a sum of monomials."""
    terms: dict = {}
    for m in mons:
        terms[m.key] = terms.get(m.key, Fraction(0)) + m.coef
    return from_terms(terms)


# --- sums of factored values -------------------------------------------------------

def _common_split(terms: list[CycloFactored]):
    """Pull the factor-wise minimum out of every term.

    Returns (common, reduced) where common carries the minimum exponent of each
    q-power, cyclotomic and polynomial factor, and each reduced entry is an
    (integer coefficient, integer polynomial) pair with
    sum(terms) == common_scale * q**shift * prod(...) * sum(coef_t * poly_t) / den.
    """
    shift = min(t.q_shift for t in terms)
    cyc_min: dict[int, int] = {}
    poly_min: dict[TriPoly, int] = {}
    for t in terms:
        for d, _ in t.cyclo:
            cyc_min.setdefault(d, 0)
        for p, _ in t.polys:
            poly_min.setdefault(p, 0)
    for t in terms:
        cd, pd = dict(t.cyclo), dict(t.polys)
        for d in cyc_min:
            cyc_min[d] = min(cyc_min[d], cd.get(d, 0))
        for p in poly_min:
            poly_min[p] = min(poly_min[p], pd.get(p, 0))
    coefs = []
    for t in terms:
        c = t.coeff
        for p, e in t.polys:
            c *= p.q_scale() ** e
        coefs.append(c)
    den = 1
    for c in coefs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    reduced = []
    for t, c in zip(terms, coefs):
        cd, pd = dict(t.cyclo), dict(t.polys)
        parts = []
        if t.q_shift > shift:
            parts.append([0] * (t.q_shift - shift) + [1])
        for d, lo in cyc_min.items():
            e = cd.get(d, 0) - lo
            if e:
                parts.append(ip.power(list(cyclotomic_ints(d)), e))
        for p, lo in poly_min.items():
            e = pd.get(p, 0) - lo
            if e:
                parts.append(ip.power(p.q_ints(), e))
        reduced.append((int(c * den), parts))
    return shift, cyc_min, poly_min, den, reduced


def _numerator_ints(terms: list[CycloFactored]):
    live = [t for t in terms if not t.is_zero()]
    if not live:
        return None
    if any(t.has_params() for t in live):
        raise ValueError("sums must be free of a and b before expansion")
    shift, cyc_min, poly_min, den, reduced = _common_split(live)
    acc: list[int] = []
    for c, parts in reduced:
        acc = ip.add(acc, ip.scale(ip.product(parts), c))
    return acc, shift, cyc_min, poly_min, den


def sum_is_zero(terms: Iterable[CycloFactored]) -> bool:
    """Exact test that a finite sum of parameter-free factored values vanishes."""
    out = _numerator_ints(list(terms))
    return out is None or not out[0]


def sum_to_ratfun(terms: Iterable[CycloFactored]) -> RatFun:
    """Reduced rational function equal to the sum of the terms."""
    out = _numerator_ints(list(terms))
    if out is None or not out[0]:
        return RatFun(UniPoly())
    acc, shift, cyc_min, poly_min, den = out
    num_parts: list[list[int]] = []
    den_parts: list[list[int]] = []
    scale = Fraction(1, den)  # polynomial scales are already folded into the term coefficients
    if shift > 0:
        num_parts.append([0] * shift + [1])
    # cancel known denominator factors from the numerator before any gcd work
    for d, e in cyc_min.items():
        f = list(cyclotomic_ints(d))
        if e > 0:
            num_parts.append(ip.power(f, e))
            continue
        while e < 0:
            nxt = ip.divexact(acc, f)
            if nxt is None:
                break
            acc, e = nxt, e + 1
        if e:
            den_parts.append(ip.power(f, -e))
    for p, e in poly_min.items():
        f = p.q_ints()
        if e > 0:
            num_parts.append(ip.power(f, e))
            continue
        while e < 0:
            nxt = ip.divexact(acc, f)
            if nxt is None:
                break
            acc, e = nxt, e + 1
        if e:
            den_parts.append(ip.power(f, -e))
    s = -shift if shift < 0 else 0
    while s and acc and acc[0] == 0:
        acc, s = acc[1:], s - 1
    if s:
        den_parts.append([0] * s + [1])
    num = UniPoly.from_ints(ip.mul(acc, ip.product(num_parts)), scale)
    return RatFun(num, UniPoly.from_ints(ip.product(den_parts)))


def sum_numeric(terms: Iterable[CycloFactored], q, a=None, b=None) -> Fraction:
    return sum((numeric(t, q, a, b) for t in terms), Fraction(0))
