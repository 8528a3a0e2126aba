"""Exact scalars and univariate polynomials in q over the rationals.

``BigRat`` is :class:`fractions.Fraction`.  ``UniPoly`` is dense; products of
large polynomials are routed through the integer kernel in ``_intpoly`` after
clearing denominators, so coefficient content never rides along in the inner
loops.
"""

from __future__ import annotations

import math
import os
import threading
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Iterable, Union

from . import _intpoly as ip

BigRat = Fraction

#: degree of the zero polynomial; compares below every integer and absorbs addition
ZERO_DEGREE = -math.inf

Scalar = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class UniPoly:
    """Dense polynomial in q with rational coefficients (index i is q**i)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    # construction helpers
    @classmethod
    def from_ints(cls, ints: Iterable[int], scale: Fraction = Fraction(1)) -> "UniPoly":
        p = cls.__new__(cls)
        c = [scale * v for v in ints] if scale != 1 else [Fraction(v) for v in ints]
        while c and not c[-1]:
            c.pop()
        p.coeffs = tuple(c)
        p._hash = None
        return p

    @classmethod
    def monomial(cls, c: Scalar, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent in a polynomial; use LaurentPoly")
        return cls([0] * e + [c])

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls([c])

    def to_ints(self) -> tuple[Fraction, list[int]]:
        """Return (s, ints) with self == s * ints and ints integral."""
        if not self.coeffs:
            return Fraction(0), []
        den = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = ip.content(ints)
        return Fraction(g, den), [v // g for v in ints]

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and abs(c) == 1:
                term = mono
            else:
                term = f"{abs(c)}" + (f"*{mono}" if mono else "")
            parts.append(("-" if c < 0 else "+", term))
        s = "".join(f" {sg} {t}" for sg, t in parts).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # arithmetic
    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        s1, a = self.to_ints()
        s2, b = other.to_ints()
        return UniPoly.from_ints(ip.mul(a, b), s1 * s2)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        s, a = self.to_ints()
        if not a:
            return UniPoly([1]) if e == 0 else UniPoly()
        return UniPoly.from_ints(ip.power(a, e), s ** e)

    def __divmod__(self, other):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ZeroDivisionError("the zero polynomial has no monic form")
        lc = self.coeffs[-1]
        return UniPoly(c / lc for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)


def _as_poly(x) -> UniPoly | None:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UniPoly([x])
    return None


Q = UniPoly([0, 1])
ONE = UniPoly([1])


def poly_divrem(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Euclidean division: a == b*quot + rem with deg rem < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    db = len(b.coeffs) - 1
    if len(a.coeffs) <= db:
        return UniPoly(), a
    sb, bi = b.to_ints()
    if abs(bi[-1]) == 1:
        # monic up to sign and content: stay in Z[q]
        sa, ai = a.to_ints()
        sign = bi[-1]
        quot, rem = ip.divmod_monic(ai, [sign * v for v in bi])
        return (UniPoly.from_ints(quot, sa / sb * sign), UniPoly.from_ints(rem, sa))
    r = list(a.coeffs)
    lc = b.coeffs[-1]
    quot = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lc
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b.coeffs[j]
    return UniPoly(quot), UniPoly(r[:db])


_GCD_PRIMES = (2147483647, 2305843009213693951, 1000000007)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    _, x = a.to_ints()
    _, y = b.to_ints()
    if len(x) == 1 or len(y) == 1:
        return ONE
    # A gcd of degree 0 modulo a prime not dividing either leading coefficient
    # certifies coprimality over Q, which is by far the common case.
    for p in _GCD_PRIMES:
        if x[-1] % p and y[-1] % p:
            if ip.gcd_degree_mod_p(x, y, p) == 0:
                return ONE
            break
    return UniPoly.from_ints(ip.gcd(x, y)).monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, t) with s*a + t*b == g == poly_gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = ONE, UniPoly()
    t0, t1 = UniPoly(), ONE
    while not r1.is_zero():
        quot, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    g = poly_gcd(a, b)
    return (poly_divrem(a * b, g)[0]).monic()


def poly_inverse_mod(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of a modulo m, via a fraction-free subresultant sequence."""
    sa, ai = (a % m).to_ints()
    _, mi = m.to_ints()
    out = ip.inverse_mod(ai, mi) if ai else None
    if out is None:
        raise ZeroDivisionError("polynomial is not invertible modulo the given modulus")
    u, c = out
    return UniPoly.from_ints(u, 1 / (sa * c)) % m


# --- cyclotomic polynomials ------------------------------------------------

_CYCLO: dict[int, tuple[int, ...]] = {}
_CYCLO_LOCK = threading.Lock()
_CACHE_LOADED = False
CACHE_VERSION = "qcong-cyclotomic-cache v1"
CACHE_ENV = "QC_CACHE_DIR"


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _cache_file() -> Path | None:
    root = os.environ.get(CACHE_ENV)
    return Path(root) / "cyclotomic.txt" if root else None


def _load_cache() -> None:
    global _CACHE_LOADED
    _CACHE_LOADED = True
    path = _cache_file()
    if path is None or not path.exists():
        return
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != CACHE_VERSION:
        return
    for line in lines[1:]:
        if ":" not in line:
            continue
        key, _, body = line.partition(":")
        _CYCLO.setdefault(int(key), tuple(int(t) for t in body.split()))


def save_cyclotomic_cache() -> Path | None:
    """Write every cached Phi_n to $QC_CACHE_DIR/cyclotomic.txt, if the variable is set."""
    path = _cache_file()
    if path is None:
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    with _CYCLO_LOCK:
        items = sorted(_CYCLO.items())
    body = "\n".join(f"{n}: {' '.join(map(str, c))}" for n, c in items)
    path.write_text(f"{CACHE_VERSION}\n{body}\n")
    return path


def cyclotomic_ints(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    hit = _CYCLO.get(n)
    if hit is not None:
        return hit
    with _CYCLO_LOCK:
        if not _CACHE_LOADED:
            _load_cache()
            hit = _CYCLO.get(n)
            if hit is not None:
                return hit
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = ip.divexact(num, list(cyclotomic_ints(d)))
    value = tuple(num)
    with _CYCLO_LOCK:
        return _CYCLO.setdefault(n, value)


def cyclotomic(n: int) -> UniPoly:
    """The n-th cyclotomic polynomial Phi_n(q)."""
    return UniPoly.from_ints(cyclotomic_ints(n))


def q_integer(n: int) -> UniPoly:
    """[n] = 1 + q + ... + q**(n-1)."""
    if n < 0:
        raise ValueError("q_integer takes a nonnegative integer")
    return UniPoly([1] * n)


def phi_valuation(p: UniPoly | list[int], d: int, limit: int | None = None) -> int:
    """Exponent of Phi_d in the nonzero polynomial p (capped at limit if given)."""
    ints = p.to_ints()[1] if isinstance(p, UniPoly) else list(p)
    if not ints:
        raise ValueError("the zero polynomial has infinite valuation")
    f = list(cyclotomic_ints(d))
    v = 0
    while limit is None or v < limit:
        nxt = ip.divexact(ints, f)
        if nxt is None:
            break
        ints, v = nxt, v + 1
    return v


# --- p-adic valuation -------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def padic_valuation(x: Scalar, p: int):
    """v_p(x) for nonzero rational x; returns math.inf for x == 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# --- Laurent polynomials and rational functions -----------------------------

class LaurentPoly:
    """q**shift * body, with body(0) != 0 unless the value is zero."""

    __slots__ = ("body", "shift")

    def __init__(self, body: UniPoly | Iterable[Scalar] = (), shift: int = 0):
        if not isinstance(body, UniPoly):
            body = UniPoly(body)
        c = body.coeffs
        k = 0
        while k < len(c) and not c[k]:
            k += 1
        if k == len(c):
            self.body, self.shift = UniPoly(), 0
        else:
            self.body = UniPoly(c[k:]) if k else body
            self.shift = shift + k

    @classmethod
    def monomial(cls, c: Scalar, e: int) -> "LaurentPoly":
        return cls(UniPoly([c]), e)

    @classmethod
    def from_dict(cls, terms: dict[int, Scalar]) -> "LaurentPoly":
        terms = {e: Fraction(c) for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo = min(terms)
        body = [Fraction(0)] * (max(terms) - lo + 1)
        for e, c in terms.items():
            body[e - lo] += c
        return cls(UniPoly(body), lo)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def terms(self) -> dict[int, Fraction]:
        return {i + self.shift: c for i, c in enumerate(self.body.coeffs) if c}

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = _as_laurent(other)
            if other is None:
                return NotImplemented
        return self.shift == other.shift and self.body == other.body

    def __hash__(self):
        return hash((self.body, self.shift))

    def __repr__(self):
        return f"LaurentPoly({self.body}, shift={self.shift})"

    def __neg__(self):
        return LaurentPoly(-self.body, self.shift)

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.shift, other.shift)
        a = UniPoly([0] * (self.shift - lo) + list(self.body.coeffs))
        b = UniPoly([0] * (other.shift - lo) + list(other.body.coeffs))
        return LaurentPoly(a + b, lo)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return LaurentPoly(self.body * other.body, self.shift + other.shift)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return LaurentPoly(self.body ** e, self.shift * e)

    def __call__(self, x):
        x = Fraction(x)
        return self.body(x) * x ** self.shift

    def to_ratfun(self) -> "RatFun":
        if self.shift >= 0:
            return RatFun(UniPoly([0] * self.shift + list(self.body.coeffs)), ONE)
        return RatFun(self.body, UniPoly.monomial(1, -self.shift))


def _as_laurent(x) -> LaurentPoly | None:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, UniPoly):
        return LaurentPoly(x)
    if isinstance(x, (int, Fraction)):
        return LaurentPoly(UniPoly([x]))
    return None


class RatFun:
    """Reduced quotient num/den of polynomials in q; den is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = ONE, *, reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), ONE
            return
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = poly_divrem(num, g)[0]
                den = poly_divrem(den, g)[0]
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def from_scalar(cls, c: Scalar) -> "RatFun":
        return cls(UniPoly([c]), ONE, reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun(({self.num}) / ({self.den}))"

    def __neg__(self):
        return RatFun(-self.num, self.den, reduced=True)

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def __pow__(self, e: int):
        if e >= 0:
            return RatFun(self.num ** e, self.den ** e, reduced=True)
        return RatFun(self.den ** -e, self.num ** -e, reduced=True)

    def __call__(self, x):
        x = Fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at q = {x}")
        return self.num(x) / d


def _as_ratfun(x) -> RatFun | None:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, UniPoly):
        return RatFun(x, ONE, reduced=True)
    if isinstance(x, LaurentPoly):
        return x.to_ratfun()
    if isinstance(x, (int, Fraction)):
        return RatFun.from_scalar(x)
    return None
