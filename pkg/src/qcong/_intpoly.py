"""Dense integer polynomial kernel.

Polynomials are lists of Python ints, index i holding the coefficient of q**i,
with no trailing zeros; the zero polynomial is the empty list.  Everything in
the package that multiplies large polynomials funnels through here.
"""

from __future__ import annotations

import math

_KRONECKER_MIN = 24


def trim(a: list[int]) -> list[int]:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    del a[n:]
    return a


def add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return trim(out)


def sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return trim(out)


def scale(a: list[int], c: int) -> list[int]:
    if not c:
        return []
    return [c * v for v in a]


def shift(a: list[int], k: int) -> list[int]:
    """Multiply by q**k (k >= 0)."""
    return [0] * k + a if a else []


def content(a: list[int]) -> int:
    return math.gcd(*a)


def primitive(a: list[int]) -> tuple[int, list[int]]:
    """Split a into (c, p) with a == c*p, p primitive and lc(p) > 0."""
    if not a:
        return 0, []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return c, [v // c for v in a]


def _bits(a: list[int]) -> int:
    return max(abs(v) for v in a).bit_length()


def _pack(a: list[int], nbytes: int, half: int) -> int:
    off = half.to_bytes(nbytes, "little") * len(a)
    raw = b"".join((v + half).to_bytes(nbytes, "little") for v in a)
    return int.from_bytes(raw, "little") - int.from_bytes(off, "little")


def _unpack(x: int, n: int, nbytes: int, half: int) -> list[int]:
    off = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (x + off).to_bytes(n * nbytes, "little")
    return [int.from_bytes(raw[i:i + nbytes], "little") - half
            for i in range(0, n * nbytes, nbytes)]


def mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return scale(a, b[0])
    if len(b) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    out[i + j] += ai * bj
        return trim(out)
    # Kronecker substitution: evaluate at 2**bits, multiply, read digits back.
    bits = _bits(a) + _bits(b) + len(b).bit_length() + 2
    nbytes = (bits + 7) // 8
    half = 1 << (8 * nbytes - 1)
    x = _pack(a, nbytes, half) * _pack(b, nbytes, half)
    return trim(_unpack(x, len(a) + len(b) - 1, nbytes, half))


def product(polys: list[list[int]]) -> list[int]:
    """Balanced product tree; much faster than a left fold for many factors."""
    if not polys:
        return [1]
    layer = list(polys)
    while len(layer) > 1:
        nxt = [mul(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def power(a: list[int], e: int) -> list[int]:
    out = [1]
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def rem_monic(a: list[int], f: list[int]) -> list[int]:
    """Remainder of a modulo a monic f."""
    df = len(f) - 1
    if len(a) <= df:
        return list(a)
    r = list(a)
    low = f[:df]
    for i in range(len(r) - 1, df - 1, -1):
        c = r[i]
        if c:
            base = i - df
            for j, fj in enumerate(low):
                if fj:
                    r[base + j] -= c * fj
    return trim(r[:df])


def divmod_monic(a: list[int], f: list[int]) -> tuple[list[int], list[int]]:
    df = len(f) - 1
    if len(a) <= df:
        return [], list(a)
    r = list(a)
    quot = [0] * (len(a) - df)
    low = f[:df]
    for i in range(len(r) - 1, df - 1, -1):
        c = r[i]
        if c:
            base = i - df
            quot[base] = c
            for j, fj in enumerate(low):
                if fj:
                    r[base + j] -= c * fj
    return trim(quot), trim(r[:df])


def divexact(a: list[int], b: list[int]) -> list[int] | None:
    """Return a/b when b divides a in Z[q], else None."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) <= db:
        return None
    lc = b[-1]
    r = list(a)
    quot = [0] * (len(a) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                return None
            base = i - db
            quot[base] = qc
            for j in range(db):
                if b[j]:
                    r[base + j] -= qc * b[j]
    if any(r[:db]):
        return None
    return trim(quot)


def pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """lc(b)**(deg a - deg b + 1) * a  mod b, computed in Z[q]."""
    db = len(b) - 1
    lc = b[-1]
    r = list(a)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        r = [lc * v for v in r]
        if c:
            base = i - db
            for j in range(db + 1):
                r[base + j] -= c * b[j]
        r.pop()
    return trim(r)


def pseudo_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """(Q, R) with lc(b)**(deg a - deg b + 1) * a == Q*b + R and deg R < deg b."""
    db = len(b) - 1
    da = len(a) - 1
    if da < db:
        return [], trim(list(a))
    lc = b[-1]
    r = list(a)
    quo = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = r[i]
        r = [lc * v for v in r]
        quo = [lc * v for v in quo]
        if c:
            base = i - db
            quo[base] += c
            for j in range(db + 1):
                r[base + j] -= c * b[j]
        r.pop()
    return trim(quo), trim(r)


def inverse_mod(a: list[int], m: list[int]) -> tuple[list[int], int] | None:
    """(u, c) with u*a == c (mod m), c a nonzero integer; None if gcd(a, m) is not constant.

    Subresultant remainder sequence carrying the cofactor of a, so every
    division is exact and coefficients stay polynomially bounded.
    """
    r0, r1 = trim(list(m)), pseudo_rem(a, m) if len(a) >= len(m) else trim(list(a))
    u0, u1 = [], [1]
    if len(a) >= len(m):
        # lc(m)^k a == Q m + r1, so r1 carries the cofactor lc(m)^k
        u1 = [m[-1] ** (len(a) - len(m) + 1)]
    if not r1:
        return None
    g = h = 1
    while len(r1) > 1:
        delta = len(r0) - len(r1)
        quo, rem = pseudo_divmod(r0, r1)
        if not rem:
            return None
        lc = r1[-1]
        beta = g * h ** delta
        f = lc ** (delta + 1)
        u2 = sub(scale(u0, f), mul(quo, u1))
        r2 = [v // beta for v in rem]
        u2q = [v // beta for v in u2]
        if any(v % beta for v in rem) or any(v % beta for v in u2):
            raise ArithmeticError("subresultant division was not exact")
        r0, r1, u0, u1 = r1, r2, u1, trim(u2q)
        g = lc
        h = g ** delta // h ** (delta - 1) if delta >= 1 else h
    return u1, r1[0]


def rem_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    r = [v % p for v in a]
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv % p
        if c:
            base = i - db
            for j in range(db + 1):
                r[base + j] = (r[base + j] - c * b[j]) % p
    return trim(r[:db])


def gcd_degree_mod_p(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a mod p, b mod p); both leading coefficients must be units mod p."""
    x = trim([v % p for v in a])
    y = trim([v % p for v in b])
    while y:
        x, y = y, rem_mod_p(x, y, p)
    return len(x) - 1


def gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd of a and b reduced modulo p (empty if both vanish)."""
    x = trim([v % p for v in a])
    y = trim([v % p for v in b])
    while y:
        x, y = y, rem_mod_p(x, y, p)
    if not x:
        return []
    inv = pow(x[-1], -1, p)
    return [v * inv % p for v in x]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime64(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _big_primes():
    n = (1 << 62) - 1
    while True:
        if _is_prime64(n):
            yield n
        n -= 2


def gcd(a: list[int], b: list[int]) -> list[int]:
    """Integer gcd of two nonzero polynomials (positive leading coefficient).

    Modular algorithm: monic gcds modulo 62-bit primes, scaled by the gcd of the
    leading coefficients, combined by CRT until the primitive lift divides both.
    """
    ca, x = primitive(a)
    cb, y = primitive(b)
    c = math.gcd(ca, cb)
    lcg = math.gcd(x[-1], y[-1])
    acc: list[int] = []
    modulus = 1
    dmin = None
    last = None
    for p in _big_primes():
        if x[-1] % p == 0 or y[-1] % p == 0:
            continue
        gp = gcd_mod_p(x, y, p)
        d = len(gp) - 1
        if d == 0:
            return [c]
        if dmin is not None and d > dmin:
            continue
        gp = [v * lcg % p for v in gp]
        if dmin is None or d < dmin:
            dmin, acc, modulus, last = d, gp, p, None
        else:
            inv = pow(modulus, -1, p)
            acc = [u + modulus * (((v - u) * inv) % p) for u, v in zip(acc, gp)]
            modulus *= p
        half = modulus // 2
        lift = [v - modulus if v > half else v for v in acc]
        _, lift = primitive(lift)
        if lift == last:
            if divexact(x, lift) is not None and divexact(y, lift) is not None:
                return scale(lift, c)
        last = lift


def evaluate(a: list[int], x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc
