"""Univariate polynomials over GF(p).

A polynomial a_0 + a_1 x + ... + a_n x^n is the tuple (a_0, ..., a_n) of
integers in [0, p) with a_n nonzero; the zero polynomial is ``()``.
All functions take the modulus explicitly.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)


def norm(a: Iterable[int], p: int) -> Poly:
    c = [x % p for x in a]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def const(c: int, p: int) -> Poly:
    return norm((c,), p)


def linear(root: int, p: int) -> Poly:
    """The monic polynomial x - root."""
    return ((-root) % p, 1)


def deg(a: Poly) -> int:
    return len(a) - 1


def lc(a: Poly) -> int:
    return a[-1] if a else 0


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return norm(c, p)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-x) % p for x in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, k: int, p: int) -> Poly:
    k %= p
    if k == 0:
        return ZERO
    return tuple(x * k % p for x in a)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return norm(c, p)


def power(a: Poly, n: int, p: int) -> Poly:
    r = ONE
    while n:
        if n & 1:
            r = mul(r, a, p)
        a = mul(a, a, p)
        n >>= 1
    return r


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return ZERO, tuple(a)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j, y in enumerate(b):
                r[k - db + j] = (r[k - db + j] - c * y) % p
    return norm(q, p), norm(r[:db], p)


def div_exact(a: Poly, b: Poly, p: int) -> Poly:
    q, r = divmod_(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a or a[-1] == 1:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``g = s a + t b`` and ``g`` monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return ZERO, ZERO, ZERO
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def derivative(a: Poly, p: int) -> Poly:
    return norm([i * c for i, c in enumerate(a)][1:], p)


def shift(a: Poly, x0: int, p: int) -> Poly:
    """Coefficients of a(x0 + t) as a polynomial in t."""
    out = ZERO
    base = (x0 % p, 1)
    for c in reversed(a):
        out = add(mul(out, base, p), (c,), p)
    return out


def from_roots(roots: Sequence[int], p: int) -> Poly:
    r = ONE
    for x in roots:
        r = mul(r, linear(x, p), p)
    return r


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def roots(a: Poly, p: int) -> list[int]:
    """Distinct roots in F_p, sorted.

    Degrees 1 and 2 are solved in closed form; higher degrees fall back to
    exhaustive search, which is only meant for small p.
    """
    if not a:
        raise ValueError("zero polynomial has every root")
    if len(a) == 1:
        return []
    if len(a) == 2:
        return [(-a[0]) * pow(a[1], -1, p) % p]
    if len(a) == 3:
        c, b, l = a
        disc = (b * b - 4 * l * c) % p
        s = sqrt_mod(disc, p)
        if s is None:
            return []
        inv = pow(2 * l, -1, p)
        return sorted({(-b + s) * inv % p, (-b - s) * inv % p})
    return [x for x in range(p) if evaluate(a, x, p) == 0]


def squarefree(a: Poly, p: int) -> bool:
    return deg(gcd(a, derivative(a, p), p)) == 0


def to_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms)
