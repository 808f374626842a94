"""Genus-2 curves y^2 = f(x) with deg f = 5 over a prime field, and their Jacobians.

The odd model has a single point at infinity, so the canonical class is
K = 2*inf and every divisor class of degree n is stored as the reduced
Mumford pair (u, v) of ``class - n*inf`` together with the degree n.
Group operations are Cantor composition followed by reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple

from . import poly as P
from .errors import BadDegree, InputError, NonSquarefree, SmallPrime, UnsupportedMultiplicity

MAX_AFFINE_MULTIPLICITY = 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Point(NamedTuple):
    """A rational point; ``Point(None, None)`` is the point at infinity."""

    x: int | None
    y: int | None

    @property
    def is_inf(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "inf" if self.is_inf else f"({self.x},{self.y})"


INF = Point(None, None)


def _point_key(pt: Point) -> tuple[int, int]:
    return (-1, -1) if pt.is_inf else (pt.x, pt.y)


class Divisor:
    """A finite formal sum of rational points with integer multiplicities."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Point, int] | Iterable[tuple[Point, int]] = ()):
        acc: dict[Point, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for pt, m in items:
            acc[pt] = acc.get(pt, 0) + int(m)
        self._terms = tuple(sorted(((pt, m) for pt, m in acc.items() if m), key=lambda t: _point_key(t[0])))

    @classmethod
    def of(cls, *points: Point) -> "Divisor":
        return cls((pt, 1) for pt in points)

    @classmethod
    def infinity(cls, n: int) -> "Divisor":
        return cls({INF: n})

    def items(self) -> tuple[tuple[Point, int], ...]:
        return self._terms

    def __getitem__(self, pt: Point) -> int:
        for q, m in self._terms:
            if q == pt:
                return m
        return 0

    def __iter__(self) -> Iterator[Point]:
        return (pt for pt, _ in self._terms)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._terms)

    @property
    def at_infinity(self) -> int:
        return self[INF]

    def affine(self) -> "Divisor":
        return Divisor((pt, m) for pt, m in self._terms if not pt.is_inf)

    def support(self) -> list[Point]:
        return [pt for pt, _ in self._terms]

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self._terms)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self._terms + other._terms)

    def __neg__(self) -> "Divisor":
        return Divisor((pt, -m) for pt, m in self._terms)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor((pt, k * m) for pt, m in self._terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{m}*{pt!r}" if m != 1 else repr(pt) for pt, m in self._terms)


@dataclass(frozen=True)
class DivClass:
    """Linear equivalence class of degree ``degree``: Mumford pair of ``class - degree*inf``."""

    u: tuple
    v: tuple
    degree: int

    @property
    def weight(self) -> int:
        return len(self.u) - 1

    def __repr__(self) -> str:
        return f"DivClass(u={P.to_str(self.u)}, v={P.to_str(self.v)}, deg={self.degree})"


@dataclass(frozen=True)
class Curve:
    """y^2 = f(x) over F_p; construct through :func:`make_curve`."""

    p: int
    f: tuple

    # --- points -------------------------------------------------------------

    @cached_property
    def fprime(self) -> tuple:
        return P.derivative(self.f, self.p)

    def on_curve(self, pt: Point) -> bool:
        if pt.is_inf:
            return True
        return (pt.y * pt.y - P.evaluate(self.f, pt.x, self.p)) % self.p == 0

    @cached_property
    def _points(self) -> tuple[Point, ...]:
        p = self.p
        out = []
        for x in range(p):
            r = P.sqrt_mod(P.evaluate(self.f, x, p), p)
            if r is None:
                continue
            if r == 0:
                out.append(Point(x, 0))
            else:
                out.extend(sorted([Point(x, r), Point(x, p - r)]))
        out.append(INF)
        return tuple(out)

    def points(self) -> list[Point]:
        """All F_p-rational points, affine ones by increasing x, then infinity."""
        return list(self._points)

    @cached_property
    def weierstrass_points(self) -> tuple[Point, ...]:
        return tuple(Point(x, 0) for x in P.roots(self.f, self.p)) + (INF,)

    def is_weierstrass(self, pt: Point) -> bool:
        return pt.is_inf or pt.y % self.p == 0

    def involution(self, pt: Point) -> Point:
        if pt.is_inf:
            return INF
        return Point(pt.x, (-pt.y) % self.p)

    def random_point(self, rng: random.Random, weierstrass: bool = True) -> Point:
        """Uniform-ish random affine point (rejection on x)."""
        p = self.p
        while True:
            x = rng.randrange(p)
            r = P.sqrt_mod(P.evaluate(self.f, x, p), p)
            if r is None:
                continue
            if r == 0:
                if weierstrass:
                    return Point(x, 0)
                continue
            return Point(x, r if rng.random() < 0.5 else p - r)

    # --- Jacobian -----------------------------------------------------------

    @property
    def identity(self) -> DivClass:
        return DivClass(P.ONE, P.ZERO, 0)

    def canonical_class(self) -> DivClass:
        return DivClass(P.ONE, P.ZERO, 2)

    def point_class(self, pt: Point) -> DivClass:
        """Class of the degree-1 divisor [pt]."""
        if pt.is_inf:
            return DivClass(P.ONE, P.ZERO, 1)
        if not self.on_curve(pt):
            raise InputError(f"{pt!r} is not on the curve")
        return DivClass(P.linear(pt.x, self.p), P.const(pt.y, self.p), 1)

    def infinity_class(self, n: int) -> DivClass:
        return DivClass(P.ONE, P.ZERO, n)

    def _reduce(self, u: tuple, v: tuple) -> tuple[tuple, tuple]:
        p, f = self.p, self.f
        while P.deg(u) > 2:
            u2 = P.div_exact(P.sub(f, P.mul(v, v, p), p), u, p)
            v = P.mod(P.neg(v, p), u2, p)
            u = P.monic(u2, p)
        u = P.monic(u, p)
        return u, P.mod(v, u, p)

    def _compose(self, u1, v1, u2, v2) -> tuple[tuple, tuple]:
        p, f = self.p, self.f
        d1, e1, e2 = P.xgcd(u1, u2, p)
        d, c1, c2 = P.xgcd(d1, P.add(v1, v2, p), p)
        s1, s2, s3 = P.mul(c1, e1, p), P.mul(c1, e2, p), c2
        u = P.div_exact(P.mul(u1, u2, p), P.mul(d, d, p), p)
        num = P.add(
            P.add(P.mul(P.mul(s1, u1, p), v2, p), P.mul(P.mul(s2, u2, p), v1, p), p),
            P.mul(s3, P.add(P.mul(v1, v2, p), f, p), p),
            p,
        )
        v = P.mod(P.div_exact(num, d, p), u, p)
        return self._reduce(u, v)

    def add(self, a: DivClass, b: DivClass) -> DivClass:
        u, v = self._compose(a.u, a.v, b.u, b.v)
        return DivClass(u, v, a.degree + b.degree)

    def neg(self, a: DivClass) -> DivClass:
        return DivClass(a.u, P.neg(a.v, self.p), -a.degree)

    def sub(self, a: DivClass, b: DivClass) -> DivClass:
        return self.add(a, self.neg(b))

    def mul(self, k: int, a: DivClass) -> DivClass:
        if k < 0:
            return self.mul(-k, self.neg(a))
        acc, base = self.identity, a
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def class_of(self, div: Divisor) -> DivClass:
        acc = DivClass(P.ONE, P.ZERO, 0)
        for pt, m in div.items():
            if pt.is_inf:
                acc = DivClass(acc.u, acc.v, acc.degree + m)
                continue
            if abs(m) > MAX_AFFINE_MULTIPLICITY:
                raise UnsupportedMultiplicity(f"multiplicity {m} at {pt!r}")
            acc = self.add(acc, self.mul(m, self.point_class(pt)))
        return acc

    def combine(self, *terms: tuple[int, DivClass]) -> DivClass:
        """Integer combination sum k_i * c_i of classes."""
        acc = self.identity
        for k, c in terms:
            acc = self.add(acc, self.mul(k, c))
        return acc

    # --- Riemann-Roch -------------------------------------------------------

    def h0(self, cl: DivClass) -> int:
        n = cl.degree
        trivial = cl.u == P.ONE
        if n < 0:
            return 0
        if n == 0:
            return 1 if trivial else 0
        if n == 1:
            return 1 if cl.weight <= 1 else 0
        if n == 2:
            return 2 if trivial else 1
        return n - 1

    def is_effective(self, cl: DivClass) -> bool:
        if cl.degree < 0:
            return False
        if cl.degree == 0:
            return cl.u == P.ONE
        if cl.degree == 1:
            return cl.weight <= 1
        return True

    def mumford_divisor(self, cl: DivClass) -> Divisor | None:
        """The divisor E + (n - deg u)*inf read off the Mumford pair, if u splits over F_p.

        For an effective class whose Mumford polynomial splits this is an
        effective representative; for h0 = 1 classes it is the unique one.
        """
        p = self.p
        u, v = cl.u, cl.v
        terms: list[tuple[Point, int]] = []
        if P.deg(u) == 1:
            x0 = (-u[0]) % p
            terms.append((Point(x0, P.evaluate(v, x0, p)), 1))
        elif P.deg(u) == 2:
            rts = P.roots(u, p)
            if not rts:
                return None
            if len(rts) == 1:
                x0 = rts[0]
                terms.append((Point(x0, P.evaluate(v, x0, p)), 2))
            else:
                terms.extend((Point(x0, P.evaluate(v, x0, p)), 1) for x0 in rts)
        terms.append((INF, cl.degree - P.deg(u)))
        return Divisor(terms)

    def effective_point(self, cl: DivClass) -> Point | None:
        """For a degree-1 class: the unique point P with cl = [P], or None."""
        if cl.degree != 1 or not self.is_effective(cl):
            return None
        if cl.u == P.ONE:
            return INF
        x0 = (-cl.u[0]) % self.p
        return Point(x0, P.evaluate(cl.v, x0, self.p))


def make_curve(p: int, f: Iterable[int]) -> Curve:
    """Validate and build y^2 = f(x); ``f`` lists coefficients c0..c5."""
    if p < 5:
        raise SmallPrime(f"p = {p}; need an odd prime p >= 5")
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    fp = P.norm(f, p)
    if P.deg(fp) != 5:
        raise BadDegree(f"deg f = {P.deg(fp)} mod {p}, expected 5")
    if fp[-1] != 1:
        raise BadDegree("f must be monic")
    if not P.squarefree(fp, p):
        raise NonSquarefree(f"f = {P.to_str(fp)} has a repeated factor mod {p}")
    return Curve(p, fp)
