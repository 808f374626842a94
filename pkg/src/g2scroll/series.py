"""Riemann-Roch spaces plus the embedding by |H| and its pencil utilities.

Functions on the curve are written (a(x) + b(x) y) / c(x).  A space L(G) is
computed by clearing the affine poles of G with c(x) = prod (x - x_Q)^m_Q, so
that c * L(G) sits inside L(N*inf), whose monomial basis {x^i, y x^j} is graded
by pole order 2i resp. 5 + 2j.  Local conditions at affine points are imposed
through truncated power-series expansions in a uniformizer: t = x - x0 away
from the branch points, t = y at an affine Weierstrass point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from . import poly as P
from .curve import MAX_AFFINE_MULTIPLICITY, Curve, DivClass, Divisor, Point
from .errors import (
    DegreeTooSmall,
    InsufficientPoints,
    NotAPencil,
    NotInSpan,
    PoleAtPoint,
    UnsupportedMultiplicity,
)


# ---------------------------------------------------------------------------
# rational forms


@dataclass(frozen=True)
class RationalForm:
    """(a(x) + b(x) y) / c(x) with c monic and gcd(a, b, c) = 1."""

    a: tuple
    b: tuple
    c: tuple = P.ONE

    @property
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __repr__(self) -> str:
        num = P.to_str(self.a)
        if self.b:
            num = f"{num} + ({P.to_str(self.b)})*y" if self.a else f"({P.to_str(self.b)})*y"
        return num if self.c == P.ONE else f"({num})/({P.to_str(self.c)})"


def canonical(a: tuple, b: tuple, c: tuple, p: int) -> RationalForm:
    a, b, c = P.norm(a, p), P.norm(b, p), P.norm(c, p)
    if not c:
        raise ZeroDivisionError("zero denominator")
    if not a and not b:
        return RationalForm(P.ZERO, P.ZERO, P.ONE)
    g = P.gcd(P.gcd(a, b, p), c, p)
    if P.deg(g) > 0:
        a, b, c = P.div_exact(a, g, p), P.div_exact(b, g, p), P.div_exact(c, g, p)
    inv = pow(c[-1], -1, p)
    return RationalForm(P.scale(a, inv, p), P.scale(b, inv, p), P.scale(c, inv, p))


def form_const(k: int, p: int) -> RationalForm:
    return canonical((k,), P.ZERO, P.ONE, p)


def form_x(p: int) -> RationalForm:
    return RationalForm((0, 1), P.ZERO, P.ONE)


def form_y(p: int) -> RationalForm:
    return RationalForm(P.ZERO, P.ONE, P.ONE)


def form_mul(C: Curve, g: RationalForm, h: RationalForm) -> RationalForm:
    p = C.p
    a = P.add(P.mul(g.a, h.a, p), P.mul(P.mul(g.b, h.b, p), C.f, p), p)
    b = P.add(P.mul(g.a, h.b, p), P.mul(g.b, h.a, p), p)
    return canonical(a, b, P.mul(g.c, h.c, p), p)


def form_add(C: Curve, g: RationalForm, h: RationalForm) -> RationalForm:
    p = C.p
    a = P.add(P.mul(g.a, h.c, p), P.mul(h.a, g.c, p), p)
    b = P.add(P.mul(g.b, h.c, p), P.mul(h.b, g.c, p), p)
    return canonical(a, b, P.mul(g.c, h.c, p), p)


def form_scale(C: Curve, g: RationalForm, k: int) -> RationalForm:
    return canonical(P.scale(g.a, k, C.p), P.scale(g.b, k, C.p), g.c, C.p)


def form_combination(C: Curve, coeffs: Sequence[int], forms: Sequence[RationalForm]) -> RationalForm:
    acc = RationalForm(P.ZERO, P.ZERO, P.ONE)
    for k, g in zip(coeffs, forms):
        if int(k) % C.p:
            acc = form_add(C, acc, form_scale(C, g, int(k)))
    return acc


# ---------------------------------------------------------------------------
# local expansions


def _smul(s: list[int], t: list[int], r: int, p: int) -> list[int]:
    out = [0] * r
    for i, x in enumerate(s[:r]):
        if x:
            for j in range(r - i):
                out[i + j] += x * t[j]
    return [v % p for v in out]


def _local_xy(C: Curve, pt: Point, r: int) -> tuple[list[int], list[int]]:
    """Series of x and y in a uniformizer at the affine point ``pt``, to order r."""
    p = C.p
    F = list(P.shift(C.f, pt.x, p)) + [0] * r
    if pt.y % p:
        y = [pt.y % p] + [0] * (r - 1)
        inv = pow(2 * pt.y, -1, p)
        for k in range(1, r):
            acc = F[k] - sum(y[i] * y[k - i] for i in range(1, k))
            y[k] = acc * inv % p
        x = [pt.x % p, 1] + [0] * (r - 2) if r >= 2 else [pt.x % p]
        return x[:r], y
    # branch point: t = y, x = x0 + tau(t) with f(x0 + tau) = t^2
    inv1 = pow(F[1], -1, p)
    tau = [0] * r
    t2 = [0] * r
    if r > 2:
        t2[2] = 1
    for _ in range(r):
        acc = list(t2)
        pw = _smul(tau, tau, r, p)
        for k in range(2, len(F)):
            if not any(pw):
                break
            if F[k]:
                acc = [(a - F[k] * q) % p for a, q in zip(acc, pw)]
            pw = _smul(pw, tau, r, p)
        tau = [a * inv1 % p for a in acc]
    x = list(tau)
    x[0] = (x[0] + pt.x) % p
    y = [0] * r
    if r > 1:
        y[1] = 1
    return x, y


def _monomial_series(C: Curve, pt: Point, monos: Sequence[tuple[int, int]], r: int) -> np.ndarray:
    """Rows: expansion coefficient k; columns: monomials x^i y^e."""
    p = C.p
    x, y = _local_xy(C, pt, r)
    top = max((i for i, _ in monos), default=0)
    powers = [[1] + [0] * (r - 1)]
    for _ in range(top):
        powers.append(_smul(powers[-1], x, r, p))
    cols = []
    for i, e in monos:
        s = powers[i] if e == 0 else _smul(powers[i], y, r, p)
        cols.append(s)
    return np.array(cols, dtype=np.int64).T.reshape(r, len(monos))


def _poly_series(C: Curve, pt: Point, a: tuple, b: tuple, r: int) -> list[int]:
    p = C.p
    x, y = _local_xy(C, pt, r)

    def compose(poly: tuple) -> list[int]:
        acc = [0] * r
        for c in reversed(poly):
            acc = _smul(acc, x, r, p)
            acc[0] = (acc[0] + c) % p
        return acc

    sa = compose(a)
    sb = _smul(compose(b), y, r, p)
    return [(u + v) % p for u, v in zip(sa, sb)]


def _order(series: list[int]) -> int | None:
    for k, c in enumerate(series):
        if c:
            return k
    return None


def order_at(C: Curve, g: RationalForm, pt: Point) -> int:
    """Valuation of g at an affine point (zero orders positive, poles negative)."""
    if pt.is_inf:
        raise ValueError("use pole-order bookkeeping at infinity")
    if g.is_zero:
        raise ValueError("zero form has no order")
    r = 2 * (P.deg(g.a) + P.deg(g.b) + P.deg(g.c)) + 12
    on = _order(_poly_series(C, pt, g.a, g.b, r))
    oc = _order(_poly_series(C, pt, g.c, P.ZERO, r))
    return on - oc


def evaluate(C: Curve, g: RationalForm, pt: Point) -> int:
    """Value of g at an affine point."""
    if pt.is_inf:
        raise ValueError("evaluation at infinity is not supported; use projective coordinates")
    p = C.p
    den = P.evaluate(g.c, pt.x, p)
    if den:
        num = (P.evaluate(g.a, pt.x, p) + P.evaluate(g.b, pt.x, p) * pt.y) % p
        return num * pow(den, -1, p) % p
    r = 2 * (P.deg(g.a) + P.deg(g.b) + P.deg(g.c)) + 12
    sn = _poly_series(C, pt, g.a, g.b, r)
    sc = _poly_series(C, pt, g.c, P.ZERO, r)
    on, oc = _order(sn), _order(sc)
    if on is None or on > oc:
        return 0
    if on < oc:
        raise PoleAtPoint(f"{g!r} has a pole at {pt!r}")
    return sn[on] * pow(sc[oc], -1, p) % p


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


@dataclass(frozen=True, eq=False)
class LinSeries:
    """The complete linear series |div| with an explicit basis of L(div).

    ``numerators`` spans c * L(div) inside the monomial space; basis element i
    is numerators row i divided by ``denom``.
    """

    curve: Curve
    div: Divisor
    cls: DivClass
    monomials: tuple
    denom: tuple
    numerators: linalg.Subspace

    @property
    def dim(self) -> int:
        return self.numerators.dim

    @cached_property
    def basis(self) -> tuple[RationalForm, ...]:
        return tuple(self._form(row) for row in self.numerators.basis)

    @cached_property
    def _pivots(self) -> list[int]:
        return self.numerators.pivots()

    def _num_polys(self, row) -> tuple[tuple, tuple]:
        p = self.curve.p
        na = max((i for i, e in self.monomials if e == 0), default=-1) + 1
        nb = max((j for j, e in self.monomials if e == 1), default=-1) + 1
        a, b = [0] * na, [0] * nb
        for coef, (i, e) in zip(row, self.monomials):
            if e == 0:
                a[i] = int(coef)
            else:
                b[i] = int(coef)
        return P.norm(a, p), P.norm(b, p)

    def _form(self, row) -> RationalForm:
        a, b = self._num_polys(row)
        return canonical(a, b, self.denom, self.curve.p)

    def numerator_polys(self) -> list[tuple[tuple, tuple]]:
        return [self._num_polys(row) for row in self.numerators.basis]

    def coords(self, g: RationalForm) -> np.ndarray:
        return coords_in_basis(g, self)

    def __repr__(self) -> str:
        return f"LinSeries(|{self.div!r}|, deg={self.cls.degree}, dim={self.dim})"


def _monomials(N: int) -> list[tuple[int, int]]:
    if N < 0:
        return []
    xs = [(i, 0) for i in range(N // 2 + 1)]
    ys = [(j, 1) for j in range((N - 5) // 2 + 1)] if N >= 5 else []
    return xs + ys


def rr_space(C: Curve, div: Divisor) -> LinSeries:
    """Basis of L(div) = {g : div(g) + div >= 0}.

    ``div`` needs rational support with affine multiplicities in [-2, 2];
    negative coefficients are allowed and become vanishing conditions.
    """
    p = C.p
    affine = div.affine()
    for pt, m in affine.items():
        if abs(m) > MAX_AFFINE_MULTIPLICITY:
            raise UnsupportedMultiplicity(f"multiplicity {m} at {pt!r}")
        if not C.on_curve(pt):
            raise ValueError(f"{pt!r} is not on the curve")
    denom = P.ONE
    pos_over: dict[int, int] = {}
    ys: dict[int, int] = {}
    for pt, m in affine.items():
        ys[pt.x] = pt.y
        if m > 0:
            denom = P.mul(denom, P.power(P.linear(pt.x, p), m, p), p)
            pos_over[pt.x] = pos_over.get(pt.x, 0) + m
    N = div.at_infinity + 2 * P.deg(denom)
    monos = _monomials(N)
    rows = []
    for x0 in sorted(ys):
        y0 = ys[x0]
        fibre = [Point(x0, 0)] if y0 == 0 else [Point(x0, y0), Point(x0, (-y0) % p)]
        weight = 2 if y0 == 0 else 1
        for q in fibre:
            need = weight * pos_over.get(x0, 0) - div[q]
            if need > 0 and monos:
                rows.extend(_monomial_series(C, q, monos, need))
    if not monos:
        num = linalg.Subspace.zero(p, 0)
    else:
        num = linalg.kernel_basis(rows, p, cols=len(monos))
    return LinSeries(C, div, C.class_of(div), tuple(monos), denom, num)


def coords_in_basis(g: RationalForm, L: LinSeries) -> np.ndarray:
    """Coefficients v with g = sum v_i L.basis[i]; raises NotInSpan otherwise."""
    p = L.curve.p
    if g.is_zero:
        return np.zeros(L.dim, dtype=np.int64)
    qa, ra = P.divmod_(P.mul(g.a, L.denom, p), g.c, p)
    qb, rb = P.divmod_(P.mul(g.b, L.denom, p), g.c, p)
    if ra or rb:
        raise NotInSpan(f"{g!r}: denominator does not divide that of {L!r}")
    index = {m: k for k, m in enumerate(L.monomials)}
    w = np.zeros(len(L.monomials), dtype=np.int64)
    for e, poly_ in ((0, qa), (1, qb)):
        for i, c in enumerate(poly_):
            if c:
                k = index.get((i, e))
                if k is None:
                    raise NotInSpan(f"{g!r}: pole order at infinity too large for {L!r}")
                w[k] = c
    B = L.numerators.basis
    v = np.array([w[pc] for pc in L._pivots], dtype=np.int64)
    if not np.array_equal((v @ B) % p if len(v) else np.zeros_like(w), w):
        raise NotInSpan(f"{g!r} is not in {L!r}")
    return v


# ---------------------------------------------------------------------------
# embedding


@dataclass(frozen=True, eq=False)
class EmbCurve:
    """C in P^{d-2} through the basis of L(H)."""

    curve: Curve
    H: LinSeries
    d: int

    @property
    def ambient_dim(self) -> int:
        return self.d - 2

    @property
    def ncoords(self) -> int:
        return self.d - 1

    @cached_property
    def _numerators(self) -> list[tuple[tuple, tuple]]:
        return self.H.numerator_polys()

    def admissible(self, pt: Point) -> bool:
        """Sample points avoid infinity and every zero of the clearing denominator."""
        return not pt.is_inf and P.evaluate(self.H.denom, pt.x, self.curve.p) != 0

    def image(self, pt: Point) -> np.ndarray:
        """Projective coordinates (s_0(pt) : ... : s_{d-2}(pt)), unnormalized."""
        if not self.admissible(pt):
            raise ValueError(f"{pt!r} is a support or pole point of the coordinates")
        p = self.curve.p
        return np.array(
            [(P.evaluate(a, pt.x, p) + P.evaluate(b, pt.x, p) * pt.y) % p for a, b in self._numerators],
            dtype=np.int64,
        )

    def sample_points(self, rng: random.Random, count: int) -> list[Point]:
        """Distinct random admissible points."""
        C = self.curve
        seen: set[Point] = set()
        out: list[Point] = []
        budget = 50 * count + 1000
        while len(out) < count:
            budget -= 1
            if budget < 0:
                raise InsufficientPoints(f"could not find {count} admissible points over F_{C.p}")
            pt = C.random_point(rng)
            if pt in seen or not self.admissible(pt):
                continue
            seen.add(pt)
            out.append(pt)
        return out


def normalize(v: np.ndarray, p: int) -> tuple[int, ...]:
    """Scale a projective vector so its first nonzero entry is 1."""
    nz = np.flatnonzero(v % p)
    if nz.size == 0:
        raise ValueError("zero vector is not a projective point")
    inv = pow(int(v[nz[0]]), -1, p)
    return tuple(int(x) * inv % p for x in v)


def embed(C: Curve, Hdiv: Divisor) -> EmbCurve:
    d = Hdiv.degree
    if d < 6:
        raise DegreeTooSmall(f"deg H = {d}; the embedding needs d >= 6")
    H = rr_space(C, Hdiv)
    if H.dim != d - 1:
        raise AssertionError(f"h0(H) = {H.dim}, expected {d - 1}")
    return EmbCurve(C, H, d)


# ---------------------------------------------------------------------------
# pencils


def basepoint(L: LinSeries) -> Point | None:
    """Basepoint of a pencil: for degree 3, the P with |D| = |K + P|."""
    C = L.curve
    if C.h0(L.cls) != 2:
        raise NotAPencil(f"h0 = {C.h0(L.cls)} for {L!r}")
    if L.cls.degree == 2:
        return None
    if L.cls.degree != 3:
        raise NotAPencil(f"degree {L.cls.degree} series with h0 = 2")
    return C.effective_point(C.sub(L.cls, C.canonical_class()))


def contains_s_conditions(C: Curve, Hcls: DivClass, Dcls: DivClass) -> bool:
    """Class-level test for the g13-scroll of |D| containing the g12-scroll."""
    K = C.canonical_class()
    if C.is_effective(C.sub(Dcls, K)):
        return True
    d = Hcls.degree
    if d == 6 and C.is_effective(C.combine((1, Hcls), (-1, Dcls), (-1, K))):
        return True
    if d == 7 and Hcls == C.combine((1, Dcls), (2, K)):
        return True
    return False


def affine_points(C: Curve) -> list[Point]:
    return [pt for pt in C.points() if not pt.is_inf]


def random_g13(
    C: Curve,
    rng: random.Random,
    force_basepoint_free: bool = False,
    H: DivClass | None = None,
    max_tries: int = 1000,
) -> LinSeries:
    """|D| for D a sum of three random distinct affine rational points.

    With ``H`` given, rejects D whose scroll would contain the g12-scroll.
    """
    pts = affine_points(C)
    if len(pts) < 3:
        raise InsufficientPoints(f"{len(pts)} affine points over F_{C.p}")
    for _ in range(max_tries):
        D = Divisor.of(*rng.sample(pts, 3))
        cls = C.class_of(D)
        if force_basepoint_free and C.is_effective(C.sub(cls, C.canonical_class())):
            continue
        if H is not None and contains_s_conditions(C, H, cls):
            continue
        return rr_space(C, D)
    raise InsufficientPoints("no divisor met the requested conditions")
