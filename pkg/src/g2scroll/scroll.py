"""Scrolls swept out by the g12 and by g13 pencils on an embedded genus-2 curve.

A member D_l = D + div(f_l) of the pencil |D| spans a linear space whose
annihilator in H^0(O(1)) = L(H) is f_l * L(H - D).  Writing f_l = l0 g0 + l1 g1
for a basis g0, g1 of L(D), the annihilator of every fiber is read off two
fixed matrices, ``l0 M0 + l1 M1``.  Scroll points are sampled fiber by fiber
and the quadrics through a variety are the kernel of the evaluation map on
degree-2 monomials.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import linalg
from . import poly as P
from .curve import Curve, DivClass, Divisor, Point
from .errors import BoundViolation, DegenerateFiber, UnexpectedRank
from .series import (
    EmbCurve,
    LinSeries,
    basepoint,
    contains_s_conditions,
    coords_in_basis,
    embed,
    form_mul,
    rr_space,
)

log = logging.getLogger(__name__)

DEFAULT_MARGIN = 10


@dataclass(frozen=True, order=True)
class ScrollType:
    """Splitting type (e1 >= ... >= ek >= 0) of a rational normal scroll."""

    es: tuple[int, ...]

    def __post_init__(self):
        es = tuple(int(e) for e in self.es)
        object.__setattr__(self, "es", es)
        if any(e < 0 for e in es) or list(es) != sorted(es, reverse=True):
            raise ValueError(f"scroll type must be nonincreasing and nonnegative: {es}")
        if sum(es) < 2:
            raise ValueError(f"scroll degree {sum(es)} < 2")

    @property
    def k(self) -> int:
        return len(self.es)

    @property
    def f(self) -> int:
        return sum(self.es)

    @property
    def N(self) -> int:
        """Dimension of the ambient projective space."""
        return self.k + self.f - 1

    def __getitem__(self, i: int) -> int:
        return self.es[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.es)) + ")"

    @classmethod
    def parse(cls, s: str) -> "ScrollType":
        return cls(tuple(int(t) for t in s.strip("() ").split(",")))


def type_from_profile(h: Sequence[int], k: int) -> ScrollType:
    """Scroll type from h_i = h0(H - iF): d_i = h_i - h_{i+1}, e_r = #{j : d_j >= r} - 1."""
    h = list(h) + [0]
    d = [h[i] - h[i + 1] for i in range(len(h) - 1)]
    return ScrollType(tuple(sum(1 for dj in d if dj >= r) - 1 for r in range(1, k + 1)))


# ---------------------------------------------------------------------------
# quadrics


@lru_cache(maxsize=None)
def quad_monomials(n: int) -> tuple[tuple[int, int], ...]:
    """Degree-2 monomials z_i z_j (i <= j) in n variables, in lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i, n))


def veronese(points: np.ndarray, p: int) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64) % p
    mons = quad_monomials(pts.shape[1])
    ii = np.array([i for i, _ in mons])
    jj = np.array([j for _, j in mons])
    return (pts[:, ii] * pts[:, jj]) % p


@dataclass(frozen=True)
class QuadSpace:
    """Subspace of degree-2 forms in ``nvars`` projective coordinates."""

    nvars: int
    space: linalg.Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def monomials(self) -> tuple[tuple[int, int], ...]:
        return quad_monomials(self.nvars)

    def values(self, points) -> np.ndarray:
        """Matrix of values: rows = points, columns = basis quadrics."""
        V = veronese(np.atleast_2d(points), self.space.p)
        return (V @ self.space.basis.T) % self.space.p

    def vanishes_on(self, points) -> bool:
        return not self.values(points).any()


def expected_quadrics(kind: str, d: int) -> int:
    if kind == "C":
        return (d * d - 5 * d + 2) // 2
    if kind == "S":
        return math.comb(d - 3, 2)
    if kind == "V":
        return math.comb(d - 4, 2)
    raise ValueError(kind)


def quadrics_of(points, nvars: int, p: int, expected: int | None = None, margin: int = DEFAULT_MARGIN) -> QuadSpace:
    """Quadrics vanishing on the given projective points."""
    nmon = len(quad_monomials(nvars))
    pts = np.asarray(points, dtype=np.int64).reshape(-1, nvars)
    if pts.shape[0] < nmon + margin:
        raise ValueError(f"{pts.shape[0]} points; need at least {nmon + margin}")
    q = QuadSpace(nvars, linalg.kernel_basis(veronese(pts, p), p, cols=nmon))
    if expected is not None and q.dim != expected:
        raise UnexpectedRank(f"{q.dim} quadrics through the sample, expected {expected}")
    return q


def curve_quadrics(emb: EmbCurve, rng: random.Random, method: str = "points", margin: int = DEFAULT_MARGIN) -> QuadSpace:
    """H^0(I_C(2)), from sampled curve points or exactly from the multiplication map.

    ``method="multiplication"`` takes the kernel of Sym^2 L(H) -> L(2H) and
    needs no rational points; it serves as the independent check of the
    sampled version.
    """
    p, n = emb.curve.p, emb.ncoords
    want = expected_quadrics("C", emb.d)
    if method == "points":
        count = len(quad_monomials(n)) + margin
        for attempt in range(2):
            pts = [emb.image(pt) for pt in emb.sample_points(rng, count)]
            try:
                return quadrics_of(pts, n, p, expected=want, margin=margin)
            except UnexpectedRank:
                if attempt:
                    raise
                log.info("resampling curve quadrics with %d points", 2 * count)
                count *= 2
    if method != "multiplication":
        raise ValueError(method)
    C = emb.curve
    nums = emb.H.numerator_polys()
    prods = []
    for i, j in quad_monomials(n):
        ai, bi = nums[i]
        aj, bj = nums[j]
        A = P.add(P.mul(ai, aj, p), P.mul(P.mul(bi, bj, p), C.f, p), p)
        B = P.add(P.mul(ai, bj, p), P.mul(aj, bi, p), p)
        prods.append((A, B))
    la = max(len(A) for A, _ in prods)
    lb = max(len(B) for _, B in prods)
    rows = [list(A) + [0] * (la - len(A)) + list(B) + [0] * (lb - len(B)) for A, B in prods]
    q = QuadSpace(n, linalg.left_kernel(rows, p, cols=la + lb))
    if q.dim != want:
        raise UnexpectedRank(f"{q.dim} quadrics from the multiplication map, expected {want}")
    return q


# ---------------------------------------------------------------------------
# fibers


def _lambda(t: int, p: int) -> tuple[int, int]:
    """Index t in [0, p] onto P^1(F_p)."""
    return (1, t) if t < p else (0, 1)


@dataclass(frozen=True, eq=False)
class FiberFamily:
    """Annihilators of all fibers of the scroll of |D|: l0*M0 + l1*M1."""

    emb: EmbCurve
    D: LinSeries
    M0: np.ndarray
    M1: np.ndarray

    @property
    def rank(self) -> int:
        return self.emb.ncoords - self.D.cls.degree

    def forms(self, lam: tuple[int, int]) -> np.ndarray:
        return (lam[0] * self.M0 + lam[1] * self.M1) % self.emb.curve.p

    def span(self, lam: tuple[int, int]) -> linalg.Subspace:
        s = linalg.Subspace.span(self.forms(lam), self.emb.curve.p, self.emb.ncoords)
        if s.dim != self.rank:
            raise DegenerateFiber(f"fiber {lam} has annihilator rank {s.dim}, expected {self.rank}")
        return s


@lru_cache(maxsize=64)
def fiber_family(emb: EmbCurve, D: LinSeries) -> FiberFamily:
    C = emb.curve
    if D.dim != 2:
        raise ValueError(f"{D!r} is not a pencil")
    if emb.d - D.cls.degree < 3:
        raise ValueError("need deg H - deg D >= 3")
    T = rr_space(C, emb.H.div - D.div)
    if T.dim != emb.d - 1 - D.cls.degree:
        raise AssertionError(f"h0(H - D) = {T.dim}, expected {emb.d - 1 - D.cls.degree}")
    g0, g1 = D.basis
    M0 = np.array([coords_in_basis(form_mul(C, g0, t), emb.H) for t in T.basis], dtype=np.int64)
    M1 = np.array([coords_in_basis(form_mul(C, g1, t), emb.H) for t in T.basis], dtype=np.int64)
    return FiberFamily(emb, D, M0.reshape(T.dim, emb.ncoords), M1.reshape(T.dim, emb.ncoords))


def fiber_span(emb: EmbCurve, D: LinSeries, lam: tuple[int, int]) -> linalg.Subspace:
    """Linear forms vanishing on the span of the member D_l of |D|."""
    return fiber_family(emb, D).span(lam)


def fiber_points(emb: EmbCurve, D: LinSeries, lam: tuple[int, int], rng: random.Random, count: int) -> list[np.ndarray]:
    p = emb.curve.p
    fam = fiber_family(emb, D)
    forms = fam.span(lam)
    sol = linalg.kernel_basis(forms.basis, p, cols=emb.ncoords)
    if sol.dim != D.cls.degree:
        raise DegenerateFiber(f"fiber {lam} has projective dimension {sol.dim - 1}")
    out = []
    while len(out) < count:
        c = np.array([rng.randrange(p) for _ in range(sol.dim)], dtype=np.int64)
        v = (c @ sol.basis) % p
        if v.any():
            out.append(v)
    return out


def scroll_points(emb: EmbCurve, D: LinSeries, count: int, rng: random.Random, per_fiber: int | None = None) -> list[np.ndarray]:
    """``count`` points on the scroll, a few on each of many random fibers."""
    if count < 1:
        raise ValueError("count must be >= 1")
    p = emb.curve.p
    per = per_fiber or D.cls.degree
    nfib = min(p + 1, math.ceil(count / per))
    per = math.ceil(count / nfib)
    base = rng.getrandbits(64)
    pts: list[np.ndarray] = []
    for idx, t in enumerate(rng.sample(range(p + 1), nfib)):
        sub = random.Random(f"{base}:{idx}")
        pts.extend(fiber_points(emb, D, _lambda(t, p), sub, per))
    return pts[:count]


def _sample_quadrics(emb: EmbCurve, D: LinSeries, rng: random.Random, margin: int) -> tuple[QuadSpace, list]:
    kind = "S" if D.cls.degree == 2 else "V"
    want = expected_quadrics(kind, emb.d)
    n = emb.ncoords
    count = len(quad_monomials(n)) + margin
    for attempt in range(2):
        pts = scroll_points(emb, D, count, rng)
        try:
            return quadrics_of(pts, n, emb.curve.p, expected=want, margin=margin), pts
        except UnexpectedRank:
            if attempt:
                raise
            log.info("resampling %s-scroll quadrics with %d points", kind, 2 * count)
            count *= 2
    raise AssertionError("unreachable")


def scroll_quadrics(emb: EmbCurve, D: LinSeries, rng: random.Random, margin: int = DEFAULT_MARGIN) -> QuadSpace:
    """H^0(I_X(2)) for the scroll X of |D|, checked against C(codim + 1, 2)."""
    return _sample_quadrics(emb, D, rng, margin)[0]


# ---------------------------------------------------------------------------
# scroll types


def h0_profile(C: Curve, Hcls: DivClass, Dcls: DivClass) -> list[int]:
    """[h0(H - iD) for i = 0, 1, ...] up to the first zero (excluded)."""
    out = []
    cl = Hcls
    while True:
        h = C.h0(cl)
        if h == 0:
            return out
        out.append(h)
        cl = C.sub(cl, Dcls)


def di_profile(C: Curve, Hcls: DivClass, Dcls: DivClass) -> list[int]:
    h = h0_profile(C, Hcls, Dcls) + [0]
    return [h[i] - h[i + 1] for i in range(len(h) - 1)]


def scroll_type(emb: EmbCurve, D: LinSeries) -> ScrollType:
    """Type of the scroll of |D| from h0(H - iD); a g13 with basepoint P goes
    through the g12-type of |H - P| with a zero appended."""
    C = emb.curve
    k = D.cls.degree
    if k not in (2, 3):
        raise ValueError(f"pencil of degree {k}")
    H = emb.H.cls
    if k == 3:
        P0 = basepoint(D)
        if P0 is not None:
            Hp = C.sub(H, C.point_class(P0))
            e1, e2 = type_from_profile(h0_profile(C, Hp, C.canonical_class()), 2).es
            return ScrollType((e1, e2, 0))
    return type_from_profile(h0_profile(C, H, D.cls), k)


def scroll_type_from_fibers(emb: EmbCurve, D: LinSeries, rng: random.Random) -> ScrollType:
    """Type read off the scroll itself: h_i = #independent hyperplanes containing i fibers."""
    fam = fiber_family(emb, D)
    p = emb.curve.p
    ts = rng.sample(range(p + 1), emb.d)
    h = [emb.ncoords]
    cur = linalg.Subspace.full(p, emb.ncoords)
    for t in ts:
        cur = linalg.span_intersect(cur, fam.span(_lambda(t, p)))
        if cur.dim == 0:
            break
        h.append(cur.dim)
    return type_from_profile(h, D.cls.degree)


def v_contains_s(emb: EmbCurve, D: LinSeries) -> bool:
    if D.cls.degree != 3:
        raise ValueError("v_contains_s takes a g13")
    return contains_s_conditions(emb.curve, emb.H.cls, D.cls)


# ---------------------------------------------------------------------------
# assembled scrolls


@dataclass(eq=False)
class Instance:
    """An embedded curve together with a chosen g13."""

    emb: EmbCurve
    D: LinSeries
    seed: int = 0
    label: str = ""
    spec: Any = None

    @property
    def curve(self) -> Curve:
        return self.emb.curve

    @property
    def d(self) -> int:
        return self.emb.d

    @property
    def K(self) -> LinSeries:
        return canonical_series(self.emb.curve)

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")


@lru_cache(maxsize=None)
def canonical_series(C: Curve) -> LinSeries:
    """|K| = |2 inf| with basis {1, x}."""
    return rr_space(C, Divisor.infinity(2))


@dataclass(eq=False)
class PencilScroll:
    emb: EmbCurve
    D: LinSeries
    fibers: list[tuple[tuple[int, int], linalg.Subspace]]
    points: list[np.ndarray]
    quads: QuadSpace
    stype: ScrollType

    @property
    def dim(self) -> int:
        return self.D.cls.degree

    @property
    def codim(self) -> int:
        return self.emb.ambient_dim - self.dim


def build_scroll(emb: EmbCurve, D: LinSeries, rng: random.Random, nfibers: int = 8, margin: int = DEFAULT_MARGIN) -> PencilScroll:
    p = emb.curve.p
    fam = fiber_family(emb, D)
    fibers = [(lam, fam.span(lam)) for lam in (_lambda(t, p) for t in rng.sample(range(p + 1), nfibers))]
    quads, pts = _sample_quadrics(emb, D, rng, margin)
    return PencilScroll(emb, D, fibers, pts, quads, scroll_type(emb, D))


# ---------------------------------------------------------------------------
# singular scrolls through the curve


def _distinct_x_points(C: Curve, rng: random.Random, n: int, avoid_x: set | None = None) -> list[Point]:
    """n random non-Weierstrass affine points with pairwise distinct x."""
    used = set(avoid_x or ())
    out = []
    while len(out) < n:
        pt = C.random_point(rng, weierstrass=False)
        if pt.x in used:
            continue
        used.add(pt.x)
        out.append(pt)
    return out


def g12_divisor_for_type(C: Curve, e1: int, e2: int, rng: random.Random) -> Divisor:
    """A divisor H' of degree e1 + e2 + 3 whose g12-scroll has type (e1, e2)."""
    delta = e1 - e2
    dp = e1 + e2 + 3
    if delta == 3:
        return Divisor.infinity(dp)
    if delta == 2:
        (Q,) = _distinct_x_points(C, rng, 1)
        return Divisor.infinity(dp - 1) + Divisor.of(Q)
    if delta == 1:
        return Divisor.infinity(dp - 2) + Divisor.of(*_distinct_x_points(C, rng, 2))
    if delta == 0:
        return Divisor.infinity(dp - 3) + Divisor.of(*_distinct_x_points(C, rng, 3))
    raise BoundViolation(f"e1 - e2 = {delta} outside 0..3")


def cone_instance(e1: int, e2: int, C: Curve, seed: int = 0) -> Instance:
    """H = H' + P with |H'| of g12-type (e1, e2) and D = K + P: V_|D| is the cone of type (e1, e2, 0)."""
    if e2 < 0 or e1 < e2:
        raise BoundViolation(f"need e1 >= e2 >= 0, got ({e1},{e2})")
    if e1 - e2 > 3:
        raise BoundViolation(f"e1 - e2 = {e1 - e2} > 3")
    if e1 + e2 < 2:
        raise BoundViolation(f"e1 + e2 = {e1 + e2} < 2")
    rng = random.Random(f"cone:{seed}:{e1}:{e2}")
    Hp = g12_divisor_for_type(C, e1, e2, rng)
    used = {pt.x for pt in Hp if not pt.is_inf}
    (P0,) = _distinct_x_points(C, rng, 1, used)
    emb = embed(C, Hp + Divisor.of(P0))
    D = rr_space(C, Divisor.infinity(2) + Divisor.of(P0))
    inst = Instance(emb, D, seed=seed, label=f"cone({e1},{e2})")
    got = scroll_type(emb, D)
    if got != ScrollType((e1, e2, 0)):
        raise AssertionError(f"cone construction produced {got}, wanted ({e1},{e2},0)")
    return inst
