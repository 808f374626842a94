"""Intersection numbers on rational normal scrolls.

On a k-dimensional scroll of degree f with hyperplane class H and ruling F,
H^k = f, H^{k-1}.F = 1 and F^2 = 0.  A divisor class aH + bF is a
:class:`SurfClass` (on a surface it is also a curve class); a curve class on a
threefold is aH^2 + bH.F.  These integers are an oracle for the scroll-engine:
the curve must meet the minimal section B0 = H - e1 F nonnegatively, which
gives the bounds on scroll types.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeTooSmall, DimensionMismatch
from .scroll import ScrollType


@dataclass(frozen=True)
class SurfClass:
    """a H + b F on a scroll of degree f."""

    a: int
    b: int
    f: int

    def __add__(self, other: "SurfClass") -> "SurfClass":
        _same_f(self.f, other.f)
        return SurfClass(self.a + other.a, self.b + other.b, self.f)

    def __sub__(self, other: "SurfClass") -> "SurfClass":
        return self + other.scale(-1)

    def scale(self, k: int) -> "SurfClass":
        return SurfClass(k * self.a, k * self.b, self.f)


@dataclass(frozen=True)
class ThreefoldCurveClass:
    """a H^2 + b H.F on a threefold scroll of degree f."""

    a: int
    b: int
    f: int


def _same_f(f1: int, f2: int) -> None:
    if f1 != f2:
        raise DimensionMismatch(f"classes live on scrolls of degrees {f1} and {f2}")


def hyperplane(f: int) -> SurfClass:
    return SurfClass(1, 0, f)


def ruling(f: int) -> SurfClass:
    return SurfClass(0, 1, f)


def minimal_section(t: ScrollType) -> SurfClass:
    """B0 = H - e1 F."""
    return SurfClass(1, -t[0], t.f)


def surf_intersect(c1: SurfClass, c2: SurfClass) -> int:
    _same_f(c1.f, c2.f)
    return c1.a * c2.a * c1.f + c1.a * c2.b + c2.a * c1.b


def _bisection_class(d: int) -> SurfClass:
    """Class 2H - (d-6)F of a degree-d curve meeting each ruling twice on a scroll of degree d - 3."""
    return SurfClass(2, -(d - 6), d - 3)


def curve_class_on_S(d: int) -> SurfClass:
    """[C] = 2H - (d-6)F on the g12-scroll, of degree d - 3."""
    if d < 6:
        raise DegreeTooSmall(f"d = {d} < 6")
    return _bisection_class(d)


def curve_class_on_V(d: int) -> ThreefoldCurveClass:
    """[C] = 3H^2 - 2(d-6)H.F on a g13-scroll, of degree d - 4."""
    if d < 6:
        raise DegreeTooSmall(f"d = {d} < 6")
    return ThreefoldCurveClass(3, -2 * (d - 6), d - 4)


def threefold_intersect(cc: ThreefoldCurveClass, dv: SurfClass) -> int:
    """(aH^2 + bHF).(cH + eF) with H^3 = f, H^2F = 1, HF^2 = 0."""
    _same_f(cc.f, dv.f)
    return cc.a * dv.a * cc.f + cc.a * dv.b + cc.b * dv.a


def check_type_bounds(t: ScrollType, singular_through_C: bool = False) -> bool:
    """[C].B0 >= 0 for the curve on a scroll of type t.

    Surfaces give e1 - e2 <= 3.  Threefolds give 2e1 - e2 - e3 <= 4 when the
    curve misses the singular locus; when it passes through it (e3 = 0, the
    cone over the g12-scroll of H - P) the surface bound on (e1, e2) applies
    to the projected curve of degree d - 1, which is 5 when d = 6.
    """
    if t.k == 2:
        return surf_intersect(curve_class_on_S(t.f + 3), minimal_section(t)) >= 0
    if t.k == 3:
        if singular_through_C:
            if t[2] != 0:
                return False
            base = ScrollType(t.es[:2])
            return surf_intersect(_bisection_class(base.f + 3), minimal_section(base)) >= 0
        return threefold_intersect(curve_class_on_V(t.f + 4), minimal_section(t)) >= 0
    raise ValueError(f"no bound for {t.k}-dimensional scrolls")
