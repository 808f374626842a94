import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2scroll.errors import DegreeTooSmall, DimensionMismatch
from g2scroll.picard import (
    SurfClass,
    ThreefoldCurveClass,
    check_type_bounds,
    curve_class_on_S,
    curve_class_on_V,
    hyperplane,
    minimal_section,
    ruling,
    surf_intersect,
    threefold_intersect,
)
from g2scroll.scroll import ScrollType

small = st.integers(-20, 20)
degrees = st.integers(1, 30)


def test_basic_intersections():
    H, F = hyperplane(5), ruling(5)
    assert surf_intersect(H, H) == 5
    assert surf_intersect(H, F) == 1
    assert surf_intersect(F, F) == 0
    # B0^2 = -(e1 - e2) on a surface scroll
    t = ScrollType((4, 1))
    B0 = minimal_section(t)
    assert surf_intersect(B0, B0) == -(4 - 1)
    assert surf_intersect(B0, F) == 1


def test_threefold_intersections():
    f = 6
    assert threefold_intersect(ThreefoldCurveClass(1, 0, f), hyperplane(f)) == f
    assert threefold_intersect(ThreefoldCurveClass(1, 0, f), ruling(f)) == 1
    assert threefold_intersect(ThreefoldCurveClass(0, 1, f), hyperplane(f)) == 1
    assert threefold_intersect(ThreefoldCurveClass(0, 1, f), ruling(f)) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        surf_intersect(hyperplane(3), hyperplane(4))
    with pytest.raises(DimensionMismatch):
        hyperplane(3) + ruling(4)
    with pytest.raises(DimensionMismatch):
        threefold_intersect(ThreefoldCurveClass(1, 0, 3), hyperplane(4))


@given(small, small, small, small, degrees)
def test_surface_pairing_symmetric(a, b, c, e, f):
    x, y = SurfClass(a, b, f), SurfClass(c, e, f)
    assert surf_intersect(x, y) == surf_intersect(y, x)


@given(small, small, small, small, small, small, degrees)
def test_surface_pairing_bilinear(a, b, c, e, g, h, f):
    x, y, z = SurfClass(a, b, f), SurfClass(c, e, f), SurfClass(g, h, f)
    assert surf_intersect(x + y, z) == surf_intersect(x, z) + surf_intersect(y, z)
    assert surf_intersect(x.scale(3), z) == 3 * surf_intersect(x, z)
    assert surf_intersect(x - x, z) == 0


@given(small, small, small, small, small, degrees)
def test_threefold_pairing_linear(a, b, c, e, k, f):
    cc = ThreefoldCurveClass(a, b, f)
    D1, D2 = SurfClass(c, e, f), SurfClass(k, 1, f)
    assert threefold_intersect(cc, D1 + D2) == threefold_intersect(cc, D1) + threefold_intersect(cc, D2)


@pytest.mark.parametrize("d", range(6, 21))
def test_curve_class_identities(d):
    S = curve_class_on_S(d)
    assert surf_intersect(S, ruling(d - 3)) == 2
    assert surf_intersect(S, hyperplane(d - 3)) == d
    V = curve_class_on_V(d)
    assert threefold_intersect(V, ruling(d - 4)) == 3
    assert threefold_intersect(V, hyperplane(d - 4)) == d


def test_curve_class_too_small():
    with pytest.raises(DegreeTooSmall):
        curve_class_on_S(5)
    with pytest.raises(DegreeTooSmall):
        curve_class_on_V(5)


def test_bound_examples():
    assert check_type_bounds(ScrollType((3, 0)))
    assert not check_type_bounds(ScrollType((4, 0)))
    assert check_type_bounds(ScrollType((3, 1, 1)))
    assert not check_type_bounds(ScrollType((4, 1, 1)))
    assert check_type_bounds(ScrollType((3, 0, 0)), singular_through_C=True)
    assert not check_type_bounds(ScrollType((4, 0, 0)), singular_through_C=True)
    assert not check_type_bounds(ScrollType((2, 1, 1)), singular_through_C=True)
    with pytest.raises(ValueError):
        check_type_bounds(ScrollType((1, 1, 1, 1)))


def test_bounds_match_closed_forms():
    """[C].B0 >= 0 is exactly e1 - e2 <= 3 on surfaces and 2e1 - e2 - e3 <= 4 on threefolds."""
    for e1, e2 in itertools.product(range(12), repeat=2):
        if e1 >= e2 and e1 + e2 >= 3:
            assert check_type_bounds(ScrollType((e1, e2))) == (e1 - e2 <= 3)
    for e1, e2, e3 in itertools.product(range(9), repeat=3):
        if e1 >= e2 >= e3 and e1 + e2 + e3 >= 2:
            assert check_type_bounds(ScrollType((e1, e2, e3))) == (2 * e1 - e2 - e3 <= 4)


def test_cone_bounds_cover_degree_six():
    """A cone of degree 6 projects to a quintic on a quadric surface; the bound still applies."""
    for e in [(2, 0, 0), (1, 1, 0)]:
        assert check_type_bounds(ScrollType(e), singular_through_C=True)
