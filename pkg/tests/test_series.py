import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2scroll import poly as P
from g2scroll.curve import INF, Divisor, Point, make_curve
from g2scroll.errors import DegreeTooSmall, InsufficientPoints, NotAPencil, NotInSpan, PoleAtPoint
from g2scroll.series import (
    RationalForm,
    basepoint,
    canonical,
    coords_in_basis,
    embed,
    evaluate,
    form_combination,
    form_mul,
    form_x,
    form_y,
    order_at,
    random_g13,
    rr_space,
)

from oracles import projective_rank

seeds = st.integers(0, 2**32)


def forms(L):
    return [str(g) for g in L.basis]


def pole_order_at_infinity(g: RationalForm) -> int:
    """-ord_inf of (a + b y)/c from the grading deg x = 2, deg y = 5."""
    top = max(2 * P.deg(g.a) if g.a else -10**9, 5 + 2 * P.deg(g.b) if g.b else -10**9)
    return top - 2 * P.deg(g.c)


# --- rr_space -------------------------------------------------------------


def test_rr_small_spaces(C7):
    L2 = rr_space(C7, Divisor.infinity(2))
    assert L2.dim == 2 and set(forms(L2)) == {"1", "x"}
    L6 = rr_space(C7, Divisor.infinity(6))
    assert L6.dim == 5
    assert set(forms(L6)) == {"1", "x", "x^2", "x^3", "(1)*y"}
    L0 = rr_space(C7, Divisor())
    assert L0.dim == 1 and forms(L0) == ["1"]


def test_rr_basis_respects_pole_bounds(C):
    """Every basis element g satisfies div(g) + D >= 0, checked through local orders."""
    rng = random.Random(11)
    for n in range(1, 9):
        pts = [C.random_point(rng) for _ in range(rng.randint(0, min(n, 4)))]
        div = Divisor.of(*pts) + Divisor.infinity(n - len(pts))
        if any(m > 2 for _, m in div.affine().items()):
            continue
        L = rr_space(C, div)
        for g in L.basis:
            for Q, m in div.affine().items():
                assert order_at(C, g, Q) >= -m
            for root in P.roots(g.c, C.p) if P.deg(g.c) > 0 else []:
                y0 = P.sqrt_mod(P.evaluate(C.f, root, C.p), C.p)
                for Q in {Point(root, y0), Point(root, (-y0) % C.p)}:
                    assert order_at(C, g, Q) >= -div[Q]
            assert pole_order_at_infinity(g) <= div.at_infinity


def test_rr_independent_basis(C):
    L = rr_space(C, Divisor.infinity(9))
    rng = random.Random(0)
    pts = [C.random_point(rng) for _ in range(30)]
    M = [[evaluate(C, g, pt) for g in L.basis] for pt in pts]
    assert projective_rank(M, C.p) == L.dim == 8


def test_rr_negative_coefficients(C):
    rng = random.Random(4)
    Q = C.random_point(rng, weierstrass=False)
    L = rr_space(C, Divisor.infinity(6) - Divisor.of(Q))
    assert L.dim == 4
    assert all(evaluate(C, g, Q) == 0 for g in L.basis)
    W = Point(0, 0)
    LW = rr_space(C, Divisor.infinity(6) - Divisor({W: 2}))
    assert LW.dim == 3
    assert all(order_at(C, g, W) >= 2 for g in LW.basis)


# --- local orders and evaluation -----------------------------------------


def test_local_orders(C7):
    x_minus = lambda x0: canonical(((-x0) % 7, 1), (), (1,), 7)  # noqa: E731
    assert order_at(C7, x_minus(0), Point(0, 0)) == 2
    assert order_at(C7, form_y(7), Point(0, 0)) == 1
    assert order_at(C7, x_minus(2), Point(2, 3)) == 1
    assert order_at(C7, canonical((1,), (), (6, 1), 7), Point(1, 0)) == -2


def test_evaluate_examples(C7):
    one = canonical((1,), (), (1,), 7)
    assert evaluate(C7, one, Point(2, 3)) == 1
    assert evaluate(C7, form_x(7), Point(2, 3)) == 2
    assert evaluate(C7, canonical((), (1,), (6, 1), 7), Point(2, 3)) == 3
    with pytest.raises(PoleAtPoint):
        evaluate(C7, canonical((1,), (), (5, 1), 7), Point(2, 3))
    # y / x at the Weierstrass point (0,0) is a genuine pole; x / y there is 0
    with pytest.raises(PoleAtPoint):
        evaluate(C7, canonical((), (1,), (0, 1), 7), Point(0, 0))
    assert evaluate(C7, canonical((0, 1), (), (1,), 7), Point(0, 0)) == 0


# --- embedding ------------------------------------------------------------


def test_embed_f7(C7):
    emb = embed(C7, Divisor.infinity(6))
    assert emb.ambient_dim == 4
    assert emb.image(Point(2, 3)).tolist() == [1, 2, 4, 1, 3]


def test_embed_degree_too_small(C7):
    with pytest.raises(DegreeTooSmall):
        embed(C7, Divisor.infinity(5))


def test_embed_no_trisecants_and_basepoint_free(C):
    rng = random.Random(9)
    pts = [C.random_point(rng, weierstrass=False) for _ in range(7)]
    emb = embed(C, Divisor.of(*pts))
    sample = emb.sample_points(rng, 60)
    imgs = [emb.image(pt) for pt in sample]
    assert all(v.any() for v in imgs)
    for _ in range(100):
        tri = rng.sample(imgs, 3)
        assert projective_rank(tri, C.p) == 3
    assert projective_rank(imgs[:2], C.p) == 2


# --- coords_in_basis ------------------------------------------------------


def test_coords_examples(C7):
    L = rr_space(C7, Divisor.infinity(6))
    for i, g in enumerate(L.basis):
        e = np.zeros(L.dim, dtype=int)
        e[i] = 1
        assert coords_in_basis(g, L).tolist() == e.tolist()
    assert not coords_in_basis(RationalForm((), (), (1,)), L).any()
    xx = form_mul(C7, form_x(7), form_x(7))
    v = coords_in_basis(xx, L)
    assert form_combination(C7, v, L.basis) == xx
    with pytest.raises(NotInSpan):
        coords_in_basis(form_mul(C7, form_x(7), form_y(7)), L)


@given(seeds)
def test_coords_round_trip(seed):
    C = make_curve(10007, [0, -1, 0, 0, 0, 1])
    rng = random.Random(seed)
    pts = [C.random_point(rng) for _ in range(rng.randint(0, 3))]
    div = Divisor.of(*pts) + Divisor.infinity(rng.randint(3, 7))
    if any(m > 2 for _, m in div.affine().items()):
        return
    L = rr_space(C, div)
    coeffs = [rng.randrange(C.p) for _ in range(L.dim)]
    g = form_combination(C, coeffs, L.basis)
    assert coords_in_basis(g, L).tolist() == coeffs


# --- pencils --------------------------------------------------------------


def test_basepoint_examples(C7, C):
    assert basepoint(rr_space(C7, Divisor.infinity(3))) == INF
    assert basepoint(rr_space(C7, Divisor.infinity(2))) is None
    rng = random.Random(1)
    for _ in range(20):
        pt = C.random_point(rng)
        assert basepoint(rr_space(C, Divisor.infinity(2) + Divisor.of(pt))) == pt
    with pytest.raises(NotAPencil):
        basepoint(rr_space(C, Divisor.infinity(4)))


def test_basepoint_generic_none(C7):
    y3 = P.sqrt_mod(P.evaluate(C7.f, 3, 7), 7)
    D = Divisor.of(Point(2, 3), Point(3, y3), Point(0, 0))
    cl = C7.sub(C7.class_of(D), C7.canonical_class())
    assert cl.weight == 2
    assert basepoint(rr_space(C7, D)) is None


@given(seeds)
def test_random_g13(seed):
    C = make_curve(10007, [0, -1, 0, 0, 0, 1])
    L = random_g13(C, random.Random(seed), force_basepoint_free=True)
    assert L.dim == 2 == C.h0(L.cls)
    assert basepoint(L) is None
    again = random_g13(C, random.Random(seed), force_basepoint_free=True)
    assert again.cls == L.cls


def test_random_g13_insufficient_points():
    C = make_curve(5, [0, 1, 0, 1, 0, 1])
    with pytest.raises(InsufficientPoints):
        random_g13(C, random.Random(0))
