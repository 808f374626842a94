import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2scroll import poly as P

from oracles import from_gf, gf_poly

p = 101
polys = st.lists(st.integers(0, p - 1), max_size=7).map(lambda c: P.norm(c, p))
nonzero = polys.filter(bool)


@given(polys, polys)
def test_mul_add_match_sympy(a, b):
    assert P.mul(a, b, p) == from_gf(gf_poly(a, p) * gf_poly(b, p), p)
    assert P.add(a, b, p) == from_gf(gf_poly(a, p) + gf_poly(b, p), p)
    assert P.sub(a, b, p) == from_gf(gf_poly(a, p) - gf_poly(b, p), p)


@given(polys, nonzero)
def test_divmod_matches_sympy(a, b):
    q, r = P.divmod_(a, b, p)
    sq, sr = gf_poly(a, p).div(gf_poly(b, p))
    assert (q, r) == (from_gf(sq, p), from_gf(sr, p))


@given(polys, polys)
def test_gcd_matches_sympy(a, b):
    g = P.gcd(a, b, p)
    if not a and not b:
        assert g == ()
    else:
        assert g == from_gf(gf_poly(a, p).gcd(gf_poly(b, p)).monic(), p)


@given(polys, polys)
def test_xgcd_bezout(a, b):
    g, s, t = P.xgcd(a, b, p)
    assert P.add(P.mul(s, a, p), P.mul(t, b, p), p) == g
    assert g == P.gcd(a, b, p)


@given(polys, st.integers(0, p - 1))
def test_shift_and_evaluate(a, x0):
    s = P.shift(a, x0, p)
    for t in (0, 1, 5, 17):
        assert P.evaluate(s, t, p) == P.evaluate(a, (x0 + t) % p, p)


@given(st.integers(0, p - 1))
def test_sqrt_mod(a):
    r = P.sqrt_mod(a, p)
    squares = {x * x % p for x in range(p)}
    if a in squares:
        assert r * r % p == a
    else:
        assert r is None


@pytest.mark.parametrize("q", [5, 7, 13, 17, 10007, 7919])
def test_sqrt_mod_other_primes(q):
    for a in range(1, 60):
        r = P.sqrt_mod(a, q)
        assert r is None or r * r % q == a % q


@given(nonzero)
def test_roots_brute_force(a):
    assert P.roots(a, p) == [x for x in range(p) if P.evaluate(a, x, p) == 0]


def test_squarefree_examples():
    assert P.squarefree((0, 6, 0, 0, 0, 1), 7)
    assert not P.squarefree((0, 0, 0, 0, 0, 1), 7)


def test_derivative_and_power():
    assert P.derivative((1, 2, 3), 7) == (2, 6)
    assert P.power((1, 1), 3, 7) == (1, 3, 3, 1)
    assert P.to_str((0, 6, 0, 0, 0, 1)) == "x^5 + 6*x"
