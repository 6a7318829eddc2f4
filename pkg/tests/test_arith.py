"""Field, order-key, polynomial, parser, and Frobenius tests.

Expected values come from the naive dense oracle in naive_poly.py or
from hand calculations noted inline.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghk.arith import (
    MonomialOrder,
    Poly,
    PolyRing,
    PrimeField,
    frobenius_power,
    is_prime,
    mon_div,
    mon_divides,
    mon_lcm,
    mon_mul,
    parse_poly,
)
from ghk.errors import GhkError, GhkHypothesisError, HomogeneityError, ParseError

from naive_poly import NaivePoly, all_monomials_up_to, ref_order_tuple


# ---------------------------------------------------------------------------
# prime field


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 - 3)
    assert not is_prime(1)


@pytest.mark.parametrize("p", [2, 3, 7, 13, 101])
def test_inverse_table_exhaustive(p):
    F = PrimeField(p)
    for a in range(1, p):
        assert a * F.inv(a) % p == 1


def test_inverse_large_prime():
    F = PrimeField(10007)
    assert F._inv_table is None
    for a in (1, 2, 5000, 10006):
        assert a * F.inv(a) % 10007 == 1


def test_field_rejects_bad_characteristic():
    for bad in (0, 1, 4, 9, 15, -7, True):
        with pytest.raises(GhkHypothesisError):
            PrimeField(bad)
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)


def test_field_ops():
    F = PrimeField(7)
    assert F.add(5, 4) == 2
    assert F.sub(2, 5) == 4
    assert F.mul(3, 5) == 1
    assert F.neg(3) == 4
    assert F.pow(3, -1) == 5
    assert F.reduce(-1) == 6


# ---------------------------------------------------------------------------
# monomial helpers


def test_mon_helpers():
    assert mon_mul((1, 2), (3, 0)) == (4, 2)
    assert mon_div((4, 2), (3, 0)) == (1, 2)
    assert mon_div((1, 2), (3, 0)) is None
    assert mon_divides((1, 0), (4, 2))
    assert not mon_divides((1, 3), (4, 2))
    assert mon_lcm((1, 3), (4, 2)) == (4, 3)


# ---------------------------------------------------------------------------
# packed order keys vs reference tuples


@pytest.mark.parametrize("kind", ["grevlex", "lex", "deglex"])
@pytest.mark.parametrize("nvars", [1, 2, 3, 4])
def test_packed_keys_match_reference(kind, nvars):
    rng = random.Random(12345)
    seq = tuple(range(nvars))
    for trial in range(4):
        if trial:
            seq = tuple(rng.sample(range(nvars), nvars))
        order = MonomialOrder(kind, varseq=seq)
        key = order.key_func(nvars)
        mons = all_monomials_up_to(nvars, 4 if nvars <= 3 else 3)
        sample = rng.sample(mons, min(60, len(mons)))
        for a in sample:
            for b in sample:
                ref = ref_order_tuple(kind, seq, a) > ref_order_tuple(kind, seq, b)
                assert (key(a) > key(b)) == ref, (kind, seq, a, b)


@pytest.mark.parametrize("kind", ["grevlex", "lex", "deglex"])
def test_key_shift_constant(kind):
    order = MonomialOrder(kind)
    key = order.key_func(3)
    C = order.shift_const(3)
    rng = random.Random(7)
    for _ in range(200):
        a = tuple(rng.randrange(9) for _ in range(3))
        b = tuple(rng.randrange(9) for _ in range(3))
        assert key(mon_mul(a, b)) == key(a) + key(b) - C


def test_grevlex_vs_deglex_differ():
    # x*z^2 vs y^3 over (x, y, z): deglex says x*z^2 > y^3 (x beats y),
    # grevlex says y^3 > x*z^2 (less z wins). Classic separating pair.
    a, b = (1, 0, 2), (0, 3, 0)
    kg = MonomialOrder("grevlex").key_func(3)
    kd = MonomialOrder("deglex").key_func(3)
    assert kg(a) < kg(b)
    assert kd(a) > kd(b)


def test_bad_order_inputs():
    with pytest.raises(GhkError):
        MonomialOrder("fancy")
    with pytest.raises(GhkError):
        MonomialOrder("lex", varseq=(0, 0, 1)).key_func(3)


# ---------------------------------------------------------------------------
# ring construction


def test_ring_validation():
    with pytest.raises(GhkError):
        PolyRing(7, [])
    with pytest.raises(GhkError):
        PolyRing(7, ["x", "x"])
    with pytest.raises(GhkError):
        PolyRing(7, ["x", "2bad"])
    with pytest.raises(GhkHypothesisError):
        PolyRing(6, ["x"])


def test_ring_value_equality():
    r1 = PolyRing(7, ["x", "y"])
    r2 = PolyRing(PrimeField(7), ("x", "y"))
    assert r1 == r2 and hash(r1) == hash(r2)
    assert r1 != PolyRing(7, ["x", "y"], MonomialOrder("lex"))
    assert r1 != PolyRing(5, ["x", "y"])


# ---------------------------------------------------------------------------
# polynomial arithmetic vs the naive oracle


def _random_pair(rng, p, nvars, maxdeg=3, maxterms=5):
    mons = all_monomials_up_to(nvars, maxdeg)
    data = {}
    for _ in range(rng.randrange(maxterms + 1)):
        data[rng.choice(mons)] = rng.randrange(1, p)
    return data


def _to_ghk(ring, data):
    return ring.from_pairs(list(data.items()))


def _to_naive(p, nvars, data):
    return NaivePoly(p, nvars, data)


def _same(f: Poly, g: NaivePoly) -> bool:
    return {m: c for m, c in f.terms()} == g.d


@pytest.mark.parametrize("p,nvars", [(2, 2), (3, 3), (7, 2), (13, 3)])
def test_arith_matches_oracle(p, nvars):
    rng = random.Random(p * 100 + nvars)
    ring = PolyRing(p, [f"v{i}" for i in range(nvars)])
    for _ in range(120):
        da = _random_pair(rng, p, nvars)
        db = _random_pair(rng, p, nvars)
        fa, fb = _to_ghk(ring, da), _to_ghk(ring, db)
        na, nb = _to_naive(p, nvars, da), _to_naive(p, nvars, db)
        assert _same(fa + fb, na.add(nb))
        assert _same(fa - fb, na.sub(nb))
        assert _same(fa * fb, na.mul(nb))
        assert _same(-fa, na.neg())
        k = rng.randrange(4)
        assert _same(fa**k, na.pow(k))
        c = rng.randrange(p)
        assert _same(fa.scale(c), na.scale(c))


def test_terms_sorted_and_canonical():
    ring = PolyRing(7, ["x", "y", "z"])
    f = ring.parse("z^3 + x*y + 2*x^2 + 5 + 5*z^3")
    keys = [k for k, _, _ in f._t]
    assert keys == sorted(keys, reverse=True)
    assert all(1 <= c < 7 for _, _, c in f._t)
    # 5*z^3 + z^3 = 6*z^3, still present; recombine check
    assert f.coeff((0, 0, 3)) == 6


def test_int_mixing():
    ring = PolyRing(7, ["x"])
    x = ring.variable(0)
    assert x + 3 - 3 == x
    assert 2 * x == x + x
    assert (x - x).is_zero()
    assert (1 - x) + (x - 1) == ring.zero


def test_lead_term_and_degree():
    ring = PolyRing(7, ["x", "y", "z"])
    f = ring.parse("x*y + z^3 + x^2")
    # grevlex at degree 2: x^2 > x*y; degree 3 term z^3 beats both
    assert f.lm() == (0, 0, 3)
    assert f.degree() == 3
    assert not f.is_homogeneous()
    with pytest.raises(HomogeneityError):
        f.homogeneous_degree()
    g = ring.parse("x^2 + y*z")
    assert g.homogeneous_degree() == 2
    assert ring.zero.degree() == -1
    with pytest.raises(GhkError):
        ring.zero.lt()


def test_exact_divide():
    ring = PolyRing(7, ["x", "y"])
    rng = random.Random(99)
    for _ in range(40):
        da = _random_pair(rng, 7, 2)
        db = _random_pair(rng, 7, 2)
        f, g = _to_ghk(ring, da), _to_ghk(ring, db)
        if g.is_zero():
            continue
        assert (f * g).exact_divide(g) == f
    f = ring.parse("x^2 + y")
    with pytest.raises(GhkError):
        f.exact_divide(ring.parse("x"))


def test_variable_power_division():
    ring = PolyRing(7, ["x", "y"])
    f = ring.parse("x^3*y + 2*x^2*y^2")
    assert f.variable_multiplicity(0) == 2
    assert f.variable_multiplicity(1) == 1
    g = f.divide_by_variable_power(0, 2)
    assert g == ring.parse("x*y + 2*y^2")
    with pytest.raises(GhkError):
        f.divide_by_variable_power(0, 3)


def test_derivative():
    ring = PolyRing(7, ["x", "y", "z"])
    f = ring.parse("x^3 + y^3 + z^3")
    assert f.derivative(0) == ring.parse("3*x^2")
    ring3 = PolyRing(3, ["x", "y"])
    assert ring3.parse("x^3 + y").derivative(0).is_zero()
    # product rule spot check
    g, h = ring.parse("x*y + z^2"), ring.parse("x + 2*y")
    lhs = (g * h).derivative(1)
    rhs = g.derivative(1) * h + g * h.derivative(1)
    assert lhs == rhs


def test_cross_ring_rejected():
    r1 = PolyRing(7, ["x"])
    r2 = PolyRing(5, ["x"])
    with pytest.raises(GhkError):
        r1.variable(0) + r2.variable(0)


def test_convert_between_orders():
    r1 = PolyRing(7, ["x", "y", "z"])
    r2 = r1.with_order(MonomialOrder("lex"))
    f = r1.parse("x*y^2 + x^2*z")
    g = r2.convert(f)
    assert dict(f.terms()) == dict(g.terms())
    assert g.lm() == (2, 0, 1)  # lex prefers higher x power
    assert f.lm() == (1, 2, 0)  # grevlex prefers less z


# ---------------------------------------------------------------------------
# parser


def test_parse_precedence_and_unary():
    ring = PolyRing(7, ["x", "y", "z"])
    assert ring.parse("x + y*z^2") == ring.variable(0) + ring.variable(1) * ring.variable(2) ** 2
    assert ring.parse("-x^2") == -(ring.variable(0) ** 2)
    assert ring.parse("(x + y)^2") == (ring.variable(0) + ring.variable(1)) ** 2
    assert ring.parse("2 - 3") == ring.parse("6")
    assert ring.parse("x - - y") == ring.parse("x + y")
    assert ring.parse("7*x").is_zero()


def test_parse_freshman_dream():
    ring = PolyRing(3, ["x", "y"])
    assert ring.parse("(x + y)^3") == ring.parse("x^3 + y^3")


@pytest.mark.parametrize(
    "text",
    ["x +", "3x", "x^y", "x^", "(x + y", "x ** 2", "w + x", "", "x^2^3", "x/y"],
)
def test_parse_errors(text):
    ring = PolyRing(7, ["x", "y", "z"])
    with pytest.raises(ParseError):
        ring.parse(text)


def test_parse_error_position():
    ring = PolyRing(7, ["x", "y"])
    with pytest.raises(ParseError) as ei:
        ring.parse("x + q*y")
    assert ei.value.pos == 4


def test_str_parse_roundtrip():
    rng = random.Random(4242)
    ring = PolyRing(13, ["x", "y", "z"])
    for _ in range(60):
        f = _to_ghk(ring, _random_pair(rng, 13, 3, maxdeg=4, maxterms=6))
        assert ring.parse(str(f)) == f
    assert str(ring.zero) == "0"
    assert str(ring.one) == "1"
    assert str(ring.parse("y + 6*x")) == "6*x + y"


# ---------------------------------------------------------------------------
# Frobenius powers


def test_frobenius_matches_naive_pow():
    # q-th power of 3*x - y over F_7, computed two independent ways
    ring = PolyRing(7, ["x", "y"])
    f = ring.parse("3*x - y")
    frob = frobenius_power(f, 7)
    naive = NaivePoly(7, 2, {(1, 0): 3, (0, 1): -1}).pow(7)
    assert {m: c for m, c in frob.terms()} == naive.d
    assert str(frob) == "3*x^7 + 6*y^7"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_is_pth_power(p):
    rng = random.Random(p)
    ring = PolyRing(p, ["x", "y"])
    for _ in range(25):
        d = _random_pair(rng, p, 2)
        f = _to_ghk(ring, d)
        assert frobenius_power(f, p) == f**p
        assert frobenius_power(f, p * p) == (f**p) ** p


def test_frobenius_validation():
    ring = PolyRing(7, ["x"])
    f = ring.parse("x + 1")
    assert frobenius_power(f, 1) == f
    for bad in (0, -7, 14, 10, 48):
        with pytest.raises(GhkHypothesisError):
            frobenius_power(f, bad)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=2).flatmap(
        lambda i: st.tuples(
            st.just([2, 3, 7][i]),
            st.lists(
                st.tuples(
                    st.tuples(st.integers(0, 4), st.integers(0, 4)),
                    st.integers(1, [2, 3, 7][i] - 1),
                ),
                max_size=5,
            ),
            st.lists(
                st.tuples(
                    st.tuples(st.integers(0, 4), st.integers(0, 4)),
                    st.integers(1, [2, 3, 7][i] - 1),
                ),
                max_size=5,
            ),
        )
    )
)
def test_frobenius_additive_multiplicative(args):
    p, da, db = args
    ring = PolyRing(p, ["x", "y"])
    f = ring.from_pairs(da)
    g = ring.from_pairs(db)
    q = p * p
    assert frobenius_power(f + g, q) == frobenius_power(f, q) + frobenius_power(g, q)
    assert frobenius_power(f * g, q) == frobenius_power(f, q) * frobenius_power(g, q)
    assert frobenius_power(frobenius_power(f, p), p) == frobenius_power(f, q)
