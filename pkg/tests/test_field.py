import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nullkit.errors import FieldError, FieldTooSmall
from nullkit.field import (
    FieldCtx,
    FieldElement,
    SampleSet,
    arith,
    embed_code,
    find_irreducible,
    is_irreducible,
    is_prime,
    make_field,
    sample,
    sample_set,
    subfield_root,
)


def test_is_prime_matches_sympy():
    for n in list(range(-3, 2000)) + [2**31 - 1, 2**61 - 1, 10007 * 10009, 561, 3215031751]:
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize("p,min_order,k", [(7, 7, 1), (2, 5, 3), (101, 10**6, 3), (3, 2, 1), (2, 2**20, 20)])
def test_make_field_degree(p, min_order, k):
    ctx = make_field(p, min_order)
    assert ctx.k == k and ctx.order == p**k >= min_order


def test_make_field_rejects_composite():
    with pytest.raises(FieldError):
        make_field(15)
    with pytest.raises(FieldError):
        FieldCtx(9)


def test_make_field_is_cached():
    assert make_field(3, 20) is make_field(3, 27)


def test_prime_field_examples():
    ctx = make_field(7)
    a, b = FieldElement(ctx, 3), FieldElement(ctx, 5)
    assert arith(a, b, "add").code == 1
    assert arith(a, None, "inv").code == 5
    assert (a * b).code == 1
    assert (a / b * b) == a


def test_gf8_reduction():
    ctx = FieldCtx(2, 3, irr=(1, 1, 0, 1))  # t^3 + t + 1
    t = FieldElement.from_coeffs(ctx, [0, 1, 0])
    t2 = FieldElement.from_coeffs(ctx, [0, 0, 1])
    assert (t * t2).coeffs == (1, 1, 0)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        FieldCtx(2, 2, irr=(1, 0, 1))  # t^2 + 1 = (t + 1)^2


def test_division_by_zero_and_mixed_contexts():
    ctx = make_field(7)
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)
    with pytest.raises(FieldError):
        arith(FieldElement(ctx, 1), FieldElement(make_field(5), 1), "add")


def test_irreducibility_against_sympy():
    rng = random.Random(3)
    x = sympy.Symbol("x")
    for _ in range(150):
        p = rng.choice([2, 3, 5, 7])
        k = rng.randint(1, 6)
        f = [rng.randrange(p) for _ in range(k)] + [1]
        expected = sympy.Poly(list(reversed(f)), x, modulus=p).is_irreducible
        assert is_irreducible(f, p) == expected, (f, p)


def test_find_irreducible_seeded():
    assert find_irreducible(3, 4, seed=1) == find_irreducible(3, 4, seed=1)
    f = find_irreducible(5, 3)
    assert f[-1] == 1 and is_irreducible(list(f), 5)


FIELDS = [make_field(2), make_field(7), make_field(2, 16), make_field(3, 20), make_field(101, 10**6), make_field(2**31 - 1)]


@pytest.mark.parametrize("ctx", FIELDS, ids=repr)
def test_field_axioms(ctx):
    rng = random.Random(ctx.order)
    add, mul, sub, inv = ctx.add, ctx.mul, ctx.sub, ctx.inv
    for _ in range(300):
        a, b, c = (rng.randrange(ctx.order) for _ in range(3))
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert add(sub(a, b), b) == a
        if a:
            assert mul(a, inv(a)) == 1
        assert ctx.pow(a, ctx.order) == a  # Frobenius fixes GF(q)


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(-50, 50))
@settings(max_examples=200, deadline=None)
def test_pow_consistent_with_mul(a, b, e):
    ctx = make_field(3, 200)
    a %= ctx.order
    if e < 0 and a == 0:
        return
    expected = 1
    base = a if e >= 0 else ctx.inv(a)
    for _ in range(abs(e)):
        expected = ctx.mul(expected, base)
    assert ctx.pow(a, e) == expected


def test_table_and_generic_paths_agree():
    # same modulus, one context forced onto digit arithmetic
    small = make_field(5, 100)
    big = FieldCtx(5, small.k, irr=small.irr, use_tables=False)
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.randrange(small.order), rng.randrange(small.order)
        assert small.mul(a, b) == big.mul(a, b)
        if b:
            assert small.div(a, b) == big.div(a, b)


def test_sample_contract():
    ctx = make_field(7)
    S = SampleSet(ctx, 6)
    out = sample(S, random.Random(0), 3)
    assert len(out) == 3 and all(x.code != 0 for x in out)
    assert out == sample(S, random.Random(0), 3)
    with pytest.raises(FieldTooSmall, match="extend field"):
        SampleSet(ctx, 8)


def test_sample_set_extends():
    S = sample_set(7, 100)
    assert S.ctx.order >= 101 and S.size == 100
    assert all(0 < S.draw(random.Random(i)) <= 100 for i in range(50))


@pytest.mark.parametrize("p,k,K", [(2, 2, 4), (2, 3, 6), (3, 2, 4), (5, 2, 2), (7, 1, 3), (2, 4, 24)])
def test_subfield_embedding_is_a_homomorphism(p, k, K):
    src = make_field(p, p**k)
    dst = make_field(p, p**K, degree_multiple=k)
    assert dst.k == K
    alpha = subfield_root(src, dst)
    assert alpha == subfield_root(src, dst)
    rng = random.Random(p * 100 + K)
    e = lambda a: embed_code(a, src, dst)
    for _ in range(60):
        a, b = rng.randrange(src.order), rng.randrange(src.order)
        assert e(src.add(a, b)) == dst.add(e(a), e(b))
        assert e(src.mul(a, b)) == dst.mul(e(a), e(b))
    assert len({e(a) for a in range(min(src.order, 500))}) == min(src.order, 500)


def test_embedding_needs_divisibility():
    with pytest.raises(FieldError):
        subfield_root(make_field(2, 4), make_field(2, 8))
    assert make_field(3, 10, degree_multiple=2).k == 4
    assert make_field(3, 2, degree_multiple=3).k == 3
