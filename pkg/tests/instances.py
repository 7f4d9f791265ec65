"""Seeded random instance families shared by the acceptance and property tests."""

from __future__ import annotations

import random

from nullkit.field import make_field
from nullkit.poly import MultiPoly, monomials_upto


def random_poly(ctx, n, d, rng, terms=3, nonconst=True):
    """Sparse polynomial of degree exactly ``d`` (when ``d > 0``) with about ``terms`` terms."""
    monos = [m for m in monomials_upto(n, d) if sum(m) > 0] if nonconst else monomials_upto(n, d)
    top = [m for m in monos if sum(m) == d]
    picks = {rng.choice(top)} if top else set()
    while len(picks) < min(terms, len(monos)):
        picks.add(rng.choice(monos))
    out = {m: rng.randrange(1, ctx.p) for m in picks}
    out[(0,) * n] = rng.randrange(ctx.p)
    return MultiPoly(ctx, n, out)


def planted(f: MultiPoly, point) -> MultiPoly:
    """``f - f(point)``: vanishes at ``point``."""
    return f - MultiPoly.const(f.ctx, f.n, f.eval(point))


def hn_system(seed: int, p: int = 101, max_n: int = 4, max_m: int = 5, max_d: int = 3):
    """A random explicit system; families alternate planted-root, generic and obstructed."""
    rng = random.Random(seed)
    ctx = make_field(p)
    n = rng.randint(1, max_n)
    family = seed % 3
    m = rng.randint(1, max_m - 1 if family == 2 else max_m)
    degs = [rng.randint(1, max_d) for _ in range(m)]
    polys = [random_poly(ctx, n, d, rng, terms=rng.randint(1, 4)) for d in degs]
    if family == 0:
        a = [rng.randrange(p) for _ in range(n)]
        polys = [planted(f, a) for f in polys]
    elif family == 2:
        # f and f + c share no root
        j = rng.randrange(m)
        polys.append(polys[j] + MultiPoly.const(ctx, n, rng.randrange(1, p)))
    return polys


def radical_pair(seed: int, p: int = 101, max_n: int = 4, max_m: int = 4, max_d: int = 3):
    """``(g, system)``; families: powers, ideal combinations, generic ``g``, empty systems."""
    rng = random.Random(10_000 + seed)
    ctx = make_field(p)
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    family = seed % 4
    a = [rng.randrange(p) for _ in range(n)]
    polys = [planted(random_poly(ctx, n, rng.randint(1, max_d), rng, terms=rng.randint(1, 3)), a) for _ in range(m)]
    if family == 0:
        h = planted(random_poly(ctx, n, 1, rng, terms=2), a)
        e = rng.randint(2, max_d)
        polys[0] = h**e
        g = h
    elif family == 1:
        g = MultiPoly.zero(ctx, n)
        for f in polys:
            g = g + f * random_poly(ctx, n, rng.randint(0, 1), rng, terms=2, nonconst=False)
        if g.deg > max_d or g.is_zero():
            g = polys[-1].scale(rng.randrange(1, p))
    elif family == 2:
        g = random_poly(ctx, n, rng.randint(1, max_d), rng, terms=rng.randint(1, 3))
    else:
        polys.append(polys[0] + MultiPoly.const(ctx, n, rng.randrange(1, p)))
        g = random_poly(ctx, n, rng.randint(1, max_d), rng, terms=2)
    return g, polys


def composed_system(seed: int, p: int = 10007):
    """Random ``outer(inner(x))`` with ``r`` inner polynomials, ``r`` in {1, 2}.

    Returns ``(outer, inner)``; sizes keep ``18 n prod(d_i) < p`` so the
    sample set fits in the prime field.
    """
    rng = random.Random(20_000 + seed)
    ctx = make_field(p)
    while True:
        r = rng.choice((1, 2))
        n = rng.randint(r, 6)
        m = rng.randint(1, 3)
        d_in = rng.randint(1, 2)
        d_out = [rng.randint(1, 2) for _ in range(m)]
        box_degs = [d * d_in for d in d_out]
        total = 1
        for d in box_degs:
            total *= d
        if 18 * n * total < p and max(box_degs) ** r < p:
            break
    inner = [random_poly(ctx, n, d_in, rng, terms=rng.randint(2, 4)) for _ in range(r)]
    outer = [random_poly(ctx, r, d, rng, terms=rng.randint(1, 3)) for d in d_out]
    return outer, inner


def gf2_system(seed: int):
    """Small systems over GF(2): ``m <= 3`` polynomials of degree ``<= 2``."""
    rng = random.Random(30_000 + seed)
    ctx = make_field(2)
    n = rng.randint(1, 3)
    m = rng.randint(1, 3)
    polys = [random_poly(ctx, n, rng.randint(1, 2), rng, terms=rng.randint(1, 3)) for _ in range(m)]
    if seed % 3 == 0 and m >= 2:
        # force a dependency: last member built from the first
        polys[-1] = polys[0] * polys[0] + polys[0]
        if polys[-1].deg > 2:
            polys[-1] = polys[0] + MultiPoly.const(ctx, n, 1)
    return polys


MERSENNE31 = 2**31 - 1


def obstructed_composed(seed: int, p: int = MERSENNE31):
    """Empty composed system with trdeg ``r`` and ``m >= r + 2`` members of degree 2.

    ``f_1 = q_1(h)`` and ``f_m = q_1(h) + c`` have no common root; all members
    factor through the ``r`` inner linear forms, so the trdeg is ``r``.
    Returns ``(outer, inner)``.
    """
    rng = random.Random(40_000 + seed)
    ctx = make_field(p)
    r = rng.choice((1, 2))
    n = rng.randint(r + 1, 3)
    m = rng.randint(r + 2, r + 3) if r == 1 else r + 2
    inner = [random_poly(ctx, n, 1, rng, terms=n) for _ in range(r)]
    outer = [random_poly(ctx, r, 2, rng, terms=rng.randint(2, 4)) for _ in range(m - 1)]
    outer.append(outer[0] + MultiPoly.const(ctx, r, rng.randrange(1, p)))
    rng.shuffle(outer)
    return outer, inner


def reduction_system(seed: int, p: int = MERSENNE31):
    """Systems with ``m > r + 1``: composed families plus planted-root generic ones."""
    rng = random.Random(50_000 + seed)
    ctx = make_field(p)
    if seed % 2 == 0:
        r = rng.choice((1, 2))
        n = rng.randint(r, 3)
        m = rng.randint(r + 2, r + 3)
        d_in = rng.randint(1, 2)
        inner = [random_poly(ctx, n, d_in, rng, terms=rng.randint(1, 3)) for _ in range(r)]
        outer = [random_poly(ctx, r, rng.randint(1, 3 - d_in), rng, terms=rng.randint(1, 3)) for _ in range(m)]
        a = [rng.randrange(p) for _ in range(n)]
        polys = [planted(o.compose(inner), a) for o in outer]
        if seed % 4 == 2:
            polys[-1] = polys[-1] + MultiPoly.const(ctx, n, 1)
        return polys
    n = rng.randint(1, 2)
    m = rng.randint(n + 2, n + 3)
    a = [rng.randrange(p) for _ in range(n)]
    return [planted(random_poly(ctx, n, rng.randint(1, 2), rng, terms=rng.randint(1, 3)), a) for _ in range(m)]
