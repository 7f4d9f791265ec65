"""Exact oracles: Groebner dimension/emptiness, Perron annihilators, Jacobian rank.

These back the randomized pipeline (zero-dimension tests) and also serve as
ground truth in the test-suite.
"""

from __future__ import annotations

import random
from collections import OrderedDict
from dataclasses import dataclass
from math import prod

from . import linalg
from .errors import BudgetExceeded
from .field import FieldCtx, make_field
from .groebner import DEFAULT_BUDGET, GroebnerBasis, buchberger, ideal_dimension
from .linalg import LinearSolution, linsolve
from .poly import MultiPoly, PolySystem, formal_partials, grevlex_key

__all__ = [
    "Annihilator",
    "DimensionOracle",
    "GroebnerDimensionOracle",
    "JacobianRank",
    "buchberger",
    "ideal_dimension",
    "ideal_member",
    "in_radical",
    "is_empty",
    "jacobian_trdeg",
    "linsolve",
    "LinearSolution",
    "perron_annihilator",
    "perron_trdeg",
]

DEFAULT_PERRON_BUDGET = 4000


class DimensionOracle:
    """Dimension of the zeroset of explicit polynomials: an integer in [-1, n].

    The pipeline only relies on :meth:`dimension`; a U-resultant backend
    could replace the Groebner one behind this interface.
    """

    def dimension(self, polys, ctx: FieldCtx | None = None, n: int | None = None) -> int:
        raise NotImplementedError

    def is_zero_dimensional(self, polys, ctx=None, n=None) -> bool:
        return self.dimension(polys, ctx, n) == 0

    def is_empty(self, polys, ctx=None, n=None) -> bool:
        return self.dimension(polys, ctx, n) == -1


class GroebnerDimensionOracle(DimensionOracle):
    """Deterministic oracle built on :func:`buchberger`.

    Bases are memoized by generator tuple; a query that extends a cached
    tuple starts from the cached basis.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, cache_size: int = 512):
        self.budget = budget
        self.cache_size = cache_size
        self._cache: OrderedDict = OrderedDict()

    def groebner(self, polys, ctx=None, n=None) -> GroebnerBasis:
        polys = tuple(polys)
        if polys in self._cache:
            self._cache.move_to_end(polys)
            return self._cache[polys]
        start, rest = None, polys
        for cut in range(len(polys) - 1, 0, -1):
            hit = self._cache.get(polys[:cut])
            if hit is not None:
                start, rest = hit, polys[cut:]
                break
        if start is not None:
            gb = start if start.is_unit else buchberger(list(start.basis) + list(rest), start.ctx, start.n, self.budget)
        else:
            gb = buchberger(polys, ctx, n, self.budget)
        self._cache[polys] = gb
        if len(self._cache) > self.cache_size:
            self._cache.popitem(last=False)
        return gb

    def dimension(self, polys, ctx=None, n=None) -> int:
        return ideal_dimension(self.groebner(polys, ctx, n))


def is_empty(polys, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff 1 lies in the ideal (empty zeroset over the algebraic closure)."""
    return buchberger(polys, budget=budget).is_unit


def ideal_member(g: MultiPoly, polys, budget: int = DEFAULT_BUDGET) -> bool:
    polys = list(polys)
    return buchberger(polys, g.ctx, g.n, budget).contains(g)


def in_radical(g: MultiPoly, polys, budget: int = DEFAULT_BUDGET) -> bool:
    """Rabinowitsch test: ``g`` in the radical iff ``polys + [1 - y g]`` is unit."""
    n = g.n
    ctx = g.ctx
    lifted = [f.lift(ctx).extend_vars(n + 1) for f in polys]
    y = MultiPoly.var(ctx, n + 1, n)
    rab = MultiPoly.const(ctx, n + 1, 1) - y * g.extend_vars(n + 1)
    return buchberger(lifted + [rab], ctx, n + 1, budget).is_unit


# -- annihilators ------------------------------------------------------------------


@dataclass
class Annihilator:
    A: MultiPoly
    deg_bound: int

    def check(self, polys) -> bool:
        """Exact composition ``A(f_1, ..., f_m) == 0``."""
        return self.A.compose(list(polys)).is_zero()


def _weighted_monomials(weights, bound):
    out = []
    m = len(weights)

    def rec(i, cur, left):
        if i == m:
            out.append(tuple(cur))
            return
        w = weights[i]
        top = left // w
        for e in range(top + 1):
            cur.append(e)
            rec(i + 1, cur, left - e * w)
            cur.pop()

    rec(0, [], bound)
    return out


def _members(s):
    return list(s.polys) if isinstance(s, PolySystem) else list(s)


def perron_annihilator(s, budget: int = DEFAULT_PERRON_BUDGET):
    """A nonzero ``A(y_1..y_m)`` with ``A(f) == 0``, or ``None`` when independent.

    Candidate monomials ``y^e`` satisfy ``sum e_i d_i <= prod d_i``.  The
    returned ``A`` has the grevlex-smallest leading monomial available and is
    monic.
    """
    polys = _members(s)
    m = len(polys)
    if m == 0:
        raise ValueError("need at least one polynomial")
    ctx, n = polys[0].ctx, polys[0].n
    degs = [f.deg for f in polys]
    for j, f in enumerate(polys):
        if f.deg <= 0:
            # a constant c is annihilated by y_j - c
            A = MultiPoly.var(ctx, m, j) - MultiPoly.const(ctx, m, f.constant_term())
            return Annihilator(A, max(1, prod(max(d, 0) for d in degs)))
    bound = prod(degs)
    monos = _weighted_monomials(degs, bound)
    if len(monos) > budget:
        raise BudgetExceeded(f"annihilator ansatz has {len(monos)} monomials (budget {budget})")
    monos.sort(key=grevlex_key)
    powers = {(0,) * m: MultiPoly.const(ctx, n, 1)}

    def power(e):
        if e not in powers:
            j = next(i for i, x in enumerate(e) if x)
            prev = e[:j] + (e[j] - 1,) + e[j + 1 :]
            powers[e] = power(prev) * polys[j]
        return powers[e]

    cols = [power(e) for e in monos]
    rows = sorted({x for f in cols for x in f.terms}, key=grevlex_key)
    index = {x: i for i, x in enumerate(rows)}
    matrix = [[0] * len(monos) for _ in rows]
    for j, f in enumerate(cols):
        for x, c in f.terms.items():
            matrix[index[x]][j] = c
    kernel = linsolve(ctx, matrix, ncols=len(monos)).kernel
    if not kernel:
        return None
    # kernel vectors from RREF end at their free column; pick the earliest
    best = min(kernel, key=lambda v: max(j for j, c in enumerate(v) if c))
    A = MultiPoly(ctx, m, {monos[j]: c for j, c in enumerate(best) if c}).monic()
    return Annihilator(A, bound)


def perron_trdeg(s, budget: int = DEFAULT_PERRON_BUDGET) -> int:
    """Matroid rank via annihilator searches (greedy basis)."""
    basis = []
    for f in _members(s):
        if f.deg <= 0:
            continue
        if perron_annihilator(basis + [f], budget) is None:
            basis.append(f)
    return len(basis)


# -- Jacobian criterion ------------------------------------------------------------------


@dataclass(frozen=True)
class JacobianRank:
    rank: int
    valid: bool  # characteristic exceeds d^min(m, n)

    def __int__(self):
        return self.rank


def jacobian_trdeg(s, rng: random.Random | None = None, points: int = 5, min_order: int = 1 << 16) -> JacobianRank:
    """Rank of the Jacobian at random points, maximized over ``points`` draws.

    Equals the transcendence degree when ``char > d^r``; ``valid`` reports the
    conservative check ``char > d^min(m, n)``.  Points are drawn from an
    extension of at least ``min_order`` elements.
    """
    polys = _members(s)
    rng = rng or random.Random(0)
    ctx, n = polys[0].ctx, polys[0].n
    wctx = ctx
    if ctx.order < min_order:
        wctx = make_field(ctx.p, min_order, degree_multiple=ctx.k)
    polys = [f.lift(wctx) for f in polys]
    jac = [formal_partials(f) for f in polys]
    best = 0
    for _ in range(points):
        pt = [rng.randrange(wctx.order) for _ in range(n)]
        mat = [[df.eval(pt) for df in row] for row in jac]
        best = max(best, linalg.rank(wctx, mat))
    d = max(max(f.deg for f in polys), 0)
    valid = ctx.p > d ** min(len(polys), n)
    return JacobianRank(best, valid)
