"""Buchberger's algorithm (grevlex, sugar selection, Gebauer-Moeller pruning).

Polynomials are handled as ``{monomial: code}`` dicts inside this module;
the public surface speaks :class:`~nullkit.poly.MultiPoly`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded
from .field import FieldCtx
from .poly import MultiPoly, grevlex_key

DEFAULT_BUDGET = 20000


def _heapkey(m):
    # min-heap order == decreasing grevlex
    return (-sum(m), m[::-1])


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elem:
    __slots__ = ("terms", "lm", "sugar")

    def __init__(self, terms, lm, sugar):
        self.terms = terms
        self.lm = lm
        self.sugar = sugar


def _monic(ctx, terms):
    lm = max(terms, key=grevlex_key)
    c = terms[lm]
    if c != 1:
        s = ctx.inv(c)
        mul = ctx.mul
        terms = {m: mul(v, s) for m, v in terms.items()}
    return terms, lm


def normal_form(ctx: FieldCtx, terms: dict, basis, counter=None) -> dict:
    """Fully reduce ``terms`` modulo monic ``basis`` elements (``_Elem``)."""
    work = dict(terms)
    heap = [(_heapkey(m), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    prime = ctx.k == 1
    P = ctx.p
    sub, mul = ctx.sub, ctx.mul
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        for g in basis:
            lm = g.lm
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                if counter is not None:
                    counter[0] += 1
                for gm, gc in g.terms.items():
                    mm = tuple(x + y for x, y in zip(gm, q))
                    old = work.get(mm)
                    if prime:
                        new = ((old or 0) - c * gc) % P
                    else:
                        new = sub(old or 0, mul(c, gc))
                    if new:
                        work[mm] = new
                        if old is None:
                            heapq.heappush(heap, (_heapkey(mm), mm))
                    elif old is not None:
                        del work[mm]
                break
        else:
            rem[m] = c
            del work[m]
    return rem


def _spoly(ctx, f: _Elem, g: _Elem, lcm):
    qf = tuple(x - y for x, y in zip(lcm, f.lm))
    qg = tuple(x - y for x, y in zip(lcm, g.lm))
    out = {}
    for m, c in f.terms.items():
        out[tuple(x + y for x, y in zip(m, qf))] = c
    sub = ctx.sub
    for m, c in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, qg))
        v = sub(out.get(mm, 0), c)
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


@dataclass
class GroebnerBasis:
    """Reduced grevlex Groebner basis of an ideal of ``ctx[x_1..x_n]``."""

    ctx: FieldCtx
    n: int
    basis: list

    @property
    def is_unit(self) -> bool:
        return any(f.deg == 0 for f in self.basis)

    def leading_monomials(self) -> list[tuple]:
        return [f.leading_monomial() for f in self.basis]

    def _elems(self):
        return [_Elem(f.terms, f.leading_monomial(), f.deg) for f in self.basis]

    def reduce(self, f: MultiPoly) -> MultiPoly:
        f = f.lift(self.ctx)
        return MultiPoly._raw(self.ctx, self.n, normal_form(self.ctx, f.terms, self._elems()))

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()


def buchberger(polys, ctx: FieldCtx | None = None, n: int | None = None, budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced grevlex Groebner basis of the ideal generated by ``polys``.

    ``budget`` caps the number of S-polynomial reductions; exceeding it raises
    :class:`BudgetExceeded`.
    """
    polys = list(polys)
    if ctx is None or n is None:
        if not polys:
            raise ValueError("need ctx and n for an empty generator list")
        ctx, n = polys[0].ctx, polys[0].n
    unit = GroebnerBasis(ctx, n, [MultiPoly.const(ctx, n, 1)])
    zero = (0,) * n

    elems: list[_Elem] = []
    active: list[int] = []
    pairs: list = []  # (sugar, lcm key, i, j, lcm)

    def add(terms, sugar):
        terms, lm = _monic(ctx, terms)
        if lm == zero:
            return False
        h = len(elems)
        elems.append(_Elem(terms, lm, sugar))
        _update(h)
        return True

    def _update(h):
        nonlocal active, pairs
        lh = elems[h].lm
        cand = []
        for g in active:
            lg = elems[g].lm
            cand.append((g, _lcm(lh, lg), _coprime(lh, lg)))
        keep = []
        for idx, (g, l1, cop) in enumerate(cand):
            if cop:
                keep.append((g, l1, cop))
                continue
            others = [c for c in cand[idx + 1 :]] + keep
            if not any(_divides(l2, l1) for _, l2, _ in others):
                keep.append((g, l1, cop))
        new_pairs = []
        for p in pairs:
            _, _, i, j, l12 = p
            if _divides(lh, l12) and _lcm(elems[i].lm, lh) != l12 and _lcm(lh, elems[j].lm) != l12:
                continue
            new_pairs.append(p)
        for g, l1, cop in keep:
            if cop:
                continue
            eg, eh = elems[g], elems[h]
            sug = max(eg.sugar + sum(l1) - sum(eg.lm), eh.sugar + sum(l1) - sum(eh.lm))
            new_pairs.append((sug, grevlex_key(l1), g, h, l1))
        pairs = new_pairs
        active = [g for g in active if not _divides(lh, elems[g].lm)] + [h]

    for f in polys:
        f = f.lift(ctx)
        if f.n != n:
            raise ValueError("generators must share the variable count")
        if f.is_zero():
            continue
        if f.deg == 0:
            return unit
    inputs = sorted((f.lift(ctx) for f in polys if not f.is_zero()), key=lambda f: grevlex_key(f.leading_monomial()))
    for f in inputs:
        basis = [elems[i] for i in active]
        h = normal_form(ctx, f.terms, basis)
        if not h:
            continue
        if zero in h and len(h) == 1:
            return unit
        add(h, max(sum(m) for m in h))

    steps = 0
    while pairs:
        best = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1]))
        sug, _, i, j, l = pairs.pop(best)
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"GB budget exhausted after {budget} S-pair reductions")
        s = _spoly(ctx, elems[i], elems[j], l)
        if not s:
            continue
        h = normal_form(ctx, s, [elems[g] for g in active])
        if not h:
            continue
        if zero in h and len(h) == 1:
            return unit
        add(h, sug)

    # inter-reduce the (already minimal) active set
    final = [elems[g] for g in active]
    out = []
    for k, e in enumerate(final):
        others = final[:k] + final[k + 1 :]
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        red = normal_form(ctx, tail, others)
        red[e.lm] = 1
        out.append(MultiPoly._raw(ctx, n, red))
    out.sort(key=lambda f: grevlex_key(f.leading_monomial()))
    return GroebnerBasis(ctx, n, out)


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension from leading monomials; -1 for the unit ideal."""
    if gb.is_unit:
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    for size in range(gb.n, -1, -1):
        for subset in combinations(range(gb.n), size):
            u = set(subset)
            if not any(s <= u for s in supports):
                return size
    return 0
