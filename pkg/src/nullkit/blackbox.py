"""Evaluation oracles and the oracle-level rewrites of the HN pipeline.

An oracle's procedure is called as ``fn(point, ctx)`` with ``point`` a list
of codes in ``ctx`` and must return a code in ``ctx``.  ``ctx`` may be an
extension of the oracle's own field; procedures supplied by callers must
accept that and must be re-entrant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityError, FieldError
from .field import FieldCtx, FieldElement
from .poly import AffineSubstitution, MultiPoly

PROVENANCES = ("explicit", "restricted", "rabinowitsch", "composed", "callable")


class Blackbox:
    def __init__(self, ctx: FieldCtx, arity: int, degree_bound: int, fn, provenance="callable"):
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.ctx = ctx
        self.arity = arity
        self.degree_bound = degree_bound
        self._fn = fn
        self.provenance = provenance

    @classmethod
    def from_callable(cls, func, ctx: FieldCtx, arity: int, degree_bound: int):
        """Wrap ``func(list[FieldElement]) -> FieldElement``."""

        def fn(point, wctx):
            out = func([FieldElement(wctx, x) for x in point])
            if isinstance(out, FieldElement):
                return out.code
            return wctx.from_int(out)

        return cls(ctx, arity, degree_bound, fn, "callable")

    def evaluate(self, point, ctx: FieldCtx | None = None) -> int:
        ctx = ctx or self.ctx
        if len(point) != self.arity:
            raise ArityError(f"oracle of arity {self.arity} got a point of length {len(point)}")
        if ctx.p != self.ctx.p:
            raise FieldError(f"cannot evaluate a {self.ctx!r} oracle over {ctx!r}")
        return self._fn(list(point), ctx)

    def __call__(self, point) -> FieldElement:
        ctx = point[0].ctx if point and isinstance(point[0], FieldElement) else self.ctx
        codes = [x.code if isinstance(x, FieldElement) else x for x in point]
        return FieldElement(ctx, self.evaluate(codes, ctx))

    def __repr__(self):
        return f"Blackbox(arity={self.arity}, degree_bound={self.degree_bound}, {self.provenance})"


class BlackboxSystem:
    def __init__(self, boxes, trdeg_bound: int | None = None):
        boxes = list(boxes)
        if not boxes:
            raise ValueError("empty oracle system")
        arity, p = boxes[0].arity, boxes[0].ctx.p
        for b in boxes:
            if b.arity != arity:
                raise ArityError("oracles in one system must share their arity")
            if b.ctx.p != p:
                raise FieldError("oracles in one system must share the characteristic")
        if trdeg_bound is not None and not 0 <= trdeg_bound <= min(len(boxes), arity):
            raise ValueError(f"trdeg bound {trdeg_bound} outside [0, {min(len(boxes), arity)}]")
        self.boxes = tuple(boxes)
        self.trdeg_bound = trdeg_bound

    @property
    def arity(self) -> int:
        return self.boxes[0].arity

    n = arity

    @property
    def ctx(self) -> FieldCtx:
        return self.boxes[0].ctx

    @property
    def m(self) -> int:
        return len(self.boxes)

    @property
    def degs(self) -> tuple:
        return tuple(b.degree_bound for b in self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    def __len__(self):
        return len(self.boxes)

    def __getitem__(self, i):
        return self.boxes[i]

    def sorted(self) -> "BlackboxSystem":
        """Members reordered by nonincreasing degree bound."""
        order = sorted(range(self.m), key=lambda i: -self.boxes[i].degree_bound)
        return BlackboxSystem([self.boxes[i] for i in order], self.trdeg_bound)

    def __repr__(self):
        return f"BlackboxSystem(m={self.m}, n={self.arity}, degs={self.degs}, trdeg_bound={self.trdeg_bound})"


def bb_from_poly(f: MultiPoly) -> Blackbox:
    lifted = {f.ctx: f}

    def fn(point, ctx):
        g = lifted.get(ctx)
        if g is None:
            g = lifted.setdefault(ctx, f.lift(ctx))
        return g.eval(point)

    return Blackbox(f.ctx, f.n, max(f.deg, 0), fn, "explicit")


def system_from_polys(polys, trdeg_bound: int | None = None) -> BlackboxSystem:
    return BlackboxSystem([bb_from_poly(f) for f in polys], trdeg_bound)


def bb_compose(outer, inner) -> BlackboxSystem:
    """Oracles for ``outer_i(inner_1(x), ..., inner_r(x))``."""
    outer, inner = list(outer), list(inner)
    r = len(inner)
    if not outer or not inner:
        raise ValueError("composition needs outer and inner polynomials")
    for o in outer:
        if o.n != r:
            raise ArityError(f"outer polynomial in {o.n} variables, but {r} inner polynomials")
    n = inner[0].n
    if any(h.n != n for h in inner):
        raise ArityError("inner polynomials must share their variables")
    inner_deg = max(max(h.deg, 0) for h in inner)
    boxes = []
    for o in outer:

        def fn(point, ctx, o=o):
            vals = [h.lift(ctx).eval(point) for h in inner]
            return o.lift(ctx).eval(vals)

        boxes.append(Blackbox(o.ctx, n, max(o.deg, 0) * inner_deg, fn, "composed"))
    return BlackboxSystem(boxes, min(r, len(outer), n))


def bb_restrict(s: BlackboxSystem, sub: AffineSubstitution) -> BlackboxSystem:
    """Oracles ``z -> f(A z + b)`` in ``sub.r`` variables, over ``sub.ctx``."""
    if sub.n != s.arity:
        raise ArityError(f"substitution maps into {sub.n} variables, system has {s.arity}")
    wctx = sub.ctx
    boxes = []
    for box in s.boxes:

        def fn(point, ctx, box=box):
            if ctx != wctx:
                raise FieldError(f"restricted oracle lives over {wctx!r}, asked over {ctx!r}")
            return box.evaluate(sub.apply(point), wctx)

        boxes.append(Blackbox(wctx, sub.r, box.degree_bound, fn, "restricted"))
    bound = None if s.trdeg_bound is None else min(s.trdeg_bound, sub.r)
    return BlackboxSystem(boxes, bound)


def bb_rabinowitsch(g: Blackbox, s: BlackboxSystem) -> BlackboxSystem:
    """Append ``1 - y*g(x)`` with the fresh variable ``y`` as the last coordinate."""
    if g.arity != s.arity:
        raise ArityError("g and the system must share their variables")
    n = s.arity
    boxes = []
    for box in s.boxes:

        def fn(point, ctx, box=box):
            return box.evaluate(point[:n], ctx)

        boxes.append(Blackbox(box.ctx, n + 1, box.degree_bound, fn, box.provenance))

    def rab(point, ctx):
        return ctx.sub(1, ctx.mul(point[n], g.evaluate(point[:n], ctx)))

    boxes.append(Blackbox(g.ctx, n + 1, g.degree_bound + 1, rab, "rabinowitsch"))
    bound = None if s.trdeg_bound is None else s.trdeg_bound + 1
    return BlackboxSystem(boxes, bound)


@dataclass(frozen=True)
class Composition:
    """Explicit data behind a composed system, kept for exact cross-checks."""

    outer: tuple
    inner: tuple

    def expand(self) -> list[MultiPoly]:
        return [o.compose(list(self.inner)) for o in self.outer]
