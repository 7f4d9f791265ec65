"""Randomized geometric reductions: hyperplane sections, variable reduction,
generator reduction, and the sample-set sizes that make them reliable."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import prod

from . import linalg
from .blackbox import Blackbox, BlackboxSystem
from .errors import ArityError, ResampleError
from .field import FieldCtx, SampleSet
from .poly import AffineSubstitution, MultiPoly, PolySystem

PURPOSES = ("hn_reduction", "generator_reduction", "trdeg_point")

MAX_RESAMPLES = 8


def _degree_product(degs) -> int:
    # constants contribute a factor 1 (Bezout with a degree-0 hypersurface is vacuous)
    return prod(max(int(d), 1) for d in degs)


def required_sample_size(purpose: str, n: int = 0, m: int | None = None, r: int = 0, degs=()) -> int:
    """|S| needed for the per-stage failure budget of 1/6 (1/3 per HN stage).

    * ``hn_reduction``: ``6 (n - r) prod(d_i)``
    * ``generator_reduction``: ``6 d^((r+1) m)`` with ``d = max d_i``
    * ``trdeg_point``: ``18 n prod(d_i)``
    """
    degs = list(degs)
    if purpose == "hn_reduction":
        return 6 * (n - r) * _degree_product(degs)
    if purpose == "generator_reduction":
        m = len(degs) if m is None else m
        d = max([max(int(x), 1) for x in degs] or [1])
        return 6 * d ** ((r + 1) * m)
    if purpose == "trdeg_point":
        return 18 * n * _degree_product(degs)
    raise ValueError(f"unknown purpose {purpose!r}; expected one of {PURPOSES}")


@dataclass(frozen=True)
class LinearForm:
    """``sum coeffs[i] x_i + constant`` with at least one nonzero coefficient."""

    ctx: FieldCtx
    coeffs: dict
    constant: int = 0

    def __post_init__(self):
        if not any(self.coeffs.values()):
            raise ValueError("a hyperplane needs a nonzero variable coefficient")

    def to_poly(self, n: int) -> MultiPoly:
        terms = {}
        for i, c in self.coeffs.items():
            if i >= n:
                raise ArityError(f"variable index {i} outside {n} variables")
            mono = [0] * n
            mono[i] = 1
            terms[tuple(mono)] = c
        terms[(0,) * n] = self.constant
        return MultiPoly(self.ctx, n, terms)

    def evaluate(self, point) -> int:
        add, mul = self.ctx.add, self.ctx.mul
        acc = self.constant
        for i, c in self.coeffs.items():
            acc = add(acc, mul(c, point[i]))
        return acc


def sample_hyperplanes(n: int, count: int, S: SampleSet, rng: random.Random, support=None) -> list[LinearForm]:
    """``count`` affine forms whose coefficients and constant are i.i.d. draws from ``S``.

    ``support`` restricts the variables (0-based); default is all ``n``.
    """
    support = sorted(range(n) if support is None else set(support))
    if not support:
        raise ValueError("hyperplane support must be nonempty")
    if support[-1] >= n or support[0] < 0:
        raise ArityError("support index out of range")
    if not S.excludes_zero:
        raise ValueError("hyperplane coefficients must come from a set without 0")
    forms = []
    for _ in range(count):
        coeffs = {i: S.draw(rng) for i in support}
        forms.append(LinearForm(S.ctx, coeffs, S.draw(rng)))
    return forms


def subspace_substitution(forms, n: int, r: int) -> AffineSubstitution:
    """Parametrize the common zeroset of ``n - r`` affine forms as ``A z + b``."""
    forms = list(forms)
    if len(forms) != n - r:
        raise ArityError(f"need {n - r} forms to cut {n} variables down to {r}")
    if not forms:
        raise ValueError("no forms; use AffineSubstitution.identity")
    ctx = forms[0].ctx
    matrix = [[f.coeffs.get(i, 0) for i in range(n)] for f in forms]
    rhs = [ctx.neg(f.constant) for f in forms]
    sol = linalg.linsolve(ctx, matrix, rhs)
    if sol.rank < n - r:
        raise ResampleError("hyperplanes are linearly dependent: resample")
    A = [[v[i] for v in sol.kernel] for i in range(n)]
    return AffineSubstitution(ctx, A, sol.solution)


def random_subspace(n: int, r: int, S: SampleSet, rng: random.Random, support=None):
    """Sample ``n - r`` hyperplanes (resampling degenerate draws) and parametrize their intersection."""
    if r >= n:
        return AffineSubstitution.identity(S.ctx, n), []
    for _ in range(MAX_RESAMPLES):
        forms = sample_hyperplanes(n, n - r, S, rng, support)
        try:
            return subspace_substitution(forms, n, r), forms
        except ResampleError:
            continue
    raise ResampleError(f"{MAX_RESAMPLES} consecutive degenerate hyperplane draws")


@dataclass(frozen=True)
class CombinationMatrix:
    """Row ``i`` combines ``f_i, ..., f_m``: ``c[i][j] == 0`` for ``j < i``."""

    ctx: FieldCtx
    c: tuple

    def __post_init__(self):
        for i, row in enumerate(self.c):
            if any(row[j] for j in range(min(i, len(row)))):
                raise ValueError(f"row {i} has support left of the diagonal")

    @property
    def rows(self) -> int:
        return len(self.c)

    @property
    def cols(self) -> int:
        return len(self.c[0]) if self.c else 0

    @classmethod
    def identity(cls, ctx, m):
        return cls(ctx, tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)))


def _combine_polys(ctx, polys, row):
    out = MultiPoly.zero(ctx, polys[0].n)
    for c, f in zip(row, polys):
        if c:
            out = out + f.scale(c)
    return out


def _combine_boxes(ctx, boxes, row, i):
    members = [(c, b) for c, b in zip(row, boxes) if c]

    def fn(point, wctx):
        add, mul = wctx.add, wctx.mul
        acc = 0
        for c, b in members:
            acc = add(acc, mul(c, b.evaluate(point, wctx)))
        return acc

    bound = max(b.degree_bound for b in boxes[i:])
    return Blackbox(ctx, boxes[0].arity, bound, fn, "composed")


def generator_reduction(s, r: int, S: SampleSet, rng: random.Random):
    """Replace ``m`` generators by ``r + 1`` triangular random combinations.

    Inputs are sorted by nonincreasing degree first; ``g_i`` combines only
    ``f_i, ..., f_m``.  Returns ``(reduced, C)`` where ``reduced`` has the
    same kind as ``s`` (explicit or oracle).  With ``m <= r + 1`` the inputs
    come back unchanged with an identity ``C``.
    """
    if isinstance(s, BlackboxSystem):
        s = s.sorted()
        members = list(s.boxes)
    else:
        if not isinstance(s, PolySystem):
            s = PolySystem(s)
        members = list(s.polys)
    m = len(members)
    ctx = S.ctx
    if m <= r + 1:
        return s, CombinationMatrix.identity(ctx, m)
    rows = []
    for i in range(r + 1):
        rows.append(tuple(S.draw(rng) if j >= i else 0 for j in range(m)))
    C = CombinationMatrix(ctx, tuple(rows))
    if isinstance(s, BlackboxSystem):
        boxes = [_combine_boxes(ctx, members, row, i) for i, row in enumerate(rows)]
        return BlackboxSystem(boxes, s.trdeg_bound if s.trdeg_bound is None else min(s.trdeg_bound, r + 1)), C
    polys = [f.lift(ctx) for f in members]
    return PolySystem([_combine_polys(ctx, polys, row) for row in rows], sort=False), C
