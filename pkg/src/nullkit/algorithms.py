"""Top-level randomized algorithms.

* :func:`hn_test` -- does a blackbox system have a common root?
* :func:`radical_membership` -- Rabinowitsch reduction to :func:`hn_test`.
* :func:`trdeg_compute` -- output-sensitive transcendence degree via fibre sections.
* :func:`nss_certificate` -- Nullstellensatz certificate with ``deg f_i h_i <= d_1 ... d_{r+1}``.
* :func:`three_generator_transform` -- ideal membership with three generators.

Every randomized entry point takes ``rng`` as an int seed or a
:class:`random.Random`; each trial runs on its own derived sub-seed.
"""

from __future__ import annotations

import random
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from . import linalg
from .blackbox import Blackbox, BlackboxSystem, bb_from_poly, bb_rabinowitsch, bb_restrict, system_from_polys
from .errors import BudgetExceeded, NoCertificate
from .exact import DimensionOracle, GroebnerDimensionOracle
from .field import FieldCtx, SampleSet, sample_set
from .geometry import (
    CombinationMatrix,
    generator_reduction,
    random_subspace,
    required_sample_size,
    sample_hyperplanes,
)
from .poly import MultiPoly, PolySystem, interpolate_dense, monomials_upto

DEFAULT_TRIALS = 15
CERT_RETRIES = 8
# unknowns * equations allowed in a certificate linear system
CERT_BUDGET = 4_000_000


@dataclass
class Verdict:
    answer: object
    trials: int
    seed: int | None
    confidence_note: Fraction
    field: FieldCtx | None = None
    details: dict = dataclasses.field(default_factory=dict)


def _rng(rng) -> tuple[random.Random, int | None]:
    if isinstance(rng, random.Random):
        return rng, None
    seed = 0 if rng is None else int(rng)
    return random.Random(seed), seed


def _as_blackboxes(s) -> BlackboxSystem:
    if isinstance(s, BlackboxSystem):
        return s
    if isinstance(s, PolySystem):
        return system_from_polys(s.polys)
    return system_from_polys(list(s))


def _as_blackbox(g) -> Blackbox:
    return g if isinstance(g, Blackbox) else bb_from_poly(g)


def _degree_product(degs) -> int:
    return prod(max(d, 1) for d in degs)


# -- Hilbert's Nullstellensatz ------------------------------------------------------


def _hn_trial(s, r, S, S_z, rng, oracle):
    ctx = S.ctx
    sub, _ = random_subspace(s.arity, r, S, rng)
    restricted = bb_restrict(s, sub) if r < s.arity else s
    polys = [interpolate_dense(box, r, box.degree_bound, ctx, rng) for box in restricted]
    extra = [f.to_poly(r) for f in sample_hyperplanes(r, r, S_z, rng)] if r else []
    for k in range(r + 1):
        dim = oracle.dimension(polys + extra[:k], ctx, r)
        if dim == 0:
            return True
        if dim < 0:
            return False
    return False


def hn_test(
    s,
    r: int | None = None,
    rng=0,
    trials: int = DEFAULT_TRIALS,
    oracle: DimensionOracle | None = None,
    min_order: int = 2,
) -> Verdict:
    """Decide whether the system has a common root over the algebraic closure.

    ``r`` must bound the transcendence degree; when omitted it is computed
    with :func:`trdeg_compute`.  A ``nonempty`` answer is certain; ``empty``
    is wrong with probability at most ``confidence_note ** trials``.
    """
    rng, seed = _rng(rng)
    s = _as_blackboxes(s)
    oracle = oracle or GroebnerDimensionOracle()
    min_order = max(min_order, s.ctx.order)
    n = s.arity
    if r is None:
        r = trdeg_compute(s, rng, oracle=oracle, min_order=min_order).answer
    r = min(r, n)
    degs = s.degs
    D = _degree_product(degs)
    size_x = required_sample_size("hn_reduction", n=n, r=r, degs=degs)
    size_z = required_sample_size("hn_reduction", n=r, r=0, degs=degs)
    nodes = max(degs) + 1
    size = max(size_x, size_z, nodes, 1)
    S = sample_set(s.ctx.p, size, min_order, degree_multiple=s.ctx.k)
    S_x = SampleSet(S.ctx, max(size_x, 1))
    S_z = SampleSet(S.ctx, max(size_z, 1))
    per_run = min(Fraction(1), Fraction(2 * D * (n - r), S_x.size) + Fraction(2 * D * r, S_z.size))
    subseeds = [rng.getrandbits(64) for _ in range(trials)]
    for t, sub_seed in enumerate(subseeds):
        if _hn_trial(s, r, S_x, S_z, random.Random(sub_seed), oracle):
            return Verdict("nonempty", trials, seed, per_run, S.ctx, {"r": r, "decided_at_trial": t + 1})
    return Verdict("empty", trials, seed, per_run, S.ctx, {"r": r, "amplified_bound": str(per_run**trials)})


def radical_membership(
    g,
    s,
    r: int | None = None,
    rng=0,
    trials: int = DEFAULT_TRIALS,
    oracle: DimensionOracle | None = None,
    min_order: int = 2,
) -> Verdict:
    """``member`` iff ``g`` vanishes on every common root of ``s``."""
    rng, seed = _rng(rng)
    s = _as_blackboxes(s)
    g = _as_blackbox(g)
    oracle = oracle or GroebnerDimensionOracle()
    if r is None:
        r = trdeg_compute(s, rng, oracle=oracle, min_order=min_order).answer
    aug = bb_rabinowitsch(g, s)
    v = hn_test(aug, r + 1, rng, trials, oracle, min_order)
    answer = "member" if v.answer == "empty" else "not_member"
    details = dict(v.details)
    details["r"] = r
    return Verdict(answer, trials, seed, v.confidence_note, v.field, details)


# -- transcendence degree ----------------------------------------------------------------


def _fibre_trial(s, i, S, rng, oracle) -> bool:
    ctx = S.ctx
    n = s.arity
    sub, _ = random_subspace(n, i, S, rng)
    a = S.codes(rng, n)
    values = [box.evaluate(a, ctx) for box in s]
    restricted = bb_restrict(s, sub) if i < n else s
    shifted = []
    for box, v in zip(restricted, values):
        f = interpolate_dense(box, i, box.degree_bound, ctx, rng)
        shifted.append(f - MultiPoly.const(ctx, i, v))
    return oracle.dimension(shifted, ctx, i) == 0


def trdeg_compute(
    s,
    rng=0,
    trials: int = 3,
    oracle: DimensionOracle | None = None,
    min_order: int = 2,
) -> Verdict:
    """Smallest ``i`` whose random fibre, cut by ``n - i`` hyperplanes, is zero-dimensional.

    Each ``i`` is decided by a majority over ``trials`` runs.  Since the
    answer never exceeds ``min(m, n)``, reaching that value ends the loop
    without a test.
    """
    rng, seed = _rng(rng)
    s = _as_blackboxes(s)
    oracle = oracle or GroebnerDimensionOracle()
    n, m = s.arity, s.m
    degs = s.degs
    min_order = max(min_order, s.ctx.order)
    size = max(required_sample_size("trdeg_point", n=n, degs=degs), max(degs) + 1, 1)
    S = sample_set(s.ctx.p, size, min_order, degree_multiple=s.ctx.k)
    ctx = S.ctx
    note = Fraction(1, 6)
    # constant systems: identical values at three random points
    probes = [S.codes(rng, n) for _ in range(3)]
    vals = [[box.evaluate(pt, ctx) for box in s] for pt in probes]
    if all(v == vals[0] for v in vals):
        return Verdict(0, trials, seed, note, ctx, {"tested": [0]})
    top = min(m, n)
    tested = []
    for i in range(1, top):
        tested.append(i)
        yes = no = 0
        need = trials // 2 + 1
        for _ in range(trials):
            if _fibre_trial(s, i, S, random.Random(rng.getrandbits(64)), oracle):
                yes += 1
            else:
                no += 1
            if yes >= need or no >= need:
                break
        if yes >= need:
            return Verdict(i, trials, seed, note, ctx, {"tested": tested})
    return Verdict(top, trials, seed, note, ctx, {"tested": tested})


# -- Nullstellensatz certificates ----------------------------------------------------------


@dataclass
class Certificate:
    """``sum f_i h_i == 1`` with ``deg f_i h_i <= bound`` (caller's order)."""

    h: list
    bound: int
    combination: CombinationMatrix | None = None
    attempts: int = 1

    def verify(self, polys) -> bool:
        polys = [f.lift(self.h[0].ctx) for f in polys]
        total = MultiPoly.zero(polys[0].ctx, polys[0].n)
        for f, h in zip(polys, self.h):
            if not h.is_zero() and f.deg + h.deg > self.bound:
                return False
            total = total + f * h
        return total == MultiPoly.const(total.ctx, total.n, 1)


def _solve_certificate(gens, budgets, ctx, n):
    """Find ``h'`` with ``sum g_i h'_i == 1`` and ``deg h'_i <= budgets[i]``; None if infeasible."""
    blocks = [monomials_upto(n, b) for b in budgets]
    ncols = sum(len(b) for b in blocks)
    row_monos = {}
    columns = []
    for g, block in zip(gens, blocks):
        for mu in block:
            col = {}
            for m, c in g.terms.items():
                x = tuple(a + b for a, b in zip(m, mu))
                col[x] = c
                row_monos.setdefault(x, len(row_monos))
            columns.append(col)
    one = (0,) * n
    row_monos.setdefault(one, len(row_monos))
    nrows = len(row_monos)
    if nrows * ncols > CERT_BUDGET:
        raise BudgetExceeded(f"certificate system {nrows}x{ncols} exceeds the budget")
    matrix = [[0] * ncols for _ in range(nrows)]
    for j, col in enumerate(columns):
        for x, c in col.items():
            matrix[row_monos[x]][j] = c
    rhs = [0] * nrows
    rhs[row_monos[one]] = 1
    sol = linalg.linsolve(ctx, matrix, rhs, ncols)
    if not sol.consistent:
        return None
    out, pos = [], 0
    for block in blocks:
        terms = {mu: sol.solution[pos + k] for k, mu in enumerate(block)}
        out.append(MultiPoly(ctx, n, terms))
        pos += len(block)
    return out


def nss_certificate(
    s,
    r: int | None = None,
    S: SampleSet | None = None,
    rng=0,
    retries: int = CERT_RETRIES,
    min_order: int = 2,
) -> Certificate:
    """Certificate ``sum f_i h_i = 1`` with ``deg f_i h_i <= prod_{i <= r+1} d_i``.

    The system is reduced to ``r + 1`` triangular random combinations
    ``g_i``, a certificate for the ``g_i`` is found by linear algebra with
    ``deg h'_i <= B - d_i``, and ``h_j = sum_i c_ij h'_i`` is substituted back.
    Raises :class:`NoCertificate` when every retry is infeasible.
    """
    rng, _ = _rng(rng)
    system = s if isinstance(s, PolySystem) else PolySystem(s)
    caller = system.unsorted()
    m, n = system.m, system.n
    min_order = max(min_order, system.ctx.order)
    for j, f in enumerate(caller):
        if f.deg == 0:
            h = [MultiPoly.zero(f.ctx, n) for _ in caller]
            h[j] = MultiPoly.const(f.ctx, n, f.ctx.inv(f.constant_term()))
            return Certificate(h, 0)
    if r is None:
        r = trdeg_compute(system, rng, min_order=min_order).answer
    # zero members sort last and get h = 0
    live = [(i, f) for f, i in zip(system.polys, system.order) if not f.is_zero()]
    if not live:
        raise NoCertificate("the zero system has the whole space as zeroset")
    degs = [f.deg for _, f in live]
    k = min(r + 1, len(degs))
    bound = prod(degs[:k])
    reduce = len(degs) > r + 1
    if S is None:
        if reduce:
            need = required_sample_size("generator_reduction", m=len(degs), r=r, degs=degs)
            S = sample_set(system.ctx.p, need, min_order, degree_multiple=system.ctx.k)
        else:
            # no combinations are drawn; stay in the input field
            S = SampleSet(system.ctx, 1)
    ctx = S.ctx
    base = PolySystem([f.lift(ctx) for _, f in live], sort=False)
    attempts = retries if reduce else 1
    for attempt in range(1, attempts + 1):
        reduced, C = generator_reduction(base, r, S, rng)
        gens = list(reduced.polys)
        budgets = [bound - d for d in degs[: len(gens)]]
        hp = _solve_certificate(gens, budgets, ctx, n)
        if hp is None:
            continue
        h = [MultiPoly.zero(ctx, n) for _ in range(m)]
        for j, (idx, _) in enumerate(live):
            acc = h[idx]
            for i in range(min(j + 1, len(hp))):
                c = C.c[i][j]
                if c:
                    acc = acc + hp[i].scale(c)
            h[idx] = acc
        cert = Certificate(h, bound, C, attempt)
        if not cert.verify(caller):
            raise AssertionError("certificate failed its own verification")
        return cert
    raise NoCertificate(f"no certificate with deg f_i h_i <= {bound} after {attempts} reduction(s)")


# -- three-generator transform ---------------------------------------------------------------


def three_generator_transform(g: MultiPoly, s):
    """``g in <f_1..f_m>`` iff ``z1^m z2^m g in <z1^(m+1), z2^(m+1), sum_i f_i z1^i z2^(m-i)>``.

    ``z1, z2`` are appended after the original variables.
    """
    polys = s.unsorted() if isinstance(s, PolySystem) else list(s)
    m, n = len(polys), g.n
    ctx = g.ctx
    N = n + 2
    z1 = MultiPoly.var(ctx, N, n)
    z2 = MultiPoly.var(ctx, N, n + 1)
    g2 = (z1**m) * (z2**m) * g.extend_vars(N)
    combo = MultiPoly.zero(ctx, N)
    for i, f in enumerate(polys, start=1):
        combo = combo + f.lift(ctx).extend_vars(N) * (z1**i) * (z2 ** (m - i))
    t = PolySystem([z1 ** (m + 1), z2 ** (m + 1), combo], sort=False)
    return g2, t
