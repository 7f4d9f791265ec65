"""Sparse multivariate polynomials over a finite field.

A :class:`MultiPoly` maps exponent tuples to nonzero field codes.  Variables
are indexed from 0 internally; the text grammar (see :mod:`nullkit.parsing`)
shows them 1-based.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import linalg
from .errors import ArityError, DegreeBoundViolation, FieldError, FieldTooSmall
from .field import FieldCtx, FieldElement, embed_code

NEG_INF = -math.inf


def grevlex_key(mono):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def _code(ctx, c):
    if isinstance(c, FieldElement):
        if c.ctx != ctx:
            raise FieldError(f"coefficient from {c.ctx!r}, expected {ctx!r}")
        return c.code
    if ctx.k == 1:
        return int(c) % ctx.p
    if not ctx.is_code(c):
        raise FieldError(f"{c!r} is not an element code of {ctx!r}")
    return c


class MultiPoly:
    __slots__ = ("ctx", "n", "terms", "_deg")

    def __init__(self, ctx: FieldCtx, n: int, terms=None):
        self.ctx = ctx
        self.n = n
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ArityError(f"exponent vector {mono} has length != {n}")
            c = _code(ctx, c)
            if c:
                clean[mono] = c
        self.terms = clean
        self._deg = None

    @classmethod
    def _raw(cls, ctx, n, terms):
        # terms already canonical
        obj = cls.__new__(cls)
        obj.ctx, obj.n, obj.terms, obj._deg = ctx, n, terms, None
        return obj

    @classmethod
    def zero(cls, ctx, n):
        return cls._raw(ctx, n, {})

    @classmethod
    def const(cls, ctx, n, c):
        c = _code(ctx, c)
        return cls._raw(ctx, n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, ctx, n, i, power=1):
        mono = [0] * n
        mono[i] = power
        return cls._raw(ctx, n, {tuple(mono): 1})

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if self._deg is None:
            self._deg = max((sum(m) for m in self.terms), default=NEG_INF)
        return self._deg

    def is_constant(self) -> bool:
        return self.deg <= 0

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.n, 0)

    def coeff(self, mono) -> int:
        return self.terms.get(tuple(mono), 0)

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key)

    def variables(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, self.n, frozenset(self.terms.items())))

    def __repr__(self):
        from .parsing import format_poly

        return f"MultiPoly({format_poly(self)!r}, {self.ctx!r}, n={self.n})"

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise FieldError(f"mixed contexts {self.ctx!r} and {other.ctx!r}")
        if other.n != self.n:
            raise ArityError(f"variable counts differ: {self.n} vs {other.n}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MultiPoly.const(self.ctx, self.n, self.ctx.from_int(other))
        if isinstance(other, FieldElement):
            return MultiPoly.const(self.ctx, self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.ctx.add
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.ctx, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MultiPoly._raw(self.ctx, self.n, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        out = {}
        if ctx.k == 1:
            p = ctx.p
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            add, mul = ctx.add, ctx.mul
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = add(out.get(m, 0), mul(c1, c2))
            out = {m: c for m, c in out.items() if c}
        return MultiPoly._raw(ctx, self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.ctx, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = _code(self.ctx, c)
        if not c:
            return MultiPoly.zero(self.ctx, self.n)
        mul = self.ctx.mul
        return MultiPoly._raw(self.ctx, self.n, {m: mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, mono, c=1) -> "MultiPoly":
        mul = self.ctx.mul
        return MultiPoly._raw(
            self.ctx,
            self.n,
            {tuple(a + b for a, b in zip(m, mono)): mul(v, c) for m, v in self.terms.items()},
        )

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.terms[self.leading_monomial()]))

    # -- evaluation and changes of ring --------------------------------------------

    def eval(self, point) -> int:
        """Evaluate at a point of field codes (or FieldElements); returns a code."""
        if len(point) != self.n:
            raise ArityError(f"point of length {len(point)} for a polynomial in {self.n} variables")
        ctx = self.ctx
        point = [_code(ctx, x) for x in point]
        if ctx.k == 1:
            p = ctx.p
            acc = 0
            for mono, c in self.terms.items():
                v = c
                for x, e in zip(point, mono):
                    if e:
                        v = v * pow(x, e, p) % p
                acc += v
            return acc % p
        add, mul, pw = ctx.add, ctx.mul, ctx.pow
        acc = 0
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v = mul(v, pw(x, e))
            acc = add(acc, v)
        return acc

    def __call__(self, point) -> FieldElement:
        return FieldElement(self.ctx, self.eval(point))

    def lift(self, ctx: FieldCtx) -> "MultiPoly":
        """The same polynomial over ``ctx``.

        Prime-subfield coefficients move between any two extensions of GF(p).
        Others need ``self.ctx`` to be a subfield of ``ctx``; they travel
        along the embedding fixed by :func:`subfield_root`.
        """
        if ctx == self.ctx:
            return self
        if ctx.p != self.ctx.p:
            raise FieldError(f"cannot move {self.ctx!r} coefficients into {ctx!r}")
        if all(c < ctx.p for c in self.terms.values()):
            return MultiPoly._raw(ctx, self.n, dict(self.terms))
        if ctx.k % self.ctx.k:
            raise FieldError(f"coefficients outside GF({ctx.p}) cannot be embedded into {ctx!r}")
        return MultiPoly._raw(ctx, self.n, {m: embed_code(c, self.ctx, ctx) for m, c in self.terms.items()})

    def extend_vars(self, n_new: int, offset: int = 0) -> "MultiPoly":
        """Embed into ``n_new`` variables, placing ours at ``offset``."""
        if n_new < self.n + offset:
            raise ArityError("target ring too small")
        pad_l, pad_r = (0,) * offset, (0,) * (n_new - self.n - offset)
        return MultiPoly._raw(
            self.ctx, n_new, {pad_l + m + pad_r: c for m, c in self.terms.items()}
        )

    def compose(self, polys) -> "MultiPoly":
        """``self(polys[0], ..., polys[n-1])``."""
        if len(polys) != self.n:
            raise ArityError(f"need {self.n} polynomials, got {len(polys)}")
        if not polys:
            return self
        ctx, n = polys[0].ctx, polys[0].n
        src = self.lift(ctx)
        cache = [{0: MultiPoly.const(ctx, n, 1), 1: q} for q in polys]

        def power(i, e):
            tbl = cache[i]
            if e not in tbl:
                tbl[e] = power(i, e - 1) * polys[i]
            return tbl[e]

        out = MultiPoly.zero(ctx, n)
        for mono, c in src.terms.items():
            t = MultiPoly.const(ctx, n, c)
            for i, e in enumerate(mono):
                if e:
                    t = t * power(i, e)
            out = out + t
        return out


@dataclass(frozen=True)
class AffineSubstitution:
    """``x_i = sum_j A[i][j] z_j + b[i]``; column j of ``A`` is the basis vector a_j."""

    ctx: FieldCtx
    A: tuple
    b: tuple

    def __init__(self, ctx, A, b):
        A = tuple(tuple(_code(ctx, x) for x in row) for row in A)
        b = tuple(_code(ctx, x) for x in b)
        if len(A) != len(b):
            raise ArityError("A and b disagree on n")
        widths = {len(row) for row in A}
        if len(widths) > 1:
            raise ArityError("ragged substitution matrix")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if self.r and linalg.rank(ctx, [list(row) for row in A]) != self.r:
            raise ValueError("substitution matrix must have full column rank")

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)], [0] * n)

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def r(self) -> int:
        return len(self.A[0]) if self.A else 0

    def apply(self, z) -> list[int]:
        if len(z) != self.r:
            raise ArityError(f"point of length {len(z)}, substitution expects {self.r}")
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        out = []
        for row, bi in zip(self.A, self.b):
            acc = bi
            for a, x in zip(row, z):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return out

    def linear_forms(self) -> list[MultiPoly]:
        ctx, r = self.ctx, self.r
        forms = []
        for row, bi in zip(self.A, self.b):
            terms = {}
            for j, a in enumerate(row):
                if a:
                    mono = [0] * r
                    mono[j] = 1
                    terms[tuple(mono)] = a
            if bi:
                terms[(0,) * r] = bi
            forms.append(MultiPoly._raw(ctx, r, terms))
        return forms


def substitute_affine(f: MultiPoly, s: AffineSubstitution) -> MultiPoly:
    if f.n != s.n:
        raise ArityError(f"substitution maps into {s.n} variables, polynomial has {f.n}")
    return f.lift(s.ctx).compose(s.linear_forms())


def formal_partials(f: MultiPoly) -> list[MultiPoly]:
    ctx = f.ctx
    out = []
    for i in range(f.n):
        terms = {}
        for mono, c in f.terms.items():
            e = mono[i]
            if e % ctx.p == 0:
                continue
            v = ctx.mul(c, ctx.from_int(e))
            m = list(mono)
            m[i] -= 1
            terms[tuple(m)] = v
        out.append(MultiPoly._raw(ctx, f.n, terms))
    return out


def monomials_upto(n: int, d: int) -> list[tuple]:
    """All exponent vectors in ``n`` variables of total degree ``<= d``, grevlex ascending."""
    if d < 0:
        return []
    out = []
    for deg in range(d + 1):
        for combo in combinations_with_replacement(range(n), deg):
            m = [0] * n
            for i in combo:
                m[i] += 1
            out.append(tuple(m))
    out.sort(key=grevlex_key)
    return out


def _evaluator(oracle, ctx):
    if hasattr(oracle, "evaluate"):
        return lambda pt: oracle.evaluate(pt, ctx)
    return oracle


def interpolate_dense(oracle, r: int, d: int, ctx: FieldCtx, rng: random.Random | None = None) -> MultiPoly:
    """Recover the ``r``-variate polynomial of total degree ``<= d`` behind ``oracle``.

    Nodes along each axis are the first ``d + 1`` field codes.  Only the
    points of the tensor grid with index sum ``<= d`` are queried (a lower
    set, so nested Newton divided differences still apply).  One extra query
    at a random point guards against a dishonest degree bound.
    """
    if d < 0:
        return MultiPoly.zero(ctx, r)
    if ctx.order <= d:
        raise FieldTooSmall(f"{ctx!r} has fewer than {d + 1} interpolation nodes: extend field")
    if rng is None:
        rng = random.Random(f"interp:{r}:{d}")
    ev = _evaluator(oracle, ctx)
    add, sub, mul, inv = ctx.add, ctx.sub, ctx.mul, ctx.inv
    grid = monomials_upto(r, d)
    vals = {alpha: ev(list(alpha)) for alpha in grid}
    # node codes are 0..d, so differences of nodes are differences of small codes
    node_inv = {}

    def dinv(i, j):
        key = (i, j)
        if key not in node_inv:
            node_inv[key] = inv(sub(i, j))
        return node_inv[key]

    for axis in range(r):
        for alpha in grid:
            if alpha[axis]:
                continue
            top = d - (sum(alpha) - alpha[axis])
            line = [alpha[:axis] + (i,) + alpha[axis + 1 :] for i in range(top + 1)]
            c = [vals[a] for a in line]
            for level in range(1, top + 1):
                for i in range(top, level - 1, -1):
                    c[i] = mul(sub(c[i], c[i - 1]), dinv(i, i - level))
            for a, v in zip(line, c):
                vals[a] = v
    for axis in range(r):
        for alpha in grid:
            if alpha[axis]:
                continue
            top = d - (sum(alpha) - alpha[axis])
            line = [alpha[:axis] + (i,) + alpha[axis + 1 :] for i in range(top + 1)]
            c = [vals[a] for a in line]
            # Horner in the Newton basis: poly <- poly * (z - node_k) + c_k
            poly = [c[top]]
            for k in range(top - 1, -1, -1):
                nxt = [0] * (len(poly) + 1)
                for i, v in enumerate(poly):
                    if v:
                        nxt[i + 1] = add(nxt[i + 1], v)
                        nxt[i] = sub(nxt[i], mul(v, k))
                nxt[0] = add(nxt[0], c[k])
                poly = nxt
            for a, v in zip(line, poly):
                vals[a] = v
    f = MultiPoly._raw(ctx, r, {a: v for a, v in vals.items() if v})
    probe = [rng.randrange(ctx.order) for _ in range(r)]
    if f.eval(probe) != ev(probe):
        raise DegreeBoundViolation(
            f"oracle disagrees with its degree-{d} interpolant at a held-out point: degree bound violated"
        )
    return f


class PolySystem:
    """Explicit polynomials sorted by nonincreasing degree.

    ``order[i]`` is the caller's index of ``polys[i]``.
    """

    def __init__(self, polys, sort: bool = True):
        polys = list(polys)
        if not polys:
            raise ValueError("empty polynomial system")
        ctx, n = polys[0].ctx, polys[0].n
        for f in polys:
            if f.ctx != ctx:
                raise FieldError("system members live in different fields")
            if f.n != n:
                raise ArityError("system members have different variable counts")
        idx = list(range(len(polys)))
        if sort:
            idx.sort(key=lambda i: -polys[i].deg)
        self.polys = tuple(polys[i] for i in idx)
        self.order = tuple(idx)
        self.ctx = ctx
        self.n = n

    @property
    def m(self) -> int:
        return len(self.polys)

    @property
    def degs(self) -> tuple:
        return tuple(f.deg for f in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __eq__(self, other):
        return isinstance(other, PolySystem) and self.polys == other.polys

    def __repr__(self):
        return f"PolySystem(m={self.m}, n={self.n}, {self.ctx!r}, degs={self.degs})"

    def lift(self, ctx: FieldCtx) -> "PolySystem":
        return PolySystem([f.lift(ctx) for f in self.polys], sort=False)

    def unsorted(self) -> list[MultiPoly]:
        """Members in the caller's original order."""
        out = [None] * self.m
        for f, i in zip(self.polys, self.order):
            out[i] = f
        return out
