"""Exact arithmetic in GF(p) and GF(p^k).

Elements travel through the rest of the package as integer *codes*: the
element ``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` (power basis of the
irreducible polynomial ``irr(t)``) has code ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.
For prime fields the code is simply the residue.  Integer order on codes is
the lexicographic order of coefficient vectors read from the top
coefficient down; it is the canonical enumeration used by :class:`SampleSet`.

:class:`FieldElement` wraps a code together with its context for callers
who want operator syntax.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FieldError, FieldTooSmall

# Deterministic for every n < 3.3 * 10^24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Fields up to this order get exp/log tables.
TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# -- univariate polynomials over GF(p), coefficient lists low -> high ------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a, m, p):
    """Remainder of ``a`` modulo monic ``m``."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            off = i - dm
            for j in range(dm + 1):
                a[off + j] = (a[off + j] - c * m[j]) % p
    return _trim(a[:dm])


def _upoly_mulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _upoly_mod(prod, m, p)


def _upoly_powmod(a, e, m, p):
    result = [1]
    base = _upoly_mod(a, m, p)
    while e:
        if e & 1:
            result = _upoly_mulmod(result, base, m, p)
        base = _upoly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _upoly_gcd(a, b, p):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [c * inv % p for c in b]
        a, b = b, _upoly_mod(a, monic, p)
    return a


def _upoly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic ``f`` (coefficients low -> high) over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]

    def frob_iter(times):
        # x^(p^times) mod f
        y = x
        for _ in range(times):
            y = _upoly_powmod(y, p, f, p)
        return y

    if _upoly_sub(frob_iter(k), x, p):
        return False
    for q in prime_factors(k):
        h = _upoly_sub(frob_iter(k // q), x, p)
        g = _upoly_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


class FieldCtx:
    """GF(p^k) with a fixed monic irreducible ``irr`` (absent when k == 1).

    ``irr`` is stored as a coefficient tuple, low degree first, with the
    leading 1 included.  Arithmetic methods act on integer codes.
    ``use_tables=False`` forces digit arithmetic even for small fields.
    """

    def __init__(self, p: int, k: int = 1, irr=None, use_tables: bool = True):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        if k == 1:
            if irr is not None and tuple(irr) not in ((0, 1),):
                raise FieldError("prime field takes no irreducible polynomial")
            self.irr = None
        else:
            irr = tuple(int(c) % p for c in irr)
            if len(irr) != k + 1 or irr[-1] != 1:
                raise FieldError(f"irr must be monic of degree {k}")
            if not is_irreducible(list(irr), p):
                raise FieldError(f"{irr} is reducible over GF({p})")
            self.irr = irr
        self._exp = self._log = None
        if k == 1:
            self.add = self._add_prime
            self.sub = self._sub_prime
            self.neg = self._neg_prime
            self.mul = self._mul_prime
            self.inv = self._inv_prime
            self.pow = self._pow_prime
        else:
            if p == 2:
                self.add = self.sub = self._xor
                self.neg = self._ident
            else:
                self.add = self._add_digits
                self.sub = self._sub_digits
                self.neg = self._neg_digits
            if use_tables and self.order <= TABLE_LIMIT:
                self._build_tables()
                self.mul = self._mul_table
                self.inv = self._inv_table
                self.pow = self._pow_table
            else:
                self.mul = self._mul_digits
                self.inv = self._inv_generic
                self.pow = self._pow_generic

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.p, self.k, self.irr)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def characteristic(self) -> int:
        return self.p

    # -- codes <-> coefficient vectors ---------------------------------------

    def digits(self, a: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds) -> int:
        ds = list(ds)
        if len(ds) != self.k:
            raise FieldError(f"expected {self.k} coefficients, got {len(ds)}")
        code = 0
        for c in reversed(ds):
            code = code * self.p + int(c) % self.p
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` (lands in the prime subfield)."""
        return n % self.p

    def is_code(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- prime field ----------------------------------------------------------

    def _add_prime(self, a, b):
        return (a + b) % self.p

    def _sub_prime(self, a, b):
        return (a - b) % self.p

    def _neg_prime(self, a):
        return -a % self.p

    def _mul_prime(self, a, b):
        return a * b % self.p

    def _inv_prime(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def _pow_prime(self, a, e):
        if e < 0:
            return pow(self._inv_prime(a), -e, self.p)
        return pow(a, e, self.p)

    # -- extension field: additive group --------------------------------------

    def _xor(self, a, b):
        return a ^ b

    def _ident(self, a):
        return a

    def _add_digits(self, a, b):
        p = self.p
        out, m = 0, 1
        for _ in range(self.k):
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            s = x + y
            if s >= p:
                s -= p
            out += s * m
            m *= p
        return out

    def _neg_digits(self, a):
        p = self.p
        out, m = 0, 1
        for _ in range(self.k):
            a, x = divmod(a, p)
            if x:
                out += (p - x) * m
            m *= p
        return out

    def _sub_digits(self, a, b):
        return self._add_digits(a, self._neg_digits(b))

    # -- extension field: multiplicative group --------------------------------

    def _mul_digits(self, a, b):
        if a == 0 or b == 0:
            return 0
        p, k, irr = self.p, self.k, self.irr
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                off = i - k
                for j in range(k):
                    prod[off + j] -= c * irr[j]
        code = 0
        for i in range(k - 1, -1, -1):
            code = code * p + prod[i] % p
        return code

    def _pow_generic(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        if e < 0:
            a, e = self._inv_generic(a), -e
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self._mul_digits(result, a)
            a = self._mul_digits(a, a)
            e >>= 1
        return result

    def _inv_generic(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._pow_generic(a, self.order - 2)

    def _build_tables(self):
        p, k, q = self.p, self.k, self.order
        # generator search with the table-free multiplication
        rng = random.Random(f"gen:{p}:{k}:{self.irr}")
        factors = prime_factors(q - 1)
        while True:
            g = rng.randrange(2, q)
            if all(self._pow_generic(g, (q - 1) // f) != 1 for f in factors):
                break
        # exp table by doubling: block [L, 2L) = g^L * block [0, L)
        weights = np.array([p**i for i in range(k)], dtype=np.int64)
        block = np.zeros((k, 1), dtype=np.int64)
        block[0, 0] = 1
        while block.shape[1] < q - 1:
            c = self._pow_generic(g, block.shape[1])
            # columns: c * t^j as digit vectors
            mat = np.array(
                [self.digits(self._mul_digits(c, p**j)) for j in range(k)],
                dtype=np.int64,
            ).T
            block = np.concatenate([block, (mat @ block) % p], axis=1)
        exp = (weights @ block[:, : q - 1]).astype(np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        exp_list = exp.tolist()
        self._exp = exp_list + exp_list
        self._log = log.tolist()

    def _mul_table(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _inv_table(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        la = self._log[a]
        return self._exp[(self.order - 1 - la) % (self.order - 1)]

    def _pow_table(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    code: int

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, coeffs) -> "FieldElement":
        return cls(ctx, ctx.from_digits(coeffs))

    @property
    def coeffs(self) -> tuple:
        return self.ctx.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError(f"mixed contexts {self.ctx} and {other.ctx}")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.code} (mod {self.ctx.p})"
        return f"{list(self.coeffs)} in {self.ctx!r}"


_OPS = ("add", "sub", "mul", "div", "inv", "pow")


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """Apply ``op`` to ``a`` and ``b`` (``b`` is ignored for inv, an int for pow)."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElement) or b.ctx != a.ctx:
        raise FieldError("operands must share a field context")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if b.code == 0:
        raise ZeroDivisionError("division by zero")
    return a / b


def find_irreducible(p: int, k: int, seed: int = 0) -> tuple:
    """First irreducible monic of degree k drawn from a seeded stream."""
    rng = random.Random(f"irr:{p}:{k}:{seed}")
    while True:
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)


@lru_cache(maxsize=None)
def _field(p: int, k: int, seed: int) -> FieldCtx:
    if k == 1:
        return FieldCtx(p)
    return FieldCtx(p, k, find_irreducible(p, k, seed))


def make_field(p: int, min_order: int = 2, seed: int = 0, degree_multiple: int = 1) -> FieldCtx:
    """Smallest GF(p^k) with ``p^k >= min_order`` and ``degree_multiple | k``.

    Contexts are cached, so equal arguments give the identical object.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if min_order < 2:
        raise FieldError("min_order must be >= 2")
    if degree_multiple < 1:
        raise FieldError("degree_multiple must be >= 1")
    k = degree_multiple
    while p**k < min_order:
        k += degree_multiple
    return _field(p, k, seed)


# -- subfield embeddings ------------------------------------------------------
# Polynomials over a field ctx are coefficient-code lists, low degree first.


def _fpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_mod(a, m, ctx):
    # m is monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            off = i - dm
            for j in range(dm):
                a[off + j] = ctx.sub(a[off + j], ctx.mul(c, m[j]))
            a[i] = 0
    return _fpoly_trim(a[:dm])


def _fpoly_mulmod(a, b, m, ctx):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = ctx.add(prod[i + j], ctx.mul(x, y))
    return _fpoly_mod(prod, m, ctx)


def _fpoly_monic(a, ctx):
    inv = ctx.inv(a[-1])
    return [ctx.mul(c, inv) for c in a]


def _fpoly_gcd(a, b, ctx):
    a, b = _fpoly_trim(list(a)), _fpoly_trim(list(b))
    while b:
        b = _fpoly_monic(b, ctx)
        a, b = b, _fpoly_mod(a, b, ctx)
    return _fpoly_monic(a, ctx) if a else a


def _fpoly_div(a, b, ctx):
    # exact quotient of a by monic b
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = ctx.sub(a[i - db + j], ctx.mul(c, b[j]))
    return q


def _split_roots(f, ctx, rng):
    """Roots of a monic ``f`` that splits into distinct linear factors over ``ctx``."""
    if len(f) == 2:
        return [ctx.neg(f[0])]
    while True:
        a = rng.randrange(ctx.order)
        if ctx.p == 2:
            # trace of a*x: sum of its 2^i-th powers
            y = _fpoly_mod([0, a], f, ctx)
            h = list(y)
            for _ in range(ctx.k - 1):
                y = _fpoly_mulmod(y, y, f, ctx)
                h = [ctx.add(u, v) for u, v in zip(h + [0] * len(y), y + [0] * len(h))]
                _fpoly_trim(h)
        else:
            e, base, h = (ctx.order - 1) // 2, _fpoly_mod([a, 1], f, ctx), [1]
            while e:
                if e & 1:
                    h = _fpoly_mulmod(h, base, f, ctx)
                base = _fpoly_mulmod(base, base, f, ctx)
                e >>= 1
            h = list(h) or [0]
            h[0] = ctx.sub(h[0], 1)
            _fpoly_trim(h)
        g = _fpoly_gcd(f, h, ctx)
        if 1 < len(g) < len(f):
            return _split_roots(g, ctx, rng) + _split_roots(_fpoly_div(f, g, ctx), ctx, rng)


_EMBED_CACHE: dict = {}


def subfield_root(src: FieldCtx, dst: FieldCtx) -> int:
    """The least code in ``dst`` that is a root of ``src.irr``.

    Sending the generator of ``src`` there fixes an embedding of ``src`` into
    ``dst``; it exists exactly when ``src.k`` divides ``dst.k``.
    """
    if src.p != dst.p or dst.k % src.k:
        raise FieldError(f"{src!r} does not embed into {dst!r}")
    key = (src, dst)
    if key not in _EMBED_CACHE:
        if src.k == 1:
            root = 0
        else:
            rng = random.Random(f"embed:{src._key()}:{dst._key()}")
            root = min(_split_roots(list(src.irr), dst, rng))
        _EMBED_CACHE[key] = root
    return _EMBED_CACHE[key]


def embed_code(code: int, src: FieldCtx, dst: FieldCtx) -> int:
    """Image of ``code`` under the embedding fixed by :func:`subfield_root`."""
    if code < src.p:
        return code
    alpha = subfield_root(src, dst)
    acc = 0
    for d in reversed(src.digits(code)):
        acc = dst.add(dst.mul(acc, alpha), d)
    return acc


@dataclass(frozen=True)
class SampleSet:
    """The first ``size`` elements of the canonical enumeration of ``ctx``.

    With ``excludes_zero`` the enumeration starts at code 1.
    """

    ctx: FieldCtx
    size: int
    excludes_zero: bool = True

    def __post_init__(self):
        room = self.ctx.order - (1 if self.excludes_zero else 0)
        if self.size < 1:
            raise ValueError("sample set must be nonempty")
        if self.size > room:
            raise FieldTooSmall(
                f"{self.ctx!r} has only {room} usable elements, need {self.size}: extend field"
            )

    def draw(self, rng: random.Random) -> int:
        return rng.randrange(self.size) + (1 if self.excludes_zero else 0)

    def codes(self, rng: random.Random, count: int) -> list[int]:
        off = 1 if self.excludes_zero else 0
        return [rng.randrange(self.size) + off for _ in range(count)]


def sample(S: SampleSet, rng: random.Random, count: int) -> list[FieldElement]:
    return [FieldElement(S.ctx, c) for c in S.codes(rng, count)]


def sample_set(
    p: int, size: int, min_order: int = 2, excludes_zero: bool = True, degree_multiple: int = 1
) -> SampleSet:
    """Build a sample set of ``size`` elements, extending GF(p) as needed."""
    need = size + (1 if excludes_zero else 0)
    ctx = make_field(p, max(min_order, need, 2), degree_multiple=degree_multiple)
    return SampleSet(ctx, size, excludes_zero)
