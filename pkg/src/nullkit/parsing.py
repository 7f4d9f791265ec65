"""Text format for polynomial systems.

Example input::

    field p=101
    # the system and an optional query polynomial
    f: x1^2 - x2
    f: x2 - 1
    g: x1 + 3*x2

Composed systems use ``inner:`` lines in ``x`` and ``outer:`` lines in
``z1..zr`` (one ``z`` per inner line).  Coefficients are integers below
``p``; over an extension, ``t`` denotes the generator of the power basis.
Variables are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .blackbox import BlackboxSystem, Composition, bb_compose, system_from_polys
from .errors import FieldError, ParseError
from .field import FieldCtx, make_field
from .poly import MultiPoly, PolySystem, grevlex_key

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xz])(?P<idx>\d+)|(?P<gen>t)|(?P<op>[-+*^]))")
STANZAS = ("f", "g", "inner", "outer")


@dataclass
class _Term:
    coeff: int  # signed integer product
    t_exp: int
    powers: dict  # (letter, index) -> exponent
    cols: dict  # (letter, index) -> column of first occurrence
    nums: list  # (literal, column), range-checked once p is known


def _tokenize(text: str, line, col0: int):
    tokens, pos = [], 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", line, col0 + at + 1)
        kind = m.lastgroup if m.lastgroup != "idx" else "var"
        tokens.append((kind, m.group(kind), m.group("idx"), col0 + m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", None, None, col0 + len(text.rstrip()) + 1))
    return tokens


def _parse_terms(text: str, line=None, col0: int = 0) -> list[_Term]:
    """Parse a signed sum of products; columns are reported 1-based from ``col0``."""
    tokens = _tokenize(text, line, col0)
    pos = 0

    def peek():
        return tokens[pos]

    def fail(msg, tok):
        raise ParseError(msg, line, tok[3])

    def exponent():
        nonlocal pos
        if peek()[:2] != ("op", "^"):
            return 1
        pos += 1
        tok = peek()
        if tok[0] != "num":
            fail("expected an exponent after '^'", tok)
        pos += 1
        return int(tok[1])

    def factor(term):
        nonlocal pos
        tok = peek()
        pos += 1
        if tok[0] == "num":
            term.coeff *= int(tok[1])
            term.nums.append((int(tok[1]), tok[3]))
        elif tok[0] == "gen":
            term.cols.setdefault(("t", 0), tok[3])
            term.t_exp += exponent()
        elif tok[0] == "var":
            key = (tok[1], int(tok[2]))
            if key[1] < 1:
                fail(f"unknown variable index {tok[1]}{tok[2]}", tok)
            term.cols.setdefault(key, tok[3])
            term.powers[key] = term.powers.get(key, 0) + exponent()
        elif tok[0] == "end":
            fail("expected a term", tok)
        else:
            fail(f"unexpected {tok[1]!r}", tok)

    terms = []
    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if peek()[1] == "-" else 1
        pos += 1
    while True:
        term = _Term(sign, 0, {}, {}, [])
        factor(term)
        while peek()[:2] == ("op", "*"):
            pos += 1
            factor(term)
        terms.append(term)
        tok = peek()
        if tok[0] == "end":
            return terms
        if tok[:2] not in (("op", "-"), ("op", "+")):
            fail(f"expected an operator, got {tok[1] or tok[0]!r}", tok)
        sign = -1 if tok[1] == "-" else 1
        pos += 1


def _max_index(terms, letter) -> int:
    return max((i for t in terms for (l, i) in t.powers if l == letter), default=0)


def _build(terms, ctx: FieldCtx, n: int, letter: str, line=None, col0: int = 0) -> MultiPoly:
    out = {}
    t_code = ctx.p if ctx.k > 1 else None  # code of the power-basis generator
    for term in terms:
        mono = [0] * n
        for (l, i), e in term.powers.items():
            if l == "t":
                continue
            if l != letter or i > n:
                raise ParseError(f"unknown variable index {l}{i}", line, term.cols[(l, i)])
            mono[i - 1] += e
        for value, col in term.nums:
            if value >= ctx.p:
                raise ParseError(f"coefficient out of range for GF({ctx.p}): {value}", line, col)
        c = term.coeff % ctx.p
        if term.t_exp:
            if t_code is None:
                raise ParseError("'t' needs an extension field (raise min_order)", line, term.cols[("t", 0)])
            c = ctx.mul(c, ctx.pow(t_code, term.t_exp))
        key = tuple(mono)
        out[key] = ctx.add(out.get(key, 0), c)
    return MultiPoly(ctx, n, out)


def parse_poly(text: str, ctx: FieldCtx, n: int | None = None, var: str = "x") -> MultiPoly:
    """Parse one polynomial in ``var1..varn``; ``n`` defaults to the largest index used."""
    terms = _parse_terms(text)
    if n is None:
        n = max(_max_index(terms, var), 1)
    return _build(terms, ctx, n, var)


def _coeff_terms(ctx: FieldCtx, c: int):
    """``c`` as (digit, t-power) pairs, highest power first."""
    if ctx.k == 1:
        return [(c, 0)]
    digits = ctx.digits(c)
    return [(d, j) for j, d in reversed(list(enumerate(digits))) if d]


def format_poly(f: MultiPoly, var: str = "x") -> str:
    """Grevlex-descending rendering that :func:`parse_poly` reads back exactly."""
    if f.is_zero():
        return "0"
    parts = []
    for mono in sorted(f.terms, key=grevlex_key, reverse=True):
        for d, j in _coeff_terms(f.ctx, f.terms[mono]):
            factors = []
            if j:
                factors.append("t" if j == 1 else f"t^{j}")
            for i, e in enumerate(mono):
                if e:
                    factors.append(f"{var}{i + 1}" if e == 1 else f"{var}{i + 1}^{e}")
            if d != 1 or not factors:
                factors.insert(0, str(d))
            parts.append("*".join(factors))
    return " + ".join(parts)


def format_header(ctx: FieldCtx) -> str:
    if ctx.k == 1:
        return f"field p={ctx.p}"
    return f"field p={ctx.p} min_order={ctx.order}"


def format_system(polys, g: MultiPoly | None = None) -> str:
    """A complete input file for ``polys`` (caller order) and optional ``g``."""
    polys = polys.unsorted() if isinstance(polys, PolySystem) else list(polys)
    lines = [format_header(polys[0].ctx)]
    lines += [f"f: {format_poly(f)}" for f in polys]
    if g is not None:
        lines.append(f"g: {format_poly(g)}")
    return "\n".join(lines) + "\n"


@dataclass
class ParsedInput:
    ctx: FieldCtx
    system: PolySystem | None
    g: MultiPoly | None = None
    composition: Composition | None = None
    blackboxes: BlackboxSystem | None = None

    @property
    def n(self) -> int:
        return self.blackboxes.arity

    def __iter__(self):
        yield self.ctx
        yield self.system if self.composition is None else self.blackboxes
        yield self.g


_HEADER = re.compile(r"field\s+p\s*=\s*(\d+)(?:\s+min_order\s*=\s*(\d+))?\s*$")


def parse_text(text: str) -> ParsedInput:
    ctx = None
    stanzas = {k: [] for k in STANZAS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ctx is None:
            m = _HEADER.match(body.strip())
            if not m:
                raise ParseError("expected header 'field p=<prime> [min_order=<int>]'", lineno, 1)
            p = int(m.group(1))
            min_order = int(m.group(2)) if m.group(2) else p
            try:
                ctx = make_field(p, max(min_order, 2))
            except FieldError as exc:
                raise ParseError(str(exc), lineno, 1) from exc
            continue
        m = re.match(r"\s*(\w+)\s*:", body)
        if not m or m.group(1) not in STANZAS:
            raise ParseError(f"expected one of {', '.join(s + ':' for s in STANZAS)}", lineno, 1)
        col0 = m.end()
        stanzas[m.group(1)].append((_parse_terms(body[col0:], lineno, col0), lineno, col0))
    if ctx is None:
        raise ParseError("missing 'field' header", 1, 1)
    if len(stanzas["g"]) > 1:
        raise ParseError("at most one g: line", stanzas["g"][1][1], 1)
    composed = stanzas["inner"] or stanzas["outer"]
    if composed and stanzas["f"]:
        raise ParseError("mix of f: and inner:/outer: stanzas", stanzas["f"][0][1], 1)
    if composed:
        if not stanzas["inner"] or not stanzas["outer"]:
            raise ParseError("composed input needs both inner: and outer: lines", composed[0][1], 1)
        n = max(max(_max_index(t, "x") for t, _, _ in stanzas["inner"] + stanzas["g"]), 1)
        r = len(stanzas["inner"])
        inner = [_build(t, ctx, n, "x", ln, c0) for t, ln, c0 in stanzas["inner"]]
        outer = [_build(t, ctx, r, "z", ln, c0) for t, ln, c0 in stanzas["outer"]]
        g = _build_g(stanzas, ctx, n)
        return ParsedInput(ctx, None, g, Composition(tuple(outer), tuple(inner)), bb_compose(outer, inner))
    if not stanzas["f"]:
        raise ParseError("no f: lines", 1, 1)
    n = max(max(_max_index(t, "x") for t, _, _ in stanzas["f"] + stanzas["g"]), 1)
    polys = [_build(t, ctx, n, "x", ln, c0) for t, ln, c0 in stanzas["f"]]
    g = _build_g(stanzas, ctx, n)
    return ParsedInput(ctx, PolySystem(polys), g, None, system_from_polys(polys))


def _build_g(stanzas, ctx, n):
    if not stanzas["g"]:
        return None
    terms, lineno, col0 = stanzas["g"][0]
    return _build(terms, ctx, n, "x", lineno, col0)


def parse_input(path) -> ParsedInput:
    """Read an input file; see the module docstring for the format."""
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())
