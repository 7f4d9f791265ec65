import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from instances import hn_system, random_poly
from nullkit.blackbox import BlackboxSystem
from nullkit.errors import ParseError
from nullkit.field import make_field
from nullkit.parsing import format_poly, format_system, parse_input, parse_poly, parse_text
from nullkit.poly import MultiPoly, PolySystem

FIXTURES = Path(__file__).parent / "fixtures"


def test_spec_example(tmp_path):
    path = tmp_path / "case.txt"
    path.write_text("field p=7\nf: x1^2\ng: x1\n")
    ctx, system, g = parse_input(path)
    assert ctx == make_field(7)
    assert isinstance(system, PolySystem) and format_poly(system.polys[0]) == "x1^2"
    assert format_poly(g) == "x1"


def test_composed_stanzas():
    parsed = parse_text("field p=101\ninner: x1 + x2\ninner: x3\nouter: z1*z2\nouter: z1^2 + 1\n")
    ctx, system, g = parsed
    assert isinstance(system, BlackboxSystem) and system.arity == 3 and system.trdeg_bound == 2
    assert system.degs == (2, 2)
    assert [format_poly(f) for f in parsed.composition.expand()] == ["x1*x3 + x2*x3", "x1^2 + 2*x1*x2 + x2^2 + 1"]


@pytest.mark.parametrize(
    "text,line,col,message",
    [
        ("field p=7\nf: x1^\n", 2, 7, "exponent"),
        ("field p=7\nf: x1 + 9\n", 2, 9, "out of range"),
        ("field p=7\nf: x1 + y2\n", 2, 9, "unexpected character"),
        ("field p=7\nf: x0\n", 2, 4, "unknown variable"),
        ("field p=7\nf: x1 * * x2\n", 2, 9, "unexpected"),
        ("field p=7\nf: x1 x2\n", 2, 7, "operator"),
        ("field p=7\nf: z1\n", 2, 4, "unknown variable"),
        ("field p=101\ninner: x1\nouter: z2\n", 3, 8, "unknown variable"),
        ("field p=8\nf: x1\n", 1, 1, "not prime"),
        ("f: x1\n", 1, 1, "header"),
        ("field p=7\nh: x1\n", 2, 1, "expected one of"),
        ("field p=7\nf: t\n", 2, 4, "extension"),
    ],
)
def test_parse_errors(text, line, col, message):
    with pytest.raises(ParseError, match=message) as info:
        parse_text(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, col {col}:")


def test_comments_blank_lines_and_signs():
    parsed = parse_text("# a comment\n\nfield p=7  # trailing\nf: -x1 + 3 - 2*x2^2  # c\n")
    assert format_poly(parsed.system.polys[0]) == "5*x2^2 + 6*x1 + 3"


def test_extension_coefficients():
    ctx = make_field(3, 9)
    f = parse_poly("t*x1 + 2*t + 1", ctx)
    t = ctx.from_digits([0, 1])
    assert f.coeff((1,)) == t and f.constant_term() == ctx.add(ctx.mul(2, t), 1)
    assert parse_poly(format_poly(f), ctx, 1) == f


def test_zero_and_constants():
    F = make_field(5)
    assert format_poly(MultiPoly.zero(F, 2)) == "0"
    assert parse_poly("0", F, 2).is_zero()
    assert format_poly(parse_poly("3*4", F, 1)) == "2"


@given(st.integers(0, 10**9), st.sampled_from([2, 7, 101, 10007]))
@settings(max_examples=80, deadline=None)
def test_round_trip_random(seed, p):
    rng = random.Random(seed)
    ctx = make_field(p)
    n = rng.randint(1, 4)
    f = random_poly(ctx, n, rng.randint(1, 4), rng, terms=rng.randint(1, 6))
    assert parse_poly(format_poly(f), ctx, n) == f


@given(st.integers(0, 10**9))
@settings(max_examples=30, deadline=None)
def test_round_trip_extension(seed):
    rng = random.Random(seed)
    ctx = make_field(rng.choice([2, 3, 5]), rng.choice([9, 30, 200]))
    n = rng.randint(1, 3)
    f = MultiPoly(ctx, n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randrange(ctx.order) for _ in range(4)})
    assert parse_poly(format_poly(f), ctx, n) == f


def test_fixture_corpus_round_trips():
    files = sorted(FIXTURES.glob("*.txt"))
    assert files
    for path in files:
        parsed = parse_input(path)
        if parsed.system is None:
            continue
        again = parse_text(format_system(parsed.system, parsed.g))
        assert again.system == parsed.system
        assert again.g == parsed.g


def test_format_system_round_trip_random():
    for seed in range(30):
        polys = hn_system(seed)
        text = format_system(polys)
        again = parse_text(text)
        # n is inferred from the largest index used, so compare renderings
        assert [format_poly(f) for f in again.system.unsorted()] == [format_poly(f) for f in polys]
        assert format_system(again.system) == text
