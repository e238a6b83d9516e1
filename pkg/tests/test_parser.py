import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lndkernel.cli import main
from lndkernel.parser import (
    ParseError,
    UnknownVariableError,
    parse_element,
    parse_expr,
    print_expr,
)
from lndkernel.poly import T, X, Y
from lndkernel.sampling import random_element

from strategies import RING, elements
from test_kernel import reduce_mod, sympy_elem


def test_examples(ring, el):
    assert el("T^2*(X+T*Y)^3") == ring.elem(T**2 * (X + T * Y) ** 3)
    assert el("z*z") == ring.elem(T**8 * (X + T * Y) ** 2 + 1)
    assert el("P") == ring.elem(X + T * Y)


def test_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_expr("T^")
    assert exc.value.position == 2
    assert "unsigned integer" in exc.value.expected
    assert "offset 2" in str(exc.value)


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("T +", 3), ("(X", 2), ("X)", 1), ("2/0", 2), ("X^-1", 2), ("T $ X", 2), ("3/", 2)],
)
def test_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_expr(text)
    assert exc.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariableError) as exc:
        parse_expr("T + W")
    assert exc.value.position == 4


def test_precedence(el):
    assert el("-X^2") == -(el("X") ** 2)
    assert el("2*X^2") == el("X^2") * 2
    assert el("X - Y - T") == el("X") - el("Y") - el("T")
    assert el("3/4*T") == el("T") * Fraction(3, 4)


def test_whitespace_ignored(el):
    assert el("  T ^ 2 *\tX  ") == el("T^2*X")


def test_deep_nesting_is_parse_error():
    with pytest.raises(ParseError):
        parse_expr("(" * 5000 + "X" + ")" * 5000)


def test_exponent_limit():
    with pytest.raises(ParseError):
        parse_expr("X^100000")


def test_printing(ring):
    assert print_expr(ring.z) == "z"
    assert print_expr(ring.elem(T**2 * (X + T * Y))) == "T^2*X + T^3*Y"
    assert print_expr(ring.zero) == "0"
    assert print_expr(ring.elem(-1, X + Y)) == "-1 + (X + Y)*z"


# -- generated inputs vs an independent evaluator -----------------------------

def random_expr(rng, depth=0):
    r = rng.random()
    if depth > 3 or r < 0.3:
        choice = rng.randrange(3)
        if choice == 0:
            return rng.choice(["T", "X", "Y", "z", "P"])
        if choice == 1:
            return str(rng.randint(0, 9))
        return f"{rng.randint(0, 9)}/{rng.randint(1, 9)}"
    if r < 0.5:
        return f"{random_expr(rng, depth + 1)} {rng.choice('+-')} {random_expr(rng, depth + 1)}"
    if r < 0.7:
        return f"{random_expr(rng, depth + 1)}*{random_expr(rng, depth + 1)}"
    if r < 0.8:
        return f"({random_expr(rng, depth + 1)})^{rng.randint(0, 3)}"
    if r < 0.9:
        return f"-{random_expr(rng, depth + 1)}"
    return f"({random_expr(rng, depth + 1)})"


def test_generated_strings_match_sympy(ring):
    rng = random.Random("grammar")
    for _ in range(300):
        text = random_expr(rng)
        x = parse_element(text, ring)
        expected = reduce_mod(sympy_elem(text), 10**6)
        assert reduce_mod(sympy_elem(print_expr(x)), 10**6) == expected, text


def test_round_trip_500(ring):
    rng = random.Random("print-round-trip")
    for _ in range(500):
        x = random_element(rng, ring)
        s = print_expr(x)
        y = parse_element(s, ring)
        assert y == x
        assert print_expr(y) == s


@given(elements())
def test_round_trip_property(x):
    assert parse_element(print_expr(x), RING) == x


TOKENS = ["T", "X", "Y", "z", "P", "Q", "1", "2", "17", "+", "-", "*", "^", "/", "(", ")", " ", "3/4", "#"]


@given(st.lists(st.sampled_from(TOKENS), max_size=12))
def test_fuzz_tokens_only_parse_errors(tokens):
    text = "".join(tokens)
    try:
        x = parse_element(text, RING)
    except ParseError:
        return
    assert parse_element(print_expr(x), RING) == x


def test_fuzz_cli_exit_two(capsys):
    rng = random.Random("fuzz-cli")
    bad = 0
    for _ in range(200):
        text = "".join(rng.choice(TOKENS) for _ in range(rng.randint(1, 8)))
        try:
            parse_expr(text)
            ok = True
        except ParseError:
            ok = False
        code = main(["apply", f"--expr={text}"])
        capsys.readouterr()
        assert code == (0 if ok else 2), text
        bad += not ok
    assert bad > 50
