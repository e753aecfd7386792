import random

import pytest

from monolith_verifier.errors import FormulaSyntaxError
from monolith_verifier.folog import parse, to_text
from monolith_verifier.folog.parser import tokenize
from monolith_verifier.folog.syntax import (
    And,
    Equation,
    Exists,
    ForAll,
    Iff,
    Implies,
    Inverse,
    Not,
    One,
    Or,
    Product,
    Variable,
)
from tests.folog.random_formulas import random_formula

x, y, z = Variable("x"), Variable("y"), Variable("z")


def test_tokenize_positions_and_keywords():
    tokens = tokenize("forall x. x*y' != 1")
    kinds = [t.kind for t in tokens]
    assert kinds == ["forall", "IDENT", ".", "IDENT", "*", "IDENT", "'", "!=", "1", "EOF"]
    assert tokens[3].position == 10


@pytest.mark.parametrize("text, expected", [
    ("x = y", Equation(x, y)),
    ("x != 1", Not(Equation(x, One()))),
    ("x * y * z = 1", Equation(Product(Product(x, y), z), One())),
    ("x * (y * z) = 1", Equation(Product(x, Product(y, z)), One())),
    ("(x * y)' = y' * x'", Equation(Inverse(Product(x, y)), Product(Inverse(y), Inverse(x)))),
    ("x'' = x", Equation(Inverse(Inverse(x)), x)),
    ("x = y & y = z | x = z", Or((And((Equation(x, y), Equation(y, z))), Equation(x, z)))),
    ("x = y -> y = z -> x = z", Implies(Implies(Equation(x, y), Equation(y, z)), Equation(x, z))),
    ("x = y <-> y = x", Iff(Equation(x, y), Equation(y, x))),
    ("forall x. exists y. x * y = 1", ForAll("x", Exists("y", Equation(Product(x, y), One())))),
    ("(forall x. x = x) & y = y", And((ForAll("x", Equation(x, x)), Equation(y, y)))),
    ("!(x = y | y = z)", Not(Or((Equation(x, y), Equation(y, z))))),
    ("((x * y)' = 1)", Equation(Inverse(Product(x, y)), One())),
])
def test_parse_examples(text, expected):
    assert parse(text) == expected, f"{text!r} parsed to {parse(text)!r}"


def test_quantifier_body_extends_to_the_right():
    phi = parse("exists z. x = z * y * z' | x = y")
    assert isinstance(phi, Exists)
    assert isinstance(phi.body, Or), "the body of a quantifier reaches the end of the formula"


@pytest.mark.parametrize("text", [
    "x = ",
    "x y = 1",
    "forall . x = 1",
    "forall x x = 1",
    "(x = y",
    "x = y)",
    "x # y",
    "x * = y",
    "",
])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse(text)
    assert 0 <= excinfo.value.position <= len(text)


def test_syntax_error_reports_position_and_expected_tokens():
    with pytest.raises(FormulaSyntaxError) as excinfo:
        parse("x * y")
    error = excinfo.value
    assert error.position == 5
    assert set(error.expected) == {"=", "!="}
    assert "position 5" in str(error)


def test_printer_output_is_canonical():
    phi = Exists("u0", Or((Equation(One(), x),
                           Equation(Product(Product(Variable("u0"), y), Inverse(Variable("u0"))), x))))
    assert to_text(phi) == "exists u0. 1 = x | u0 * y * u0' = x"


def test_random_formulas_round_trip():
    """parse(to_text(phi)) == phi for a seeded corpus of generated formulas."""
    rng = random.Random(20240601)
    for n in range(1000):
        phi = random_formula(rng, depth=rng.randint(0, 4))
        text = to_text(phi)
        assert parse(text) == phi, f"formula #{n} did not round-trip: {text}"
        assert to_text(parse(text)) == text


@pytest.mark.parametrize("depth", [1, 5, 40])
def test_deep_parentheses_parse_in_one_pass(depth):
    """Each "(" is classified once by the token after its ")"."""
    formula = "(" * depth + "x = y" + ")" * depth
    assert parse(formula) == Equation(x, y)
    term = "(" * depth + "x" + ")" * depth + " = y"
    assert parse(term) == Equation(x, y)
    mixed = "(" * depth + "(x)' = y & x = 1" + ")" * depth
    assert parse(mixed) == And((Equation(Inverse(x), y), Equation(x, One())))
