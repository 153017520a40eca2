import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nnvar.errors import ParseError, RangeError, UnknownIdentifierError, ZeroDivisorError
from nnvar.expr import BinOp, Call, Const, Num, Unary, Var, evaluate, parse, pretty, to_function

TXV = ("t", "x", "v")
TXVS = ("t", "x", "v", "s")


def test_parse_examples():
    assert parse("v ~* v", TXV) == BinOp("~*", Var("v"), Var("v"))
    assert parse("t ~+ s", TXVS) == BinOp("~+", Var("t"), Var("s"))
    with pytest.raises(UnknownIdentifierError) as info:
        parse("x ~+ q", TXVS)
    assert info.value.column == 6


def test_precedence_and_associativity():
    assert parse("v ~* v ~+ x ~* x") == BinOp("~+", BinOp("~*", Var("v"), Var("v")), BinOp("~*", Var("x"), Var("x")))
    assert parse("x ^ 2 ^ 3") == BinOp("^", Var("x"), BinOp("^", Num(2.0), Num(3.0)))
    assert parse("-x ^ 2") == Unary("-", BinOp("^", Var("x"), Num(2.0)))
    assert parse("t - x ~- v") == BinOp("~-", BinOp("-", Var("t"), Var("x")), Var("v"))
    assert parse("ln(e) * pi") == BinOp("*", Call("ln", Const("e")), Const("pi"))
    assert parse("2.5e-3 ~/ x") == BinOp("~/", Num(2.5e-3), Var("x"))


@pytest.mark.parametrize("source, column", [
    ("v ~~ v", 3),
    ("v ~* ", 6),
    ("(v ~+ x", 8),
    ("v x", 3),
    ("sin x", 5),
    ("v $ 2", 3),
])
def test_syntax_errors_report_position(source, column):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert info.value.line == 1
    assert info.value.column == column
    assert f"1:{column}:" in str(info.value)


def test_multiline_position_and_expected_set():
    with pytest.raises(ParseError) as info:
        parse("v ~* v\n  ~+ )")
    assert (info.value.line, info.value.column) == (2, 6)
    assert "(" in info.value.expected


def test_unknown_function_and_empty():
    with pytest.raises(UnknownIdentifierError):
        parse("tan(x)")
    with pytest.raises(ParseError):
        parse("   ")


def test_evaluate_examples():
    e3 = math.exp(3)
    assert abs(math.log(evaluate(parse("v ~* v"), {"v": e3})) - 9) < 1e-12
    assert evaluate(parse("t ~+ s", TXVS), {"t": 2.0, "s": 1.0}) == 2.0
    with pytest.raises(ZeroDivisorError):
        evaluate(parse("x ~/ 1"), {"x": 5.0})


def test_evaluate_errors():
    with pytest.raises(RangeError):
        evaluate(parse("ln(x - 2)"), {"x": 1.0})
    with pytest.raises(RangeError):
        evaluate(parse("1 / (x - 1)"), {"x": 1.0})
    with pytest.raises(KeyError):
        evaluate(parse("x + v"), {"x": 1.0})


def test_vectorised_and_complex_step_evaluation():
    fn = to_function(parse("abs(x - 2) ~* v"))
    x = np.array([1.0, 3.0])
    v = np.array([2.0, 2.0])
    np.testing.assert_allclose(fn(0, x, v), np.exp(0 * np.log(2.0)) * np.ones(2))
    # d/dx |x - 2| at x = 3 via the complex step is +1
    h = 1e-20
    r = evaluate(parse("abs(x - 2)"), {"x": 3.0 + 1j * h})
    assert r.imag / h == pytest.approx(1.0)


leaves = st.one_of(
    st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False).map(Num),
    st.sampled_from(["e", "pi"]).map(Const),
    st.sampled_from(list(TXV)).map(Var),
)
ops = st.sampled_from(["+", "-", "*", "/", "^", "~+", "~-", "~*", "~/"])
funcs = st.sampled_from(["ln", "exp", "sin", "cos", "sqrt", "abs"])

trees = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(BinOp, ops, sub, sub),
        st.builds(Unary, st.just("-"), sub),
        st.builds(Call, funcs, sub),
    ),
    max_leaves=12,
)


@settings(max_examples=400)
@given(trees)
def test_pretty_parse_round_trip(tree):
    text = pretty(tree)
    assert parse(text, TXV) == tree
    assert pretty(parse(f"({text})", TXV)) == text


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_operator_semantics(a, b):
    env = {"x": a, "v": b}
    assert abs(evaluate(parse("x ~+ v"), env) - evaluate(parse("x * v"), env)) <= 1e-12 * a * b
    lhs = evaluate(parse("x ~* v"), env)
    rhs = evaluate(parse("exp(ln(x) * ln(v))"), env)
    assert abs(math.log(lhs) - math.log(rhs)) <= 1e-12
