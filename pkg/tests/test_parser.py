import pytest
from hypothesis import given, settings

from conftest import SIG, formulas
from whyq.logic import (
    And, App, Eq, Forall, Iff, Implies, Not, Or, Pred, Var, alpha_equal,
)
from whyq.parser import (
    ParseError, parse_formula, parse_inline, parse_theory, render, render_theory,
)
from whyq.specrel import specrel0_theory, specrel_theory

p, q = Pred("p"), Pred("q")


@settings(max_examples=500)
@given(formulas(depth=4))
def test_render_then_parse_is_alpha_equal(f):
    assert alpha_equal(parse_formula(render(f), SIG), f)


@given(formulas())
def test_render_is_deterministic_and_stable(f):
    text = render(f)
    assert render(parse_formula(text, SIG)) == text


@pytest.mark.parametrize("text,expected", [
    ("~p & q", And(Not(p), q)),
    ("p | q & p", Or(p, And(q, p))),
    ("p -> q -> p", Implies(p, Implies(q, p))),
    ("p & q -> p | q", Implies(And(p, q), Or(p, q))),
    ("p <-> q -> p", Iff(p, Implies(q, p))),
    ("p <-> q <-> p", Iff(Iff(p, q), p)),
])
def test_precedence_and_associativity(text, expected):
    assert parse_formula(text, SIG) == expected


def test_quantifier_scope_extends_right():
    f = parse_formula("forall x:U. P(x) -> R(x, a)", SIG)
    x = Var("x", "U")
    assert f == Forall(x, Implies(Pred("P", (x,)), Pred("R", (x, App("a", (), "U")))))


def test_disequality_and_infix_symbols():
    f = parse_formula("a != b", SIG)
    assert f == Not(Eq(App("a", (), "U"), App("b", (), "U")))
    th = parse_theory("theory F { sorts Q; func + : Q x Q -> Q; func * : Q x Q -> Q; pred < : Q x Q;"
                      " axiom d: forall x:Q, y:Q. x + y * x < y * (x + y); }")
    x, y = Var("x", "Q"), Var("y", "Q")
    body = th.axiom("d").body.body
    assert body == Pred("<", (App("+", (x, App("*", (y, x), "Q")), "Q"),
                              App("*", (y, App("+", (x, y), "Q")), "Q")))
    assert "x + y * x < y * (x + y)" in render(th.axiom("d"))


def test_theory_roundtrip_through_render_theory():
    for th in (specrel_theory(), specrel0_theory()):
        again = parse_theory(render_theory(th))
        assert again.signature == th.signature
        assert [alpha_equal(a, b) for a, b in zip(again.formulas, th.formulas)] == [True] * len(th)


@pytest.mark.parametrize("text,message,col", [
    ("theory T { pred P; axiom a: P & ; }", "expected", 33),
    ("theory T { sorts U; pred P: U; axiom a: forall x:U. P(x,x); }", "expects 1 arguments", 53),
    ("theory T { sorts U; pred P: U; axiom a: P(y); }", "unknown symbol 'y'", 43),
    ("theory T { sorts U; pred P: V; }", "", None),
    ("theory T { pred P; axiom a: (P; }", "expected ')'", 31),
    ("", "empty input", None),
])
def test_errors_carry_spans(text, message, col):
    with pytest.raises(ParseError) as exc:
        parse_theory(text, "t.why")
    diags = [d for d in exc.value.diagnostics if d.severity == "error"]
    assert diags
    assert message in str(exc.value)
    assert str(diags[0].span).startswith("t.why:1:")
    if col is not None:
        assert diags[0].span.start == (1, col)


def test_duplicate_label_is_an_error():
    with pytest.raises(ParseError, match="duplicate axiom label"):
        parse_theory("theory T { pred P; axiom a: P; axiom a: ~P; }")


def test_inline_infers_profiles():
    th, goal = parse_inline("{P(c); forall x:B. P(x) -> Q(x, c)}", "forall x:B. P(x)")
    assert th.signature.functions["c"].result == "B"
    assert th.signature.predicates["Q"].args == ("B", "B")
    assert th.labels == ["a1", "a2"]
    assert isinstance(goal, Forall)


def test_inline_propositional_and_default_sort():
    th, goal = parse_inline("{K & B}", "K")
    assert th.signature.predicates["K"].args == ()
    th, _ = parse_inline("{P(c)}")
    assert th.signature.functions["c"].result == "U"


def test_comments_and_whitespace_are_ignored():
    th = parse_theory("// header\ntheory T {\n  pred P; // trailing\n  axiom a:\n    P;\n}\n")
    assert th.formulas == [Pred("P")]
