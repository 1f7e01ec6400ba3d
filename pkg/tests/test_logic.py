from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from conftest import SIG, formulas, random_structures, terms, theory_of
from oracles import term_value, truth
from whyq.logic import (
    And, App, DuplicateAxiom, Exists, Forall, FuncSym, NamedFormula, Pred, PredSym, Signature,
    SignatureConflict, SortError, Theory, Var, alpha_equal, canonicalize, free_vars, juxtapose,
    signature_union, split_conjunctions, substitute, well_sorted,
)

x, y, z = (Var(n, "U") for n in "xyz")
a = App("a", (), "U")


def rename_bound(f, suffix="_r"):
    """Rename every bound variable by appending ``suffix`` (an alpha-variant)."""
    from whyq.logic import Eq, Iff, Implies, Not, Or, subst_term

    def go(g, ren):
        if isinstance(g, Pred):
            return Pred(g.name, tuple(subst_term(t, ren) for t in g.args))
        if isinstance(g, Eq):
            return Eq(subst_term(g.left, ren), subst_term(g.right, ren))
        if isinstance(g, Not):
            return Not(go(g.body, ren))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left, ren), go(g.right, ren))
        if isinstance(g, (Forall, Exists)):
            v = Var(g.var.name + suffix, g.var.sort)
            return type(g)(v, go(g.body, {**ren, g.var: v}))
        return g

    return go(f, {})


@given(formulas())
def test_canonicalize_is_idempotent(f):
    c = canonicalize(f)
    assert canonicalize(c) == c


@given(formulas())
def test_alpha_variant_is_alpha_equal(f):
    g = rename_bound(f)
    assert alpha_equal(f, g)
    assert canonicalize(f) == canonicalize(g)


@given(formulas(), random_structures())
def test_canonical_form_preserves_truth(f, s):
    assert truth(canonicalize(f), s) == truth(f, s)


@given(formulas(scope=("x",)), terms(("y",), 2), random_structures(), st.data())
def test_substitution_lemma(f, t, s, data):
    """truth(f[x:=t]) under env equals truth(f) with x bound to the value of t."""
    env = {y: data.draw(st.integers(0, s.sizes["U"] - 1))}
    g = substitute(f, {x: t})
    assert x not in free_vars(g)
    assert truth(g, s, env) == truth(f, s, {**env, x: term_value(t, s, env)})


def test_substitution_avoids_capture():
    f = Forall(y, Pred("R", (x, y)))
    g = substitute(f, {x: y})
    assert isinstance(g, Forall) and g.var != y
    assert g.body == Pred("R", (y, g.var))


def test_substitution_rejects_sort_mismatch():
    with pytest.raises(SortError):
        substitute(Pred("P", (x,)), {x: Var("q", "Q")})


def test_bound_variable_is_not_substituted():
    f = Forall(x, Pred("P", (x,)))
    assert substitute(f, {x: a}) == f


@given(st.lists(formulas(depth=2), min_size=1, max_size=3), random_structures())
def test_split_preserves_models(fs, s):
    conj = fs[0]
    for g in fs[1:]:
        conj = And(conj, g)
    th = theory_of("T", SIG, [Forall(x, conj)])
    sp = split_conjunctions(th)
    assert all(truth(f, s) for f in th.formulas) == all(truth(f, s) for f in sp.formulas)


def test_split_distributes_leading_universals():
    th = theory_of("T", SIG, [Forall(x, And(Pred("P", (x,)), Pred("R", (x, x))))])
    sp = split_conjunctions(th)
    assert sp.labels == ["a0_1", "a0_2"]
    assert sp.axiom("a0_1") == Forall(x, Pred("P", (x,)))


def test_split_does_not_enter_existentials():
    f = Exists(x, And(Pred("P", (x,)), Pred("R", (x, x))))
    assert split_conjunctions(theory_of("T", SIG, [f])).formulas == [f]


def test_theory_rejects_alpha_duplicates_and_ill_sorted_axioms():
    f = Forall(x, Pred("P", (x,)))
    with pytest.raises(DuplicateAxiom):
        Theory("T", SIG, (NamedFormula("a", f), NamedFormula("b", Forall(y, Pred("P", (y,))))))
    with pytest.raises(SortError):
        Theory("T", SIG, (NamedFormula("a", Pred("P", (Var("q", "V"),))),))


def test_membership_is_modulo_alpha():
    th = theory_of("T", SIG, [Forall(x, Pred("P", (x,)))])
    assert th.member(Forall(z, Pred("P", (z,)))) == "a0"
    assert th.member(Exists(z, Pred("P", (z,)))) is None


def test_signature_union_and_conflict():
    s1 = Signature(["U"], [FuncSym("c", (), "U")], [PredSym("P", ("U",))])
    s2 = Signature(["U", "V"], [], [PredSym("Q", ("V",))])
    u = signature_union(s1, s2)
    assert set(u.sorts) == {"U", "V"} and set(u.predicates) == {"P", "Q"}
    with pytest.raises(SignatureConflict):
        signature_union(s1, Signature(["U"], [], [PredSym("P", ("U", "U"))]))


def test_juxtapose_prefixes_labels_and_unions_signatures():
    t1 = theory_of("T1", SIG, [Pred("p")])
    t2 = theory_of("T2", Signature([], [], [PredSym("r", ())]), [Pred("r")])
    j = juxtapose(t1, t2)
    assert j.labels == ["T1.a0", "T2.a0"]
    assert "r" in j.signature.predicates and "P" in j.signature.predicates


def test_well_sorted_reports_arity_and_sort_errors():
    assert well_sorted(SIG, Pred("P", (a, a)))
    assert well_sorted(SIG, Pred("nope", ()))
    assert not well_sorted(SIG, Forall(x, Pred("R", (x, App("f", (x,), "U")))))
