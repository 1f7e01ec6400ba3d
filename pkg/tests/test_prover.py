import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import SIG, formulas, prop_formulas, prop_theories, random_structures, terms, theory_of
from oracles import Structure, truth, tt_entails, tt_satisfiable
from suites import curated_problems, tampered
from whyq.budget import Budget
from whyq.logic import App, Forall, FuncSym, NamedFormula, Or, Pred, PredSym, Signature, Theory, Var, disj, subst_term
from whyq.prover import check_proof, clausify, clausify_problem, dump_proof, entails, load_proof, unify
from whyq.prover.unify import apply

CURATED = list(curated_problems())


@pytest.mark.parametrize("name,th,goal", CURATED, ids=[c[0] for c in CURATED])
def test_curated_entailments_are_proved_with_checked_proofs(name, th, goal):
    v = entails(th, goal)
    assert v.proved, v.stats
    assert check_proof(v.proof, v.inputs)
    again = load_proof(dump_proof(v.proof, name))
    assert check_proof(again, v.inputs)


@pytest.mark.parametrize("name,th,goal", CURATED[:4], ids=[c[0] for c in CURATED[:4]])
def test_tampered_proofs_are_rejected(name, th, goal):
    v = entails(th, goal)
    for what, bad in tampered(v.proof):
        assert not check_proof(bad, v.inputs), what


def test_proof_against_other_inputs_is_rejected():
    _, th, goal = CURATED[0]
    v = entails(th, goal)
    assert not check_proof(v.proof, v.inputs[1:])


@settings(max_examples=150)
@given(prop_theories(max_axioms=3), prop_formulas())
def test_propositional_verdicts_match_truth_tables(th, goal):
    v = entails(th, goal, Budget(wall_time=5))
    expected = tt_entails(th.formulas, goal)
    assert v.proved == expected, v.stats
    if not expected:
        assert v.stats["reason"].startswith("saturated")


@settings(max_examples=150)
@given(st.lists(formulas(depth=2), min_size=1, max_size=2), formulas(depth=2), random_structures())
def test_first_order_proofs_are_sound(premises, goal, s):
    th = theory_of("T", SIG, premises)
    v = entails(th, goal, Budget(max_clauses=500, max_steps=80, wall_time=0.5))
    if v.proved and all(truth(p, s) for p in th.formulas):
        assert truth(goal, s)


def test_unknown_is_never_a_non_entailment_claim():
    th = Theory("T", SIG, (NamedFormula("a", Forall(Var("x", "U"), Pred("R", (Var("x", "U"), App("f", (Var("x", "U"),), "U"))))),))
    v = entails(th, Pred("p"), Budget(max_steps=5))
    assert not v.proved and v.proof is None


# ------------------------------------------------------------ unification

@given(terms(("x", "y", "z"), 3), terms(("x", "y", "z"), 3))
def test_unifier_unifies(t1, t2):
    sigma = unify(t1, t2)
    if sigma is not None:
        assert apply(t1, sigma) == apply(t2, sigma)
        # idempotent: no bound variable occurs in the range
        for t in sigma.values():
            assert apply(t, sigma) == t


@given(terms(("x", "y"), 3), st.data())
def test_instances_always_unify(t, data):
    binding = {Var(n, "U"): data.draw(terms((), 2)) for n in ("x", "y")}
    assert unify(t, subst_term(t, binding)) is not None


def test_occurs_check_and_sort_clash():
    x = Var("x", "U")
    assert unify(x, App("f", (x,), "U")) is None
    assert unify(Var("q", "Q"), App("a", (), "U")) is None


# ------------------------------------------------------------ clausification

def _clause_formula(c):
    return disj([l.as_formula() for l in c.literals]) if c.literals else Pred("__false__")


@settings(max_examples=200)
@given(prop_formulas(depth=4))
def test_propositional_clausification_is_equisatisfiable(f):
    clauses = clausify(f)
    fs = [_clause_formula(c) for c in clauses]
    if any(not c.literals for c in clauses):
        assert not tt_satisfiable([f])
        return
    assert tt_satisfiable([f]) == tt_satisfiable(fs)


MONADIC = Signature(["U"], [FuncSym("a", (), "U")], [PredSym("P", ("U",)), PredSym("p", ())])


@st.composite
def monadic_formulas(draw, scope=(), depth=3):
    k = draw(st.sampled_from(["P", "p", "eq"] + (["not", "and", "or", "imp", "iff", "all", "ex"] if depth else [])))
    leaves = [App("a", (), "U")] + [Var(n, "U") for n in scope]
    from whyq.logic import And, Eq, Exists, Iff, Implies, Not
    if k == "P":
        return Pred("P", (draw(st.sampled_from(leaves)),))
    if k == "p":
        return Pred("p")
    if k == "eq":
        return Eq(draw(st.sampled_from(leaves)), draw(st.sampled_from(leaves)))
    if k == "not":
        return Not(draw(monadic_formulas(scope, depth - 1)))
    if k in ("all", "ex"):
        v = draw(st.sampled_from(["x", "y"]))
        return (Forall if k == "all" else Exists)(Var(v, "U"), draw(monadic_formulas(scope + (v,), depth - 1)))
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(draw(monadic_formulas(scope, depth - 1)), draw(monadic_formulas(scope, depth - 1)))


def _structures(sig, n):
    from oracles import structures
    return structures(sig, {s: n for s in sig.sorts})


@settings(max_examples=120)
@given(monadic_formulas())
def test_first_order_clausification_is_equisatisfiable_per_domain_size(f):
    problem = clausify_problem([("f", f)], MONADIC, add_equality=False)
    ext = problem.signature
    n_tables = 1
    for fs in ext.functions.values():
        n_tables *= 2 ** (2 ** len(fs.args))
    for ps in ext.predicates.values():
        n_tables *= 2 ** (2 ** len(ps.args))
    assume(n_tables <= 1 << 14)
    x_vars = lambda c: sorted({v for l in c.literals for v in l.vars()}, key=lambda v: v.name)  # noqa: E731
    closed = []
    for c in problem.clauses:
        body = _clause_formula(c)
        for v in x_vars(c):
            body = Forall(v, body)
        closed.append(body)
    for n in (1, 2):
        original = any(truth(f, s) for s in _structures(MONADIC, n))
        clausal = any(all(truth(g, s) for g in closed) for s in _structures(ext, n)) \
            if all(c.literals for c in problem.clauses) else False
        assert original == clausal, n
