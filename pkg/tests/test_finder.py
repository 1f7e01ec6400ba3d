import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import from_interpretation, truth
from suites import finder_agreement
from whyq.budget import Budget
from whyq.fields import contains_ordered_field, field_axioms, field_signature
from whyq.logic import NamedFormula, make_theory
from whyq.models.finder import (
    FIELD_OBSTRUCTION, DomainAssignment, countermodel, find_model, size_sequence, smallest_model,
)
from whyq.models.interp import dump_interpretation, evaluate, load_interpretation
from whyq.parser import parse_inline
from whyq.specrel import specrel_split, specrel_theory


@pytest.mark.parametrize("seed", [0, 1])
def test_exhaustive_agreement_with_brute_force(seed):
    r = finder_agreement(seed, per_signature=60)
    assert r["checked"] == 6 * 60 * 3
    assert r["disagreements"] == []


def test_countermodel_for_p_of_c_has_total_size_two():
    th, goal = parse_inline("{P(c)}", "forall x:B. P(x)")
    r = countermodel(th, goal, 3)
    assert r.found and r.model.total_size == 2
    assert evaluate(r.model, th.formulas[0]) and not evaluate(r.model, goal)
    s = from_interpretation(r.model)
    assert truth(th.formulas[0], s) and not truth(goal, s)


def test_sizes_are_tried_smallest_total_first():
    sizes = [tuple(d.sizes.values()) for d in size_sequence(["A", "B"], DomainAssignment({"A": 2, "B": 3}))]
    assert sizes == [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (2, 3)]


def test_exact_size_search_is_exhaustive():
    th, _ = parse_inline("{exists x:U. P(x); exists x:U. ~P(x)}")
    assert find_model(th, DomainAssignment({"U": 1})).status == "not_found"
    assert find_model(th, DomainAssignment({"U": 2})).found


def test_field_without_order_has_small_models():
    labels = {"lt_irrefl", "lt_trans", "lt_total", "lt_add", "lt_mul_pos"}
    sig = field_signature()
    fs = [NamedFormula(l, f) for l, f in field_axioms() if l not in labels]
    th = make_theory("Field", sig, fs)
    r = smallest_model(th, 3)
    assert r.found and r.model.domains["Q"] == 2  # GF(2)
    assert find_model(th, DomainAssignment({"Q": 3})).found  # GF(3)
    assert find_model(th, DomainAssignment({"Q": 1})).status == "not_found"  # 0 != 1


def test_ordered_field_is_a_recognised_obstruction():
    assert contains_ordered_field(specrel_theory().formulas)
    assert contains_ordered_field(specrel_split().formulas)
    r = find_model(specrel_theory(), DomainAssignment({"Q": 2, "B": 1}))
    assert r.status == "not_found" and r.reason == FIELD_OBSTRUCTION
    sm = smallest_model(specrel_theory(), 2)
    assert sm.status == "unknown" and sm.reason == FIELD_OBSTRUCTION


def test_clause_budget_gives_unknown():
    th, _ = parse_inline("{forall x:U, y:U, z:U. R(x, y) | R(y, z) | R(z, x)}")
    r = find_model(th, DomainAssignment({"U": 5}), Budget(max_clauses=10))
    assert r.status == "unknown" and "clause limit" in r.reason


@settings(max_examples=40)
@given(st.integers(1, 3), st.booleans())
def test_interpretation_text_roundtrip(n, with_fn):
    text = "{forall x:U. exists y:U. R(x, y) & f(y) = x}" if with_fn else "{exists x:U. P(x) & R(x, c)}"
    th, _ = parse_inline(text)
    r = find_model(th, DomainAssignment({"U": n}))
    if r.found:
        again = load_interpretation(dump_interpretation(r.model), th.signature)
        assert again == r.model


def test_sortless_search_is_exhaustive():
    from whyq.models.finder import NO_MODEL_AT_ALL
    th, goal = parse_inline("{A; A -> B}", "B")
    r = countermodel(th, goal, 3)
    assert r.status == "not_found" and r.reason == NO_MODEL_AT_ALL
    th, goal = parse_inline("{A | B}", "B")
    assert countermodel(th, goal, 3).found
