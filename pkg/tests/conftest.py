"""Shared hypothesis strategies: a small one-sorted signature and propositional theories."""
from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from whyq.logic import (  # noqa: E402
    And, App, Eq, Exists, Falsum, Forall, FuncSym, Iff, Implies, NamedFormula, Not, Or, Pred, PredSym,
    Signature, Theory, Var, Verum, make_theory,
)

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SIG = Signature(
    ["U"],
    [FuncSym("a", (), "U"), FuncSym("b", (), "U"), FuncSym("f", ("U",), "U"), FuncSym("g", ("U", "U"), "U")],
    [PredSym("P", ("U",)), PredSym("R", ("U", "U")), PredSym("p", ()), PredSym("q", ())],
)
VAR_NAMES = ("x", "y", "z")


@st.composite
def terms(draw, scope: tuple, depth: int = 2):
    leaves = [App("a", (), "U"), App("b", (), "U")] + [Var(n, "U") for n in scope]
    if depth <= 0 or draw(st.integers(0, 2)) == 0:
        return draw(st.sampled_from(leaves))
    if draw(st.booleans()):
        return App("f", (draw(terms(scope, depth - 1)),), "U")
    return App("g", (draw(terms(scope, depth - 1)), draw(terms(scope, depth - 1))), "U")


@st.composite
def formulas(draw, scope: tuple = (), depth: int = 3):
    """Closed (relative to ``scope``) formulas over ``SIG``."""
    kinds = ["pred", "rel", "eq", "prop", "const"]
    if depth > 0:
        kinds += ["not", "and", "or", "imp", "iff", "all", "ex"] * 2
    k = draw(st.sampled_from(kinds))
    if k == "pred":
        return Pred("P", (draw(terms(scope, 1)),))
    if k == "rel":
        return Pred("R", (draw(terms(scope, 1)), draw(terms(scope, 1))))
    if k == "eq":
        return Eq(draw(terms(scope, 1)), draw(terms(scope, 1)))
    if k == "prop":
        return Pred(draw(st.sampled_from(["p", "q"])))
    if k == "const":
        return draw(st.sampled_from([Verum(), Falsum()]))
    if k == "not":
        return Not(draw(formulas(scope, depth - 1)))
    if k in ("all", "ex"):
        v = Var(draw(st.sampled_from(VAR_NAMES)), "U")
        body = draw(formulas(scope + (v.name,), depth - 1))
        return (Forall if k == "all" else Exists)(v, body)
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(draw(formulas(scope, depth - 1)), draw(formulas(scope, depth - 1)))


PROP_ATOMS = ("A", "B", "C", "D")


def prop_signature(names=PROP_ATOMS) -> Signature:
    return Signature([], [], [PredSym(n, ()) for n in names])


@st.composite
def prop_formulas(draw, names=PROP_ATOMS, depth: int = 2):
    if depth <= 0 or draw(st.integers(0, 3)) == 0:
        return Pred(draw(st.sampled_from(names)))
    k = draw(st.sampled_from(["not", "and", "or", "imp", "iff"]))
    if k == "not":
        return Not(draw(prop_formulas(names, depth - 1)))
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(draw(prop_formulas(names, depth - 1)), draw(prop_formulas(names, depth - 1)))


@st.composite
def prop_theories(draw, name: str = "T", max_axioms: int = 4, names=PROP_ATOMS):
    fs = draw(st.lists(prop_formulas(names), min_size=1, max_size=max_axioms))
    return make_theory(name, prop_signature(names), [NamedFormula(f"a{i}", f) for i, f in enumerate(fs)])


def theory_of(name: str, sig: Signature, fs) -> Theory:
    return make_theory(name, sig, [NamedFormula(f"a{i}", f) for i, f in enumerate(fs)])


@pytest.fixture
def sig() -> Signature:
    return SIG


@st.composite
def random_structures(draw, sig: Signature = SIG, max_size: int = 3):
    """One structure for ``sig`` with random tables (for checks too big to enumerate)."""
    import itertools

    from oracles import Structure

    sizes = {s: draw(st.integers(1, max_size)) for s in sig.sorts}
    fns = {}
    for fs in sig.functions.values():
        keys = itertools.product(*(range(sizes[s]) for s in fs.args))
        fns[fs.name] = {k: draw(st.integers(0, sizes[fs.result] - 1)) for k in keys}
    rels = {}
    for ps in sig.predicates.values():
        keys = itertools.product(*(range(sizes[s]) for s in ps.args))
        rels[ps.name] = {k for k in keys if draw(st.booleans())}
    return Structure(sizes, fns, rels)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
