"""Fixed problem sets shared by the unit tests and the acceptance run."""
from __future__ import annotations

from dataclasses import replace

from whyq.parser import parse_inline
from whyq.prover import Literal, Proof

# (name, premises, goal) in the inline syntax; every goal follows from its premises.
CURATED_ENTAILMENTS = [
    ("syllogism", "{forall x:U. Man(x) -> Mortal(x); Man(socrates)}", "Mortal(socrates)"),
    ("equality congruence", "{a = b}", "f(a) = f(b)"),
    ("equality chain", "{a = b; b = c}", "c = a"),
    ("predicate substitution", "{a = b; P(a)}", "P(b)"),
    ("universal instantiation", "{forall x:U. P(x)}", "P(f(a))"),
    ("existential introduction", "{P(a)}", "exists x:U. P(x)"),
    ("quantifier swap", "{exists x:U. forall y:U. R(x, y)}", "forall y:U. exists x:U. R(x, y)"),
    ("modus tollens", "{forall x:U. P(x) -> Q(x); ~Q(a)}", "~P(a)"),
    ("reflexivity", "{}", "forall x:U. x = x"),
    ("drinker", "{}", "exists x:U. (D(x) -> forall y:U. D(y))"),
    ("two sorts", "{forall o:B. IOb(o) -> exists x:Q. W(o, x); IOb(c)}", "exists x:Q. W(c, x)"),
    ("explosion", "{P; ~P}", "Q"),
]


def curated_problems():
    for name, premises, goal in CURATED_ENTAILMENTS:
        th, g = parse_inline(premises, goal, name=name.replace(" ", "_"))
        yield name, th, g


def tampered(p: Proof) -> list[tuple[str, Proof]]:
    """Corrupted copies of a valid proof; ``check_proof`` must reject every one."""
    steps = list(p.steps)
    out = []
    out.append(("last step removed", replace(p, steps=tuple(steps[:-1]))))
    derived = [i for i, s in enumerate(steps) if s.rule != "input"]
    k = derived[-1]
    s = steps[k]
    out.append(("parent swapped", replace(p, steps=tuple(
        steps[:k] + [replace(s, parents=(s.parents[0], s.parents[0]) if len(s.parents) == 2
                             else (s.parents[0] + 1,))] + steps[k + 1:]))))
    out.append(("literal index changed", replace(p, steps=tuple(
        steps[:k] + [replace(s, lits=tuple(i + 1 for i in s.lits))] + steps[k + 1:]))))
    first_input = next(i for i, st in enumerate(steps) if st.rule == "input" and st.clause)
    inp = steps[first_input]
    flipped = (Literal(not inp.clause[0].positive, inp.clause[0].atom),) + inp.clause[1:]
    out.append(("input polarity flipped", replace(p, steps=tuple(
        steps[:first_input] + [replace(inp, clause=flipped)] + steps[first_input + 1:]))))
    out.append(("conclusion not empty", replace(p, steps=tuple(
        steps[:-1] + [replace(steps[-1], clause=inp.clause)]))))
    out.append(("forward reference", replace(p, steps=tuple(
        steps[:k] + [replace(s, parents=(s.id + 1,) + s.parents[1:])] + steps[k + 1:]))))
    out.append(("unknown rule", replace(p, steps=tuple(
        steps[:k] + [replace(s, rule="paramodulation")] + steps[k + 1:]))))
    return out


KEPLER = ("{K & B}", "K")


# ------------------------------------------------------------ small monadic signatures

def monadic_signatures():
    """Every function-free signature with at most two unary predicates and at most one constant."""
    from whyq.logic import FuncSym, PredSym, Signature
    for preds in ((), ("P",), ("P", "Q")):
        for const in (False, True):
            yield Signature(["U"], [FuncSym("c", (), "U")] if const else [],
                            [PredSym(p, ("U",)) for p in preds])


def random_monadic_formula(rng, sig, scope=(), depth=3):
    from whyq.logic import And, App, Eq, Exists, Forall, Iff, Implies, Not, Or, Pred, Var, Verum
    leaves = [Var(v, "U") for v in scope] + [App(c, (), "U") for c in sig.functions]
    atoms = []
    if leaves:
        atoms += [("pred", p) for p in sig.predicates] + [("eq", None)]
    kinds = [k for k, _ in atoms] and ["atom"] * 3
    if depth > 0:
        kinds = kinds + ["not", "and", "or", "imp", "iff", "all", "ex", "all", "ex"]
    if not kinds:
        return Verum()
    k = rng.choice(kinds)
    if k == "atom":
        kind, p = rng.choice(atoms)
        if kind == "pred":
            return Pred(p, (rng.choice(leaves),))
        return Eq(rng.choice(leaves), rng.choice(leaves))
    if k == "not":
        return Not(random_monadic_formula(rng, sig, scope, depth - 1))
    if k in ("all", "ex"):
        v = rng.choice(["x", "y"])
        body = random_monadic_formula(rng, sig, scope + (v,), depth - 1)
        return (Forall if k == "all" else Exists)(Var(v, "U"), body)
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(random_monadic_formula(rng, sig, scope, depth - 1), random_monadic_formula(rng, sig, scope, depth - 1))


def monadic_problems(seed: int = 0, per_signature: int = 40):
    """Deterministic (signature, premises, goal) triples over every small monadic signature."""
    import random
    rng = random.Random(seed)
    for sig in monadic_signatures():
        for _ in range(per_signature):
            premises = [random_monadic_formula(rng, sig) for _ in range(rng.randint(1, 3))]
            yield sig, premises, random_monadic_formula(rng, sig)


def finder_agreement(seed: int = 0, per_signature: int = 40, max_size: int = 2) -> dict:
    """Compare the model finder with brute-force enumeration; return counts and disagreements."""
    from oracles import brute_models, from_interpretation, smallest_countermodel_size, truth
    from whyq.logic import Falsum
    from whyq.models.finder import DomainAssignment, countermodel, find_model
    from whyq.logic import make_theory, NamedFormula

    checked, disagreements = 0, []
    for sig, premises, goal in monadic_problems(seed, per_signature):
        th = make_theory("T", sig, [NamedFormula(f"a{i}", f) for i, f in enumerate(premises)])
        for n in range(1, max_size + 1):
            r = find_model(th, DomainAssignment({"U": n}))
            exists = next(brute_models(sig, th.formulas, {"U": n}), None) is not None
            ok = r.found == exists and r.status != "unknown"
            if r.found:
                ok = ok and all(truth(f, from_interpretation(r.model)) for f in th.formulas)
            checked += 1
            if not ok:
                disagreements.append(("model", sig, premises, n, r.status))
        cm = countermodel(th, goal, max_size)
        want = smallest_countermodel_size(sig, th.formulas, goal, max_size)
        got = cm.model.total_size if cm.found else None
        ok = got == want
        if cm.found:
            s = from_interpretation(cm.model)
            ok = ok and all(truth(f, s) for f in th.formulas) and not truth(goal, s)
        checked += 1
        if not ok:
            disagreements.append(("countermodel", sig, premises, goal, got, want))
    return {"checked": checked, "disagreements": disagreements}


# ------------------------------------------------------------ preorder laws

def random_prop_formula(rng, names, depth=2):
    from whyq.logic import And, Iff, Implies, Not, Or, Pred
    if depth <= 0 or rng.random() < 0.3:
        return Pred(rng.choice(names))
    k = rng.choice(["not", "and", "or", "imp", "iff"])
    if k == "not":
        return Not(random_prop_formula(rng, names, depth - 1))
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(random_prop_formula(rng, names, depth - 1), random_prop_formula(rng, names, depth - 1))


def random_prop_theory(rng, name, names=("A", "B", "C", "D"), base=None):
    """Up to four axioms; with ``base`` given, sometimes a subset or a weakening of it."""
    from whyq.logic import NamedFormula, Or, PredSym, Signature, make_theory
    sig = Signature([], [], [PredSym(n, ()) for n in names])
    if base is not None and rng.random() < 0.5:
        fs = list(base.formulas)
        if rng.random() < 0.5:
            fs = rng.sample(fs, rng.randint(1, len(fs)))
        else:
            fs = [Or(f, random_prop_formula(rng, names, 1)) if rng.random() < 0.5 else f for f in fs][:4]
    else:
        fs = [random_prop_formula(rng, names) for _ in range(rng.randint(1, 4))]
    return make_theory(name, sig, [NamedFormula(f"a{i}", f) for i, f in enumerate(fs)])


def preorder_laws(seed: int = 0, triples: int = 200) -> dict:
    """Reflexivity, transitivity and subset => piecewise => nonworse, checked against truth tables."""
    import random

    from oracles import tt_nonworse, tt_piecewise
    from whyq.answers import NO, YES, Session, nonworse, piecewise_nonworse

    rng = random.Random(seed)
    violations: list[str] = []
    checks = 0
    for k in range(triples):
        t1 = random_prop_theory(rng, "T1")
        t2 = random_prop_theory(rng, "T2", base=t1)
        t3 = random_prop_theory(rng, "T3", base=t2)
        ts = (t1, t2, t3)
        s = Session()
        nw, pw = {}, {}
        for i, a in enumerate(ts):
            for j, b in enumerate(ts):
                v_nw = nonworse(a, b, s)
                v_pw = piecewise_nonworse(a, b, s).verdict
                nw[i, j], pw[i, j] = v_nw.value, v_pw.value
                want_nw = YES if tt_nonworse(a.formulas, b.formulas) else NO
                want_pw = YES if tt_piecewise(a.formulas, b.formulas) else NO
                checks += 2
                if v_nw.value != want_nw or not v_nw.verify():
                    violations.append(f"triple {k}: nonworse({a.name},{b.name}) = {v_nw.value}, oracle {want_nw}")
                if v_pw.value != want_pw or not v_pw.verify():
                    violations.append(f"triple {k}: piecewise({a.name},{b.name}) = {v_pw.value}, oracle {want_pw}")
                subset = all(b.member(f) is not None for f in a.formulas)
                checks += 1
                if subset and v_pw.value != YES:
                    violations.append(f"triple {k}: {a.name} subset of {b.name} but piecewise {v_pw.value}")
                checks += 1
                if v_pw.value == YES and v_nw.value != YES:
                    violations.append(f"triple {k}: piecewise yes but nonworse {v_nw.value} ({a.name},{b.name})")
        for rel, table in (("nonworse", nw), ("piecewise", pw)):
            for i in range(3):
                checks += 1
                if table[i, i] != YES:
                    violations.append(f"triple {k}: {rel} not reflexive on T{i + 1}")
            for i in range(3):
                for j in range(3):
                    for m in range(3):
                        if table[i, j] == YES and table[j, m] == YES:
                            checks += 1
                            if table[i, m] != YES:
                                violations.append(f"triple {k}: {rel} not transitive T{i + 1},T{j + 1},T{m + 1}")
    return {"triples": triples, "checks": checks, "violations": violations}


# ------------------------------------------------------------ parser round trips

def random_term(rng, scope, depth=2):
    from whyq.logic import App, Var
    leaves = [App("a", (), "U"), App("b", (), "U")] + [Var(n, "U") for n in scope]
    if depth <= 0 or rng.random() < 0.4:
        return rng.choice(leaves)
    if rng.random() < 0.5:
        return App("f", (random_term(rng, scope, depth - 1),), "U")
    return App("g", (random_term(rng, scope, depth - 1), random_term(rng, scope, depth - 1)), "U")


def random_formula(rng, scope=(), depth=4):
    """A closed formula over the shared test signature (see conftest.SIG)."""
    from whyq.logic import And, Eq, Exists, Falsum, Forall, Iff, Implies, Not, Or, Pred, Var, Verum
    kinds = ["pred", "rel", "eq", "prop", "const"]
    if depth > 0:
        kinds += ["not", "and", "or", "imp", "iff", "all", "ex"] * 2
    k = rng.choice(kinds)
    if k == "pred":
        return Pred("P", (random_term(rng, scope, 1),))
    if k == "rel":
        return Pred("R", (random_term(rng, scope, 1), random_term(rng, scope, 1)))
    if k == "eq":
        return Eq(random_term(rng, scope, 1), random_term(rng, scope, 1))
    if k == "prop":
        return Pred(rng.choice(["p", "q"]))
    if k == "const":
        return rng.choice([Verum(), Falsum()])
    if k == "not":
        return Not(random_formula(rng, scope, depth - 1))
    if k in ("all", "ex"):
        v = rng.choice(["x", "y", "z"])
        return (Forall if k == "all" else Exists)(Var(v, "U"), random_formula(rng, scope + (v,), depth - 1))
    cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
    return cls(random_formula(rng, scope, depth - 1), random_formula(rng, scope, depth - 1))


def roundtrip_corpus(seed: int = 0, n: int = 500):
    import random
    rng = random.Random(seed)
    return [random_formula(rng) for _ in range(n)]
