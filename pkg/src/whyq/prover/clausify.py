"""Clause normal form: NNF, Skolemization, CNF and the equality axiom schema."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..logic import (
    And, App, Binding, Eq, Exists, Falsum, Forall, Formula, FuncSym, Iff, Implies,
    Not, Or, Pred, PredSym, Signature, Term, Var, Verum, signature_of, subst_term,
    term_vars, free_vars,
)

# CNF pieces above this many clauses are named by a fresh definition predicate.
DISTRIBUTION_LIMIT = 64


@dataclass(frozen=True, slots=True)
class Literal:
    positive: bool
    atom: Pred | Eq

    def negate(self) -> Literal:
        return Literal(not self.positive, self.atom)

    def key(self) -> tuple:
        a = self.atom
        if isinstance(a, Pred):
            return (a.name, len(a.args))
        return ("=", a.left.sort)

    def vars(self) -> Iterable[Var]:
        a = self.atom
        if isinstance(a, Pred):
            for t in a.args:
                yield from term_vars(t)
        else:
            yield from term_vars(a.left)
            yield from term_vars(a.right)

    def substitute(self, binding: Binding) -> Literal:
        a = self.atom
        if isinstance(a, Pred):
            return Literal(self.positive, Pred(a.name, tuple(subst_term(t, binding) for t in a.args)))
        return Literal(self.positive, Eq(subst_term(a.left, binding), subst_term(a.right, binding)))

    def as_formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)

    def __str__(self) -> str:
        from ..parser import render
        return render(self.as_formula())


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]
    origin: str = ""

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def __str__(self) -> str:
        if not self.literals:
            return "false"
        return " | ".join(map(str, self.literals))


def normalize_literals(lits: Sequence[Literal]) -> tuple[Literal, ...]:
    """Drop repeated literals and rename variables to ``X0, X1, ...`` by first occurrence."""
    seen: set[Literal] = set()
    unique = []
    for lit in lits:
        if lit not in seen:
            seen.add(lit)
            unique.append(lit)
    ren: dict[Var, Term] = {}
    for lit in unique:
        for v in lit.vars():
            if v not in ren:
                ren[v] = Var(f"X{len(ren)}", v.sort)
    if all(k == v for k, v in ren.items()):
        return tuple(unique)
    out = []
    seen.clear()
    for lit in unique:
        r = lit.substitute(ren)
        if r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


def is_tautology(lits: Sequence[Literal], reflexive: bool = False) -> bool:
    """Complementary literals, or (with ``reflexive``) a positive ``t = t``."""
    pos = {l.atom for l in lits if l.positive}
    for l in lits:
        if not l.positive and l.atom in pos:
            return True
        if reflexive and l.positive and isinstance(l.atom, Eq) and l.atom.left == l.atom.right:
            return True
    return False


class SkolemNamer:
    """Hands out Skolem and definition symbol names that avoid a set of taken names."""

    def __init__(self, taken: Iterable[str] = ()) -> None:
        self.taken = set(taken)
        self.counter = itertools.count()
        self.def_counter = itertools.count()
        self.functions: list[FuncSym] = []
        self.predicates: list[PredSym] = []

    def skolem(self, args: Sequence[Term], sort: str) -> App:
        while True:
            name = f"sk{next(self.counter)}"
            if name not in self.taken:
                break
        self.taken.add(name)
        self.functions.append(FuncSym(name, tuple(a.sort for a in args), sort))
        return App(name, tuple(args), sort)

    def definition(self, args: Sequence[Var]) -> Pred:
        while True:
            name = f"def{next(self.def_counter)}"
            if name not in self.taken:
                break
        self.taken.add(name)
        self.predicates.append(PredSym(name, tuple(a.sort for a in args)))
        return Pred(name, tuple(args))


def _nnf(f: Formula, positive: bool, ren: dict[Var, Var], fresh: itertools.count) -> Formula:
    """Negation normal form with every bound variable renamed apart."""
    if isinstance(f, (Pred, Eq)):
        g = f
        if ren:
            if isinstance(f, Pred):
                g = Pred(f.name, tuple(subst_term(a, ren) for a in f.args))
            else:
                g = Eq(subst_term(f.left, ren), subst_term(f.right, ren))
        return g if positive else Not(g)
    if isinstance(f, Verum):
        return f if positive else Falsum()
    if isinstance(f, Falsum):
        return f if positive else Verum()
    if isinstance(f, Not):
        return _nnf(f.body, not positive, ren, fresh)
    if isinstance(f, And):
        l, r = _nnf(f.left, positive, ren, fresh), _nnf(f.right, positive, ren, fresh)
        return And(l, r) if positive else Or(l, r)
    if isinstance(f, Or):
        l, r = _nnf(f.left, positive, ren, fresh), _nnf(f.right, positive, ren, fresh)
        return Or(l, r) if positive else And(l, r)
    if isinstance(f, Implies):
        l, r = _nnf(f.left, not positive, ren, fresh), _nnf(f.right, positive, ren, fresh)
        return Or(l, r) if positive else And(l, r)
    if isinstance(f, Iff):
        a_pos = _nnf(f.left, True, ren, fresh)
        a_neg = _nnf(f.left, False, ren, fresh)
        b_pos = _nnf(f.right, True, ren, fresh)
        b_neg = _nnf(f.right, False, ren, fresh)
        if positive:
            return And(Or(a_neg, b_pos), Or(a_pos, b_neg))
        return Or(And(a_pos, b_neg), And(a_neg, b_pos))
    v = Var(f"V{next(fresh)}", f.var.sort)
    body = _nnf(f.body, positive, {**ren, f.var: v}, fresh)
    universal = isinstance(f, Forall) == positive
    return Forall(v, body) if universal else Exists(v, body)


def _skolemize(f: Formula, universals: list[Var], namer: SkolemNamer) -> Formula:
    if isinstance(f, (Pred, Eq, Not, Verum, Falsum)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_skolemize(f.left, universals, namer), _skolemize(f.right, universals, namer))
    if isinstance(f, Forall):
        return _skolemize(f.body, universals + [f.var], namer)
    assert isinstance(f, Exists)
    fv = free_vars(f)
    args = [u for u in universals if u in fv]
    sk = namer.skolem(args, f.var.sort)
    from ..logic import substitute
    return _skolemize(substitute(f.body, {f.var: sk}), universals, namer)


def _lit(f: Formula) -> Literal:
    if isinstance(f, Not):
        return Literal(False, f.body)  # type: ignore[arg-type]
    return Literal(True, f)  # type: ignore[arg-type]


def _cnf(f: Formula, namer: SkolemNamer, extra: list[list[Literal]]) -> list[list[Literal]]:
    if isinstance(f, Verum):
        return []
    if isinstance(f, Falsum):
        return [[]]
    if isinstance(f, And):
        return _cnf(f.left, namer, extra) + _cnf(f.right, namer, extra)
    if isinstance(f, Or):
        left = _cnf(f.left, namer, extra)
        right = _cnf(f.right, namer, extra)
        if len(left) * len(right) > DISTRIBUTION_LIMIT:
            # name the larger side: def(vs) -> side, used positively only
            if len(left) > len(right):
                left, right, named = right, left, f.left
            else:
                named = f.right
            vs = sorted(free_vars(named), key=lambda v: v.name)
            d = namer.definition(vs)
            extra.extend([Literal(False, d)] + c for c in right)
            right = [[Literal(True, d)]]
        return [a + b for a in left for b in right]
    return [[_lit(f)]]


def clausify(f: Formula, namer: SkolemNamer | None = None, origin: str = "") -> list[Clause]:
    """Equisatisfiable clauses for ``f``. Free variables are read universally."""
    if namer is None:
        namer = SkolemNamer(_symbol_names(f))
    fresh = itertools.count()
    closed = f
    for v in sorted(free_vars(f), key=lambda v: v.name):
        closed = Forall(v, closed)
    nnf = _nnf(closed, True, {}, fresh)
    qf = _skolemize(nnf, [], namer)
    extra: list[list[Literal]] = []
    raw = _cnf(qf, namer, extra) + extra
    out: list[Clause] = []
    seen: set[tuple[Literal, ...]] = set()
    for lits in raw:
        if is_tautology(lits, reflexive=True):
            continue
        norm = normalize_literals(lits)
        if norm in seen:
            continue
        seen.add(norm)
        out.append(Clause(norm, origin))
    return out


def _symbol_names(*formulas: Formula) -> set[str]:
    sig = signature_of(formulas)
    return set(sig.functions) | set(sig.predicates)


def mentions_equality(clauses: Iterable[Clause]) -> bool:
    return any(isinstance(l.atom, Eq) for c in clauses for l in c.literals)


def equality_axioms(sig: Signature, clauses: Sequence[Clause]) -> list[Clause]:
    """Reflexivity, symmetry, transitivity and per-symbol congruence for the sorts in play."""
    eq_sorts: set[str] = {l.atom.left.sort for c in clauses for l in c.literals if isinstance(l.atom, Eq)}
    changed = True
    while changed:
        changed = False
        for fs in sig.functions.values():
            if fs.result not in eq_sorts and any(s in eq_sorts for s in fs.args):
                eq_sorts.add(fs.result)
                changed = True
    out: list[Clause] = []

    def eq(a: Term, b: Term) -> Pred | Eq:
        return Eq(a, b)

    for s in [s for s in sig.sorts if s in eq_sorts]:
        x, y, z = Var("X0", s), Var("X1", s), Var("X2", s)
        out.append(Clause((Literal(True, eq(x, x)),), f"eq:reflexivity:{s}"))
        out.append(Clause((Literal(False, eq(x, y)), Literal(True, eq(y, x))), f"eq:symmetry:{s}"))
        out.append(Clause((Literal(False, eq(x, y)), Literal(False, eq(y, z)), Literal(True, eq(x, z))),
                          f"eq:transitivity:{s}"))
    for fs in sig.functions.values():
        for i, s in enumerate(fs.args):
            if s not in eq_sorts:
                continue
            args = [Var(f"X{k + 2}", a) for k, a in enumerate(fs.args)]
            x, y = Var("X0", s), Var("X1", s)
            left = args[:i] + [x] + args[i + 1:]
            right = args[:i] + [y] + args[i + 1:]
            lits = (Literal(False, eq(x, y)),
                    Literal(True, eq(App(fs.name, tuple(left), fs.result), App(fs.name, tuple(right), fs.result))))
            out.append(Clause(normalize_literals(lits), f"eq:congruence:{fs.name}:{i}"))
    for ps in sig.predicates.values():
        for i, s in enumerate(ps.args):
            if s not in eq_sorts:
                continue
            args = [Var(f"X{k + 2}", a) for k, a in enumerate(ps.args)]
            x, y = Var("X0", s), Var("X1", s)
            left = args[:i] + [x] + args[i + 1:]
            right = args[:i] + [y] + args[i + 1:]
            lits = (Literal(False, eq(x, y)), Literal(False, Pred(ps.name, tuple(left))),
                    Literal(True, Pred(ps.name, tuple(right))))
            out.append(Clause(normalize_literals(lits), f"eq:congruence:{ps.name}:{i}"))
    return out


@dataclass(frozen=True)
class ClauseProblem:
    clauses: tuple[Clause, ...]
    signature: Signature
    skolem_functions: tuple[FuncSym, ...]


def clausify_problem(
    labelled: Sequence[tuple[str, Formula]],
    sig: Signature,
    add_equality: bool = True,
) -> ClauseProblem:
    """Clausify several formulas with one Skolem namespace; append equality axioms if needed."""
    namer = SkolemNamer(set(sig.functions) | set(sig.predicates))
    clauses: list[Clause] = []
    seen: set[tuple[Literal, ...]] = set()
    for label, f in labelled:
        for c in clausify(f, namer, label):
            if c.literals not in seen:
                seen.add(c.literals)
                clauses.append(c)
    ext = sig.extend(namer.functions, namer.predicates)
    if add_equality and mentions_equality(clauses):
        for c in equality_axioms(ext, clauses):
            if c.literals not in seen:
                seen.add(c.literals)
                clauses.append(c)
    return ClauseProblem(tuple(clauses), ext, tuple(namer.functions))
