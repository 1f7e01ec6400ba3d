"""Finite model search by grounding flattened clauses and calling DPLL.

Each function symbol ``f`` becomes a graph relation ``F_f(args, value)`` with
an exactly-one constraint per argument tuple. Clauses are flattened so that
every function application is named by a fresh variable, then instantiated
over the domains. Equalities between variables are decided at grounding time.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from ..budget import DEFAULT_BUDGET, Budget, WALL_TIME_EXHAUSTED
from ..fields import contains_ordered_field
from ..logic import App, Eq, Formula, Not, Pred, Signature, Term, Theory, Var, signature_of, signature_union
from ..prover.clausify import Clause, clausify_problem
from . import sat
from .interp import FiniteInterpretation, evaluate

FIELD_OBSTRUCTION = "no finite witness possible under AxField"


@dataclass(frozen=True)
class DomainAssignment:
    sizes: Mapping[str, int]

    def __post_init__(self) -> None:
        for s, n in self.sizes.items():
            if n < 1:
                raise ValueError(f"domain of sort {s} must have at least one element, got {n}")
        object.__setattr__(self, "sizes", MappingProxyType(dict(self.sizes)))

    @classmethod
    def uniform(cls, sig: Signature, n: int) -> DomainAssignment:
        return cls({s: n for s in sig.sorts})

    def __getitem__(self, sort: str) -> int:
        return self.sizes[sort]

    @property
    def total(self) -> int:
        return sum(self.sizes.values())

    def covers(self, sig: Signature) -> bool:
        return all(s in self.sizes for s in sig.sorts)


@dataclass(frozen=True)
class ModelResult:
    status: str  # "found" | "not_found" | "unknown"
    model: FiniteInterpretation | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == "found"


# ------------------------------------------------------------ flattening

@dataclass(frozen=True)
class _FlatLit:
    kind: str  # "pred" | "eq" | "graph"
    positive: bool
    name: str
    args: tuple[Var, ...]


def _flatten(c: Clause) -> tuple[list[_FlatLit], list[Var]]:
    named: dict[Term, Var] = {}
    out: list[_FlatLit] = []
    counter = itertools.count()

    def name(t: Term) -> Var:
        if isinstance(t, Var):
            return t
        v = named.get(t)
        if v is None:
            args = tuple(name(a) for a in t.args)
            v = Var(f"_f{next(counter)}", t.sort)
            named[t] = v
            out.append(_FlatLit("graph", False, t.fn, args + (v,)))
        return v

    for lit in c.literals:
        a = lit.atom
        if isinstance(a, Pred):
            out.append(_FlatLit("pred", lit.positive, a.name, tuple(name(t) for t in a.args)))
        else:
            out.append(_FlatLit("eq", lit.positive, "=", (name(a.left), name(a.right))))
    seen: dict[Var, None] = {}
    for fl in out:
        for v in fl.args:
            seen.setdefault(v, None)
    return out, list(seen)


class _GroundLimit(Exception):
    pass


class _Encoder:
    def __init__(self, sig: Signature, d: DomainAssignment, max_clauses: int) -> None:
        self.sig = sig
        self.d = d
        self.ids: dict[tuple, int] = {}
        self.clauses: list[list[int]] = []
        self.max_clauses = max_clauses

    def var(self, key: tuple) -> int:
        v = self.ids.get(key)
        if v is None:
            v = len(self.ids) + 1
            self.ids[key] = v
        return v

    def emit(self, lits: list[int]) -> None:
        if len(self.clauses) >= self.max_clauses:
            raise _GroundLimit
        self.clauses.append(lits)

    def function_tables(self, names: Sequence[str]) -> None:
        for fn in names:
            fs = self.sig.functions[fn]
            out_range = range(self.d[fs.result])
            for args in itertools.product(*(range(self.d[s]) for s in fs.args)):
                vs = [self.var(("F", fn, args, y)) for y in out_range]
                self.emit(vs)
                for a, b in itertools.combinations(vs, 2):
                    self.emit([-a, -b])

    def break_constant_symmetry(self, names: Sequence[str]) -> None:
        """The i-th constant of each sort takes a value of at most i."""
        per_sort: dict[str, int] = {}
        for fn in names:
            fs = self.sig.functions[fn]
            if fs.args:
                continue
            i = per_sort.get(fs.result, 0)
            per_sort[fs.result] = i + 1
            for y in range(i + 1, self.d[fs.result]):
                self.emit([-self.var(("F", fn, (), y))])

    def ground(self, c: Clause) -> None:
        flat, variables = _flatten(c)
        ranges = [range(self.d[v.sort]) for v in variables]
        instances = 1
        for r in ranges:
            instances *= len(r)
        if len(self.clauses) + instances > self.max_clauses:
            raise _GroundLimit  # counted before any instance is dropped as satisfied
        pos = {v: i for i, v in enumerate(variables)}
        for values in itertools.product(*ranges):
            lits: list[int] = []
            satisfied = False
            for fl in flat:
                vals = tuple(values[pos[v]] for v in fl.args)
                if fl.kind == "eq":
                    if (vals[0] == vals[1]) == fl.positive:
                        satisfied = True
                        break
                    continue
                if fl.kind == "pred":
                    key = ("P", fl.name, vals)
                else:
                    key = ("F", fl.name, vals[:-1], vals[-1])
                x = self.var(key)
                lits.append(x if fl.positive else -x)
            if not satisfied:
                self.emit(lits)

    def decode(self, assignment: Sequence[bool], fn_names: Sequence[str]) -> FiniteInterpretation:
        functions: dict[str, dict[tuple, int]] = {}
        for fn, fs in self.sig.functions.items():
            table: dict[tuple, int] = {}
            for args in itertools.product(*(range(self.d[s]) for s in fs.args)):
                table[args] = 0
                if fn in fn_names:
                    for y in range(self.d[fs.result]):
                        if assignment[self.ids[("F", fn, args, y)] - 1]:
                            table[args] = y
                            break
            functions[fn] = table
        relations: dict[str, set] = {p: set() for p in self.sig.predicates}
        for key, v in self.ids.items():
            if key[0] == "P" and assignment[v - 1]:
                relations[key[1]].add(key[2])
        domains = {s: self.d[s] for s in self.sig.sorts}
        return FiniteInterpretation(domains, functions, relations)


def finite_obstruction(formulas: Sequence[Formula]) -> str | None:
    """A reason why no finite model can exist, when one is recognised syntactically."""
    if contains_ordered_field(formulas):
        return FIELD_OBSTRUCTION
    return None


def _search(formulas: Sequence[tuple[str, Formula]], sig: Signature, d: DomainAssignment,
            budget: Budget, deadline: float) -> ModelResult:
    if not d.covers(sig):
        missing = [s for s in sig.sorts if s not in d.sizes]
        raise ValueError(f"domain assignment misses sorts {missing}")
    start = time.monotonic()
    problem = clausify_problem(formulas, sig, add_equality=False)
    ext = problem.signature
    fn_names = _functions_used(problem.clauses, ext)
    enc = _Encoder(ext, d, budget.max_clauses)
    stats: dict = {"sizes": dict(d.sizes)}
    try:
        enc.function_tables(fn_names)
        enc.break_constant_symmetry(fn_names)
        for c in problem.clauses:
            if not c.literals:
                stats["ground_clauses"] = len(enc.clauses)
                return ModelResult("not_found", None, "empty clause after clausification", stats)
            enc.ground(c)
    except _GroundLimit:
        stats["ground_clauses"] = len(enc.clauses)
        return ModelResult("unknown", None, f"ground clause limit {budget.max_clauses} reached", stats)
    stats["ground_clauses"] = len(enc.clauses)
    stats["variables"] = len(enc.ids)
    remaining = deadline - time.monotonic()
    if remaining <= 0:
        return ModelResult("unknown", None, WALL_TIME_EXHAUSTED, stats)
    status, assignment, steps = sat.solve(enc.clauses, len(enc.ids), budget.max_steps, remaining)
    stats["sat_steps"] = steps
    stats["elapsed"] = round(time.monotonic() - start, 6)
    if status == sat.UNSAT:
        return ModelResult("not_found", None, "propositional encoding unsatisfiable", stats)
    if status != sat.SAT:
        return ModelResult("unknown", None, "SAT search budget exhausted", stats)
    full = enc.decode(assignment, fn_names)
    for label, f in formulas:
        if not evaluate(full, f):
            raise AssertionError(f"model finder produced an interpretation falsifying {label}")
    return ModelResult("found", full.restrict(sig), "", stats)


def _functions_used(clauses: Sequence[Clause], sig: Signature) -> list[str]:
    used: set[str] = set()

    def walk(t: Term) -> None:
        if isinstance(t, App):
            used.add(t.fn)
            for a in t.args:
                walk(a)

    for c in clauses:
        for lit in c.literals:
            a = lit.atom
            for t in (a.args if isinstance(a, Pred) else (a.left, a.right)):
                walk(t)
    return [f for f in sig.functions if f in used]


def find_model(th: Theory, d: DomainAssignment, budget: Budget = DEFAULT_BUDGET) -> ModelResult:
    """A model of ``th`` with exactly the sizes in ``d``.

    ``not_found`` is an exhaustive answer for these sizes only (or for every
    finite size, when the reason names an obstruction).
    """
    formulas = [(a.label, a.formula) for a in th.axioms]
    obstruction = finite_obstruction([f for _, f in formulas])
    if obstruction:
        return ModelResult("not_found", None, obstruction, {"sizes": dict(d.sizes)})
    return _search(formulas, th.signature, d, budget, budget.deadline())


NO_MODEL_AT_ALL = "no interpretation of the sortless signature is a model"


def size_sequence(sorts: Sequence[str], max_sizes: DomainAssignment) -> Iterator[DomainAssignment]:
    """All assignments up to ``max_sizes``, by total size and then lexicographically."""
    ranges = [range(1, max_sizes[s] + 1) for s in sorts]
    combos = sorted(itertools.product(*ranges), key=lambda t: (sum(t), t))
    for combo in combos:
        yield DomainAssignment(dict(zip(sorts, combo)))


def _smallest(formulas: Sequence[tuple[str, Formula]], sig: Signature,
              max_sizes: DomainAssignment, budget: Budget) -> ModelResult:
    obstruction = finite_obstruction([f for _, f in formulas])
    if obstruction:
        return ModelResult("unknown", None, obstruction, {"tried": []})
    deadline = budget.deadline()
    tried = []
    last_reason = "no model up to the size limit"
    for d in size_sequence(list(sig.sorts), max_sizes):
        if time.monotonic() > deadline:
            last_reason = WALL_TIME_EXHAUSTED
            break
        r = _search(formulas, sig, d, budget, deadline)
        tried.append(dict(d.sizes))
        if r.found:
            return ModelResult("found", r.model, "", {**r.stats, "tried": tried})
        if r.status == "unknown":
            last_reason = r.reason
        elif not sig.sorts:
            # nothing to grow: the single sortless search covers every interpretation
            return ModelResult("not_found", None, NO_MODEL_AT_ALL, {**r.stats, "tried": tried})
    return ModelResult("unknown", None, last_reason, {"tried": tried})


def smallest_model(th: Theory, max_sizes: DomainAssignment | int,
                   budget: Budget = DEFAULT_BUDGET) -> ModelResult:
    """The first model of ``th`` in size order, or ``unknown`` (``not_found`` when sortless)."""
    if isinstance(max_sizes, int):
        max_sizes = DomainAssignment.uniform(th.signature, max_sizes)
    return _smallest([(a.label, a.formula) for a in th.axioms], th.signature, max_sizes, budget)


def countermodel(th: Theory, goal: Formula, max_sizes: DomainAssignment | int,
                 budget: Budget = DEFAULT_BUDGET) -> ModelResult:
    """A finite model of ``th`` in which ``goal`` is false.

    Sizes are tried smallest total first. Failure at every size is reported as
    ``unknown``, since a larger or infinite countermodel may still exist. The
    exception is a signature without sorts, where one search is exhaustive.
    """
    sig = signature_union(th.signature, signature_of([goal]))
    if isinstance(max_sizes, int):
        max_sizes = DomainAssignment.uniform(sig, max_sizes)
    formulas = [(a.label, a.formula) for a in th.axioms] + [("negated_goal", Not(goal))]
    r = _smallest(formulas, sig, max_sizes, budget)
    if r.found:
        assert not evaluate(r.model, goal), "countermodel satisfies the goal"
    elif r.reason == "no model up to the size limit":
        r = ModelResult("unknown", None, "no countermodel up to the size limit", r.stats)
    return r
