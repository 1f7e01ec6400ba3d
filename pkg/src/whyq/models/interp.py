"""Finite interpretations, Tarskian evaluation and the plain-text table format."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Protocol, Sequence

from ..logic import (
    And, App, Eq, Exists, Falsum, Forall, Formula, Iff, Implies, Not, Or, Pred,
    Signature, Term, Var, Verum,
)


class EvaluationError(Exception):
    pass


class Structure(Protocol):
    def domain(self, sort: str) -> Sequence: ...

    def apply(self, fn: str, args: tuple) -> object: ...

    def holds(self, pred: str, args: tuple) -> bool: ...


@dataclass(frozen=True)
class FiniteInterpretation:
    """Per-sort domains ``{0..n-1}`` with total function tables and relation extensions."""

    domains: Mapping[str, int]
    functions: Mapping[str, Mapping[tuple, int]]
    relations: Mapping[str, frozenset]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domains", MappingProxyType(dict(self.domains)))
        object.__setattr__(self, "functions", MappingProxyType(
            {k: MappingProxyType(dict(v)) for k, v in self.functions.items()}))
        object.__setattr__(self, "relations", MappingProxyType(
            {k: frozenset(v) for k, v in self.relations.items()}))

    def domain(self, sort: str) -> range:
        try:
            return range(self.domains[sort])
        except KeyError:
            raise EvaluationError(f"sort {sort!r} has no domain") from None

    def apply(self, fn: str, args: tuple) -> int:
        try:
            return self.functions[fn][args]
        except KeyError:
            raise EvaluationError(f"no table entry for {fn}{args}") from None

    def holds(self, pred: str, args: tuple) -> bool:
        try:
            return args in self.relations[pred]
        except KeyError:
            raise EvaluationError(f"no extension for relation {pred}") from None

    @property
    def total_size(self) -> int:
        return sum(self.domains.values())

    def check_tables(self, sig: Signature) -> list[str]:
        """Problems making this interpretation partial or ill-sorted over ``sig``."""
        problems = []
        for s in sig.sorts:
            if self.domains.get(s, 0) < 1:
                problems.append(f"sort {s} has an empty or missing domain")
        if problems:
            return problems
        for fs in sig.functions.values():
            table = self.functions.get(fs.name)
            if table is None:
                problems.append(f"missing table for {fs.name}")
                continue
            for args in itertools.product(*(range(self.domains[s]) for s in fs.args)):
                v = table.get(args)
                if v is None or not 0 <= v < self.domains[fs.result]:
                    problems.append(f"{fs.name}{args} undefined or out of range")
        for ps in sig.predicates.values():
            ext = self.relations.get(ps.name)
            if ext is None:
                problems.append(f"missing extension for {ps.name}")
                continue
            for tup in ext:
                if len(tup) != len(ps.args) or any(
                        not 0 <= x < self.domains[s] for x, s in zip(tup, ps.args)):
                    problems.append(f"{ps.name}{tup} ill-sorted")
        return problems

    def restrict(self, sig: Signature) -> FiniteInterpretation:
        """Drop tables for symbols outside ``sig`` (e.g. Skolem functions)."""
        return FiniteInterpretation(
            {s: self.domains[s] for s in sig.sorts},
            {f: self.functions[f] for f in sig.functions},
            {p: self.relations[p] for p in sig.predicates},
        )


def eval_term(m: Structure, t: Term, env: Mapping[Var, object]) -> object:
    if isinstance(t, Var):
        try:
            return env[t]
        except KeyError:
            raise EvaluationError(f"variable {t.name}:{t.sort} is unbound") from None
    return m.apply(t.fn, tuple(eval_term(m, a, env) for a in t.args))


def evaluate(m: Structure, f: Formula, env: Mapping[Var, object] | None = None) -> bool:
    """Truth value of ``f`` in ``m`` under ``env``; quantifiers range over the domains."""
    return _eval(m, f, dict(env or {}))


def _eval(m: Structure, f: Formula, env: dict) -> bool:
    if isinstance(f, Pred):
        return m.holds(f.name, tuple(eval_term(m, a, env) for a in f.args))
    if isinstance(f, Eq):
        return eval_term(m, f.left, env) == eval_term(m, f.right, env)
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Not):
        return not _eval(m, f.body, env)
    if isinstance(f, And):
        return _eval(m, f.left, env) and _eval(m, f.right, env)
    if isinstance(f, Or):
        return _eval(m, f.left, env) or _eval(m, f.right, env)
    if isinstance(f, Implies):
        return (not _eval(m, f.left, env)) or _eval(m, f.right, env)
    if isinstance(f, Iff):
        return _eval(m, f.left, env) == _eval(m, f.right, env)
    saved = env.get(f.var, _MISSING)
    want = isinstance(f, Exists)
    result = not want
    for d in m.domain(f.var.sort):
        env[f.var] = d
        if _eval(m, f.body, env) == want:
            result = want
            break
    if saved is _MISSING:
        env.pop(f.var, None)
    else:
        env[f.var] = saved
    return result


_MISSING = object()


def satisfies(m: Structure, formulas: Iterable[Formula]) -> bool:
    return all(evaluate(m, f) for f in formulas)


# ----------------------------------------------------------- text table format

def dump_interpretation(m: FiniteInterpretation, sig: Signature | None = None) -> str:
    """Stable text form: domains first, then one line per table entry.

    ::

        domain B = 2
        c = 0
        f(1) = 0
        P(0) = true
    """
    lines = []
    sorts = list(sig.sorts) if sig else sorted(m.domains)
    for s in sorts:
        lines.append(f"domain {s} = {m.domains[s]}")
    fn_names = list(sig.functions) if sig else sorted(m.functions)
    for name in fn_names:
        table = m.functions[name]
        for args in sorted(table):
            head = name if not args else f"{name}({', '.join(map(str, args))})"
            lines.append(f"{head} = {table[args]}")
    if sig:
        pred_items = [(p.name, p.args) for p in sig.predicates.values()]
    else:
        pred_items = [(p, None) for p in sorted(m.relations)]
    for name, arg_sorts in pred_items:
        ext = m.relations[name]
        if arg_sorts is not None:
            tuples = itertools.product(*(range(m.domains[s]) for s in arg_sorts))
        else:
            tuples = sorted(ext)
        for tup in tuples:
            head = name if not tup else f"{name}({', '.join(map(str, tup))})"
            lines.append(f"{head} = {'true' if tup in ext else 'false'}")
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*(?P<name>[^\s(=]+)\s*(?:\((?P<args>[^)]*)\))?\s*=\s*(?P<val>\S+)\s*$")


def load_interpretation(text: str, sig: Signature) -> FiniteInterpretation:
    domains: dict[str, int] = {}
    functions: dict[str, dict[tuple, int]] = {f: {} for f in sig.functions}
    relations: dict[str, set] = {p: set() for p in sig.predicates}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("domain "):
            sort, _, size = line[len("domain "):].partition("=")
            domains[sort.strip()] = int(size)
            continue
        m = _LINE.match(line)
        if m is None:
            raise ValueError(f"cannot read interpretation line {raw!r}")
        name = m.group("name")
        args = tuple(int(a) for a in m.group("args").split(",")) if m.group("args") else ()
        val = m.group("val")
        if name in sig.functions:
            functions[name][args] = int(val)
        elif name in sig.predicates:
            if val == "true":
                relations[name].add(args)
            elif val != "false":
                raise ValueError(f"relation entry must be true/false: {raw!r}")
        else:
            raise ValueError(f"unknown symbol {name!r}")
    return FiniteInterpretation(domains, functions, relations)
