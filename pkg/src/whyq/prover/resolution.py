"""Budgeted entailment by binary resolution and factoring in a given-clause loop."""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

from ..budget import DEFAULT_BUDGET, Budget, WALL_TIME_EXHAUSTED
from ..logic import Formula, Not, Signature, Theory, Var, signature_union, signature_of, term_size
from .clausify import Clause, Literal, clausify_problem, is_tautology, normalize_literals
from .proofs import Proof, ProofStep, check_proof, rename_right
from .unify import match_atom, unify_atoms


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "proved" | "unknown"
    proof: Proof | None = None
    inputs: tuple[Clause, ...] = ()
    stats: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.outcome == "proved"


class _Entry:
    __slots__ = ("id", "lits", "weight", "keys", "renamed", "alive", "sos")

    def __init__(self, id: int, lits: tuple[Literal, ...], sos: bool) -> None:
        self.id = id
        self.lits = lits
        self.weight = sum(_lit_weight(l) for l in lits)
        self.keys = {(l.positive, l.key()) for l in lits}
        self.renamed: list[Literal] | None = None
        self.alive = True
        self.sos = sos


def _lit_weight(l: Literal) -> int:
    a = l.atom
    if hasattr(a, "args"):
        return 1 + sum(term_size(t) for t in a.args)
    return 1 + term_size(a.left) + term_size(a.right)


def subsumes(c: Sequence[Literal], d: Sequence[Literal]) -> bool:
    if len(c) > len(d):
        return False

    def go(i: int, b: dict) -> bool:
        if i == len(c):
            return True
        ci = c[i]
        for dl in d:
            if dl.positive != ci.positive:
                continue
            b2 = dict(b)
            if match_atom(ci.atom, dl.atom, b2) and go(i + 1, b2):
                return True
        return False

    return go(0, {})


class _Saturation:
    def __init__(self, budget: Budget) -> None:
        self.budget = budget
        self.deadline = time.monotonic() + budget.wall_time
        self.records: dict[int, ProofStep] = {}
        self.next_id = 1
        self.active: list[_Entry] = []
        self.index: dict[tuple, list[tuple[_Entry, int]]] = {}
        self.first_key: dict[tuple, list[_Entry]] = {}
        self.passive: list[tuple[int, int, _Entry]] = []
        self.steps = 0
        self.generated = 0
        self.reason = ""

    def record(self, lits, rule, parents=(), lit_idx=(), unifier=None, origin="") -> int:
        sid = self.next_id
        self.next_id += 1
        uni = tuple(sorted(((v, t) for v, t in (unifier or {}).items()),
                           key=lambda vt: (vt[0].name[0], int(vt[0].name[1:]) if vt[0].name[1:].isdigit() else 0)))
        self.records[sid] = ProofStep(sid, lits, rule, tuple(parents), tuple(lit_idx), uni, origin)
        return sid

    def forward_subsumed(self, lits: tuple[Literal, ...]) -> bool:
        keys = {(l.positive, l.key()) for l in lits}
        for k in keys:
            for e in self.first_key.get(k, ()):
                if e.alive and e.keys <= keys and subsumes(e.lits, lits):
                    return True
        return False

    def activate(self, e: _Entry) -> None:
        self.active.append(e)
        for i, l in enumerate(e.lits):
            self.index.setdefault((l.positive, l.key()), []).append((e, i))
        if e.lits:
            l0 = e.lits[0]
            self.first_key.setdefault((l0.positive, l0.key()), []).append(e)

    def backward_subsume(self, g: _Entry) -> None:
        for e in self.active:
            if e.alive and g.keys <= e.keys and len(g.lits) <= len(e.lits) and subsumes(g.lits, e.lits):
                e.alive = False

    def push(self, e: _Entry) -> None:
        heapq.heappush(self.passive, (e.weight, e.id, e))

    def over_budget(self) -> bool:
        if self.steps > self.budget.max_steps:
            self.reason = f"step limit {self.budget.max_steps} reached"
            return True
        if self.next_id - 1 > self.budget.max_clauses:
            self.reason = f"clause limit {self.budget.max_clauses} reached"
            return True
        if time.monotonic() > self.deadline:
            self.reason = WALL_TIME_EXHAUSTED
            return True
        return False

    def new_clause(self, lits: list[Literal], rule: str, parents, lit_idx, unifier, sos: bool) -> _Entry | None:
        if is_tautology(lits):
            return None
        norm = normalize_literals(lits)
        if norm and self.forward_subsumed(norm):
            return None
        sid = self.record(norm, rule, parents, lit_idx, unifier)
        return _Entry(sid, norm, sos)

    def children(self, g: _Entry):
        """Factors of ``g`` and resolvents of ``g`` with active clauses, in a fixed order."""
        lits = g.lits
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                a, b = lits[i], lits[j]
                if a.positive != b.positive or a.key() != b.key():
                    continue
                sigma = unify_atoms(a.atom, b.atom)
                if sigma is None:
                    continue
                rest = [l.substitute(sigma) for k, l in enumerate(lits) if k != j]
                yield rest, "factoring", (g.id,), (i, j), sigma
        for i, lit in enumerate(lits):
            partners = self.index.get((not lit.positive, lit.key()), ())
            for e, j in list(partners):
                if not e.alive:
                    continue
                if e.renamed is None:
                    e.renamed = rename_right(e.lits)
                right = e.renamed
                sigma = unify_atoms(lit.atom, right[j].atom)
                if sigma is None:
                    continue
                rest = [l.substitute(sigma) for k, l in enumerate(lits) if k != i]
                rest += [l.substitute(sigma) for k, l in enumerate(right) if k != j]
                yield rest, "resolution", (g.id, e.id), (i, j), sigma

    def run(self, inputs: Sequence[Clause], sos_from: int | None) -> int | None:
        """Saturate; return the id of the empty clause, or ``None``."""
        for n, c in enumerate(inputs):
            sos = sos_from is None or n >= sos_from
            lits = normalize_literals(c.literals)
            if is_tautology(lits):
                continue
            sid = self.record(lits, "input", origin=c.origin)
            if not lits:
                return sid
            e = _Entry(sid, lits, sos)
            if sos:
                self.push(e)
            else:
                self.activate(e)
        while self.passive:
            if self.over_budget():
                return None
            _, _, g = heapq.heappop(self.passive)
            if not g.alive:
                continue
            if self.forward_subsumed(g.lits):
                g.alive = False
                continue
            self.steps += 1
            self.backward_subsume(g)
            self.activate(g)
            for rest, rule, parents, lit_idx, sigma in self.children(g):
                self.generated += 1
                if (self.generated & 255) == 0 and self.over_budget():
                    return None
                e = self.new_clause(rest, rule, parents, lit_idx, sigma, True)
                if e is None:
                    continue
                if not e.lits:
                    return e.id
                self.push(e)
        self.reason = "saturated without refutation"
        return None

    def extract(self, empty_id: int, sig: Signature) -> Proof:
        needed: set[int] = set()
        stack = [empty_id]
        while stack:
            sid = stack.pop()
            if sid in needed:
                continue
            needed.add(sid)
            stack.extend(self.records[sid].parents)
        renumber = {old: new for new, old in enumerate(sorted(needed), 1)}
        steps = []
        for old in sorted(needed):
            s = self.records[old]
            steps.append(ProofStep(renumber[old], s.clause, s.rule,
                                   tuple(renumber[p] for p in s.parents), s.lits, s.unifier, s.origin))
        return Proof(tuple(steps), sig)


def refute(clauses: Sequence[Clause], sig: Signature, budget: Budget = DEFAULT_BUDGET,
           sos_from: int | None = None) -> Verdict:
    """Search for a refutation of ``clauses``.

    When ``sos_from`` is given, clauses from that index on form the set of
    support: only they and their descendants are selected as given clauses.
    """
    start = time.monotonic()
    sat = _Saturation(budget)
    empty = sat.run(clauses, sos_from)
    stats = {"steps": sat.steps, "clauses": sat.next_id - 1, "generated": sat.generated,
             "elapsed": round(time.monotonic() - start, 6)}
    if empty is None:
        stats["reason"] = sat.reason
        return Verdict("unknown", None, tuple(clauses), stats)
    proof = sat.extract(empty, sig)
    if not check_proof(proof, clauses):
        raise AssertionError("prover produced a proof rejected by check_proof")
    return Verdict("proved", proof, tuple(clauses), stats)


def entails(th: Theory, goal: Formula, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Try to refute ``th`` plus the negated goal.

    ``proved`` comes with a checked proof; ``unknown`` means the budget ran out
    or saturation finished without the empty clause (never a claim of non-entailment).
    """
    sig = signature_union(th.signature, signature_of([goal]))
    axioms = [(a.label, a.formula) for a in th.axioms]
    # clausify the goal first so that its Skolem constants get stable names
    neg = [("goal", Not(goal))]
    problem = clausify_problem(neg + axioms, sig)
    goal_clauses = [c for c in problem.clauses if c.origin == "goal"]
    other = [c for c in problem.clauses if c.origin != "goal"]
    ordered = other + goal_clauses
    sos_from = len(other) if goal_clauses else None
    v = refute(ordered, problem.signature, budget, sos_from)
    if sos_from is not None and not v.proved and v.stats.get("reason", "").startswith("saturated"):
        # set of support is incomplete when the premises alone are inconsistent
        rest = _remaining(budget, v.stats)
        if rest is not None:
            full = refute(ordered, problem.signature, rest, None)
            stats = {**full.stats, "sos_attempt": v.stats}
            return Verdict(full.outcome, full.proof, full.inputs, stats)
    return v


def _remaining(budget: Budget, used: dict) -> Budget | None:
    steps = budget.max_steps - used["steps"]
    wall = budget.wall_time - used["elapsed"]
    if steps <= 0 or wall <= 0:
        return None
    return Budget(budget.max_clauses, steps, wall)
