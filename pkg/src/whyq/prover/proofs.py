"""Resolution proof objects, their independent checker and the line-oriented text format.

Text format (one step per line, after a signature block)::

    step 1: P(X0) | ~Q(X0) [input origin=a1 vars=X0:B]
    step 4: ~Q(c) [resolution parents=1,3 lits=0,0 vars=X0:B unifier={X0 := c}]
    step 5: false [factoring parents=4 lits=0,1 vars= unifier={}]

Variables of the second resolution parent are renamed ``X<i>`` to ``Y<i>``
before unification; the recorded unifier is over those renamed variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..logic import (
    Eq, Falsum, Not, Or, Pred, Signature, Term, Theory, Var, subst_term, term_vars,
)
from .clausify import Clause, Literal, normalize_literals


@dataclass(frozen=True)
class ProofStep:
    id: int
    clause: tuple[Literal, ...]
    rule: str  # "input" | "resolution" | "factoring"
    parents: tuple[int, ...] = ()
    lits: tuple[int, ...] = ()
    unifier: tuple[tuple[Var, Term], ...] = ()
    origin: str = ""


@dataclass(frozen=True)
class Proof:
    steps: tuple[ProofStep, ...]
    signature: Signature

    def __len__(self) -> int:
        return len(self.steps)


def rename_right(lits: Sequence[Literal]) -> list[Literal]:
    ren: dict[Var, Term] = {}
    for lit in lits:
        for v in lit.vars():
            if v not in ren:
                ren[v] = Var("Y" + v.name[1:], v.sort)
    return [l.substitute(ren) for l in lits]


def check_proof(p: Proof, inputs: Iterable[Clause]) -> bool:
    """True iff every step follows from its parents by its rule and the last step is empty."""
    if not p.steps or p.steps[-1].clause:
        return False
    allowed = {normalize_literals(c.literals) for c in inputs}
    known: dict[int, tuple[Literal, ...]] = {}
    for s in p.steps:
        if s.id in known or any(q not in known for q in s.parents):
            return False
        if normalize_literals(s.clause) != s.clause:
            return False
        sigma: dict[Var, Term] = {}
        for v, t in s.unifier:
            if v.sort != t.sort or v in sigma:
                return False
            sigma[v] = t
        if s.rule == "input":
            if s.parents or s.clause not in allowed:
                return False
        elif s.rule == "resolution":
            if len(s.parents) != 2 or len(s.lits) != 2:
                return False
            left = list(known[s.parents[0]])
            right = rename_right(known[s.parents[1]])
            i, j = s.lits
            if not (0 <= i < len(left) and 0 <= j < len(right)):
                return False
            li, rj = left[i].substitute(sigma), right[j].substitute(sigma)
            if li.atom != rj.atom or li.positive == rj.positive:
                return False
            rest = [l.substitute(sigma) for k, l in enumerate(left) if k != i]
            rest += [l.substitute(sigma) for k, l in enumerate(right) if k != j]
            if normalize_literals(rest) != s.clause:
                return False
        elif s.rule == "factoring":
            if len(s.parents) != 1 or len(s.lits) != 2:
                return False
            parent = known[s.parents[0]]
            i, j = s.lits
            if i == j or not (0 <= i < len(parent) and 0 <= j < len(parent)):
                return False
            a, b = parent[i].substitute(sigma), parent[j].substitute(sigma)
            if a != b:
                return False
            rest = [l.substitute(sigma) for k, l in enumerate(parent) if k != j]
            if normalize_literals(rest) != s.clause:
                return False
        else:
            return False
        known[s.id] = s.clause
    return True


# ------------------------------------------------------------------ text I/O

def _clause_text(lits: Sequence[Literal]) -> str:
    from ..parser import render
    if not lits:
        return "false"
    return " | ".join(render(l.as_formula()) for l in lits)


def _vars_of(s: ProofStep) -> list[Var]:
    seen: dict[str, Var] = {}
    for lit in s.clause:
        for v in lit.vars():
            seen.setdefault(v.name, v)
    for v, t in s.unifier:
        seen.setdefault(v.name, v)
        for w in term_vars(t):
            seen.setdefault(w.name, w)
    return sorted(seen.values(), key=lambda v: (v.name[0], int(v.name[1:]) if v.name[1:].isdigit() else 0, v.name))


def dump_proof(p: Proof, title: str = "") -> str:
    from ..parser import render_term, render_theory
    lines = ["% whyq proof v1"]
    if title:
        lines.append(f"% {title}")
    lines.append(render_theory(Theory("signature", p.signature, ())).rstrip("\n"))
    for s in p.steps:
        vs = ",".join(f"{v.name}:{v.sort}" for v in _vars_of(s))
        if s.rule == "input":
            meta = f"input origin={s.origin} vars={vs}"
        else:
            parents = ",".join(map(str, s.parents))
            lits = ",".join(map(str, s.lits))
            uni = ", ".join(f"{v.name} := {render_term(t)}" for v, t in s.unifier)
            meta = f"{s.rule} parents={parents} lits={lits} vars={vs} unifier={{{uni}}}"
        lines.append(f"step {s.id}: {_clause_text(s.clause)} [{meta}]")
    return "\n".join(lines) + "\n"


_STEP = re.compile(r"^step (\d+): (.*) \[(input|resolution|factoring) (.*)\]$")


def load_proof(text: str) -> Proof:
    from ..parser import parse_formula, parse_theory
    lines = text.splitlines()
    start = next(i for i, l in enumerate(lines) if l.startswith("theory signature"))
    end = next(i for i in range(start, len(lines)) if lines[i].strip() == "}")
    sig = parse_theory("\n".join(lines[start:end + 1])).signature
    steps = []
    for line in lines[end + 1:]:
        if not line.strip() or line.startswith("%"):
            continue
        m = _STEP.match(line)
        if m is None:
            raise ValueError(f"malformed proof line: {line!r}")
        sid, clause_text, rule, meta = int(m.group(1)), m.group(2), m.group(3), m.group(4)
        fields = dict(re.findall(r"(\w+)=(\{[^}]*\}|\S*)", meta))
        variables = {}
        for decl in filter(None, fields.get("vars", "").split(",")):
            name, sort = decl.split(":")
            variables[name] = sort
        lits: list[Literal] = []
        if clause_text != "false":
            f = parse_formula(clause_text, sig, variables)
            stack = [f]
            while stack:
                g = stack.pop()
                if isinstance(g, Or):
                    stack.append(g.right)
                    stack.append(g.left)
                elif isinstance(g, Not):
                    lits.append(Literal(False, g.body))  # type: ignore[arg-type]
                else:
                    lits.append(Literal(True, g))  # type: ignore[arg-type]
        unifier: list[tuple[Var, Term]] = []
        uni_text = fields.get("unifier", "{}")[1:-1].strip()
        if uni_text:
            for binding in _split_top(uni_text):
                name, _, term_text = binding.partition(":=")
                name = name.strip()
                v = Var(name, variables[name])
                eq = parse_formula(f"{term_text.strip()} = {term_text.strip()}", sig, variables)
                assert isinstance(eq, Eq)
                unifier.append((v, eq.left))
        parents = tuple(int(x) for x in fields.get("parents", "").split(",") if x)
        lit_idx = tuple(int(x) for x in fields.get("lits", "").split(",") if x)
        steps.append(ProofStep(sid, tuple(lits), rule, parents, lit_idx, tuple(unifier),
                               fields.get("origin", "")))
    return Proof(tuple(steps), sig)


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [s for s in out if s.strip()]
