"""Answers to why-questions: possibility, acceptability, the two preorders and pointlessness.

Every judgment is three-valued. ``yes`` and ``no`` always carry evidence
that can be re-checked without trusting the search that produced it: a proof
accepted by ``check_proof``, a finite model re-validated by ``evaluate``, or an
alpha-membership witness. ``unknown`` reports which budget ran out.

Direction convention: ``nonworse(t2, t1)`` asks whether every axiom of ``t2``
follows from ``t1``, i.e. whether ``t2`` is an answer no worse than ``t1``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .budget import DEFAULT_BUDGET, Budget, WALL_TIME_EXHAUSTED
from .logic import (
    Falsum, Formula, NamedFormula, Signature, SignatureConflict, Theory, alpha_equal,
    signature_of, signature_union, split_conjunctions,
)
from .models.finder import DomainAssignment, ModelResult, countermodel, smallest_model
from .models.interp import FiniteInterpretation, evaluate
from .prover import Verdict, check_proof, entails

YES, NO, UNKNOWN = "yes", "no", "unknown"
NONWORSE, PIECEWISE = "nonworse", "piecewise"
DEFAULT_MAX_DOMAIN = 3

_DECISIVE = {"proof", "refutation", "countermodel", "model", "membership", "absence"}


@dataclass(frozen=True)
class Evidence:
    """One re-checkable fact behind a verdict.

    kinds: ``proof`` (premises entail goal), ``refutation`` (premises are
    inconsistent), ``countermodel`` (premises true, goal false), ``model``
    (premises true), ``membership`` / ``absence`` (goal is / is not among the
    premises modulo alpha), ``budget`` (why a search gave up).
    """

    kind: str
    about: str
    payload: object = None
    premises: tuple[Formula, ...] = ()
    goal: Formula | None = None
    detail: str = ""

    def verify(self) -> bool:
        if self.kind in ("proof", "refutation"):
            v = self.payload
            return isinstance(v, Verdict) and v.proof is not None and check_proof(v.proof, v.inputs)
        if self.kind == "countermodel":
            m = self.payload
            return (all(evaluate(m, p) for p in self.premises)
                    and self.goal is not None and not evaluate(m, self.goal))
        if self.kind == "model":
            return all(evaluate(self.payload, p) for p in self.premises)
        if self.kind == "membership":
            return self.goal is not None and any(alpha_equal(p, self.goal) for p in self.premises)
        if self.kind == "absence":
            return self.goal is not None and not any(alpha_equal(p, self.goal) for p in self.premises)
        return True


@dataclass(frozen=True)
class ThreeValued:
    value: str
    evidence: tuple[Evidence, ...] = ()
    note: str = ""

    def __post_init__(self) -> None:
        if self.value not in (YES, NO, UNKNOWN):
            raise ValueError(f"not a verdict: {self.value!r}")
        if self.value != UNKNOWN and not any(e.kind in _DECISIVE for e in self.evidence):
            raise ValueError(f"a {self.value!r} verdict needs checkable evidence")

    @property
    def yes(self) -> bool:
        return self.value == YES

    @property
    def no(self) -> bool:
        return self.value == NO

    @property
    def unknown(self) -> bool:
        return self.value == UNKNOWN

    def verify(self) -> bool:
        """Re-check every decisive piece of evidence."""
        return all(e.verify() for e in self.evidence if e.kind in _DECISIVE)


@dataclass(frozen=True)
class WhyQuestion:
    statement: Formula
    signature: Signature = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.signature is None:
            object.__setattr__(self, "signature", signature_of([self.statement]))


class Session:
    """A budget shared by the subqueries of one judgment, with memoised results.

    Clause and step limits apply to each subquery; the wall time is one
    deadline for the whole session.
    """

    def __init__(self, budget: Budget = DEFAULT_BUDGET, max_domain: int = DEFAULT_MAX_DOMAIN) -> None:
        self.budget = budget
        self.max_domain = max_domain
        self.deadline = time.monotonic() + budget.wall_time
        self._entails: dict[tuple, Verdict | None] = {}
        self._models: dict[tuple, ModelResult] = {}

    def _sub(self) -> Budget | None:
        left = self.deadline - time.monotonic()
        if left <= 0:
            return None
        return Budget(self.budget.max_clauses, self.budget.max_steps, left)

    @staticmethod
    def _key(th: Theory, goal: Formula | None) -> tuple:
        from .logic import canonicalize
        return (th.canonical_set(), canonicalize(goal) if goal is not None else None)

    def entails(self, th: Theory, goal: Formula) -> Verdict | None:
        key = self._key(th, goal)
        if key not in self._entails:
            b = self._sub()
            self._entails[key] = entails(th, goal, b) if b else None
        return self._entails[key]

    def countermodel(self, th: Theory, goal: Formula) -> ModelResult:
        key = ("cm",) + self._key(th, goal)
        if key not in self._models:
            b = self._sub()
            if b is None:
                self._models[key] = ModelResult("unknown", None, WALL_TIME_EXHAUSTED)
            else:
                self._models[key] = countermodel(th, goal, self._sizes(th, goal), b)
        return self._models[key]

    def model(self, th: Theory) -> ModelResult:
        key = ("m",) + self._key(th, None)
        if key not in self._models:
            b = self._sub()
            if b is None:
                self._models[key] = ModelResult("unknown", None, WALL_TIME_EXHAUSTED)
            else:
                self._models[key] = smallest_model(th, self._sizes(th, None), b)
        return self._models[key]

    def consumed(self) -> dict:
        """Work done so far. Counts are omitted once the wall clock cut a query short,
        because they would then depend on machine speed."""
        out = {"prover_calls": len(self._entails), "model_searches": len(self._models)}
        verdicts = list(self._entails.values())
        models = list(self._models.values())
        if (any(v is None or v.stats.get("reason") == WALL_TIME_EXHAUSTED for v in verdicts)
                or any(m.reason == WALL_TIME_EXHAUSTED for m in models)):
            return {**out, "limited_by": "wall_time"}
        out["prover_steps"] = sum(v.stats.get("steps", 0) + v.stats.get("sos_attempt", {}).get("steps", 0)
                                  for v in verdicts if v is not None)
        out["prover_clauses"] = sum(v.stats.get("clauses", 0) for v in verdicts if v is not None)
        out["sat_steps"] = sum(m.stats.get("sat_steps", 0) for m in models)
        return out

    def _sizes(self, th: Theory, goal: Formula | None) -> DomainAssignment:
        sig = th.signature if goal is None else signature_union(th.signature, signature_of([goal]))
        return DomainAssignment.uniform(sig, self.max_domain)


def _session(b: Budget | Session | None, max_domain: int) -> Session:
    if isinstance(b, Session):
        return b
    return Session(b or DEFAULT_BUDGET, max_domain)


def _budget_note(v: Verdict | None) -> str:
    if v is None:
        return WALL_TIME_EXHAUSTED
    return v.stats.get("reason", "unknown")


def _common(t1: Theory, t2: Theory) -> tuple[Theory, Theory]:
    """Both theories lifted to their joint signature (raises ``SignatureConflict``)."""
    sig = signature_union(t1.signature, t2.signature)
    return t1.lift(sig), t2.lift(sig)


def _single(th: Theory, ax: NamedFormula) -> Theory:
    return Theory(f"{th.name}[{ax.label}]", th.signature, (ax,))


# ------------------------------------------------------------ possible / acceptable

def is_possible(th: Theory, q: WhyQuestion, b: Budget | Session | None = None,
                max_domain: int = DEFAULT_MAX_DOMAIN) -> ThreeValued:
    """Consistent and not containing the statement as an axiom."""
    s = _session(b, max_domain)
    sig = signature_union(th.signature, q.signature)
    th = th.lift(sig)
    label = th.member(q.statement)
    if label is not None:
        return ThreeValued(NO, (Evidence("membership", label, None, (th.axiom(label),), q.statement),),
                           f"the statement is axiom {label}")
    absent = Evidence("absence", th.name, None, tuple(th.formulas), q.statement)
    m = s.model(th)
    if m.found:
        return ThreeValued(YES, (absent, Evidence("model", th.name, m.model, tuple(th.formulas))),
                           "consistent: finite model found")
    v = s.entails(th, Falsum())
    if v is not None and v.proved:
        return ThreeValued(NO, (Evidence("refutation", th.name, v, tuple(th.formulas)),),
                           "inconsistent: refutation found")
    return ThreeValued(UNKNOWN, (absent, Evidence("budget", th.name, detail=m.reason),
                                 Evidence("budget", th.name, detail=_budget_note(v))),
                       "consistency unresolved")


def is_acceptable(th: Theory, q: WhyQuestion, b: Budget | Session | None = None,
                  max_domain: int = DEFAULT_MAX_DOMAIN) -> ThreeValued:
    """A possible answer that entails the statement.

    When a countermodel shows the statement does not follow, the answer is
    ``no`` with that countermodel (which also shows consistency).
    """
    s = _session(b, max_domain)
    sig = signature_union(th.signature, q.signature)
    th = th.lift(sig)
    label = th.member(q.statement)
    if label is not None:
        return ThreeValued(NO, (Evidence("membership", label, None, (th.axiom(label),), q.statement),),
                           f"not a possible answer: the statement is axiom {label}")
    absent = Evidence("absence", th.name, None, tuple(th.formulas), q.statement)
    v = s.entails(th, q.statement)
    if v is not None and v.proved:
        proof = Evidence("proof", f"{th.name} |= statement", v, tuple(th.formulas), q.statement)
        m = s.model(th)
        if m.found:
            return ThreeValued(YES, (absent, proof, Evidence("model", th.name, m.model, tuple(th.formulas))),
                               "consistent and entails the statement")
        r = s.entails(th, Falsum())
        if r is not None and r.proved:
            return ThreeValued(NO, (Evidence("refutation", th.name, r, tuple(th.formulas)),),
                               "not a possible answer: inconsistent")
        return ThreeValued(UNKNOWN, (absent, proof, Evidence("budget", th.name, detail=m.reason)),
                           "entails the statement; consistency unresolved")
    cm = s.countermodel(th, q.statement)
    if cm.found:
        return ThreeValued(NO, (Evidence("countermodel", f"{th.name} |/= statement", cm.model,
                                         tuple(th.formulas), q.statement),),
                           "does not entail the statement")
    return ThreeValued(UNKNOWN, (absent, Evidence("budget", "entailment", detail=_budget_note(v)),
                                 Evidence("budget", "countermodel", detail=cm.reason)),
                       "entailment unresolved")


# ------------------------------------------------------------ preorders

def _entailed(s: Session, t1: Theory, ax: NamedFormula) -> tuple[str, Evidence | None, list[Evidence]]:
    """Whether ``t1`` entails one axiom: (value, decisive evidence, budget notes)."""
    label = t1.member(ax.formula)
    if label is not None:
        return YES, Evidence("membership", f"{ax.label} = {t1.name}.{label}", None,
                             (t1.axiom(label),), ax.formula), []
    v = s.entails(t1, ax.formula)
    if v is not None and v.proved:
        return YES, Evidence("proof", f"{t1.name} |= {ax.label}", v, tuple(t1.formulas), ax.formula), []
    cm = s.countermodel(t1, ax.formula)
    if cm.found:
        return NO, Evidence("countermodel", f"{t1.name} |/= {ax.label}", cm.model,
                            tuple(t1.formulas), ax.formula), []
    return UNKNOWN, None, [Evidence("budget", f"{t1.name} |= {ax.label}?",
                                    detail=f"prover: {_budget_note(v)}; model finder: {cm.reason}")]


def nonworse(t2: Theory, t1: Theory, b: Budget | Session | None = None,
             max_domain: int = DEFAULT_MAX_DOMAIN) -> ThreeValued:
    """Every axiom of ``t2`` is a consequence of ``t1``."""
    s = _session(b, max_domain)
    t2, t1 = _common(t2, t1)
    found: list[Evidence] = []
    open_items: list[Evidence] = []
    for ax in t2.axioms:
        value, ev, notes = _entailed(s, t1, ax)
        if value == NO:
            return ThreeValued(NO, (ev,), f"{t1.name} does not entail {ax.label}")
        if value == YES:
            found.append(ev)
        open_items.extend(notes)
    if open_items:
        return ThreeValued(UNKNOWN, tuple(found + open_items),
                           f"{len(open_items)} of {len(t2)} axioms unresolved")
    if not found:
        return ThreeValued(YES, (Evidence("absence", "no axioms to entail", None, (), Falsum()),),
                           f"{t2.name} has no axioms")
    return ThreeValued(YES, tuple(found), f"{t1.name} entails every axiom of {t2.name}")


@dataclass(frozen=True)
class Piecewise:
    verdict: ThreeValued
    witnesses: dict  # label in t2 -> label in t1 (None when unresolved or refuted)


def piecewise_nonworse(t2: Theory, t1: Theory, b: Budget | Session | None = None,
                       max_domain: int = DEFAULT_MAX_DOMAIN) -> Piecewise:
    """Each axiom of ``t2`` follows from some single axiom of ``t1``."""
    s = _session(b, max_domain)
    t2, t1 = _common(t2, t1)
    witnesses: dict[str, str | None] = {}
    found: list[Evidence] = []
    open_items: list[Evidence] = []
    refuted: Evidence | None = None
    # subset shortcut first: identity witnesses need no search at all
    pending = []
    for ax in t2.axioms:
        label = t1.member(ax.formula)
        if label is not None:
            witnesses[ax.label] = label
            found.append(Evidence("membership", f"{ax.label} = {t1.name}.{label}", None,
                                  (t1.axiom(label),), ax.formula))
        else:
            witnesses[ax.label] = None
            pending.append(ax)
    for ax in pending:
        counter: list[Evidence] = []
        unresolved: list[Evidence] = []
        for ax1 in t1.axioms:
            value, ev, notes = _entailed(s, _single(t1, ax1), ax)
            if value == YES:
                witnesses[ax.label] = ax1.label
                found.append(ev)
                break
            if value == NO:
                counter.append(ev)
            unresolved.extend(notes)
        else:
            if not unresolved:
                refuted = refuted or Evidence("absence", "no single axiom", None, (), Falsum())
                return Piecewise(ThreeValued(NO, tuple(counter) or (refuted,),
                                             f"no single axiom of {t1.name} implies {ax.label}"),
                                 witnesses)
            open_items.extend(unresolved)
    if open_items:
        return Piecewise(ThreeValued(UNKNOWN, tuple(found + open_items), "some axioms unresolved"), witnesses)
    if not found:
        return Piecewise(ThreeValued(YES, (Evidence("absence", "no axioms to imply", None, (), Falsum()),),
                                     f"{t2.name} has no axioms"), witnesses)
    note = "subset shortcut" if all(e.kind == "membership" for e in found) else "single-axiom witnesses"
    return Piecewise(ThreeValued(YES, tuple(found), note), witnesses)


def _relation(mode: str, t2: Theory, t1: Theory, s: Session) -> ThreeValued:
    if mode == NONWORSE:
        pw = piecewise_nonworse(t2, t1, s).verdict
        if pw.yes:
            return ThreeValued(YES, pw.evidence, "follows from piecewise nonworse")
        return nonworse(t2, t1, s)
    if mode == PIECEWISE:
        pw = piecewise_nonworse(t2, t1, s).verdict
        if pw.unknown:
            nw = nonworse(t2, t1, s)
            if nw.no:
                return ThreeValued(NO, nw.evidence, "a countermodel for the whole theory refutes every axiom")
        return pw
    raise ValueError(f"unknown mode {mode!r}")


def equivalent(t1: Theory, t2: Theory, mode: str = NONWORSE, b: Budget | Session | None = None,
               max_domain: int = DEFAULT_MAX_DOMAIN) -> ThreeValued:
    s = _session(b, max_domain)
    return _both(_relation(mode, t1, t2, s), _relation(mode, t2, t1, s))


def _both(a: ThreeValued, c: ThreeValued) -> ThreeValued:
    if a.no:
        return ThreeValued(NO, a.evidence, "fails in one direction")
    if c.no:
        return ThreeValued(NO, c.evidence, "fails in the other direction")
    if a.yes and c.yes:
        return ThreeValued(YES, a.evidence + c.evidence, "holds in both directions")
    return ThreeValued(UNKNOWN, a.evidence + c.evidence, "a direction is unresolved")


def _better(rel: ThreeValued, converse: ThreeValued) -> ThreeValued:
    if rel.no:
        return ThreeValued(NO, rel.evidence, "not nonworse")
    if rel.yes and converse.yes:
        return ThreeValued(NO, converse.evidence, "equivalent, hence not strictly better")
    if rel.yes and converse.no:
        return ThreeValued(YES, rel.evidence + converse.evidence, "nonworse and not equivalent")
    if rel.yes:
        return ThreeValued(UNKNOWN, rel.evidence + converse.evidence, "nonworse proven, strictness unresolved")
    return ThreeValued(UNKNOWN, rel.evidence + converse.evidence, "nonworse unresolved")


def better(t2: Theory, t1: Theory, mode: str = NONWORSE, b: Budget | Session | None = None,
           max_domain: int = DEFAULT_MAX_DOMAIN) -> ThreeValued:
    """``t2`` is (piecewise) nonworse than ``t1`` and not equivalent to it."""
    s = _session(b, max_domain)
    rel = _relation(mode, t2, t1, s)
    if rel.no:
        return _better(rel, rel)
    return _better(rel, _relation(mode, t1, t2, s))


# ------------------------------------------------------------ pointlessness

@dataclass(frozen=True)
class CandidateOutcome:
    name: str
    status: str  # "witness" | "refuted" | "unresolved"
    reason: str
    better: ThreeValued | None = None


@dataclass(frozen=True)
class Pointless:
    verdict: ThreeValued
    witness: Theory | None
    candidates: tuple[CandidateOutcome, ...]


def is_pointless(th: Theory, q: WhyQuestion, candidates: Sequence[Theory] = (),
                 b: Budget | Session | None = None, max_domain: int = DEFAULT_MAX_DOMAIN) -> Pointless:
    """Some consistent pool member containing the statement is piecewise better than ``th``.

    The pool is ``candidates`` plus the conjunction split of ``th``.
    """
    s = _session(b, max_domain)
    split = split_conjunctions(th, name=f"{th.name}.split")
    pool = list(candidates) + [split]
    outcomes: list[CandidateOutcome] = []
    refutations: list[Evidence] = []
    unresolved = False
    for c in pool:
        try:
            c_l, th_l = _common(c, th)
            signature_union(c_l.signature, q.signature)
        except SignatureConflict as exc:
            outcomes.append(CandidateOutcome(c.name, "refuted", f"signature conflict: {exc}"))
            continue
        label = c_l.member(q.statement)
        if label is None:
            outcomes.append(CandidateOutcome(c.name, "refuted", "does not contain the statement"))
            refutations.append(Evidence("absence", c.name, None, tuple(c_l.formulas), q.statement))
            continue
        m = s.model(c_l)
        if not m.found:
            r = s.entails(c_l, Falsum())
            if r is not None and r.proved:
                outcomes.append(CandidateOutcome(c.name, "refuted", "inconsistent"))
                refutations.append(Evidence("refutation", c.name, r, tuple(c_l.formulas)))
            else:
                outcomes.append(CandidateOutcome(c.name, "unresolved", f"consistency unresolved: {m.reason}"))
                unresolved = True
            continue
        bt = better(c_l, th_l, PIECEWISE, s)
        if bt.yes:
            outcomes.append(CandidateOutcome(c.name, "witness", "piecewise better and contains the statement", bt))
            ev = (Evidence("membership", f"{c.name}.{label}", None, (c_l.axiom(label),), q.statement),
                  Evidence("model", c.name, m.model, tuple(c_l.formulas))) + bt.evidence
            return Pointless(ThreeValued(YES, ev, f"{c.name} is a piecewise better answer containing the statement"),
                             c, tuple(outcomes))
        if bt.no:
            outcomes.append(CandidateOutcome(c.name, "refuted", "not piecewise better", bt))
            refutations.extend(bt.evidence)
        else:
            outcomes.append(CandidateOutcome(c.name, "unresolved", bt.note, bt))
            unresolved = True
    if unresolved:
        return Pointless(ThreeValued(UNKNOWN, (), "some candidates unresolved"), None, tuple(outcomes))
    return Pointless(ThreeValued(NO, tuple(refutations), "every candidate in the pool is refuted"),
                     None, tuple(outcomes))


# ------------------------------------------------------------ comparison report

@dataclass(frozen=True)
class Comparison:
    left: Theory
    right: Theory
    mode: str
    nonworse: ThreeValued | None
    piecewise_nonworse: ThreeValued | None
    witnesses: dict
    converse_nonworse: ThreeValued | None
    converse_piecewise: ThreeValued | None
    equivalent_nonworse: ThreeValued | None
    equivalent_piecewise: ThreeValued | None
    better: ThreeValued | None
    piecewise_better: ThreeValued | None
    notes: tuple[str, ...] = ()

    def verdicts(self) -> dict[str, ThreeValued | None]:
        return {
            "nonworse": self.nonworse,
            "piecewise_nonworse": self.piecewise_nonworse,
            "converse_nonworse": self.converse_nonworse,
            "converse_piecewise_nonworse": self.converse_piecewise,
            "equivalent_nonworse": self.equivalent_nonworse,
            "equivalent_piecewise": self.equivalent_piecewise,
            "better": self.better,
            "piecewise_better": self.piecewise_better,
        }


def compare_theories(left: Theory, right: Theory, b: Budget | Session | None = None,
                     mode: str = "all", max_domain: int = DEFAULT_MAX_DOMAIN) -> Comparison:
    """All relations between ``left`` and ``right`` (is ``left`` nonworse than ``right``, ...)."""
    s = _session(b, max_domain)
    notes: list[str] = []
    if left.signature != right.signature:
        notes.append("theories compared over the union of their signatures")
    left_l, right_l = _common(left, right)
    want_pw = mode in ("all", PIECEWISE)
    want_nw = mode in ("all", NONWORSE)

    pw = piecewise_nonworse(left_l, right_l, s)
    pw_v = pw.verdict
    nw = _derive_nonworse(pw_v, left_l, right_l, s) if want_nw else None
    if want_pw and pw_v.unknown:
        nw_probe = nw or nonworse(left_l, right_l, s)
        if nw_probe.no:
            pw_v = ThreeValued(NO, nw_probe.evidence, "a countermodel for the whole theory refutes every axiom")

    conv_pw = piecewise_nonworse(right_l, left_l, s).verdict
    conv_nw = _derive_nonworse(conv_pw, right_l, left_l, s) if want_nw else None
    if want_pw and conv_pw.unknown:
        probe = conv_nw or nonworse(right_l, left_l, s)
        if probe.no:
            conv_pw = ThreeValued(NO, probe.evidence, "a countermodel for the whole theory refutes every axiom")

    eq_nw = _both(nw, conv_nw) if want_nw else None
    eq_pw = _both(pw_v, conv_pw) if want_pw else None
    bt = _better(nw, conv_nw) if want_nw else None
    pbt = _better(pw_v, conv_pw) if want_pw else None
    if pbt is not None and pbt.unknown and pw_v.yes:
        notes.append("piecewise nonworse proven; strictness unresolved at this budget")
    return Comparison(left, right, mode,
                      nw, pw_v if want_pw else None, pw.witnesses if want_pw else {},
                      conv_nw, conv_pw if want_pw else None, eq_nw, eq_pw, bt, pbt, tuple(notes))


def _derive_nonworse(pw: ThreeValued, t2: Theory, t1: Theory, s: Session) -> ThreeValued:
    if pw.yes:
        return ThreeValued(YES, pw.evidence, "follows from piecewise nonworse")
    return nonworse(t2, t1, s)


def verdict_json(tv: ThreeValued | None, write: Callable[[Evidence], str | None]) -> dict | None:
    if tv is None:
        return None
    return {
        "value": tv.value,
        "note": tv.note,
        "evidence": [
            {"kind": e.kind, "about": e.about, "detail": e.detail, "path": write(e)}
            for e in tv.evidence
        ],
    }


def comparison_json(c: Comparison, budget: Budget, max_domain: int,
                    write: Callable[[Evidence], str | None] = lambda e: None) -> dict:
    """The schema ``v1`` report document (no timings, so it is reproducible)."""
    return {
        "schema": "v1",
        "left": c.left.name,
        "right": c.right.name,
        "mode": c.mode,
        "nonworse": verdict_json(c.nonworse, write),
        "piecewise_nonworse": verdict_json(c.piecewise_nonworse, write),
        "witnesses": dict(c.witnesses),
        "converse": {
            "nonworse": verdict_json(c.converse_nonworse, write),
            "piecewise_nonworse": verdict_json(c.converse_piecewise, write),
        },
        "equivalent": {
            "nonworse": verdict_json(c.equivalent_nonworse, write),
            "piecewise": verdict_json(c.equivalent_piecewise, write),
        },
        "better": {
            "nonworse": verdict_json(c.better, write),
            "piecewise": verdict_json(c.piecewise_better, write),
        },
        "budget": {**budget.as_dict(), "max_domain": max_domain},
        "notes": list(c.notes),
    }


def evidence_text(e: Evidence) -> tuple[str, str] | None:
    """Serialised evidence and a file suffix, or ``None`` for evidence without a payload."""
    from .models.interp import dump_interpretation
    from .parser import render
    from .prover import dump_proof
    if e.kind in ("proof", "refutation") and isinstance(e.payload, Verdict) and e.payload.proof:
        return dump_proof(e.payload.proof, e.about), "proof"
    if e.kind in ("model", "countermodel") and isinstance(e.payload, FiniteInterpretation):
        head = [f"# {e.kind}: {e.about}"]
        if e.goal is not None:
            head.append(f"# false here: {render(e.goal)}")
        return "\n".join(head) + "\n" + dump_interpretation(e.payload), "model"
    return None


def iter_evidence(tvs: Iterable[ThreeValued | None]) -> Iterable[Evidence]:
    for tv in tvs:
        if tv is not None:
            yield from tv.evidence
