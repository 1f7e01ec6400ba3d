"""The ``why`` command.

Exit status: 0 yes / success, 1 no, 2 unknown, 3 usage or parse error,
4 internal invariant violation. Reports go to stdout, as text or (with
``--json``) as a deterministic JSON document; proofs and models go to files
under the registry's ``.why-cache/evidence`` and are referenced by path.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import answers
from .answers import DEFAULT_MAX_DOMAIN, Evidence, Session, ThreeValued, WhyQuestion, verdict_json
from .budget import DEFAULT_BUDGET, Budget
from .logic import Formula, LogicError, Theory, juxtapose
from .models.finder import countermodel
from .parser import ParseError, parse_formula, parse_inline, parse_theory, render, render_theory
from .prover import entails
from .registry import Registry, compare, dumps_report, sha256
from .tptp import TptpSyntaxError, export_tptp, parse_tptp

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3, 4
STATUS = {answers.YES: EXIT_YES, answers.NO: EXIT_NO, answers.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means "unknown" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Context:
    registry: Registry
    budget: Budget
    max_domain: int
    json: bool
    seed: int

    def write(self, e: Evidence) -> str | None:
        return self.registry.write_evidence(e)

    def limits(self) -> dict:
        return {**self.budget.as_dict(), "max_domain": self.max_domain}


# ------------------------------------------------------------ loading

def _is_inline(arg: str) -> bool:
    return arg.lstrip().startswith("{")


def load_theory(arg: str, reg: Registry, inline_name: str = "inline") -> Theory:
    if _is_inline(arg):
        return parse_inline(arg, name=inline_name)[0]
    p = Path(arg)
    if arg.endswith(".why") and p.is_file():
        return parse_theory(p.read_text(encoding="utf-8"), str(p))
    return reg.load(arg)


def load_formula(text: str, th: Theory) -> Formula:
    """``noftl`` names the shipped goal, ``@file`` reads the text from a file."""
    if text.strip().lower() == "noftl":
        from .specrel import noftl_formula
        return noftl_formula()
    if text.startswith("@"):
        path = text[1:]
        return parse_formula(Path(path).read_text(encoding="utf-8"), th.signature, file=path)
    return parse_formula(text, th.signature, file="<question>")


def load_problem(theory_arg: str, formula_text: str, reg: Registry) -> tuple[Theory, Formula]:
    if _is_inline(theory_arg) and formula_text.strip().lower() != "noftl" and not formula_text.startswith("@"):
        th, goal = parse_inline(theory_arg, formula_text)
        assert goal is not None
        return th, goal
    th = load_theory(theory_arg, reg)
    return th, load_formula(formula_text, th)


def _display_name(arg: str, th: Theory) -> str:
    return th.name if _is_inline(arg) or arg.endswith(".why") else arg


# ------------------------------------------------------------ output

def emit(ctx: Context, doc: dict, lines: list[str]) -> None:
    if ctx.json:
        sys.stdout.write(dumps_report(doc))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def verdict_lines(title: str, tv: ThreeValued, ctx: Context) -> list[str]:
    out = [f"{title}: {tv.value}"]
    if tv.note:
        out.append(f"  note: {tv.note}")
    for e in tv.evidence:
        path = ctx.write(e)
        where = f" -> {ctx.registry.root / path}" if path else ""
        detail = f": {e.detail}" if e.detail else ""
        out.append(f"  evidence: {e.kind} ({e.about}){detail}{where}")
    return out


def _footer(ctx: Context, consumed: dict | None) -> list[str]:
    b = ctx.limits()
    out = ["budget: " + " ".join(f"{k}={v}" for k, v in b.items())]
    if consumed:
        out.append("consumed: " + " ".join(f"{k}={v}" for k, v in consumed.items()))
    return out


def verdict_report(ctx: Context, command: str, subject: dict, tv: ThreeValued,
                   consumed: dict | None, extra: dict | None = None) -> dict:
    doc = {"schema": "v1", "command": command, **subject,
           "verdict": verdict_json(tv, ctx.write), "budget": ctx.limits(), "consumed": consumed}
    doc.update(extra or {})
    return doc


# ------------------------------------------------------------ commands

def cmd_check(args, ctx: Context) -> int:
    th, goal = load_problem(args.theory, args.question, ctx.registry)
    name = _display_name(args.theory, th)
    s = Session(ctx.budget, ctx.max_domain)
    q = WhyQuestion(goal)
    acceptable = args.command == "check-acceptable"
    tv = (answers.is_acceptable if acceptable else answers.is_possible)(th, q, s)
    consumed = s.consumed()
    hint = None
    if acceptable and tv.unknown:
        target = args.theory if not _is_inline(args.theory) else "<theory>"
        hint = (f"the internal prover gave up; export the problem with "
                f"`why export-tptp {target} --goal ...` and try an external TPTP prover")
    doc = verdict_report(ctx, args.command, {"theory": name, "question": render(goal)}, tv, consumed,
                         {"hint": hint} if hint else None)
    lines = verdict_lines(f"{args.command} {name}", tv, ctx) + _footer(ctx, consumed)
    if hint:
        lines.append(f"hint: {hint}")
    emit(ctx, doc, lines)
    return STATUS[tv.value]


def cmd_compare(args, ctx: Context) -> int:
    reg = ctx.registry
    if any(_is_inline(a) or a.endswith(".why") for a in (args.left, args.right)):
        tl, tr = load_theory(args.left, reg, "left"), load_theory(args.right, reg, "right")
        c = answers.compare_theories(tl, tr, Session(ctx.budget, ctx.max_domain), args.mode, ctx.max_domain)
        doc = answers.comparison_json(c, ctx.budget, ctx.max_domain, ctx.write)
        cached = False
    else:
        rep = compare(args.left, args.right, reg, ctx.budget, args.mode, ctx.max_domain,
                      use_cache=not args.no_cache)
        doc, cached = rep.document, rep.cached
    headline = "piecewise_nonworse" if args.mode == answers.PIECEWISE else "nonworse"
    value = doc[headline]["value"]
    lines = [f"compare {doc['left']} {doc['right']} (mode {args.mode}){' [cached]' if cached else ''}"]

    def show(label: str, v: dict | None) -> None:
        if v is None:
            return
        lines.append(f"  {label}: {v['value']}" + (f"  ({v['note']})" if v["note"] else ""))
        for e in v["evidence"]:
            if e["path"]:
                lines.append(f"    {e['kind']}: {reg.root / e['path']}")

    show("nonworse", doc["nonworse"])
    show("piecewise_nonworse", doc["piecewise_nonworse"])
    if doc["witnesses"]:
        lines.append("  witnesses: " + ", ".join(f"{k}->{v}" for k, v in sorted(doc["witnesses"].items())))
    show("converse nonworse", doc["converse"]["nonworse"])
    show("converse piecewise_nonworse", doc["converse"]["piecewise_nonworse"])
    show("equivalent (nonworse)", doc["equivalent"]["nonworse"])
    show("equivalent (piecewise)", doc["equivalent"]["piecewise"])
    show("better", doc["better"]["nonworse"])
    show("piecewise better", doc["better"]["piecewise"])
    lines += [f"  note: {n}" for n in doc["notes"]]
    lines += _footer(ctx, None)
    emit(ctx, doc, lines)
    return STATUS[value]


def _load_candidates(directory: str | None, reg: Registry) -> list[Theory]:
    if directory is None:
        return []
    d = Path(directory)
    if not d.is_dir():
        raise UsageError(f"candidate directory {directory} does not exist")
    return [parse_theory(p.read_text(encoding="utf-8"), str(p)) for p in sorted(d.glob("*.why"))]


def cmd_pointless(args, ctx: Context) -> int:
    th, goal = load_problem(args.theory, args.question, ctx.registry)
    name = _display_name(args.theory, th)
    candidates = _load_candidates(args.candidates, ctx.registry)
    s = Session(ctx.budget, ctx.max_domain)
    res = answers.is_pointless(th, WhyQuestion(goal), candidates, s)
    consumed = s.consumed()
    witness = None
    if res.witness is not None:
        witness = {"name": res.witness.name, "axioms": [render(f) for f in res.witness.formulas]}
    outcomes = [{"name": o.name, "status": o.status, "reason": o.reason} for o in res.candidates]
    doc = verdict_report(ctx, "pointless", {"theory": name, "question": render(goal)}, res.verdict, consumed,
                         {"witness": witness, "candidates": outcomes})
    lines = verdict_lines(f"pointless {name}", res.verdict, ctx)
    if witness:
        lines.append(f"  witness {witness['name']}: {{{'; '.join(witness['axioms'])}}}")
    lines += [f"  candidate {o['name']}: {o['status']} ({o['reason']})" for o in outcomes]
    lines += _footer(ctx, consumed)
    emit(ctx, doc, lines)
    return STATUS[res.verdict.value]


def cmd_prove(args, ctx: Context) -> int:
    th, goal = load_problem(args.theory, args.goal, ctx.registry)
    name = _display_name(args.theory, th)
    v = entails(th, goal, ctx.budget)
    if v.proved:
        tv = ThreeValued(answers.YES, (Evidence("proof", f"{th.name} |= goal", v, tuple(th.formulas), goal),),
                         f"proof with {len(v.proof)} steps")
    else:
        tv = ThreeValued(answers.UNKNOWN, (Evidence("budget", "prover", detail=v.stats.get("reason", "")),),
                         "no proof within the budget")
    consumed = _prover_consumed(v.stats)
    doc = verdict_report(ctx, "prove", {"theory": name, "goal": render(goal)}, tv, consumed)
    emit(ctx, doc, verdict_lines(f"prove {name}", tv, ctx) + _footer(ctx, consumed))
    return STATUS[tv.value]


def _prover_consumed(stats: dict) -> dict:
    if stats.get("reason") == answers.WALL_TIME_EXHAUSTED:
        return {"limited_by": "wall_time"}
    sos = stats.get("sos_attempt", {})
    return {"prover_steps": stats.get("steps", 0) + sos.get("steps", 0), "prover_clauses": stats.get("clauses", 0)}


def cmd_countermodel(args, ctx: Context) -> int:
    th, goal = load_problem(args.theory, args.goal, ctx.registry)
    name = _display_name(args.theory, th)
    limit = args.max if args.max is not None else ctx.max_domain
    r = countermodel(th, goal, limit, ctx.budget)
    if r.found:
        tv = ThreeValued(answers.YES, (Evidence("countermodel", f"{th.name} |/= goal", r.model,
                                                tuple(th.formulas), goal),),
                         f"countermodel of total size {r.model.total_size}")
    elif r.status == "not_found" and (v := entails(th, goal, ctx.budget)).proved:
        # a "no" must be checkable, so back the exhausted search with a proof of the goal
        tv = ThreeValued(answers.NO, (Evidence("proof", f"{th.name} |= goal", v, tuple(th.formulas), goal),),
                         r.reason)
    else:
        tv = ThreeValued(answers.UNKNOWN, (Evidence("budget", "model finder", detail=r.reason),), r.reason)
    consumed = ({"limited_by": "wall_time"} if r.reason == answers.WALL_TIME_EXHAUSTED
                else {"sizes_tried": len(r.stats.get("tried", [])), "sat_steps": r.stats.get("sat_steps", 0)})
    doc = verdict_report(ctx, "countermodel", {"theory": name, "goal": render(goal), "max_size": limit},
                         tv, consumed)
    emit(ctx, doc, verdict_lines(f"countermodel {name}", tv, ctx) + _footer(ctx, consumed))
    return STATUS[tv.value]


def cmd_export(args, ctx: Context) -> int:
    th = load_theory(args.theory, ctx.registry)
    goal = load_formula(args.goal, th) if args.goal else None
    text = export_tptp(th, goal)
    items = parse_tptp(text)  # the well-formedness re-parse; raises on any defect
    stem = _display_name(args.theory, th) + ("-" + ("noftl" if args.goal.strip().lower() == "noftl" else "goal")
                                             if args.goal else "")
    out = Path(args.out) if args.out else Path(f"{stem}.p")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    roles: dict[str, int] = {}
    for it in items:
        roles[it.role] = roles.get(it.role, 0) + 1
    doc = {"schema": "v1", "command": "export-tptp", "theory": _display_name(args.theory, th),
           "out": str(out), "sha256": sha256(text), "reparse": "ok", "formulas": dict(sorted(roles.items()))}
    emit(ctx, doc, [f"wrote {out} ({', '.join(f'{v} {k}' for k, v in sorted(roles.items()))}); re-parse ok"])
    return EXIT_YES


def cmd_juxtapose(args, ctx: Context) -> int:
    t1 = load_theory(args.left, ctx.registry, "left")
    t2 = load_theory(args.right, ctx.registry, "right")
    th = juxtapose(t1, t2, args.name)
    text = render_theory(th)
    doc = {"schema": "v1", "command": "juxtapose", "name": th.name, "axioms": th.labels,
           "sha256": sha256(text), "out": args.out}
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        lines = [f"wrote {args.out} ({len(th)} axioms)"]
    else:
        lines = [text.rstrip("\n")]
    emit(ctx, doc, lines)
    return EXIT_YES


def cmd_eval_model(args, ctx: Context) -> int:
    from .specrel import instances
    from .specrel.minkowski import Body, check_noftl, dump_roster, generate_roster, load_roster, with_body
    from fractions import Fraction

    if args.roster:
        m = load_roster(Path(args.roster).read_text(encoding="utf-8"))
    else:
        m = generate_roster(ctx.seed)
    if args.inject_superluminal:
        zero = Fraction(0)
        m = with_body(m, Body("observer", (zero, zero, zero, zero), (Fraction(2), zero, zero)))
    roster_text = dump_roster(m)
    rel = Path(".why-cache") / "evidence" / f"{sha256(roster_text)[:20]}.roster"
    from .registry import atomic_write
    target = ctx.registry.root / rel
    if not target.exists():
        atomic_write(target, roster_text)
    base = {"schema": "v1", "command": "eval-model", "model": args.model, "check": args.check,
            "seed": ctx.seed, "roster": rel.as_posix(), "bodies": len(m.bodies)}
    if args.check == "noftl":
        rep = check_noftl(m)
        doc = {**base, **rep.as_dict(), "ok": rep.ok}
        lines = [f"eval-model {args.model} --check noftl: {'ok' if rep.ok else 'violations'}",
                 f"  observer pairs {rep.observer_pairs}, photon pairs {rep.photon_pairs}, "
                 f"violations {len(rep.violations)}"]
        lines += [f"  body {v.body}: {v.reason}" for v in rep.violations]
        ok = rep.ok
    else:
        reports = [instances.check_axiom_instances(m, ax, args.samples, ctx.seed) for ax in instances.AXIOMS]
        reports.append(instances.check_field_laws(args.field_samples, ctx.seed))
        doc = {**base, "suites": [r.as_dict() for r in reports]}
        ok = all(r.failed == 0 for r in reports)
        doc["ok"] = ok
        lines = [f"eval-model {args.model} --check axioms: {'ok' if ok else 'failures'}"]
        lines += [f"  {r.axiom}: {r.passed}/{len(r.instances)} instances hold" for r in reports]
    lines.append(f"  roster: {target}")
    emit(ctx, doc, lines)
    return EXIT_YES if ok else EXIT_NO


def cmd_init(args, ctx: Context) -> int:
    copied = ctx.registry.install_shipped()
    doc = {"schema": "v1", "command": "init", "registry": str(ctx.registry.root), "copied": copied}
    emit(ctx, doc, [f"registry {ctx.registry.root}: copied {', '.join(copied) or 'nothing (already present)'}"])
    return EXIT_YES


# ------------------------------------------------------------ argument parsing

def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _global_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--registry", default=d(None), help="theory directory (default: $WHY_REGISTRY or .)")
    p.add_argument("--budget-clauses", type=_positive_int, default=d(DEFAULT_BUDGET.max_clauses))
    p.add_argument("--budget-steps", type=_positive_int, default=d(DEFAULT_BUDGET.max_steps))
    p.add_argument("--timeout", type=_positive_float, default=d(DEFAULT_BUDGET.wall_time),
                   help="wall-clock seconds per command")
    p.add_argument("--max-domain", type=_positive_int, default=d(DEFAULT_MAX_DOMAIN),
                   help="largest domain size per sort for model searches")
    p.add_argument("--json", action="store_true", default=d(False), help="print a JSON report")
    p.add_argument("--seed", type=int, default=d(0))


COMMANDS: dict[str, Callable] = {
    "check-possible": cmd_check, "check-acceptable": cmd_check, "compare": cmd_compare,
    "pointless": cmd_pointless, "prove": cmd_prove, "countermodel": cmd_countermodel,
    "export-tptp": cmd_export, "export": cmd_export, "juxtapose": cmd_juxtapose,
    "eval-model": cmd_eval_model, "init": cmd_init,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="why", description="Compare and check answers to why-questions.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help: str, aliases: tuple[str, ...] = ()) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, aliases=list(aliases))
        _global_options(p, suppress=True)
        return p

    for name, text in (("check-possible", "consistent and not containing the statement as an axiom"),
                       ("check-acceptable", "a possible answer that entails the statement")):
        p = add(name, text)
        p.add_argument("theory", help="registry name, .why file or inline {f1; f2}")
        p.add_argument("question", help="formula text, @file, or noftl")

    p = add("compare", "nonworse / piecewise nonworse / better between two theories")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=["all", answers.NONWORSE, answers.PIECEWISE], default="all")
    p.add_argument("--no-cache", action="store_true")

    p = add("pointless", "is there a piecewise better answer containing the statement")
    p.add_argument("theory")
    p.add_argument("question")
    p.add_argument("--candidates", help="directory of .why candidate answers")

    p = add("prove", "resolution proof of a goal")
    p.add_argument("theory")
    p.add_argument("goal")

    p = add("countermodel", "finite model of the theory falsifying the goal")
    p.add_argument("theory")
    p.add_argument("goal")
    p.add_argument("--max", type=_positive_int, help="largest domain size per sort (default --max-domain)")

    p = add("export-tptp", "write a TPTP FOF problem file", aliases=("export",))
    p.add_argument("theory")
    p.add_argument("--goal", help="conjecture: formula text, @file, or noftl")
    p.add_argument("--out", help="output path (default <theory>[-goal].p)")

    p = add("juxtapose", "union of two theories over the union signature")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--name")
    p.add_argument("--out")

    p = add("eval-model", "exact checks on the Minkowski standard model")
    p.add_argument("model", choices=["minkowski"])
    p.add_argument("--check", choices=["noftl", "axioms"], default="noftl")
    p.add_argument("--roster", help="roster file (default: generated from --seed)")
    p.add_argument("--samples", type=_positive_int, default=100)
    p.add_argument("--field-samples", type=_positive_int, default=1000)
    p.add_argument("--inject-superluminal", action="store_true", help="negative control")

    add("init", "copy the shipped theories into the registry")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = Budget(args.budget_clauses, args.budget_steps, args.timeout)
        root = args.registry or os.environ.get("WHY_REGISTRY") or "."
        ctx = Context(Registry(root), budget, args.max_domain, args.json, args.seed)
        return COMMANDS[args.command](args, ctx)
    except ParseError as exc:
        print(f"why: parse error\n{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LogicError, UsageError, TptpSyntaxError, ValueError, OSError) as exc:
        print(f"why: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"why: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
