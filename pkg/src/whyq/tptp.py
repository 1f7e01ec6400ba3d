"""TPTP first-order-form export with sort relativization, and a checker for our own output.

Each sort ``S`` becomes a guard predicate ``isS``. Quantifiers are guarded,
every sort gets a nonemptiness axiom and every function symbol a closure
axiom, so the one-sorted file is equisatisfiable with the many-sorted theory.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .logic import (
    And, App, Eq, Exists, Falsum, Forall, Formula, Iff, Implies, Not, Or, Pred,
    Signature, Term, Theory, Var, Verum, free_vars, signature_of, signature_union,
)

_SPECIAL = {"+": "plus", "*": "times", "<": "less"}
INDIVIDUAL = "$i"


def _word(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_p", name)


class _Names:
    """Deterministic, collision-free lower-case names for symbols and labels."""

    def __init__(self) -> None:
        self.table: dict[tuple[str, str], str] = {}
        self.used: set[str] = set()

    def get(self, kind: str, name: str) -> str:
        key = (kind, name)
        if key in self.table:
            return self.table[key]
        if kind == "sort":
            base = "is" + _word(name)
        else:
            base = _SPECIAL.get(name) or _word(name).lower()
        if not base[0].isalpha():
            base = "s" + base
        base = base[0].lower() + base[1:]
        out, n = base, 1
        while out in self.used:
            n += 1
            out = f"{base}_{n}"
        self.used.add(out)
        self.table[key] = out
        return out


@dataclass
class _Writer:
    names: _Names

    def var(self, v: Var, scope: dict[Var, str]) -> str:
        return scope[v]

    def bind(self, v: Var, scope: dict[Var, str]) -> dict[Var, str]:
        base = _word(v.name)
        base = base[0].upper() + base[1:] if base[0].isalpha() else "V" + base
        taken = set(scope.values())
        out, n = base, 1
        while out in taken:
            n += 1
            out = f"{base}_{n}"
        return {**scope, v: out}

    def term(self, t: Term, scope: dict[Var, str]) -> str:
        if isinstance(t, Var):
            return scope[t]
        head = self.names.get("fn", t.fn)
        if not t.args:
            return head
        return f"{head}({','.join(self.term(a, scope) for a in t.args)})"

    def formula(self, f: Formula, scope: dict[Var, str]) -> str:
        if isinstance(f, Pred):
            head = self.names.get("pred", f.name)
            if not f.args:
                return head
            return f"{head}({','.join(self.term(a, scope) for a in f.args)})"
        if isinstance(f, Eq):
            return f"{self.term(f.left, scope)} = {self.term(f.right, scope)}"
        if isinstance(f, Verum):
            return "$true"
        if isinstance(f, Falsum):
            return "$false"
        if isinstance(f, Not):
            return f"~ ({self.formula(f.body, scope)})"
        if isinstance(f, (And, Or, Implies, Iff)):
            op = {And: "&", Or: "|", Implies: "=>", Iff: "<=>"}[type(f)]
            return f"({self.formula(f.left, scope)} {op} {self.formula(f.right, scope)})"
        inner = self.bind(f.var, scope)
        guard = f"{self.names.get('sort', f.var.sort)}({inner[f.var]})"
        body = self.formula(f.body, inner)
        if isinstance(f, Forall):
            return f"! [{inner[f.var]}] : ({guard} => {body})"
        return f"? [{inner[f.var]}] : ({guard} & {body})"


def export_tptp(th: Theory, goal: Formula | None = None) -> str:
    """The theory (and optional conjecture) as a relativized TPTP FOF problem."""
    sig = th.signature if goal is None else signature_union(th.signature, signature_of([goal]))
    names = _Names()
    w = _Writer(names)
    body: list[str] = []

    def emit(label: str, role: str, text: str) -> None:
        body.append(f"fof({names.get('label', label)}, {role}, {text}).")

    for s in sig.sorts:
        emit(f"nonempty_{s}", "axiom", f"? [X] : {names.get('sort', s)}(X)")
    for fs in sig.functions.values():
        xs = [f"X{i + 1}" for i in range(len(fs.args))]
        app = names.get("fn", fs.name) + (f"({','.join(xs)})" if xs else "")
        concl = f"{names.get('sort', fs.result)}({app})"
        if not xs:
            emit(f"closure_{fs.name}", "axiom", concl)
            continue
        guards = " & ".join(f"{names.get('sort', s)}({x})" for x, s in zip(xs, fs.args))
        emit(f"closure_{fs.name}", "axiom", f"! [{','.join(xs)}] : (({guards}) => {concl})")
    for ax in th.axioms:
        emit(ax.label, "axiom", w.formula(_close(ax.formula), {}))
    if goal is not None:
        emit("goal", "conjecture", w.formula(_close(goal), {}))
    for ps in sig.predicates.values():
        names.get("pred", ps.name)

    header = [f"% TPTP FOF export of theory {th.name}",
              "% sorts are relativized to guard predicates; name map (source -> TPTP):"]
    for (kind, src), dst in sorted(names.table.items()):
        header.append(f"%   {kind} {src} -> {dst}")
    return "\n".join(header + body) + "\n"


def _close(f: Formula) -> Formula:
    for v in sorted(free_vars(f), key=lambda v: v.name, reverse=True):
        f = Forall(v, f)
    return f


# ------------------------------------------------------------ re-parse check

class TptpSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class TptpFormula:
    name: str
    role: str
    formula: Formula


_ROLES = {"axiom", "hypothesis", "definition", "lemma", "theorem", "conjecture", "negated_conjecture"}
_TOKEN = re.compile(r"\s*(<=>|=>|!=|\$true|\$false|[A-Za-z][A-Za-z0-9_]*|[()\[\],.:~&|!?=])")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TptpSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _TptpParser:
    def __init__(self, tokens: list[str]) -> None:
        self.toks = tokens
        self.i = 0
        self.arity: dict[tuple[str, str], int] = {}

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise TptpSyntaxError(f"expected {want or 'token'}, found {t!r}")
        self.i += 1
        return t

    def symbol(self, kind: str, name: str, n: int) -> None:
        if not name[0].islower():
            raise TptpSyntaxError(f"{kind} name {name!r} must start with a lower-case letter")
        for other in ("fn", "pred"):
            known = self.arity.get((other, name))
            if known is not None and (other != kind or known != n):
                raise TptpSyntaxError(f"symbol {name!r} used inconsistently")
        self.arity[(kind, name)] = n

    def annotated(self) -> TptpFormula:
        self.take("fof")
        self.take("(")
        name = self.take()
        if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", name):
            raise TptpSyntaxError(f"bad formula name {name!r}")
        self.take(",")
        role = self.take()
        if role not in _ROLES:
            raise TptpSyntaxError(f"unknown role {role!r}")
        self.take(",")
        f = self.formula({})
        self.take(")")
        self.take(".")
        return TptpFormula(name, role, f)

    def formula(self, scope: dict[str, Var]) -> Formula:
        left = self.unitary(scope)
        op = self.peek()
        if op in ("<=>", "=>"):
            self.take()
            right = self.unitary(scope)
            return Iff(left, right) if op == "<=>" else Implies(left, right)
        if op in ("&", "|"):
            parts = [left]
            while self.peek() == op:
                self.take()
                parts.append(self.unitary(scope))
            out = parts[0]
            for p in parts[1:]:
                out = And(out, p) if op == "&" else Or(out, p)
            return out
        return left

    def unitary(self, scope: dict[str, Var]) -> Formula:
        t = self.peek()
        if t == "(":
            self.take()
            f = self.formula(scope)
            self.take(")")
            return f
        if t == "~":
            self.take()
            return Not(self.unitary(scope))
        if t in ("!", "?"):
            self.take()
            self.take("[")
            names = [self.take()]
            while self.peek() == ",":
                self.take()
                names.append(self.take())
            self.take("]")
            self.take(":")
            inner = dict(scope)
            vs = []
            for n in names:
                if not n[0].isupper():
                    raise TptpSyntaxError(f"variable {n!r} must start with an upper-case letter")
                v = Var(n, INDIVIDUAL)
                inner[n] = v
                vs.append(v)
            body = self.unitary(inner)
            for v in reversed(vs):
                body = Forall(v, body) if t == "!" else Exists(v, body)
            return body
        if t == "$true":
            self.take()
            return Verum()
        if t == "$false":
            self.take()
            return Falsum()
        return self.atom(scope)

    def atom(self, scope: dict[str, Var]) -> Formula:
        start = self.i
        first = self.term(scope)
        if self.peek() in ("=", "!="):
            op = self.take()
            eq = Eq(first, self.term(scope))
            return eq if op == "=" else Not(eq)
        # not an equation: re-read as a predicate application
        self.i = start
        name = self.take()
        args: list[Term] = []
        if self.peek() == "(":
            args = self.args(scope)
        self.symbol("pred", name, len(args))
        return Pred(name, tuple(args))

    def args(self, scope: dict[str, Var]) -> list[Term]:
        self.take("(")
        out = [self.term(scope)]
        while self.peek() == ",":
            self.take()
            out.append(self.term(scope))
        self.take(")")
        return out

    def term(self, scope: dict[str, Var]) -> Term:
        name = self.take()
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise TptpSyntaxError(f"expected a term, found {name!r}")
        if name[0].isupper():
            if name not in scope:
                raise TptpSyntaxError(f"unbound variable {name}")
            return scope[name]
        args: list[Term] = []
        if self.peek() == "(":
            args = self.args(scope)
        return App(name, tuple(args), INDIVIDUAL)


def parse_tptp(text: str) -> list[TptpFormula]:
    """Parse the FOF subset this module writes; raise ``TptpSyntaxError`` otherwise.

    Function/predicate arities must be used consistently, all variables must be
    bound, and names must follow TPTP case conventions.
    """
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("%")]
    p = _TptpParser(_tokenize("\n".join(lines)))
    out: list[TptpFormula] = []
    fn_uses: list[tuple[str, int]] = []
    while p.peek() is not None:
        out.append(p.annotated())
    for item in out:
        _collect_functions(item.formula, fn_uses)
    for name, n in fn_uses:
        p.symbol("fn", name, n)
    names = [f.name for f in out]
    if len(set(names)) != len(names):
        raise TptpSyntaxError("duplicate formula names")
    return out


def _collect_functions(f: Formula, acc: list[tuple[str, int]]) -> None:
    def walk(t: Term) -> None:
        if isinstance(t, App):
            acc.append((t.fn, len(t.args)))
            for a in t.args:
                walk(a)

    if isinstance(f, Pred):
        for a in f.args:
            walk(a)
    elif isinstance(f, Eq):
        walk(f.left)
        walk(f.right)
    elif isinstance(f, Not):
        _collect_functions(f.body, acc)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _collect_functions(f.left, acc)
        _collect_functions(f.right, acc)
    elif isinstance(f, (Forall, Exists)):
        _collect_functions(f.body, acc)


def tptp_signature(items: list[TptpFormula]) -> Signature:
    """One-sorted signature (sort ``$i``) of a parsed problem."""
    return signature_of([i.formula for i in items], [INDIVIDUAL])
