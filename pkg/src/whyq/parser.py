"""Concrete syntax for theories and formulas, and the matching pretty-printer.

Grammar (``.why`` files)::

    theory   := "theory" IDENT "{" decls axioms "}"
    decls    := ("sorts" IDENT ("," IDENT)* ";")? (funcdecl | preddecl)*
    funcdecl := "func" NAME ":" sortlist "->" IDENT ";" | "const" IDENT ":" IDENT ";"
    preddecl := "pred" NAME (":" sortlist)? ";"
    sortlist := IDENT ("x" IDENT)*
    axioms   := ("axiom" IDENT ":" formula ";")*

``NAME`` is an identifier or one of the built-in infix symbols ``+ * <``.
Connectives bind ``~ > & > | > -> > <->``; ``&``, ``|`` and ``<->`` associate
to the left, ``->`` to the right. Quantifier bodies extend as far right as
possible. ``a != b`` abbreviates ``~(a = b)``. Line comments start with ``//``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .logic import (
    And, App, Eq, Exists, FALSE, Falsum, Forall, Formula, FuncSym, Iff, Implies,
    NamedFormula, Not, Or, Pred, PredSym, Signature, Term, Theory, TRUE, Var, Verum,
    LogicError, free_vars,
)

KEYWORDS = {"theory", "sorts", "func", "const", "pred", "axiom", "forall", "exists", "true", "false"}
INFIX_FUNCTIONS = {"+": 1, "*": 2}
INFIX_PREDICATES = {"<"}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: tuple[int, int]
    end: tuple[int, int]

    def __str__(self) -> str:
        return f"{self.file}:{self.start[0]}:{self.start[1]}"


@dataclass(frozen=True)
class ParseDiagnostic:
    span: SourceSpan
    severity: str
    message: str

    def __str__(self) -> str:
        return f"{self.span}: {self.severity}: {self.message}"


class ParseError(LogicError):
    def __init__(self, diagnostics: list[ParseDiagnostic]) -> None:
        self.diagnostics = diagnostics
        errors = [d for d in diagnostics if d.severity == "error"]
        super().__init__("\n".join(map(str, errors or diagnostics)))


class _Abort(Exception):
    pass


# --------------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|!=|[{}();:,.=<+*~&|])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "op", "eof"
    text: str
    line: int
    col: int

    @property
    def end(self) -> tuple[int, int]:
        return (self.line, self.col + max(len(self.text), 1) - 1)


def tokenize(text: str, file: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            span = SourceSpan(file, (line, col), (line, col))
            raise ParseError([ParseDiagnostic(span, "error", f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("ident", "op"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -------------------------------------------------------------------- parser

class _SortVar:
    """Union-find node for sorts of symbols introduced by inference."""

    __slots__ = ("parent", "sort", "name")
    _count = 0

    def __init__(self) -> None:
        self.parent: _SortVar | None = None
        self.sort: str | None = None
        _SortVar._count += 1
        self.name = f"?{_SortVar._count}"

    def root(self) -> _SortVar:
        node = self
        while node.parent is not None:
            node = node.parent
        return node


class _Parser:
    def __init__(self, text: str, file: str, sig: Signature | None,
                 variables: Mapping[str, str] | None = None, infer: bool = False) -> None:
        self.file = file
        self.tokens = tokenize(text, file)
        self.pos = 0
        self.diags: list[ParseDiagnostic] = []
        self.sorts: list[str] = list(sig.sorts) if sig else []
        self.functions: dict[str, FuncSym] = dict(sig.functions) if sig else {}
        self.predicates: dict[str, PredSym] = dict(sig.predicates) if sig else {}
        self.free = dict(variables or {})
        self.infer = infer
        self.inferred_fns: dict[str, tuple[list[_SortVar], _SortVar]] = {}
        self.inferred_preds: dict[str, list[_SortVar]] = {}
        self.sortvars: dict[str, _SortVar] = {}

    # token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def span(self, start: Token, end: Token | None = None) -> SourceSpan:
        end = end or start
        return SourceSpan(self.file, (start.line, start.col), end.end)

    def error(self, msg: str, tok: Token | None = None) -> None:
        self.diags.append(ParseDiagnostic(self.span(tok or self.tok), "error", msg))

    def fail(self, msg: str, tok: Token | None = None) -> _Abort:
        self.error(msg, tok)
        return _Abort()

    def warn(self, msg: str, tok: Token) -> None:
        self.diags.append(ParseDiagnostic(self.span(tok), "warning", msg))

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind != "eof" and t.text == text

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            t = self.tok
            self.pos += 1
            return t
        return None

    def expect(self, text: str, opener: Token | None = None) -> Token:
        t = self.accept(text)
        if t is not None:
            return t
        if text == ")" and self.tok.kind == "eof":
            raise self.fail("unbalanced parenthesis: expected ')' before end of input")
        found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        raise self.fail(f"expected {text!r}, found {found}")

    def ident(self, what: str = "identifier") -> Token:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise self.fail(f"expected {what}, found {found}")
        self.pos += 1
        return t

    def symbol_name(self) -> Token:
        t = self.tok
        if t.kind == "op" and t.text in ("+", "*", "<"):
            self.pos += 1
            return t
        return self.ident("symbol name")

    # declarations ----------------------------------------------------------
    def sort_ref(self) -> str:
        t = self.ident("sort")
        if t.text not in self.sorts:
            self.error(f"undeclared sort {t.text!r}", t)
        return t.text

    def sortlist(self) -> list[str]:
        out = [self.sort_ref()]
        while self.tok.kind == "ident" and self.tok.text == "x":
            self.pos += 1
            out.append(self.sort_ref())
        return out

    def declare(self, sym: FuncSym | PredSym, tok: Token) -> None:
        existing = self.functions.get(sym.name) or self.predicates.get(sym.name)
        if existing is not None:
            if existing != sym:
                self.error(f"symbol {sym.name!r} redeclared with a different profile", tok)
            return
        if isinstance(sym, FuncSym):
            if sym.name in INFIX_FUNCTIONS and len(sym.args) != 2:
                self.error(f"infix function {sym.name!r} must be binary", tok)
            self.functions[sym.name] = sym
        else:
            if sym.name in INFIX_PREDICATES and len(sym.args) != 2:
                self.error(f"infix relation {sym.name!r} must be binary", tok)
            self.predicates[sym.name] = sym

    def theory(self) -> Theory:
        if self.tok.kind == "eof":
            raise self.fail("empty input: a theory header 'theory NAME { ... }' is required")
        self.expect("theory")
        name_tok = self.ident("theory name")
        self.expect("{")
        if self.accept("sorts"):
            while True:
                t = self.ident("sort name")
                if t.text in self.sorts:
                    self.warn(f"sort {t.text!r} declared twice", t)
                else:
                    self.sorts.append(t.text)
                if not self.accept(","):
                    break
            self.expect(";")
        while True:
            if self.accept("func"):
                t = self.symbol_name()
                self.expect(":")
                args = self.sortlist()
                self.expect("->")
                res = self.sort_ref()
                self.expect(";")
                self.declare(FuncSym(t.text, tuple(args), res), t)
            elif self.accept("const"):
                t = self.ident("constant name")
                self.expect(":")
                res = self.sort_ref()
                self.expect(";")
                self.declare(FuncSym(t.text, (), res), t)
            elif self.accept("pred"):
                t = self.symbol_name()
                args = self.sortlist() if self.accept(":") else []
                self.expect(";")
                self.declare(PredSym(t.text, tuple(args)), t)
            else:
                break
        axioms: list[NamedFormula] = []
        labels: set[str] = set()
        while self.accept("axiom"):
            lt = self.ident("axiom label")
            if lt.text in labels:
                self.error(f"duplicate axiom label {lt.text!r}", lt)
            labels.add(lt.text)
            self.expect(":")
            f = self.formula({})
            self.expect(";")
            axioms.append(NamedFormula(lt.text, f))
        self.expect("}")
        if self.tok.kind != "eof":
            raise self.fail(f"unexpected {self.tok.text!r} after theory body")
        if any(d.severity == "error" for d in self.diags):
            raise _Abort()
        sig = self.signature()
        try:
            return Theory(name_tok.text, sig, tuple(axioms))
        except LogicError as exc:
            raise self.fail(str(exc), name_tok)

    def signature(self) -> Signature:
        return Signature(self.sorts, self.functions.values(), self.predicates.values())

    # formulas ----------------------------------------------------------------
    def formula(self, scope: dict[str, Var]) -> Formula:
        left = self.implication(scope)
        while self.accept("<->"):
            left = Iff(left, self.implication(scope))
        return left

    def implication(self, scope: dict[str, Var]) -> Formula:
        left = self.disjunction(scope)
        if self.accept("->"):
            return Implies(left, self.implication(scope))
        return left

    def disjunction(self, scope: dict[str, Var]) -> Formula:
        left = self.conjunction(scope)
        while self.accept("|"):
            left = Or(left, self.conjunction(scope))
        return left

    def conjunction(self, scope: dict[str, Var]) -> Formula:
        left = self.unary(scope)
        while self.accept("&"):
            left = And(left, self.unary(scope))
        return left

    def unary(self, scope: dict[str, Var]) -> Formula:
        t = self.tok
        if self.accept("~"):
            return Not(self.unary(scope))
        if t.text in ("forall", "exists") and t.kind == "ident":
            self.pos += 1
            return self.quantified(t, scope)
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if t.text == "(":
            return self.paren_or_atom(scope)
        return self.atom(scope)

    def quantified(self, qtok: Token, scope: dict[str, Var]) -> Formula:
        bound: list[tuple[Var, Token]] = []
        inner = dict(scope)
        while True:
            vt = self.ident("variable")
            self.expect(":")
            sort = self.sort_ref()
            v = Var(vt.text, sort)
            bound.append((v, vt))
            inner[vt.text] = v
            if not self.accept(","):
                break
        self.expect(".")
        body = self.formula(inner)
        fv = free_vars(body)
        cls = Forall if qtok.text == "forall" else Exists
        for v, vt in reversed(bound):
            if v not in fv:
                self.warn(f"variable {v.name!r} is not used in the quantifier body", vt)
            body = cls(v, body)
            fv = free_vars(body)
        return body

    def paren_or_atom(self, scope: dict[str, Var]) -> Formula:
        start, ndiags = self.pos, len(self.diags)
        try:
            self.expect("(")
            f = self.formula(scope)
            self.expect(")")
            if not (self.at("=") or self.at("!=") or self.at("<") or self.at("+") or self.at("*")):
                return f
        except _Abort:
            pass
        err_pos = self.pos
        saved = self.diags[ndiags:]
        self.pos = start
        del self.diags[ndiags:]
        try:
            return self.atom(scope)
        except _Abort:
            if err_pos >= self.pos:
                # the formula reading got further; report its errors instead
                del self.diags[ndiags:]
                self.diags.extend(saved)
            raise

    def atom(self, scope: dict[str, Var]) -> Formula:
        t = self.tok
        if t.kind == "ident" and t.text not in KEYWORDS and t.text not in scope:
            if t.text in self.predicates or (self.infer and self._looks_like_pred(t.text)):
                return self.pred_app(scope)
        if t.kind == "eof":
            raise self.fail("unexpected end of input: expected a formula")
        lhs = self.term(scope)
        op = self.tok
        if self.accept("="):
            rhs = self.term(scope)
            return self.make_eq(lhs, rhs, op)
        if self.accept("!="):
            rhs = self.term(scope)
            return Not(self.make_eq(lhs, rhs, op))
        if self.accept("<"):
            rhs = self.term(scope)
            return self.make_pred("<", [lhs, rhs], op)
        raise self.fail("expected a relation (=, !=, <) after term")

    def _looks_like_pred(self, name: str) -> bool:
        if name in self.functions or name in self.inferred_fns or name in self.free:
            return False
        nxt = self.tokens[self.pos + 1]
        if name in self.inferred_preds:
            return True
        if nxt.text == "(":
            # a function application is followed by a relation symbol after ')'
            depth, i = 0, self.pos + 1
            while i < len(self.tokens):
                tt = self.tokens[i].text
                if tt == "(":
                    depth += 1
                elif tt == ")":
                    depth -= 1
                    if depth == 0:
                        break
                i += 1
            after = self.tokens[i + 1].text if i + 1 < len(self.tokens) else ""
            return after not in ("=", "!=", "<", "+", "*")
        return nxt.text not in ("=", "!=", "<", "+", "*")

    def make_eq(self, lhs: Term, rhs: Term, tok: Token) -> Formula:
        if lhs.sort != rhs.sort:
            if not self.unify_sorts(lhs.sort, rhs.sort):
                self.error(f"equality between terms of sorts {lhs.sort} and {rhs.sort}", tok)
        return Eq(lhs, rhs)

    def pred_app(self, scope: dict[str, Var]) -> Formula:
        t = self.ident()
        args: list[Term] = []
        if self.accept("("):
            if not self.at(")"):
                args.append(self.term(scope))
                while self.accept(","):
                    args.append(self.term(scope))
            self.expect(")")
        return self.make_pred(t.text, args, t)

    def make_pred(self, name: str, args: list[Term], tok: Token) -> Formula:
        sym = self.predicates.get(name)
        if sym is None and self.infer:
            if name not in self.inferred_preds:
                self.inferred_preds[name] = [_SortVar() for _ in args]
            svars = self.inferred_preds[name]
            if len(svars) != len(args):
                self.error(f"{name} used with {len(args)} arguments, earlier with {len(svars)}", tok)
            else:
                for a, sv in zip(args, svars):
                    self.bind_sortvar(sv, a.sort, tok)
            return Pred(name, tuple(args))
        if sym is None:
            self.error(f"unknown relation symbol {name!r}", tok)
            return Pred(name, tuple(args))
        if len(sym.args) != len(args):
            self.error(f"{name} expects {len(sym.args)} arguments, got {len(args)}", tok)
        for i, (a, want) in enumerate(zip(args, sym.args)):
            if a.sort != want and not self.unify_sorts(a.sort, want):
                self.error(f"argument {i + 1} of {name} must have sort {want}, got {a.sort}", tok)
        return Pred(name, tuple(args))

    # terms -----------------------------------------------------------------
    def term(self, scope: dict[str, Var]) -> Term:
        left = self.product(scope)
        while True:
            op = self.accept("+")
            if op is None:
                return left
            left = self.make_app("+", [left, self.product(scope)], op)

    def product(self, scope: dict[str, Var]) -> Term:
        left = self.primary(scope)
        while True:
            op = self.accept("*")
            if op is None:
                return left
            left = self.make_app("*", [left, self.primary(scope)], op)

    def primary(self, scope: dict[str, Var]) -> Term:
        if self.at("("):
            opener = self.tok
            self.pos += 1
            t = self.term(scope)
            self.expect(")", opener)
            return t
        if self.tok.kind == "eof":
            raise self.fail("unexpected end of input: expected a term")
        t = self.ident("term")
        if t.text in scope and not self.at("("):
            return scope[t.text]
        if self.at("("):
            self.pos += 1
            args = [self.term(scope)]
            while self.accept(","):
                args.append(self.term(scope))
            self.expect(")")
            return self.make_app(t.text, args, t)
        if t.text in self.functions or (self.infer and t.text not in self.free):
            return self.make_app(t.text, [], t)
        if t.text in self.free:
            return Var(t.text, self.free[t.text])
        self.error(f"unknown symbol {t.text!r}", t)
        return App(t.text, (), "?")

    def make_app(self, name: str, args: list[Term], tok: Token) -> Term:
        sym = self.functions.get(name)
        if sym is None and self.infer and name not in self.predicates:
            if name not in self.inferred_fns:
                self.inferred_fns[name] = ([_SortVar() for _ in args], _SortVar())
            svars, res = self.inferred_fns[name]
            if len(svars) != len(args):
                self.error(f"{name} used with {len(args)} arguments, earlier with {len(svars)}", tok)
            else:
                for a, sv in zip(args, svars):
                    self.bind_sortvar(sv, a.sort, tok)
            return App(name, tuple(args), self.sortvar_name(res))
        if sym is None:
            self.error(f"unknown function symbol {name!r}", tok)
            return App(name, tuple(args), "?")
        if len(sym.args) != len(args):
            self.error(f"{name} expects {len(sym.args)} arguments, got {len(args)}", tok)
        for i, (a, want) in enumerate(zip(args, sym.args)):
            if a.sort != want and not self.unify_sorts(a.sort, want):
                self.error(f"argument {i + 1} of {name} must have sort {want}, got {a.sort}", tok)
        return App(name, tuple(args), sym.result)

    # sort inference (inline theories only) ------------------------------------
    def sortvar_name(self, sv: _SortVar) -> str:
        r = sv.root()
        if r.sort is not None:
            return r.sort
        self.sortvars[r.name] = r
        return r.name

    def _sortvar_by_name(self, name: str) -> _SortVar | None:
        node = self.sortvars.get(name)
        return node.root() if node is not None else None

    def bind_sortvar(self, sv: _SortVar, sort: str, tok: Token) -> None:
        r = sv.root()
        other = self._sortvar_by_name(sort)
        if other is not None:
            if other is not r:
                if r.sort is not None and other.sort is not None and r.sort != other.sort:
                    self.error(f"sort clash between {r.sort} and {other.sort}", tok)
                other.parent = r
                if r.sort is None:
                    r.sort = other.sort
            return
        if r.sort is None:
            r.sort = sort
        elif r.sort != sort:
            self.error(f"sort clash: expected {r.sort}, got {sort}", tok)

    def unify_sorts(self, a: str, b: str) -> bool:
        if not self.infer:
            return False
        sa, sb = self._sortvar_by_name(a), self._sortvar_by_name(b)
        if sa is None and sb is None:
            return a == b
        if sa is None:
            sa, sb, a, b = sb, sa, b, a
        assert sa is not None
        if sb is None:
            if sa.sort is None:
                sa.sort = b
                return True
            return sa.sort == b
        if sa is not sb:
            if sa.sort and sb.sort and sa.sort != sb.sort:
                return False
            sb.parent = sa
            sa.sort = sa.sort or sb.sort
        return True


def _check_errors(p: _Parser) -> None:
    if any(d.severity == "error" for d in p.diags):
        raise ParseError(p.diags)


def parse_theory_with_diagnostics(text: str, file: str = "<string>") -> tuple[Theory, list[ParseDiagnostic]]:
    p = _Parser(text, file, None)
    try:
        th = p.theory()
    except _Abort:
        raise ParseError(p.diags) from None
    _check_errors(p)
    return th, p.diags


def parse_theory(text: str, file: str = "<string>") -> Theory:
    """Parse a ``.why`` theory. Raises :class:`ParseError` carrying diagnostics."""
    return parse_theory_with_diagnostics(text, file)[0]


def parse_formula(text: str, sig: Signature, variables: Mapping[str, str] | None = None,
                  file: str = "<string>") -> Formula:
    """Parse one formula over ``sig``.

    ``variables`` optionally declares free variables (name to sort); any other
    identifier must be bound, or be a symbol of ``sig``.
    """
    p = _Parser(text, file, sig, variables)
    try:
        f = p.formula({})
        if p.tok.kind != "eof":
            if p.tok.text == ")":
                raise p.fail("unbalanced parenthesis: unexpected ')'")
            raise p.fail(f"unexpected {p.tok.text!r} after formula")
    except _Abort:
        raise ParseError(p.diags) from None
    _check_errors(p)
    return f


def parse_inline(axioms_text: str, goal_text: str | None = None, name: str = "inline",
                 default_sort: str = "U") -> tuple[Theory, Formula | None]:
    """Parse ``{f1; f2}`` plus an optional goal with symbol profiles inferred from use.

    Quantified variables still carry explicit sorts. Symbols whose sort cannot be
    determined end up in ``default_sort``.
    """
    body = axioms_text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    pieces = [s.strip() for s in body.split(";") if s.strip()]
    texts = pieces + ([goal_text] if goal_text is not None else [])
    sorts: list[str] = []
    for txt in texts:
        for m in re.finditer(r"(?:forall|exists)\s+([^.]*)\.", txt):
            for decl in m.group(1).split(","):
                if ":" in decl:
                    s = decl.split(":", 1)[1].strip()
                    if s and s not in sorts:
                        sorts.append(s)
    p = _Parser("", "<inline>", Signature(sorts), infer=True)
    parsed: list[Formula] = []
    for txt in texts:
        p.tokens = tokenize(txt, "<inline>")
        p.pos = 0
        try:
            f = p.formula({})
            if p.tok.kind != "eof":
                raise p.fail(f"unexpected {p.tok.text!r} after formula")
        except _Abort:
            raise ParseError(p.diags) from None
        parsed.append(f)
    _check_errors(p)

    def resolve(s: str) -> str:
        sv = p._sortvar_by_name(s)
        if sv is None:
            return s
        return sv.root().sort or default_sort

    from .logic import map_formula, subst_term  # local: only needed here

    def fix_term(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(t.name, resolve(t.sort))
        return App(t.fn, tuple(fix_term(a) for a in t.args), resolve(t.sort))

    def fix_atom(a: Formula) -> Formula:
        if isinstance(a, Pred):
            return Pred(a.name, tuple(fix_term(x) for x in a.args))
        assert isinstance(a, Eq)
        return Eq(fix_term(a.left), fix_term(a.right))

    fixed = [map_formula(f, fix_atom) for f in parsed]
    fns = [FuncSym(n, tuple(resolve(p.sortvar_name(s)) for s in svs), resolve(p.sortvar_name(r)))
           for n, (svs, r) in p.inferred_fns.items()]
    preds = [PredSym(n, tuple(resolve(p.sortvar_name(s)) for s in svs))
             for n, svs in p.inferred_preds.items()]
    used_sorts = list(sorts)
    for sym in fns:
        for s in sym.args + (sym.result,):
            if s not in used_sorts:
                used_sorts.append(s)
    for ps in preds:
        for s in ps.args:
            if s not in used_sorts:
                used_sorts.append(s)
    sig = Signature(used_sorts, fns, preds)
    n = len(pieces)
    th = Theory(name, sig, tuple(NamedFormula(f"a{i + 1}", f) for i, f in enumerate(fixed[:n])))
    goal = fixed[n] if goal_text is not None else None
    return th, goal


# ------------------------------------------------------------------- render

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render_term(t: Term, ctx: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if t.fn in INFIX_FUNCTIONS and len(t.args) == 2:
        prec = INFIX_FUNCTIONS[t.fn]
        left = render_term(t.args[0], prec)
        right = render_term(t.args[1], prec + 1)
        text = f"{left} {t.fn} {right}"
        return f"({text})" if prec < ctx else text
    if not t.args:
        return t.fn
    return f"{t.fn}({', '.join(render_term(a) for a in t.args)})"


def _render(f: Formula) -> tuple[str, int, bool]:
    """Text, precedence level (5 = atomic/unary) and whether the text is right-open."""
    if isinstance(f, Pred):
        if f.name in INFIX_PREDICATES and len(f.args) == 2:
            return f"{render_term(f.args[0])} {f.name} {render_term(f.args[1])}", 5, False
        if not f.args:
            return f.name, 5, False
        return f"{f.name}({', '.join(render_term(a) for a in f.args)})", 5, False
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}", 5, False
    if isinstance(f, Verum):
        return "true", 5, False
    if isinstance(f, Falsum):
        return "false", 5, False
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{render_term(f.body.left)} != {render_term(f.body.right)}", 5, False
        text, prec, open_ = _render(f.body)
        if prec < 5:
            return f"~({text})", 5, False
        return f"~{text}", 5, open_
    if isinstance(f, (Forall, Exists)):
        kind = type(f)
        decls = []
        g: Formula = f
        while isinstance(g, kind):
            decls.append(f"{g.var.name}:{g.var.sort}")
            g = g.body
        body, _, _ = _render(g)
        word = "forall" if kind is Forall else "exists"
        return f"{word} {', '.join(decls)}. {body}", 0, True
    prec = _PREC[type(f)]
    lt, lp, lo = _render(f.left)
    rt, rp, ro = _render(f.right)
    right_assoc = isinstance(f, Implies)
    if lp < prec or (lp == prec and right_assoc) or lo:
        lt = f"({lt})"
    if rp < prec or (rp == prec and not right_assoc):
        if rp != 0:
            rt = f"({rt})"
            ro = False
    return f"{lt} {_OPS[type(f)]} {rt}", prec, ro


def render(f: Formula) -> str:
    """Deterministic text for ``f`` with minimal parentheses; re-parses to an alpha-equal formula."""
    return _render(f)[0]


def render_theory(th: Theory) -> str:
    sig = th.signature
    lines = [f"theory {th.name} {{"]
    if sig.sorts:
        lines.append(f"  sorts {', '.join(sig.sorts)};")
    for fs in sig.functions.values():
        if fs.args:
            lines.append(f"  func {fs.name}: {' x '.join(fs.args)} -> {fs.result};")
        else:
            lines.append(f"  const {fs.name}: {fs.result};")
    for ps in sig.predicates.values():
        if ps.args:
            lines.append(f"  pred {ps.name}: {' x '.join(ps.args)};")
        else:
            lines.append(f"  pred {ps.name};")
    for ax in th.axioms:
        lines.append(f"  axiom {ax.label}: {render(ax.formula)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
