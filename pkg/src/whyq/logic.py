"""Many-sorted first-order syntax: terms, formulas, signatures and theories.

Every value here is immutable. Sorts are plain strings; terms carry their
sort so that unification and evaluation never need to consult a signature.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union


class LogicError(Exception):
    pass


class SortError(LogicError):
    pass


class SignatureConflict(LogicError):
    def __init__(self, symbol: str, first: object, second: object) -> None:
        super().__init__(f"symbol {symbol!r} declared with conflicting profiles {first} and {second}")
        self.symbol = symbol


class DuplicateAxiom(LogicError):
    pass


# --------------------------------------------------------------------- terms

@dataclass(frozen=True, slots=True)
class Var:
    name: str
    sort: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    fn: str
    args: tuple[Term, ...]
    sort: str

    def __str__(self) -> str:
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(map(str, self.args))})"


Term = Union[Var, App]


def const(name: str, sort: str) -> App:
    return App(name, (), sort)


# ------------------------------------------------------------------ formulas

@dataclass(frozen=True, slots=True)
class Pred:
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Verum:
    pass


@dataclass(frozen=True, slots=True)
class Falsum:
    pass


@dataclass(frozen=True, slots=True)
class Not:
    body: Formula


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Forall:
    var: Var
    body: Formula


@dataclass(frozen=True, slots=True)
class Exists:
    var: Var
    body: Formula


Formula = Union[Pred, Eq, Verum, Falsum, Not, And, Or, Implies, Iff, Forall, Exists]
Binary = (And, Or, Implies, Iff)
Quantifier = (Forall, Exists)
Atom = (Pred, Eq)

TRUE = Verum()
FALSE = Falsum()


def conj(parts: Sequence[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def forall(variables: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Forall(v, body)
    return body


def exists(variables: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Exists(v, body)
    return body


# ------------------------------------------------------------ free variables

def term_vars(t: Term) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    else:
        for a in t.args:
            yield from term_vars(a)


def free_vars(f: Formula) -> frozenset[Var]:
    if isinstance(f, Pred):
        return frozenset(v for a in f.args for v in term_vars(a))
    if isinstance(f, Eq):
        return frozenset(itertools.chain(term_vars(f.left), term_vars(f.right)))
    if isinstance(f, (Verum, Falsum)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def all_var_names(f: Formula) -> set[str]:
    """Names of every variable occurring in ``f``, free or bound."""
    out: set[str] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, Pred):
            out.update(v.name for a in g.args for v in term_vars(a))
        elif isinstance(g, Eq):
            out.update(v.name for v in term_vars(g.left))
            out.update(v.name for v in term_vars(g.right))
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, Binary):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quantifier):
            out.add(g.var.name)
            walk(g.body)

    walk(f)
    return out


def formula_size(f: Formula) -> int:
    if isinstance(f, Pred):
        return 1 + sum(term_size(a) for a in f.args)
    if isinstance(f, Eq):
        return 1 + term_size(f.left) + term_size(f.right)
    if isinstance(f, (Verum, Falsum)):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.body)
    if isinstance(f, Binary):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1 + formula_size(f.body)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


# ----------------------------------------------------------------- signature

@dataclass(frozen=True)
class FuncSym:
    name: str
    args: tuple[str, ...]
    result: str

    def __str__(self) -> str:
        if not self.args:
            return f"{self.name}: {self.result}"
        return f"{self.name}: {' x '.join(self.args)} -> {self.result}"


@dataclass(frozen=True)
class PredSym:
    name: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.name}: {' x '.join(self.args)}" if self.args else self.name


class Signature:
    """Declared sorts, function symbols (constants are 0-ary) and relation symbols."""

    __slots__ = ("sorts", "functions", "predicates")

    def __init__(
        self,
        sorts: Iterable[str] = (),
        functions: Iterable[FuncSym] = (),
        predicates: Iterable[PredSym] = (),
    ) -> None:
        sort_list: list[str] = []
        for s in sorts:
            if not s:
                raise LogicError("empty sort name")
            if s not in sort_list:
                sort_list.append(s)
        fns: dict[str, FuncSym] = {}
        preds: dict[str, PredSym] = {}
        for sym in functions:
            _add_symbol(fns, preds, sym)
        for sym in predicates:
            _add_symbol(fns, preds, sym)
        for sym in itertools.chain(fns.values(), preds.values()):
            profile = sym.args + ((sym.result,) if isinstance(sym, FuncSym) else ())
            for s in profile:
                if s not in sort_list:
                    raise LogicError(f"symbol {sym.name!r} uses undeclared sort {s!r}")
        object.__setattr__(self, "sorts", tuple(sort_list))
        object.__setattr__(self, "functions", MappingProxyType(fns))
        object.__setattr__(self, "predicates", MappingProxyType(preds))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Signature is immutable")

    def _key(self) -> tuple:
        return (
            frozenset(self.sorts),
            frozenset(self.functions.values()),
            frozenset(self.predicates.values()),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        parts = list(self.sorts) + [str(f) for f in self.functions.values()]
        parts += [str(p) for p in self.predicates.values()]
        return f"Signature({'; '.join(parts)})"

    def constants(self, sort: str | None = None) -> list[FuncSym]:
        return [f for f in self.functions.values()
                if not f.args and (sort is None or f.result == sort)]

    def extend(self, functions: Iterable[FuncSym] = (), predicates: Iterable[PredSym] = (),
               sorts: Iterable[str] = ()) -> Signature:
        return Signature(
            list(self.sorts) + list(sorts),
            list(self.functions.values()) + list(functions),
            list(self.predicates.values()) + list(predicates),
        )


def _add_symbol(fns: dict, preds: dict, sym: FuncSym | PredSym) -> None:
    existing = fns.get(sym.name) or preds.get(sym.name)
    if existing is not None and existing != sym:
        raise SignatureConflict(sym.name, existing, sym)
    (fns if isinstance(sym, FuncSym) else preds)[sym.name] = sym


EMPTY_SIGNATURE = Signature()


def signature_union(s1: Signature, s2: Signature) -> Signature:
    """Union of sorts and symbols. A name shared with different profiles is an error."""
    return Signature(
        list(s1.sorts) + list(s2.sorts),
        list(s1.functions.values()) + list(s2.functions.values()),
        list(s1.predicates.values()) + list(s2.predicates.values()),
    )


def signature_of(formulas: Iterable[Formula], sorts: Iterable[str] = ()) -> Signature:
    """The smallest signature in which every given formula is well-sorted."""
    sort_list = list(sorts)
    fns: dict[str, FuncSym] = {}
    preds: dict[str, PredSym] = {}

    def see_sort(s: str) -> None:
        if s not in sort_list:
            sort_list.append(s)

    def term(t: Term) -> None:
        see_sort(t.sort)
        if isinstance(t, App):
            for a in t.args:
                term(a)
            _add_symbol(fns, preds, FuncSym(t.fn, tuple(a.sort for a in t.args), t.sort))

    for f in formulas:
        for sub in subformulas(f):
            if isinstance(sub, Pred):
                for a in sub.args:
                    term(a)
                _add_symbol(fns, preds, PredSym(sub.name, tuple(a.sort for a in sub.args)))
            elif isinstance(sub, Eq):
                term(sub.left)
                term(sub.right)
            elif isinstance(sub, Quantifier):
                see_sort(sub.var.sort)
    return Signature(sort_list, fns.values(), preds.values())


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, Binary):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Quantifier):
            stack.append(g.body)


# ------------------------------------------------------------ well-sortedness

@dataclass(frozen=True)
class SortDiagnostic:
    path: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        where = "/".join(self.path) or "<root>"
        return f"{where}: {self.message}"


def well_sorted(sig: Signature, f: Formula) -> list[SortDiagnostic]:
    """Every sorting violation in ``f`` over ``sig``; an empty list means well-sorted."""
    out: list[SortDiagnostic] = []

    def check_term(t: Term, path: tuple[str, ...]) -> None:
        if t.sort not in sig.sorts:
            out.append(SortDiagnostic(path, f"undeclared sort {t.sort!r}"))
        if isinstance(t, Var):
            return
        sym = sig.functions.get(t.fn)
        if sym is None:
            out.append(SortDiagnostic(path, f"unknown function symbol {t.fn!r}"))
        else:
            if len(sym.args) != len(t.args):
                out.append(SortDiagnostic(
                    path, f"{t.fn} expects {len(sym.args)} arguments, got {len(t.args)}"))
            if sym.result != t.sort:
                out.append(SortDiagnostic(path, f"{t.fn} has sort {sym.result}, term claims {t.sort}"))
            for i, (a, want) in enumerate(zip(t.args, sym.args)):
                if a.sort != want:
                    out.append(SortDiagnostic(
                        path + (f"arg{i}",), f"{t.fn} argument {i} must be {want}, got {a.sort}"))
        for i, a in enumerate(t.args):
            check_term(a, path + (f"arg{i}",))

    def walk(g: Formula, path: tuple[str, ...], bound: dict[str, str]) -> None:
        if isinstance(g, Pred):
            sym = sig.predicates.get(g.name)
            if sym is None:
                out.append(SortDiagnostic(path, f"unknown relation symbol {g.name!r}"))
            else:
                if len(sym.args) != len(g.args):
                    out.append(SortDiagnostic(
                        path, f"{g.name} expects {len(sym.args)} arguments, got {len(g.args)}"))
                for i, (a, want) in enumerate(zip(g.args, sym.args)):
                    if a.sort != want:
                        out.append(SortDiagnostic(
                            path + (f"arg{i}",), f"{g.name} argument {i} must be {want}, got {a.sort}"))
            for i, a in enumerate(g.args):
                check_term(a, path + (f"arg{i}",))
        elif isinstance(g, Eq):
            if g.left.sort != g.right.sort:
                out.append(SortDiagnostic(path, f"equality between sorts {g.left.sort} and {g.right.sort}"))
            check_term(g.left, path + ("lhs",))
            check_term(g.right, path + ("rhs",))
        elif isinstance(g, Not):
            walk(g.body, path + ("not",), bound)
        elif isinstance(g, Binary):
            walk(g.left, path + ("left",), bound)
            walk(g.right, path + ("right",), bound)
        elif isinstance(g, Quantifier):
            if g.var.sort not in sig.sorts:
                out.append(SortDiagnostic(path, f"variable {g.var.name} has undeclared sort {g.var.sort!r}"))
            walk(g.body, path + (f"{type(g).__name__.lower()} {g.var.name}",), bound)

    walk(f, (), {})
    return out


def check_well_sorted(sig: Signature, f: Formula) -> None:
    diags = well_sorted(sig, f)
    if diags:
        raise SortError("; ".join(map(str, diags)))


# -------------------------------------------------------------- substitution

Binding = Mapping[Var, Term]


def subst_term(t: Term, binding: Binding) -> Term:
    if isinstance(t, Var):
        return binding.get(t, t)
    if not t.args:
        return t
    return App(t.fn, tuple(subst_term(a, binding) for a in t.args), t.sort)


def fresh_name(base: str, taken: set[str]) -> str:
    root = base.rstrip("'0123456789_") or "v"
    for i in itertools.count(1):
        cand = f"{root}{i}"
        if cand not in taken:
            return cand
    raise AssertionError("unreachable")


def substitute(f: Formula, binding: Binding) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    for v, t in binding.items():
        if v.sort != t.sort:
            raise SortError(f"cannot bind {v.name}:{v.sort} to a term of sort {t.sort}")
    return _subst(f, dict(binding))


def _subst(f: Formula, binding: dict[Var, Term]) -> Formula:
    if not binding:
        return f
    if isinstance(f, Pred):
        return Pred(f.name, tuple(subst_term(a, binding) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, binding), subst_term(f.right, binding))
    if isinstance(f, (Verum, Falsum)):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, binding))
    if isinstance(f, Binary):
        return type(f)(_subst(f.left, binding), _subst(f.right, binding))
    # quantifier
    inner = {v: t for v, t in binding.items() if v != f.var}
    fv_body = free_vars(f.body)
    inner = {v: t for v, t in inner.items() if v in fv_body}
    if not inner:
        return f
    incoming = {w.name for t in inner.values() for w in term_vars(t)}
    var = f.var
    if var.name in incoming:
        taken = incoming | all_var_names(f.body) | {v.name for v in inner}
        var = Var(fresh_name(var.name, taken), var.sort)
        inner[f.var] = var
    return type(f)(var, _subst(f.body, inner))


# ----------------------------------------------------- alpha / canonical form

def canonicalize(f: Formula) -> Formula:
    """Rename bound variables to ``_b0, _b1, ...`` in binding order.

    Free variables keep their names. Two formulas are alpha-equal exactly when
    their canonical forms are syntactically equal.
    """
    counter = itertools.count()
    reserved = {v.name for v in free_vars(f)}

    def fresh() -> str:
        while True:
            name = f"_b{next(counter)}"
            if name not in reserved:
                return name

    def walk(g: Formula, ren: dict[Var, Var]) -> Formula:
        if isinstance(g, Pred):
            return Pred(g.name, tuple(subst_term(a, ren) for a in g.args)) if ren else g
        if isinstance(g, Eq):
            return Eq(subst_term(g.left, ren), subst_term(g.right, ren)) if ren else g
        if isinstance(g, (Verum, Falsum)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body, ren))
        if isinstance(g, Binary):
            return type(g)(walk(g.left, ren), walk(g.right, ren))
        new = Var(fresh(), g.var.sort)
        return type(g)(new, walk(g.body, {**ren, g.var: new}))

    return walk(f, {})


def alpha_equal(f1: Formula, f2: Formula) -> bool:
    return canonicalize(f1) == canonicalize(f2)


# -------------------------------------------------------------------- theory

@dataclass(frozen=True)
class NamedFormula:
    label: str
    formula: Formula


@dataclass(frozen=True)
class Theory:
    """A named, finite, ordered axiom list. Not closed under consequence."""

    name: str
    signature: Signature
    axioms: tuple[NamedFormula, ...] = ()
    _canon: tuple[Formula, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        axioms = tuple(self.axioms)
        object.__setattr__(self, "axioms", axioms)
        labels: set[str] = set()
        seen: dict[Formula, str] = {}
        canon = []
        for ax in axioms:
            if ax.label in labels:
                raise DuplicateAxiom(f"duplicate axiom label {ax.label!r} in theory {self.name}")
            labels.add(ax.label)
            diags = well_sorted(self.signature, ax.formula)
            if diags:
                raise SortError(f"axiom {ax.label}: " + "; ".join(map(str, diags)))
            c = canonicalize(ax.formula)
            if c in seen:
                raise DuplicateAxiom(f"axioms {seen[c]!r} and {ax.label!r} are alpha-equivalent")
            seen[c] = ax.label
            canon.append(c)
        object.__setattr__(self, "_canon", tuple(canon))

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self) -> Iterator[NamedFormula]:
        return iter(self.axioms)

    @property
    def labels(self) -> list[str]:
        return [a.label for a in self.axioms]

    @property
    def formulas(self) -> list[Formula]:
        return [a.formula for a in self.axioms]

    def axiom(self, label: str) -> Formula:
        for a in self.axioms:
            if a.label == label:
                return a.formula
        raise KeyError(label)

    def member(self, f: Formula) -> str | None:
        """Label of an axiom alpha-equal to ``f``, if any."""
        c = canonicalize(f)
        for ax, cf in zip(self.axioms, self._canon):
            if cf == c:
                return ax.label
        return None

    def canonical_set(self) -> frozenset[Formula]:
        return frozenset(self._canon)

    def lift(self, sig: Signature) -> Theory:
        """The same axioms over a larger signature."""
        return Theory(self.name, signature_union(self.signature, sig), self.axioms)

    def with_axioms(self, axioms: Iterable[NamedFormula], name: str | None = None) -> Theory:
        return Theory(name or self.name, self.signature, tuple(axioms))

    def without(self, label: str, name: str | None = None) -> Theory:
        return self.with_axioms([a for a in self.axioms if a.label != label], name)


def make_theory(name: str, sig: Signature, axioms: Iterable[NamedFormula], dedupe: bool = True) -> Theory:
    """Build a theory, dropping alpha-duplicates (first occurrence wins) when ``dedupe``."""
    if not dedupe:
        return Theory(name, sig, tuple(axioms))
    kept: list[NamedFormula] = []
    seen: set[Formula] = set()
    labels: set[str] = set()
    for ax in axioms:
        c = canonicalize(ax.formula)
        if c in seen:
            continue
        seen.add(c)
        label = ax.label
        n = 1
        while label in labels:
            n += 1
            label = f"{ax.label}_{n}"
        labels.add(label)
        kept.append(NamedFormula(label, ax.formula))
    return Theory(name, sig, tuple(kept))


def _split_formula(f: Formula) -> list[Formula]:
    prefix: list[Var] = []
    body = f
    while isinstance(body, Forall):
        prefix.append(body.var)
        body = body.body
    if not isinstance(body, And):
        return [f]
    out: list[Formula] = []
    for part in (body.left, body.right):
        for piece in _split_formula(part):
            out.append(forall(prefix, piece))
    return out


def split_conjunctions(th: Theory, name: str | None = None) -> Theory:
    """Replace every conjunctive axiom by its conjuncts.

    One leading block of universal quantifiers is distributed over the
    conjunction; nothing is split under existentials or inside implications.
    Labels of split pieces get ``_1``, ``_2``, ... suffixes.
    """
    pieces: list[NamedFormula] = []
    for ax in th.axioms:
        parts = _split_formula(ax.formula)
        if len(parts) == 1:
            pieces.append(ax)
        else:
            pieces.extend(NamedFormula(f"{ax.label}_{i}", p) for i, p in enumerate(parts, 1))
    return make_theory(name or th.name, th.signature, pieces)


def juxtapose(t1: Theory, t2: Theory, name: str | None = None) -> Theory:
    """Both axiom lists over the union signature, labels prefixed by theory name."""
    sig = signature_union(t1.signature, t2.signature)
    axioms = [NamedFormula(f"{t1.name}.{a.label}", a.formula) for a in t1.axioms]
    axioms += [NamedFormula(f"{t2.name}.{a.label}", a.formula) for a in t2.axioms]
    return make_theory(name or f"{t1.name}+{t2.name}", sig, axioms)


def map_formula(f: Formula, atom_fn: Callable[[Formula], Formula]) -> Formula:
    """Rebuild ``f`` with every atom replaced by ``atom_fn(atom)``."""
    if isinstance(f, (Pred, Eq)):
        return atom_fn(f)
    if isinstance(f, (Verum, Falsum)):
        return f
    if isinstance(f, Not):
        return Not(map_formula(f.body, atom_fn))
    if isinstance(f, Binary):
        return type(f)(map_formula(f.left, atom_fn), map_formula(f.right, atom_fn))
    return type(f)(f.var, map_formula(f.body, atom_fn))
