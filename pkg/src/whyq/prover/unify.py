"""Many-sorted syntactic unification and one-way matching."""
from __future__ import annotations

from typing import Mapping

from ..logic import App, Eq, Pred, Term, Var, subst_term


def _walk(t: Term, b: Mapping[Var, Term]) -> Term:
    while isinstance(t, Var) and t in b:
        t = b[t]
    return t


def _occurs(v: Var, t: Term, b: Mapping[Var, Term]) -> bool:
    t = _walk(t, b)
    if isinstance(t, Var):
        return t == v
    return any(_occurs(v, a, b) for a in t.args)


def _unify_into(t1: Term, t2: Term, b: dict[Var, Term]) -> bool:
    stack = [(t1, t2)]
    while stack:
        a, c = stack.pop()
        a, c = _walk(a, b), _walk(c, b)
        if a == c:
            continue
        if a.sort != c.sort:
            return False
        if isinstance(a, Var):
            if _occurs(a, c, b):
                return False
            b[a] = c
        elif isinstance(c, Var):
            if _occurs(c, a, b):
                return False
            b[c] = a
        else:
            if a.fn != c.fn or len(a.args) != len(c.args):
                return False
            stack.extend(zip(a.args, c.args))
    return True


def _resolve(b: dict[Var, Term]) -> dict[Var, Term]:
    """Triangular bindings to an idempotent substitution."""
    def full(t: Term) -> Term:
        t = _walk(t, b)
        if isinstance(t, Var) or not t.args:
            return t
        return App(t.fn, tuple(full(a) for a in t.args), t.sort)
    return {v: full(t) for v, t in b.items()}


def unify(t1: Term, t2: Term) -> dict[Var, Term] | None:
    """Most general unifier of two terms, or ``None`` (occurs check or sort clash)."""
    b: dict[Var, Term] = {}
    if not _unify_into(t1, t2, b):
        return None
    return _resolve(b)


def unify_atoms(a1: Pred | Eq, a2: Pred | Eq) -> dict[Var, Term] | None:
    b: dict[Var, Term] = {}
    if isinstance(a1, Pred) and isinstance(a2, Pred):
        if a1.name != a2.name or len(a1.args) != len(a2.args):
            return None
        for x, y in zip(a1.args, a2.args):
            if not _unify_into(x, y, b):
                return None
    elif isinstance(a1, Eq) and isinstance(a2, Eq):
        if not (_unify_into(a1.left, a2.left, b) and _unify_into(a1.right, a2.right, b)):
            return None
    else:
        return None
    return _resolve(b)


def match_term(pattern: Term, target: Term, b: dict[Var, Term]) -> bool:
    """Extend ``b`` so that ``pattern`` instantiated by ``b`` equals ``target``."""
    if isinstance(pattern, Var):
        bound = b.get(pattern)
        if bound is None:
            if pattern.sort != target.sort:
                return False
            b[pattern] = target
            return True
        return bound == target
    if not isinstance(target, App) or pattern.fn != target.fn or len(pattern.args) != len(target.args):
        return False
    return all(match_term(p, t, b) for p, t in zip(pattern.args, target.args))


def match_atom(p: Pred | Eq, t: Pred | Eq, b: dict[Var, Term]) -> bool:
    if isinstance(p, Pred):
        if not isinstance(t, Pred) or p.name != t.name or len(p.args) != len(t.args):
            return False
        return all(match_term(x, y, b) for x, y in zip(p.args, t.args))
    if not isinstance(t, Eq):
        return False
    return match_term(p.left, t.left, b) and match_term(p.right, t.right, b)


def apply(t: Term, b: Mapping[Var, Term]) -> Term:
    return subst_term(t, b)
