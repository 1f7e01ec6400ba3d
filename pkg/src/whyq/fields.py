"""Ordered-field axioms over a quantity sort, written without constants.

Zero is pinned down as the element with ``z + z = z`` and one as the
existential witness of axiom ``field_one_inverse``; the language has only
``+``, ``*`` and ``<``.
"""
from __future__ import annotations

from functools import lru_cache

from .logic import Formula, FuncSym, PredSym, Signature, canonicalize, conj

FIELD_AXIOM_TEXTS: tuple[tuple[str, str], ...] = (
    ("add_assoc", "forall x:Q, y:Q, z:Q. (x + y) + z = x + (y + z)"),
    ("add_comm", "forall x:Q, y:Q. x + y = y + x"),
    ("add_zero", "exists z:Q. forall x:Q. x + z = x"),
    ("add_inverse", "forall x:Q. exists y:Q. forall z:Q. (x + y) + z = z"),
    ("mul_assoc", "forall x:Q, y:Q, z:Q. (x * y) * z = x * (y * z)"),
    ("mul_comm", "forall x:Q, y:Q. x * y = y * x"),
    ("field_one_inverse",
     "exists u:Q. ~(u + u = u) & (forall x:Q. x * u = x)"
     " & (forall x:Q. ~(x + x = x) -> (exists y:Q. x * y = u))"),
    ("distrib", "forall x:Q, y:Q, z:Q. x * (y + z) = x * y + x * z"),
    ("lt_irrefl", "forall x:Q. ~(x < x)"),
    ("lt_trans", "forall x:Q, y:Q, z:Q. x < y & y < z -> x < z"),
    ("lt_total", "forall x:Q, y:Q. x < y | x = y | y < x"),
    ("lt_add", "forall x:Q, y:Q, z:Q. x < y -> x + z < y + z"),
    ("lt_mul_pos", "forall x:Q, y:Q, z:Q. z + z = z & z < x & z < y -> z < x * y"),
)


def field_signature(sort: str = "Q") -> Signature:
    return Signature(
        [sort],
        [FuncSym("+", (sort, sort), sort), FuncSym("*", (sort, sort), sort)],
        [PredSym("<", (sort, sort))],
    )


@lru_cache(maxsize=None)
def field_axioms() -> tuple[tuple[str, Formula], ...]:
    """The thirteen axioms as ``(label, formula)`` pairs."""
    from .parser import parse_formula
    sig = field_signature()
    return tuple((label, parse_formula(text, sig)) for label, text in FIELD_AXIOM_TEXTS)


def field_conjunction() -> Formula:
    """All thirteen axioms as one closed conjunction."""
    return conj([f for _, f in field_axioms()])


@lru_cache(maxsize=None)
def _canonical_field() -> frozenset[Formula]:
    return frozenset(canonicalize(f) for _, f in field_axioms())


def contains_ordered_field(formulas) -> bool:
    """True when every ordered-field axiom occurs (mod alpha) among ``formulas``.

    Conjunctions are split first, so the single-axiom packaging counts too.
    """
    from .logic import _split_formula
    have = {canonicalize(p) for f in formulas for p in _split_formula(f)}
    return _canonical_field() <= have
