"""The shipped SpecRel theories and the NoFTL goal."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..logic import Formula, Signature, Theory, split_conjunctions
from ..parser import parse_formula, parse_theory


def data_text(name: str) -> str:
    return resources.files("whyq.specrel").joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def specrel_theory() -> Theory:
    return parse_theory(data_text("specrel.why"), "specrel.why")


@lru_cache(maxsize=None)
def specrel0_theory() -> Theory:
    th = parse_theory(data_text("specrel0.why"), "specrel0.why")
    full = specrel_theory()
    assert all(full.member(f) is not None for f in th.formulas), "SpecRel0 must be a subset of SpecRel"
    return th


def specrel_signature() -> Signature:
    return specrel_theory().signature


@lru_cache(maxsize=None)
def noftl_formula() -> Formula:
    return parse_formula(data_text("noftl.txt"), specrel_signature(), file="noftl.txt")


def specrel_split() -> Theory:
    """SpecRel with AxField broken into its thirteen field and order axioms."""
    return split_conjunctions(specrel_theory(), name="SpecRelSplit")
