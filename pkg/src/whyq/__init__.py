"""Why-question workbench over many-sorted first-order logic."""
from .answers import (
    Evidence, Session, ThreeValued, WhyQuestion, better, compare_theories, equivalent, is_acceptable,
    is_pointless, is_possible, nonworse, piecewise_nonworse,
)
from .budget import DEFAULT_BUDGET, Budget
from .logic import Signature, Theory, alpha_equal, canonicalize, juxtapose, split_conjunctions
from .models.finder import countermodel, find_model, smallest_model
from .models.interp import evaluate
from .parser import ParseError, parse_formula, parse_inline, parse_theory, render, render_theory
from .prover import check_proof, entails
from .tptp import export_tptp, parse_tptp

__version__ = "0.1.0"

__all__ = [
    "Budget", "DEFAULT_BUDGET", "Evidence", "ParseError", "Session", "Signature", "Theory", "ThreeValued",
    "WhyQuestion", "alpha_equal", "better", "canonicalize", "check_proof", "compare_theories",
    "countermodel", "entails", "equivalent", "evaluate", "export_tptp", "find_model", "is_acceptable",
    "is_pointless", "is_possible", "juxtapose", "nonworse", "parse_formula", "parse_inline", "parse_theory",
    "parse_tptp", "piecewise_nonworse", "render", "render_theory", "smallest_model", "split_conjunctions",
]
