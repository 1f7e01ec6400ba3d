from .clausify import Clause, Literal, clausify, clausify_problem, equality_axioms
from .proofs import Proof, ProofStep, check_proof, dump_proof, load_proof
from .resolution import Verdict, entails, refute, subsumes
from .unify import unify, unify_atoms

__all__ = [
    "Clause", "Literal", "Proof", "ProofStep", "Verdict", "check_proof", "clausify",
    "clausify_problem", "dump_proof", "entails", "equality_axioms", "load_proof",
    "refute", "subsumes", "unify", "unify_atoms",
]
