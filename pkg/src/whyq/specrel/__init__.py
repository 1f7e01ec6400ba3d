from .theories import noftl_formula, specrel0_theory, specrel_signature, specrel_split, specrel_theory

__all__ = ["noftl_formula", "specrel0_theory", "specrel_signature", "specrel_split", "specrel_theory"]
