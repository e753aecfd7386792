"""Pipeline components, one per report kind."""
from .atom_bound_checker import AtomBoundChecker
from .axiom_checker import AxiomChecker, max_chief_factor, variety_parameters
from .base import Checker
from .formula_checker import FormulaChecker
from .structure_checker import StructureChecker
from .witness_checker import WitnessChecker

__all__ = [
    "AtomBoundChecker",
    "AxiomChecker",
    "Checker",
    "FormulaChecker",
    "StructureChecker",
    "WitnessChecker",
    "max_chief_factor",
    "variety_parameters",
]
