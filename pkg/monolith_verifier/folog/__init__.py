"""First-order formulas in the language of groups: syntax, parsing, model checking."""
from .evaluate import ArrayEvaluator, RecursiveEvaluator, defined_set, evaluate
from .formulas import (
    build_phi,
    build_psi,
    build_si_sentence,
    center_formula,
    class_identity_sentence,
    commutativity_sentence,
    conjugation_formula,
    count_disjuncts,
    definable_normal_closures,
    evaluate_si_semantic,
    exponent_sentence,
    inverse_sentence,
)
from .parser import parse
from .syntax import (
    And,
    Equation,
    Exists,
    ForAll,
    Iff,
    Implies,
    Inverse,
    Not,
    One,
    Or,
    Product,
    Variable,
    free_variables,
    rename_free,
    to_text,
)

__all__ = [
    "And", "ArrayEvaluator", "Equation", "Exists", "ForAll", "Iff", "Implies", "Inverse",
    "Not", "One", "Or", "Product", "RecursiveEvaluator", "Variable",
    "build_phi", "build_psi", "build_si_sentence", "center_formula", "class_identity_sentence",
    "commutativity_sentence", "conjugation_formula", "count_disjuncts", "definable_normal_closures",
    "defined_set",
    "evaluate", "evaluate_si_semantic", "exponent_sentence", "free_variables",
    "inverse_sentence", "parse", "rename_free", "to_text",
]
