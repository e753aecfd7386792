"""
Formulas about normal closures and the subdirect irreducibility sentence.

build_phi / build_psi write out, as one wide disjunction, every conjugate product
term of bounded complexity over a fixed stock of parameter variables. At the
caps the theorems call for these are astronomically large, so
evaluate_si_semantic answers the same sentence with witness searches instead.
"""
import itertools
from typing import List

import numpy as np
from absl import logging

from ..config import DEFAULT_LIMITS
from ..data_structures import DefinabilityReport
from ..errors import BadParameter, FormulaTooLarge, WrongFreeVariables
from ..group import FiniteGroup
from ..lattice import analysis_for
from ..witness import reachability
from .parser import parse
from .syntax import (
    And,
    Equation,
    Exists,
    ForAll,
    Formula,
    GroupTerm,
    Implies,
    Inverse,
    Not,
    One,
    Product,
    Variable,
    commutator_term,
    disjunction,
    free_variables,
    product,
    rename_free,
)

X, Y = "x", "y"


def count_disjuncts(num_vars: int, complexity_cap: int) -> int:
    """sum over n <= cap of (2 * num_vars)^n."""
    return sum((2 * num_vars) ** n for n in range(complexity_cap + 1))


def _conjugate_factor(param: str, sign: int) -> GroupTerm:
    base = Variable(Y) if sign > 0 else Inverse(Variable(Y))
    return Product(Product(Variable(param), base), Inverse(Variable(param)))


def _conjugate_product_terms(params: List[str], complexity_cap: int):
    choices = [(p, sign) for p in params for sign in (1, -1)]
    for n in range(complexity_cap + 1):
        for factors in itertools.product(choices, repeat=n):
            yield product(*(_conjugate_factor(p, sign) for p, sign in factors))


def build_phi(r: int, complexity_cap: int,
              max_disjuncts: int = DEFAULT_LIMITS.max_disjuncts) -> Formula:
    """
    exists u0 ... u_{r-1}. OR over conjugate product terms t: t(y, u) = x.

    Terms have at most complexity_cap factors; a factor may use any of the r
    parameters, so parameters repeat across factors. Free variables are x and y.
    """
    if r < 1 or complexity_cap < 0:
        raise BadParameter(f"need r >= 1 and complexity_cap >= 0, got r={r}, cap={complexity_cap}")
    count = count_disjuncts(r, complexity_cap)
    if count > max_disjuncts:
        raise FormulaTooLarge(
            f"{count} disjuncts for {r} variables at complexity {complexity_cap} exceeds "
            f"{max_disjuncts}; use evaluate_si_semantic instead")
    params = [f"u{i}" for i in range(r)]
    body = disjunction(Equation(term, Variable(X))
                       for term in _conjugate_product_terms(params, complexity_cap))
    logging.debug("build_phi - %d disjuncts over %d parameters", count, r)
    for param in reversed(params):
        body = Exists(param, body)
    return body


def build_psi(num_vars: int, complexity_cap: int,
              max_disjuncts: int = DEFAULT_LIMITS.max_disjuncts) -> Formula:
    """Same construction as build_phi with num_vars (m^k in the descent) parameters."""
    return build_phi(num_vars, complexity_cap, max_disjuncts)


def build_si_sentence(phi: Formula, psi: Formula) -> Formula:
    """
    exists u. u != 1 & forall z. (z != 1 -> exists x. phi(u, x) & psi(x, z)).

    phi and psi may only have x and y free.
    """
    for label, formula in (("phi", phi), ("psi", psi)):
        extra = free_variables(formula) - {X, Y}
        if extra:
            raise WrongFreeVariables(f"{label} has free variables {sorted(extra)} besides x, y")
    phi_ux = rename_free(phi, {X: "u", Y: "x"})
    psi_xz = rename_free(psi, {X: "x", Y: "z"})
    u, z = Variable("u"), Variable("z")
    inner = Exists("x", And((phi_ux, psi_xz)))
    return Exists("u", And((Not(Equation(u, One())),
                            ForAll("z", Implies(Not(Equation(z, One())), inner)))))


def evaluate_si_semantic(G: FiniteGroup, r: int, psi_cap: int) -> bool:
    """
    The SI sentence with phi(u, x) read as "u is reached from x by a term of
    complexity <= r" and psi(x, z) as "x is reached from z within psi_cap".
    """
    if G.order == 1:
        return False
    dist = reachability(G, max(r, psi_cap))
    reached = dist >= 0
    phi_ux = (reached & (dist <= r)).T            # [u, x]
    psi_xz = (reached & (dist <= psi_cap)).T      # [x, z]
    linked = (phi_ux.astype(np.int64) @ psi_xz.astype(np.int64)) > 0   # [u, z]
    holds = linked[1:, 1:].all(axis=1)
    logging.debug("evaluate_si_semantic - %r r=%d psi_cap=%d: %d candidate u",
                  G, r, psi_cap, int(holds.sum()))
    return bool(holds.any())


def definable_normal_closures(G: FiniteGroup, r: int, psi_cap: int) -> DefinabilityReport:
    """
    Checks that phi(x, a) defines a^G for every atom a^G and, when G is SI,
    that psi(a, b) finds for every nonidentity b a nonidentity a with a^G
    defined by phi. phi and psi are read as in evaluate_si_semantic.
    """
    if r < 1 or psi_cap < 0:
        raise BadParameter(f"need r >= 1 and psi_cap >= 0, got r={r}, psi_cap={psi_cap}")
    record = analysis_for(G)
    dist = reachability(G, max(r, psi_cap))
    reached = dist >= 0
    phi_sets = reached & (dist <= r)              # [a, x]: phi(x, a)
    closures = np.stack([record.principal_closures[a].to_flags() for a in range(G.order)])
    defines = (phi_sets == closures).all(axis=1)
    atom_masks = {A.mask for A in record.atoms}
    undefined_atoms = [a for a in range(1, G.order)
                       if record.principal_closures[a].mask in atom_masks and not defines[a]]
    psi_ba = reached & (dist <= psi_cap)          # [b, a]: psi(a, b)
    found = (psi_ba[1:, 1:] & defines[None, 1:]).any(axis=1)
    unreached = [b for b in range(1, G.order) if not found[b - 1]]
    report = DefinabilityReport(
        group=G.label,
        order=G.order,
        r=r,
        psi_cap=psi_cap,
        subdirectly_irreducible=record.monolith is not None,
        defined_generators=[G.name(a) for a in range(1, G.order) if defines[a]],
        undefined_atom_generators=[G.name(a) for a in undefined_atoms],
        unreached=[G.name(b) for b in unreached],
    )
    if not report.passed:
        logging.warning("definable_normal_closures - %r r=%d psi_cap=%d: atoms undefined %s, unreached %s",
                        G, r, psi_cap, report.undefined_atom_generators, report.unreached[:5])
    return report


# --- library formulas ---------------------------------------------------------

def conjugation_formula() -> Formula:
    """exists z. x = z*y*z', the simplest normal closure formula."""
    return parse("exists z. x = z * y * z'")


def center_formula() -> Formula:
    return parse("forall y. x * y = y * x & !(x = 1)")


def inverse_sentence() -> Formula:
    return parse("forall x. exists y. x * y = 1")


def commutativity_sentence() -> Formula:
    return parse("forall x. forall y. x * y = y * x")


def class_identity_sentence(k: int) -> Formula:
    """forall x1 ... x_{k+1}. [[...[x1, x2], ...], x_{k+1}] = 1."""
    if k < 0:
        raise BadParameter(f"class must be nonnegative, got {k}")
    names = [f"x{i}" for i in range(1, k + 2)]
    term: GroupTerm = Variable(names[0])
    for name in names[1:]:
        term = commutator_term(term, Variable(name))
    formula: Formula = Equation(term, One())
    for name in reversed(names):
        formula = ForAll(name, formula)
    return formula


def exponent_sentence(m: int) -> Formula:
    """forall x. x^m = 1."""
    if m < 1:
        raise BadParameter(f"exponent must be positive, got {m}")
    return ForAll("x", Equation(product(*([Variable("x")] * m)), One()))
