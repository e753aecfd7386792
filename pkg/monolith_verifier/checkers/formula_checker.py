"""
FormulaChecker: parses a formula and evaluates it, or computes the set it defines.
"""
from typing import Dict, Optional

from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..data_structures import FormulaReport
from ..folog import defined_set, evaluate, free_variables, parse, to_text
from ..group import FiniteGroup, element_index
from .base import Checker


class FormulaChecker(Checker):
    description = "Model checks a first-order formula on a finite group."

    def __init__(self, name: str = "FormulaChecker", limits: Limits = DEFAULT_LIMITS,
                 strategy: str = "auto"):
        super().__init__(name, limits)
        self.strategy = strategy

    def invoke(self, group: FiniteGroup, formula_text: str, free: Optional[str] = None,
               bindings: Optional[Dict[str, str]] = None) -> FormulaReport:
        """
        Args:
            group: The structure to evaluate in.
            formula_text: Concrete syntax, e.g. "forall x. exists y. x*y = 1".
            free: When given, report the set defined by the formula in this variable.
            bindings: Variable name to element name or index for the other free variables.

        Returns:
            A FormulaReport with either `value` or `defined_set` filled in.
        """
        phi = parse(formula_text)
        bindings = dict(bindings or {})
        assignment = {var: element_index(group, token) for var, token in bindings.items()}
        report = FormulaReport(
            group=group.label,
            formula=to_text(phi),
            free_variables=sorted(free_variables(phi)),
            bindings={var: group.name(value) for var, value in sorted(assignment.items())},
        )
        if free is not None:
            members = defined_set(group, phi, free, assignment,
                                  strategy=self.strategy, limits=self.limits)
            report.defined_set = members.names()
            logging.info("%s - formula defines %d elements of %s", self.name, len(members), group.label)
        else:
            report.value = evaluate(group, phi, assignment, strategy=self.strategy, limits=self.limits)
            logging.info("%s - formula is %s in %s", self.name, report.value, group.label)
        return report
