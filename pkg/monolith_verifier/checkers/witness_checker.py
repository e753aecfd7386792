"""
WitnessChecker: runs the descent from one element into the monolith and checks
the per-step and composed complexity bounds.
"""
from typing import Optional

from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..data_structures import WitnessReport
from ..group import FiniteGroup
from ..witness import descend, witness_report
from .base import Checker


class WitnessChecker(Checker):
    description = "Builds a witness chain for a nonidentity element of an SI nilpotent group."

    def __init__(self, name: str = "WitnessChecker", limits: Limits = DEFAULT_LIMITS):
        super().__init__(name, limits)

    def invoke(self, group: FiniteGroup, element: int, exponent_bound: Optional[int] = None,
               class_bound: Optional[int] = None) -> WitnessReport:
        """
        Args:
            group: An SI nilpotent group.
            element: Index of a nonidentity element.
            exponent_bound: Per-step bound m; defaults to the exponent of `group`.
            class_bound: k in the composed bound m^k; defaults to the class of `group`.
                Limits.complexity_cap, when set, replaces m^k.

        Returns:
            The chain as a WitnessReport. BoundViolation is raised, not reported.
        """
        chain = descend(group, element, exponent_bound, class_bound,
                        total_cap=self.limits.complexity_cap)
        report = witness_report(chain)
        logging.info("%s - %s -> %s in %d steps, complexity %d (bound %d)", self.name,
                     report.start, report.final, len(report.steps),
                     report.total_complexity, report.total_bound)
        return report
