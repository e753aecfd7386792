"""
StructureChecker: normal structure report for a single group.
"""
from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..data_structures import AnalysisReport
from ..group import FiniteGroup
from ..lattice import analyze
from .base import Checker


class StructureChecker(Checker):
    description = "Computes the normal subgroup lattice, central series and chief factors."

    def __init__(self, name: str = "StructureChecker", limits: Limits = DEFAULT_LIMITS):
        super().__init__(name, limits)

    def invoke(self, group: FiniteGroup) -> AnalysisReport:
        logging.debug("%s - analysing %r", self.name, group)
        report = analyze(group, self.limits)
        logging.info("%s - %s: order %d, %d normal subgroups, SI=%s", self.name,
                     report.group, report.order, report.normal_subgroup_count,
                     report.subdirectly_irreducible)
        return report
