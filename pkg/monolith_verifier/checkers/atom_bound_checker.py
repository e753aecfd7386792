"""
AtomBoundChecker: every member of an atom c^H is reached from c by a conjugate
product term of complexity at most r.
"""
from typing import List, Optional

from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..data_structures import AtomBoundReport
from ..group import FiniteGroup
from ..lattice import analysis_for
from ..witness import atom_bound_check
from .base import Checker


class AtomBoundChecker(Checker):
    description = "Checks minimal witness complexities inside each atom against r and |atom|."

    def __init__(self, name: str = "AtomBoundChecker", limits: Limits = DEFAULT_LIMITS):
        super().__init__(name, limits)

    def invoke(self, group: FiniteGroup, r: Optional[int] = None,
               neumann_bound: Optional[int] = None) -> List[AtomBoundReport]:
        """One report per atom, generated by its smallest nonidentity element; r defaults to |atom|."""
        reports = []
        for atom in analysis_for(group, self.limits).atoms:
            generator = atom.elements[1]
            report = atom_bound_check(group, generator, r if r is not None else len(atom),
                                      neumann_bound)
            if not report.passed:
                logging.warning("%s - atom of size %d in %r needs complexity %d", self.name,
                                report.atom_size, group, report.max_complexity)
            reports.append(report)
        return reports
