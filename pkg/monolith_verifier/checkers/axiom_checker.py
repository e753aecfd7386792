"""
AxiomChecker: compares the semantic SI sentence with the lattice SI flag on
sampled members of V(G), and checks on each member that phi defines the atoms
and, in SI members, psi leads every nonidentity element to one whose normal
closure phi defines.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..construct import VarietyMember
from ..data_structures import AxiomReport, MemberVerdict
from ..errors import NotNilpotent
from ..folog import definable_normal_closures, evaluate_si_semantic
from ..group import FiniteGroup, exponent
from ..lattice import analysis_for, nilpotency_class
from ..witness import reachability
from .base import Checker


def variety_parameters(G: FiniteGroup) -> Tuple[int, int]:
    """(m, k): exponent and nilpotency class of the generating group."""
    k = nilpotency_class(G)
    if k is None:
        raise NotNilpotent(f"{G!r} is not nilpotent; its upper central series stalls")
    return exponent(G), k


def max_chief_factor(members: Sequence[VarietyMember]) -> int:
    return max((size for m in members for size in analysis_for(m.group).chief_factor_sizes), default=1)


class AxiomChecker(Checker):
    description = ("Checks that the SI sentence holds exactly in the SI members of the sample "
                   "and that phi and psi define their principal normal subgroups.")

    def __init__(self, name: str = "AxiomChecker", limits: Limits = DEFAULT_LIMITS, workers: int = 1):
        super().__init__(name, limits)
        self.workers = max(1, workers)

    def _verdict(self, index: int, member: VarietyMember, r: int, psi_cap: int) -> MemberVerdict:
        H = member.group
        si_semantic = evaluate_si_semantic(H, r, psi_cap)
        dist = reachability(H, max(r, psi_cap))
        definability = definable_normal_closures(H, r, psi_cap)
        return MemberVerdict(
            index=index,
            order=H.order,
            si_lattice=member.subdirectly_irreducible,
            si_semantic=si_semantic,
            max_witness_complexity=int(dist.max()) if dist.size else 0,
            principal_definable=definability.passed,
        )

    def invoke(self, generator: FiniteGroup, members: Sequence[VarietyMember]) -> AxiomReport:
        """
        Args:
            generator: The nilpotent group G generating the variety.
            members: Sampled members of V(G), in sample order.

        Returns:
            An AxiomReport with r the largest chief factor seen in the sample and
            psi_cap = m^k unless Limits.complexity_cap overrides it.
        """
        m, k = variety_parameters(generator)
        r = max_chief_factor(members)
        psi_cap = self.limits.complexity_cap or m ** k
        logging.info("%s - %d members, r=%d, psi_cap=%d", self.name, len(members), r, psi_cap)

        jobs = [(i, member) for i, member in enumerate(members)]
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                verdicts: List[MemberVerdict] = list(
                    pool.map(lambda job: self._verdict(job[0], job[1], r, psi_cap), jobs))
        else:
            verdicts = [self._verdict(i, member, r, psi_cap) for i, member in jobs]

        report = AxiomReport(generator=generator.label, exponent=m, nilpotency_class=k,
                             r=r, psi_cap=psi_cap, members=verdicts)
        for index in report.disagreements:
            verdict = verdicts[index]
            logging.error("%s - member %d (order %d): lattice SI=%s, sentence=%s", self.name,
                          index, verdict.order, verdict.si_lattice, verdict.si_semantic)
        for index in report.undefinable:
            logging.error("%s - member %d (order %d): principal normal subgroups not defined",
                          self.name, index, verdicts[index].order)
        return report
