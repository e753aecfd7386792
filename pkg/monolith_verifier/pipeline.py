"""
Defines the variety pipeline, which samples V(G) and runs the checkers over
every member in sample order.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from absl import logging

from .checkers import AtomBoundChecker, AxiomChecker, StructureChecker, variety_parameters
from .config import DEFAULT_LIMITS, Limits
from .construct import VarietyMember, sample_variety_members
from .data_structures import AxiomReport, BoundsReport, MemberBounds, MemberSummary
from .errors import BoundViolation
from .group import FiniteGroup
from .lattice import nilpotency_class
from .witness import descend

T = TypeVar("T")


class VarietyPipeline:
    """
    Runs sample -> structure -> bounds or axioms. Per-member work may use a
    thread pool; results always come back in sample order.
    """

    def __init__(self, limits: Limits = DEFAULT_LIMITS, workers: int = 1,
                 name: str = "VarietyPipeline"):
        self.name = name
        self.limits = limits
        self.workers = max(1, workers)
        self.structure_checker = StructureChecker(limits=limits)
        self.atom_checker = AtomBoundChecker(limits=limits)
        self.axiom_checker = AxiomChecker(limits=limits, workers=self.workers)

    def _map(self, func: Callable[..., T], members: Sequence[VarietyMember]) -> List[T]:
        if self.workers == 1:
            return [func(i, member) for i, member in enumerate(members)]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(func, range(len(members)), members))

    def sample(self, G: FiniteGroup, base_spec: Optional[str] = None) -> List[VarietyMember]:
        return sample_variety_members(G, self.limits, base_spec)

    def summaries(self, members: Sequence[VarietyMember]) -> List[MemberSummary]:
        def summarize(index: int, member: VarietyMember) -> MemberSummary:
            report = self.structure_checker.invoke(member.group)
            return MemberSummary(
                index=index,
                order=report.order,
                exponent=report.exponent,
                nilpotency_class=report.nilpotency_class,
                subdirectly_irreducible=report.subdirectly_irreducible,
                recipe=member.recipe.to_dict(),
            )
        return self._map(summarize, members)

    def check_axioms(self, G: FiniteGroup, base_spec: Optional[str] = None) -> AxiomReport:
        variety_parameters(G)
        members = self.sample(G, base_spec)
        report = self.axiom_checker.invoke(G, members)
        logging.info("%s - axioms: %d members, %d disagreements", self.name,
                     len(report.members), len(report.disagreements))
        return report

    def check_bounds(self, G: FiniteGroup, base_spec: Optional[str] = None) -> BoundsReport:
        """Atom witnesses against |atom| and |G|, descents against m and m^k, on every member."""
        m, k = variety_parameters(G)
        members = self.sample(G, base_spec)

        def bounds_for(index: int, member: VarietyMember) -> MemberBounds:
            return self._member_bounds(index, member, m, k, G.order)

        report = BoundsReport(generator=G.label, exponent=m, nilpotency_class=k,
                              total_bound=self.limits.complexity_cap or m ** k,
                              group_order=G.order,
                              members=self._map(bounds_for, members))
        logging.info("%s - bounds: %d members, %d violations", self.name,
                     len(report.members), len(report.violations))
        return report

    def _member_bounds(self, index: int, member: VarietyMember, m: int, k: int,
                       neumann_bound: int) -> MemberBounds:
        H = member.group
        atom_reports = self.atom_checker.invoke(H, neumann_bound=neumann_bound)
        bounds = MemberBounds(
            index=index,
            order=H.order,
            subdirectly_irreducible=member.subdirectly_irreducible,
            atom_sizes=[report.atom_size for report in atom_reports],
            atom_max_complexities=[report.max_complexity for report in atom_reports],
        )
        for report in atom_reports:
            if not report.passed:
                bounds.violations.append({"kind": "atom", "member": index, **report.to_dict()})

        if not member.subdirectly_irreducible or nilpotency_class(H) is None:
            return bounds
        for a in range(1, H.order):
            try:
                chain = descend(H, a, exponent_bound=m, class_bound=k,
                                total_cap=self.limits.complexity_cap)
            except BoundViolation as exc:
                bounds.violations.append({"kind": "descent", "member": index, **exc.record})
                continue
            bounds.descent_count += 1
            bounds.descent_max_step = max([bounds.descent_max_step] + chain.step_complexities)
            bounds.descent_max_total = max(bounds.descent_max_total, chain.composed.complexity)
        return bounds
