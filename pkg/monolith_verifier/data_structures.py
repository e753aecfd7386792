"""
Defines the report structures shared by the checkers and the command line.

Every report converts to a plain dict with to_dict() so the CLI can emit
deterministic JSON.
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class AnalysisReport:
    """Normal structure of one group."""
    group: str
    order: int
    exponent: int
    nilpotency_class: Optional[int]
    nilpotent_by_sylow: bool
    center_size: int
    upper_central_series: List[int]
    lower_central_series: List[int]
    normal_subgroup_count: int
    atom_sizes: List[int]
    monolith_size: Optional[int]
    chief_factor_sizes: List[int]
    subdirectly_irreducible: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class WitnessStepReport:
    level: int
    source: str
    target: str
    term: List[List[int]]
    term_text: str
    params: List[str]
    complexity: int
    mixed: bool
    pure_sign_alternative: bool


@dataclass
class WitnessReport:
    """A descent from `start` into the monolith and its bound checks."""
    group: str
    start: str
    final: str
    steps: List[WitnessStepReport]
    step_complexities: List[int]
    composed_term: List[List[int]]
    composed_text: str
    composed_params: List[str]
    total_complexity: int
    direct_minimum: Optional[int]
    exponent_bound: int
    class_bound: int
    total_bound: int
    step_bound_ok: bool
    total_bound_ok: bool
    final_in_monolith: bool

    @property
    def passed(self) -> bool:
        return self.step_bound_ok and self.total_bound_ok and self.final_in_monolith

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["passed"] = self.passed
        return payload


@dataclass
class AtomBoundReport:
    """Minimal witness complexities over one atom c^H."""
    group: str
    generator: str
    atom_size: int
    r: int
    complexities: Dict[str, int]
    max_complexity: int
    neumann_bound: Optional[int] = None

    @property
    def within_r(self) -> bool:
        return self.max_complexity <= self.r

    @property
    def within_atom_size(self) -> bool:
        return self.max_complexity <= self.atom_size

    @property
    def within_neumann(self) -> bool:
        return self.neumann_bound is None or self.atom_size <= self.neumann_bound

    @property
    def passed(self) -> bool:
        return self.within_r and self.within_atom_size and self.within_neumann

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload.update(within_r=self.within_r, within_atom_size=self.within_atom_size,
                       within_neumann=self.within_neumann, passed=self.passed)
        return payload


@dataclass
class MemberSummary:
    """One sampled member of V(G) with its provenance."""
    index: int
    order: int
    exponent: int
    nilpotency_class: Optional[int]
    subdirectly_irreducible: bool
    recipe: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class DefinabilityReport:
    """
    Which principal normal subgroups phi(x, a) defines in one group.

    phi reads "x is reached from a within r" and psi(a, b) reads "a is reached
    from b within psi_cap". Every atom generator must be defined; in an SI group
    every nonidentity b must also reach, under psi, a nonidentity a whose
    closure phi defines.
    """
    group: str
    order: int
    r: int
    psi_cap: int
    subdirectly_irreducible: bool
    defined_generators: List[str]
    undefined_atom_generators: List[str]
    unreached: List[str]

    @property
    def atoms_defined(self) -> bool:
        return not self.undefined_atom_generators

    @property
    def passed(self) -> bool:
        return self.atoms_defined and not (self.subdirectly_irreducible and self.unreached)

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["atoms_defined"] = self.atoms_defined
        payload["passed"] = self.passed
        return payload


@dataclass
class MemberVerdict:
    """Semantic SI sentence against the lattice SI flag for one member."""
    index: int
    order: int
    si_lattice: bool
    si_semantic: bool
    max_witness_complexity: int
    principal_definable: bool = True

    @property
    def agrees(self) -> bool:
        return self.si_lattice == self.si_semantic

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["agrees"] = self.agrees
        return payload


@dataclass
class AxiomReport:
    generator: str
    exponent: int
    nilpotency_class: int
    r: int
    psi_cap: int
    members: List[MemberVerdict] = field(default_factory=list)

    @property
    def disagreements(self) -> List[int]:
        return [m.index for m in self.members if not m.agrees]

    @property
    def undefinable(self) -> List[int]:
        """Members where phi or psi fails to define the principal normal subgroups."""
        return [m.index for m in self.members if not m.principal_definable]

    @property
    def passed(self) -> bool:
        return not self.disagreements and not self.undefinable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generator": self.generator,
            "exponent": self.exponent,
            "nilpotency_class": self.nilpotency_class,
            "r": self.r,
            "psi_cap": self.psi_cap,
            "members": [m.to_dict() for m in self.members],
            "agreements": len(self.members) - len(self.disagreements),
            "disagreements": self.disagreements,
            "undefinable": self.undefinable,
            "si_members": sum(m.si_lattice for m in self.members),
            "non_si_members": sum(not m.si_lattice for m in self.members),
            "max_witness_complexity": max((m.max_witness_complexity for m in self.members), default=0),
            "passed": self.passed,
        }


@dataclass
class MemberBounds:
    """Theorem-bound observations for one sampled member."""
    index: int
    order: int
    subdirectly_irreducible: bool
    atom_sizes: List[int]
    atom_max_complexities: List[int]
    descent_count: int = 0
    descent_max_step: int = 0
    descent_max_total: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class BoundsReport:
    generator: str
    exponent: int
    nilpotency_class: int
    total_bound: int
    group_order: int
    members: List[MemberBounds] = field(default_factory=list)

    @property
    def violations(self) -> List[Dict[str, Any]]:
        return [v for m in self.members for v in m.violations]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generator": self.generator,
            "exponent": self.exponent,
            "nilpotency_class": self.nilpotency_class,
            "total_bound": self.total_bound,
            "neumann_bound": self.group_order,
            "members": [m.to_dict() for m in self.members],
            "max_atom_complexity": max((c for m in self.members for c in m.atom_max_complexities), default=0),
            "max_atom_size": max((s for m in self.members for s in m.atom_sizes), default=0),
            "max_descent_step": max((m.descent_max_step for m in self.members), default=0),
            "max_descent_total": max((m.descent_max_total for m in self.members), default=0),
            "violations": self.violations,
            "passed": self.passed,
        }


@dataclass
class FormulaReport:
    group: str
    formula: str
    free_variables: List[str]
    bindings: Dict[str, str]
    value: Optional[bool] = None
    defined_set: Optional[List[str]] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
