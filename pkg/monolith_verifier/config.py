"""
Limits shared by every component: group sizes, lattice sizes, search caps.

All caps are flag-driven at the command line (see cli.py); library callers pass
a Limits instance or take DEFAULT_LIMITS.
"""
from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class Limits:
    """Caps for every exhaustive computation in the package."""
    max_group_order: int = 100_000
    max_normal_subgroups: int = 10_000
    max_class_evaluations: int = 10**8
    max_disjuncts: int = 10**6
    # HSP sampling
    max_power: int = 2
    max_sample_order: int = 64
    max_generators: int = 2
    max_members: int = 400
    # Largest boolean/int array the array evaluator may allocate.
    dense_cells: int = 2**22
    # None means "use the theorem bound" (exponent per step, m^k overall).
    complexity_cap: Optional[int] = None

    def with_overrides(self, **overrides) -> "Limits":
        """Returns a copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_LIMITS = Limits()
