"""
Normal structure of a finite group: closures, the normal subgroup lattice,
atoms and monolith, centre, central series and chief factors.

Subsets of a group are bitsets (Python ints). Every result that depends only on
the group is computed once and kept in the group's LatticeAnalysis record.
"""
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from absl import logging

from .config import DEFAULT_LIMITS, Limits
from .data_structures import AnalysisReport
from .errors import SizeLimitExceeded
from .group import (
    IDENTITY,
    FiniteGroup,
    closure,
    commutator_matrix,
    conjugacy_classes,
    conjugation_matrix,
    element_orders,
    exponent,
)


def _mask_from_flags(flags: np.ndarray) -> int:
    packed = np.packbits(flags.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _flags_from_mask(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


@dataclass(frozen=True, eq=False)
class ElementSet:
    """
    A subset of a group's elements stored as a bitset.

    `subgroup` and `normal` record which closure properties the producer
    guarantees. Equality compares the ambient group and the members only.
    """
    group: FiniteGroup
    mask: int
    subgroup: bool = False
    normal: bool = False

    @classmethod
    def from_elements(cls, group: FiniteGroup, elements: Iterable[int], **flags) -> "ElementSet":
        mask = 0
        for e in elements:
            mask |= 1 << int(e)
        return cls(group, mask, **flags)

    @classmethod
    def from_flags(cls, group: FiniteGroup, flags: np.ndarray, **kw) -> "ElementSet":
        return cls(group, _mask_from_flags(flags), **kw)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "ElementSet":
        return cls(group, 1 << IDENTITY, subgroup=True, normal=True)

    @classmethod
    def whole(cls, group: FiniteGroup) -> "ElementSet":
        return cls(group, (1 << group.order) - 1, subgroup=True, normal=True)

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.nonzero(self.to_flags())[0])

    def to_flags(self) -> np.ndarray:
        return _flags_from_mask(self.mask, self.group.order)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, element: int) -> bool:
        return bool((self.mask >> int(element)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.group), self.mask))

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & other.mask == self.mask

    def is_proper_subset(self, other: "ElementSet") -> bool:
        return self.issubset(other) and self.mask != other.mask

    def intersection(self, other: "ElementSet") -> "ElementSet":
        both = self.subgroup and other.subgroup
        return ElementSet(self.group, self.mask & other.mask, subgroup=both,
                          normal=both and self.normal and other.normal)

    def is_trivial(self) -> bool:
        return self.mask == 1 << IDENTITY

    def sort_key(self) -> Tuple[int, int]:
        """Size, then the bitset as an integer (element i is bit i)."""
        return len(self), self.mask

    def names(self) -> List[str]:
        return [self.group.name(e) for e in self.elements]

    def __repr__(self) -> str:
        return f"ElementSet(size={len(self)}, elements={list(self.elements)})"


@dataclass(frozen=True)
class CentralSeries:
    """Z_0 = 1 < Z_1 < ... until the series stops growing."""
    levels: Tuple[ElementSet, ...]
    stabilized: bool
    nilpotency_class: Optional[int]

    def sizes(self) -> List[int]:
        return [len(level) for level in self.levels]

    def least_level(self, element: int) -> int:
        """Smallest i with element in Z_i; -1 when the element is above the series."""
        for i, level in enumerate(self.levels):
            if element in level:
                return i
        return -1


def _subgroup_from_array(G: FiniteGroup, elements: np.ndarray, normal: bool) -> ElementSet:
    flags = np.zeros(G.order, dtype=bool)
    flags[elements] = True
    return ElementSet.from_flags(G, flags, subgroup=True, normal=normal)


def normal_closure(G: FiniteGroup, X: Iterable[int]) -> ElementSet:
    """The subgroup generated by every conjugate of every member of X."""
    X = [int(x) for x in X]
    if not X:
        return ElementSet.trivial(G)
    conjugates = np.unique(conjugation_matrix(G)[:, X])
    return _subgroup_from_array(G, closure(G, conjugates), normal=True)


def join(G: FiniteGroup, A: ElementSet, B: ElementSet) -> ElementSet:
    """A B, which is the join of two normal subgroups."""
    products = np.unique(G.table[np.ix_(A.to_array(), B.to_array())])
    return _subgroup_from_array(G, products, normal=True)


def commutator_subgroup(G: FiniteGroup, H: ElementSet, K: ElementSet) -> ElementSet:
    """[H, K], the normal closure of {[h, k] : h in H, k in K}."""
    values = np.unique(commutator_matrix(G)[np.ix_(H.to_array(), K.to_array())])
    return normal_closure(G, values)


class LatticeAnalysis:
    """
    Write-once record of the normal structure of one group.

    Obtain it through analysis_for(G) so each group is analysed once.
    """

    def __init__(self, group: FiniteGroup, limits: Limits = DEFAULT_LIMITS):
        self.group = group
        self.limits = limits
        self.name = f"LatticeAnalysis[{group.label or group.order}]"

    @cached_property
    def trivial(self) -> ElementSet:
        return ElementSet.trivial(self.group)

    @cached_property
    def whole(self) -> ElementSet:
        return ElementSet.whole(self.group)

    @cached_property
    def principal_closures(self) -> Dict[int, ElementSet]:
        """a -> a^G for every element a (computed once per conjugacy class)."""
        closures = {}
        for cls in conjugacy_classes(self.group):
            N = normal_closure(self.group, [cls[0]])
            for member in cls:
                closures[member] = N
        return closures

    @cached_property
    def normal_subgroups(self) -> List[ElementSet]:
        cap = self.limits.max_normal_subgroups
        principals = list({N.mask: N for N in self.principal_closures.values()}.values())
        found = {self.trivial.mask: self.trivial}
        for P in principals:
            found.setdefault(P.mask, P)
        queue = deque(principals)
        while queue:
            N = queue.popleft()
            for P in principals:
                if P.issubset(N):
                    continue
                J = join(self.group, N, P)
                if J.mask not in found:
                    if len(found) >= cap:
                        raise SizeLimitExceeded("normal subgroup lattice", cap)
                    found[J.mask] = J
                    queue.append(J)
        lattice = sorted(found.values(), key=ElementSet.sort_key)
        logging.debug("%s - %d principal closures, %d normal subgroups",
                      self.name, len(principals), len(lattice))
        return lattice

    @cached_property
    def atoms(self) -> List[ElementSet]:
        nontrivial = [N for N in self.normal_subgroups if not N.is_trivial()]
        return [N for N in nontrivial
                if not any(M.is_proper_subset(N) for M in nontrivial)]

    @cached_property
    def monolith(self) -> Optional[ElementSet]:
        return self.atoms[0] if len(self.atoms) == 1 else None

    @cached_property
    def center(self) -> ElementSet:
        T = self.group.table
        return ElementSet.from_flags(self.group, (T == T.T).all(axis=1),
                                     subgroup=True, normal=True)

    @cached_property
    def upper_central_series(self) -> CentralSeries:
        K = commutator_matrix(self.group)
        flags = np.zeros(self.group.order, dtype=bool)
        flags[IDENTITY] = True
        levels = [self.trivial]
        while True:
            following = flags[K].all(axis=1)
            if (following == flags).all():
                break
            flags = following
            levels.append(ElementSet.from_flags(self.group, flags, subgroup=True, normal=True))
        nilpotency_class = len(levels) - 1 if len(levels[-1]) == self.group.order else None
        return CentralSeries(tuple(levels), stabilized=True, nilpotency_class=nilpotency_class)

    @cached_property
    def lower_central_series(self) -> List[ElementSet]:
        series = [self.whole]
        while True:
            following = commutator_subgroup(self.group, self.whole, series[-1])
            if following == series[-1]:
                return series
            series.append(following)

    @cached_property
    def covering_pairs(self) -> List[Tuple[ElementSet, ElementSet]]:
        """(K, H) with K < H normal and nothing normal strictly between."""
        pairs = []
        lattice = self.normal_subgroups
        for i, H in enumerate(lattice):
            below = [K for K in lattice[:i] if K.is_proper_subset(H)]
            for K in below:
                if not any(K.is_proper_subset(N) for N in below):
                    pairs.append((K, H))
        return pairs

    @cached_property
    def chief_factor_sizes(self) -> List[int]:
        return [len(H) // len(K) for K, H in self.covering_pairs]


def analysis_for(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> LatticeAnalysis:
    return G.cached(f"lattice:{limits.max_normal_subgroups}", lambda: LatticeAnalysis(G, limits))


def normal_subgroups(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> List[ElementSet]:
    """Every normal subgroup once, sorted by size then member list."""
    return analysis_for(G, limits).normal_subgroups


def atoms(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> List[ElementSet]:
    """Minimal nontrivial normal subgroups."""
    return analysis_for(G, limits).atoms


def monolith(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> Optional[ElementSet]:
    return analysis_for(G, limits).monolith


def is_subdirectly_irreducible(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> bool:
    return monolith(G, limits) is not None


def center(G: FiniteGroup) -> ElementSet:
    return analysis_for(G).center


def upper_central_series(G: FiniteGroup) -> CentralSeries:
    """Z_{i+1} = {x : [x, g] in Z_i for all g}, without building quotients."""
    return analysis_for(G).upper_central_series


def lower_central_series(G: FiniteGroup) -> List[ElementSet]:
    return analysis_for(G).lower_central_series


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    return upper_central_series(G).nilpotency_class


def chief_factor_sizes(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> List[int]:
    """|H|/|K| for every covering pair K < H of the normal lattice."""
    return analysis_for(G, limits).chief_factor_sizes


def verify_class_identity(G: FiniteGroup, k: int,
                          max_evaluations: int = DEFAULT_LIMITS.max_class_evaluations) -> bool:
    """
    True iff every left-normed commutator [[..[x1,x2],x3]..,x_{k+1}] is 1.

    Works on the set of distinct nontrivial values at each weight rather than
    on all (k+1)-tuples.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = G.order
    K = commutator_matrix(G)
    values = np.arange(1, n)
    evaluations = 0
    for _ in range(k):
        if not values.size:
            return True
        evaluations += values.size * n
        if evaluations > max_evaluations:
            raise SizeLimitExceeded("commutator identity evaluations", max_evaluations)
        values = np.unique(K[values, :])
        values = values[values != IDENTITY]
    return not values.size


def _prime_factors(n: int) -> List[int]:
    primes, d = [], 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def _is_power_of(value: int, p: int) -> bool:
    while value % p == 0:
        value //= p
    return value == 1


def is_nilpotent_sylow_check(G: FiniteGroup) -> bool:
    """True iff for each prime p the p-elements are closed under products."""
    orders = element_orders(G)
    for p in _prime_factors(G.order):
        flags = np.array([_is_power_of(int(o), p) for o in orders])
        members = np.nonzero(flags)[0]
        if not flags[G.table[np.ix_(members, members)]].all():
            return False
    return True


def analyze(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> AnalysisReport:
    record = analysis_for(G, limits)
    ucs = record.upper_central_series
    mono = record.monolith
    return AnalysisReport(
        group=G.label,
        order=G.order,
        exponent=exponent(G),
        nilpotency_class=ucs.nilpotency_class,
        nilpotent_by_sylow=is_nilpotent_sylow_check(G),
        center_size=len(record.center),
        upper_central_series=ucs.sizes(),
        lower_central_series=[len(N) for N in record.lower_central_series],
        normal_subgroup_count=len(record.normal_subgroups),
        atom_sizes=[len(A) for A in record.atoms],
        monolith_size=len(mono) if mono is not None else None,
        chief_factor_sizes=sorted(record.chief_factor_sizes),
        subdirectly_irreducible=mono is not None,
    )
