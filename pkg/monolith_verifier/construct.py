"""
Members of the variety V(G) built with the HSP operators.

Every constructed group carries a Recipe: a small tree naming the operation, its
parameters and the group it was applied to, bottoming out in the base group's
spec text and content hash. Replaying a recipe rebuilds the identical table,
which is what certifies membership in V(G).
"""
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
from absl import logging

from .config import DEFAULT_LIMITS, Limits
from .errors import GroupSpecError, NotNormal
from .group import (
    FiniteGroup,
    _trusted_group,
    closure,
    conjugacy_classes,
    conjugation_matrix,
    content_hash,
    direct_product,
    element_orders,
    exponent,
    named_group,
)
from .lattice import ElementSet, analysis_for

OPERATIONS = ("base", "power", "subgroup", "quotient")


# --- operators ----------------------------------------------------------------

def direct_power(G: FiniteGroup, n: int, max_order: int = DEFAULT_LIMITS.max_group_order) -> FiniteGroup:
    """G^n, indexed mixed-radix with the first component most significant."""
    if n < 1:
        raise ValueError(f"power must be positive, got {n}")
    result = _trusted_group(G.table, G.names, label=G.label)
    for _ in range(n - 1):
        result = direct_product(result, G, max_order=max_order)
    if n > 1:
        result = _trusted_group(result.table, result.names, label=f"power:({G.label},{n})")
    return result


def subgroup_embedding(G: FiniteGroup, gens: Iterable[int]) -> Tuple[FiniteGroup, np.ndarray]:
    """The subgroup generated by gens, and embedding[i] = its element i inside G."""
    members = closure(G, gens)
    position = np.full(G.order, -1, dtype=np.int64)
    position[members] = np.arange(members.size)
    table = position[G.table[np.ix_(members, members)]]
    names = [G.name(int(m)) for m in members] if G.names is not None else None
    H = _trusted_group(table, names, label=f"subgroup:({G.label},{members.size})")
    return H, members


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> FiniteGroup:
    return subgroup_embedding(G, gens)[0]


def _is_normal(G: FiniteGroup, N: ElementSet) -> bool:
    flags = N.to_flags()
    if not flags[0]:
        return False
    members = N.to_array()
    closed = flags[G.table[np.ix_(members, members)]].all()
    return bool(closed and flags[conjugation_matrix(G)[:, members]].all())


def quotient_projection(G: FiniteGroup, N: ElementSet) -> Tuple[FiniteGroup, np.ndarray]:
    """
    G/N on left cosets, numbered by smallest representative so the identity
    coset is 0; projection[g] is the coset of g.
    """
    if not (N.normal or _is_normal(G, N)):
        raise NotNormal(f"subset of size {len(N)} is not a normal subgroup of {G!r}")
    members = N.to_array()
    projection = np.full(G.order, -1, dtype=np.int64)
    representatives = []
    for g in range(G.order):
        if projection[g] < 0:
            projection[G.table[g, members]] = len(representatives)
            representatives.append(g)
    reps = np.asarray(representatives, dtype=np.int64)
    table = projection[G.table[np.ix_(reps, reps)]]
    names = [G.name(int(r)) + "N" if r else "N" for r in reps] if G.names is not None else None
    Q = _trusted_group(table, names, label=f"quotient:({G.label},{len(N)})")
    return Q, projection


def quotient(G: FiniteGroup, N: ElementSet) -> FiniteGroup:
    return quotient_projection(G, N)[0]


# --- provenance ---------------------------------------------------------------

@dataclass(frozen=True)
class Recipe:
    op: str
    params: Dict[str, Any] = field(default_factory=dict)
    child: Optional["Recipe"] = None

    def __post_init__(self):
        if self.op not in OPERATIONS:
            raise GroupSpecError(f"unknown recipe operation {self.op!r}")
        if (self.op == "base") != (self.child is None):
            raise GroupSpecError(f"{self.op} recipe {'must not' if self.op == 'base' else 'needs a'} child")

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"op": self.op, "params": dict(self.params)}
        if self.child is not None:
            payload["child"] = self.child.to_dict()
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Recipe":
        try:
            child = payload.get("child")
            return cls(payload["op"], dict(payload.get("params", {})),
                       cls.from_dict(child) if child is not None else None)
        except (KeyError, TypeError, AttributeError) as exc:
            raise GroupSpecError(f"malformed recipe: {exc}") from exc

    def to_text(self) -> str:
        if self.op == "base":
            return self.params.get("spec", "?")
        if self.op == "power":
            return f"{self.child.to_text()}^{self.params['n']}"
        if self.op == "subgroup":
            return f"<{','.join(map(str, self.params['generators']))}> in {self.child.to_text()}"
        return f"({self.child.to_text()}) / [{len(self.params['kernel'])}]"


def base_recipe(G: FiniteGroup, spec: Optional[str] = None) -> Recipe:
    return Recipe("base", {"spec": spec or G.label, "hash": content_hash(G)})


def replay(recipe: Recipe, resolver: Callable[[str], FiniteGroup] = named_group,
           limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    """Rebuilds the group a recipe describes, checking every recorded map on the way."""
    if recipe.op == "base":
        G = resolver(recipe.params["spec"])
        expected = recipe.params.get("hash")
        if expected is not None and content_hash(G) != expected:
            raise GroupSpecError(f"base group {recipe.params['spec']!r} no longer matches its recorded hash")
        return G
    child = replay(recipe.child, resolver, limits)
    if recipe.op == "power":
        return direct_power(child, int(recipe.params["n"]), max_order=limits.max_group_order)
    if recipe.op == "subgroup":
        H, embedding = subgroup_embedding(child, recipe.params["generators"])
        recorded = recipe.params.get("embedding")
        if recorded is not None and list(recorded) != embedding.tolist():
            raise GroupSpecError("replayed subgroup embedding differs from the recorded one")
        return H
    Q, projection = quotient_projection(child, ElementSet.from_elements(child, recipe.params["kernel"]))
    recorded = recipe.params.get("projection")
    if recorded is not None and list(recorded) != projection.tolist():
        raise GroupSpecError("replayed quotient projection differs from the recorded one")
    return Q


# --- sampling -----------------------------------------------------------------

def fingerprint(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> Tuple:
    """Isomorphism invariants; groups with equal fingerprints are treated as one."""
    record = analysis_for(G, limits)
    series = record.upper_central_series
    return (
        G.order,
        exponent(G),
        series.nilpotency_class,
        len(record.center),
        tuple(series.sizes()),
        tuple(sorted(int(o) for o in element_orders(G))),
        tuple(sorted(len(c) for c in conjugacy_classes(G))),
        tuple(len(N) for N in record.normal_subgroups),
        tuple(sorted(len(A) for A in record.atoms)),
        tuple(sorted(record.chief_factor_sizes)),
    )


@dataclass(frozen=True)
class VarietyMember:
    group: FiniteGroup
    recipe: Recipe
    subdirectly_irreducible: bool
    fingerprint: Tuple


class _Sample:
    """Collects members in offer order, dropping repeats and anything past the cap."""

    def __init__(self, limits: Limits):
        self.limits = limits
        self.members: List[VarietyMember] = []
        self.seen = set()
        self.truncated = False

    @property
    def full(self) -> bool:
        return len(self.members) >= self.limits.max_members

    def offer(self, H: FiniteGroup, recipe: Recipe) -> bool:
        """Adds H unless the sample is full or already has its fingerprint."""
        if self.full:
            self.truncated = True
            return False
        key = fingerprint(H, self.limits)
        if key in self.seen:
            return False
        self.seen.add(key)
        si = analysis_for(H, self.limits).monolith is not None
        self.members.append(VarietyMember(H, recipe, si, key))
        return True

    def offer_with_quotients(self, H: FiniteGroup, recipe: Recipe):
        # quotients of a group already represented add nothing new to the sample
        if not self.offer(H, recipe):
            return
        for N in analysis_for(H, self.limits).normal_subgroups:
            if self.full:
                self.truncated = True
                return
            if N.is_trivial():
                continue
            Q, projection = quotient_projection(H, N)
            self.offer(Q, Recipe("quotient", {"kernel": list(N.elements),
                                              "projection": projection.tolist()}, recipe))


def sample_variety_members(G: FiniteGroup, limits: Limits = DEFAULT_LIMITS,
                           base_spec: Optional[str] = None) -> List[VarietyMember]:
    """
    Deterministic sample of V(G): G and its quotients, then for each power
    p <= max_power with |G|^p <= max_sample_order the power itself and the
    subgroups generated by up to max_generators nonidentity elements (tuples in
    lexicographic order), each followed by its quotients.
    """
    sample = _Sample(limits)
    base = base_recipe(G, base_spec)
    sample.offer_with_quotients(G, base)

    for p in range(2, limits.max_power + 1):
        if G.order ** p > limits.max_sample_order or sample.full:
            break
        P = direct_power(G, p, max_order=limits.max_group_order)
        power_recipe = Recipe("power", {"n": p}, base)
        sample.offer_with_quotients(P, power_recipe)
        seen_masks = set()
        for size in range(1, limits.max_generators + 1):
            for gens in itertools.combinations(range(1, P.order), size):
                if sample.full:
                    break
                H, embedding = subgroup_embedding(P, gens)
                mask = ElementSet.from_elements(P, embedding).mask
                if mask in seen_masks:
                    continue
                seen_masks.add(mask)
                sample.offer_with_quotients(H, Recipe(
                    "subgroup", {"generators": list(gens), "embedding": embedding.tolist()},
                    power_recipe))

    if sample.truncated:
        logging.warning("sample_variety_members - stopped at %d members (max_members=%d)",
                        len(sample.members), limits.max_members)
    logging.info("sample_variety_members - %d members of V(%s), %d SI",
                 len(sample.members), G.label or G.order,
                 sum(m.subdirectly_irreducible for m in sample.members))
    return sample.members
