"""
Slow, independent reference computations the library results are checked against.

Everything here works on plain Python sets and the raw table, never on the
library's ElementSet, closure or search code.
"""
from typing import Dict, FrozenSet, List, Optional, Set

# Every named family instance of order at most 27.
SMALL_FAMILIES = (
    [f"cyclic:{n}" for n in range(1, 28)]
    + [f"dihedral:{n}" for n in range(1, 14)]
    + [f"symmetric:{n}" for n in range(1, 5)]
    + ["quaternion", "klein", "heisenberg:2", "heisenberg:3"]
)


def _table(G) -> List[List[int]]:
    return G.table.tolist()


def subgroup_closure(G, elements) -> FrozenSet[int]:
    table = _table(G)
    members: Set[int] = {0} | set(elements)
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                product = table[a][b]
                if product not in members:
                    members.add(product)
                    changed = True
    return frozenset(members)


def all_subgroups(G) -> Set[FrozenSet[int]]:
    """Every subgroup, found by adjoining one element at a time from the trivial one."""
    found = {frozenset({0})}
    frontier = list(found)
    while frontier:
        fresh = []
        for H in frontier:
            for g in range(G.order):
                if g not in H:
                    K = subgroup_closure(G, H | {g})
                    if K not in found:
                        found.add(K)
                        fresh.append(K)
        frontier = fresh
    return found


def is_normal(G, H: FrozenSet[int]) -> bool:
    table = _table(G)
    inverses = G.inverses.tolist()
    return all(table[table[g][h]][inverses[g]] in H for g in range(G.order) for h in H)


def normal_subgroups(G) -> Set[FrozenSet[int]]:
    return {H for H in all_subgroups(G) if is_normal(G, H)}


def normal_closure_by_intersection(G, elements,
                                   lattice: Optional[Set[FrozenSet[int]]] = None) -> FrozenSet[int]:
    """The intersection of every normal subgroup containing `elements`."""
    result = frozenset(range(G.order))
    for N in lattice if lattice is not None else normal_subgroups(G):
        if set(elements) <= N:
            result &= N
    return result


def minimal_complexities(G, c: int, depth: int) -> Dict[int, int]:
    """
    Least number of conjugates h c^(+-1) h^-1 whose product is t, for every t
    reachable with at most `depth` of them.
    """
    table = _table(G)
    inverses = G.inverses.tolist()
    conjugates = set()
    for h in range(G.order):
        for base in (c, inverses[c]):
            conjugates.add(table[table[h][base]][inverses[h]])
    best = {0: 0}
    layer = {0}
    for d in range(1, depth + 1):
        layer = {table[s][x] for s in layer for x in conjugates}
        fresh = [t for t in layer if t not in best]
        if not fresh:
            # nothing first appears at depth d, so nothing can at d + 1
            break
        for t in fresh:
            best[t] = d
    return best


def generated_subgroup(G, generators) -> FrozenSet[int]:
    """Everything reached from the identity by right multiplication with the generators."""
    table = _table(G)
    gens = sorted({int(g) for g in generators})
    members = {0}
    frontier = [0]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                b = table[a][g]
                if b not in members:
                    members.add(b)
                    fresh.append(b)
        frontier = fresh
    return frozenset(members)


def conjugacy_classes(G) -> List[FrozenSet[int]]:
    table = _table(G)
    inverses = G.inverses.tolist()
    seen: Set[int] = set()
    classes = []
    for a in range(G.order):
        if a in seen:
            continue
        cls = frozenset(table[table[g][a]][inverses[g]] for g in range(G.order))
        seen |= cls
        classes.append(cls)
    return classes


def normal_subgroups_by_classes(G) -> Set[FrozenSet[int]]:
    """
    Every normal subgroup, grown from the trivial one by adjoining whole
    conjugacy classes. Fast enough for groups of order 64.
    """
    classes = conjugacy_classes(G)
    found = {frozenset({0})}
    frontier = list(found)
    while frontier:
        fresh = []
        for N in frontier:
            for cls in classes:
                if cls <= N:
                    continue
                K = generated_subgroup(G, N | cls)
                if K not in found:
                    found.add(K)
                    fresh.append(K)
        frontier = fresh
    return found
