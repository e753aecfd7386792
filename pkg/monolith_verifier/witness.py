"""
Conjugate product terms and the searches that witness membership conditions.

A conjugate product term is a product of conjugates u x^(+-1) u^-1; its
complexity is the number of conjugates. Witness searches run breadth-first over
group elements, so the depth at which an element first appears is the least
complexity of any term carrying the source to it.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from absl import logging

from .data_structures import AtomBoundReport, WitnessReport, WitnessStepReport
from .errors import (
    BoundViolation,
    IdentityInput,
    MissingParameter,
    NotAnAtom,
    NotNilpotent,
    NotSubdirectlyIrreducible,
)
from .group import IDENTITY, FiniteGroup, conjugate, conjugation_matrix, content_hash, exponent
from .lattice import ElementSet, analysis_for

Params = Union[Sequence[int], Mapping[int, int]]


@dataclass(frozen=True)
class ConjugateProductTerm:
    """Ordered (slot, sign) factors; factor (s, +1) is u_s x u_s^-1. Empty is the term 1."""
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for slot, sign in self.factors:
            if slot < 0 or sign not in (1, -1):
                raise ValueError(f"bad factor ({slot}, {sign})")

    @property
    def complexity(self) -> int:
        return len(self.factors)

    @property
    def is_mixed(self) -> bool:
        signs = {sign for _, sign in self.factors}
        return len(signs) == 2

    def slots(self) -> List[int]:
        return sorted({slot for slot, _ in self.factors})

    def to_list(self) -> List[List[int]]:
        return [[slot, sign] for slot, sign in self.factors]

    @classmethod
    def from_list(cls, factors) -> "ConjugateProductTerm":
        return cls(tuple((int(slot), int(sign)) for slot, sign in factors))

    def to_text(self) -> str:
        """e.g. `u0 x u0^-1 . u1 x^-1 u1^-1`."""
        if not self.factors:
            return "1"
        parts = []
        for slot, sign in self.factors:
            x = "x" if sign > 0 else "x^-1"
            parts.append(f"u{slot} {x} u{slot}^-1")
        return " . ".join(parts)


def evaluate_term(G: FiniteGroup, term: ConjugateProductTerm, x: int, params: Params) -> int:
    """The product over factors of p x^sign p^-1, left to right."""
    x_inv = G.inv(x)
    result = IDENTITY
    for slot, sign in term.factors:
        try:
            p = params[slot]
        except (IndexError, KeyError):
            raise MissingParameter(slot) from None
        result = G.mul(result, conjugate(G, int(p), x if sign > 0 else x_inv))
    return result


class ConjugateProductSearch:
    """
    Breadth-first search from the identity, one step being right multiplication
    by a conjugate h c^(+-1) h^-1.

    Moves are tried with conjugators in index order and + before -; only the
    first move producing each distinct conjugate is kept. Layer d holds, in
    index order, exactly the elements whose least witness complexity is d.
    """

    def __init__(self, group: FiniteGroup, source: int):
        self.group = group
        self.source = int(source)
        C = conjugation_matrix(group)
        bases = ((1, self.source), (-1, group.inv(self.source)))
        values, labels, seen = [], [], set()
        for h in range(group.order):
            for sign, base in bases:
                value = int(C[h, base])
                if value not in seen:
                    seen.add(value)
                    values.append(value)
                    labels.append((h, sign))
        self.move_values = np.asarray(values, dtype=np.int64)
        self.move_labels = labels
        n = group.order
        self.distance = np.full(n, -1, dtype=np.int64)
        self.distance[IDENTITY] = 0
        self.parent = np.full(n, -1, dtype=np.int64)
        self.parent_move = np.full(n, -1, dtype=np.int64)
        self.layers: List[np.ndarray] = [np.array([IDENTITY], dtype=np.int64)]
        self.saturated = False

    def expand_to(self, depth: int) -> None:
        moves = self.move_values.size
        while len(self.layers) <= depth and not self.saturated:
            frontier = self.layers[-1]
            products = self.group.table[np.ix_(frontier, self.move_values)].ravel()
            values, first = np.unique(products, return_index=True)
            fresh = self.distance[values] < 0
            values, first = values[fresh], first[fresh]
            if not values.size:
                self.saturated = True
                break
            self.distance[values] = len(self.layers)
            self.parent[values] = frontier[first // moves]
            self.parent_move[values] = first % moves
            self.layers.append(values)

    def saturate(self) -> None:
        self.expand_to(self.group.order)

    def layer(self, depth: int) -> np.ndarray:
        self.expand_to(depth)
        if depth < len(self.layers):
            return self.layers[depth]
        return np.empty(0, dtype=np.int64)

    def reached(self) -> np.ndarray:
        return np.nonzero(self.distance >= 0)[0]

    def witness(self, target: int) -> Tuple[ConjugateProductTerm, Tuple[int, ...]]:
        """Term and parameters for an already reached target, one slot per factor."""
        if self.distance[target] < 0:
            raise KeyError(f"{target} not reached from {self.source}")
        moves = []
        element = int(target)
        while self.distance[element] > 0:
            moves.append(self.move_labels[int(self.parent_move[element])])
            element = int(self.parent[element])
        moves.reverse()
        term = ConjugateProductTerm(tuple((slot, sign) for slot, (_, sign) in enumerate(moves)))
        return term, tuple(h for h, _ in moves)


def search_from(G: FiniteGroup, c: int) -> ConjugateProductSearch:
    return G.cached(f"search:{int(c)}", lambda: ConjugateProductSearch(G, c))


def minimal_witness(G: FiniteGroup, target: int, c: int,
                    max_complexity: int) -> Optional[Tuple[ConjugateProductTerm, Tuple[int, ...]]]:
    """
    A least-complexity term and parameters carrying c to target, or None when
    nothing of complexity <= max_complexity does.
    """
    search = search_from(G, c)
    search.expand_to(max_complexity)
    depth = int(search.distance[target])
    if depth < 0 or depth > max_complexity:
        return None
    term, params = search.witness(target)
    if evaluate_term(G, term, c, params) != target:
        raise RuntimeError(f"witness for {target} from {c} does not evaluate back")
    return term, params


def reachability(G: FiniteGroup, cap: int) -> np.ndarray:
    """dist[c, t]: least complexity carrying c to t, or -1 when above cap."""
    dist = np.full((G.order, G.order), -1, dtype=np.int64)
    for c in range(G.order):
        search = search_from(G, c)
        search.expand_to(cap)
        row = search.distance.copy()
        row[row > cap] = -1
        dist[c] = row
    return dist


# --- descent into the monolith ------------------------------------------------

@dataclass(frozen=True)
class WitnessStep:
    """
    One move a_{i+1} -> a_i. `level` is the least i with target in Z_i, and 0
    once the target lies in the monolith.
    """
    level: int
    source: int
    target: int
    term: ConjugateProductTerm
    params: Tuple[int, ...]
    mixed: bool
    pure_sign_alternative: bool

    @property
    def complexity(self) -> int:
        return self.term.complexity


@dataclass(frozen=True)
class WitnessChain:
    group: FiniteGroup
    start: int
    steps: Tuple[WitnessStep, ...]
    final: int
    composed: ConjugateProductTerm
    composed_params: Tuple[int, ...]
    exponent_bound: int
    class_bound: int
    direct_minimum: Optional[int] = None
    total_cap: Optional[int] = None

    @property
    def step_complexities(self) -> List[int]:
        return [step.complexity for step in self.steps]

    @property
    def total_bound(self) -> int:
        if self.total_cap is not None:
            return self.total_cap
        return self.exponent_bound ** self.class_bound


def _single_sign_reaches(G: FiniteGroup, source: int, target: int, depth: int) -> bool:
    """Whether a product of exactly `depth` same-sign conjugates of source hits target."""
    C = conjugation_matrix(G)
    for base in (source, G.inv(source)):
        conjugates = np.unique(C[:, base])
        values = np.array([IDENTITY], dtype=np.int64)
        for _ in range(depth):
            values = np.unique(G.table[np.ix_(values, conjugates)])
        if target in values:
            return True
    return False


def _violation_record(S: FiniteGroup, start: int, step: WitnessStep, m: int) -> Dict:
    return {
        "group": S.label,
        "group_hash": content_hash(S),
        "order": S.order,
        "start": start,
        "source": step.source,
        "target": step.target,
        "term": step.term.to_list(),
        "params": list(step.params),
        "complexity": step.complexity,
        "exponent_bound": m,
        "mixed": step.mixed,
    }


def compose_chain(chain: WitnessChain) -> Tuple[ConjugateProductTerm, Tuple[int, ...]]:
    """
    Substitutes each step's term into the next, distributing the outer
    conjugation over the inner factors; complexities multiply.
    """
    G = chain.group
    if not chain.steps:
        return ConjugateProductTerm(((0, 1),)), (IDENTITY,)
    first = chain.steps[0]
    current = [(first.params[slot], sign) for slot, sign in first.term.factors]
    for step in chain.steps[1:]:
        composed = []
        for slot, sign in step.term.factors:
            p = step.params[slot]
            inner = current if sign > 0 else list(reversed(current))
            for q, e in inner:
                composed.append((G.mul(p, q), e if sign > 0 else -e))
        current = composed
    term = ConjugateProductTerm(tuple((slot, e) for slot, (_, e) in enumerate(current)))
    return term, tuple(q for q, _ in current)


def descend(S: FiniteGroup, a: int, exponent_bound: Optional[int] = None,
            class_bound: Optional[int] = None, total_cap: Optional[int] = None) -> WitnessChain:
    """
    Walks a down the upper central series of a nilpotent SI group into its
    monolith.

    Each step picks, among the nonidentity elements of the next level (the
    monolith on the last step) reachable from the current element, one of least
    witness complexity, breaking ties by smallest index. A step landing lower
    than the next level skips ahead. Raises BoundViolation when a step exceeds
    the exponent bound, when a mixed-sign step is not of complexity 2, or when
    the composed term exceeds total_cap (exponent_bound ** class_bound when
    total_cap is None).

    direct_minimum is the least complexity of any single term carrying a to the
    final element.
    """
    a = int(a)
    if a == IDENTITY:
        raise IdentityInput("descent needs a nonidentity element")
    record = analysis_for(S)
    M = record.monolith
    if M is None:
        raise NotSubdirectlyIrreducible(f"{S!r} has {len(record.atoms)} atoms")
    series = record.upper_central_series
    if series.nilpotency_class is None:
        raise NotNilpotent(f"upper central series of {S!r} stops at {series.sizes()}")
    m = exponent_bound or exponent(S)
    k = class_bound if class_bound is not None else series.nilpotency_class

    steps = []
    current = a
    while current not in M:
        level = series.least_level(current)
        candidates: ElementSet = series.levels[level - 1] if level > 1 else M
        allowed = candidates.to_flags()
        allowed[IDENTITY] = False
        search = search_from(S, current)
        depth, target = 1, None
        while target is None:
            layer = search.layer(depth)
            if not layer.size and search.saturated:
                raise RuntimeError(f"no nonidentity element below level {level} reachable from {current}")
            hits = layer[allowed[layer]]
            if hits.size:
                target = int(hits[0])
            else:
                depth += 1
        term, params = search.witness(target)
        step = WitnessStep(
            level=0 if target in M else series.least_level(target),
            source=current,
            target=target,
            term=term,
            params=params,
            mixed=term.is_mixed,
            pure_sign_alternative=_single_sign_reaches(S, current, target, depth),
        )
        if step.complexity > m or (step.mixed and step.complexity != 2):
            logging.error("descend - step %d -> %d has complexity %d (bound %d, mixed=%s)",
                          current, target, step.complexity, m, step.mixed)
            raise BoundViolation(
                f"step {current} -> {target} of complexity {step.complexity} breaks the per-step bound",
                _violation_record(S, a, step, m),
            )
        steps.append(step)
        current = target

    chain = WitnessChain(S, a, tuple(steps), current, ConjugateProductTerm(), (), m, k,
                         total_cap=total_cap)
    composed, params = compose_chain(chain)
    if evaluate_term(S, composed, a, params) != current:
        raise RuntimeError(f"composed term does not carry {a} to {current}")
    if steps and composed.complexity > chain.total_bound:
        raise BoundViolation(
            f"composed complexity {composed.complexity} exceeds {chain.total_bound}",
            {"group": S.label, "group_hash": content_hash(S), "start": a,
             "composed": composed.to_list(), "params": list(params),
             "total_bound": chain.total_bound},
        )
    direct = 1
    if steps:
        # the composed term reaches current, so the search from a finds it by that depth
        search = search_from(S, a)
        search.expand_to(composed.complexity)
        direct = int(search.distance[current])
        if not 0 < direct <= composed.complexity:
            raise RuntimeError(f"{current} not reached from {a} within {composed.complexity}")
    logging.debug("descend - %d -> %d in %d steps, composed complexity %d (direct %d)",
                  a, current, len(steps), composed.complexity, direct)
    return WitnessChain(S, a, tuple(steps), current, composed, params, m, k, direct, total_cap)


def witness_report(chain: WitnessChain) -> WitnessReport:
    G = chain.group
    M = analysis_for(G).monolith
    steps = [
        WitnessStepReport(
            level=step.level,
            source=G.name(step.source),
            target=G.name(step.target),
            term=step.term.to_list(),
            term_text=step.term.to_text(),
            params=[G.name(p) for p in step.params],
            complexity=step.complexity,
            mixed=step.mixed,
            pure_sign_alternative=step.pure_sign_alternative,
        )
        for step in chain.steps
    ]
    complexities = chain.step_complexities
    return WitnessReport(
        group=G.label,
        start=G.name(chain.start),
        final=G.name(chain.final),
        steps=steps,
        step_complexities=complexities,
        composed_term=chain.composed.to_list(),
        composed_text=chain.composed.to_text(),
        composed_params=[G.name(p) for p in chain.composed_params],
        total_complexity=chain.composed.complexity,
        direct_minimum=chain.direct_minimum,
        exponent_bound=chain.exponent_bound,
        class_bound=chain.class_bound,
        total_bound=chain.total_bound,
        step_bound_ok=all(c <= chain.exponent_bound for c in complexities),
        total_bound_ok=not complexities or chain.composed.complexity <= chain.total_bound,
        final_in_monolith=M is not None and chain.final in M,
    )


def atom_bound_check(H: FiniteGroup, c: int, r: int,
                     neumann_bound: Optional[int] = None) -> AtomBoundReport:
    """
    Least witness complexity of every member of the atom c^H, compared with r.

    With r = |c^H| the check passes: the partial products of a shortest
    witness are distinct members of c^H.
    """
    record = analysis_for(H)
    N = record.principal_closures[int(c)]
    if N not in record.atoms:
        raise NotAnAtom(f"the normal closure of {H.name(c)} has size {len(N)} and is not an atom")
    search = search_from(H, c)
    search.saturate()
    complexities = {H.name(e): int(search.distance[e]) for e in N}
    return AtomBoundReport(
        group=H.label,
        generator=H.name(c),
        atom_size=len(N),
        r=r,
        complexities=complexities,
        max_complexity=max(complexities.values()),
        neumann_bound=neumann_bound,
    )
