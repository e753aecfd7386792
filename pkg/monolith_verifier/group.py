"""
Finite groups as complete multiplication tables.

Elements are dense indices 0..order-1 with the identity at 0. Every higher
module speaks indices; display names are only used for input and reports.
"""
import hashlib
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from absl import logging

from .config import DEFAULT_LIMITS
from .errors import (
    BadParameter,
    InvalidGroupTable,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    SizeLimitExceeded,
    UnknownElement,
    UnknownFamily,
)

IDENTITY = 0


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A finite group given by its multiplication table, table[g, h] = g*h.

    Instances are immutable; `_cache` holds write-once derived data (conjugation
    and commutator matrices, the lattice analysis record).
    """
    table: np.ndarray
    inverses: np.ndarray
    names: Optional[Tuple[str, ...]] = None
    label: str = ""
    # source_indices[i] is the caller's index for element i when loading renumbered it.
    source_indices: Optional[Tuple[int, ...]] = None
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverses.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return IDENTITY

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def name(self, a: int) -> str:
        if self.names is not None:
            return self.names[a]
        return str(a)

    def cached(self, key: str, compute: Callable[[], Any]) -> Any:
        """Computes a derived value once per group."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def __repr__(self) -> str:
        label = self.label or "group"
        return f"FiniteGroup({label}, order={self.order})"


@dataclass(frozen=True)
class Permutation:
    """A bijection on 0..degree-1; composition (p*q)(i) = p(q(i))."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise BadParameter(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Builds a permutation from 0-based cycles."""
        images = list(range(degree))
        for cycle in cycles:
            for position, point in enumerate(cycle):
                if not 0 <= point < degree:
                    raise BadParameter(f"point {point} outside degree {degree}")
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    def compose(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[i] for i in other.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                seen.add(point)
                cycle.append(point)
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def to_text(self) -> str:
        """1-based cycle notation, '()' for the identity."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in cycle) + ")" for cycle in cycles)


# --- construction -------------------------------------------------------------

def _inverses_of(table: np.ndarray) -> np.ndarray:
    rows, cols = np.nonzero(table == IDENTITY)
    inverses = np.empty(table.shape[0], dtype=np.int64)
    inverses[rows] = cols
    return inverses


def _trusted_group(table: np.ndarray, names: Optional[Sequence[str]] = None,
                   label: str = "", source_indices=None) -> FiniteGroup:
    """Wraps a table already known to be a group table with identity 0."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    return FiniteGroup(
        table=table,
        inverses=_inverses_of(table),
        names=tuple(names) if names is not None else None,
        label=label,
        source_indices=source_indices,
    )


def _first_associativity_failure(table: np.ndarray) -> Optional[Tuple[int, int, int]]:
    for a in range(table.shape[0]):
        left = table[table[a]]          # left[b, c] = (a*b)*c
        right = table[a][table]         # right[b, c] = a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return a, int(b), int(c)
    return None


def _check_latin_and_identity(arr: np.ndarray) -> int:
    """Checks the Latin square property and returns the identity's index."""
    n = arr.shape[0]
    expected = np.arange(n)
    bad_rows = np.nonzero(~(np.sort(arr, axis=1) == expected).all(axis=1))[0]
    if bad_rows.size:
        raise NotLatinSquare(f"row {int(bad_rows[0])} repeats an entry")
    bad_cols = np.nonzero(~(np.sort(arr, axis=0) == expected[:, None]).all(axis=0))[0]
    if bad_cols.size:
        raise NotLatinSquare(f"column {int(bad_cols[0])} repeats an entry")
    rows_ok = (arr == expected).all(axis=1)
    cols_ok = (arr == expected[:, None]).all(axis=0)
    candidates = np.nonzero(rows_ok & cols_ok)[0]
    if not candidates.size:
        raise NoIdentity("no element acts as a two-sided identity")
    return int(candidates[0])


def from_multiplication_table(table, names: Optional[Sequence[str]] = None,
                              label: str = "") -> FiniteGroup:
    """
    Builds a group from an explicit square table, verifying every group axiom.

    Errors name the first violating row, column or triple in the caller's
    numbering. If the identity is not at index 0 it is swapped there and the
    group records the renumbering in `source_indices`.
    """
    try:
        arr = np.asarray(table)
    except ValueError as exc:
        raise InvalidGroupTable(f"table is not a rectangular array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidGroupTable(f"table must be a nonempty square array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise InvalidGroupTable("table entries must be integers")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidGroupTable(f"table entries must lie in 0..{n - 1}")
    if names is not None and len(names) != n:
        raise InvalidGroupTable(f"expected {n} names, got {len(names)}")
    arr = arr.astype(np.int64)

    identity = _check_latin_and_identity(arr)
    failure = _first_associativity_failure(arr)
    if failure is not None:
        raise NotAssociative(failure)

    source_indices = None
    if identity != IDENTITY:
        perm = np.arange(n)
        perm[IDENTITY], perm[identity] = identity, IDENTITY
        arr = perm[arr[np.ix_(perm, perm)]]
        if names is not None:
            names = [names[int(p)] for p in perm]
        source_indices = tuple(int(p) for p in perm)
        logging.debug("from_multiplication_table - identity %d relocated to index 0", identity)
    return _trusted_group(arr, names, label=label, source_indices=source_indices)


def validate(G: FiniteGroup) -> bool:
    """Re-checks the four table invariants; raises InvalidGroupTable on failure."""
    identity = _check_latin_and_identity(G.table)
    if identity != IDENTITY:
        raise NoIdentity(f"identity sits at index {identity}, not 0")
    if (G.table[np.arange(G.order), G.inverses] != IDENTITY).any():
        raise InvalidGroupTable("inverse table disagrees with the multiplication table")
    failure = _first_associativity_failure(G.table)
    if failure is not None:
        raise NotAssociative(failure)
    return True


def from_permutation_generators(gens: Sequence[Permutation], degree: Optional[int] = None,
                                max_order: int = DEFAULT_LIMITS.max_group_order,
                                label: str = "") -> FiniteGroup:
    """
    Closes a list of permutations under composition.

    Elements are numbered in breadth-first discovery order from the identity,
    right-multiplying by the generators in list order.
    """
    if gens:
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise BadParameter("all generators must share one degree")
    elif degree is None:
        degree = 1

    start = tuple(range(degree))
    elements = [start]
    index = {start: 0}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(p[i] for i in g.images)
            if q not in index:
                if len(elements) >= max_order:
                    raise SizeLimitExceeded("permutation group order", max_order)
                index[q] = len(elements)
                elements.append(q)
                queue.append(q)

    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    keys = {row.tobytes(): i for i, row in enumerate(perms)}
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for a in range(len(elements)):
        products = perms[a][perms]
        table[a] = [keys[row.tobytes()] for row in products]
    names = [Permutation(p).to_text() for p in elements]
    logging.debug("from_permutation_generators - %d generators closed to order %d",
                  len(gens), len(elements))
    return _trusted_group(table, names, label=label)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"cyclic group needs n >= 1, got {n}")
    idx = np.arange(n)
    names = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return _trusted_group(np.add.outer(idx, idx) % n, names, label=f"cyclic:{n}")


def dihedral(n: int) -> FiniteGroup:
    """The dihedral group of order 2n; element r^a s^b has index a + n*b."""
    if n < 1:
        raise BadParameter(f"dihedral group needs n >= 1, got {n}")
    idx = np.arange(2 * n)
    a, b = idx % n, idx // n
    sign = np.where(b == 1, -1, 1)
    rot = (a[:, None] + sign[:, None] * a[None, :]) % n
    ref = (b[:, None] + b[None, :]) % 2
    names = []
    for i in idx:
        r = "" if a[i] == 0 else ("r" if a[i] == 1 else f"r^{a[i]}")
        s = "s" if b[i] else ""
        names.append(r + s or "e")
    return _trusted_group(rot + n * ref, names, label=f"dihedral:{n}")


# (sign, unit) products of the units 1, i, j, k.
_QUATERNION_UNITS = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)
QUATERNION_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion() -> FiniteGroup:
    """Q8 with elements ordered 1, -1, i, -i, j, -j, k, -k."""
    table = np.empty((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sign, unit = _QUATERNION_UNITS[x // 2][y // 2]
            if (x % 2) ^ (y % 2):
                sign = -sign
            table[x, y] = 2 * unit + (1 if sign < 0 else 0)
    return _trusted_group(table, QUATERNION_NAMES, label="quaternion")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def heisenberg(p: int) -> FiniteGroup:
    """
    Upper unitriangular 3x3 matrices over Z/p.

    The matrix with entries a, c (first row) and b (second row) has index
    a*p^2 + c*p + b, i.e. the above-diagonal entries read row-major.
    """
    if not _is_prime(p):
        raise BadParameter(f"heisenberg needs a prime modulus, got {p}")
    idx = np.arange(p ** 3)
    a, c, b = idx // (p * p), (idx // p) % p, idx % p
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    names = [f"({a[i]},{c[i]},{b[i]})" for i in idx]
    return _trusted_group(A * p * p + C * p + B, names, label=f"heisenberg:{p}")


def symmetric(n: int, max_order: int = DEFAULT_LIMITS.max_group_order) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"symmetric group needs n >= 1, got {n}")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([(0, 1)], n))
    if n >= 3:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return from_permutation_generators(gens, degree=n, max_order=max_order,
                                       label=f"symmetric:{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup,
                   max_order: int = DEFAULT_LIMITS.max_group_order) -> FiniteGroup:
    """G x H with (g, h) at index g*|H| + h."""
    n, m = G.order, H.order
    if n * m > max_order:
        raise SizeLimitExceeded("direct product order", max_order)
    table = G.table[:, None, :, None] * m + H.table[None, :, None, :]
    names = [f"({G.name(g)},{H.name(h)})" for g in range(n) for h in range(m)]
    return _trusted_group(table.reshape(n * m, n * m), names,
                          label=f"product:({G.label},{H.label})")


_FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "heisenberg": heisenberg,
    "symmetric": symmetric,
}


class _FamilyParser:
    """Reads family expressions such as `product:(quaternion,cyclic:3)`."""

    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def parse(self) -> FiniteGroup:
        group = self._expr()
        if self.pos != len(self.text):
            raise UnknownFamily(f"unexpected text {self.text[self.pos:]!r} in {self.text!r}")
        return group

    def _word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def _expect(self, char: str):
        if self.text[self.pos:self.pos + 1] != char:
            raise UnknownFamily(f"expected {char!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def _expr(self) -> FiniteGroup:
        family = self._word().lower()
        if family == "quaternion":
            return quaternion()
        if family == "klein":
            return direct_product(cyclic(2), cyclic(2))
        if family in ("product", "direct_product"):
            self._expect(":")
            self._expect("(")
            left = self._expr()
            self._expect(",")
            right = self._expr()
            self._expect(")")
            return direct_product(left, right)
        if family not in _FAMILIES:
            raise UnknownFamily(f"unknown group family {family!r}")
        self._expect(":")
        digits = self._word()
        if not digits.isdigit():
            raise BadParameter(f"{family} needs an integer parameter, got {digits!r}")
        return _FAMILIES[family](int(digits))


def named_group(spec: str) -> FiniteGroup:
    """
    Builds a group from a family expression.

    Families: cyclic:n, dihedral:n (order 2n), quaternion, heisenberg:p,
    symmetric:n, klein, product:(spec,spec).
    """
    if not isinstance(spec, str) or not spec.strip():
        raise UnknownFamily(f"empty group family {spec!r}")
    return _FamilyParser(spec.strip()).parse()


# --- element arithmetic -------------------------------------------------------

def commutator(G: FiniteGroup, a: int, b: int) -> int:
    """[a, b] = a b a^-1 b^-1."""
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


def conjugate(G: FiniteGroup, h: int, x: int) -> int:
    """h x h^-1."""
    return G.mul(G.mul(h, x), G.inv(h))


def power(G: FiniteGroup, a: int, n: int) -> int:
    if n < 0:
        a, n = G.inv(a), -n
    result = IDENTITY
    base = a
    while n:
        if n & 1:
            result = G.mul(result, base)
        base = G.mul(base, base)
        n >>= 1
    return result


def conjugation_matrix(G: FiniteGroup) -> np.ndarray:
    """C[h, x] = h x h^-1."""
    def compute():
        T = G.table
        return T[T, G.inverses[:, None]]
    return G.cached("conjugation", compute)


def commutator_matrix(G: FiniteGroup) -> np.ndarray:
    """K[x, g] = [x, g]."""
    def compute():
        T = G.table
        inv = G.inverses
        return T[T, T[inv[:, None], inv[None, :]]]
    return G.cached("commutators", compute)


def element_orders(G: FiniteGroup) -> np.ndarray:
    def compute():
        n = G.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        current = idx.copy()
        for k in range(1, n + 1):
            orders[(current == IDENTITY) & (orders == 0)] = k
            if (orders > 0).all():
                break
            current = G.table[current, idx]
        return orders
    return G.cached("element_orders", compute)


def exponent(G: FiniteGroup) -> int:
    """Least m with g^m = 1 for every g."""
    return math.lcm(*(int(o) for o in element_orders(G)))


def conjugacy_classes(G: FiniteGroup) -> List[Tuple[int, ...]]:
    """Classes in order of their smallest member."""
    def compute():
        C = conjugation_matrix(G)
        assigned = np.zeros(G.order, dtype=bool)
        classes = []
        for x in range(G.order):
            if assigned[x]:
                continue
            members = np.unique(C[:, x])
            assigned[members] = True
            classes.append(tuple(int(m) for m in members))
        return classes
    return G.cached("conjugacy_classes", compute)


def closure(G: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    """
    Elements of the subgroup generated by `gens`, in breadth-first order from
    the identity (each layer sorted by index).
    """
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    seen = np.zeros(G.order, dtype=bool)
    seen[IDENTITY] = True
    order = [np.array([IDENTITY], dtype=np.int64)]
    frontier = order[0]
    while frontier.size and gens.size:
        candidates = np.unique(G.table[np.ix_(frontier, gens)])
        fresh = candidates[~seen[candidates]]
        seen[fresh] = True
        if fresh.size:
            order.append(fresh)
        frontier = fresh
    return np.concatenate(order)


def element_index(G: FiniteGroup, token: Union[int, str]) -> int:
    """Resolves a display name (tried first) or an integer index."""
    if isinstance(token, (int, np.integer)):
        index = int(token)
    else:
        text = str(token).strip()
        if G.names is not None and text in G.names:
            return G.names.index(text)
        try:
            index = int(text)
        except ValueError:
            raise UnknownElement(f"{text!r} is neither an element name nor an index of {G!r}") from None
    if not 0 <= index < G.order:
        raise UnknownElement(f"index {index} outside 0..{G.order - 1}")
    return index


def content_hash(G: FiniteGroup) -> str:
    digest = hashlib.sha256()
    digest.update(str(G.order).encode())
    digest.update(G.table.astype("<i8").tobytes())
    return digest.hexdigest()

