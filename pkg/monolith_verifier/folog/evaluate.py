"""
Finite-model semantics for formulas over a FiniteGroup.

RecursiveEvaluator follows the formula as written, short-circuiting connectives
and quantifiers, with each equation side memoised on the values of its own
variables. ArrayEvaluator turns every subformula into a boolean numpy array
with one axis per free variable and reduces an axis per quantifier; it is
used whenever its widest array fits under Limits.dense_cells.
"""
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..errors import SizeLimitExceeded, UnboundVariable, WrongFreeVariables
from ..group import IDENTITY, FiniteGroup
from ..lattice import ElementSet
from .syntax import (
    And,
    Equation,
    ForAll,
    Formula,
    GroupTerm,
    Iff,
    Implies,
    Inverse,
    Not,
    One,
    Or,
    Quantifier,
    Variable,
    free_variables,
    term_variables,
)

Env = Dict[str, int]

STRATEGIES = ("auto", "recursive", "array")


class RecursiveEvaluator:
    """Compiles a formula into nested closures over a mutable assignment."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self._table = group.table.tolist()
        self._inverses = group.inverses.tolist()
        self._domain = range(group.order)

    def _term(self, term: GroupTerm) -> Callable[[Env], int]:
        if isinstance(term, Variable):
            name = term.name

            def variable(env):
                try:
                    return env[name]
                except KeyError:
                    raise UnboundVariable(name) from None
            return variable
        if isinstance(term, One):
            return lambda env: IDENTITY
        if isinstance(term, Inverse):
            child, inverses = self._term(term.child), self._inverses
            return lambda env: inverses[child(env)]
        left, right, table = self._term(term.left), self._term(term.right), self._table
        return lambda env: table[left(env)][right(env)]

    def _memoised_term(self, term: GroupTerm) -> Callable[[Env], int]:
        compute = self._term(term)
        names = tuple(sorted(term_variables(term)))
        if not names:
            value = compute({})
            return lambda env: value
        memo: Dict[Tuple[int, ...], int] = {}

        def lookup(env):
            try:
                key = tuple(env[name] for name in names)
            except KeyError as exc:
                raise UnboundVariable(exc.args[0]) from None
            if key not in memo:
                memo[key] = compute(env)
            return memo[key]
        return lookup

    def compile(self, phi: Formula) -> Callable[[Env], bool]:
        if isinstance(phi, Equation):
            left, right = self._memoised_term(phi.left), self._memoised_term(phi.right)
            return lambda env: left(env) == right(env)
        if isinstance(phi, Not):
            child = self.compile(phi.child)
            return lambda env: not child(env)
        if isinstance(phi, And):
            operands = [self.compile(op) for op in phi.operands]
            return lambda env: all(op(env) for op in operands)
        if isinstance(phi, Or):
            operands = [self.compile(op) for op in phi.operands]
            return lambda env: any(op(env) for op in operands)
        if isinstance(phi, Implies):
            left, right = self.compile(phi.left), self.compile(phi.right)
            return lambda env: (not left(env)) or right(env)
        if isinstance(phi, Iff):
            left, right = self.compile(phi.left), self.compile(phi.right)
            return lambda env: left(env) == right(env)
        if isinstance(phi, Quantifier):
            return self._quantifier(phi)
        raise TypeError(f"not a formula: {phi!r}")

    def _quantifier(self, phi) -> Callable[[Env], bool]:
        body, var, domain = self.compile(phi.body), phi.var, self._domain
        universal = isinstance(phi, ForAll)

        def quantify(env):
            missing = object()
            saved = env.get(var, missing)
            try:
                for element in domain:
                    env[var] = element
                    if body(env) != universal:
                        return not universal
                return universal
            finally:
                if saved is missing:
                    env.pop(var, None)
                else:
                    env[var] = saved
        return quantify

    def evaluate(self, phi: Formula, assignment: Optional[Mapping[str, int]] = None) -> bool:
        env = {name: int(value) for name, value in (assignment or {}).items()}
        return bool(self.compile(phi)(env))


class ArrayEvaluator:
    """
    Evaluates a formula to (variables, array): the array has one axis of length
    |G| per variable, in the listed order.
    """

    def __init__(self, group: FiniteGroup, limits: Limits = DEFAULT_LIMITS):
        self.group = group
        self.limits = limits

    def _check_width(self, width: int):
        if self.group.order ** width > self.limits.dense_cells:
            raise SizeLimitExceeded(f"array over {width} variables", self.limits.dense_cells)

    @staticmethod
    def _align(names: Tuple[str, ...], array: np.ndarray, target: Tuple[str, ...]) -> np.ndarray:
        order = sorted(range(len(names)), key=lambda i: target.index(names[i]))
        array = np.transpose(array, order)
        return array.reshape([array.shape[order.index(names.index(v))] if v in names else 1
                              for v in target])

    def _combine(self, left, right, op):
        (lnames, larr), (rnames, rarr) = left, right
        target = lnames + tuple(v for v in rnames if v not in lnames)
        self._check_width(len(target))
        shape = (self.group.order,) * len(target)
        result = op(self._align(lnames, larr, target), self._align(rnames, rarr, target))
        return target, np.broadcast_to(result, shape)

    def term(self, term: GroupTerm):
        if isinstance(term, Variable):
            return (term.name,), np.arange(self.group.order)
        if isinstance(term, One):
            return (), np.asarray(IDENTITY)
        if isinstance(term, Inverse):
            names, values = self.term(term.child)
            return names, self.group.inverses[values]
        table = self.group.table
        return self._combine(self.term(term.left), self.term(term.right),
                             lambda a, b: table[a, b])

    def formula(self, phi: Formula):
        if isinstance(phi, Equation):
            return self._combine(self.term(phi.left), self.term(phi.right), np.equal)
        if isinstance(phi, Not):
            names, values = self.formula(phi.child)
            return names, ~values
        if isinstance(phi, (And, Or)):
            op = np.logical_and if isinstance(phi, And) else np.logical_or
            result = self.formula(phi.operands[0])
            for operand in phi.operands[1:]:
                result = self._combine(result, self.formula(operand), op)
            return result
        if isinstance(phi, Implies):
            return self._combine(self.formula(phi.left), self.formula(phi.right),
                                 lambda a, b: ~a | b)
        if isinstance(phi, Iff):
            return self._combine(self.formula(phi.left), self.formula(phi.right), np.equal)
        if isinstance(phi, Quantifier):
            names, values = self.formula(phi.body)
            if phi.var not in names:
                return names, values
            axis = names.index(phi.var)
            reduced = values.all(axis=axis) if isinstance(phi, ForAll) else values.any(axis=axis)
            return names[:axis] + names[axis + 1:], reduced
        raise TypeError(f"not a formula: {phi!r}")

    def evaluate(self, phi: Formula, assignment: Optional[Mapping[str, int]] = None) -> bool:
        assignment = assignment or {}
        names, values = self.formula(phi)
        missing = [name for name in names if name not in assignment]
        if missing:
            raise UnboundVariable(missing[0])
        return bool(values[tuple(int(assignment[name]) for name in names)])

    def table_for(self, phi: Formula, var: str,
                  assignment: Optional[Mapping[str, int]] = None) -> np.ndarray:
        """Truth value of phi for each value of var, the other free variables fixed by assignment."""
        assignment = assignment or {}
        names, values = self.formula(phi)
        missing = [name for name in names if name != var and name not in assignment]
        if missing:
            raise UnboundVariable(missing[0])
        index = tuple(slice(None) if name == var else int(assignment[name]) for name in names)
        result = values[index]
        if var not in names:
            return np.full(self.group.order, bool(result))
        return np.asarray(result, dtype=bool)


def max_width(phi: Formula) -> int:
    """Largest number of variables any array of the array evaluator carries."""
    if isinstance(phi, Equation):
        return len(free_variables(phi))
    if isinstance(phi, Not):
        return max_width(phi.child)
    if isinstance(phi, (And, Or)):
        children = max(max_width(op) for op in phi.operands)
        return max(children, len(free_variables(phi)))
    if isinstance(phi, (Implies, Iff)):
        return max(max_width(phi.left), max_width(phi.right), len(free_variables(phi)))
    return max_width(phi.body)


def _choose_strategy(G: FiniteGroup, phi: Formula, strategy: str, limits: Limits) -> str:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy != "auto":
        return strategy
    return "array" if G.order ** max_width(phi) <= limits.dense_cells else "recursive"


def evaluate(G: FiniteGroup, phi: Formula, assignment: Optional[Mapping[str, int]] = None,
             strategy: str = "auto", limits: Limits = DEFAULT_LIMITS) -> bool:
    """Truth value of phi in G; every free variable must be assigned."""
    assignment = dict(assignment or {})
    unbound = sorted(free_variables(phi) - set(assignment))
    if unbound:
        raise UnboundVariable(unbound[0])
    chosen = _choose_strategy(G, phi, strategy, limits)
    logging.debug("evaluate - %s strategy on %r", chosen, G)
    if chosen == "array":
        return ArrayEvaluator(G, limits).evaluate(phi, assignment)
    return RecursiveEvaluator(G).evaluate(phi, assignment)


def defined_set(G: FiniteGroup, phi: Formula, free_var: str,
                assignment: Optional[Mapping[str, int]] = None,
                strategy: str = "auto", limits: Limits = DEFAULT_LIMITS) -> ElementSet:
    """
    The elements a with phi(a) true. Apart from variables fixed by
    assignment, phi must have exactly free_var free.
    """
    assignment = {name: int(value) for name, value in (assignment or {}).items() if name != free_var}
    free = free_variables(phi) - set(assignment)
    if free != {free_var}:
        raise WrongFreeVariables(f"expected exactly {{{free_var}}} free, found {sorted(free)}")
    if _choose_strategy(G, phi, strategy, limits) == "array":
        flags = ArrayEvaluator(G, limits).table_for(phi, free_var, assignment)
    else:
        check = RecursiveEvaluator(G).compile(phi)
        flags = np.array([check({**assignment, free_var: a}) for a in range(G.order)], dtype=bool)
    return ElementSet.from_flags(G, flags)
