"""
Terms and formulas of the first-order language of groups.

Nodes are immutable dataclasses. `And` and `Or` are n-ary so the very wide
disjunctions built for normal closure formulas stay shallow; `Implies` and
`Iff` are binary and associate to the left, as the concrete syntax reads.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple, Union


# --- terms --------------------------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable names must be nonempty")


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Product:
    left: "GroupTerm"
    right: "GroupTerm"


@dataclass(frozen=True)
class Inverse:
    child: "GroupTerm"


GroupTerm = Union[Variable, One, Product, Inverse]


# --- formulas -----------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    left: GroupTerm
    right: GroupTerm


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    operands: Tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("And needs at least two operands")


@dataclass(frozen=True)
class Or:
    operands: Tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("Or needs at least two operands")


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Equation, Not, And, Or, Implies, Iff, ForAll, Exists]
Quantifier = (ForAll, Exists)


def conjunction(operands: Iterable[Formula]) -> Formula:
    """And of the operands, or the operand itself when there is only one."""
    operands = tuple(operands)
    return operands[0] if len(operands) == 1 else And(operands)


def disjunction(operands: Iterable[Formula]) -> Formula:
    operands = tuple(operands)
    return operands[0] if len(operands) == 1 else Or(operands)


def product(*factors: GroupTerm) -> GroupTerm:
    """Left-associated product; the empty product is One()."""
    if not factors:
        return One()
    result = factors[0]
    for factor in factors[1:]:
        result = Product(result, factor)
    return result


def commutator_term(a: GroupTerm, b: GroupTerm) -> GroupTerm:
    """[a, b] = a b a' b'."""
    return product(a, b, Inverse(a), Inverse(b))


# --- variables ----------------------------------------------------------------

def term_variables(term: GroupTerm) -> FrozenSet[str]:
    if isinstance(term, Variable):
        return frozenset((term.name,))
    if isinstance(term, One):
        return frozenset()
    if isinstance(term, Inverse):
        return term_variables(term.child)
    return term_variables(term.left) | term_variables(term.right)


def free_variables(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, Equation):
        return term_variables(phi.left) | term_variables(phi.right)
    if isinstance(phi, Not):
        return free_variables(phi.child)
    if isinstance(phi, (And, Or)):
        return frozenset().union(*(free_variables(op) for op in phi.operands))
    if isinstance(phi, (Implies, Iff)):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, Quantifier):
        return free_variables(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def is_sentence(phi: Formula) -> bool:
    return not free_variables(phi)


def _rename_term(term: GroupTerm, mapping: Dict[str, str]) -> GroupTerm:
    if isinstance(term, Variable):
        return Variable(mapping.get(term.name, term.name))
    if isinstance(term, One):
        return term
    if isinstance(term, Inverse):
        return Inverse(_rename_term(term.child, mapping))
    return Product(_rename_term(term.left, mapping), _rename_term(term.right, mapping))


def _fresh_name(base: str, avoid: FrozenSet[str]) -> str:
    index = 0
    while f"{base}_{index}" in avoid:
        index += 1
    return f"{base}_{index}"


def _rename(phi: Formula, mapping: Dict[str, str]) -> Formula:
    if isinstance(phi, Equation):
        return Equation(_rename_term(phi.left, mapping), _rename_term(phi.right, mapping))
    if isinstance(phi, Not):
        return Not(_rename(phi.child, mapping))
    if isinstance(phi, (And, Or)):
        return type(phi)(tuple(_rename(op, mapping) for op in phi.operands))
    if isinstance(phi, (Implies, Iff)):
        return type(phi)(_rename(phi.left, mapping), _rename(phi.right, mapping))

    body_free = free_variables(phi.body)
    active = {old: new for old, new in mapping.items() if old != phi.var and old in body_free}
    if not active:
        return phi
    var, body = phi.var, phi.body
    if var in active.values():
        # the bound variable would capture a renamed free occurrence
        fresh = _fresh_name(var, body_free | frozenset(active.values()) | frozenset(active))
        body = _rename(body, {var: fresh})
        var = fresh
    return type(phi)(var, _rename(body, active))


def rename_free(phi: Formula, mapping: Dict[str, str]) -> Formula:
    """
    Simultaneously renames free variables, renaming bound variables where
    needed so no substituted name is captured.
    """
    mapping = {old: new for old, new in mapping.items() if old != new}
    if not mapping:
        return phi
    return _rename(phi, mapping)


# --- printing -----------------------------------------------------------------

_TERM, _FACTOR = 0, 1
_QUANT, _IFF, _IMP, _OR, _AND, _UNARY = range(6)


def term_to_text(term: GroupTerm, context: int = _TERM) -> str:
    if isinstance(term, Variable):
        return term.name
    if isinstance(term, One):
        return "1"
    if isinstance(term, Inverse):
        return term_to_text(term.child, _FACTOR) + "'"
    text = f"{term_to_text(term.left, _TERM)} * {term_to_text(term.right, _FACTOR)}"
    return f"({text})" if context >= _FACTOR else text


def _wrap(text: str, own: int, context: int) -> str:
    return f"({text})" if context > own else text


def _to_text(phi: Formula, context: int) -> str:
    if isinstance(phi, Equation):
        return f"{term_to_text(phi.left)} = {term_to_text(phi.right)}"
    if isinstance(phi, Not):
        if isinstance(phi.child, Equation):
            return f"{term_to_text(phi.child.left)} != {term_to_text(phi.child.right)}"
        return "!" + _to_text(phi.child, _UNARY)
    if isinstance(phi, And):
        return _wrap(" & ".join(_to_text(op, _UNARY) for op in phi.operands), _AND, context)
    if isinstance(phi, Or):
        return _wrap(" | ".join(_to_text(op, _AND) for op in phi.operands), _OR, context)
    if isinstance(phi, Implies):
        return _wrap(f"{_to_text(phi.left, _IMP)} -> {_to_text(phi.right, _OR)}", _IMP, context)
    if isinstance(phi, Iff):
        return _wrap(f"{_to_text(phi.left, _IFF)} <-> {_to_text(phi.right, _IMP)}", _IFF, context)
    if isinstance(phi, Quantifier):
        keyword = "forall" if isinstance(phi, ForAll) else "exists"
        return _wrap(f"{keyword} {phi.var}. {_to_text(phi.body, _QUANT)}", _QUANT, context)
    raise TypeError(f"not a formula: {phi!r}")


def to_text(phi: Formula) -> str:
    """Concrete syntax that parses back to the same tree."""
    return _to_text(phi, _QUANT)
