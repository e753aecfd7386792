"""
Recursive descent parser for formulas in the language of groups.

    formula := quant | iff
    quant   := ("forall" | "exists") IDENT "." formula
    iff     := imp { "<->" imp }
    imp     := or { "->" or }
    or      := and { "|" and }
    and     := unary { "&" unary }
    unary   := "!" unary | "(" formula ")" | atom
    atom    := term ("=" | "!=") term
    term    := factor { "*" factor }
    factor  := ( IDENT | "1" | "(" term ")" ) { "'" }
"""
import re
from dataclasses import dataclass
from typing import Dict, List

from ..errors import FormulaSyntaxError
from .syntax import (
    And,
    Equation,
    Exists,
    ForAll,
    Formula,
    GroupTerm,
    Iff,
    Implies,
    Inverse,
    Not,
    One,
    Or,
    Product,
    Variable,
)

_TOKEN = re.compile(r"\s*(?:(<->|->|!=|[=!&|*'().])|([A-Za-z][A-Za-z0-9_]*)|(1)(?![0-9]))")
_KEYWORDS = ("forall", "exists")
# tokens that can follow a parenthesised term but never a parenthesised formula
_TERM_CONTINUATIONS = ("=", "!=", "*", "'")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            tokens.append(Token("EOF", "", pos))
            return tokens
        match = _TOKEN.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = match.start(match.lastindex)
        symbol, ident, one = match.groups()
        if symbol:
            tokens.append(Token(symbol, symbol, start))
        elif ident:
            tokens.append(Token(ident if ident in _KEYWORDS else "IDENT", ident, start))
        else:
            tokens.append(Token("1", one, start))
        pos = match.end()


def _match_parentheses(tokens: List[Token]) -> Dict[int, int]:
    """Index of each "(" token mapped to its closing ")"; unbalanced ones are left out."""
    matching, stack = {}, []
    for i, token in enumerate(tokens):
        if token.kind == "(":
            stack.append(i)
        elif token.kind == ")" and stack:
            matching[stack.pop()] = i
    return matching


class FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self._matching = _match_parentheses(self.tokens)

    def parse(self) -> Formula:
        formula = self._formula()
        self._expect("EOF")
        return formula

    # --- token helpers ---

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _accept(self, kind: str) -> bool:
        if self._peek().kind == kind:
            self.index += 1
            return True
        return False

    def _expect(self, *kinds: str) -> Token:
        token = self._peek()
        if token.kind not in kinds:
            found = token.text or "end of input"
            raise FormulaSyntaxError(f"unexpected {found!r}", token.position, kinds)
        self.index += 1
        return token

    # --- formulas ---

    def _formula(self) -> Formula:
        token = self._peek()
        if token.kind in _KEYWORDS:
            self.index += 1
            var = self._expect("IDENT").text
            self._expect(".")
            body = self._formula()
            return ForAll(var, body) if token.kind == "forall" else Exists(var, body)
        return self._iff()

    def _iff(self) -> Formula:
        left = self._imp()
        while self._accept("<->"):
            left = Iff(left, self._imp())
        return left

    def _imp(self) -> Formula:
        left = self._or()
        while self._accept("->"):
            left = Implies(left, self._or())
        return left

    def _or(self) -> Formula:
        operands = [self._and()]
        while self._accept("|"):
            operands.append(self._and())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def _and(self) -> Formula:
        operands = [self._unary()]
        while self._accept("&"):
            operands.append(self._unary())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def _unary(self) -> Formula:
        token = self._peek()
        if token.kind == "!":
            self.index += 1
            return Not(self._unary())
        if token.kind != "(":
            return self._atom()
        # "(" opens a term exactly when its closing ")" is followed by a term continuation
        close = self._matching.get(self.index)
        if close is not None and self.tokens[close + 1].kind in _TERM_CONTINUATIONS:
            return self._atom()
        self.index += 1
        inner = self._formula()
        self._expect(")")
        return inner

    def _atom(self) -> Formula:
        left = self._term()
        operator = self._expect("=", "!=")
        right = self._term()
        equation = Equation(left, right)
        return Not(equation) if operator.kind == "!=" else equation

    # --- terms ---

    def _term(self) -> GroupTerm:
        term = self._factor()
        while self._accept("*"):
            term = Product(term, self._factor())
        return term

    def _factor(self) -> GroupTerm:
        token = self._expect("IDENT", "1", "(")
        if token.kind == "IDENT":
            term = Variable(token.text)
        elif token.kind == "1":
            term = One()
        else:
            term = self._term()
            self._expect(")")
        while self._accept("'"):
            term = Inverse(term)
        return term


def parse(text: str) -> Formula:
    """Parses concrete syntax; raises FormulaSyntaxError with position and expected tokens."""
    return FormulaParser(text).parse()
