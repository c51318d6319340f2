"""A small expression language for rational functions, kernels and symmetrizers.

Grammar (``^`` binds tighter than unary minus, which binds tighter than ``* /``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' '-'? INT)?
    atom   := INT | symbol | '(' expr ')'
            | 'zeta' '(' INT ',' INT ')' | 'rho' '(' INT ',' INT ')'
            | 'sym' '{' INT ',' INT '}' '(' expr ')'
    symbol := z<k> | q<k> | w<k>[i,j] | v<k>[i,j] | a<name>[i]
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Union

from .lambda_ops import KernelModel, rho_kernel, zeta
from .ring import (
    RatFunc, ShuffleError, Symbol, factor_sym, pair_sym, param, z,
)
from .shuffle import sym_shuffle


class LexError(ShuffleError, ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


class ParseError(ShuffleError, ValueError):
    def __init__(self, msg, pos, expected=()):
        exp = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{msg} at offset {pos}{exp}")
        self.pos = pos
        self.expected = frozenset(expected)


class EvalError(ShuffleError, ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} (at offset {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int

    def __repr__(self):
        return f"{self.kind}({self.text!r})" if self.kind in ("IDENT", "INT") else self.kind


_PUNCT = {"+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH", "^": "POW", "(": "LPAREN",
          ")": "RPAREN", "[": "LBRACK", "]": "RBRACK", ",": "COMMA", "{": "LBRACE", "}": "RBRACE"}
_KEYWORDS = {"sym": "SYM", "zeta": "ZETA", "rho": "RHO"}
_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[-+*/^()\[\],{}]))")


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if mt is None or mt.end() == pos:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            if pos + ws >= len(text):
                break
            raise LexError(f"unexpected character {text[pos + ws]!r}", len(text[:pos + ws].encode()))
        start = mt.start(mt.lastgroup)
        if mt.group("int"):
            out.append(Token("INT", mt.group("int"), start))
        elif mt.group("ident"):
            word = mt.group("ident")
            out.append(Token(_KEYWORDS.get(word, "IDENT"), word, start))
        else:
            ch = mt.group("punct")
            out.append(Token(_PUNCT[ch], ch, start))
        pos = mt.end()
    return out


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class IntLit(Node):
    value: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RatLit(Node):
    value: Fraction
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SymbolRef(Node):
    symbol: Symbol
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp(Node):
    left: Node
    right: Node
    pos: int = field(default=0, compare=False)


class Add(BinOp):
    pass


class Sub(BinOp):
    pass


class Mul(BinOp):
    pass


class Div(BinOp):
    pass


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SymWrap(Node):
    n: int
    m: int
    body: Node
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ZetaRef(Node):
    i: int
    j: int
    model: Optional[KernelModel] = None
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RhoRef(Node):
    n: int
    m: int
    model: Optional[KernelModel] = None
    pos: int = field(default=0, compare=False)


Expr = Union[IntLit, RatLit, SymbolRef, Neg, Add, Sub, Mul, Div, Pow, SymWrap, ZetaRef, RhoRef]


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: List[Token], text_len: int):
        self.toks = tokens
        self.i = 0
        self.end = text_len

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self) -> int:
        t = self.peek()
        return t.pos if t else self.end

    def expect(self, *kinds) -> Token:
        t = self.peek()
        if t is None or t.kind not in kinds:
            got = "end of input" if t is None else repr(t.text)
            raise ParseError(f"unexpected {got}", self.pos(), kinds)
        self.i += 1
        return t

    def accept(self, kind) -> Optional[Token]:
        t = self.peek()
        if t is not None and t.kind == kind:
            self.i += 1
            return t
        return None

    def parse(self) -> Node:
        node = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek().text!r}", self.pos(),
                             ("PLUS", "MINUS", "STAR", "SLASH", "POW"))
        return node

    def expr(self) -> Node:
        left = self.term()
        while True:
            t = self.accept("PLUS") or self.accept("MINUS")
            if t is None:
                return left
            right = self.term()
            left = (Add if t.kind == "PLUS" else Sub)(left, right, t.pos)

    def term(self) -> Node:
        left = self.unary()
        while True:
            t = self.accept("STAR") or self.accept("SLASH")
            if t is None:
                return left
            right = self.unary()
            left = (Mul if t.kind == "STAR" else Div)(left, right, t.pos)

    def unary(self) -> Node:
        t = self.accept("MINUS")
        if t is not None:
            return Neg(self.unary(), t.pos)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        t = self.accept("POW")
        if t is None:
            return base
        sign = -1 if self.accept("MINUS") else 1
        return Pow(base, sign * int(self.expect("INT").text), t.pos)

    def int_(self) -> int:
        return int(self.expect("INT").text)

    def atom(self) -> Node:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.end,
                             ("INT", "IDENT", "LPAREN", "SYM", "ZETA", "RHO", "MINUS"))
        if t.kind == "INT":
            self.i += 1
            return IntLit(int(t.text), t.pos)
        if t.kind == "LPAREN":
            self.i += 1
            node = self.expr()
            self.expect("RPAREN")
            return node
        if t.kind in ("ZETA", "RHO"):
            self.i += 1
            self.expect("LPAREN")
            a = self.int_()
            self.expect("COMMA")
            b = self.int_()
            self.expect("RPAREN")
            return ZetaRef(a, b, None, t.pos) if t.kind == "ZETA" else RhoRef(a, b, None, t.pos)
        if t.kind == "SYM":
            self.i += 1
            self.expect("LBRACE")
            n = self.int_()
            self.expect("COMMA")
            m = self.int_()
            self.expect("RBRACE")
            self.expect("LPAREN")
            body = self.expr()
            self.expect("RPAREN")
            return SymWrap(n, m, body, t.pos)
        if t.kind == "IDENT":
            self.i += 1
            return SymbolRef(self.symbol(t), t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos, ("INT", "IDENT", "LPAREN", "SYM", "ZETA", "RHO", "MINUS"))

    def indices(self, count: int) -> List[int]:
        self.expect("LBRACK")
        out = [self.int_()]
        for _ in range(count - 1):
            self.expect("COMMA")
            out.append(self.int_())
        self.expect("RBRACK")
        return out

    def symbol(self, t: Token) -> Symbol:
        word = t.text
        try:
            mt = re.fullmatch(r"z(\d+)", word)
            if mt:
                return z(int(mt.group(1)))
            if re.fullmatch(r"q\d+", word):
                return param(word)
            mt = re.fullmatch(r"([wv])(\d+)", word)
            if mt:
                i, j = self.indices(2)
                return pair_sym(mt.group(1), int(mt.group(2)), i, j)
            if word.startswith("a") and len(word) > 1:
                (i,) = self.indices(1)
                return factor_sym(word[1:], i)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), t.pos) from None
        raise ParseError(f"unknown symbol {word!r}", t.pos, ("z<k>", "q<k>", "w<k>[i,j]", "v<k>[i,j]", "a<name>[i]"))


def parse(tokens_or_text) -> Node:
    if isinstance(tokens_or_text, str):
        text = tokens_or_text
        return _Parser(tokenize(text), len(text)).parse()
    toks = list(tokens_or_text)
    end = toks[-1].pos + len(toks[-1].text) if toks else 0
    return _Parser(toks, end).parse()


# ---------------------------------------------------------------------------
# rendering


_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(node: Node) -> int:
    if isinstance(node, IntLit) and node.value < 0:
        return 3
    if isinstance(node, RatLit):
        return 2 if node.value.denominator != 1 else (3 if node.value < 0 else 5)
    return _PREC.get(type(node), 5)


def _wrap(node: Node, need: int) -> str:
    s = render_ast(node)
    return f"({s})" if _prec(node) < need else s


def render_ast(node: Node) -> str:
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, RatLit):
        return str(node.value)
    if isinstance(node, SymbolRef):
        return str(node.symbol)
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, 3)
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        return _wrap(node.left, 1) + op + _wrap(node.right, 2)
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        return _wrap(node.left, 2) + op + _wrap(node.right, 3)
    if isinstance(node, Pow):
        return _wrap(node.base, 5) + f"^{node.exp}"
    if isinstance(node, SymWrap):
        return f"sym{{{node.n},{node.m}}}({render_ast(node.body)})"
    if isinstance(node, ZetaRef):
        return f"zeta({node.i},{node.j})"
    if isinstance(node, RhoRef):
        return f"rho({node.n},{node.m})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


def evaluate(node: Node, model: Optional[KernelModel] = None) -> RatFunc:
    try:
        return _eval(node, model)
    except EvalError:
        raise
    except (ShuffleError, ZeroDivisionError, IndexError, ValueError) as exc:
        raise EvalError(str(exc), getattr(node, "pos", 0)) from exc


def _need_model(node, model):
    m = node.model or model
    if m is None:
        raise EvalError("kernel reference needs a model", node.pos)
    return m


def _eval(node: Node, model) -> RatFunc:
    try:
        if isinstance(node, IntLit):
            return RatFunc.const(node.value)
        if isinstance(node, RatLit):
            return RatFunc.const(node.value)
        if isinstance(node, SymbolRef):
            return RatFunc.of(node.symbol)
        if isinstance(node, Neg):
            return -_eval(node.arg, model)
        if isinstance(node, Add):
            return _eval(node.left, model) + _eval(node.right, model)
        if isinstance(node, Sub):
            return _eval(node.left, model) - _eval(node.right, model)
        if isinstance(node, Mul):
            return _eval(node.left, model) * _eval(node.right, model)
        if isinstance(node, Div):
            return _eval(node.left, model) * _invert(node.right, model)
        if isinstance(node, Pow):
            if node.exp >= 0:
                return _eval(node.base, model) ** node.exp
            return _invert(node.base, model) ** (-node.exp)
        if isinstance(node, ZetaRef):
            return zeta(_need_model(node, model), node.i, node.j)
        if isinstance(node, RhoRef):
            return rho_kernel(node.n, node.m, _need_model(node, model))
        if isinstance(node, SymWrap):
            return sym_shuffle(_eval(node.body, model), node.n, node.m)
    except EvalError:
        raise
    except (ShuffleError, ZeroDivisionError, IndexError, ValueError) as exc:
        raise EvalError(str(exc), node.pos) from exc
    raise TypeError(f"not an expression node: {node!r}")


def _invert(node: Node, model) -> RatFunc:
    # Invert products factor by factor so typed binomial denominators stay binomials.
    try:
        if isinstance(node, Mul):
            return _invert(node.left, model) * _invert(node.right, model)
        if isinstance(node, Div):
            return _eval(node.right, model) * _invert(node.left, model)
        if isinstance(node, Neg):
            return -_invert(node.arg, model)
        if isinstance(node, Pow):
            return _eval(node.base, model) ** (-node.exp) if node.exp < 0 else _invert(node.base, model) ** node.exp
        return _eval(node, model).inverse()
    except EvalError:
        raise
    except (ShuffleError, ZeroDivisionError, IndexError, ValueError) as exc:
        raise EvalError(str(exc), node.pos) from exc


def parse_text(text: str, model: Optional[KernelModel] = None) -> RatFunc:
    return evaluate(parse(text), model)


def parse_monomial(text: str):
    """Parse text that must evaluate to a single monomial with coefficient 1."""
    p = parse_text(text).as_poly()
    if p is None or len(p) != 1 or list(p.terms.values()) != [1]:
        raise ValueError(f"{text!r} is not a monomial with coefficient 1")
    return next(iter(p.terms))
