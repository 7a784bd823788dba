"""Set-expression language.

    expr := term (("|" | "&" | "\\") term)*
    term := "!" term | atom ("<<" NAT)*
    atom := "res(" NAT "," NAT ")" | "set{" NAT ("," NAT)* "}"
          | "interval(" NAT "," NAT ")" | "N" | "ep(a=" NAT ";w=" BITS ";per=" BITS ")"
          | "(" expr ")"

Binary operators are left-associative with equal precedence; ``!`` and
``<<`` bind tighter. ``a << n`` is the leftward shift ``a - n``.
"""
from __future__ import annotations

from dataclasses import dataclass
import re

from .epset import (
    NAT,
    EpSet,
    complement,
    difference,
    finite,
    from_bits,
    intersect,
    interval,
    res,
    shift_left,
    union,
)

__all__ = ["ParseError", "parse", "evaluate", "parse_set", "unparse"]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    kind: str  # res | set | interval | N | ep
    args: tuple


@dataclass(frozen=True)
class Not:
    operand: object


@dataclass(frozen=True)
class Shift:
    operand: object
    n: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<ep>ep\(a=\d+;w=[01]*;per=[01]+\))|(?P<num>\d+)|(?P<word>res|set|interval|N)"
    r"|(?P<op><<|[|&\\!(){},]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, got {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def nat(self) -> int:
        return int(self.take(kind="num")[1])

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("|", "&", "\\"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        if self.peek()[1] == "!":
            self.take("!")
            return Not(self.term())
        node = self.atom()
        while self.peek()[1] == "<<":
            self.take("<<")
            node = Shift(node, self.nat())
        return node

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "ep":
            self.take()
            return Atom("ep", (val,))
        if val == "N":
            self.take()
            return Atom("N", ())
        if val == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if val in ("res", "interval"):
            self.take()
            self.take("(")
            x = self.nat()
            self.take(",")
            y = self.nat()
            close = self.take(")")
            if val == "res" and y == 0:
                raise ParseError("res modulus must be positive", close[2])
            if val == "interval" and (x < 1 or x > y):
                raise ParseError(f"bad interval({x},{y})", pos)
            return Atom(val, (x, y))
        if val == "set":
            self.take()
            self.take("{")
            elems = [self.nat()]
            while self.peek()[1] == ",":
                self.take(",")
                elems.append(self.nat())
            self.take("}")
            if 0 in elems:
                raise ParseError("set elements are positive", pos)
            return Atom("set", tuple(elems))
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str):
    p = _Parser(text)
    node = p.expr()
    p.take(kind="end")
    return node


def evaluate(node) -> EpSet:
    if isinstance(node, Atom):
        if node.kind == "N":
            return NAT
        if node.kind == "res":
            return res(*node.args)
        if node.kind == "interval":
            return interval(*node.args)
        if node.kind == "set":
            return finite(node.args)
        m = re.match(r"ep\(a=(\d+);w=([01]*);per=([01]+)\)", node.args[0])
        a, pre, per = int(m.group(1)), m.group(2), m.group(3)
        if a != len(pre):
            raise ValueError(f"a={a} but preperiod word has {len(pre)} bits")
        return from_bits(pre, per)
    if isinstance(node, Not):
        return complement(evaluate(node.operand))
    if isinstance(node, Shift):
        return shift_left(evaluate(node.operand), node.n)
    if isinstance(node, BinOp):
        left, right = evaluate(node.left), evaluate(node.right)
        return {"|": union, "&": intersect, "\\": difference}[node.op](left, right)
    raise TypeError(node)


def parse_set(text: str) -> EpSet:
    return evaluate(parse(text))


def unparse(node) -> str:
    if isinstance(node, Atom):
        if node.kind == "N":
            return "N"
        if node.kind == "ep":
            return node.args[0]
        if node.kind == "set":
            return "set{" + ",".join(map(str, node.args)) + "}"
        return f"{node.kind}({node.args[0]},{node.args[1]})"
    if isinstance(node, Not):
        return "!" + unparse(node.operand)
    if isinstance(node, Shift):
        inner = unparse(node.operand)
        if isinstance(node.operand, (BinOp, Not)):
            inner = f"({inner})"
        return f"{inner} << {node.n}"
    if isinstance(node, BinOp):
        right = unparse(node.right)
        if isinstance(node.right, BinOp):
            right = f"({right})"
        return f"{unparse(node.left)} {node.op} {right}"
    raise TypeError(node)
