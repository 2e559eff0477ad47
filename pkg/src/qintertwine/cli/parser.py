"""Expression language for elements of the algebras and kernel algebras.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | <whitespace> unary)*
    unary  := '-' unary | factor
    factor := atom ('^' ['-'] int)?
    atom   := int | 'q' | generator | named | '(' expr ')'

Generators are ``z0..zn``, ``zeta0..zetan`` (optionally starred), ``x0..xn``
and ``xi0..xin``; named kernels are ``K1 K2 t tau P Kp Kpp``.  A ``*``
written directly after a generator (no whitespace) is the adjoint suffix
unless it is immediately followed by the start of another factor, so
``z0*`` and ``z0* z1`` contain the adjoint letter while ``z1*z0`` and
``z1 * z0`` are products.  Factors separated only by whitespace are
multiplied (this is how normal forms are printed, e.g. ``q^-1 * z0 z1``).
"""

import re
from dataclasses import dataclass

__all__ = ["ParseError", "Node", "tokenize", "parse", "needs_kernel", "KERNEL_NAMES", "evaluate"]

KERNEL_NAMES = ("K1", "K2", "t", "tau", "P", "Kp", "Kpp")


class ParseError(ValueError):
    """Syntax error at character offset ``pos``."""

    def __init__(self, msg, pos, text=""):
        self.msg, self.pos, self.text = msg, pos, text
        super().__init__(self.pretty())

    def pretty(self):
        out = f"parse error at column {self.pos + 1}: {self.msg}"
        if self.text:
            out += f"\n  {self.text}\n  {' ' * self.pos}^"
        return out


@dataclass(frozen=True)
class Token:
    kind: str   # int, name, op, star, lpar, rpar, end
    text: str
    pos: int
    space_before: bool


@dataclass(frozen=True)
class Node:
    """AST node: ``op`` in {int, q, gen, named, add, sub, mul, div, neg, pow}."""
    op: str
    args: tuple = ()
    value: object = None
    pos: int = 0


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+/^*()]))")
_GEN = re.compile(r"^(z|zeta|x|xi)(\d+)$")


def tokenize(text):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        start = pos
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                toks.append(Token("end", "", len(text), pos < len(text)))
                return toks
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        space = m.start(m.lastgroup) > start
        kind = m.lastgroup
        tok = m.group(kind)
        if kind == "op":
            kind = {"(": "lpar", ")": "rpar"}.get(tok, "op")
        toks.append(Token(kind, tok, m.start(m.lastgroup), space))
        pos = m.end()


def _starts_factor(tok):
    return tok.kind in ("int", "name", "lpar")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            t = self.take()
            rhs = self.term()
            node = Node("add" if t.text == "+" else "sub", (node, rhs), pos=t.pos)
        return node

    def term(self):
        node = self.unary()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "*/":
                self.take()
                node = Node("mul" if t.text == "*" else "div", (node, self.unary()), pos=t.pos)
            elif _starts_factor(t) and t.space_before:
                node = Node("mul", (node, self.unary()), pos=t.pos)
            else:
                return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return Node("neg", (self.unary(),), pos=t.pos)
        return self.factor()

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                sign = -1
            e = self.peek()
            if e.kind == "lpar":
                # q^(a/2) style exponents as printed for half powers
                self.take()
                neg = 1
                if self.peek().kind == "op" and self.peek().text == "-":
                    self.take()
                    neg = -1
                num = self.take()
                if num.kind != "int":
                    self.error("expected an integer exponent", num)
                den = 1
                if self.peek().kind == "op" and self.peek().text == "/":
                    self.take()
                    d = self.take()
                    if d.kind != "int":
                        self.error("expected an integer denominator", d)
                    den = int(d.text)
                if self.take().kind != "rpar":
                    self.error("expected ')'")
                from fractions import Fraction
                return Node("pow", (base,), Fraction(sign * neg * int(num.text), den), pos=t.pos)
            if e.kind != "int":
                self.error("expected an integer exponent", e)
            self.take()
            return Node("pow", (base,), sign * int(e.text), pos=t.pos)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return Node("int", value=int(t.text), pos=t.pos)
        if t.kind == "lpar":
            node = self.expr()
            if self.take().kind != "rpar":
                self.error("expected ')'", self.toks[self.i - 1])
            return node
        if t.kind == "name":
            if t.text == "q":
                return Node("q", pos=t.pos)
            if t.text in KERNEL_NAMES:
                return Node("named", value=t.text, pos=t.pos)
            m = _GEN.match(t.text)
            if not m:
                raise ParseError(f"unknown name {t.text!r}", t.pos, self.text)
            kind, idx = m.group(1), int(m.group(2))
            starred = False
            nxt = self.peek()
            if kind in ("z", "zeta") and nxt.kind == "op" and nxt.text == "*" and not nxt.space_before:
                after = self.peek(1)
                if not (_starts_factor(after) and not after.space_before):
                    self.take()
                    starred = True
            return Node("gen", value=(kind, idx, starred), pos=t.pos)
        self.error(f"unexpected {t.text or 'end of input'!r}", t)


def parse(text):
    """AST of ``text``; raises :class:`ParseError` with a column on failure."""
    return _Parser(text).parse()


def _walk(node):
    yield node
    for a in node.args:
        yield from _walk(a)


def needs_kernel(node):
    """True if the expression mentions the second tensor factor or a kernel."""
    for nd in _walk(node):
        if nd.op == "named" and nd.value != "t":
            return True
        if nd.op == "gen" and nd.value[0] in ("zeta", "xi"):
            return True
    return False


def evaluate(node, alg, field, n, named=None, text=""):
    """Value of ``node``: a scalar of ``field`` or an :class:`Element` of ``alg``.

    ``named(name)`` returns the element of a named kernel."""
    from ..freealg.api import letter
    from ..freealg.element import Element, KernelAlgebra

    is_kernel = isinstance(alg, KernelAlgebra)

    def is_elem(v):
        return isinstance(v, Element)

    def lift(v):
        return v if is_elem(v) else Element.scalar(alg, field.convert(v))

    def go(nd):
        op = nd.op
        if op == "int":
            return field.convert(nd.value)
        if op == "q":
            return field.spow(2)
        if op == "gen":
            kind, idx, starred = nd.value
            if idx > n:
                raise ParseError(f"index {idx} out of range for rank {n}", nd.pos, text)
            if kind in ("zeta", "xi") and not is_kernel:
                raise ParseError(f"{kind}{idx} needs a kernel algebra", nd.pos, text)
            name = {"z": "s" if starred else "z", "zeta": "zetas" if starred else "zeta",
                    "x": "x", "xi": "xi"}[kind]
            return letter(alg, name, idx)
        if op == "named":
            if nd.value == "t" and not is_kernel:
                return letter(alg, "x", 0)
            if named is None:
                raise ParseError(f"kernel {nd.value} is not available here", nd.pos, text)
            return named(nd.value)
        if op == "neg":
            v = go(nd.args[0])
            return -v
        a = go(nd.args[0])
        if op == "pow":
            e = nd.value
            if is_elem(a):
                if not isinstance(e, int) or e < 0:
                    raise ParseError("elements can only be raised to non-negative integer powers",
                                     nd.pos, text)
                return a ** e
            if isinstance(e, int):
                return a ** e if e >= 0 else field.one / a ** (-e)
            if a == field.spow(2) and (2 * e).denominator == 1:
                return field.spow(int(2 * e))
            raise ParseError("fractional exponents are only allowed on q", nd.pos, text)
        b = go(nd.args[1])
        if op == "add":
            return lift(a) + lift(b) if is_elem(a) or is_elem(b) else a + b
        if op == "sub":
            return lift(a) - lift(b) if is_elem(a) or is_elem(b) else a - b
        if op == "mul":
            if is_elem(a) and is_elem(b):
                return a * b
            if is_elem(a):
                return a.scale(b)
            if is_elem(b):
                return b.scale(a)
            return a * b
        if op == "div":
            if is_elem(b):
                raise ParseError("cannot divide by an algebra element", nd.pos, text)
            if not b:
                raise ParseError("division by zero", nd.pos, text)
            return a.scale(field.one / b) if is_elem(a) else a / b
        raise AssertionError(op)

    return lift(go(node))
