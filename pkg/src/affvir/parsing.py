"""Text grammar shared by every value type.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | GEN "[" ["-"] INT "]" | "c" | "(" expr ")"

Names depend on the context: parameters ``L A B G`` everywhere, ``s t`` for
module vectors, ``d0 h0`` for candidate polynomials, generators
``e[i] f[i] h[i] d[i]`` and ``c`` for algebra and enveloping elements.
Division is only allowed by scalars.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .liealg import AlgebraElement, EnvelopingElement, Gen
from .scalars import PARAMS, Scalar, as_scalar

CONTEXTS = ("scalar", "spoly", "candidate", "algebra", "enveloping", "ef-candidate")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected {' or '.join(repr(x) for x in self.expected)})"
        super().__init__(text)


@dataclass
class Token:
    kind: str   # "int", "name", "op", "end"
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n and not text[pos:].isspace():
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()[]":
                raise ParseError(f"unexpected character {ch!r}", *_linecol(text, m.start(3)))
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text.rstrip()) if text.strip() else len(text)))
    return out


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


class _Parser:
    def __init__(self, text: str, context: str, offset: int = 0):
        self.text = text
        self.context = context
        self.toks = tokenize(text)
        self.i = 0
        self.offset = offset

    def error(self, message, tok=None, expected=()):
        tok = tok or self.peek()
        line, col = _linecol(self.text, tok.pos)
        if line == 1:
            col += self.offset
        raise ParseError(message, line, col, expected)

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str) -> Token:
        t = self.peek()
        if t.kind == "op" and t.text == op:
            return self.take()
        what = "end of input" if t.kind == "end" else repr(t.text)
        self.error(f"unexpected {what}", t, {op})

    def at(self, op: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == op

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression", expected={"expression"})
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            self.error(f"unexpected {t.text!r}", t, {"+", "-", "*", "/", "end of input"})
        return v

    def expr(self):
        v = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()
            w = self.term()
            v = self.apply(op, v, w)
        return v

    def term(self):
        v = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()
            w = self.unary()
            v = self.apply(op, v, w)
        return v

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.at("^"):
            op = self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            t = self.peek()
            if t.kind != "int":
                self.error("exponent must be an integer", t, {"integer"})
            self.take()
            k = int(t.text)
            k = -k if neg else k
            if k < 0 and not isinstance(v, Scalar):
                self.error("negative exponent of a non-scalar", op)
            try:
                v = v ** k
            except (ArithmeticError, ValueError) as exc:
                self.error(str(exc), op)
        return v

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.take()
            return Scalar(int(t.text))
        if t.kind == "op" and t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            return self.name()
        what = "end of input" if t.kind == "end" else repr(t.text)
        self.error(f"unexpected {what}", t, {"number", "name", "("})

    def name(self):
        t = self.take()
        name = t.text
        ctx = self.context
        if name in PARAMS:
            return Scalar.param(name)
        if ctx == "spoly" and name in ("s", "t"):
            from .polymodule import SPoly

            return SPoly.s() if name == "s" else SPoly.t()
        if ctx == "candidate" and name in ("d0", "h0"):
            from .polymodule import SPoly

            return SPoly.s() if name == "d0" else SPoly.t()
        if ctx in ("algebra", "enveloping"):
            if name == "c":
                return EnvelopingElement(Gen("c"))
            if name in ("e", "f", "h", "d"):
                self.expect("[")
                neg = False
                if self.at("-"):
                    self.take()
                    neg = True
                it = self.peek()
                if it.kind != "int":
                    self.error("generator index must be an integer", it, {"integer"})
                self.take()
                self.expect("]")
                i = int(it.text)
                return EnvelopingElement(Gen(name, -i if neg else i))
        self.error(f"unknown name {name!r} in {ctx} context", t)

    def apply(self, op: Token, v, w):
        try:
            if op.text == "+":
                r = v + w
            elif op.text == "-":
                r = v - w
            elif op.text == "*":
                r = v * w
            else:
                if not isinstance(w, Scalar):
                    self.error("division by a non-scalar", op)
                r = v / w
        except ZeroDivisionError:
            self.error("division by zero", op)
        except TypeError:
            self.error(f"cannot combine operands with {op.text!r}", op)
        if r is NotImplemented:
            self.error(f"cannot combine operands with {op.text!r}", op)
        return r


def parse_expr(text: str, context: str = "scalar", offset: int = 0):
    """Parse ``text`` into the value type of ``context``."""
    if context not in CONTEXTS:
        raise ValueError(f"unknown context {context!r}")
    if context == "ef-candidate":
        from .classify import parse_candidate

        return parse_candidate(text)
    p = _Parser(text, "algebra" if context == "algebra" else context, offset)
    v = p.parse()
    if context == "scalar":
        return as_scalar(v)
    if context in ("spoly", "candidate"):
        from .polymodule import SPoly

        return v if isinstance(v, SPoly) else SPoly(v)
    if isinstance(v, Scalar):
        v = EnvelopingElement.unit(v)
    if context == "enveloping":
        return v
    terms = {}
    for word, c in v.terms.items():
        if len(word) != 1:
            raise ParseError("not an algebra element (products and constants are not allowed)",
                             1, 1 + offset)
        terms[word[0]] = c
    return AlgebraElement(terms)


def parse_scalar(text: str) -> Scalar:
    return parse_expr(text, "scalar")


def parse_spoly(text: str):
    return parse_expr(text, "spoly")


def parse_algebra(text: str) -> AlgebraElement:
    return parse_expr(text, "algebra")


def parse_enveloping(text: str) -> EnvelopingElement:
    return parse_expr(text, "enveloping")


_SPEC = re.compile(r"^\s*(Omega|Delta|Theta)\s*\((.*)\)\s*$", re.S)


def parse_spec(text: str):
    """``Omega(L, A, B, G)`` style module specification."""
    from .polymodule import ModuleSpec

    m = _SPEC.match(text)
    if not m:
        raise ParseError("expected Family(lambda, alpha, beta, gamma)", 1, 1,
                         {"Omega(", "Delta(", "Theta("})
    args, depth, cur, starts = [], 0, [], []
    base = m.start(2)
    start = base
    for k, ch in enumerate(m.group(2)):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            args.append("".join(cur))
            starts.append(start)
            cur, start = [], base + k + 1
        else:
            cur.append(ch)
    args.append("".join(cur))
    starts.append(start)
    if len(args) != 4:
        raise ParseError(f"expected 4 parameters, got {len(args)}", 1, base + 1)
    vals = [parse_expr(a, "scalar", offset=s) for a, s in zip(args, starts)]
    return ModuleSpec(m.group(1), *vals)
