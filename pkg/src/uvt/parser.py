"""Expression grammar shared by the CLI.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'v' | 't' | E<n> | F<n> | K<n> ["'"] | 'star' '(' expr ',' expr ')' | '(' expr ')'

Scalars and algebra elements mix freely; division is only by scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .algebra import QuantumGroup, UElement
from .scalars import T, V, RationalFunction

Value = Union[RationalFunction, UElement]

_TOKEN = re.compile(r"(?:(?P<num>\d+)|(?P<gen>[EFK]\d+'?)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^(),]))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        while text[pos].isspace():
            pos += 1
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class Parser:
    def __init__(self, qg: Optional[QuantumGroup], text: str, star_sign: str = "flipped"):
        self.qg = qg
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.star_sign = star_sign

    # ---- helpers --------------------------------------------------
    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Value:
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return v

    # ---- grammar --------------------------------------------------
    def expr(self) -> Value:
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = _add(self.qg, v, w) if op == "+" else _add(self.qg, v, _neg(w))
        return v

    def term(self) -> Value:
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            w = self.unary()
            if op == "*":
                v = _mul(v, w)
            else:
                if not isinstance(w, RationalFunction):
                    raise ParseError("division by a non-scalar", pos)
                if not w:
                    raise ParseError("division by zero", pos)
                v = _mul(v, w.inverse())
        return v

    def unary(self) -> Value:
        if self.peek()[1] == "-":
            self.take()
            return _neg(self.unary())
        return self.power()

    def power(self) -> Value:
        pos = self.peek()[2]
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val, p = self.take()
        if kind != "num":
            raise ParseError("expected an integer exponent", p)
        n = sign * int(val)
        if isinstance(base, RationalFunction):
            if n < 0 and not base:
                raise ParseError("zero to a negative power", pos)
            return base ** n
        if n < 0:
            if len(base.terms) == 1:
                ((y, a, b, x), c), = base.terms.items()
                if not y and not x:
                    return UElement(base.qg, {((), tuple(n * e for e in a), tuple(n * e for e in b), ()): c ** n})
            raise ParseError("negative powers are only defined for Cartan monomials", pos)
        return base ** n

    def atom(self) -> Value:
        kind, val, pos = self.take()
        if kind == "num":
            return RationalFunction(int(val))
        if kind == "name":
            if val == "v":
                return V
            if val == "t":
                return T
            if val == "star":
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return self._star(a, b)
            raise ParseError(f"unknown name {val!r}", pos)
        if kind == "gen":
            return self._generator(val, pos)
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)

    def _generator(self, val: str, pos: int) -> UElement:
        if self.qg is None:
            raise ParseError("generators need a Cartan datum", pos)
        letter = val[0]
        prime = val.endswith("'")
        idx = int(val[1:].rstrip("'"))
        if not 1 <= idx <= self.qg.rank:
            raise ParseError(f"generator index {idx} out of range 1..{self.qg.rank}", pos)
        i = idx - 1
        if letter == "E":
            if prime:
                raise ParseError("only K generators take a prime", pos)
            return self.qg.E(i)
        if letter == "F":
            if prime:
                raise ParseError("only K generators take a prime", pos)
            return self.qg.F(i)
        return self.qg.Kp(i) if prime else self.qg.K(i)

    def _star(self, a: Value, b: Value) -> Value:
        if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
            return _mul(a, b)
        return self.qg.star_multiply(a, b, self.star_sign)


def _lift(qg, x: Value) -> UElement:
    return x if isinstance(x, UElement) else qg.scalar(x)


def _add(qg, a: Value, b: Value) -> Value:
    if isinstance(a, RationalFunction) and isinstance(b, RationalFunction):
        return a + b
    q = a.qg if isinstance(a, UElement) else b.qg
    return _lift(q, a) + _lift(q, b)


def _neg(a: Value) -> Value:
    return -a


def _mul(a: Value, b: Value) -> Value:
    if isinstance(a, RationalFunction) and isinstance(b, RationalFunction):
        return a * b
    if isinstance(a, RationalFunction):
        return b.scale(a)
    if isinstance(b, RationalFunction):
        return a.scale(b)
    return a * b


def parse_expression(qg: Optional[QuantumGroup], text: str, star_sign: str = "flipped") -> Value:
    return Parser(qg, text, star_sign).parse()


def parse_element(qg: QuantumGroup, text: str, star_sign: str = "flipped") -> UElement:
    v = parse_expression(qg, text, star_sign)
    return v if isinstance(v, UElement) else qg.scalar(v)


def parse_scalar(text: str) -> RationalFunction:
    v = parse_expression(None, text)
    if not isinstance(v, RationalFunction):
        raise ParseError("expected a scalar", 0)
    return v


_WEIGHT_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(a|w)(\d+)\s*")


def parse_weight(text: str, rank: int, fundamental=None) -> Tuple[Fraction, ...]:
    """``"a1+a3"``, ``"2*a1 - a2"``, ``"w2"`` (fundamental weight), ``"1,0,1"``,
    or the single symbol ``"a"`` for rank one."""
    s = text.strip()
    if s in ("0", ""):
        return tuple(Fraction(0) for _ in range(rank))
    if s == "a" and rank == 1:
        return (Fraction(1),)
    if re.fullmatch(r"[-\d/ ]+(,[-\d/ ]+)*", s):
        parts = [Fraction(p.strip()) for p in s.split(",")]
        if len(parts) != rank:
            raise ParseError(f"expected {rank} coordinates", 0)
        return tuple(parts)
    out = [Fraction(0)] * rank
    pos = 0
    while pos < len(s):
        m = _WEIGHT_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("malformed weight", pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        idx = int(m.group(4))
        if not 1 <= idx <= rank:
            raise ParseError(f"index {idx} out of range", m.start(4))
        if m.group(3) == "a":
            out[idx - 1] += sign * coeff
        else:
            if fundamental is None:
                raise ParseError("fundamental weights need a Cartan datum", m.start(3))
            for j, x in enumerate(fundamental[idx - 1]):
                out[j] += sign * coeff * x
        pos = m.end()
    return tuple(out)
