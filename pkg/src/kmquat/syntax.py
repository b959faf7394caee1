"""Text form of bracket expressions and normal-form elements.

Grammar (whitespace ignored)::

    expr  := ["-"] term (("+" | "-") term)*
    term  := [coef "*"] atom | "0"
    coef  := ["-"] rational | "(" gauss ")"
    atom  := "[" expr "," expr "]" | gen
    gen   := ["Ji" | "J" | "i"] ("e" | "f" | "hv" | "h") index

``hv<i>`` is the coroot of simple root i, ``h<k>`` the k-th Cartan basis
vector (row k of the extended matrix, 1-based).  Indices are 1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import lyndon
from .lie import CARTAN, MINUS, PLUS, GenSymbol, Kind, LieElement, MarkedGen, UniversalAlgebra, word_degree
from .scalars import GaussRational, Marker


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Gen:
    gen: MarkedGen


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[object, "Expr"], ...]


Expr = Union[Gen, Bracket, Sum]


def gen(kind: str, index: int, marker: Marker = Marker.ONE) -> Gen:
    return Gen(MarkedGen(marker, GenSymbol(Kind(kind), index)))


def br(left: Expr, right: Expr) -> Bracket:
    return Bracket(left, right)


def lin(*pairs: tuple[object, Expr]) -> Sum:
    return Sum(tuple(pairs))


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>(?:Ji|J|i)?(?:hv|h|e|f)\d+)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<gauss>\([^()]*\))"
    r"|(?P<op>[\[\],*+\-]))"
)
_GEN = re.compile(r"(Ji|J|i)?(hv|h|e|f)(\d+)")
_GAUSS_PART = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(i?)")


def _parse_gauss(text: str, pos: int) -> GaussRational:
    body = text[1:-1].replace(" ", "")
    if not body:
        raise ParseError("empty coefficient", pos)
    re_part, im_part = Fraction(0), Fraction(0)
    k = 0
    while k < len(body):
        m = _GAUSS_PART.match(body, k)
        if not m or m.end() == k or not (m.group(2) or m.group(3)):
            raise ParseError(f"bad complex coefficient {text!r}", pos)
        sign = -1 if m.group(1) == "-" else 1
        if k > 0 and not m.group(1):
            raise ParseError(f"bad complex coefficient {text!r}", pos)
        value = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * value
        else:
            re_part += sign * value
        k = m.end()
    return GaussRational(re_part, im_part)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[start]!r}", start)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.k = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.k += 1
        return tok

    def expect(self, op: str) -> None:
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}", pos)

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def expr(self) -> Expr:
        terms = []
        sign = 1
        if self.at_op("-"):
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.at_op("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        terms = [t for t in terms if t is not None]
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self, sign: int):
        if self.at_op("-"):
            self.take()
            sign = -sign
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a term", len(self.text))
        kind, value, pos = tok
        coef: object = Fraction(1)
        if kind == "num":
            self.take()
            if not self.at_op("*"):
                if Fraction(value) == 0:
                    return None
                raise ParseError("a bare scalar is not a Lie element; use 'c*atom'", pos)
            self.take()
            coef = Fraction(value)
        elif kind == "gauss":
            self.take()
            coef = _parse_gauss(value, pos)
            self.expect("*")
        return (sign * coef if sign < 0 else coef), self.atom()

    def atom(self) -> Expr:
        kind, value, pos = self.take()
        if kind == "op" and value == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        if kind == "gen":
            m = _GEN.fullmatch(value)
            marker = {None: Marker.ONE, "i": Marker.I, "J": Marker.J, "Ji": Marker.JI}[m.group(1)]
            index = int(m.group(3))
            if index < 1:
                raise ParseError("indices start at 1", pos)
            return Gen(MarkedGen(marker, GenSymbol(Kind(m.group(2)), index)))
        raise ParseError(f"expected a generator or '[', found {value!r}", pos)


def parse(text: str) -> Expr:
    p = _Parser(text)
    if not p.tokens:
        raise ParseError("empty expression", 0)
    out = p.expr()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return out


def check_ranges(expr: Expr, alg: UniversalAlgebra) -> None:
    """Raise IndexError for generators outside the algebra."""
    if isinstance(expr, Gen):
        alg.gen(expr.gen)
    elif isinstance(expr, Bracket):
        check_ranges(expr.left, alg)
        check_ranges(expr.right, alg)
    else:
        for _, sub in expr.terms:
            check_ranges(sub, alg)


# -- printing ---------------------------------------------------------------


def format_scalar(c) -> str:
    if isinstance(c, GaussRational) and not c.is_real:
        re_s = "" if c.re == 0 else _fmt_q(c.re)
        im = c.im
        mag = "" if abs(im) == 1 else _fmt_q(abs(im))
        if re_s:
            return f"({re_s}{'-' if im < 0 else '+'}{mag}i)"
        return f"({'-' if im < 0 else ''}{mag}i)"
    if isinstance(c, GaussRational):
        c = c.re
    return _fmt_q(Fraction(c))


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_word(word, sector: str) -> str:
    if len(word) == 1:
        letter = word[0]
        return f"{'J' if letter & 1 else ''}{'e' if sector == PLUS else 'f'}{(letter >> 1) + 1}"
    u, v = lyndon.standard_factorization(tuple(word))
    return f"[{format_word(u, sector)},{format_word(v, sector)}]"


def format_cartan(key: tuple[int, int], alg: UniversalAlgebra) -> str:
    m, k = key
    prefix = "J" if m else ""
    for i in range(alg.n):
        if alg.realization.coroot_index(i) == k:
            return f"{prefix}hv{i + 1}"
    return f"{prefix}h{k + 1}"


def sort_key(sector: str, key, n: int):
    if sector == CARTAN:
        return (0, (0,) * n, 0, key)
    sign = 1 if sector == PLUS else -1
    deg = word_degree(key, n, sign)
    return (sum(deg), deg, len(key), key)


def format_element(x: LieElement, alg: UniversalAlgebra) -> str:
    terms = sorted(x.terms(), key=lambda t: sort_key(t[0], t[1], alg.n))
    if not terms:
        return "0"
    parts = []
    for sector, key, c in terms:
        atom = format_cartan(key, alg) if sector == CARTAN else format_word(key, sector)
        parts.append(f"{format_scalar(c)}*{atom}")
    return " + ".join(parts)


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Gen):
        g = expr.gen
        prefix = "" if g.marker is Marker.ONE else g.marker.value
        return f"{prefix}{g.sym.kind.value}{g.sym.index}"
    if isinstance(expr, Bracket):
        return f"[{format_expr(expr.left)},{format_expr(expr.right)}]"
    if not expr.terms:
        return "0"
    return " + ".join(f"{format_scalar(c)}*{format_expr(sub)}" for c, sub in expr.terms)


def evaluate(text: str, alg: UniversalAlgebra) -> LieElement:
    return alg.evaluate(parse(text))
