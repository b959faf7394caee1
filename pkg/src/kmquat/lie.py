"""Elements and bracket of the universal algebra in triangular normal form.

Every element is a sum  minus-part + Cartan-part + plus-part.  The plus
part lives in the free Lie algebra on the 2n letters e_1 < Je_1 < e_2 < ...,
stored in the Lyndon basis; letter ``2*i + m`` is e_(i+1) for m = 0 and
Je_(i+1) for m = 1.  The minus part uses the same encoding for f / Jf.
Cartan keys are ``(m, k)``: m = 0 for h_k, 1 for Jh_k, with h_k the k-th
row (0-based) of the extended matrix.

Coefficients are exact: :class:`fractions.Fraction` or
:class:`~kmquat.scalars.GaussRational`.  The bracket is C-bilinear; J is a
marker resolved only through the relation table.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import lyndon
from .lyndon import Word
from .realization import Realization
from .scalars import GaussRational, Marker

PLUS, CARTAN, MINUS = "+", "h", "-"


class LieEngineError(Exception):
    pass


class UnsupportedMarkerPair(LieEngineError):
    """An i-marked operand met a J-marked one across sectors; use the oracle."""


class SameIndex(LieEngineError):
    pass


class BadSign(LieEngineError):
    pass


class _MixedType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MIXED"


MIXED = _MixedType()


class Kind(enum.Enum):
    E = "e"
    F = "f"
    H = "h"  # Cartan basis vector, row k of E
    HV = "hv"  # coroot alpha_i^v


@dataclass(frozen=True)
class GenSymbol:
    kind: Kind
    index: int  # 1-based


@dataclass(frozen=True)
class MarkedGen:
    marker: Marker
    sym: GenSymbol

    @property
    def is_lowering(self) -> bool:
        return self.sym.kind is Kind.F

    @property
    def is_raising(self) -> bool:
        return self.sym.kind is Kind.E


def _nonzero(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


def _is_nonreal(c) -> bool:
    return isinstance(c, GaussRational) and c.im != 0


def letter_index(letter: int) -> int:
    return letter >> 1


def letter_has_j(letter: int) -> bool:
    return bool(letter & 1)


class LieElement:
    """Immutable value: three finitely supported coefficient maps."""

    __slots__ = ("_plus", "_cartan", "_minus", "_hash")

    def __init__(self, plus: Mapping | None = None, cartan: Mapping | None = None, minus: Mapping | None = None):
        self._plus = _nonzero(plus or {})
        self._cartan = _nonzero(cartan or {})
        self._minus = _nonzero(minus or {})
        self._hash = None

    @property
    def plus(self) -> Mapping[Word, object]:
        return self._plus

    @property
    def cartan(self) -> Mapping[tuple[int, int], object]:
        return self._cartan

    @property
    def minus(self) -> Mapping[Word, object]:
        return self._minus

    def parts(self) -> tuple[dict, dict, dict]:
        return self._plus, self._cartan, self._minus

    def terms(self) -> Iterator[tuple[str, object, object]]:
        for k, c in self._plus.items():
            yield PLUS, k, c
        for k, c in self._cartan.items():
            yield CARTAN, k, c
        for k, c in self._minus.items():
            yield MINUS, k, c

    def is_zero(self) -> bool:
        return not (self._plus or self._cartan or self._minus)

    def __bool__(self):
        return not self.is_zero()

    def _combine(self, other: "LieElement", sign: int) -> "LieElement":
        out = []
        for mine, theirs in zip(self.parts(), other.parts()):
            d = dict(mine)
            for k, c in theirs.items():
                d[k] = d.get(k, 0) + (c if sign > 0 else -c)
            out.append(d)
        return LieElement(*out)

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return LieElement(*({k: -c for k, c in part.items()} for part in self.parts()))

    def scale(self, c) -> "LieElement":
        if not c:
            return ZERO
        return LieElement(*({k: c * v for k, v in part.items()} for part in self.parts()))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, GaussRational)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return all(a == b for a, b in zip(self.parts(), other.parts()))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(frozenset(p.items()) for p in self.parts()))
        return self._hash

    def __repr__(self):
        return f"LieElement(plus={self._plus}, cartan={self._cartan}, minus={self._minus})"


ZERO = LieElement()


def _add_into(acc: list[dict], elem: LieElement, c) -> None:
    for d, part in zip(acc, elem.parts()):
        for k, v in part.items():
            d[k] = d.get(k, 0) + c * v


def word_degree(word: Word, n: int, sign: int = 1) -> tuple[int, ...]:
    k = [0] * n
    for letter in word:
        k[letter_index(letter)] += sign
    return tuple(k)


def height(alpha: Sequence[int]) -> int:
    return sum(alpha)


class UniversalAlgebra:
    """The universal algebra of a realized matrix, with memoized brackets."""

    def __init__(self, realization: Realization):
        self.realization = realization
        self.n = realization.n
        self.dim = realization.dim
        self._basis_cache: dict = {}
        self._cross_cache: dict = {}
        self._jact_cache: dict = {}
        self._lyndon_by_len: dict[int, dict[tuple[int, ...], list[Word]]] = {}

    # -- generators ---------------------------------------------------------

    def _letter(self, i: int, marker: Marker) -> tuple[int, object]:
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")
        return 2 * (i - 1) + int(marker.has_j), _marker_coef(marker)

    def e(self, i: int, marker: Marker = Marker.ONE) -> LieElement:
        letter, c = self._letter(i, marker)
        return LieElement(plus={(letter,): c})

    def f(self, i: int, marker: Marker = Marker.ONE) -> LieElement:
        letter, c = self._letter(i, marker)
        return LieElement(minus={(letter,): c})

    def h(self, k: int, marker: Marker = Marker.ONE) -> LieElement:
        """Cartan basis vector k (1-based row of E), optionally J-marked."""
        if not 1 <= k <= self.dim:
            raise IndexError(f"Cartan index {k} out of range 1..{self.dim}")
        return LieElement(cartan={(int(marker.has_j), k - 1): _marker_coef(marker)})

    def coroot(self, i: int, marker: Marker = Marker.ONE) -> LieElement:
        if not 1 <= i <= self.n:
            raise IndexError(f"coroot index {i} out of range 1..{self.n}")
        return self.h(self.realization.coroot_index(i - 1) + 1, marker)

    def gen(self, g: MarkedGen) -> LieElement:
        kind = g.sym.kind
        if kind is Kind.E:
            return self.e(g.sym.index, g.marker)
        if kind is Kind.F:
            return self.f(g.sym.index, g.marker)
        if kind is Kind.H:
            return self.h(g.sym.index, g.marker)
        return self.coroot(g.sym.index, g.marker)

    def generators(self) -> list[tuple[MarkedGen, LieElement]]:
        """All 2(2n - r) + 4n marked generators with markers in {1, J}."""
        out = []
        for m in (Marker.ONE, Marker.J):
            for k in range(1, self.dim + 1):
                g = MarkedGen(m, GenSymbol(Kind.H, k))
                out.append((g, self.gen(g)))
        for kind in (Kind.E, Kind.F):
            for i in range(1, self.n + 1):
                for m in (Marker.ONE, Marker.J):
                    g = MarkedGen(m, GenSymbol(kind, i))
                    out.append((g, self.gen(g)))
        return out

    # -- pairing ------------------------------------------------------------

    def root_on(self, i: int, k: int) -> Fraction:
        """<alpha_i, h_k> with 0-based root index i and Cartan row k."""
        return self.realization.root_on_basis(i, k)

    def _word_weight(self, word: Word, k: int) -> Fraction:
        return sum((self.root_on(letter_index(l), k) for l in word), Fraction(0))

    # -- bracket ------------------------------------------------------------

    def _cartan_act(self, key: tuple[int, int], sector: str, word: Word) -> LieElement:
        m, k = key
        sign = 1 if sector == PLUS else -1
        if m == 0:
            c = sign * self._word_weight(word, k)
            return LieElement(**{_part(sector): {word: c}})
        cache_key = (k, sector, word)
        hit = self._jact_cache.get(cache_key)
        if hit is not None:
            return hit
        d = self._j_derivation(k, sector, word)
        result = LieElement(**{_part(sector): d})
        self._jact_cache[cache_key] = result
        return result

    def _j_derivation(self, k: int, sector: str, word: Word) -> dict[Word, Fraction]:
        # Jh_k: plus  e -> a Je, Je -> -a e;  minus  f -> -a Jf, Jf -> a f
        if len(word) == 1:
            letter = word[0]
            a = self.root_on(letter_index(letter), k)
            if not a:
                return {}
            flip = letter ^ 1
            s = -1 if letter_has_j(letter) else 1
            if sector == MINUS:
                s = -s
            return {(flip,): s * a}
        u, v = lyndon.standard_factorization(word)
        du = self._j_derivation(k, sector, u)
        dv = self._j_derivation(k, sector, v)
        out = lyndon.bracket_combination(du, {v: Fraction(1)})
        for w, c in lyndon.bracket_combination({u: Fraction(1)}, dv).items():
            out[w] = out.get(w, 0) + c
        return _nonzero(out)

    def _cross(self, u: Word, v: Word) -> LieElement:
        """[P_u, P_v] for u a plus word and v a minus word."""
        key = (u, v)
        hit = self._cross_cache.get(key)
        if hit is not None:
            return hit
        if len(u) == 1 and len(v) == 1:
            a, b = u[0], v[0]
            if letter_index(a) != letter_index(b):
                result = ZERO
            else:
                k = self.realization.coroot_index(letter_index(a))
                ja, jb = letter_has_j(a), letter_has_j(b)
                if ja and jb:
                    result = LieElement(cartan={(0, k): Fraction(-1)})
                elif ja or jb:
                    result = LieElement(cartan={(1, k): Fraction(1)})
                else:
                    result = LieElement(cartan={(0, k): Fraction(1)})
        elif len(u) >= len(v):
            # [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
            u1, u2 = lyndon.standard_factorization(u)
            pu1 = LieElement(plus={u1: Fraction(1)})
            pu2 = LieElement(plus={u2: Fraction(1)})
            result = self._bracket(pu1, self._cross(u2, v)) - self._bracket(pu2, self._cross(u1, v))
        else:
            # [u,[v1,v2]] = [[u,v1],v2] + [v1,[u,v2]]
            v1, v2 = lyndon.standard_factorization(v)
            pv1 = LieElement(minus={v1: Fraction(1)})
            pv2 = LieElement(minus={v2: Fraction(1)})
            result = self._bracket(self._cross(u, v1), pv2) + self._bracket(pv1, self._cross(u, v2))
        self._cross_cache[key] = result
        return result

    def _basis_bracket(self, sx: str, kx, sy: str, ky) -> LieElement:
        key = (sx, kx, sy, ky)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        if sx == CARTAN and sy == CARTAN:
            result = ZERO
        elif sx == sy:
            result = LieElement(**{_part(sx): lyndon.bracket(kx, ky)})
        elif sx == CARTAN:
            result = self._cartan_act(kx, sy, ky)
        elif sy == CARTAN:
            result = -self._cartan_act(ky, sx, kx)
        elif sx == PLUS:
            result = self._cross(kx, ky)
        else:
            result = -self._cross(ky, kx)
        self._basis_cache[key] = result
        return result

    def _bracket(self, x: LieElement, y: LieElement) -> LieElement:
        acc: list[dict] = [{}, {}, {}]
        for sx, kx, a in x.terms():
            for sy, ky, b in y.terms():
                r = self._basis_bracket(sx, kx, sy, ky)
                if r:
                    _add_into(acc, r, a * b)
        return LieElement(*acc)

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        _check_marker_pairs(x, y)
        return self._bracket(x, y)

    def ad_power(self, x: LieElement, m: int, y: LieElement) -> LieElement:
        if m < 0:
            raise ValueError("ad power must be >= 0")
        for _ in range(m):
            y = self.bracket(x, y)
        return y

    # -- grading ------------------------------------------------------------

    def degree(self, x: LieElement):
        """Common root vector of all terms, MIXED if they disagree, None for 0."""
        degrees = set()
        for w in x.plus:
            degrees.add(word_degree(w, self.n, 1))
        if x.cartan:
            degrees.add((0,) * self.n)
        for w in x.minus:
            degrees.add(word_degree(w, self.n, -1))
        if not degrees:
            return None
        if len(degrees) > 1:
            return MIXED
        return degrees.pop()

    def _lyndon_bucket(self, length: int) -> dict[tuple[int, ...], list[Word]]:
        bucket = self._lyndon_by_len.get(length)
        if bucket is None:
            bucket = {}
            for w in lyndon.lyndon_words(length, 2 * self.n):
                if len(w) == length:
                    bucket.setdefault(word_degree(w, self.n), []).append(w)
            self._lyndon_by_len[length] = bucket
        return bucket

    def graded_basis_free(self, alpha: Sequence[int], sector: str = PLUS) -> list[Word]:
        """Lyndon basis of the free component of degree alpha (sorted)."""
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.n:
            raise ValueError(f"root vector must have length {self.n}")
        if sector == MINUS:
            alpha = tuple(-a for a in alpha)
        elif sector != PLUS:
            raise ValueError(f"unknown sector {sector!r}")
        if any(a < 0 for a in alpha) or not any(alpha):
            raise BadSign(f"degree {alpha} does not lie in the {sector} sector")
        return list(self._lyndon_bucket(sum(alpha)).get(alpha, []))

    def word_element(self, word: Word, sector: str = PLUS, coef=Fraction(1)) -> LieElement:
        return LieElement(**{_part(sector): {tuple(word): coef}})

    # -- Serre elements -----------------------------------------------------

    def serre_exponent(self, i: int, j: int) -> int:
        return 1 - self.realization.a[j - 1][i - 1]

    def serre_plus(self, i: int, j: int, marks: tuple[Marker, Marker] = (Marker.ONE, Marker.ONE)) -> LieElement:
        """(ad eps_j)^(1 - A_ji)(eps_i); marks = (marker of eps_j, marker of eps_i)."""
        if i == j:
            raise SameIndex("Serre elements need i != j")
        return self.ad_power(self.e(j, marks[0]), self.serre_exponent(i, j), self.e(i, marks[1]))

    def serre_minus(self, i: int, j: int, marks: tuple[Marker, Marker] = (Marker.ONE, Marker.ONE)) -> LieElement:
        if i == j:
            raise SameIndex("Serre elements need i != j")
        return self.ad_power(self.f(j, marks[0]), self.serre_exponent(i, j), self.f(i, marks[1]))

    def serre_decorations(self) -> Iterator[tuple[int, int, tuple[Marker, Marker]]]:
        marks = (Marker.ONE, Marker.J)
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                if i == j:
                    continue
                for mj in marks:
                    for mi in marks:
                        yield i, j, (mj, mi)

    # -- expressions --------------------------------------------------------

    def evaluate(self, expr) -> LieElement:
        """Evaluate a :mod:`kmquat.syntax` expression tree with this bracket."""
        from .syntax import Bracket, Gen, Sum

        if isinstance(expr, Gen):
            return self.gen(expr.gen)
        if isinstance(expr, Bracket):
            return self.bracket(self.evaluate(expr.left), self.evaluate(expr.right))
        if isinstance(expr, Sum):
            acc: list[dict] = [{}, {}, {}]
            for c, sub in expr.terms:
                _add_into(acc, self.evaluate(sub), c)
            return LieElement(*acc)
        raise TypeError(f"not an expression: {expr!r}")


def _marker_coef(marker: Marker):
    # complex scalars act on the left, so J(i x) = -i (J x)
    if marker is Marker.I:
        return GaussRational(0, 1)
    if marker is Marker.JI:
        return GaussRational(0, -1)
    return Fraction(1)


def _part(sector: str) -> str:
    return {PLUS: "plus", MINUS: "minus", CARTAN: "cartan"}[sector]


def _check_marker_pairs(x: LieElement, y: LieElement) -> None:
    for first, second in ((x, y), (y, x)):
        for u, a in first.plus.items():
            for v, b in second.minus.items():
                if (_is_nonreal(a) and any(letter_has_j(l) for l in v)) or (
                    _is_nonreal(b) and any(letter_has_j(l) for l in u)
                ):
                    raise UnsupportedMarkerPair(
                        "bracket of an i-marked term with a J-marked term across sectors is not "
                        "defined by the relation table; evaluate it with the representation oracle (--oracle)"
                    )


def combination(pairs: Iterable[tuple[object, LieElement]]) -> LieElement:
    acc: list[dict] = [{}, {}, {}]
    for c, x in pairs:
        _add_into(acc, x, c)
    return LieElement(*acc)
