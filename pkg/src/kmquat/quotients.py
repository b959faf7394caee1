"""Graded ideals of the universal algebra and multiplicity tables.

Everything is computed degree by degree inside the free pieces, with exact
rational row reduction.  All structure constants of the relation table are
rational, so working over Q gives the complex ranks.

Serre ideal
    Generated by every marker decoration of the Serre elements.  Any member
    of the ideal at degree alpha is a raising word applied to a lowering
    word applied to a Serre element (PBW), so saturating under ad of all
    generators within heights <= max(maxHt, Serre heights) is exact.

Radical
    x of degree alpha > 0 lies in the maximal ideal meeting the Cartan part
    trivially iff [phi, x] lies in it for every lowering phi, with the
    Cartan part forced to vanish at the bottom.  This is a kernel
    computation, bottom-up in height.  The minus sector mirrors it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import linalg
from .lie import CARTAN, MINUS, PLUS, LieElement, UniversalAlgebra, letter_has_j
from .lyndon import Word
from .realization import realize
from .scalars import Marker

Degree = tuple[int, ...]


class HeightExceeded(ValueError):
    pass


@dataclass
class GradedComponent:
    """Ideal span inside the free component of one degree (rows in RREF)."""

    degree: Degree
    sector: str
    basis: list[Word]
    span: list[list[Fraction]]
    pivots: list[int]

    @property
    def free_dim(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.span)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(linalg.reduce_vector(vec, self.span, self.pivots))

    def elements(self) -> list[LieElement]:
        part = "plus" if self.sector == PLUS else "minus"
        return [LieElement(**{part: dict(zip(self.basis, row))}) for row in self.span]


def graded_degrees(n: int, max_ht: int, min_ht: int = 1) -> list[Degree]:
    """Nonnegative degrees with min_ht <= ht <= max_ht in graded-lex order."""
    out = []
    for ht in range(min_ht, max_ht + 1):
        level = [d for d in itertools.product(range(ht + 1), repeat=n) if sum(d) == ht]
        out.extend(sorted(level, reverse=True))
    return out


def _sub(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def _unit(n: int, j: int) -> Degree:
    return tuple(int(k == j) for k in range(n))


class QuotientContext:
    """Caches free bases, radical and Serre-ideal components of one algebra."""

    def __init__(self, alg: UniversalAlgebra, max_height: int):
        if max_height < 1:
            raise ValueError("max height must be >= 1")
        self.alg = alg
        self.n = alg.n
        self.max_height = max_height
        self._radical: dict[tuple[str, Degree], GradedComponent] = {}
        self._serre: dict[str, dict[Degree, tuple[list, list]]] = {}
        self.violations: list[dict] = []

    @classmethod
    def from_matrix(cls, a, max_height: int, b0=None) -> "QuotientContext":
        return cls(UniversalAlgebra(realize(a, b0)), max_height)

    # -- coordinates --------------------------------------------------------

    def basis(self, alpha: Degree, sector: str = PLUS) -> list[Word]:
        pos = alpha if sector == PLUS else tuple(-a for a in alpha)
        return self.alg.graded_basis_free(pos, sector)

    def _index(self, alpha: Degree, sector: str) -> dict[Word, int]:
        return {w: k for k, w in enumerate(self.basis(alpha, sector))}

    def coords(self, x: LieElement, alpha: Degree, sector: str) -> list[Fraction]:
        idx = self._index(alpha, sector)
        vec = [Fraction(0)] * len(idx)
        for w, c in (x.plus if sector == PLUS else x.minus).items():
            vec[idx[w]] += c
        return vec

    def element(self, vec: Sequence[Fraction], alpha: Degree, sector: str) -> LieElement:
        part = "plus" if sector == PLUS else "minus"
        return LieElement(**{part: dict(zip(self.basis(alpha, sector), vec))})

    def _check_height(self, alpha: Degree) -> None:
        if any(a < 0 for a in alpha) or not any(alpha):
            raise ValueError(f"degree {alpha} must be nonzero with nonnegative entries")
        if sum(alpha) > self.max_height:
            raise HeightExceeded(f"ht {sum(alpha)} exceeds the bound {self.max_height}")

    def _lowering(self, sector: str) -> list[tuple[int, LieElement]]:
        # operators that move a sector element towards degree 0
        out = []
        for j in range(1, self.n + 1):
            for m in (Marker.ONE, Marker.J):
                x = self.alg.f(j, m) if sector == PLUS else self.alg.e(j, m)
                out.append((j - 1, x))
        return out

    # -- radical ------------------------------------------------------------

    def radical(self, alpha: Degree, sector: str = PLUS) -> GradedComponent:
        """Maximal-ideal component at +alpha (plus) or -alpha (minus)."""
        alpha = tuple(alpha)
        self._check_height(alpha)
        key = (sector, alpha)
        if key in self._radical:
            return self._radical[key]
        basis = self.basis(alpha, sector)
        elems = [self.alg.word_element(w, sector) for w in basis]
        constraints: list[list[Fraction]] = []
        for j, phi in self._lowering(sector):
            if alpha[j] == 0:
                continue
            lower = _sub(alpha, _unit(self.n, j))
            images = [self.alg.bracket(phi, x) for x in elems]
            if not any(lower):
                # must vanish outright, Cartan part included
                keys = sorted({k for y in images for k in y.cartan})
                for k in keys:
                    constraints.append([y.cartan.get(k, Fraction(0)) for y in images])
                continue
            below = self.radical(lower, sector)
            cols = [linalg.reduce_vector(self.coords(y, lower, sector), below.span, below.pivots) for y in images]
            for r in range(len(below.basis)):
                row = [col[r] for col in cols]
                if any(row):
                    constraints.append(row)
        kernel = linalg.nullspace(constraints, len(basis))
        span, pivots = linalg.rref(kernel, len(basis)) if kernel else ([], [])
        comp = GradedComponent(alpha, sector, basis, span, pivots)
        self._radical[key] = comp
        return comp

    # -- Serre ideal --------------------------------------------------------

    def serre_elements(self, sector: str = PLUS) -> list[tuple[tuple, LieElement]]:
        make = self.alg.serre_plus if sector == PLUS else self.alg.serre_minus
        return [((i, j, marks), make(i, j, marks)) for i, j, marks in self.alg.serre_decorations()]

    def serre_bound(self) -> int:
        hts = [1 + self.alg.serre_exponent(i, j) for i, j, _ in self.alg.serre_decorations()]
        return max([self.max_height] + hts)

    def _saturate(self, sector: str) -> dict[Degree, tuple[list, list]]:
        if sector in self._serre:
            return self._serre[sector]
        alg, n = self.alg, self.n
        bound = self.serre_bound()
        sign = 1 if sector == PLUS else -1
        comps: dict[Degree, tuple[list, list]] = {}
        queue: list[tuple[Degree, LieElement]] = []

        def add(alpha: Degree, x: LieElement, source: str) -> None:
            if x.is_zero():
                return
            if not any(alpha):
                self.violations.append({"sector": sector, "source": source, "cartan": {str(k): str(v) for k, v in x.cartan.items()}})
                return
            if sum(alpha) > bound:
                return
            vec = self.coords(x, alpha, sector)
            span, piv = comps.get(alpha, ([], []))
            rem = linalg.reduce_vector(vec, span, piv)
            if not any(rem):
                return
            comps[alpha] = linalg.rref(span + [rem], len(vec))
            queue.append((alpha, x))

        for label, s in self.serre_elements(sector):
            deg = alg.degree(s)
            add(tuple(sign * d for d in deg), s, f"serre{label[0]}{label[1]}")

        raising = [(j, alg.e(j + 1, m) if sector == PLUS else alg.f(j + 1, m)) for j in range(n) for m in (Marker.ONE, Marker.J)]
        lowering = self._lowering(sector)
        cartan = [alg.h(k, Marker.J) for k in range(1, alg.dim + 1)]
        while queue:
            alpha, x = queue.pop()
            for j, g in raising:
                up = tuple(a + (k == j) for k, a in enumerate(alpha))
                if sum(up) <= bound:
                    add(up, alg.bracket(g, x), "raise")
            for j, g in lowering:
                if alpha[j] > 0:
                    add(_sub(alpha, _unit(n, j)), alg.bracket(g, x), "lower")
            for g in cartan:
                add(alpha, alg.bracket(g, x), "cartan")
        self._serre[sector] = comps
        return comps

    def serre_ideal(self, alpha: Degree, sector: str = PLUS) -> GradedComponent:
        alpha = tuple(alpha)
        self._check_height(alpha)
        span, piv = self._saturate(sector).get(alpha, ([], []))
        return GradedComponent(alpha, sector, self.basis(alpha, sector), [list(r) for r in span], list(piv))

    def serre_meets_cartan(self) -> bool:
        self._saturate(PLUS)
        self._saturate(MINUS)
        return bool(self.violations)


# -- module-level operations ---------------------------------------------------


def serre_ideal_component(alpha: Degree, max_ht: int, ctx: QuotientContext) -> GradedComponent:
    if sum(alpha) > max_ht or sum(alpha) > ctx.max_height:
        raise HeightExceeded(f"ht {sum(alpha)} exceeds the bound {min(max_ht, ctx.max_height)}")
    return ctx.serre_ideal(alpha)


def radical_component(alpha: Degree, max_ht: int, ctx: QuotientContext) -> GradedComponent:
    if sum(alpha) > max_ht or sum(alpha) > ctx.max_height:
        raise HeightExceeded(f"ht {sum(alpha)} exceeds the bound {min(max_ht, ctx.max_height)}")
    return ctx.radical(alpha)


@dataclass
class MultiplicityRow:
    degree: Degree
    ht: int
    universal: int
    standard: int | None = None
    reduced: int | None = None


@dataclass
class MultiplicityTable:
    n: int
    cartan_dim: int  # complex dimension of H + JH
    rows: list[MultiplicityRow] = field(default_factory=list)
    algebras: tuple[str, ...] = ("universal", "standard", "reduced")

    def row(self, degree: Sequence[int]) -> MultiplicityRow:
        degree = tuple(degree)
        for r in self.rows:
            if r.degree == degree:
                return r
        raise KeyError(degree)

    def total_complex_dim(self, algebra: str) -> int:
        """Cartan part plus both sectors (the minus sector mirrors the plus one)."""
        return self.cartan_dim + 2 * sum(getattr(r, algebra) for r in self.rows)

    def total_real_dim(self, algebra: str) -> int:
        return 2 * self.total_complex_dim(algebra)

    def to_tsv(self) -> str:
        cols = {"universal": "dimU", "standard": "dimS", "reduced": "dimR"}
        lines = ["\t".join(["degree", "ht"] + [cols[a] for a in self.algebras])]
        lines.append("\t".join(["cartan", "0"] + [str(self.cartan_dim)] * len(self.algebras)))
        for r in self.rows:
            vals = [str(getattr(r, a)) for a in self.algebras]
            lines.append("\t".join(["(" + ",".join(map(str, r.degree)) + ")", str(r.ht)] + vals))
        lines.append(
            "\t".join(["total_real", ""] + [str(self.total_real_dim(a)) for a in self.algebras])
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "algebras": list(self.algebras),
            "cartan": {"complexDim": self.cartan_dim, "realDim": 2 * self.cartan_dim},
            "rows": [
                {
                    "degree": list(r.degree),
                    "ht": r.ht,
                    **{a: {"complexDim": getattr(r, a), "realDim": 2 * getattr(r, a)} for a in self.algebras},
                }
                for r in self.rows
            ],
            "totalRealDim": {a: self.total_real_dim(a) for a in self.algebras},
        }


ALGEBRAS = ("universal", "standard", "reduced")


def multiplicities(
    a,
    max_ht: int,
    algebra: str | Iterable[str] = ALGEBRAS,
    ctx: QuotientContext | None = None,
) -> MultiplicityTable:
    """Complex multiplicities of every positive degree up to max_ht."""
    algebras = (algebra,) if isinstance(algebra, str) else tuple(algebra)
    for name in algebras:
        if name not in ALGEBRAS:
            raise ValueError(f"unknown algebra {name!r}")
    if "universal" not in algebras:
        algebras = ("universal",) + algebras
    ctx = ctx or QuotientContext.from_matrix(a, max_ht)
    table = MultiplicityTable(ctx.n, 2 * ctx.alg.dim, algebras=algebras)
    for alpha in graded_degrees(ctx.n, max_ht):
        free = len(ctx.basis(alpha))
        row = MultiplicityRow(alpha, sum(alpha), free)
        if "standard" in algebras:
            row.standard = free - ctx.serre_ideal(alpha).dim
        if "reduced" in algebras:
            row.reduced = free - ctx.radical(alpha).dim
        table.rows.append(row)
    return table


def serre_in_radical_check(a, max_ht: int, ctx: QuotientContext | None = None) -> list[dict]:
    """Per degree and sector: Serre-ideal span contained in the radical span."""
    ctx = ctx or QuotientContext.from_matrix(a, max_ht)
    out = []
    for sector in (PLUS, MINUS):
        for alpha in graded_degrees(ctx.n, max_ht):
            serre = ctx.serre_ideal(alpha, sector)
            rad = ctx.radical(alpha, sector)
            ok = linalg.row_space_contains(rad.span, serre.span) if serre.span else True
            out.append(
                {
                    "check": "serre-in-radical",
                    "generator": f"{sector}{alpha}",
                    "status": "pass" if ok else "fail",
                    "serreDim": serre.dim,
                    "radicalDim": rad.dim,
                }
            )
    return out


def serre_annihilation_check(ctx: QuotientContext, cfg=None) -> list[dict]:
    """ad of every marked raising (lowering) generator on every lowering (raising)
    Serre element must vanish.  Checked symbolically and, when a
    representation config is given, by the operator oracle, which also
    confirms the symbolic value of each bracket."""
    from . import rep
    from .syntax import br, format_element, format_expr, gen

    alg = ctx.alg
    out = []
    for i, j, marks in alg.serre_decorations():
        p = alg.serre_exponent(i, j)
        for sector in (PLUS, MINUS):
            kind, other = ("e", "f") if sector == PLUS else ("f", "e")
            tree = gen(kind, i, marks[1])
            for _ in range(p):
                tree = br(gen(kind, j, marks[0]), tree)
            for k in range(1, alg.n + 1):
                for mk in (Marker.ONE, Marker.J):
                    expr = br(gen(other, k, mk), tree)
                    value = alg.evaluate(expr)
                    entry = {
                        "check": "annihilation",
                        "generator": format_expr(expr),
                        "symbolic": "pass" if value.is_zero() else "fail",
                        "value": format_element(value, alg),
                    }
                    if cfg is not None:
                        zero = rep.expr_operator(expr, cfg)
                        zrep = rep.compare_operators("annihilation-oracle", entry["generator"], zero, rep.zero_operator, cfg, rep.expr_growth(expr))
                        agree = rep.equivalence_check(expr, alg, cfg)
                        entry["oracle"] = zrep.status
                        entry["agreement"] = agree.status
                        entry["pathsAgreeOnZero"] = (entry["symbolic"] == entry["oracle"])
                    ok = entry["symbolic"] == "pass" and entry.get("oracle", "pass") == "pass"
                    entry["status"] = "pass" if ok else "fail"
                    out.append(entry)
    return out
