"""Operator oracle: the tensor-algebra representation of the universal algebra.

A basis word is ``(m, letters)``: ``m = 1`` means a leading J, letters are
0-based simple-root indices.  A :class:`TensorElement` with coefficient c
at ``(m, w)`` stands for J^m (c v_w); complex scalars act on the left, so
J anticommutes with i.

Unmarked generators commute with J, and every J-marked generator acts as
J composed with its unmarked twin.  On unmarked words

* h_k multiplies v_w by <lam, h_k> - sum_j <alpha_j, h_k>,
* f_i prepends v_i,
* e_i (1) = 0 and e_i (v_j w) = v_j (e_i w) + delta_ij alpha_i^v (w).

Everything here is evaluated as honest operator composition and never
calls into the symbolic bracket, so it can serve as an independent check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import lyndon
from .lie import CARTAN, MINUS, PLUS, Kind, LieElement, MarkedGen, UniversalAlgebra
from .realization import Realization
from .scalars import GaussRational, Marker
from .report import Report
from .syntax import Bracket, Expr, Gen, Sum, format_expr

TWord = tuple[int, tuple[int, ...]]


class TruncationOverflow(ArithmeticError):
    pass


def word_str(w: TWord) -> str:
    m, letters = w
    return ("J" if m else "") + "".join(f"v{j + 1}" for j in letters) or "1"


def _conj(c):
    if isinstance(c, GaussRational):
        return c.conjugate()
    return c


class TensorElement:
    """Finitely supported map from words to exact scalars."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[TWord, object] | None = None):
        self._c = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, w: TWord) -> "TensorElement":
        return cls({w: Fraction(1)})

    @property
    def coeffs(self) -> Mapping[TWord, object]:
        return self._c

    def items(self):
        return self._c.items()

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._c == other._c

    def __add__(self, other: "TensorElement") -> "TensorElement":
        d = dict(self._c)
        for w, c in other._c.items():
            d[w] = d.get(w, 0) + c
        return TensorElement(d)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(-1)

    def scale(self, c) -> "TensorElement":
        """Left multiplication by a complex scalar (conjugated past a J)."""
        return TensorElement({w: (c if w[0] == 0 else _conj(c)) * v for w, v in self._c.items()})

    def apply_j(self) -> "TensorElement":
        return TensorElement({(1 - m, w): (v if m == 0 else -v) for (m, w), v in self._c.items()})

    def to_json(self) -> dict:
        out = {}
        for w in sorted(self._c, key=lambda w: (len(w[1]), w)):
            c = self._c[w]
            out[word_str(w)] = GaussRational.coerce(c).to_json()
        return out

    def __repr__(self):
        return f"TensorElement({self.to_json()})"


@dataclass(frozen=True)
class RepConfig:
    L: int
    weight: tuple[Fraction, ...]
    realization: Realization

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("truncation L must be >= 1")
        if len(self.weight) != self.realization.dim:
            raise ValueError(f"weight needs {self.realization.dim} entries, got {len(self.weight)}")

    @classmethod
    def generic(cls, realization: Realization, L: int = 5, weight: Sequence | None = None) -> "RepConfig":
        if weight is None:
            weight = range(1, realization.dim + 1)
        return cls(L, tuple(Fraction(x) for x in weight), realization)

    @property
    def n(self) -> int:
        return self.realization.n

    def words(self, max_len: int) -> Iterator[TWord]:
        for k in range(max(max_len, -1) + 1):
            for letters in itertools.product(range(self.n), repeat=k):
                for m in (0, 1):
                    yield (m, letters)


# -- unmarked generator actions on single words -------------------------------


def _h_eigen(cfg: RepConfig, k: int, letters: tuple[int, ...]) -> Fraction:
    R = cfg.realization
    return cfg.weight[k] - sum((R.root_on_basis(j, k) for j in letters), Fraction(0))


def _e_on_letters(cfg: RepConfig, i: int, letters: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    k = cfg.realization.coroot_index(i)
    for pos, j in enumerate(letters):
        if j == i:
            rest = letters[pos + 1 :]
            c = _h_eigen(cfg, k, rest)
            if c:
                w = letters[:pos] + rest
                out[w] = out.get(w, 0) + c
    return out


def _plain_action(kind: Kind, index: int, cfg: RepConfig, t: TensorElement) -> TensorElement:
    """Unmarked generator; index is 0-based (root index or Cartan row)."""
    out: dict[TWord, object] = {}
    for (m, letters), c in t.items():
        if kind is Kind.F:
            if len(letters) + 1 > cfg.L:
                raise TruncationOverflow(f"f{index + 1} on a word of length {len(letters)} exceeds L = {cfg.L}")
            w = (m, (index,) + letters)
            out[w] = out.get(w, 0) + c
        elif kind is Kind.E:
            for rest, d in _e_on_letters(cfg, index, letters).items():
                w = (m, rest)
                out[w] = out.get(w, 0) + c * d
        else:
            k = index if kind is Kind.H else cfg.realization.coroot_index(index)
            d = _h_eigen(cfg, k, letters)
            if d:
                out[(m, letters)] = out.get((m, letters), 0) + c * d
    return TensorElement(out)


def act_gen(g: MarkedGen, t: TensorElement, cfg: RepConfig) -> TensorElement:
    out = _plain_action(g.sym.kind, g.sym.index - 1, cfg, t)
    if g.marker.has_i:
        out = out.scale(GaussRational(0, 1))
    if g.marker.has_j:
        out = out.apply_j()
    return out


def act(g: MarkedGen, w: TWord, cfg: RepConfig) -> TensorElement:
    m, letters = w
    if len(letters) > cfg.L or any(not 0 <= j < cfg.n for j in letters):
        raise ValueError(f"word {word_str(w)} outside the truncated tensor algebra")
    return act_gen(g, TensorElement.basis(w), cfg)


# -- elements and expressions -------------------------------------------------

Operator = Callable[[TensorElement], TensorElement]


def _letter_op(letter: int, sector: str, cfg: RepConfig) -> Operator:
    kind = Kind.E if sector == PLUS else Kind.F
    i = letter >> 1
    has_j = bool(letter & 1)

    def op(t: TensorElement) -> TensorElement:
        out = _plain_action(kind, i, cfg, t)
        return out.apply_j() if has_j else out

    return op


def word_operator(word: Sequence[int], sector: str, cfg: RepConfig) -> Operator:
    """psi of a Hall basis word, built as nested commutators of letter operators."""
    word = tuple(word)
    if len(word) == 1:
        return _letter_op(word[0], sector, cfg)
    u, v = lyndon.standard_factorization(word)
    pu = word_operator(u, sector, cfg)
    pv = word_operator(v, sector, cfg)
    return lambda t: pu(pv(t)) - pv(pu(t))


def _cartan_op(key: tuple[int, int], cfg: RepConfig) -> Operator:
    m, k = key

    def op(t: TensorElement) -> TensorElement:
        out = _plain_action(Kind.H, k, cfg, t)
        return out.apply_j() if m else out

    return op


def element_operator(x: LieElement, cfg: RepConfig) -> Operator:
    pieces: list[tuple[object, Operator]] = []
    for sector, key, c in x.terms():
        op = _cartan_op(key, cfg) if sector == CARTAN else word_operator(key, sector, cfg)
        pieces.append((c, op))

    def total(t: TensorElement) -> TensorElement:
        acc = TensorElement()
        for c, op in pieces:
            acc = acc + op(t).scale(c)
        return acc

    return total


def act_elem(x: LieElement, t: TensorElement, cfg: RepConfig) -> TensorElement:
    return element_operator(x, cfg)(t)


def expr_operator(expr: Expr, cfg: RepConfig) -> Operator:
    if isinstance(expr, Gen):
        g = expr.gen
        return lambda t: act_gen(g, t, cfg)
    if isinstance(expr, Bracket):
        a, b = expr_operator(expr.left, cfg), expr_operator(expr.right, cfg)
        return lambda t: a(b(t)) - b(a(t))
    ops = [(c, expr_operator(sub, cfg)) for c, sub in expr.terms]

    def total(t: TensorElement) -> TensorElement:
        acc = TensorElement()
        for c, op in ops:
            acc = acc + op(t).scale(c)
        return acc

    return total


def act_expr(expr: Expr, t: TensorElement, cfg: RepConfig) -> TensorElement:
    return expr_operator(expr, cfg)(t)


# -- word-length headroom -----------------------------------------------------


def element_growth(x: LieElement) -> int:
    """Largest number of prepends any term of x can perform."""
    return max((len(w) for w in x.minus), default=0)


def expr_growth(expr: Expr) -> int:
    if isinstance(expr, Gen):
        return int(expr.gen.sym.kind is Kind.F)
    if isinstance(expr, Bracket):
        return expr_growth(expr.left) + expr_growth(expr.right)
    return max((expr_growth(sub) for _, sub in expr.terms), default=0)


# -- checks -------------------------------------------------------------------


def compare_operators(
    check: str,
    label: str,
    lhs: Operator,
    rhs: Operator,
    cfg: RepConfig,
    headroom: int,
) -> Report:
    limit = cfg.L - headroom
    for w in cfg.words(limit):
        t = TensorElement.basis(w)
        a, b = lhs(t), rhs(t)
        if a != b:
            return Report(
                check,
                label,
                "fail",
                {"word": word_str(w), "lhs": a.to_json(), "rhs": b.to_json()},
            )
    return Report(check, label, "pass", extra={"maxWordLength": limit})


def zero_operator(t: TensorElement) -> TensorElement:
    return TensorElement()


def commutator_check(x: LieElement, y: LieElement, cfg: RepConfig, alg: UniversalAlgebra, label: str = "") -> Report:
    """psi([x,y]) against psi(x)psi(y) - psi(y)psi(x) on all words with headroom."""
    px, py = element_operator(x, cfg), element_operator(y, cfg)
    pxy = element_operator(alg.bracket(x, y), cfg)
    headroom = element_growth(x) + element_growth(y)
    return compare_operators("commutator", label, pxy, lambda t: px(py(t)) - py(px(t)), cfg, headroom)


def generator_pairs(alg: UniversalAlgebra) -> Iterator[tuple[str, LieElement, str, LieElement]]:
    gens = [(format_expr(Gen(g)), x) for g, x in alg.generators()]
    for (a, x), (b, y) in itertools.product(gens, repeat=2):
        yield a, x, b, y


def commutator_suite(alg: UniversalAlgebra, cfg: RepConfig) -> list[Report]:
    return [commutator_check(x, y, cfg, alg, f"[{a},{b}]") for a, x, b, y in generator_pairs(alg)]


def ideal_generators(alg: UniversalAlgebra) -> list[Expr]:
    """The defining relations of the universal algebra as free expressions."""
    from .syntax import br, gen, lin

    R = alg.realization
    n, dim = alg.n, alg.dim
    one, J = Marker.ONE, Marker.J
    out: list[Expr] = []
    for k, l in itertools.product(range(1, dim + 1), repeat=2):
        out.append(br(gen("h", k), gen("h", l)))
        out.append(br(gen("h", k), gen("h", l, J)))
        out.append(br(gen("h", k, J), gen("h", l, J)))
    for k in range(1, dim + 1):
        for i in range(1, n + 1):
            a = R.root_on_basis(i - 1, k - 1)
            # [h,e] = a e, [Jh,e] = a Je, [h,Je] = a Je, [Jh,Je] = -a e
            out.append(lin((1, br(gen("h", k), gen("e", i))), (-a, gen("e", i))))
            out.append(lin((1, br(gen("h", k, J), gen("e", i))), (-a, gen("e", i, J))))
            out.append(lin((1, br(gen("h", k), gen("e", i, J))), (-a, gen("e", i, J))))
            out.append(lin((1, br(gen("h", k, J), gen("e", i, J))), (a, gen("e", i))))
            # [h,f] = -a f, [Jh,f] = -a Jf, [h,Jf] = -a Jf, [Jh,Jf] = a f
            out.append(lin((1, br(gen("h", k), gen("f", i))), (a, gen("f", i))))
            out.append(lin((1, br(gen("h", k, J), gen("f", i))), (a, gen("f", i, J))))
            out.append(lin((1, br(gen("h", k), gen("f", i, J))), (a, gen("f", i, J))))
            out.append(lin((1, br(gen("h", k, J), gen("f", i, J))), (-a, gen("f", i))))
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        d = int(i == j)
        out.append(lin((1, br(gen("e", i), gen("f", j))), (-d, gen("hv", i))))
        out.append(lin((1, br(gen("e", i, J), gen("f", j))), (-d, gen("hv", i, J))))
        out.append(lin((1, br(gen("e", i), gen("f", j, J))), (-d, gen("hv", i, J))))
        out.append(lin((1, br(gen("e", i, J), gen("f", j, J))), (d, gen("hv", i))))
    return out


def ideal_zero_check(cfg: RepConfig, alg: UniversalAlgebra | None = None) -> list[Report]:
    """Every defining relation must act as the zero operator."""
    alg = alg or UniversalAlgebra(cfg.realization)
    reports = []
    for expr in ideal_generators(alg):
        op = expr_operator(expr, cfg)
        reports.append(compare_operators("ideal-zero", format_expr(expr), op, zero_operator, cfg, expr_growth(expr)))
    return reports


def sl2_identity_check(
    i: int,
    m: int,
    cfg: RepConfig,
    alg: UniversalAlgebra | None = None,
    form: str = "printed",
) -> list[Report]:
    """Operator identity for [ad eps, (ad phi)^m] on the image of every generator.

    ``form="printed"`` tests
        [ad eps, (ad phi)^m] = -m(m-1)(ad phi)^(m-1) + m (ad phi)^(m-1) ad alpha_i^v
    for each marker choice of (eps, phi) in {1, J}^2.  ``form="general"``
    tests the version valid whenever [c, phi] = -kappa phi with c = [eps, phi]:
        m (ad phi)^(m-1) ad c - kappa m(m-1)/2 (ad phi)^(m-1),
    which exists for the uniform decorations (kappa = 2 unmarked, -2 for J, J).
    The truncation is raised locally so no word is ever skipped for headroom.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if form not in ("printed", "general"):
        raise ValueError(f"unknown form {form!r}")
    alg = alg or UniversalAlgebra(cfg.realization)
    reports = []
    for label, cases in sl2_identity_cases(alg, i, m, form):
        if cases is None:
            reports.append(Report("sl2-identity", label, "n/a", extra={"reason": "[eps, phi] is not diagonal on phi"}))
            continue
        failed = None
        for z, lhs, rhs in cases:
            growth = max(expr_growth(lhs), expr_growth(rhs))
            local = RepConfig(max(cfg.L, growth + 2), cfg.weight, cfg.realization)
            rep = compare_operators("sl2-identity", label, expr_operator(lhs, local), expr_operator(rhs, local), local, growth)
            if not rep.ok:
                rep.counterexample["target"] = format_expr(z)
                failed = rep
                break
        reports.append(failed or Report("sl2-identity", label, "pass", extra={"form": form}))
    return reports


def sl2_identity_cases(alg: UniversalAlgebra, i: int, m: int, form: str = "printed"):
    """(label, [(target, lhs, rhs), ...]) per decoration; None where no closed form exists."""
    from .syntax import br, gen, lin

    targets = [Gen(g) for g, _ in alg.generators()]
    out = []
    for me, mf in itertools.product((Marker.ONE, Marker.J), repeat=2):
        eps, phi = gen("e", i, me), gen("f", i, mf)
        label = f"eps={format_expr(eps)},phi={format_expr(phi)},m={m}"
        if form == "printed":
            c, kappa = gen("hv", i), 2
        elif me is mf:
            c, kappa = br(eps, phi), (2 if me is Marker.ONE else -2)
        else:
            out.append((label, None))
            continue
        cases = []
        for z in targets:
            lhs = lin((1, br(eps, _ad_pow(phi, m, z))), (-1, _ad_pow(phi, m, br(eps, z))))
            rhs = lin(
                (Fraction(-kappa * m * (m - 1), 2), _ad_pow(phi, m - 1, z)),
                (m, _ad_pow(phi, m - 1, br(c, z))),
            )
            cases.append((z, lhs, rhs))
        out.append((label, cases))
    return out


def _ad_pow(x: Expr, m: int, y: Expr) -> Expr:
    for _ in range(m):
        y = Bracket(x, y)
    return y


def nontriviality_check(cfg: RepConfig, alg: UniversalAlgebra | None = None) -> list[Report]:
    """Each generator and each Cartan basis vector acts by a nonzero operator."""
    alg = alg or UniversalAlgebra(cfg.realization)
    reports = []
    for g, x in alg.generators():
        op = element_operator(x, cfg)
        label = format_expr(Gen(g))
        witness = None
        for w in cfg.words(cfg.L - element_growth(x)):
            if op(TensorElement.basis(w)):
                witness = word_str(w)
                break
        if witness is None:
            reports.append(Report("nontrivial", label, "fail", {"reason": "acts as zero on all checked words"}))
        else:
            reports.append(Report("nontrivial", label, "pass", extra={"witness": witness}))
    return reports


def equivalence_check(expr: Expr, alg: UniversalAlgebra, cfg: RepConfig) -> Report:
    """Compare the symbolic value of an expression with its operator evaluation."""
    value = alg.evaluate(expr)
    headroom = max(expr_growth(expr), element_growth(value))
    return compare_operators("oracle-agreement", format_expr(expr), element_operator(value, cfg), expr_operator(expr, cfg), cfg, headroom)
