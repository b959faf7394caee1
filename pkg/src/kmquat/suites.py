"""Verification suites over the engine, the oracle and the quotient machinery.

Each suite returns a list of :class:`~kmquat.report.Report`; a suite passes
when none of its reports has status ``"fail"``.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Sequence

from . import quotients, rep
from .lie import CARTAN, MINUS, PLUS, LieElement, UniversalAlgebra
from .realization import Realization, realize
from .report import Report
from .scalars import Marker
from .syntax import format_element, format_expr

TEST_GCMS: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((2,),),
    ((2, -1), (-1, 2)),
    ((2, -2), (-2, 2)),
    ((2, -1), (-2, 2)),
)

RANK3_GCMS: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    ((2, -1, 0), (-2, 2, -1), (0, -1, 2)),
)


def _expect(alg: UniversalAlgebra, label: str, got: LieElement, want: LieElement) -> Report:
    if got == want:
        return Report("relation", label, "pass")
    return Report(
        "relation",
        label,
        "fail",
        {"got": format_element(got, alg), "expected": format_element(want, alg)},
    )


def relation_table_check(alg: UniversalAlgebra) -> list[Report]:
    """The 13 defining relations for every generator pair, in both orders."""
    R = alg.realization
    one, J = Marker.ONE, Marker.J
    out = []

    def both(label: str, x: LieElement, y: LieElement, want: LieElement) -> None:
        out.append(_expect(alg, label, alg.bracket(x, y), want))
        out.append(_expect(alg, label + "^op", alg.bracket(y, x), -want))

    for k, l in itertools.product(range(1, alg.dim + 1), repeat=2):
        both(f"[h{k},h{l}]", alg.h(k), alg.h(l), LieElement())
        both(f"[h{k},Jh{l}]", alg.h(k), alg.h(l, J), LieElement())
        both(f"[Jh{k},Jh{l}]", alg.h(k, J), alg.h(l, J), LieElement())
    for k in range(1, alg.dim + 1):
        for i in range(1, alg.n + 1):
            a = R.root_on_basis(i - 1, k - 1)
            h, jh = alg.h(k), alg.h(k, J)
            both(f"[h{k},e{i}]", h, alg.e(i), alg.e(i) * a)
            both(f"[Jh{k},e{i}]", jh, alg.e(i), alg.e(i, J) * a)
            both(f"[h{k},Je{i}]", h, alg.e(i, J), alg.e(i, J) * a)
            both(f"[Jh{k},Je{i}]", jh, alg.e(i, J), alg.e(i) * -a)
            both(f"[h{k},f{i}]", h, alg.f(i), alg.f(i) * -a)
            both(f"[Jh{k},f{i}]", jh, alg.f(i), alg.f(i, J) * -a)
            both(f"[h{k},Jf{i}]", h, alg.f(i, J), alg.f(i, J) * -a)
            both(f"[Jh{k},Jf{i}]", jh, alg.f(i, J), alg.f(i) * a)
    for i, j in itertools.product(range(1, alg.n + 1), repeat=2):
        d = int(i == j)
        both(f"[e{i},f{j}]", alg.e(i), alg.f(j), alg.coroot(i) * d)
        both(f"[Je{i},f{j}]", alg.e(i, J), alg.f(j), alg.coroot(i, J) * d)
        both(f"[e{i},Jf{j}]", alg.e(i), alg.f(j, J), alg.coroot(i, J) * d)
        both(f"[Je{i},Jf{j}]", alg.e(i, J), alg.f(j, J), alg.coroot(i) * -d)
    return out


def random_homogeneous(alg: UniversalAlgebra, rng: random.Random, max_ht: int = 4, max_terms: int = 3) -> LieElement:
    """A random homogeneous element with small rational coefficients."""

    def coef() -> Fraction:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        return c or Fraction(1)

    kind = rng.choice((PLUS, MINUS, CARTAN, PLUS, MINUS))
    if kind == CARTAN:
        keys = [(m, k) for m in (0, 1) for k in range(alg.dim)]
        picked = rng.sample(keys, min(len(keys), rng.randint(1, max_terms)))
        return LieElement(cartan={k: coef() for k in picked})
    while True:
        ht = rng.randint(1, max_ht)
        cuts = sorted(rng.randint(0, ht) for _ in range(alg.n - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [ht])]
        words = alg.graded_basis_free(parts, PLUS)
        if words:
            break
    picked = rng.sample(words, min(len(words), rng.randint(1, max_terms)))
    part = "plus" if kind == PLUS else "minus"
    return LieElement(**{part: {w: coef() for w in picked}})


def jacobi_check(
    gcms: Sequence = TEST_GCMS + RANK3_GCMS,
    trials: int = 1000,
    seed: int = 0,
    max_ht: int = 4,
) -> list[Report]:
    """Random homogeneous triples; the Jacobi defect must vanish exactly."""
    rng = random.Random(seed)
    algs = [UniversalAlgebra(realize(a)) for a in gcms]
    failures = []
    for t in range(trials):
        alg = algs[t % len(algs)]
        x, y, z = (random_homogeneous(alg, rng, max_ht) for _ in range(3))
        b = alg.bracket
        defect = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
        if defect:
            failures.append(
                Report(
                    "jacobi",
                    f"trial {t}",
                    "fail",
                    {
                        "matrix": [list(r) for r in alg.realization.a],
                        "x": format_element(x, alg),
                        "y": format_element(y, alg),
                        "z": format_element(z, alg),
                        "defect": format_element(defect, alg),
                    },
                )
            )
    if failures:
        return failures
    return [Report("jacobi", f"{trials} triples, ht <= {max_ht}", "pass", extra={"seed": seed})]


def sl2_symbolic_check(alg: UniversalAlgebra, i: int, m: int, form: str = "printed") -> list[Report]:
    """The sl2 operator identity evaluated with the symbolic bracket."""
    reports = []
    for label, cases in rep.sl2_identity_cases(alg, i, m, form):
        if cases is None:
            reports.append(Report("sl2-symbolic", label, "n/a"))
            continue
        failed = None
        for z, lhs, rhs in cases:
            a, b = alg.evaluate(lhs), alg.evaluate(rhs)
            if a != b:
                failed = Report(
                    "sl2-symbolic",
                    label,
                    "fail",
                    {"target": format_expr(z), "lhs": format_element(a, alg), "rhs": format_element(b, alg)},
                )
                break
        reports.append(failed or Report("sl2-symbolic", label, "pass", extra={"form": form}))
    return reports


def sl2_suite(alg: UniversalAlgebra, cfg: rep.RepConfig, max_m: int = 4, form: str = "printed") -> list[Report]:
    """Both paths for every simple index and 1 <= m <= max_m, plus their agreement."""
    out = []
    for i in range(1, alg.n + 1):
        for m in range(1, max_m + 1):
            sym = sl2_symbolic_check(alg, i, m, form)
            orc = rep.sl2_identity_check(i, m, cfg, alg, form)
            for s, o in zip(sym, orc):
                out.append(s)
                out.append(o)
                agree = "pass" if s.status == o.status else "fail"
                out.append(Report("sl2-paths-agree", s.generator, agree, extra={"symbolic": s.status, "oracle": o.status}))
    return out


def annihilation_suite(alg: UniversalAlgebra, cfg: rep.RepConfig) -> list[Report]:
    ctx = quotients.QuotientContext(alg, 1)
    out = []
    for entry in quotients.serre_annihilation_check(ctx, cfg):
        extra = {k: v for k, v in entry.items() if k not in ("check", "generator", "status")}
        out.append(Report("annihilation", entry["generator"], entry["status"], extra=extra))
    return out


def quotient_suite(a, max_ht: int) -> list[Report]:
    ctx = quotients.QuotientContext.from_matrix(a, max_ht)
    table = quotients.multiplicities(a, max_ht, ctx=ctx)
    out = []
    for row in table.rows:
        ok = row.reduced <= row.standard <= row.universal
        out.append(
            Report(
                "monotone",
                str(row.degree),
                "pass" if ok else "fail",
                extra={"dimU": row.universal, "dimS": row.standard, "dimR": row.reduced},
            )
        )
    for entry in quotients.serre_in_radical_check(a, max_ht, ctx):
        extra = {k: v for k, v in entry.items() if k not in ("check", "generator", "status")}
        out.append(Report(entry["check"], entry["generator"], entry["status"], extra=extra))
    if ctx.serre_meets_cartan():
        out.append(Report("serre-meets-cartan", "K", "fail", {"violations": ctx.violations}))
    else:
        out.append(Report("serre-meets-cartan", "K", "pass"))
    return out


SUITES = ("relations", "jacobi", "homomorphism", "ideal", "nontrivial", "sl2", "annihilation", "quotients")


def run_suite(
    name: str,
    realization: Realization,
    L: int = 5,
    seed: int = 0,
    weight: Sequence | None = None,
    max_ht: int = 4,
    trials: int = 200,
) -> list[Report]:
    if name == "all":
        out = []
        for sub in SUITES:
            out.extend(run_suite(sub, realization, L, seed, weight, max_ht, trials))
        return out
    alg = UniversalAlgebra(realization)
    cfg = rep.RepConfig.generic(realization, L, weight)
    runners: dict[str, Callable[[], list[Report]]] = {
        "relations": lambda: relation_table_check(alg),
        "jacobi": lambda: jacobi_check([realization.a], trials, seed),
        "homomorphism": lambda: rep.commutator_suite(alg, cfg),
        "ideal": lambda: rep.ideal_zero_check(cfg, alg),
        "nontrivial": lambda: rep.nontriviality_check(cfg, alg),
        "sl2": lambda: sl2_suite(alg, cfg),
        "annihilation": lambda: annihilation_suite(alg, cfg),
        "quotients": lambda: quotient_suite(realization.a, max_ht),
    }
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return runners[name]()
