"""Cross-checks of the symbolic engine against a free Verma module.

The module is built in oracles.py from raw matrix rows, so agreement here is
independent of the engine and of kmquat.rep.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmquat.lie import LieElement
from kmquat.lyndon import standard_factorization
from kmquat.scalars import Marker
from kmquat.suites import random_homogeneous
from oracles import FreeVerma

from conftest import A1, A2, B2, TEST_GCMS

J = Marker.J


def verma_for(alg, lam=None, mu=None):
    R = alg.realization
    lam = lam or [k + 1 for k in range(R.dim)]
    mu = mu or [2 * k - 1 for k in range(R.dim)]
    return FreeVerma(R.e, [R._col_of[i] for i in range(R.n)], [R.coroot_index(i) for i in range(R.n)], lam, mu)


def word_op(V, word, sector):
    if len(word) == 1:
        l = word[0]
        return V.op(("e" if sector == "plus" else "f", l >> 1, l & 1))
    u, v = standard_factorization(word)
    return V.bracket_op(word_op(V, u, sector), word_op(V, v, sector))


def elem_op(V, x: LieElement):
    pieces = []
    for w, c in x.plus.items():
        pieces.append((c, word_op(V, w, "plus")))
    for w, c in x.minus.items():
        pieces.append((c, word_op(V, w, "minus")))
    for (m, k), c in x.cartan.items():
        pieces.append((c, V.op(("h", m, k))))

    def op(vec):
        out = {}
        for c, p in pieces:
            for w, d in p(vec).items():
                V._add(out, w, c * d)
        return out

    return op


def same_on_words(V, p, q, max_len=3):
    for w in V.words(max_len):
        vec = {w: Fraction(1)}
        if p(vec) != q(vec):
            return False
    return True


@pytest.mark.parametrize("a", TEST_GCMS)
def test_relations_hold_on_verma(a, algebras):
    # every generator pair: psi_V([x, y]) = [psi_V x, psi_V y]
    alg = algebras(a)
    V = verma_for(alg)
    gens = [x for _, x in alg.generators()]
    for x in gens:
        for y in gens:
            lhs = elem_op(V, alg.bracket(x, y))
            rhs = V.bracket_op(elem_op(V, x), elem_op(V, y))
            assert same_on_words(V, lhs, rhs, 2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([A2, B2]), st.integers(0, 10**6))
def test_engine_brackets_match_verma(algebras, a, seed):
    alg = algebras(a)
    V = verma_for(alg)
    rng = random.Random(seed)
    x = random_homogeneous(alg, rng, max_ht=2, max_terms=2)
    y = random_homogeneous(alg, rng, max_ht=2, max_terms=2)
    lhs = elem_op(V, alg.bracket(x, y))
    rhs = V.bracket_op(elem_op(V, x), elem_op(V, y))
    assert same_on_words(V, lhs, rhs, 2)


def test_defect_witness_is_nonzero_in_universal_algebra(algebras):
    alg = algebras(A2)
    V = verma_for(alg)
    y = alg.serre_minus(2, 1, (J, Marker.ONE))  # (ad Jf1)^2 f2
    image = elem_op(V, alg.bracket(alg.e(1), y))({(): Fraction(1)})
    assert image == {
        ((0, 0), (1, 0)): 2,
        ((1, 0), (0, 0)): -2,
        ((0, 1), (1, 1)): 2,
        ((1, 1), (0, 1)): -2,
    }


def test_matched_decoration_killed_on_verma(algebras):
    alg = algebras(A2)
    V = verma_for(alg)
    for i, j, (mj, mi) in alg.serre_decorations():
        y = alg.serre_minus(i, j, (mj, mi))
        for k, mk in ((j, mj), (i, mi)):
            op = elem_op(V, alg.bracket(alg.e(k, mk), y))
            assert same_on_words(V, op, lambda v: {}, 1)


def test_sl2_witness_on_verma(algebras):
    alg = algebras(A1)
    V = verma_for(alg)
    w = alg.bracket(alg.f(1), alg.f(1, J))
    for m in (Marker.ONE, J):
        image = elem_op(V, alg.bracket(alg.e(1, m), w))({(): Fraction(1)})
        assert image == {}
