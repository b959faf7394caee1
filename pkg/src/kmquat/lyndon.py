"""Lyndon words and the Lyndon (Hall) basis of a free Lie algebra.

Words are tuples of non-negative ints.  A basis element is a Lyndon word
bracketed by its standard factorization w = (u, v), v being the longest
proper Lyndon suffix.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

Word = tuple[int, ...]


def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    return all(w < w[k:] + w[:k] and w < w[k:] for k in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    if len(w) < 2:
        raise ValueError(f"letter {w} has no factorization")
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise ValueError(f"{w} is not a Lyndon word")


def lyndon_words(max_len: int, alphabet: int) -> Iterator[Word]:
    """All Lyndon words of length <= max_len, in lexicographic order (Duval)."""
    if alphabet <= 0 or max_len <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet - 1:
            w.pop()


@lru_cache(maxsize=None)
def _bracket_basis(u: Word, v: Word) -> tuple[tuple[Word, Fraction], ...]:
    # [P_u, P_v] for Lyndon u < v, in the Lyndon basis
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, Fraction(1)),)
    u1, u2 = standard_factorization(u)
    out: dict[Word, Fraction] = {}
    # [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
    for w, c in bracket(u2, v).items():
        for x, d in bracket(u1, w).items():
            out[x] = out.get(x, 0) + c * d
    for w, c in bracket(u1, v).items():
        for x, d in bracket(u2, w).items():
            out[x] = out.get(x, 0) - c * d
    return tuple((w, c) for w, c in sorted(out.items()) if c)


def bracket(u: Word, v: Word) -> dict[Word, Fraction]:
    """[P_u, P_v] expanded in the Lyndon basis."""
    if u == v:
        return {}
    if u < v:
        return dict(_bracket_basis(u, v))
    return {w: -c for w, c in _bracket_basis(v, u)}


def bracket_combination(x: dict[Word, Fraction], y: dict[Word, Fraction]) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for u, a in x.items():
        for v, b in y.items():
            for w, c in bracket(u, v).items():
                out[w] = out.get(w, 0) + a * b * c
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def tensor_expansion(w: Word) -> tuple[tuple[Word, int], ...]:
    """P_w as a non-commutative polynomial: sum of (word, integer coefficient)."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    out: dict[Word, int] = {}
    for a, c in tensor_expansion(u):
        for b, d in tensor_expansion(v):
            out[a + b] = out.get(a + b, 0) + c * d
            out[b + a] = out.get(b + a, 0) - c * d
    return tuple(sorted((x, c) for x, c in out.items() if c))
