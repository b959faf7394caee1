"""Generalized Cartan matrices and their quaternionic realization.

A rank-r matrix A is permuted so a nonsingular r x r block sits in the
upper-left corner, then padded to the nonsingular (2n - r) square matrix

    E = [[A(r), B, 0], [C, D, I], [0, I, 0]].

The first n rows of E are the coroots; root i is the coordinate
projection onto column i, so <alpha_i, alpha_j^v> = A[j][i].  J-coroots are
the same rational rows tagged with the J marker.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .scalars import Marker, QuatRational, rational_to_str


class GCMError(ValueError):
    """Base for all realization input errors."""


class InvalidCartanMatrix(GCMError):
    def __init__(self, violations: list["AxiomViolation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class AxiomViolation(InvalidCartanMatrix):
    axiom = ""

    def __init__(self, i: int, j: int, value: int):
        # 1-based cell of the offending entry
        self.i, self.j, self.value = i, j, value
        ValueError.__init__(self, str(self))
        self.violations = [self]

    def __str__(self):
        return f"{type(self).__name__} at ({self.i},{self.j}): {self.axiom} (entry {self.value})"


class DiagonalNotTwo(AxiomViolation):
    axiom = "diagonal entries must equal 2"


class PositiveOffDiagonal(AxiomViolation):
    axiom = "off-diagonal entries must be <= 0"


class AsymmetricZero(AxiomViolation):
    axiom = "A_ij = 0 must imply A_ji = 0"


class NotSquare(GCMError):
    pass


class SingularBlock(GCMError):
    pass


class RankMismatch(GCMError):
    pass


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _square_int_matrix(a: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in a)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise NotSquare("matrix must be square and non-empty")
    for row, orig in zip(rows, a):
        for x, y in zip(row, orig):
            if x != y:
                raise GCMError(f"non-integer entry {y!r}")
    return rows


def gcm_violations(a: Sequence[Sequence[int]]) -> list[AxiomViolation]:
    rows = _square_int_matrix(a)
    n = len(rows)
    found: list[AxiomViolation] = []
    for i in range(n):
        if rows[i][i] != 2:
            found.append(DiagonalNotTwo(i + 1, i + 1, rows[i][i]))
    for i, j in itertools.product(range(n), repeat=2):
        if i == j:
            continue
        if rows[i][j] > 0:
            found.append(PositiveOffDiagonal(i + 1, j + 1, rows[i][j]))
        if rows[i][j] == 0 and rows[j][i] != 0:
            found.append(AsymmetricZero(i + 1, j + 1, rows[i][j]))
    return found


def validate(a: Sequence[Sequence[int]]) -> CartanMatrix:
    """Return the validated GCM; raise the first axiom violation otherwise.

    The raised exception carries every violation in ``.violations``.
    """
    found = gcm_violations(a)
    if found:
        err = found[0]
        err.violations = found
        raise err
    return CartanMatrix(_square_int_matrix(a))


@dataclass(frozen=True)
class BlockPermutation:
    """Row and column orders putting a nonsingular r x r block top-left.

    ``rows[p]`` is the original row index placed at position p (0-based);
    likewise ``cols``.  For GCMs the two coincide.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    r: int

    @property
    def principal(self) -> bool:
        return self.rows == self.cols

    def apply(self, a: Sequence[Sequence]) -> list[list[Fraction]]:
        return [[Fraction(a[i][j]) for j in self.cols] for i in self.rows]


def _complete(subset: Sequence[int], n: int) -> tuple[int, ...]:
    rest = [k for k in range(n) if k not in subset]
    return tuple(subset) + tuple(rest)


def principal_block_permute(a: Sequence[Sequence]) -> tuple[BlockPermutation, list[list[Fraction]]]:
    """Permute so a nonsingular rank-sized block is in the upper-left.

    The lexicographically smallest index subset with a nonsingular principal
    minor wins.  Arbitrary matrices need not have a nonsingular principal
    minor of full rank; then the smallest (row subset, column subset) pair
    with a nonsingular minor is used instead.
    """
    n = len(a)
    m = linalg.as_matrix(a)
    r = linalg.rank(m)
    if r == 0:
        perm = BlockPermutation(tuple(range(n)), tuple(range(n)), 0)
        return perm, perm.apply(a)
    for subset in itertools.combinations(range(n), r):
        if linalg.det([[m[i][j] for j in subset] for i in subset]) != 0:
            order = _complete(subset, n)
            perm = BlockPermutation(order, order, r)
            return perm, perm.apply(a)
    for rs in itertools.combinations(range(n), r):
        for cs in itertools.combinations(range(n), r):
            if linalg.det([[m[i][j] for j in cs] for i in rs]) != 0:
                perm = BlockPermutation(_complete(rs, n), _complete(cs, n), r)
                return perm, perm.apply(a)
    raise AssertionError("rank-r matrix without a nonsingular r-minor")


def extend(a_perm: Sequence[Sequence], r: int) -> list[list[Fraction]]:
    """Build the (2n - r) square matrix E around an upper-left block A(r)."""
    n = len(a_perm)
    block = [[Fraction(a_perm[i][j]) for j in range(r)] for i in range(r)]
    if r and linalg.det(block) == 0:
        raise SingularBlock(f"leading {r}x{r} block is singular")
    size = 2 * n - r
    e = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            e[i][j] = Fraction(a_perm[i][j])
    for k in range(n - r):
        e[r + k][n + k] = Fraction(1)
        e[n + k][r + k] = Fraction(1)
    return e


@dataclass(frozen=True)
class Realization:
    """Coroot rows and root functionals for a matrix A (optionally with B0)."""

    a: tuple[tuple[int, ...], ...]
    b0: tuple[tuple[int, ...], ...]
    perm: BlockPermutation
    e: tuple[tuple[Fraction, ...], ...]
    _row_of: tuple[int, ...] = field(repr=False)
    _col_of: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def r(self) -> int:
        return self.perm.r

    @property
    def dim(self) -> int:
        return 2 * self.n - self.r

    def coroot_index(self, i: int) -> int:
        """Cartan basis index (row of E, 0-based) of coroot i (0-based)."""
        return self._row_of[i]

    def coroot(self, i: int) -> tuple[Fraction, ...]:
        return self.e[self._row_of[i]]

    @property
    def coroot_rows(self) -> list[tuple[Fraction, ...]]:
        return [self.coroot(i) for i in range(self.n)]

    @property
    def j_coroot_rows(self) -> list[tuple[Fraction, ...]]:
        # same rational rows; the J lives in the marker
        return self.coroot_rows

    def root(self, i: int, h: Sequence[Fraction]) -> Fraction:
        """<alpha_i, h> for h given in standard coordinates of C^(2n-r)."""
        return Fraction(h[self._col_of[i]])

    def root_on_basis(self, i: int, k: int) -> Fraction:
        """<alpha_i, h_k> where h_k is row k of E."""
        return self.e[k][self._col_of[i]]

    def pair(self, root_idx: int, root_marker: Marker, coroot_idx: int, coroot_marker: Marker) -> QuatRational:
        """Quaternion pairing <(marker)alpha_i, (marker)alpha_j^v>, 1-based indices."""
        i, j = root_idx - 1, coroot_idx - 1
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError("root/coroot index out of range")
        for m in (root_marker, coroot_marker):
            if m not in (Marker.ONE, Marker.J):
                raise ValueError("pairing markers must be 1 or J")
        base = self.root(i, self.coroot(j))
        if root_marker is Marker.ONE and coroot_marker is Marker.ONE:
            return QuatRational(base)
        if root_marker is Marker.J and coroot_marker is Marker.J:
            return QuatRational(-base)
        return QuatRational(0, Fraction(self.b0[j][i]))

    def to_json(self) -> dict:
        table = []
        for i, j in itertools.product(range(1, self.n + 1), repeat=2):
            for rm, cm in itertools.product((Marker.ONE, Marker.J), repeat=2):
                table.append(
                    {
                        "root": i,
                        "rootMarker": rm.value,
                        "coroot": j,
                        "corootMarker": cm.value,
                        "value": self.pair(i, rm, j, cm).to_json(),
                    }
                )
        return {
            "perm": {"rows": [p + 1 for p in self.perm.rows], "cols": [p + 1 for p in self.perm.cols]},
            "r": self.r,
            "dim": self.dim,
            "E": [[rational_to_str(x) for x in row] for row in self.e],
            "coroots": [[rational_to_str(x) for x in row] for row in self.coroot_rows],
            "pairingTable": table,
        }


def realize_matrix(a: Sequence[Sequence[int]], b0: Sequence[Sequence[int]] | None = None) -> Realization:
    """Realization of an arbitrary square integer matrix (no GCM check)."""
    rows = _square_int_matrix(a)
    if b0 is None:
        b0_rows = rows
    else:
        b0_rows = _square_int_matrix(b0)
        if len(b0_rows) != len(rows):
            raise RankMismatch("B0 must have the same size as A")
        if linalg.rank(b0_rows) != linalg.rank(rows):
            raise RankMismatch(f"rank B0 = {linalg.rank(b0_rows)} != rank A = {linalg.rank(rows)}")
    perm, a_perm = principal_block_permute(rows)
    e = extend(a_perm, perm.r)
    n = len(rows)
    row_of = [0] * n
    col_of = [0] * n
    for pos, orig in enumerate(perm.rows):
        row_of[orig] = pos
    for pos, orig in enumerate(perm.cols):
        col_of[orig] = pos
    return Realization(
        a=rows,
        b0=b0_rows,
        perm=perm,
        e=tuple(tuple(row) for row in e),
        _row_of=tuple(row_of),
        _col_of=tuple(col_of),
    )


def realize(a: CartanMatrix | Sequence[Sequence[int]], b0: Sequence[Sequence[int]] | None = None) -> Realization:
    if not isinstance(a, CartanMatrix):
        a = validate(a)
    return realize_matrix(a.entries, b0)
