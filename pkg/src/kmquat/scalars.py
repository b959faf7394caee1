"""Exact scalars: rationals, Gaussian rationals and quaternions z + Jw.

Quaternions are stored with J on the left, ``q = z + J w`` with ``z, w``
Gaussian rationals.  Moving a complex number across J conjugates it,
``c J = J conj(c)``, which gives the product

    (z1 + J w1)(z2 + J w2) = (z1 z2 - conj(w1) w2) + J (conj(z1) w2 + w1 z2).
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Union

Rational = Fraction
Number = Union[int, Fraction, "GaussRational"]


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def rational_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class GaussRational:
    """re + i*im with both parts exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        return cls(value)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re + other, self.im)
        if isinstance(other, GaussRational):
            return GaussRational(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re - other, self.im)
        if isinstance(other, GaussRational):
            return GaussRational(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re * other, self.im * other)
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussRational(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re / other, self.im / other)
        if isinstance(other, GaussRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": rational_to_str(self.re), "im": rational_to_str(self.im)}

    @classmethod
    def from_json(cls, data: dict) -> "GaussRational":
        return cls(Fraction(data["re"]), Fraction(data["im"]))


I = GaussRational(0, 1)


class QuatRational:
    """Quaternion z + J w over the Gaussian rationals."""

    __slots__ = ("z", "w")

    def __init__(self, z=0, w=0):
        self.z = GaussRational.coerce(z)
        self.w = GaussRational.coerce(w)

    @classmethod
    def coerce(cls, value) -> "QuatRational":
        if isinstance(value, QuatRational):
            return value
        return cls(value)

    def __add__(self, other):
        other = QuatRational.coerce(other)
        return QuatRational(self.z + other.z, self.w + other.w)

    __radd__ = __add__

    def __neg__(self):
        return QuatRational(-self.z, -self.w)

    def __sub__(self, other):
        return self + (-QuatRational.coerce(other))

    def __rsub__(self, other):
        return QuatRational.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuatRational(self.z * other, self.w * other)
        other = QuatRational.coerce(other)
        z1, w1, z2, w2 = self.z, self.w, other.z, other.w
        return QuatRational(
            z1 * z2 - w1.conjugate() * w2,
            z1.conjugate() * w2 + w1 * z2,
        )

    def __rmul__(self, other):
        # other is a scalar on the left: (c)(z + Jw) = cz + J conj(c) w
        if isinstance(other, (int, Fraction)):
            return QuatRational(self.z * other, self.w * other)
        return QuatRational.coerce(other) * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = QuatRational(other)
        if isinstance(other, QuatRational):
            return self.z == other.z and self.w == other.w
        return NotImplemented

    def __hash__(self):
        if not self.w:
            return hash(self.z)
        return hash((self.z, self.w))

    def __bool__(self):
        return bool(self.z) or bool(self.w)

    def conjugate(self) -> "QuatRational":
        # conj(z + Jw) = conj(z) - Jw
        return QuatRational(self.z.conjugate(), -self.w)

    def norm(self) -> Fraction:
        return self.z.norm() + self.w.norm()

    def __repr__(self):
        return f"QuatRational({self.z!s}, {self.w!s})"

    def __str__(self):
        if not self.w:
            return str(self.z)
        return f"({self.z}) + J({self.w})"

    def to_json(self) -> dict:
        return {"z": self.z.to_json(), "w": self.w.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "QuatRational":
        return cls(GaussRational.from_json(data["z"]), GaussRational.from_json(data["w"]))


J = QuatRational(0, 1)


def sigma(q: QuatRational) -> QuatRational:
    """sigma(z + Jw) = z - Jw."""
    q = QuatRational.coerce(q)
    return QuatRational(q.z, -q.w)


def tau(q: QuatRational) -> QuatRational:
    """tau(z + Jw) = conj(z) - J conj(w)."""
    q = QuatRational.coerce(q)
    return QuatRational(q.z.conjugate(), -q.w.conjugate())


def quat_mul(a: QuatRational, b: QuatRational) -> QuatRational:
    return QuatRational.coerce(a) * QuatRational.coerce(b)


class Marker(enum.Enum):
    """The four real directions 1, i, J, Ji of a quaternion module."""

    ONE = "1"
    I = "i"
    J = "J"
    JI = "Ji"

    @property
    def quaternion(self) -> QuatRational:
        return _MARKER_UNITS[self]

    @property
    def has_j(self) -> bool:
        return self in (Marker.J, Marker.JI)

    @property
    def has_i(self) -> bool:
        return self in (Marker.I, Marker.JI)

    def __mul__(self, other: "Marker") -> tuple[int, "Marker"]:
        """Product of unit markers as (sign, marker)."""
        q = self.quaternion * other.quaternion
        for sign in (1, -1):
            for m in Marker:
                if q == m.quaternion * sign:
                    return sign, m
        raise AssertionError("markers are closed under multiplication")


_MARKER_UNITS = {
    Marker.ONE: QuatRational(1),
    Marker.I: QuatRational(I),
    Marker.J: QuatRational(0, 1),
    Marker.JI: QuatRational(0, I),  # J*i
}
