"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as integer coefficient vectors in the power basis
1, z, ..., z^(m-1) (m = phi(n)) together with a positive common
denominator, always reduced modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Number = Union[int, Fraction, "Scalar"]


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials (low degree first), b monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_n); one shared instance per conductor."""

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        m = self.degree
        # x^k mod Phi_n for k < max(2m - 1, n), used for products and Galois maps
        red = []
        cur = [0] * m
        cur[0] = 1
        for _ in range(max(2 * m - 1, n + 1)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(m):
                    cur[j] -= top * self.modulus[j]
        self._powers = red
        self._galois = [k for k in range(1, n + 1) if math.gcd(k, n) == 1] if n > 1 else [1]
        cls._cache[n] = self
        return self

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (CyclotomicField, (self.n,))

    # constructors
    def __call__(self, value) -> "Scalar":
        return self.coerce(value)

    def zero(self) -> "Scalar":
        return Scalar(self, (0,) * self.degree, 1)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def from_int(self, k: int) -> "Scalar":
        return Scalar(self, (k,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, q: Fraction) -> "Scalar":
        q = Fraction(q)
        return Scalar(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def zeta(self, k: int = 1) -> "Scalar":
        return Scalar(self, self._powers[k % self.n], 1)

    def from_coeffs(self, coeffs: Iterable, den: int = 1) -> "Scalar":
        """Element sum_k coeffs[k] z^k / den; coefficients may run past phi(n)."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.n and self.n > 1:
            raise ValueError(f"at most {self.n} coefficients expected")
        common = 1
        for c in coeffs:
            common = common * c.denominator // math.gcd(common, c.denominator)
        acc = [0] * self.degree
        for k, c in enumerate(coeffs):
            ci = int(c * common)
            if ci:
                for j, pj in enumerate(self._powers[k % max(self.n, 1)]):
                    acc[j] += ci * pj
        return Scalar(self, tuple(acc), common * den)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError(f"cannot mix {value.field} and {self}")
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")


class Scalar:
    """An element of Q(zeta_n). Immutable and hashable."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # -- inspection
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.field.n)
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def to_json(self):
        if self.den == 1:
            return list(self.num)
        return {"num": list(self.num), "den": self.den}

    # -- arithmetic
    def _other(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError(f"cannot mix {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return Scalar(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        m = self.field.degree
        a, b = self.num, o.num
        if not any(a[1:]):
            return Scalar(self.field, tuple(a[0] * c for c in b), self.den * o.den)
        if not any(b[1:]):
            return Scalar(self.field, tuple(b[0] * c for c in a), self.den * o.den)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = prod[:m]
        powers = self.field._powers
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                for j, pj in enumerate(powers[k]):
                    out[j] += c * pj
        return Scalar(self.field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Scalar":
        """Image under the automorphism z -> z^k (gcd(k, n) = 1)."""
        n = self.field.n
        acc = [0] * self.field.degree
        powers = self.field._powers
        for j, c in enumerate(self.num):
            if c:
                for t, p in enumerate(powers[(j * k) % n]):
                    acc[t] += c * p
        return Scalar(self.field, tuple(acc), self.den)

    def norm(self) -> Fraction:
        out = self.field.one()
        for k in self.field._galois:
            out = out * self.galois(k)
        return out.to_fraction()

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            q = Fraction(self.den, self.num[0])
            return self.field.from_fraction(q)
        # a^-1 = (product of the other conjugates) / N(a)
        rest = self.field.one()
        for k in self.field._galois:
            if k != 1:
                rest = rest * self.galois(k)
        nrm = (rest * self).to_fraction()
        return rest * self.field.from_fraction(1 / nrm)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        if self.den != 1:
            body = f"({body})/{self.den}" if len(terms) > 1 else f"{body}/{self.den}"
        return body


def scalar_from_json(field: CyclotomicField, data) -> Scalar:
    """Parse a list of integers (or an object with ``num``/``den``)."""
    if isinstance(data, int) and not isinstance(data, bool):
        return field.from_int(data)
    if isinstance(data, dict):
        if set(data) - {"num", "den"} or "num" not in data:
            raise ValueError(f"bad scalar object {data!r}")
        den = data.get("den", 1)
        if not isinstance(den, int) or den == 0:
            raise ValueError(f"bad denominator {den!r}")
        return field.from_coeffs(_ints(data["num"]), den)
    if isinstance(data, list):
        return field.from_coeffs(_ints(data))
    raise ValueError(f"bad scalar {data!r}")


def _ints(xs) -> list[int]:
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise ValueError(f"expected a list of integers, got {xs!r}")
    return xs
