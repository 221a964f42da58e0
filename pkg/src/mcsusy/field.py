"""Exact scalars: Gaussian rationals extended by square roots of integers.

Every coefficient in the package lives in the field Q(i, sqrt2, sqrt3, ...).
A :class:`Number` is stored as a map ``radicand -> (re, im)`` over squarefree
radicands, so ``3 + i*sqrt(2)/2`` is ``{1: (3, 0), 2: (0, 1/2)}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from numbers import Rational

from gmpy2 import mpq

__all__ = ["ONE", "SQRT2", "ZERO", "ExactScalar", "I", "Number", "as_number"]


@cache
def _squarefree(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * d`` with ``d`` squarefree; return ``(s, d)``."""
    s, d, k = 1, 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        if n % k == 0:
            n //= k
            d *= k
        k += 1
    return s, d * n


@cache
def _radical_product(d1: int, d2: int) -> tuple[int, int]:
    return _squarefree(d1 * d2)


def _to_mpq(x) -> mpq:
    if isinstance(x, (int, Rational)):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    if type(x).__name__ == "mpq":
        return x
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


_ZERO_Q = mpq(0)


class Number:
    """Exact element of the multiquadratic Gaussian field.

    Instances are immutable and hashable. Arithmetic with ``int``,
    ``Fraction`` and ``complex`` values with integral parts coerces.
    """

    __slots__ = ("_hash", "_parts")

    def __init__(self, value=0, imag=0):
        if isinstance(value, Number):
            self._parts = value._parts
        elif isinstance(value, complex):
            if imag:
                raise TypeError("pass either a complex or a (real, imag) pair")
            re, im = value.real, value.imag
            if not (re.is_integer() and im.is_integer()):
                raise TypeError("complex literals must have integral parts; use Fraction")
            self._parts = _clean({1: (mpq(int(re)), mpq(int(im)))})
        else:
            self._parts = _clean({1: (_to_mpq(value), _to_mpq(imag))})
        self._hash = None

    @classmethod
    def _raw(cls, parts: dict) -> Number:
        obj = object.__new__(cls)
        obj._parts = parts
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, n) -> Number:
        """Exact square root of a nonnegative rational."""
        q = _to_mpq(n)
        if q < 0:
            return cls.sqrt(-q) * I
        if q == 0:
            return ZERO
        num, den = int(q.numerator), int(q.denominator)
        s, d = _squarefree(num * den)
        return cls._raw({d: (mpq(s, den), _ZERO_Q)})

    # -- inspection -------------------------------------------------------
    @property
    def parts(self) -> dict:
        """Copy of the ``radicand -> (re, im)`` table."""
        return dict(self._parts)

    @property
    def is_rational(self) -> bool:
        return all(d == 1 and im == 0 for d, (_, im) in self._parts.items())

    @property
    def is_real(self) -> bool:
        return all(im == 0 for _, im in self._parts.values())

    def rational(self) -> Fraction:
        """Value as a Fraction; raises if the number is not rational."""
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        re = self._parts.get(1, (_ZERO_Q, _ZERO_Q))[0]
        return Fraction(int(re.numerator), int(re.denominator))

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __complex__(self) -> complex:
        re = im = 0.0
        for d, (a, b) in self._parts.items():
            r = math.sqrt(d)
            re += float(a) * r
            im += float(b) * r
        return complex(re, im)

    def __float__(self) -> float:
        if not self.is_real:
            raise TypeError(f"{self} is not real")
        return complex(self).real

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if type(other) is not Number:
            other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._parts:
            return self
        if not self._parts:
            return other
        parts = dict(self._parts)
        for d, (a, b) in other._parts.items():
            if d in parts:
                c, e = parts[d]
                a, b = a + c, b + e
                if a == 0 and b == 0:
                    del parts[d]
                    continue
            parts[d] = (a, b)
        return Number._raw(parts)

    __radd__ = __add__

    def __neg__(self):
        return Number._raw({d: (-a, -b) for d, (a, b) in self._parts.items()})

    def __sub__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is int:
            if not other:
                return ZERO
            return Number._raw({d: (a * other, b * other) for d, (a, b) in self._parts.items()})
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return Number._raw(_mul_parts(self._parts, other._parts))

    __rmul__ = __mul__

    def inverse(self) -> Number:
        """Multiplicative inverse.

        Numbers with one radicand invert directly; general elements are
        inverted by repeatedly multiplying with Galois conjugates that flip
        the sign of one prime under the radical.
        """
        if not self._parts:
            raise ZeroDivisionError("inverse of zero")
        if len(self._parts) == 1:
            ((d, (a, b)),) = self._parts.items()
            n2 = (a * a + b * b) * d
            return Number._raw({d: (a / n2, -b / n2)})
        num, den = ONE, self
        for p in sorted(_primes_in(den)):
            flipped = den._flip(p)
            num, den = num * flipped, den * flipped
        return num * den.inverse()

    def _flip(self, p: int) -> Number:
        return Number._raw(
            {d: ((-a, -b) if d % p == 0 else (a, b)) for d, (a, b) in self._parts.items()}
        )

    def __truediv__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_number(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> Number:
        return Number._raw({d: (a, -b) for d, (a, b) in self._parts.items()})

    # -- comparison, hashing, display --------------------------------------
    def __eq__(self, other):
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self):
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(self.rational())
            else:
                self._hash = hash(frozenset(self._parts.items()))
        return self._hash

    def __repr__(self):
        return f"Number({self})"

    def __str__(self):
        if not self._parts:
            return "0"
        chunks = []
        for d in sorted(self._parts):
            a, b = self._parts[d]
            if a and b:
                c = f"({a}{'+' if b > 0 else '-'}{_imag(abs(b))})"
            elif b:
                c = _imag(b)
            else:
                c = f"{a}"
            if d != 1:
                c = f"sqrt{d}" if c == "1" else f"-sqrt{d}" if c == "-1" else f"{c}*sqrt{d}"
            chunks.append(c)
        return " + ".join(chunks).replace("+ -", "- ")


def _imag(b) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{b}*i"


def _clean(parts: dict) -> dict:
    return {d: ab for d, ab in parts.items() if ab[0] != 0 or ab[1] != 0}


def _mul_parts(p1: dict, p2: dict) -> dict:
    if len(p1) == 1 and len(p2) == 1 and 1 in p1 and 1 in p2:
        a, b = p1[1]
        c, e = p2[1]
        re, im = a * c - b * e, a * e + b * c
        return {1: (re, im)} if re or im else {}
    out: dict = {}
    for d1, (a, b) in p1.items():
        for d2, (c, e) in p2.items():
            if d1 == 1:
                s, d = 1, d2
            elif d2 == 1:
                s, d = 1, d1
            else:
                s, d = _radical_product(d1, d2)
            re = a * c - b * e
            im = a * e + b * c
            if s != 1:
                re, im = re * s, im * s
            if d in out:
                r0, i0 = out[d]
                out[d] = (r0 + re, i0 + im)
            else:
                out[d] = (re, im)
    return _clean(out)


def _primes_in(x: Number) -> set[int]:
    primes = set()
    for d in x._parts:
        k = 2
        while d > 1:
            if d % k == 0:
                primes.add(k)
                d //= k
            k += 1
    return primes


def as_number(x):
    """Coerce ``x`` to :class:`Number`, or return ``NotImplemented``."""
    if isinstance(x, Number):
        return x
    if isinstance(x, (int, Rational, complex)) or type(x).__name__ == "mpq":
        return Number(x)
    return NotImplemented


ZERO = Number(0)
ONE = Number(1)
I = Number(0, 1)
SQRT2 = Number.sqrt(2)


@dataclass(frozen=True)
class ExactScalar:
    """An exact value ``coefficient * pi**pi_power``.

    Phase-space Gaussian integrals land here: their values are always an
    element of the coefficient field times an integral power of pi.
    """

    coefficient: Number
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Number(self.coefficient))
        if not self.coefficient:
            object.__setattr__(self, "pi_power", 0)

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.coefficient * other.coefficient, self.pi_power + other.pi_power)
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.coefficient * other, self.pi_power)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            other = ExactScalar(as_number(other), 0)
        if not other.coefficient:
            return self
        if not self.coefficient:
            return other
        if other.pi_power != self.pi_power:
            raise ValueError("cannot add exact scalars with different powers of pi")
        return ExactScalar(self.coefficient + other.coefficient, self.pi_power)

    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.coefficient == other.coefficient and self.pi_power == other.pi_power
        other = as_number(other)
        if other is NotImplemented:
            return NotImplemented
        return self.pi_power == 0 and self.coefficient == other

    def __hash__(self):
        return hash((self.coefficient, self.pi_power))

    def __complex__(self):
        return complex(self.coefficient) * math.pi ** self.pi_power

    def __float__(self):
        return float(self.coefficient) * math.pi ** self.pi_power

    def __str__(self):
        if self.pi_power == 0 or not self.coefficient:
            return str(self.coefficient)
        return f"({self.coefficient})*pi^{self.pi_power}"
