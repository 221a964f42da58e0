"""Moyal-Clifford algebra: matrix-valued phase-space functions.

Entries of an :class:`MCElement` are composed with the Moyal star product
while the matrix structure multiplies as usual. Blade-form elements (a
:class:`~mcsusy.clifford.CliffordElement` with function coefficients) convert
to 4x4 matrices through the fixed generator representation.

Spinor convention: the upper component carries the atomic state ``|2>`` and
the lower one ``|1>``, so that ``sigma_3 |2> = |2>`` and ``sigma_3 |1> = -|1>``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .clifford import (
    IDENTITY2,
    PAULI,
    CliffordElement,
    clifford_mul,
    from_matrix,
    matmul,
    to_matrix,
)
from .field import as_number
from .star import PhaseSpaceFunction, integrate, moyal_star

__all__ = [
    "EigenCheck",
    "MCElement",
    "Spinor",
    "apply",
    "blade_mc_mul",
    "dagger",
    "from_blades",
    "identity",
    "is_star_eigen",
    "mc_anticommutator",
    "mc_commutator",
    "mc_mul",
    "pi_minus",
    "pi_plus",
    "sigma",
    "sigma_minus",
    "sigma_plus",
    "to_blades",
]

PSF = PhaseSpaceFunction
_ZERO = PSF.constant(0)


def _as_psf(x) -> PhaseSpaceFunction:
    if isinstance(x, PhaseSpaceFunction):
        return x
    return PSF.constant(as_number(x))


class MCElement:
    """Immutable matrix of phase-space functions (2x2 or 4x4)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(_as_psf(x) for x in row) for row in entries)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.entries = rows

    @classmethod
    def from_numbers(cls, M) -> MCElement:
        return cls([[PSF.constant(x) for x in row] for row in M])

    @classmethod
    def scalar(cls, F, n=2) -> MCElement:
        """``F`` times the n x n identity."""
        F = _as_psf(F)
        return cls([[F if r == c else _ZERO for c in range(n)] for r in range(n)])

    @classmethod
    def from_blocks(cls, a, b, c, d) -> MCElement:
        """4x4 element ``[[a, b], [c, d]]`` from 2x2 blocks."""
        top = [ra + rb for ra, rb in zip(a.entries, b.entries)]
        bot = [rc + rd for rc, rd in zip(c.entries, d.entries)]
        return cls(top + bot)

    @property
    def shape(self) -> tuple:
        return len(self.entries), len(self.entries[0])

    def block(self, i: int, j: int) -> MCElement:
        """2x2 block ``(i, j)`` of a 4x4 element."""
        return MCElement([row[2 * j:2 * j + 2] for row in self.entries[2 * i:2 * i + 2]])

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def map(self, fn) -> MCElement:
        return MCElement([[fn(x) for x in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, MCElement):
            return NotImplemented
        self._check_shape(other)
        return MCElement([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, MCElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        """Entrywise scaling by a number or (pointwise) by a function."""
        if isinstance(other, MCElement):
            return NotImplemented
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def __truediv__(self, other):
        return self.map(lambda x: x / other)

    def __matmul__(self, other):
        if isinstance(other, Spinor):
            return apply(self, other)
        if isinstance(other, MCElement):
            return mc_mul(self, other)
        return NotImplemented

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, MCElement):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash(self.entries)

    def __bool__(self):
        return any(x for row in self.entries for x in row)

    def fold_hbar(self) -> MCElement:
        return self.map(lambda x: x.fold_hbar())

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.entries]

    def __repr__(self):
        rows = ",\n ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)
        return f"MCElement([{rows}])"


@dataclass(frozen=True)
class Spinor:
    """2x1 column of phase-space functions: ``(|2> part, |1> part)``."""

    upper: PhaseSpaceFunction
    lower: PhaseSpaceFunction

    def __post_init__(self):
        object.__setattr__(self, "upper", _as_psf(self.upper))
        object.__setattr__(self, "lower", _as_psf(self.lower))

    @classmethod
    def atomic(cls, j: int, F) -> Spinor:
        """``|j> (x) F`` for the atomic level ``j`` in {1, 2}."""
        if j == 2:
            return cls(F, _ZERO)
        if j == 1:
            return cls(_ZERO, F)
        raise ValueError("atomic level must be 1 or 2")

    @property
    def components(self) -> tuple:
        return (self.upper, self.lower)

    def __add__(self, other):
        return Spinor(self.upper + other.upper, self.lower + other.lower)

    def __sub__(self, other):
        return Spinor(self.upper - other.upper, self.lower - other.lower)

    def __neg__(self):
        return Spinor(-self.upper, -self.lower)

    def __mul__(self, c):
        return Spinor(self.upper * c, self.lower * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Spinor(self.upper / c, self.lower / c)

    def __bool__(self):
        return bool(self.upper) or bool(self.lower)

    def dagger_dot(self, other: Spinor):
        """Phase-space integral of ``self^dagger * other``.

        The integral of a star product equals that of the pointwise product,
        so Gaussian-carrying spinors are handled without an infinite series.
        """
        return integrate(self.upper.conjugate(), other.upper) + integrate(self.lower.conjugate(), other.lower)

    def norm_integral(self):
        return self.dagger_dot(self)

    def to_json(self) -> list:
        return [[self.upper.to_json()], [self.lower.to_json()]]


def mc_mul(X: MCElement, Y: MCElement) -> MCElement:
    """Matrix product whose entry products are Moyal star products."""
    if X.shape[1] != Y.shape[0]:
        raise ValueError(f"cannot multiply {X.shape} by {Y.shape}")
    return MCElement(matmul(X.entries, Y.entries, mul=moyal_star, zero=_ZERO))


def mc_commutator(X: MCElement, Y: MCElement) -> MCElement:
    return mc_mul(X, Y) - mc_mul(Y, X)


def mc_anticommutator(X: MCElement, Y: MCElement) -> MCElement:
    return mc_mul(X, Y) + mc_mul(Y, X)


def dagger(X):
    """Conjugate transpose with complex-conjugated entries."""
    if isinstance(X, Spinor):
        return MCElement([[X.upper.conjugate(), X.lower.conjugate()]])
    n, m = X.shape
    return MCElement([[X.entries[c][r].conjugate() for c in range(n)] for r in range(m)])


def apply(T: MCElement, psi: Spinor) -> Spinor:
    """``T *_MC psi`` for a 2x2 element and a spinor."""
    if T.shape != (2, 2):
        raise ValueError("spinors are acted on by 2x2 elements")
    col = ((psi.upper,), (psi.lower,))
    out = matmul(T.entries, col, mul=moyal_star, zero=_ZERO)
    return Spinor(out[0][0], out[1][0])


@dataclass(frozen=True)
class EigenCheck:
    holds: bool
    residual: Spinor

    def __bool__(self):
        return self.holds


def is_star_eigen(T: MCElement, psi: Spinor, eigenvalue) -> EigenCheck:
    """Exact test of ``T *_MC psi == eigenvalue * psi`` (psi must be nonzero)."""
    lam = as_number(eigenvalue)
    residual = apply(T, psi) - psi * lam
    return EigenCheck(bool(psi) and not residual, residual)


# -- blade form ---------------------------------------------------------------
def blade_mc_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """MC product in blade form: Clifford product with star-composed coefficients."""
    return clifford_mul(x, y, mul=moyal_star)


def from_blades(x: CliffordElement) -> MCElement:
    """4x4 matrix form of a blade-form element."""
    return MCElement(to_matrix(x.map(_as_psf), zero=_ZERO))


def to_blades(X: MCElement) -> CliffordElement:
    if X.shape != (4, 4):
        raise ValueError("blade form exists for 4x4 elements only")
    return from_matrix(X.entries, zero=_ZERO)


# -- named constants ----------------------------------------------------------
def sigma(k: int) -> MCElement:
    """Pauli matrix; ``sigma(0)`` is the 2x2 identity."""
    return MCElement.from_numbers(IDENTITY2 if k == 0 else PAULI[k])


def identity(n: int = 2) -> MCElement:
    return MCElement.from_numbers([[1 if r == c else 0 for c in range(n)] for r in range(n)])


def sigma_plus() -> MCElement:
    return MCElement.from_numbers([[0, 1], [0, 0]])


def sigma_minus() -> MCElement:
    return MCElement.from_numbers([[0, 0], [1, 0]])


def pi_plus() -> MCElement:
    return MCElement.from_numbers([[1 if r == c and r < 2 else 0 for c in range(4)] for r in range(4)])


def pi_minus() -> MCElement:
    return MCElement.from_numbers([[1 if r == c and r >= 2 else 0 for c in range(4)] for r in range(4)])
