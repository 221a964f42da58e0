"""The complex Clifford algebra of four orthonormal generators.

Blades are 4-bit masks (bit ``j-1`` set means ``e^j`` is present) in ascending
generator order. Coefficients may be exact :class:`~mcsusy.field.Number`
values or phase-space functions; the coefficient product is pluggable so the
same blade machinery serves both the plain and the Moyal-deformed algebra.
"""
from __future__ import annotations

import operator
from collections.abc import Callable, Mapping

from .field import ONE, SQRT2, I, Number, as_number

__all__ = [
    "BLADE_MATRICES",
    "IDENTITY2",
    "IDENTITY4",
    "PAULI",
    "CliffordElement",
    "blade",
    "blade_mul",
    "clifford_anticommutator",
    "clifford_commutator",
    "clifford_mul",
    "from_matrix",
    "generator",
    "grade",
    "grade_part",
    "left_contraction",
    "matmul",
    "matrix_to_json",
    "to_matrix",
    "wedge",
    "witt_basis",
]


def grade(mask: int) -> int:
    return (mask).bit_count()


def _reorder_sign(a: int, b: int) -> int:
    # number of transpositions to move each generator of b past the higher ones in a
    swaps = 0
    a >>= 1
    while a:
        swaps += grade(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_mul(a: int, b: int) -> tuple[int, int]:
    """Product of two unit blades: ``(sign, mask)`` with ``(e^j)^2 = 1``."""
    return _reorder_sign(a, b), a ^ b


def _is_zero(c) -> bool:
    return not c


class CliffordElement:
    """Element of C4(C): a table ``mask -> coefficient`` with zeros omitted."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        for mask, c in (coeffs or {}).items():
            if not 0 <= mask < 16:
                raise ValueError(f"blade mask {mask} outside 0..15")
            if isinstance(c, (int, complex)) or type(c).__name__ in ("Fraction", "mpq"):
                c = as_number(c)
            if not _is_zero(c):
                clean[mask] = c
        self._coeffs = clean

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def __getitem__(self, mask):
        return self._coeffs.get(mask, 0)

    def items(self):
        return sorted(self._coeffs.items())

    def map(self, fn: Callable) -> CliffordElement:
        return CliffordElement({m: fn(c) for m, c in self._coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement({0: other})
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out[m] + c if m in out else c
        return CliffordElement(out)

    __radd__ = __add__

    def __neg__(self):
        return self.map(operator.neg)

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement({0: other})
        return self + (-other)

    def __mul__(self, other):
        """Clifford product with a multivector, or scaling by a coefficient."""
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return self.map(lambda c: c * other)

    def __rmul__(self, other):
        return self.map(lambda c: other * c)

    def __truediv__(self, other):
        return self.map(lambda c: c / other)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement({0: other})
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    @property
    def is_even(self) -> bool:
        return all(grade(m) % 2 == 0 for m in self._coeffs)

    @property
    def is_odd(self) -> bool:
        return all(grade(m) % 2 == 1 for m in self._coeffs)

    def to_json(self) -> list:
        """``[{"mask": m, "coeff": ...}]`` in mask order."""
        return [{"mask": m, "coeff": c.to_json() if hasattr(c, "to_json") else str(c)} for m, c in self.items()]

    def __repr__(self):
        if not self._coeffs:
            return "CliffordElement(0)"
        parts = []
        for m, c in self.items():
            name = "1" if m == 0 else "e" + "".join(str(j + 1) for j in range(4) if m >> j & 1)
            parts.append(f"({c})*{name}")
        return " + ".join(parts)


def generator(j: int, coeff=ONE) -> CliffordElement:
    """``coeff * e^j`` for ``j`` in 1..4."""
    if not 1 <= j <= 4:
        raise ValueError("generators are e^1 .. e^4")
    return CliffordElement({1 << (j - 1): coeff})


def blade(*indices: int, coeff=ONE) -> CliffordElement:
    """Clifford product ``e^{j1} e^{j2} ...`` of the listed generators."""
    out = CliffordElement({0: coeff})
    for j in indices:
        out = out * generator(j)
    return out


def clifford_mul(x: CliffordElement, y: CliffordElement, mul: Callable = operator.mul) -> CliffordElement:
    """Bilinear extension of :func:`blade_mul`; ``mul`` composes coefficients."""
    out: dict = {}
    for a, ca in x._coeffs.items():
        for b, cb in y._coeffs.items():
            sign, m = blade_mul(a, b)
            term = mul(ca, cb)
            if sign < 0:
                term = -term
            out[m] = out[m] + term if m in out else term
    return CliffordElement(out)


def grade_part(x: CliffordElement, k: int) -> CliffordElement:
    if not 0 <= k <= 4:
        raise ValueError("grade must lie in 0..4")
    return CliffordElement({m: c for m, c in x._coeffs.items() if grade(m) == k})


def wedge(x: CliffordElement, y: CliffordElement, mul: Callable = operator.mul) -> CliffordElement:
    """Exterior product: keep only blade products with disjoint generators."""
    out: dict = {}
    for a, ca in x._coeffs.items():
        for b, cb in y._coeffs.items():
            if a & b:
                continue
            sign, m = blade_mul(a, b)
            term = mul(ca, cb)
            if sign < 0:
                term = -term
            out[m] = out[m] + term if m in out else term
    return CliffordElement(out)


def left_contraction(j: int, x: CliffordElement) -> CliffordElement:
    """Interior product of the generator ``e^j`` with ``x`` (unit metric).

    Removing ``e^j`` from a blade costs the sign of moving it to the front.
    """
    bit = 1 << (j - 1)
    out: dict = {}
    for m, c in x._coeffs.items():
        if m & bit:
            sign = -1 if grade(m & (bit - 1)) % 2 else 1
            out[m ^ bit] = c if sign > 0 else -c
    return CliffordElement(out)


def clifford_commutator(x, y, mul: Callable = operator.mul) -> CliffordElement:
    return clifford_mul(x, y, mul) - clifford_mul(y, x, mul)


def clifford_anticommutator(x, y, mul: Callable = operator.mul) -> CliffordElement:
    return clifford_mul(x, y, mul) + clifford_mul(y, x, mul)


# -- 2x2 and 4x4 constant matrices -------------------------------------------
_0, _1 = Number(0), ONE
IDENTITY2 = ((_1, _0), (_0, _1))
PAULI = {
    1: ((_0, _1), (_1, _0)),
    2: ((_0, -I), (I, _0)),
    3: ((_1, _0), (_0, -_1)),
}


def matmul(A, B, mul: Callable = operator.mul, zero=None):
    """Product of nested-tuple matrices; ``mul`` composes entries."""
    zero = Number(0) if zero is None else zero
    rows = []
    for r in range(len(A)):
        row = []
        for c in range(len(B[0])):
            acc = zero
            for t in range(len(B)):
                if _is_zero(A[r][t]) or _is_zero(B[t][c]):
                    continue
                acc = acc + mul(A[r][t], B[t][c])
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def matrix_to_json(M) -> list:
    """Row-major nested lists of coefficient strings."""
    return [[str(x) for x in row] for row in M]


def _block(a, b, c, d):
    """4x4 matrix [[a, b], [c, d]] from 2x2 blocks."""
    return tuple(a[r] + b[r] for r in range(2)) + tuple(c[r] + d[r] for r in range(2))


def _scale2(s, M):
    return tuple(tuple(s * x for x in row) for row in M)


_Z2 = ((_0, _0), (_0, _0))
# generator images: e^j = [[0, i s], [-i s, 0]] with s = sigma_1, sigma_3, sigma_2; e^4 = [[0, 1], [1, 0]]
_GEN_MATRICES = {
    1: _block(_Z2, _scale2(I, PAULI[1]), _scale2(-I, PAULI[1]), _Z2),
    2: _block(_Z2, _scale2(I, PAULI[3]), _scale2(-I, PAULI[3]), _Z2),
    3: _block(_Z2, _scale2(I, PAULI[2]), _scale2(-I, PAULI[2]), _Z2),
    4: _block(_Z2, IDENTITY2, IDENTITY2, _Z2),
}
IDENTITY4 = tuple(tuple(ONE if r == c else Number(0) for c in range(4)) for r in range(4))


def _blade_matrix(mask: int):
    M = IDENTITY4
    for j in range(1, 5):
        if mask >> (j - 1) & 1:
            M = matmul(M, _GEN_MATRICES[j])
    return M


BLADE_MATRICES = {mask: _blade_matrix(mask) for mask in range(16)}


def to_matrix(x: CliffordElement, zero=None):
    """4x4 representation: linear extension of the generator assignment.

    Coefficients may be numbers or phase-space functions; ``zero`` is the
    additive identity used for empty entries (defaults to ``Number(0)``).
    """
    zero = Number(0) if zero is None else zero
    rows = [[zero] * 4 for _ in range(4)]
    for mask, c in x._coeffs.items():
        B = BLADE_MATRICES[mask]
        for r in range(4):
            for s in range(4):
                if B[r][s]:
                    rows[r][s] = rows[r][s] + c * B[r][s]
    return tuple(tuple(row) for row in rows)


def _solve_blade_basis():
    # coordinates of each matrix unit E_rs in the blade basis, via the trace form:
    # tr(B_m^{-1} B_n) = 4 delta_mn and every blade matrix squares to +-1
    coords = {}
    for mask, B in BLADE_MATRICES.items():
        sq = matmul(B, B)[0][0]
        inv = tuple(tuple(x * sq for x in row) for row in B)  # B^{-1} = B / B^2
        coords[mask] = inv
    return coords


_BLADE_INVERSES = _solve_blade_basis()


def from_matrix(M, zero=None) -> CliffordElement:
    """Inverse of :func:`to_matrix`: expand a 4x4 matrix in the blade basis."""
    out = {}
    quarter = Number(1) / 4
    for mask, Binv in _BLADE_INVERSES.items():
        acc = None
        for r in range(4):
            for s in range(4):
                if Binv[s][r] and not _is_zero(M[r][s]):
                    term = M[r][s] * (Binv[s][r] * quarter)
                    acc = term if acc is None else acc + term
        if acc is not None and not _is_zero(acc):
            out[mask] = acc
    return CliffordElement(out)


def witt_basis() -> tuple[CliffordElement, CliffordElement, CliffordElement, CliffordElement]:
    """The null 1-forms ``(f, g, f_check, g_check)``.

    ``f = (e1 + i e3)/sqrt2``, ``f_check = (e1 - i e3)/sqrt2`` and likewise
    ``g``, ``g_check`` from ``e2``, ``e4``.
    """
    h = ONE / SQRT2
    f = CliffordElement({0b0001: h, 0b0100: I * h})
    f_check = CliffordElement({0b0001: h, 0b0100: -I * h})
    g = CliffordElement({0b0010: h, 0b1000: I * h})
    g_check = CliffordElement({0b0010: h, 0b1000: -I * h})
    return f, g, f_check, g_check
