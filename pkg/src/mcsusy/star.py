"""Scalar phase-space functions and the Moyal star product.

A :class:`PhaseSpaceFunction` is a polynomial in ``(q1, q2, p1, p2)`` with
exact coefficients, optionally multiplied by the vacuum Gaussian
``exp(-(q1^2 + q2^2 + p1^2 + p2^2))`` and a power of pi.

Two arithmetic modes exist. In *formal* mode every monomial carries a power
of a formal ``hbar`` so that classical limits can be taken; envelopes are not
allowed there. In *hbar = 1* mode (the default) the powers are folded into the
coefficients and Gaussian-carrying functions are allowed.
"""
from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DivergentIntegral,
    EnvelopeUnsupported,
    HbarFixedMode,
    ModeMismatch,
    NonTerminatingStar,
    VacuumSquareOutsideIntegral,
)
from .field import ONE, ExactScalar, I, Number, as_number

__all__ = [
    "VARIABLES",
    "Monomial",
    "PhaseSpaceFunction",
    "anti_moyal_bracket",
    "classical_limit",
    "compose",
    "conjugate",
    "differentiate",
    "integrate",
    "leading_order",
    "moyal_bracket",
    "moyal_star",
    "pointwise_mul",
    "poisson_bracket",
    "star",
    "variables",
]

VARIABLES = ("q1", "q2", "p1", "p2")
_INDEX = {name: k for k, name in enumerate(VARIABLES)}
# canonical pairs as (q index, p index)
_PAIRS = ((0, 2), (1, 3))

_HALF_I = I / 2


class Monomial(NamedTuple):
    coeff: Number
    exponents: tuple
    hbar_power: int


def _var_index(var) -> int:
    if isinstance(var, int):
        if not 0 <= var < 4:
            raise ValueError(f"variable index {var} out of range")
        return var
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"unknown phase-space variable {var!r}") from None


class PhaseSpaceFunction:
    """Immutable exact phase-space function.

    Parameters
    ----------
    terms : mapping
        ``(e_q1, e_q2, e_p1, e_p2, hbar_power) -> coefficient``. Four-tuples
        are accepted as keys with ``hbar_power = 0``.
    envelope : bool
        Multiply by the vacuum Gaussian.
    formal : bool
        Track powers of hbar instead of setting hbar = 1.
    pi_power : int
        Overall factor ``pi**pi_power``.
    """

    __slots__ = ("_hash", "_terms", "envelope", "formal", "pi_power")

    def __init__(self, terms: Mapping | None = None, *, envelope=False, formal=False, pi_power=0):
        clean: dict = {}
        for key, c in (terms or {}).items():
            key = tuple(int(k) for k in key)
            if len(key) == 4:
                key += (0,)
            if len(key) != 5 or min(key) < 0:
                raise ValueError(f"bad monomial key {key}")
            if key[4] and not formal:
                raise ValueError("hbar powers are only stored in formal mode")
            c = as_number(c)
            if c is NotImplemented:
                raise TypeError(f"bad coefficient {c!r}")
            c = clean.get(key, 0) + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._init(clean, bool(envelope), bool(formal), int(pi_power))

    def _init(self, terms, envelope, formal, pi_power):
        if envelope and formal:
            raise EnvelopeUnsupported("Gaussian envelopes require hbar = 1 mode")
        self._terms = terms
        self.envelope = envelope
        self.formal = formal
        self.pi_power = pi_power if terms else 0
        self._hash = None

    @classmethod
    def _raw(cls, terms, envelope=False, formal=False, pi_power=0):
        obj = object.__new__(cls)
        obj._init(terms, envelope, formal, pi_power)
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c=1, formal=False) -> PhaseSpaceFunction:
        c = as_number(c)
        return cls._raw({(0, 0, 0, 0, 0): c} if c else {}, formal=formal)

    @classmethod
    def variable(cls, name, formal=False) -> PhaseSpaceFunction:
        exps = [0, 0, 0, 0, 0]
        exps[_var_index(name)] = 1
        return cls._raw({tuple(exps): ONE}, formal=formal)

    @classmethod
    def hbar(cls) -> PhaseSpaceFunction:
        """The formal constant hbar."""
        return cls._raw({(0, 0, 0, 0, 1): ONE}, formal=True)

    @classmethod
    def vacuum(cls) -> PhaseSpaceFunction:
        """``exp(-(q1^2 + q2^2 + p1^2 + p2^2))`` without normalisation."""
        return cls._raw({(0, 0, 0, 0, 0): ONE}, envelope=True)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def monomials(self) -> Iterator[Monomial]:
        """Monomials in canonical order (by exponents, then hbar power)."""
        for key in sorted(self._terms):
            yield Monomial(self._terms[key], key[:4], key[4])

    def coefficient(self, exponents, hbar_power=0) -> Number:
        return self._terms.get(tuple(exponents) + (hbar_power,), Number(0))

    @property
    def is_polynomial(self) -> bool:
        return not self.envelope and self.pi_power == 0

    @property
    def is_constant(self) -> bool:
        return not self.envelope and all(k == (0, 0, 0, 0, 0) for k in self._terms)

    def constant_value(self) -> Number:
        """Value of a constant function (pi factors excluded)."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0, 0, 0, 0), Number(0))

    def degrees(self) -> tuple:
        """Maximal exponent of each variable."""
        out = [0, 0, 0, 0]
        for key in self._terms:
            for k in range(4):
                out[k] = max(out[k], key[k])
        return tuple(out)

    @property
    def total_degree(self) -> int:
        return max((sum(k[:4]) for k in self._terms), default=0)

    def variables_used(self) -> set:
        return {VARIABLES[k] for key in self._terms for k in range(4) if key[k]}

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- algebra ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PhaseSpaceFunction):
            return other
        c = as_number(other)
        if c is NotImplemented:
            return NotImplemented
        return PhaseSpaceFunction.constant(c, formal=self.formal)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        formal = _common_mode(self, other)
        if not other._terms:
            return self._with_mode(formal)
        if not self._terms:
            return other._with_mode(formal)
        if (self.envelope, self.pi_power) != (other.envelope, other.pi_power):
            raise ValueError("cannot add functions with different Gaussian/pi prefactors")
        terms = dict(self._terms)
        for key, c in other._terms.items():
            if key in terms:
                c = terms[key] + c
                if not c:
                    del terms[key]
                    continue
            terms[key] = c
        return PhaseSpaceFunction._raw(terms, self.envelope, formal, self.pi_power)

    __radd__ = __add__

    def __neg__(self):
        return self._scale(Number(-1))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, c: Number):
        if not c:
            return PhaseSpaceFunction._raw({}, formal=self.formal)
        return PhaseSpaceFunction._raw(
            {k: v * c for k, v in self._terms.items()}, self.envelope, self.formal, self.pi_power
        )

    def _with_mode(self, formal):
        if formal == self.formal:
            return self
        return PhaseSpaceFunction._raw(self._terms, self.envelope, formal, self.pi_power)

    def __mul__(self, other):
        if isinstance(other, PhaseSpaceFunction):
            return pointwise_mul(self, other)
        c = as_number(other)
        if c is NotImplemented:
            return NotImplemented
        return self._scale(c)

    def __rmul__(self, other):
        c = as_number(other)
        if c is NotImplemented:
            return NotImplemented
        return self._scale(c)

    def __truediv__(self, other):
        c = as_number(other)
        if c is NotImplemented:
            return NotImplemented
        return self._scale(c.inverse())

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = PhaseSpaceFunction.constant(1, formal=self.formal)
        for _ in range(n):
            out = pointwise_mul(out, self)
        return out

    def __matmul__(self, other):
        if not isinstance(other, PhaseSpaceFunction):
            other = self._coerce(other)
        return moyal_star(self, other)

    def conjugate(self) -> PhaseSpaceFunction:
        return PhaseSpaceFunction._raw(
            {k: v.conjugate() for k, v in self._terms.items()}, self.envelope, self.formal, self.pi_power
        )

    def diff(self, var) -> PhaseSpaceFunction:
        return differentiate(self, var)

    def fold_hbar(self) -> PhaseSpaceFunction:
        """Set hbar = 1: fold formal powers into the coefficients."""
        if not self.formal:
            return self
        terms: dict = {}
        for key, c in self._terms.items():
            k = key[:4] + (0,)
            terms[k] = terms.get(k, 0) + c
        return PhaseSpaceFunction({k: v for k, v in terms.items()}, formal=False)

    def to_formal(self) -> PhaseSpaceFunction:
        """Reinterpret an hbar-free polynomial in formal mode."""
        if self.formal:
            return self
        if self.envelope or self.pi_power:
            raise EnvelopeUnsupported("Gaussian envelopes require hbar = 1 mode")
        return self._with_mode(True)

    def evaluate(self, point) -> Number:
        """Exact value of the polynomial part at a point (hbar = 1, no envelope)."""
        vals = [as_number(point[v]) if isinstance(point, Mapping) else as_number(point[k])
                for k, v in enumerate(VARIABLES)]
        total = Number(0)
        for key, c in self._terms.items():
            term = c
            for k in range(4):
                if key[k]:
                    term = term * vals[k] ** key[k]
            total = total + term
        return total

    def numeric(self, point) -> complex:
        """Floating-point value including Gaussian and pi factors."""
        vals = [point[v] if isinstance(point, Mapping) else point[k] for k, v in enumerate(VARIABLES)]
        vals = [Fraction(x) if isinstance(x, float) else x for x in vals]
        value = complex(self.evaluate(vals))
        if self.envelope:
            value *= math.exp(-sum(float(x) ** 2 for x in vals))
        return value * math.pi ** self.pi_power

    # -- comparison -------------------------------------------------------
    def _neutral(self):
        return not self.envelope and all(k == (0, 0, 0, 0, 0) for k in self._terms)

    def __eq__(self, other):
        if not isinstance(other, PhaseSpaceFunction):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self._terms != other._terms:
            return False
        if not self._terms:
            return True
        if (self.envelope, self.pi_power) != (other.envelope, other.pi_power):
            return False
        return self.formal == other.formal or self._neutral()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._terms.items()), self.envelope, self.pi_power))
        return self._hash

    def __repr__(self):
        return f"PhaseSpaceFunction({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in self.monomials():
            factors = []
            for k, e in enumerate(mono.exponents):
                if e:
                    factors.append(VARIABLES[k] if e == 1 else f"{VARIABLES[k]}^{e}")
            if mono.hbar_power:
                factors.append("hbar" if mono.hbar_power == 1 else f"hbar^{mono.hbar_power}")
            coeff = format_number(mono.coeff)
            if not factors:
                parts.append(coeff)
            elif coeff == "1":
                parts.append("*".join(factors))
            elif coeff == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(coeff + "*" + "*".join(factors))
        body = " + ".join(parts).replace("+ -", "- ")
        if self.envelope or self.pi_power:
            body = f"({body})"
            if self.pi_power:
                body += f"*pi^{self.pi_power}" if self.pi_power > 0 else f"*pi^({self.pi_power})"
            if self.envelope:
                body += "*exp(-(q1^2 + q2^2 + p1^2 + p2^2))"
        return body

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> list:
        """List of ``{coeff_re, coeff_im, exps, hbar, envelope}`` records.

        Coefficients containing a square root produce one record per radicand
        with an additional ``sqrt`` key; ``pi_power`` appears only when set.
        """
        envelope = "vacuum" if self.envelope else "none"
        out = []
        for mono in self.monomials():
            for d, (re, im) in sorted(mono.coeff.parts.items()):
                rec = {
                    "coeff_re": str(re),
                    "coeff_im": str(im),
                    "exps": list(mono.exponents),
                    "hbar": mono.hbar_power,
                    "envelope": envelope,
                }
                if d != 1:
                    rec["sqrt"] = d
                if self.pi_power:
                    rec["pi_power"] = self.pi_power
                out.append(rec)
        return out

    @classmethod
    def from_json(cls, records, formal=False) -> PhaseSpaceFunction:

        terms: dict = {}
        envelope, pi_power = False, 0
        for rec in records:
            c = Number(Fraction(rec["coeff_re"]), Fraction(rec["coeff_im"]))
            if rec.get("sqrt", 1) != 1:
                c = c * Number.sqrt(rec["sqrt"])
            key = tuple(rec["exps"]) + (int(rec.get("hbar", 0)),)
            terms[key] = terms.get(key, 0) + c
            envelope = rec.get("envelope", "none") == "vacuum"
            pi_power = int(rec.get("pi_power", 0))
            formal = formal or key[4] > 0
        return cls(terms, envelope=envelope, formal=formal, pi_power=pi_power)


def format_number(c: Number) -> str:
    """Render a coefficient in the expression grammar."""
    chunks = []
    for d, (re, im) in sorted(c.parts.items()):
        if re and im:
            val = f"({_q(re)} {'+' if im > 0 else '-'} {_q(abs(im))}*i)"
        elif im:
            val = "i" if im == 1 else "-i" if im == -1 else f"{_q(im)}*i"
        else:
            val = _q(re)
        if d != 1:
            val = f"sqrt{d}" if val == "1" else f"-sqrt{d}" if val == "-1" else f"{val}*sqrt{d}"
            if d != 2:
                val = val.replace(f"sqrt{d}", f"sqrt({d})")
        chunks.append(val)
    if len(chunks) > 1:
        return "(" + " + ".join(chunks).replace("+ -", "- ") + ")"
    return chunks[0] if chunks else "0"


def _q(x) -> str:
    s = str(x)
    return f"({s})" if "/" in s else s


def variables(formal=False) -> tuple:
    """The coordinate functions ``(q1, q2, p1, p2)``."""
    return tuple(PhaseSpaceFunction.variable(v, formal=formal) for v in VARIABLES)


def _common_mode(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> bool:
    if F.formal == G.formal:
        return F.formal
    if F._neutral():
        return G.formal
    if G._neutral():
        return F.formal
    raise ModeMismatch("cannot combine formal-hbar and hbar = 1 functions")


def _mul_terms(t1: dict, t2: dict, shift: int = 0, scale: Number | None = None) -> dict:
    out: dict = {}
    for a, c in t1.items():
        if scale is not None:
            c = c * scale
        a0, a1, a2, a3, a4 = a
        for b, d in t2.items():
            key = (a0 + b[0], a1 + b[1], a2 + b[2], a3 + b[3], a4 + b[4] + shift)
            v = c * d
            if key in out:
                out[key] = out[key] + v
            else:
                out[key] = v
    return out


def _accumulate(acc: dict, terms: dict):
    for key, c in terms.items():
        if key in acc:
            acc[key] = acc[key] + c
        else:
            acc[key] = c


def _prune(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


def pointwise_mul(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """Ordinary commutative product ``F G``."""
    formal = _common_mode(F, G)
    if F.envelope and G.envelope:
        raise VacuumSquareOutsideIntegral(
            "product of two Gaussian-carrying functions; use integrate(F, G)"
        )
    if not F._terms or not G._terms:
        return PhaseSpaceFunction._raw({}, formal=formal)
    return PhaseSpaceFunction._raw(
        _prune(_mul_terms(F._terms, G._terms)),
        F.envelope or G.envelope,
        formal,
        F.pi_power + G.pi_power,
    )


def _diff_terms(terms: dict, k: int, envelope: bool) -> dict:
    out: dict = {}
    for key, c in terms.items():
        e = key[k]
        if e:
            nk = key[:k] + (e - 1,) + key[k + 1:]
            v = c * e
            out[nk] = out[nk] + v if nk in out else v
        if envelope:
            nk = key[:k] + (e + 1,) + key[k + 1:]
            v = c * -2
            out[nk] = out[nk] + v if nk in out else v
    return _prune(out)


def differentiate(F: PhaseSpaceFunction, var) -> PhaseSpaceFunction:
    """Partial derivative; Gaussian-carrying functions stay in their class."""
    k = _var_index(var)
    return PhaseSpaceFunction._raw(_diff_terms(F._terms, k, F.envelope), F.envelope, F.formal, F.pi_power)


def _derivative_table(terms: dict, order, bounds, envelope, wanted=None) -> dict:
    """Mixed partial derivatives keyed by multi-index along ``order``.

    ``wanted`` restricts the table to the given multi-indices (and the
    prefixes needed to reach them).
    """
    prefixes = None
    if wanted is not None:
        prefixes = [{w[:level + 1] for w in wanted} for level in range(len(order))]
    table = {(): terms}
    for level, (k, bound) in enumerate(zip(order, bounds)):
        nxt = {}
        for key, t in table.items():
            for n in range(bound + 1):
                if not t:
                    break
                if prefixes is None or key + (n,) in prefixes[level]:
                    nxt[key + (n,)] = t
                if n < bound:
                    t = _diff_terms(t, k, envelope)
        table = nxt
    return table


_INF = 1 << 30
_FACT = [math.factorial(n) for n in range(64)]


def moyal_star(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """Moyal product ``F * G`` as the exponential bidifferential series.

    The series is finite because at least one operand must be a polynomial;
    its degree bounds the number of derivatives that survive.
    """
    formal = _common_mode(F, G)
    if F.envelope and G.envelope:
        raise NonTerminatingStar("star product of two Gaussian-carrying functions")
    if not F._terms or not G._terms:
        return PhaseSpaceFunction._raw({}, formal=formal)
    dF = F.degrees() if not F.envelope else (_INF,) * 4
    dG = G.degrees() if not G.envelope else (_INF,) * 4
    # left derivatives on F: q1, p1, q2, p2; matching right derivatives on G: p1, q1, p2, q2
    left_order = (0, 2, 1, 3)
    right_order = (2, 0, 3, 1)
    bounds = [min(dF[l], dG[r]) for l, r in zip(left_order, right_order)]
    if G.envelope:
        left = _derivative_table(F._terms, left_order, bounds, F.envelope)
        right = _derivative_table(G._terms, right_order, bounds, G.envelope, wanted=left)
    else:
        right = _derivative_table(G._terms, right_order, bounds, G.envelope)
        left = _derivative_table(F._terms, left_order, bounds, F.envelope, wanted=right)
    acc: dict = {}
    for idx, tf in left.items():
        tg = right.get(idx)
        if not tg:
            continue
        a1, b1, a2, b2 = idx
        k = a1 + b1 + a2 + b2
        coeff = _HALF_I ** k / (_FACT[a1] * _FACT[b1] * _FACT[a2] * _FACT[b2])
        if (b1 + b2) % 2:
            coeff = -coeff
        shift = k if formal else 0
        _accumulate(acc, _mul_terms(tf, tg, shift=shift, scale=coeff))
    return PhaseSpaceFunction._raw(
        _prune(acc), F.envelope or G.envelope, formal, F.pi_power + G.pi_power
    )


star = moyal_star


def moyal_bracket(F, G) -> PhaseSpaceFunction:
    """``[F, G]_M = F*G - G*F``."""
    return moyal_star(F, G) - moyal_star(G, F)


def anti_moyal_bracket(F, G) -> PhaseSpaceFunction:
    """``{F, G}_M = F*G + G*F``."""
    return moyal_star(F, G) + moyal_star(G, F)


def poisson_bracket(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> PhaseSpaceFunction:
    if F.envelope or G.envelope:
        raise EnvelopeUnsupported("Poisson bracket is defined here for polynomials only")
    out = PhaseSpaceFunction.constant(0, formal=_common_mode(F, G))
    for q, p in _PAIRS:
        out = out + F.diff(q) * G.diff(p) - F.diff(p) * G.diff(q)
    return out


def conjugate(F: PhaseSpaceFunction) -> PhaseSpaceFunction:
    return F.conjugate()


def classical_limit(F: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """Drop every term carrying a positive power of hbar."""
    if not F.formal:
        if F._neutral():
            return F
        raise HbarFixedMode("classical limit needs formal-hbar mode")
    return PhaseSpaceFunction._raw({k: v for k, v in F._terms.items() if k[4] == 0}, formal=True)


def leading_order(F: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """Classical limit of ``F / (i hbar)``; ``F`` must vanish at hbar = 0."""
    if not F.formal:
        if not F._terms:
            return F
        raise HbarFixedMode("leading order needs formal-hbar mode")
    if any(k[4] == 0 for k in F._terms):
        raise ValueError("function has an hbar^0 part; F/(i hbar) diverges as hbar -> 0")
    inv_i = -I
    return PhaseSpaceFunction._raw(
        {k[:4] + (0,): v * inv_i for k, v in F._terms.items() if k[4] == 1}, formal=True
    )


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def integrate(F: PhaseSpaceFunction, G: PhaseSpaceFunction | None = None) -> ExactScalar:
    """Exact integral over phase space of ``F`` (or of the product ``F G``).

    Each even moment contributes ``(2m-1)!! / (2s)^m * sqrt(pi/s)`` where
    ``s`` is the number of Gaussian factors (1 or 2).
    """
    if G is None:
        terms, s, pi_power = F._terms, int(F.envelope), F.pi_power
        formal = F.formal
    else:
        formal = _common_mode(F, G)
        terms = _prune(_mul_terms(F._terms, G._terms))
        s, pi_power = int(F.envelope) + int(G.envelope), F.pi_power + G.pi_power
    if s == 0:
        if not terms:
            return ExactScalar(Number(0))
        raise DivergentIntegral("integrand has no Gaussian envelope")
    if formal and any(k[4] for k in terms):
        raise HbarFixedMode("integrals are evaluated at hbar = 1")

    total = Number(0)
    for key, c in terms.items():
        if any(e % 2 for e in key[:4]):
            continue
        weight = Fraction(1)
        for e in key[:4]:
            weight *= Fraction(_double_factorial(e - 1), (2 * s) ** (e // 2))
        total = total + c * weight
    return ExactScalar(total / (s * s), pi_power + 2)


def compose(F: PhaseSpaceFunction, images: Mapping) -> PhaseSpaceFunction:
    """Substitute polynomials for the coordinates, ``F(images)``."""
    if F.envelope:
        raise EnvelopeUnsupported("composition is defined for polynomials only")
    subs = [images.get(v, PhaseSpaceFunction.variable(v, formal=F.formal)) for v in VARIABLES]
    out = PhaseSpaceFunction.constant(0, formal=F.formal)
    hb = PhaseSpaceFunction.hbar() if F.formal else None
    for mono in F.monomials():
        term = PhaseSpaceFunction.constant(mono.coeff, formal=F.formal)
        for k, e in enumerate(mono.exponents):
            if e:
                term = term * subs[k] ** e
        if mono.hbar_power:
            term = term * hb ** mono.hbar_power
        out = out + term
    return out
