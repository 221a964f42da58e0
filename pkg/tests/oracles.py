"""Independent reference implementations used only by the tests.

* Bopp-shift star product: left star multiplication by a Weyl-ordered
  monomial realised with the operators ``Q = q + (i hbar/2) d/dp`` and
  ``P = p - (i hbar/2) d/dq`` acting on plain dict polynomials.
* Gaussian moments from the Gamma function, also tabulated as rationals
  for fast overlap integrals.
* Clifford blade products by literal rewriting of generator strings.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

import sympy as sp

from mcsusy.field import Number
from mcsusy.star import PhaseSpaceFunction

Q1, Q2, P1, P2, HBAR = sp.symbols("q1 q2 p1 p2 hbar")
SYMS = (Q1, Q2, P1, P2)


def number_to_sympy(c: Number):
    return sum(
        (sp.Rational(int(a.numerator), int(a.denominator)) + sp.I * sp.Rational(int(b.numerator), int(b.denominator)))
        * sp.sqrt(d)
        for d, (a, b) in c.parts.items()
    )


def to_sympy(F: PhaseSpaceFunction):
    expr = 0
    for m in F.monomials():
        term = number_to_sympy(m.coeff) * HBAR ** m.hbar_power
        for s, e in zip(SYMS, m.exponents):
            term *= s ** e
        expr += term
    return sp.expand(expr)


# Polynomials for the Bopp oracle: {(e_q1, e_q2, e_p1, e_p2, e_hbar): (re, im)} over Fractions.
def _add(out, key, re, im):
    r0, i0 = out.get(key, (0, 0))
    r, i = r0 + re, i0 + im
    if r or i:
        out[key] = (r, i)
    else:
        out.pop(key, None)


def _shift_op(g, mult, deriv, sign, formal):
    # (x_mult + sign * (i hbar / 2) d/dx_deriv) g
    out = {}
    for key, (re, im) in g.items():
        k = list(key)
        k[mult] += 1
        _add(out, tuple(k), re, im)
        e = key[deriv]
        if e:
            k = list(key)
            k[deriv] -= 1
            if formal:
                k[4] += 1
            # sign * i/2 * e * (re + i im) = sign * e/2 * (-im + i re)
            f = Fraction(sign * e, 2)
            _add(out, tuple(k), -im * f, re * f)
    return out


def _weyl_apply(a, b, g, iq, ip, formal):
    # Weyl ordering of q^a p^b: 2^-a sum_k C(a, k) Q^(a-k) P^b Q^k
    total = {}
    for k in range(a + 1):
        t = g
        for _ in range(k):
            t = _shift_op(t, iq, ip, +1, formal)
        for _ in range(b):
            t = _shift_op(t, ip, iq, -1, formal)
        for _ in range(a - k):
            t = _shift_op(t, iq, ip, +1, formal)
        w = Fraction(comb(a, k), 2 ** a)
        for key, (re, im) in t.items():
            _add(total, key, re * w, im * w)
    return total


def gaussian_dict(F: PhaseSpaceFunction) -> dict:
    """Coefficient table of a polynomial with Gaussian-rational coefficients."""
    out = {}
    for m in F.monomials():
        parts = m.coeff.parts
        if set(parts) != {1}:
            raise ValueError("oracle handles Gaussian-rational coefficients only")
        re, im = parts[1]
        out[tuple(m.exponents) + (m.hbar_power,)] = (Fraction(int(re.numerator), int(re.denominator)),
                                                      Fraction(int(im.numerator), int(im.denominator)))
    return out


def bopp_star(F: PhaseSpaceFunction, G: PhaseSpaceFunction) -> dict:
    """``F * G`` via Bopp shifts of the left factor, as a coefficient table.

    In hbar = 1 mode hbar powers are dropped from the keys.
    """
    formal = F.formal or G.formal
    g = gaussian_dict(G)
    out = {}
    for key, (cr, ci) in gaussian_dict(F).items():
        t = _weyl_apply(key[0], key[2], g, 0, 2, formal)
        t = _weyl_apply(key[1], key[3], t, 1, 3, formal)
        for k, (re, im) in t.items():
            k = k[:4] + (k[4] + key[4],)
            _add(out, k, re * cr - im * ci, re * ci + im * cr)
    return out


def gaussian_moment(n: int, s):
    """``integral x^n exp(-s x^2) dx`` over the real line."""
    if n % 2:
        return sp.Integer(0)
    return sp.gamma(sp.Rational(n + 1, 2)) / sp.Integer(s) ** sp.Rational(n + 1, 2)


def gaussian_integral(poly: PhaseSpaceFunction, s: int, prefactor=1):
    """``prefactor * integral poly * exp(-s * sum x^2)`` over phase space."""
    total = 0
    for m in poly.monomials():
        term = number_to_sympy(m.coeff)
        for e in m.exponents:
            term *= gaussian_moment(e, s)
        total += term
    return sp.nsimplify(sp.simplify(total * prefactor))


def _moment_ratios(limit=40):
    # r(e) = integral x^e exp(-2 x^2) dx / sqrt(pi/2), rational for every e
    out = []
    for e in range(limit + 1):
        r = sp.nsimplify(gaussian_moment(e, 2) / sp.sqrt(sp.pi / 2))
        out.append(Fraction(int(r.p), int(r.q)))
    return out


MOMENT_RATIOS = _moment_ratios()


def overlap_oracle(F: PhaseSpaceFunction, G: PhaseSpaceFunction):
    """``integral F G`` for two Gaussian-enveloped functions.

    Returns ``((re, im), pi_power)`` from the precomputed moment table: with
    ``F = P pi^a exp(-r^2)`` and ``G = R pi^b exp(-r^2)`` the integral is
    ``pi^(a+b+2) / 4 * sum c d prod r(e)``.
    """
    f, g = gaussian_dict(F), gaussian_dict(G)
    re = im = Fraction(0)
    for ka, (ar, ai) in f.items():
        for kb, (br, bi) in g.items():
            w = Fraction(1)
            for v in range(4):
                w *= MOMENT_RATIOS[ka[v] + kb[v]]
            if w:
                re += (ar * br - ai * bi) * w
                im += (ar * bi + ai * br) * w
    return (re / 4, im / 4), F.pi_power + G.pi_power + 2


def exact_scalar_to_sympy(x):
    return number_to_sympy(x.coefficient) * sp.pi ** x.pi_power


def rewrite_blades(a: tuple, b: tuple):
    """Product of generator strings with ``e_j e_k = -e_k e_j`` and ``e_j e_j = 1``."""
    word, sign = list(a) + list(b), 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            if word[k] == word[k + 1]:
                del word[k:k + 2]
                changed = True
                break
            if word[k] > word[k + 1]:
                word[k], word[k + 1] = word[k + 1], word[k]
                sign = -sign
                changed = True
                break
    return sign, tuple(word)


def mask_to_word(mask: int) -> tuple:
    return tuple(j + 1 for j in range(4) if mask >> j & 1)


def word_to_mask(word) -> int:
    return sum(1 << (j - 1) for j in word)
