"""Random polynomials and random quadruples that satisfy the nilpotency conditions.

Valid quadruples come from two families, each pushed through a random
linear symplectic map (which preserves every Moyal bracket):

* ``"completion"``: the example skeletons ``W1 = p2, P1 = q2`` (or
  ``W1 = p1, P1 = -q1``) with ``W2 = q1 p2 - q2 p1`` and
  ``P2 = p1 p2 + q1 q2 + K`` for a random real ``K`` of the allowed mode;
* ``"separable"``: ``W1, P1`` random real polynomials of ``(q1, p1)`` and
  ``W2, P2`` of ``(q2, p2)``, so ``C1`` and ``C2`` Moyal-commute trivially.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .field import Number
from .star import VARIABLES, PhaseSpaceFunction, compose, variables

__all__ = [
    "random_invalid_quadruple",
    "random_polynomial",
    "random_symplectic_map",
    "random_valid_quadruple",
]

PSF = PhaseSpaceFunction


def _coefficient(rng: random.Random, real: bool, max_num: int) -> Number:
    def rat():
        return Fraction(rng.randint(-max_num, max_num), rng.randint(1, 3))

    return Number(rat(), 0 if real else rat())


def random_polynomial(
    rng: random.Random,
    *,
    max_degree: int = 2,
    n_terms: int = 3,
    variables_used=VARIABLES,
    real: bool = False,
    formal: bool = False,
    max_coeff: int = 3,
    per_variable: bool = False,
) -> PhaseSpaceFunction:
    """Random polynomial of ``n_terms`` monomials.

    ``max_degree`` bounds the total degree of each monomial, or the exponent
    of each variable separately when ``per_variable`` is set.
    """
    idx = [VARIABLES.index(v) for v in variables_used]
    terms: dict = {}
    for _ in range(n_terms):
        exps = [0, 0, 0, 0]
        if per_variable:
            for k in idx:
                exps[k] = rng.randint(0, max_degree)
        else:
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.choice(idx)] += 1
        key = tuple(exps) + (0,)
        terms[key] = terms.get(key, 0) + _coefficient(rng, real, max_coeff)
    return PSF(terms, formal=formal)


def random_symplectic_map(rng: random.Random, *, formal: bool = False, steps: int = 3) -> dict:
    """Images of ``q1, q2, p1, p2`` under a product of random linear symplectic moves.

    Moves: shears ``q_i += a p_i`` or ``p_i += a q_i``, and the point
    transformation ``q -> M q, p -> M^-T p`` with ``M`` a unimodular shear.
    """
    q1, q2, p1, p2 = variables(formal=formal)
    base = {"q1": q1, "q2": q2, "p1": p1, "p2": p2}
    images = dict(base)

    def apply(move):
        return {k: compose(v, move) for k, v in images.items()}

    for _ in range(steps):
        a = rng.choice([-2, -1, 1, 2])
        kind = rng.randrange(4)
        i = rng.choice("12")
        if kind == 0:
            move = {f"q{i}": base[f"q{i}"] + base[f"p{i}"] * a}
        elif kind == 1:
            move = {f"p{i}": base[f"p{i}"] + base[f"q{i}"] * a}
        elif kind == 2:
            # M = [[1, a], [0, 1]]: q1 -> q1 + a q2, p2 -> p2 - a p1
            move = {"q1": q1 + q2 * a, "p2": p2 - p1 * a}
        else:
            move = {"q2": q2 + q1 * a, "p1": p1 - p2 * a}
        images = apply(move)
    return images


def _transform(quad, images):
    return tuple(compose(F, images) for F in quad)


def random_valid_quadruple(
    rng: random.Random,
    *,
    family: str | None = None,
    formal: bool = False,
    max_degree: int = 2,
    mix: bool = True,
):
    """Random real ``(W1, W2, P1, P2)`` satisfying the nilpotency conditions."""
    family = family or rng.choice(["completion", "separable"])
    q1, q2, p1, p2 = variables(formal=formal)
    if family == "completion":
        which = rng.choice([1, 2])
        allowed = ("q1", "p1") if which == 1 else ("q2", "p2")
        K = random_polynomial(rng, max_degree=max_degree, n_terms=2, variables_used=allowed, real=True, formal=formal)
        W2 = q1 * p2 - q2 * p1
        P2 = p1 * p2 + q1 * q2 + K
        W1, P1 = (p2, q2) if which == 1 else (p1, -q1)
        quad = (W1, W2, P1, P2)
    elif family == "separable":
        def poly(vs):
            return random_polynomial(rng, max_degree=max_degree, n_terms=2, variables_used=vs, real=True, formal=formal)

        quad = (poly(("q1", "p1")), poly(("q2", "p2")), poly(("q1", "p1")), poly(("q2", "p2")))
    else:
        raise ValueError(f"unknown family {family!r}")
    if mix:
        quad = _transform(quad, random_symplectic_map(rng, formal=formal))
    return quad


def random_invalid_quadruple(rng: random.Random, *, formal: bool = False, max_degree: int = 2):
    """Random real quadruple; usually violates the conditions (callers must check)."""
    def poly():
        return random_polynomial(rng, max_degree=max_degree, n_terms=2, real=True, formal=formal)

    return poly(), poly(), poly(), poly()
