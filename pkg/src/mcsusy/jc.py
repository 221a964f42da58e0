"""Jaynes-Cummings instances of the SUSY construction.

Two input families are provided:

* ``which=1``: ``W1 = p2, P1 = q2, W2 = q1 p2 - q2 p1, P2 = p1 p2 + q1 q2 + K(q1, p1)``
* ``which=2``: ``W1 = p1, P1 = -q1``, same ``W2`` and ``P2`` with ``K(q2, p2)``

with mode functions ``A = -(q1 + i p1)/sqrt2`` and ``B = -(q2 + i p2)/sqrt2``.

Wigner states
-------------
``wigner_function(nA, nB, bra=(rA, rB))`` is the phase-space representative
of ``|nA, nB><rA, rB|``::

    conj(A)^nA * conj(B)^nB * W0 * A^rA * B^rB / sqrt(nA! rA! nB! rB!)

With the default ``bra=None`` the bra equals the ket and the result is the
real diagonal Wigner function. Left star multiplication only touches the ket
labels, so the ladder relations ``A * W = sqrt(nA) W[nA-1]`` hold exactly with
the bra held fixed. Star-eigenspinors of the partner Hamiltonians are built
from functions sharing one bra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property

from .errors import BadKArgument, IndexOutOfRange, UnsupportedK
from .field import ONE, SQRT2, I, Number
from .mc import (
    MCElement,
    Spinor,
    apply,
    dagger,
    is_star_eigen,
    mc_commutator,
    mc_mul,
    sigma,
    sigma_minus,
    sigma_plus,
)
from .star import (
    PhaseSpaceFunction,
    anti_moyal_bracket,
    integrate,
    moyal_bracket,
    moyal_star,
    variables,
)
from .susy import Report, SusySystem, build_system

__all__ = [
    "JCSystem",
    "SpectrumRow",
    "WignerState",
    "dressed_norms",
    "dressed_spinors",
    "eigenvalue",
    "ladder_check",
    "laguerre_wigner",
    "make_example",
    "mode_functions",
    "orthogonality_integral",
    "spectrum",
    "vacuum_wigner",
    "verify_spectrum",
    "wigner_function",
    "wigner_state",
]

PSF = PhaseSpaceFunction


def mode_functions(formal=False):
    """``(A, conj(A), B, conj(B))``."""
    q1, q2, p1, p2 = variables(formal=formal)
    A = -(q1 + I * p1) / SQRT2
    B = -(q2 + I * p2) / SQRT2
    return A, A.conjugate(), B, B.conjugate()


_ALLOWED_K = {1: {"q1", "p1"}, 2: {"q2", "p2"}}


def _check_example(which):
    if which not in (1, 2):
        raise ValueError("example must be 1 or 2")


class JCSystem:
    """A Jaynes-Cummings example with its SUSY system and mode functions."""

    def __init__(self, which: int, K: PSF, base: SusySystem):
        self.which = which
        self.K = K
        self.base = base
        self.A, self.A_bar, self.B, self.B_bar = mode_functions(formal=base.formal)

    @property
    def K_is_zero(self) -> bool:
        return not self.K

    @cached_property
    def N_A(self) -> PSF:
        return moyal_star(self.A_bar, self.A)

    @cached_property
    def N_B(self) -> PSF:
        return moyal_star(self.B_bar, self.B)

    @cached_property
    def H_A(self) -> PSF:
        return (self.N_A * 2 + 1) / 2

    @cached_property
    def H_B(self) -> PSF:
        return (self.N_B * 2 + 1) / 2

    @cached_property
    def X(self) -> PSF:
        return moyal_bracket(self.base.W2, self.K) * (-I / 2)

    @cached_property
    def Y(self) -> PSF:
        mix = self.A * self.B_bar + self.A_bar * self.B
        return anti_moyal_bracket(mix, self.K) / 2 + moyal_star(self.K, self.K) / 2

    @cached_property
    def mode_energy(self) -> PSF:
        """Energy of the mode coupled to the atom (``H_A`` or ``H_B``)."""
        return self.H_A if self.which == 1 else self.H_B

    @cached_property
    def H_int(self) -> PSF:
        return self.base.H_star - self.mode_energy

    @cached_property
    def ladder(self) -> PSF:
        """Field function in the JC coupling: ``A`` (example 1), ``conj(B)`` (example 2)."""
        return self.A if self.which == 1 else self.B_bar

    def H_JC(self) -> MCElement:
        lad = self.ladder
        return (sigma_plus() * lad + sigma_minus() * lad.conjugate()) * SQRT2

    # -- closed forms ---------------------------------------------------------
    def closed_forms(self) -> dict:
        """The example's closed-form expressions, keyed by name."""
        s3, one = sigma(3), MCElement.scalar(1)
        NA, NB = self.N_A, self.N_B
        out = {}
        if self.which == 1:
            out["B_plus"] = (NB - NA + self.X) * (2 * I) - I
            out["B_minus"] = (NB - NA + self.X) * (-2 * I) - I
            out["H_star"] = self.H_A + NB * (NA + 1) * 2 + self.Y
            out["W2"] = (self.A_bar * self.B - self.A * self.B_bar) * (-I)
            out["P2"] = self.A * self.B_bar + self.A_bar * self.B + self.K
        else:
            out["B_plus"] = (NB - NA + self.X) * (2 * I) + I
            out["B_minus"] = (NB - NA + self.X) * (-2 * I) + I
            out["H_star"] = self.H_B + NA * (NB + 1) * 2 + self.Y
        out["H2F"] = s3 * (out["B_minus"] * (I / 2)) + self.H_JC()
        if self.K_is_zero:
            if self.which == 1:
                out["H_int"] = NB * (NA + 1) * 2
                out["H1"] = one * (self.H_int + self.H_A) + s3 * (self.H_A - NB)
                out["H2"] = one * (self.H_int + self.H_A) + s3 * (self.H_B - NA) + self.H_JC()
                out["C1"] = self.B_bar * (-I)
                out["C2"] = self.B_bar * self.A * (I * SQRT2)
                sp, sm = sigma_plus(), sigma_minus()
                ident = MCElement.scalar(1)
                out["L1"] = mc_mul(sm, ident + sp * (self.A * SQRT2)) * (self.B_bar * 2)
                out["L1_dagger"] = mc_mul(ident + sm * (self.A_bar * SQRT2), sp) * (self.B * 2)
                out["L2"] = mc_mul(ident - sp * (self.A * SQRT2), sm) * (self.B_bar * 2)
                out["L2_dagger"] = mc_mul(sp, ident - sm * (self.A_bar * SQRT2)) * (self.B * 2)
            else:
                out["H1"] = one * self.base.H_star - s3 * (self.H_B - NA)
                out["H2"] = one * self.base.H_star - s3 * (self.H_A - NB) + self.H_JC()
        return out

    def verify_structure(self) -> Report:
        """Ladder algebra and every closed form against the generic construction."""
        rep = Report()
        A, Ab, B, Bb = self.A, self.A_bar, self.B, self.B_bar
        rep.add("eq48_canonical", moyal_bracket(A, Ab) - 1, "[A, conj A]_M = 1")
        rep.add("eq49_canonical", moyal_bracket(B, Bb) - 1, "[B, conj B]_M = 1")
        rep.add("eq49_AB", moyal_bracket(A, B), "[A, B]_M = 0")
        rep.add("eq49_ABbar", moyal_bracket(A, Bb), "[A, conj B]_M = 0")
        rep.add("eq51_NA", self.N_A - (Ab * A - Number(1) / 2), "N_A = conj(A) A - 1/2")
        rep.add("eq51_NB", self.N_B - (Bb * B - Number(1) / 2), "N_B = conj(B) B - 1/2")
        rep.add("eq44_ladder", self.base.A - self.ladder, "[W2, conj C1]_M is the coupled ladder function")
        base = self.base
        forms = self.closed_forms()
        generic = {
            "B_plus": base.B_plus, "B_minus": base.B_minus, "H_star": base.H_star,
            "W2": base.W2, "P2": base.P2, "H2F": base.H2F, "H_int": self.H_int,
            "H1": base.H1, "H2": base.H2, "C1": base.C1, "C2": base.C2,
            "L1": base.L1, "L2": base.L2,
            "L1_dagger": dagger(base.L1), "L2_dagger": dagger(base.L2),
        }
        labels = {
            "B_plus": "eq52_Bplus", "B_minus": "eq52_Bminus", "H_star": "eq52_Hstar",
            "W2": "eq50_W2", "P2": "eq50_P2", "H2F": "eq52_H2F", "H_int": "H_int",
            "H1": "eq55", "H2": "eq56", "C1": "C1_form", "C2": "C2_form",
            "L1": "eq62_L1", "L1_dagger": "eq62_L1dagger", "L2": "eq63_L2", "L2_dagger": "eq63_L2dagger",
        }
        for name, value in forms.items():
            rep.add(labels[name], generic[name] - value, f"closed form of {name}")
        return rep

    # -- constants of motion ----------------------------------------------------
    def jc_constants(self):
        """Closed forms ``(R1, S1)`` for example 1 with ``K = 0``."""
        if self.which != 1 or not self.K_is_zero:
            raise UnsupportedK("closed-form constants exist for example 1 with K = 0")
        sp, sm = sigma_plus(), sigma_minus()
        NB = self.N_B
        R1 = mc_mul(sm, sp) * (NB * (self.H_A + 1) * 8)
        inner = mc_mul(sp, sm) + mc_mul(sm, sp) * (self.N_A * 2) + self.H_JC()
        S1 = inner * ((NB + 1) * 4)
        return R1, S1

    def verify_constants(self) -> Report:
        R1, S1 = self.jc_constants()
        base = self.base
        s3, one = sigma(3), MCElement.scalar(1)
        rep = Report()
        rep.add("eq68", base.R1 - R1, "R1 = 8 N_B (H_A + 1) sigma- sigma+")
        rep.add("eq69", base.S1 - S1, "S1 = 4 (N_B + 1) [sigma+ sigma- + 2 N_A sigma- sigma+ + H_JC]")
        rep.add("eq69_R1H1", mc_commutator(R1, base.H1), "[R1, H1]_MC = 0")
        rep.add("eq69_S1H2", mc_commutator(S1, base.H2), "[S1, H2]_MC = 0")
        rep.add("S2_form", base.S2 - mc_mul(base.H1, one + s3) * 2, "S2 = 2 H1 (1 + sigma3)")
        rep.add("R1_form", base.R1 - mc_mul(base.H1, one - s3) * 2, "R1 = 2 H1 (1 - sigma3)")
        sp, sm = sigma_plus(), sigma_minus()
        rep.add("eq61_plus", mc_mul(sp, sm) * 2 - (one + s3), "2 sigma+ sigma- = 1 + sigma3")
        rep.add("eq61_minus", mc_mul(sm, sp) * 2 - (one - s3), "2 sigma- sigma+ = 1 - sigma3")
        return rep

    # -- states -------------------------------------------------------------------
    def dressed_spinors(self, nA: int, nB: int, bra=None):
        return dressed_spinors(nA, nB, bra=bra)


def make_example(which: int = 1, K=None, formal: bool = False) -> JCSystem:
    """Build example 1 or 2 with the optional real polynomial ``K``."""
    _check_example(which)
    q1, q2, p1, p2 = variables(formal=formal)
    if K is None:
        K = PSF.constant(0, formal=formal)
    elif not isinstance(K, PSF):
        K = PSF.constant(K, formal=formal)
    extra = K.variables_used() - _ALLOWED_K[which]
    if extra:
        raise BadKArgument(f"K for example {which} may depend on {sorted(_ALLOWED_K[which])} only, got {sorted(extra)}")
    if K.envelope or K != K.conjugate():
        raise BadKArgument("K must be a real polynomial")
    K = K._with_mode(formal) if K.is_constant else K
    W2 = q1 * p2 - q2 * p1
    P2 = p1 * p2 + q1 * q2 + K
    if which == 1:
        W1, P1 = p2, q2
    else:
        W1, P1 = p1, -q1
    return JCSystem(which, K, build_system(W1, W2, P1, P2))


# -- Wigner functions -----------------------------------------------------------------
def vacuum_wigner() -> PSF:
    """Normalised vacuum ``pi^-2 exp(-(q1^2 + q2^2 + p1^2 + p2^2))``."""
    return PSF._raw({(0, 0, 0, 0, 0): ONE}, envelope=True, pi_power=-2)


def _check_indices(*ns):
    for n in ns:
        if not isinstance(n, int) or n < 0:
            raise IndexOutOfRange(f"quantum numbers must be nonnegative integers, got {n!r}")


@cache
def _raised(nA: int, nB: int) -> PSF:
    # conj(A)^nA * conj(B)^nB * W0, unnormalised
    if nA == 0 and nB == 0:
        return vacuum_wigner()
    _A, Ab, _B, Bb = mode_functions()
    if nA > 0:
        return moyal_star(Ab, _raised(nA - 1, nB))
    return moyal_star(Bb, _raised(0, nB - 1))


@cache
def _unnormalised(nA, nB, rA, rB) -> PSF:
    if rA == 0 and rB == 0:
        return _raised(nA, nB)
    A, _Ab, B, _Bb = mode_functions()
    if rA > 0:
        return moyal_star(_unnormalised(nA, nB, rA - 1, rB), A)
    return moyal_star(_unnormalised(nA, nB, 0, rB - 1), B)


def wigner_function(nA: int, nB: int, bra=None) -> PSF:
    """Phase-space function of ``|nA, nB><bra|`` (diagonal when ``bra`` is None)."""
    rA, rB = (nA, nB) if bra is None else bra
    _check_indices(nA, nB, rA, rB)
    norm = math.factorial(nA) * math.factorial(nB) * math.factorial(rA) * math.factorial(rB)
    return _unnormalised(nA, nB, rA, rB) / Number.sqrt(norm)


def _laguerre_coefficients(n: int) -> list:
    return [Fraction((-1) ** k * math.comb(n, k), math.factorial(k)) for k in range(n + 1)]


def laguerre_wigner(nA: int, nB: int) -> PSF:
    """Closed form ``(-1)^(nA+nB) L_nA(4 A conj A) L_nB(4 B conj B) W0``.

    The per-quantum factor -1 is the ratio of the ladder construction to
    ``L_1(4 A conj A) W0`` at ``n = 1``; it is then applied for every ``n``.
    """
    _check_indices(nA, nB)
    A, Ab, B, Bb = mode_functions()
    xA, xB = A * Ab * 4, B * Bb * 4

    def lag(n, x):
        out, power = PSF.constant(0), PSF.constant(1)
        for c in _laguerre_coefficients(n):
            out = out + power * c
            power = power * x
        return out

    sign = -1 if (nA + nB) % 2 else 1
    return lag(nA, xA) * lag(nB, xB) * vacuum_wigner() * sign


@dataclass(frozen=True)
class WignerState:
    """``|j> (x) (z|nA, nB)`` with the optional bra of the field part."""

    j: int
    nA: int
    nB: int
    bra: tuple | None = None

    def __post_init__(self):
        if self.j not in (1, 2):
            raise IndexOutOfRange("atomic level must be 1 or 2")
        _check_indices(self.nA, self.nB)
        if self.bra is not None:
            _check_indices(*self.bra)

    @property
    def scalar(self) -> PSF:
        return wigner_function(self.nA, self.nB, self.bra)

    @property
    def value(self) -> Spinor:
        return Spinor.atomic(self.j, self.scalar)


def wigner_state(j: int, nA: int, nB: int, bra=None) -> WignerState:
    return WignerState(j, nA, nB, None if bra is None else tuple(bra))


def _state_or_zero(j, nA, nB, bra, coeff=ONE) -> Spinor:
    if nA < 0 or nB < 0 or not coeff:
        return Spinor(0, 0)
    return wigner_state(j, nA, nB, bra).value * coeff


def ladder_check(nA: int, nB: int, bra=None) -> Report:
    """Ladder and number relations on ``(z|nA, nB)`` with its bra held fixed."""
    _check_indices(nA, nB)
    bra = (nA, nB) if bra is None else tuple(bra)
    A, Ab, B, Bb = mode_functions()
    W = wigner_function(nA, nB, bra)

    def w(a, b):
        return wigner_function(a, b, bra) if a >= 0 and b >= 0 else PSF.constant(0)

    NA, NB = moyal_star(Ab, A), moyal_star(Bb, B)
    rep = Report()
    tag = f"({nA},{nB}|{bra[0]},{bra[1]})"
    rep.add(f"eq59_lower_A{tag}", moyal_star(A, W) - w(nA - 1, nB) * Number.sqrt(nA), "A * W = sqrt(nA) W[nA-1]")
    rep.add(f"eq59_raise_A{tag}", moyal_star(Ab, W) - w(nA + 1, nB) * Number.sqrt(nA + 1),
            "conj(A) * W = sqrt(nA+1) W[nA+1]")
    rep.add(f"eq59_number_A{tag}", moyal_star(NA, W) - W * nA, "N_A * W = nA W")
    rep.add(f"eq59_lower_B{tag}", moyal_star(B, W) - w(nA, nB - 1) * Number.sqrt(nB), "B * W = sqrt(nB) W[nB-1]")
    rep.add(f"eq59_raise_B{tag}", moyal_star(Bb, W) - w(nA, nB + 1) * Number.sqrt(nB + 1),
            "conj(B) * W = sqrt(nB+1) W[nB+1]")
    rep.add(f"eq59_number_B{tag}", moyal_star(NB, W) - W * nB, "N_B * W = nB W")
    return rep


def eigenvalue(which: int, j: int, nA: int, nB: int) -> Number:
    """Star-eigenvalue of ``H1`` on ``(z|j, nA, nB)`` for ``K = 0``.

    Example 2 follows from example 1 by ``(1, nA, nB) <-> (2, nB, nA)``.
    """
    _check_example(which)
    _check_indices(nA, nB)
    if j not in (1, 2):
        raise IndexOutOfRange("atomic level must be 1 or 2")
    if which == 2:
        return eigenvalue(1, 3 - j, nB, nA)
    if j == 1:
        return Number(nB * (2 * nA + 3))
    return Number((nB + 1) * (2 * nA + 1))


def dressed_spinors(nA: int, nB: int, bra=None):
    """Dressed eigenspinors ``(Phi, Psi)`` of example 1's ``H2``.

    ``Phi = sqrt(2 nA + 2) (z|1, nA+1, nB-1) + (z|2, nA, nB-1)`` (requires
    ``nB >= 1``; ``None`` otherwise) and
    ``Psi = (z|1, nA, nB+1) - sqrt(2 nA) (z|2, nA-1, nB+1)``. All components
    share one bra, by default ``(nA, nB)``, which makes them the images of the
    diagonal bare states under the intertwiners.
    """
    _check_indices(nA, nB)
    bra = (nA, nB) if bra is None else tuple(bra)
    phi = None
    if nB >= 1:
        phi = _state_or_zero(1, nA + 1, nB - 1, bra, Number.sqrt(2 * nA + 2)) + _state_or_zero(2, nA, nB - 1, bra)
    psi = _state_or_zero(1, nA, nB + 1, bra) - _state_or_zero(2, nA - 1, nB + 1, bra, Number.sqrt(2 * nA))
    return phi, psi


@dataclass(frozen=True)
class SpectrumRow:
    j: int
    nA: int
    nB: int
    eigenvalue: Number
    verified: bool
    partner: str | None = None  # "verified", "kernel" or "failed" when requested


def _partner_status(system: JCSystem, bare: Spinor, lam) -> str:
    base = system.base
    images = [apply(base.L2, bare), apply(dagger(base.L1), bare)]
    images = [x for x in images if x]
    if not images:
        return "kernel"
    return "verified" if all(is_star_eigen(base.H2, x, lam) for x in images) else "failed"


def spectrum(system: JCSystem, n_max: int, partners: bool = False) -> list:
    """Rows ``(j, nA, nB, lambda, verified)`` for the bare states of ``H1``.

    With ``partners`` each row also records whether the intertwined images
    are star-eigenspinors of ``H2`` with the same eigenvalue.
    """
    if not system.K_is_zero:
        raise UnsupportedK("closed-form spectra need K = 0")
    _check_indices(n_max)
    rows = []
    for j in (1, 2):
        for nA in range(n_max + 1):
            for nB in range(n_max + 1):
                lam = eigenvalue(system.which, j, nA, nB)
                bare = wigner_state(j, nA, nB).value
                ok = bool(is_star_eigen(system.base.H1, bare, lam))
                partner = _partner_status(system, bare, lam) if partners else None
                rows.append(SpectrumRow(j, nA, nB, lam, ok, partner))
    return rows


def verify_spectrum(which: int, n_max: int, system: JCSystem | None = None) -> Report:
    """Exact eigen-equations for the bare states and their partner images.

    Example 1 additionally checks the dressed states.
    """
    system = system or make_example(which)
    if not system.K_is_zero:
        raise UnsupportedK("closed-form spectra need K = 0")
    base = system.base
    H1, H2, L2, L1d = base.H1, base.H2, base.L2, dagger(base.L1)
    rep = Report()
    h1_values, h2_values = [], []
    for nA in range(n_max + 1):
        for nB in range(n_max + 1):
            for j in (1, 2):
                lam = eigenvalue(which, j, nA, nB)
                bare = wigner_state(j, nA, nB).value
                tag = f"[{j},{nA},{nB}]"
                rep.add(f"H1_eigen{tag}", is_star_eigen(H1, bare, lam).residual, f"H1 * (z|{j},{nA},{nB}) = {lam} (z|...)")
                images = {"L2": apply(L2, bare), "L1dagger": apply(L1d, bare)}
                partner_ok = []
                for name, img in images.items():
                    if img:
                        check = is_star_eigen(H2, img, lam)
                        partner_ok.append(check.holds)
                        rep.add(f"H2_partner_{name}{tag}", check.residual,
                                f"H2 * ({name} * (z|{j},{nA},{nB})) = {lam} (...)")
                if partner_ok:
                    h1_values.append(lam)
                    if all(partner_ok):
                        h2_values.append(lam)
                if which == 1:
                    _dressed_checks(rep, system, j, nA, nB, lam, images, tag)
    rep.add("isospectral", Number(0) if sorted(map(str, h1_values)) == sorted(map(str, h2_values)) else Number(1),
            "partner eigenvalues equal the non-kernel H1 eigenvalues")
    return rep


def _dressed_checks(rep, system, j, nA, nB, lam, images, tag):
    H2 = system.base.H2
    phi, psi = dressed_spinors(nA, nB)
    if j == 1:
        rep.add(f"kernel_L2{tag}", images["L2"], "L2 * (z|1,...) = 0")
        expected = phi * (2 * Number.sqrt(nB)) if phi is not None else Spinor(0, 0)
        rep.add(f"dressed_Phi_map{tag}", images["L1dagger"] - expected, "L1^+ * (z|1,nA,nB) = 2 sqrt(nB) Phi")
        if phi is not None:
            rep.add(f"eq66{tag}", is_star_eigen(H2, phi, lam).residual, "H2 * Phi = lambda1 Phi")
    else:
        rep.add(f"kernel_L1dagger{tag}", images["L1dagger"], "L1^+ * (z|2,...) = 0")
        rep.add(f"dressed_Psi_map{tag}", images["L2"] - psi * (2 * Number.sqrt(nB + 1)),
                "L2 * (z|2,nA,nB) = 2 sqrt(nB+1) Psi")
        rep.add(f"eq67{tag}", is_star_eigen(H2, psi, lam).residual, "H2 * Psi = lambda2 Psi")


def orthogonality_integral(n, m) -> object:
    """``integral W_n W_m`` for diagonal two-mode states ``n = (nA, nB)``."""
    return integrate(wigner_function(*n), wigner_function(*m))


def dressed_norms(n_max: int) -> list:
    """``(nA, nB, integral Phi^+ Phi, integral Psi^+ Psi)`` for example 1 dressed states."""
    rows = []
    for nA in range(n_max + 1):
        for nB in range(n_max + 1):
            phi, psi = dressed_spinors(nA, nB)
            rows.append((nA, nB, None if phi is None else phi.norm_integral(), psi.norm_integral()))
    return rows
