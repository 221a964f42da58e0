"""Supersymmetric apparatus built from four real phase-space functions.

Given ``(W1, W2, P1, P2)`` the supercharges are nilpotent under the
Moyal-Clifford product exactly when ``C1 = (W1 + i P1)/sqrt2`` and
``C2 = (W2 + i P2)/sqrt2`` Moyal-commute. :func:`build_system` refuses inputs
that fail this. For valid inputs :class:`SusySystem` derives everything
else lazily, from the supercharges down to the constants of motion, and the
``verify_*`` functions re-derive each identity exactly and report residuals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .clifford import CliffordElement, witt_basis
from .errors import ConditionViolated, InternalMismatch
from .field import ONE, SQRT2, I
from .mc import (
    MCElement,
    blade_mc_mul,
    dagger,
    from_blades,
    mc_anticommutator,
    mc_commutator,
    mc_mul,
    sigma,
    sigma_minus,
    sigma_plus,
)
from .star import (
    PhaseSpaceFunction,
    classical_limit,
    leading_order,
    moyal_bracket,
    moyal_star,
    poisson_bracket,
)

__all__ = [
    "Check",
    "Report",
    "SusySystem",
    "build_hamiltonians",
    "build_intertwiners",
    "build_jc_ladder",
    "build_supercharges",
    "build_system",
    "check_conditions",
    "factorization_check",
    "full_report",
    "supercharge_square",
    "verify_classical_limits",
    "verify_closure",
    "verify_constants",
    "verify_intertwining",
]

PSF = PhaseSpaceFunction


@dataclass(frozen=True)
class Check:
    """One exact identity: ``residual`` is zero iff the identity holds."""

    label: str
    residual: object
    description: str = ""

    @property
    def passed(self) -> bool:
        return not self.residual

    def to_json(self) -> dict:
        res = self.residual
        return {
            "condition": self.label,
            "description": self.description,
            "residual": res.to_json() if hasattr(res, "to_json") else str(res),
            "residual_text": "0" if self.passed else str(res),
            "pass": self.passed,
        }


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, label, residual, description=""):
        self.checks.append(Check(label, residual, description))
        return self

    def extend(self, other: Report):
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, label) -> Check:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": len(self.failures),
            "checks": [c.to_json() for c in self.checks],
        }


def _real_check(name, F):
    if F.envelope:
        raise ValueError(f"{name} must be a polynomial")
    if F != F.conjugate():
        raise ValueError(f"{name} must be real-valued")


def check_conditions(W1, W2, P1, P2) -> Report:
    """Residuals of the nilpotency conditions on the four input functions."""
    for name, F in zip(("W1", "W2", "P1", "P2"), (W1, W2, P1, P2)):
        _real_check(name, F)
    C1 = (W1 + I * P1) / SQRT2
    C2 = (W2 + I * P2) / SQRT2
    rep = Report()
    rep.add("eq15", moyal_bracket(C1, C2), "[C1, C2]_M = 0")
    rep.add("eq17", moyal_bracket(W1, W2) - moyal_bracket(P1, P2), "[W1, W2]_M - [P1, P2]_M = 0")
    rep.add("eq18", moyal_bracket(W1, P2) - moyal_bracket(W2, P1), "[W1, P2]_M - [W2, P1]_M = 0")
    return rep


def _mode_of(*fs) -> bool:
    formal = {F.formal for F in fs if not F.is_constant}
    if len(formal) > 1:
        raise ValueError("inputs mix formal-hbar and hbar = 1 modes")
    return formal.pop() if formal else False


class SusySystem:
    """All derived objects for a valid quadruple ``(W1, W2, P1, P2)``.

    Construct with :func:`build_system`. Attributes are computed lazily and
    cached; the object is otherwise immutable.
    """

    def __init__(self, W1, W2, P1, P2, conditions: Report):
        formal = _mode_of(W1, W2, P1, P2)
        self.W1, self.W2, self.P1, self.P2 = (F._with_mode(formal) for F in (W1, W2, P1, P2))
        self.formal = formal
        self.conditions = conditions

    # -- scalar building blocks -------------------------------------------
    @cached_property
    def C1(self) -> PSF:
        return (self.W1 + I * self.P1) / SQRT2

    @cached_property
    def C2(self) -> PSF:
        return (self.W2 + I * self.P2) / SQRT2

    @cached_property
    def brackets(self) -> dict:
        """The Moyal brackets that build the fermionic parts."""
        W1, W2, P1, P2 = self.W1, self.W2, self.P1, self.P2
        return {
            "W1P1": moyal_bracket(W1, P1),
            "W2P2": moyal_bracket(W2, P2),
            "W2P1": moyal_bracket(W2, P1),
            "W1W2": moyal_bracket(W1, W2),
            "W1P2": moyal_bracket(W1, P2),
            "P1P2": moyal_bracket(P1, P2),
        }

    @cached_property
    def B_plus(self) -> PSF:
        return self.brackets["W1P1"] + self.brackets["W2P2"]

    @cached_property
    def B_minus(self) -> PSF:
        return self.brackets["W1P1"] - self.brackets["W2P2"]

    @cached_property
    def H_star(self) -> PSF:
        """Bosonic part ``(P1*P1 + P2*P2 + W1*W1 + W2*W2) / 2``."""
        total = sum((moyal_star(F, F) for F in (self.P1, self.P2, self.W1, self.W2)), PSF.constant(0))
        return total / 2

    # -- supercharges -----------------------------------------------------
    @cached_property
    def q_plus_blades(self) -> CliffordElement:
        _f, _g, f_check, g_check = witt_basis()
        return f_check * self.C1 + g_check * self.C2

    @cached_property
    def q_minus_blades(self) -> CliffordElement:
        f, g, _f_check, _g_check = witt_basis()
        return f * self.C1.conjugate() + g * self.C2.conjugate()

    @cached_property
    def q_plus(self) -> MCElement:
        return from_blades(self.q_plus_blades)

    @cached_property
    def q_minus(self) -> MCElement:
        return from_blades(self.q_minus_blades)

    @cached_property
    def omega1(self) -> MCElement:
        return self.q_plus + self.q_minus

    @cached_property
    def omega2(self) -> MCElement:
        return (self.q_plus - self.q_minus) * (-I)

    # -- Hamiltonians -----------------------------------------------------
    @cached_property
    def Hs_blades(self) -> CliffordElement:
        """``{q+, q-}_MC / 2`` computed in blade form."""
        x, y = self.q_plus_blades, self.q_minus_blades
        return (blade_mc_mul(x, y) + blade_mc_mul(y, x)) / 2

    @cached_property
    def Hs_closed_form(self) -> CliffordElement:
        """Closed form: bosonic 0-form plus bracket-weighted 2-forms."""
        b = self.brackets
        half = ONE / 2
        return CliffordElement({
            0b0000: self.H_star,
            0b0101: b["W1P1"] * half,   # e13
            0b1010: b["W2P2"] * half,   # e24
            0b1001: b["W2P1"] * half,   # e14
            0b0110: b["W2P1"] * half,   # e23
            0b0011: b["W1W2"] * half,   # e12
            0b1100: b["W1W2"] * half,   # e34
        })

    @cached_property
    def Hs(self) -> MCElement:
        """SUSY Hamiltonian as a 4x4 matrix, cross-checked three ways."""
        direct = mc_anticommutator(self.q_plus, self.q_minus) / 2
        if direct != from_blades(self.Hs_blades):
            raise InternalMismatch("blade and matrix forms of H_s disagree")
        if direct != from_blades(self.Hs_closed_form):
            raise InternalMismatch("H_s disagrees with its closed form")
        return direct

    @cached_property
    def H1F(self) -> MCElement:
        return sigma(3) * (self.B_plus * (I / 2))

    @cached_property
    def H2F(self) -> MCElement:
        b = self.brackets
        return (
            sigma(3) * (self.B_minus * (I / 2))
            - sigma(1) * (b["W2P1"] * I)
            - sigma(2) * (b["W1W2"] * I)
        )

    @cached_property
    def H1(self) -> MCElement:
        return MCElement.scalar(self.H_star) + self.H1F

    @cached_property
    def H2(self) -> MCElement:
        return MCElement.scalar(self.H_star) + self.H2F

    # -- intertwiners and constants of motion ------------------------------
    @cached_property
    def L1(self) -> MCElement:
        z = PSF.constant(0)
        return MCElement([[z, z], [self.C1, -self.C2]]) * (2 * I)

    @cached_property
    def L2(self) -> MCElement:
        z = PSF.constant(0)
        return MCElement([[self.C2, z], [self.C1, z]]) * (2 * I)

    @cached_property
    def R1(self) -> MCElement:
        return mc_mul(self.L1, dagger(self.L1))

    @cached_property
    def S2(self) -> MCElement:
        return mc_mul(dagger(self.L2), self.L2)

    @cached_property
    def R2(self) -> MCElement:
        return mc_mul(self.L2, dagger(self.L2))

    @cached_property
    def S1(self) -> MCElement:
        return mc_mul(dagger(self.L1), self.L1)

    # -- JC ladder --------------------------------------------------------
    @cached_property
    def A(self) -> PSF:
        """``[W2, conj(C1)]_M``: lowering function when canonical."""
        return moyal_bracket(self.W2, self.C1.conjugate())

    @cached_property
    def A_bar(self) -> PSF:
        return -moyal_bracket(self.W2, self.C1)

    @property
    def is_canonical_ladder(self) -> bool:
        """True when ``[A, conj(A)]_M`` is the constant 1 (hbar = 1 mode)."""
        if self.formal:
            return False
        return bool(self.A) and moyal_bracket(self.A, self.A_bar) == 1

    def H_JC(self) -> MCElement:
        """``sqrt2 (A sigma_+ + conj(A) sigma_-)``."""
        return (sigma_plus() * self.A + sigma_minus() * self.A_bar) * SQRT2

    def jc_ladder(self):
        """``(A, A_bar, H_JC, is_canonical)``."""
        return self.A, self.A_bar, self.H_JC(), self.is_canonical_ladder


def build_system(W1, W2, P1, P2) -> SusySystem:
    """Validate the inputs and return the SUSY system; fail fast otherwise."""
    rep = check_conditions(W1, W2, P1, P2)
    if not rep.passed:
        names = ", ".join(c.label for c in rep.failures)
        raise ConditionViolated(f"supercharges are not nilpotent ({names} violated)", rep)
    return SusySystem(W1, W2, P1, P2, rep)


def build_supercharges(sys: SusySystem):
    """``(q_plus, q_minus)`` as 4x4 elements."""
    return sys.q_plus, sys.q_minus


def build_hamiltonians(sys: SusySystem):
    """``(Hs, H_star, H1, H2, H1F, H2F)``."""
    return sys.Hs, sys.H_star, sys.H1, sys.H2, sys.H1F, sys.H2F


def build_intertwiners(sys: SusySystem):
    return sys.L1, sys.L2


def build_jc_ladder(sys: SusySystem):
    """``(A, A_bar, H_JC, is_canonical)`` with ``A = [W2, conj(C1)]_M``."""
    return sys.jc_ladder()


def supercharge_square(W1, W2, P1, P2):
    """Diagnostic for any quadruple: ``q_plus *MC q_plus`` and its predicted value.

    Without the nilpotency conditions the square is ``[C1, C2]_M f_check g_check``;
    both sides are returned in blade form.
    """
    _, _, f_check, g_check = witt_basis()
    C1 = (W1 + I * P1) / SQRT2
    C2 = (W2 + I * P2) / SQRT2
    qp = f_check * C1 + g_check * C2
    predicted = (f_check * g_check).map(lambda c: moyal_bracket(C1, C2) * c)
    return blade_mc_mul(qp, qp), predicted


# -- verification suites --------------------------------------------------------
def _block_diag(X: MCElement):
    return X.block(0, 1), X.block(1, 0)


def verify_closure(sys: SusySystem) -> Report:
    """SUSY algebra, matrix realization and Hermiticity."""
    rep = Report()
    qp, qm, Hs = sys.q_plus, sys.q_minus, sys.Hs
    rep.add("eq10_plus", mc_mul(qp, qp), "q+ *MC q+ = 0")
    rep.add("eq10_minus", mc_mul(qm, qm), "q- *MC q- = 0")
    _f, _g, f_check, g_check = witt_basis()
    rep.add(
        "eq10_plus_blades",
        blade_mc_mul(sys.q_plus_blades, sys.q_plus_blades)
        - (f_check * g_check).map(lambda c: moyal_bracket(sys.C1, sys.C2) * c),
        "q+ *MC q+ = [C1, C2]_M f_check g_check",
    )
    rep.add("eq19", Hs - mc_anticommutator(qp, qm) / 2, "H_s = {q+, q-}_MC / 2")
    rep.add("eq22", Hs - from_blades(sys.Hs_closed_form), "closed form of H_s")
    rep.add("eq20_plus", mc_commutator(qp, Hs), "[q+, H_s]_MC = 0")
    rep.add("eq20_minus", mc_commutator(qm, Hs), "[q-, H_s]_MC = 0")
    w1, w2 = sys.omega1, sys.omega2
    rep.add("eq21_omega1", Hs - mc_mul(w1, w1) / 2, "H_s = omega1 *MC omega1 / 2")
    rep.add("eq21_omega2", Hs - mc_mul(w2, w2) / 2, "H_s = omega2 *MC omega2 / 2")
    rep.add("eq21_anticommutator", mc_anticommutator(w1, w2), "{omega1, omega2}_MC = 0")
    off1, off2 = _block_diag(Hs)
    rep.add("eq25_offdiag_upper", off1, "H_s is block diagonal")
    rep.add("eq25_offdiag_lower", off2, "H_s is block diagonal")
    rep.add("eq26_H1", Hs.block(0, 0) - sys.H1, "upper block of H_s = H1")
    rep.add("eq26_H2", Hs.block(1, 1) - sys.H2, "lower block of H_s = H2")
    H1 = sys.H1
    rep.add("eq27_diagonal", MCElement([[0, H1[0, 1]], [H1[1, 0], 0]]), "H1 is diagonal")
    z = MCElement.scalar(0)
    rep.add("eq31_qplus", qp - MCElement.from_blocks(z, sys.L1, -sys.L2, z) / SQRT2,
            "q+ = [[0, L1], [-L2, 0]] / sqrt2")
    rep.add("eq31_dagger", qp - dagger(qm), "q+ = q-^dagger")
    rep.add("herm_Hs", Hs - dagger(Hs), "H_s Hermitian")
    rep.add("herm_H1", sys.H1 - dagger(sys.H1), "H1 Hermitian")
    rep.add("herm_H2", sys.H2 - dagger(sys.H2), "H2 Hermitian")
    rep.add("herm_omega1", w1 - dagger(w1), "omega1 Hermitian")
    rep.add("herm_omega2", w2 - dagger(w2), "omega2 Hermitian")
    rep.add("real_Hstar", sys.H_star - sys.H_star.conjugate(), "H_* real-valued")
    rep.add("eq43", sys.H2F - (sigma(3) * (sys.B_minus * (I / 2)) + sys.H_JC()),
            "H2F = (i/2) B- sigma3 + sqrt2 (A sigma+ + conj(A) sigma-)")
    return rep


def verify_intertwining(sys: SusySystem) -> Report:
    rep = Report()
    L1, L2, H1, H2 = sys.L1, sys.L2, sys.H1, sys.H2
    L1d, L2d = dagger(L1), dagger(L2)
    rep.add("eq32_L1L2", mc_mul(L1, L2), "L1 *MC L2 = 0")
    rep.add("eq32_L2L1", mc_mul(L2, L1), "L2 *MC L1 = 0")
    rep.add("eq33", mc_mul(L2, H1) - mc_mul(H2, L2), "L2 H1 = H2 L2")
    rep.add("eq34", mc_mul(L1, H2) - mc_mul(H1, L1), "L1 H2 = H1 L1")
    rep.add("eq35", mc_mul(L2d, H2) - mc_mul(H1, L2d), "L2^+ H2 = H1 L2^+")
    rep.add("eq36", mc_mul(L1d, H1) - mc_mul(H2, L1d), "L1^+ H1 = H2 L1^+")
    return rep


def factorization_check(sys: SusySystem) -> Report:
    rep = Report()
    L1, L2 = sys.L1, sys.L2
    L1d, L2d = dagger(L1), dagger(L2)
    rep.add("eq37", sys.H1 * 4 - (mc_mul(L1, L1d) + mc_mul(L2d, L2)), "4 H1 = L1 L1^+ + L2^+ L2")
    rep.add("eq38", sys.H2 * 4 - (mc_mul(L1d, L1) + mc_mul(L2, L2d)), "4 H2 = L1^+ L1 + L2 L2^+")
    return rep


def constants_of_motion(sys: SusySystem):
    """``(R1, R2, S1, S2)``."""
    return sys.R1, sys.R2, sys.S1, sys.S2


def verify_constants(sys: SusySystem) -> Report:
    rep = Report()
    rep.add("eq41_R1", mc_commutator(sys.R1, sys.H1), "[R1, H1]_MC = 0")
    rep.add("eq41_S2", mc_commutator(sys.S2, sys.H1), "[S2, H1]_MC = 0")
    rep.add("eq42_R2", mc_commutator(sys.R2, sys.H2), "[R2, H2]_MC = 0")
    rep.add("eq42_S1", mc_commutator(sys.S1, sys.H2), "[S1, H2]_MC = 0")
    rep.add("sum_H1", sys.H1 * 4 - (sys.R1 + sys.S2), "4 H1 = R1 + S2")
    rep.add("sum_H2", sys.H2 * 4 - (sys.R2 + sys.S1), "4 H2 = R2 + S1")
    return rep


def verify_classical_limits(sys: SusySystem) -> Report:
    """Formal-hbar limits: bosonic part and the fermionic bracket coefficients."""
    if not sys.formal:
        raise ValueError("classical limits need a formal-hbar system")
    rep = Report()
    W1, W2, P1, P2 = sys.W1, sys.W2, sys.P1, sys.P2
    H_classical = (W1 * W1 + W2 * W2 + P1 * P1 + P2 * P2) / 2
    rep.add("limit_Hstar", classical_limit(sys.H_star) - H_classical, "lim H_* = H")
    pairs = {
        "W1P1": (W1, P1), "W2P2": (W2, P2), "W2P1": (W2, P1),
        "W1W2": (W1, W2), "W1P2": (W1, P2), "P1P2": (P1, P2),
    }
    for name, (F, G) in pairs.items():
        rep.add(f"limit_{name}", leading_order(sys.brackets[name]) - poisson_bracket(F, G),
                f"[{name[:2]}, {name[2:]}]_M / (i hbar) -> Poisson bracket")
    rep.add("limit_Bplus", leading_order(sys.B_plus)
            - (poisson_bracket(W1, P1) + poisson_bracket(W2, P2)), "B+ / (i hbar) -> PB")
    rep.add("limit_Bminus", leading_order(sys.B_minus)
            - (poisson_bracket(W1, P1) - poisson_bracket(W2, P2)), "B- / (i hbar) -> PB")
    return rep


def full_report(sys: SusySystem) -> Report:
    rep = Report().extend(sys.conditions)
    rep.extend(verify_closure(sys))
    rep.extend(verify_intertwining(sys))
    rep.extend(factorization_check(sys))
    rep.extend(verify_constants(sys))
    return rep
