import pytest
from conftest import polynomials
from hypothesis import given
from hypothesis import strategies as st

from mcsusy.clifford import CliffordElement, generator
from mcsusy.field import ExactScalar, I, Number
from mcsusy.jc import vacuum_wigner, wigner_function
from mcsusy.mc import (
    MCElement,
    Spinor,
    apply,
    blade_mc_mul,
    dagger,
    from_blades,
    identity,
    is_star_eigen,
    mc_commutator,
    mc_mul,
    sigma,
    sigma_minus,
    sigma_plus,
    to_blades,
)
from mcsusy.star import PhaseSpaceFunction as PSF
from mcsusy.star import variables

q1, q2, p1, p2 = variables()
small = polynomials(max_terms=2, max_degree=2)


@st.composite
def matrices(draw):
    return MCElement([[draw(small) for _ in range(2)] for _ in range(2)])


@st.composite
def blade_elements(draw):
    masks = draw(st.lists(st.integers(0, 15), min_size=1, max_size=3, unique=True))
    return CliffordElement({m: draw(small) for m in masks})


@given(matrices(), matrices(), matrices())
def test_mc_product_is_associative(X, Y, Z):
    assert mc_mul(mc_mul(X, Y), Z) == mc_mul(X, mc_mul(Y, Z))


@given(matrices(), matrices())
def test_dagger_reverses_products(X, Y):
    assert dagger(mc_mul(X, Y)) == mc_mul(dagger(Y), dagger(X))
    assert dagger(dagger(X)) == X


@given(blade_elements(), blade_elements())
def test_blade_form_is_a_representation(x, y):
    assert from_blades(blade_mc_mul(x, y)) == mc_mul(from_blades(x), from_blades(y))
    assert to_blades(from_blades(x)) == x.map(lambda c: c if isinstance(c, PSF) else PSF.constant(c))


def test_function_coefficients_do_not_commute():
    x = CliffordElement({1: q1})
    y = CliffordElement({1: p1})
    assert blade_mc_mul(x, y) - blade_mc_mul(y, x) == CliffordElement({0: PSF.constant(I)})
    e1 = from_blades(generator(1))
    assert not mc_commutator(e1, e1)


def test_pauli_ladder_constants():
    sp_, sm = sigma_plus(), sigma_minus()
    assert mc_mul(sp_, sm) - mc_mul(sm, sp_) == sigma(3)
    assert mc_mul(sp_, sm) + mc_mul(sm, sp_) == identity()
    assert mc_mul(sigma(1), sigma(1)) == sigma(0)


def test_spinor_convention():
    W0 = vacuum_wigner()
    up, down = Spinor.atomic(2, W0), Spinor.atomic(1, W0)
    assert is_star_eigen(sigma(3), up, 1)
    assert is_star_eigen(sigma(3), down, -1)
    assert apply(sigma_plus(), down) == up
    assert not apply(sigma_plus(), up)
    with pytest.raises(ValueError):
        Spinor.atomic(3, W0)


def test_eigen_check_reports_residual():
    psi = Spinor.atomic(2, wigner_function(1, 0))
    NA = (q1 * q1 + p1 * p1 - 1) / 2
    T = MCElement.scalar(NA)
    assert is_star_eigen(T, psi, 1)
    check = is_star_eigen(T, psi, 2)
    assert not check and check.residual == -psi
    assert not is_star_eigen(T, Spinor(PSF.constant(0), PSF.constant(0)), 0)


def test_spinor_integrals():
    psi = Spinor.atomic(2, wigner_function(1, 0))
    phi = Spinor.atomic(1, wigner_function(1, 0))
    assert psi.norm_integral() == ExactScalar(Number(1, 0) / 4, -2)
    assert psi.dagger_dot(phi) == 0


def test_shape_errors():
    with pytest.raises(ValueError):
        apply(identity(4), Spinor.atomic(1, q1))
    with pytest.raises(ValueError):
        mc_mul(identity(4), identity(2))
    with pytest.raises(ValueError):
        to_blades(identity(2))
    with pytest.raises(ValueError):
        MCElement([[q1], [q1, p1]])


def test_blocks_round_trip():
    X = from_blades(CliffordElement({0b0101: q1, 0b0011: p2}))
    rebuilt = MCElement.from_blocks(X.block(0, 0), X.block(0, 1), X.block(1, 0), X.block(1, 1))
    assert rebuilt == X and X.shape == (4, 4)
