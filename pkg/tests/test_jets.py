"""Jet geometry tests: coordinates, total derivatives, forms, contact module."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetsym.errors import JetError
from jetsym.expr import Const, Verdict, normalize
from jetsym.jets import (
    ContactMembership,
    JetSpec,
    JetVectorField,
    MultiIndex,
    MuForm,
    basis_key_du,
    basis_key_dx,
    contact_form,
    d_closed,
    du,
    dx,
    exterior_derivative,
    in_contact_module,
    in_vector_contact_module,
    interior_product,
    lie_derivative,
    total_derivative,
    truncated_total_derivative,
)
from jetsym.parsing import parse

ODE1 = JetSpec(("x",), ("u",), 1)
ODE2 = JetSpec(("x",), ("u",), 2)
PDE2 = JetSpec(("x", "t"), ("u",), 2)
SYS1 = JetSpec(("x",), ("u", "v"), 1)


def field(spec, xi, psi):
    return JetVectorField(
        spec,
        tuple(parse(s) for s in xi),
        {k: parse(s) for k, s in psi.items()},
    )


J0_1 = MultiIndex.zero(1)
J0_2 = MultiIndex.zero(2)


# --- naming -----------------------------------------------------------------

def test_jet_names_follow_declaration_order():
    assert PDE2.jet_name(0, MultiIndex((2, 1))) == "u_xxt"
    assert PDE2.jet_name(0, J0_2) == "u"
    assert PDE2.decode("u_xt") == ("jet", 0, MultiIndex((1, 1)))
    assert PDE2.decode("x") == ("independent", 0)
    assert PDE2.decode("c") == ("auxiliary", None)


def test_decode_rejects_misordered_or_alien_suffix():
    with pytest.raises(JetError):
        PDE2.decode("u_tx")
    with pytest.raises(JetError):
        PDE2.decode("u_zz")


def test_spec_validation():
    with pytest.raises(JetError):
        JetSpec(("x", "x"), ("u",), 1)
    with pytest.raises(JetError):
        JetSpec(("x",), ("u",), 0)
    with pytest.raises(JetError):
        JetSpec(("x", "xx"), ("u",), 1)
    with pytest.raises(JetError):
        JetSpec(("x",), ("u_1",), 1)


def test_multi_index_enumeration_is_graded_first_slot_first():
    names = [PDE2.jet_name(0, J) for J in PDE2.multi_indices(2)]
    assert names == ["u", "u_x", "u_t", "u_xx", "u_xt", "u_tt"]


# --- total derivative -------------------------------------------------------

def test_total_derivative_base_case():
    assert total_derivative(parse("u"), 0, ODE1) == parse("u_x")


def test_total_derivative_product():
    assert total_derivative(parse("x*u"), 0, ODE1) == parse("u + x*u_x")


def test_total_derivative_chain_second_variable():
    assert total_derivative(parse("u_x^2"), 1, PDE2) == parse("2*u_x*u_xt")


def test_auxiliary_names_are_constants():
    assert total_derivative(parse("c"), 0, ODE1) == Const(0)
    assert total_derivative(parse("c*u"), 0, ODE1) == parse("c*u_x")


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["u*u_x + x*t", "u_x*u_t", "x^2*u + t*u_xx", "sin(u)*u_x"]))
def test_total_derivatives_commute(text):
    e = parse(text)
    d01 = total_derivative(total_derivative(e, 0, PDE2), 1, PDE2)
    d10 = total_derivative(total_derivative(e, 1, PDE2), 0, PDE2)
    assert d01 == d10


# --- contact forms ----------------------------------------------------------

def test_contact_form_scalar():
    theta = contact_form(0, J0_1, ODE1)
    assert theta.coefficient(basis_key_du(0, J0_1)) == Const(1)
    assert theta.coefficient(basis_key_dx(0)) == parse("-u_x")


def test_contact_form_higher_and_second_component():
    theta = contact_form(0, MultiIndex((1, 0)), PDE2)
    assert theta.coefficient(basis_key_du(0, MultiIndex((1, 0)))) == Const(1)
    assert theta.coefficient(basis_key_dx(0)) == parse("-u_xx")
    assert theta.coefficient(basis_key_dx(1)) == parse("-u_xt")
    theta_v = contact_form(1, J0_1, SYS1)
    assert theta_v.coefficient(basis_key_du(1, J0_1)) == Const(1)
    assert theta_v.coefficient(basis_key_dx(0)) == parse("-v_x")


def test_no_contact_form_at_top_order():
    with pytest.raises(JetError):
        contact_form(0, MultiIndex((1,)), ODE1)


def test_contact_forms_annihilate_total_derivative_directions():
    for spec in (ODE2, PDE2):
        for i in range(spec.p):
            dhat = truncated_total_derivative(spec, i)
            for J in spec.multi_indices(spec.order - 1):
                theta = contact_form(0, J, spec)
                assert interior_product(dhat, theta) == Const(0)


# --- interior product -------------------------------------------------------

def test_interior_product_examples():
    theta = contact_form(0, J0_1, ODE1)
    d_u = field(ODE1, ["0"], {(0, J0_1): "1"})
    d_x = field(ODE1, ["1"], {})
    assert interior_product(d_u, theta) == Const(1)
    assert interior_product(d_x, theta) == parse("-u_x")


def test_interior_product_prolonged_field():
    # scaling field x d_x + u d_u prolonged to order 1 has psi_x = 0
    Y = field(ODE2, ["x"], {(0, J0_1): "u", (0, MultiIndex((1,))): "0"})
    omega = contact_form(0, MultiIndex((1,)), ODE2)
    assert interior_product(Y, omega) == parse("-x*u_xx")


# --- exterior derivative ----------------------------------------------------

def test_exterior_derivative_of_u_dx():
    omega = dx(ODE1, 0).scale(parse("u"))
    tau = exterior_derivative(omega, ODE1)
    assert tau.coefficient(basis_key_du(0, J0_1), basis_key_dx(0)) == Const(1)
    assert tau.coefficient(basis_key_dx(0), basis_key_du(0, J0_1)) == Const(-1)


def test_exterior_derivative_of_constant_coefficient():
    omega = dx(ODE1, 0).scale(Const(3))
    assert exterior_derivative(omega, ODE1).is_structurally_zero


def test_exterior_derivative_of_contact_form():
    theta = contact_form(0, J0_1, ODE1)
    tau = exterior_derivative(theta, ODE1)
    assert tau.coefficient(basis_key_dx(0), basis_key_du(0, MultiIndex((1,)))) == Const(1)
    assert len(tau.coeffs) == 1


# --- Lie derivative ---------------------------------------------------------

def test_lie_derivative_translation_kills_dx():
    d_x = field(ODE1, ["1"], {})
    assert lie_derivative(d_x, dx(ODE1, 0), ODE1).is_structurally_zero


def test_lie_derivative_vertical_shift_kills_contact_form():
    d_u = field(ODE1, ["0"], {(0, J0_1): "1"})
    theta = contact_form(0, J0_1, ODE1)
    assert lie_derivative(d_u, theta, ODE1).is_structurally_zero


def test_scaling_identity_for_lie_derivatives():
    # L_{fY}(w) = f L_Y(w) + (Y . w) df, checked on concrete data
    spec = ODE2
    Y = field(spec, ["u"], {(0, J0_1): "x*u", (0, MultiIndex((1,))): "u_x^2"})
    omega = du(spec, 0, J0_1).scale(parse("x")) + dx(spec, 0).scale(parse("u_x"))
    for f_text in ("x", "u", "x*u_x + 1"):
        f = parse(f_text)
        lhs = lie_derivative(Y.scale(f), omega, spec)
        from jetsym.jets import scalar_differential
        rhs = lie_derivative(Y, omega, spec).scale(f) + scalar_differential(f, spec).scale(
            interior_product(Y, omega)
        )
        assert lhs == rhs


# --- contact module membership ----------------------------------------------

def test_scalar_multiple_of_contact_form_is_in_module():
    theta = contact_form(0, J0_1, ODE1).scale(parse("x^2"))
    assert in_contact_module(theta, ODE1).verdict is Verdict.TRUE


def test_horizontal_form_is_not_in_module():
    m = in_contact_module(dx(ODE1, 0), ODE1)
    assert m.verdict is Verdict.FALSE
    assert m.horizontal_residuals[0] == Const(1)


def test_top_order_differential_is_not_in_module():
    m = in_contact_module(du(ODE1, 0, MultiIndex((1,))), ODE1)
    assert m.verdict is Verdict.FALSE
    assert m.top_residuals[(0, MultiIndex((1,)))] == Const(1)


def test_decomposition_reconstructs_the_form():
    spec = PDE2
    omega = (
        du(spec, 0, J0_2).scale(parse("x*t"))
        + du(spec, 0, MultiIndex((1, 0))).scale(parse("u_t"))
        + dx(spec, 0).scale(parse("u + t"))
        + du(spec, 0, MultiIndex((2, 0))).scale(parse("3"))
    )
    m = in_contact_module(omega, spec)
    rebuilt = du(spec, 0, MultiIndex((2, 0))).scale(Const(0))
    for key, c in omega.coeffs.items():
        if key[0] == "u" and MultiIndex(key[2]).order <= spec.order - 1:
            rebuilt = rebuilt + contact_form(key[1], MultiIndex(key[2]), spec).scale(c)
    for i, r in m.horizontal_residuals.items():
        rebuilt = rebuilt + dx(spec, i).scale(r)
    for (a, J), c in m.top_residuals.items():
        rebuilt = rebuilt + du(spec, a, J).scale(c)
    assert rebuilt == omega


def test_vector_module_membership():
    theta_v = contact_form(1, J0_1, SYS1)
    zero_form = dx(SYS1, 0).scale(Const(0))
    assert in_vector_contact_module([theta_v, zero_form], SYS1).verdict is Verdict.TRUE
    assert in_vector_contact_module([dx(SYS1, 0), zero_form], SYS1).verdict is Verdict.FALSE
    theta_1 = contact_form(0, J0_1, SYS1)
    comp = [theta_1.scale(parse("u")), theta_1.scale(parse("v"))]
    assert in_vector_contact_module(comp, SYS1).verdict is Verdict.TRUE


# --- closedness -------------------------------------------------------------

def test_d_closed_examples():
    mu = MuForm.scalar(PDE2, [parse("u_x"), parse("u_t")])
    assert d_closed(mu).verdict is Verdict.TRUE
    mu2 = MuForm.scalar(PDE2, [parse("u"), parse("0")])
    res = d_closed(mu2)
    assert res.verdict is Verdict.FALSE
    assert res.residuals[(0, 1)] == parse("-u_t")
    mu3 = MuForm.scalar(ODE1, [parse("u*u_x")])
    assert d_closed(mu3).verdict is Verdict.TRUE  # single direction, no pairs
