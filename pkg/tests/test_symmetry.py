"""Symmetry module tests: equations, restriction, verdicts, characterizations."""

import random

import pytest

from helpers import rand_point_field, rand_poly
from jetsym.errors import EquationError, RestrictionError
from jetsym.expr import Const, Verdict, normalize, pdiff
from jetsym.jets import (
    JetSpec,
    MultiIndex,
    MuForm,
    contact_form,
    in_contact_module,
    interior_product,
    lie_derivative,
)
from jetsym.parsing import parse
from jetsym.prolong import PointVectorField, prolong_lambda, prolong_standard
from jetsym.symmetry import (
    DifferentialEquation,
    characteristic,
    characterization_check,
    check_symmetry,
    coincide_on_invariant_set,
    commutator_with_total_derivative,
    invariant_set_relations,
    restrict_to_solution_manifold,
)

ODE1 = JetSpec(("x",), ("u",), 1)
ODE2 = JetSpec(("x",), ("u",), 2)
PDE1 = JetSpec(("x", "t"), ("u",), 1)

J = MultiIndex


def pvf(spec, xi, phi, generalized=False):
    return PointVectorField(
        spec,
        tuple(parse(s) for s in xi),
        tuple(parse(s) for s in phi),
        generalized=generalized,
    )


# --- characteristic and invariant set ----------------------------------------

def test_characteristic_examples():
    assert characteristic(pvf(ODE1, ["0"], ["1"]))[0] == Const(1)
    assert characteristic(pvf(ODE1, ["x"], ["u"]))[0] == parse("u - x*u_x")
    assert characteristic(pvf(ODE1, ["1"], ["0"]))[0] == parse("-u_x")


def test_invariant_set_relations_examples():
    rels = invariant_set_relations(pvf(ODE2, ["x"], ["u"]), 2)
    assert rels == [parse("u - x*u_x"), parse("-x*u_xx")]
    rels2 = invariant_set_relations(pvf(ODE2, ["0"], ["1"]), 2)
    assert rels2 == [Const(1), Const(0)]
    rels3 = invariant_set_relations(pvf(ODE1, ["1"], ["0"]), 1)
    assert rels3 == [parse("-u_x")]


# --- equations and restriction ------------------------------------------------

def test_equation_validation():
    with pytest.raises(EquationError):
        DifferentialEquation.from_strings(ODE2, {"u_x": "0"})  # wrong order
    with pytest.raises(EquationError):
        DifferentialEquation.from_strings(ODE2, {"u_xx": "u_xx + 1"})
    with pytest.raises(EquationError):
        # derivative of the leading coordinate in the rhs
        DifferentialEquation.from_strings(
            JetSpec(("x", "t"), ("u",), 2), {"u_xx": "u_xxt"}
        )


def test_restrict_kills_the_equation():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "x*u + u_x"})
    e = parse("u_xx - (x*u + u_x)")
    assert restrict_to_solution_manifold(e, eq) == Const(0)


def test_restrict_uses_derivative_consequences():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "u"})
    assert restrict_to_solution_manifold(parse("u_xxx"), eq) == parse("u_x")
    assert restrict_to_solution_manifold(parse("u_xxxx"), eq) == parse("u")


def test_restrict_leaves_nonleading_expressions_alone():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "u"})
    e = parse("x*u_x + u^2")
    assert restrict_to_solution_manifold(e, eq) == e


def test_restrict_depth_failure_is_reported():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "u"})
    with pytest.raises(RestrictionError):
        restrict_to_solution_manifold(parse("u_xxx"), eq, depth=0)


# --- symmetry verdicts ----------------------------------------------------------

def test_lambda_symmetry_regression():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "(1+x^2)*u"})
    X = pvf(ODE2, ["0"], ["1"])
    res = check_symmetry(X, eq, "lambda", lam=parse("x"))
    assert res.verdict is Verdict.TRUE

    res_std = check_symmetry(X, eq, "standard")
    assert res_std.verdict is Verdict.FALSE
    assert res_std.residuals[0] == parse("-(1+x^2)")


def test_translation_symmetry_of_autonomous_equation():
    eq = DifferentialEquation.from_strings(ODE1, {"u_x": "0"})
    X = pvf(ODE1, ["1"], ["0"])
    assert check_symmetry(X, eq, "standard").verdict is Verdict.TRUE


def test_scaling_symmetry_of_scale_invariant_equation():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "u_x^2/u"})
    X = pvf(ODE2, ["0"], ["u"])
    assert check_symmetry(X, eq, "standard").verdict is Verdict.TRUE


def test_mu_kind_reduces_to_lambda_kind():
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "(1+x^2)*u"})
    X = pvf(ODE2, ["0"], ["1"])
    mu = MuForm.scalar(ODE2, [parse("x")])
    assert check_symmetry(X, eq, "mu", mu=mu).verdict is Verdict.TRUE


def test_lambda_zero_matches_standard_verdicts():
    rng = random.Random(21)
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "u*u_x"})
    for _ in range(5):
        X = rand_point_field(rng, ODE2)
        a = check_symmetry(X, eq, "standard").verdict
        b = check_symmetry(X, eq, "lambda", lam=Const(0)).verdict
        assert a == b


def test_verdict_invariant_under_nonvanishing_rescaling():
    # tangency tested on r and on g*r agrees, g = 1 + x^2
    eq = DifferentialEquation.from_strings(ODE2, {"u_xx": "(1+x^2)*u"})
    g = parse("1 + x^2")
    for X, lam in [
        (pvf(ODE2, ["0"], ["1"]), parse("x")),
        (pvf(ODE2, ["0"], ["u"]), parse("x")),
        (pvf(ODE2, ["x"], ["u"]), parse("0")),
    ]:
        Y = prolong_lambda(X, lam, 2)
        r = parse("u_xx - (1+x^2)*u")
        plain = restrict_to_solution_manifold(Y.apply(r), eq)
        scaled = restrict_to_solution_manifold(Y.apply(normalize(g * r)), eq)
        from jetsym.expr import zero_verdict
        assert zero_verdict(plain) == zero_verdict(scaled)


def test_constructed_symmetric_equations_pass():
    # equations assembled from invariants of simple fields must accept them
    rng = random.Random(22)
    for _ in range(4):
        f = rand_poly(rng, ["u", "u_x"], max_degree=2, allow_zero=False)
        eq = DifferentialEquation.from_strings(ODE2, {"u_xx": str(f)})
        assert check_symmetry(pvf(ODE2, ["1"], ["0"]), eq, "standard").verdict is Verdict.TRUE
    for _ in range(4):
        f = rand_poly(rng, ["x", "u_x"], max_degree=2, allow_zero=False)
        eq = DifferentialEquation.from_strings(ODE2, {"u_xx": str(f)})
        assert check_symmetry(pvf(ODE2, ["0"], ["1"]), eq, "standard").verdict is Verdict.TRUE
    for _ in range(4):
        # scaling field x d_x: u, x*u_x and x^2*u_xx are invariant
        f = rand_poly(rng, ["u", "w"], max_degree=2, allow_zero=False)
        f = normalize(parse(str(f).replace("w", "(x*u_x)")) / parse("x^2"))
        eq = DifferentialEquation.from_strings(ODE2, {"u_xx": str(f)})
        assert check_symmetry(pvf(ODE2, ["x"], ["0"]), eq, "standard").verdict is Verdict.TRUE


# --- commutator characterizations ---------------------------------------------

def test_commutator_pairs_to_zero_for_standard_prolongations():
    Y = prolong_standard(pvf(ODE1, ["1"], ["0"]), 1)
    C = commutator_with_total_derivative(Y, 0)
    theta = contact_form(0, J((0,)), ODE1)
    assert interior_product(C, theta) == Const(0)

    Y2 = prolong_standard(pvf(ODE1, ["x"], ["u"]), 1)
    C2 = commutator_with_total_derivative(Y2, 0)
    assert interior_product(C2, theta) == Const(0)


def test_commutator_recovers_lambda():
    Y = prolong_lambda(pvf(ODE1, ["0"], ["1"]), parse("u"), 1)
    C = commutator_with_total_derivative(Y, 0)
    theta = contact_form(0, J((0,)), ODE1)
    assert interior_product(C, theta) == parse("u")


def test_characterization_check_accepts_prolongations():
    rng = random.Random(23)
    for _ in range(4):
        X = rand_point_field(rng, ODE2)
        assert characterization_check(prolong_standard(X, 2), "standard").verdict is Verdict.TRUE
        lam = rand_poly(rng, ["x", "u"], max_degree=2)
        Yl = prolong_lambda(X, lam, 2)
        assert characterization_check(Yl, "lambda", lam=lam).verdict is Verdict.TRUE


def _perturb(Y, a, Ji):
    psi = dict(Y.psi)
    psi[(a, Ji)] = normalize(Y.psi_at(a, Ji) + Const(1))
    from jetsym.jets import JetVectorField
    return JetVectorField(Y.spec, Y.xi, psi, order=Y.order)


def test_characterization_check_rejects_perturbed_fields():
    X = pvf(ODE2, ["x"], ["u"])
    Y = _perturb(prolong_standard(X, 2), 0, J((1,)))
    assert characterization_check(Y, "standard").verdict is Verdict.FALSE
    lam = parse("x*u")
    Yl = _perturb(prolong_lambda(X, lam, 2), 0, J((2,)))
    assert characterization_check(Yl, "lambda", lam=lam).verdict is Verdict.FALSE


def test_characterization_agrees_with_contact_membership():
    rng = random.Random(24)
    for _ in range(4):
        X = rand_point_field(rng, ODE2)
        Y = prolong_standard(X, 2)
        for cand in (Y, _perturb(Y, 0, J((2,)))):
            char = characterization_check(cand, "standard").verdict
            member = Verdict.combine(
                in_contact_module(
                    lie_derivative(cand, contact_form(0, Ji, ODE2), ODE2), ODE2
                ).verdict
                for Ji in ODE2.multi_indices(1)
            )
            assert char == member


# --- coincidence on the invariant set -------------------------------------------

def test_coincidence_trivial_for_zero_mu():
    X = pvf(ODE2, ["x"], ["u"])
    res = coincide_on_invariant_set(X, MuForm.zero(ODE2), 2)
    assert res.verdict is Verdict.TRUE
    assert not res.vacuous


def test_coincidence_scaling_field_first_order():
    X = pvf(ODE1, ["x"], ["u"])
    mu = MuForm.scalar(ODE1, [parse("x*u + u^2")])
    res = coincide_on_invariant_set(X, mu, 1)
    assert res.verdict is Verdict.TRUE
    assert not res.vacuous
    assert res.solved  # u_x was solved from the characteristic


def test_coincidence_vacuous_for_vertical_shift():
    X = pvf(ODE1, ["0"], ["1"])  # characteristic 1, empty invariant set
    mu = MuForm.scalar(ODE1, [parse("u")])
    res = coincide_on_invariant_set(X, mu, 1)
    assert res.vacuous
    assert res.verdict is Verdict.TRUE


def test_coincidence_higher_order():
    rng = random.Random(25)
    for _ in range(3):
        xi = rand_poly(rng, ["x", "u"], max_degree=1, allow_zero=False)
        phi = rand_poly(rng, ["x", "u"], max_degree=1)
        X = PointVectorField(ODE2, (xi,), (phi,))
        mu = MuForm.scalar(ODE2, [rand_poly(rng, ["x", "u"], max_degree=2)])
        res = coincide_on_invariant_set(X, mu, 2)
        if res.vacuous:
            continue
        assert res.verdict is Verdict.TRUE, res.residuals
