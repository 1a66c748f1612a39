"""Shared generators for seeded-random test instances."""

import random

from jetsym.expr import Add, Const, Mul, Var, ZERO, normalize
from jetsym.jets import JetSpec, MuForm, total_derivative
from jetsym.prolong import PointVectorField


def rand_poly(rng, names, max_degree=2, max_terms=3, allow_zero=True):
    """Sparse random polynomial over the given variable names."""
    parts = []
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        c = rng.randint(-3, 3)
        if c == 0:
            c = 1
        factors = [Const(c)]
        for _ in range(rng.randint(0, max_degree)):
            factors.append(Var(rng.choice(names)))
        parts.append(Mul(tuple(factors)))
    if not parts:
        return ZERO
    return normalize(Add(tuple(parts)))


def base_names(spec: JetSpec):
    return list(spec.independent) + list(spec.dependent)


def rand_point_field(rng, spec: JetSpec, max_degree=2, generalized=False, names=None):
    names = names or base_names(spec)
    xi = tuple(rand_poly(rng, names, max_degree) for _ in range(spec.p))
    phi = tuple(rand_poly(rng, names, max_degree) for _ in range(spec.q))
    return PointVectorField(spec, xi, phi, generalized=generalized)


def rand_closed_scalar_mu(rng, spec: JetSpec, max_degree=2):
    """A closed scalar form, built as the total differential of a random
    polynomial of the base variables (closed by construction)."""
    phi = rand_poly(rng, base_names(spec), max_degree)
    lambdas = [total_derivative(phi, i, spec) for i in range(spec.p)]
    return MuForm.scalar(spec, lambdas), phi


def rand_unipotent_gauge(rng, spec: JetSpec, max_degree=2):
    """Upper triangular with unit diagonal, polynomial entries."""
    q = spec.q
    names = base_names(spec)
    rows = []
    for a in range(q):
        row = []
        for b in range(q):
            if a == b:
                row.append(Const(1))
            elif a < b:
                row.append(rand_poly(rng, names, max_degree, max_terms=2))
            else:
                row.append(Const(0))
        rows.append(tuple(row))
    return tuple(rows)
