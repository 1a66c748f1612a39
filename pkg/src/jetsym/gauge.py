"""Structure theory of the deforming form: flatness, potentials, gauge moves.

The matrix form is admissible when its coefficient matrices satisfy the
horizontal flatness condition ``D_i L_k - D_k L_i + [L_i, L_k] = 0``
(:func:`maurer_cartan_check`); for symmetries of a fixed equation the
condition only needs to hold on the solution manifold
(:func:`maurer_cartan_check_on_equation`).

Flat forms are differential-logarithmic derivatives of gauge functions:
:func:`darboux_derivative` computes ``gamma^-1 (D_i gamma)`` and the
result is always flat.  In the scalar case a closed polynomial form has
a polynomial potential whenever one exists within the derived degree and
order bounds (:func:`scalar_potential`, sound by post-verification), and
:func:`verify_gauge_equivalence_scalar` checks constructively that the
lambda-deformed lift is the standard lift of the exp-rescaled field,
component by component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import (
    GaugeError,
    NonPolynomialError,
    NoPotentialError,
    PotentialNotClosedError,
)
from .expr import (
    Const,
    Expr,
    Func,
    Mul,
    Var,
    Verdict,
    ZERO,
    as_expr,
    expr_prod,
    expr_sum,
    free_variables,
    is_polynomial,
    normalize,
    polynomial_terms,
    zero_verdict,
)
from .jets import (
    JetSpec,
    MuForm,
    d_closed,
    mat_identity,
    mat_mul,
    mat_total_derivative,
    total_derivative,
)
from .prolong import (
    PointVectorField,
    mu_compatibility_residuals,
    prolong_lambda,
    prolong_standard,
)
from .symmetry import DifferentialEquation, restrict_to_solution_manifold


class GaugeFunction:
    """An invertible matrix of expressions on jet space.

    Either the inverse is supplied explicitly (and the product is checked
    to normalize to the identity), or the matrix must be triangular with
    unit diagonal, in which case the polynomial inverse is computed from
    the nilpotent part.
    """

    __slots__ = ("spec", "entries", "inverse")

    def __init__(self, spec: JetSpec, entries, inverse=None):
        self.spec = spec
        q = spec.q
        self.entries = tuple(
            tuple(normalize(as_expr(e)) for e in row) for row in entries
        )
        if len(self.entries) != q or any(len(r) != q for r in self.entries):
            raise GaugeError("gauge function must be a q by q matrix")
        if inverse is not None:
            inverse = tuple(
                tuple(normalize(as_expr(e)) for e in row) for row in inverse
            )
            if len(inverse) != q or any(len(r) != q for r in inverse):
                raise GaugeError("explicit inverse must be a q by q matrix")
            prod = mat_mul(self.entries, inverse)
            for a in range(q):
                for b in range(q):
                    want = Const(1 if a == b else 0)
                    if zero_verdict(normalize(prod[a][b] - want)) is not Verdict.TRUE:
                        raise GaugeError(
                            "supplied inverse does not normalize to the identity "
                            f"(entry {a},{b} gives {prod[a][b]})"
                        )
            self.inverse = inverse
        else:
            self.inverse = self._unipotent_inverse()

    def _unipotent_inverse(self):
        q = self.spec.q
        upper = all(
            self.entries[a][b] == ZERO for a in range(q) for b in range(a)
        )
        lower = all(
            self.entries[a][b] == ZERO for a in range(q) for b in range(a + 1, q)
        )
        unit = all(self.entries[a][a] == Const(1) for a in range(q))
        if not (unit and (upper or lower)):
            raise GaugeError(
                "without an explicit inverse the matrix must be triangular "
                "with unit diagonal"
            )
        # (I + N)^-1 = I - N + N^2 - ..., N nilpotent of index <= q
        N = tuple(
            tuple(
                normalize(self.entries[a][b] - Const(1 if a == b else 0))
                for b in range(q)
            )
            for a in range(q)
        )
        inv = mat_identity(q)
        power = mat_identity(q)
        sign = 1
        for _ in range(1, q):
            power = mat_mul(power, N)
            sign = -sign
            inv = tuple(
                tuple(
                    normalize(inv[a][b] + Const(sign) * power[a][b])
                    for b in range(q)
                )
                for a in range(q)
            )
        return inv


@dataclass
class MCResult:
    """Flatness residual matrices, one per direction pair i < k."""

    verdict: Verdict
    residuals: dict

    def __bool__(self):
        return self.verdict is Verdict.TRUE


def maurer_cartan_check(mu: MuForm, *, seed=None) -> MCResult:
    """Flatness of the form: for every pair of directions the residual
    D_i L_k - D_k L_i + [L_i, L_k] must vanish entrywise.  For a scalar
    form the commutator drops and this is plain closedness."""
    residuals = mu_compatibility_residuals(mu)
    verdicts = [
        zero_verdict(e, seed=seed)
        for R in residuals.values()
        for row in R
        for e in row
    ]
    return MCResult(Verdict.combine(verdicts), residuals)


def maurer_cartan_check_on_equation(
    mu: MuForm, eq: DifferentialEquation, *, seed=None
) -> MCResult:
    """The same residuals, but restricted to the solution manifold before
    zero testing: compatibility is only required there when the form is
    used for symmetries of a fixed equation."""
    raw = mu_compatibility_residuals(mu)
    residuals = {}
    verdicts = []
    for key, R in raw.items():
        restricted = tuple(
            tuple(restrict_to_solution_manifold(e, eq) for e in row) for row in R
        )
        residuals[key] = restricted
        for row in restricted:
            for e in row:
                verdicts.append(zero_verdict(e, seed=seed))
    return MCResult(Verdict.combine(verdicts), residuals)


# ---------------------------------------------------------------------------
# scalar potentials


def _jet_order_of(spec, e):
    best = -1
    for name in free_variables(e):
        kind = spec.decode(name)
        if kind[0] == "jet":
            best = max(best, kind[2].order)
    return best


def _total_degree(e):
    return max((sum(k for _n, k in m) for m in polynomial_terms(e)), default=0)


def scalar_potential(mu: MuForm) -> Expr:
    """A function whose total derivatives reproduce the scalar form's
    coefficients.

    Works on the polynomial fragment by linear algebra over a finite
    candidate space: any polynomial potential must have jet order one
    below the coefficients' and degree at most one above, so solving for
    undetermined coefficients inside those bounds is complete for
    polynomial potentials.  The defining property is re-verified by total
    differentiation before returning; failure raises instead of guessing.
    """
    spec = mu.spec
    lambdas = [normalize(l) for l in mu.lambdas]
    for l in lambdas:
        if not is_polynomial(l):
            raise NonPolynomialError(f"coefficient {l} is not polynomial")
    closed = d_closed(mu)
    if closed.verdict is not Verdict.TRUE:
        raise PotentialNotClosedError(
            f"form is not closed: residuals {closed.residuals}"
        )

    max_order = max((_jet_order_of(spec, l) for l in lambdas), default=-1)
    degree = max((_total_degree(l) for l in lambdas), default=0) + 1
    names = list(spec.independent)
    for l in lambdas:
        for n in sorted(free_variables(l)):
            if spec.decode(n)[0] == "auxiliary" and n not in names:
                names.append(n)
    if max_order >= 1:
        for J in spec.multi_indices(max_order - 1):
            for a in range(spec.q):
                names.append(spec.jet_name(a, J))

    candidates = []
    for k in range(1, degree + 1):
        for combo in combinations_with_replacement(names, k):
            candidates.append(expr_prod(Var(n) for n in combo))

    # rows: one linear equation per (direction, monomial of the expansion)
    columns = {}
    rhs = {}
    for i in range(spec.p):
        for mono, c in polynomial_terms(lambdas[i]).items():
            rhs[(i, mono)] = c
        for col, cand in enumerate(candidates):
            d = total_derivative(cand, i, spec)
            for mono, c in polynomial_terms(d).items():
                columns.setdefault(col, {})[(i, mono)] = c

    row_keys = sorted(set(rhs) | {k for col in columns.values() for k in col})
    matrix = [
        [columns.get(col, {}).get(rk, Fraction(0)) for col in range(len(candidates))]
        + [rhs.get(rk, Fraction(0))]
        for rk in row_keys
    ]
    solution = _solve_exact(matrix, len(candidates))
    if solution is None:
        raise NoPotentialError("no polynomial potential within the derived bounds")
    phi = expr_sum(
        Mul((Const(c), cand))
        for c, cand in zip(solution, candidates)
        if c
    )
    for i in range(spec.p):
        if normalize(total_derivative(phi, i, spec) - lambdas[i]) != ZERO:
            raise NoPotentialError(
                "candidate potential failed post-verification"
            )  # pragma: no cover - the solve guarantees this
    return phi


def _solve_exact(aug, ncols):
    """Gaussian elimination over the rationals on an augmented matrix;
    returns one solution (free unknowns at zero) or None."""
    rows = [r[:] for r in aug]
    nrows = len(rows)
    pivot_of = {}
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_of[c] = r
        r += 1
        if r == nrows:
            break
    for i in range(nrows):
        if not any(rows[i][:ncols]) and rows[i][ncols]:
            return None
    out = [Fraction(0)] * ncols
    for c, ri in pivot_of.items():
        out[c] = rows[ri][ncols]
    return out


# ---------------------------------------------------------------------------
# Darboux derivatives and scalar gauge equivalence


def darboux_derivative(gamma: GaugeFunction) -> MuForm:
    """The form ``gamma^-1 (D_i gamma) dx^i`` attached to a gauge
    function; always flat."""
    spec = gamma.spec
    mats = [
        mat_mul(gamma.inverse, mat_total_derivative(gamma.entries, i, spec))
        for i in range(spec.p)
    ]
    return MuForm(spec, mats)


@dataclass
class GaugeEquivalenceResult:
    """Collinearity residuals e^phi psi_k(deformed) - psi_k(standard of
    the rescaled field), per multiindex."""

    verdict: Verdict
    residuals: dict
    flagged_probable: tuple

    def __bool__(self):
        return self.verdict is Verdict.TRUE


def verify_gauge_equivalence_scalar(
    X: PointVectorField, phi, n=None, *, seed=None
) -> GaugeEquivalenceResult:
    """Constructive gauge equivalence for scalar ODE fields: with
    ``lambda = D_x phi``, the lambda-deformed lift of X agrees, after
    multiplication by e^phi, with the standard lift of the field with
    coefficients scaled by e^phi."""
    spec = X.spec
    if spec.p != 1 or spec.q != 1:
        raise GaugeError("scalar gauge equivalence needs p = q = 1")
    phi = normalize(as_expr(phi))
    if not is_polynomial(phi):
        raise NonPolynomialError("the potential must be polynomial")
    n = spec.order if n is None else n
    jet_dependent = _jet_order_of(spec, phi) >= 1
    if jet_dependent and not X.generalized:
        raise GaugeError(
            "jet-dependent potential needs a field with generalized=True"
        )
    lam = total_derivative(phi, 0, spec)
    A = prolong_lambda(
        PointVectorField(spec, X.xi, X.phi, generalized=True), lam, n
    )
    scale = Func("exp", phi)
    rescaled = PointVectorField(
        spec,
        (normalize(Mul((scale, X.xi[0]))),),
        (normalize(Mul((scale, X.phi[0]))),),
        generalized=True,
    )
    B = prolong_standard(rescaled, n)
    residuals = {}
    verdicts = []
    flagged = []
    for J in spec.multi_indices(n):
        r = normalize(Mul((scale, A.psi_at(0, J))) - B.psi_at(0, J))
        v = zero_verdict(r, seed=seed)
        verdicts.append(v)
        if r != ZERO:
            residuals[J] = r
        if v is Verdict.PROBABLY:
            flagged.append(J)
    return GaugeEquivalenceResult(
        Verdict.combine(verdicts), residuals, tuple(flagged)
    )
