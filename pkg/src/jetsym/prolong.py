"""Prolongations of point vector fields to jet space.

Four lifts are provided: the standard contact-preserving prolongation,
the lambda-deformed lift for scalar ODEs, and the scalar and matrix
variants deformed by a horizontal form ``mu``.  All of them run the same
one-step recursion along the canonical multiindex path (all slot-0
steps, then slot 1, ...); for the deformed variants the result is
path-independent exactly when the form satisfies its compatibility
condition (closedness in the scalar case, the flatness condition checked
by :func:`mu_compatibility_residuals` in the matrix case), and a
``path_check`` option verifies path independence directly instead of
requiring compatibility up front.

The difference terms between a deformed and the standard lift vanish on
the invariant set of the field; :func:`difference_terms` computes them by
subtraction and, in the scalar case, re-derives them through their own
recursion and reports the residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentMuError, JetError, MuNotClosedError, ProlongationError
from .expr import (
    Const,
    Expr,
    Mul,
    Verdict,
    ZERO,
    as_expr,
    expr_sum,
    free_variables,
    normalize,
    zero_verdict,
)
from .jets import (
    JetSpec,
    JetVectorField,
    MultiIndex,
    MuForm,
    d_closed,
    mat_mul,
    mat_sub,
    mat_total_derivative,
    total_derivative,
    total_derivative_path,
)


@dataclass(frozen=True)
class PointVectorField:
    """A vector field on the base space: one coefficient per independent
    variable and one per dependent variable, functions of (x, u).  With
    ``generalized`` set, coefficients may also depend on derivative
    coordinates and the same recursions apply verbatim."""

    spec: JetSpec
    xi: tuple
    phi: tuple
    generalized: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "xi", tuple(normalize(as_expr(x)) for x in self.xi)
        )
        object.__setattr__(
            self, "phi", tuple(normalize(as_expr(f)) for f in self.phi)
        )
        if len(self.xi) != self.spec.p or len(self.phi) != self.spec.q:
            raise JetError("component counts must match the jet space")
        if not self.generalized:
            for e in self.xi + self.phi:
                order = _max_jet_order(e, self.spec)
                if order >= 1:
                    raise JetError(
                        "point field coefficients may depend on (x, u) only; "
                        "set generalized=True for jet-dependent coefficients"
                    )

    def max_coefficient_order(self) -> int:
        return max(
            (_max_jet_order(e, self.spec) for e in self.xi + self.phi),
            default=-1,
        )


def _max_jet_order(e, spec) -> int:
    best = -1
    for name in free_variables(e):
        kind = spec.decode(name)
        if kind[0] == "jet":
            best = max(best, kind[2].order)
    return best


class NablaOperator:
    """The matrix-deformed total derivative along one direction: the
    identity times the total derivative plus the form's matrix there."""

    def __init__(self, mu: MuForm, i: int):
        self.mu = mu
        self.i = i

    def apply(self, vec):
        """Apply to a q-vector of expressions."""
        spec = self.mu.spec
        M = self.mu.matrices[self.i]
        out = []
        for a in range(spec.q):
            parts = [total_derivative(vec[a], self.i, spec)]
            for b in range(spec.q):
                parts.append(Mul((M[a][b], vec[b])))
            out.append(expr_sum(parts))
        return tuple(out)


def _step_standard(i, J, psi_row, xi, spec):
    """Undeformed step: D_i of the row minus u^a_{J,m} (D_i xi^m)."""
    out = []
    for a in range(spec.q):
        parts = [total_derivative(psi_row[a], i, spec)]
        for m in range(spec.p):
            dxi = total_derivative(xi[m], i, spec)
            parts.append(Mul((Const(-1), spec.jet_var(a, J.inc(m)), dxi)))
        out.append(expr_sum(parts))
    return tuple(out)


def _make_scalar_step(mu):
    """Scalar-deformed step (q = 1): the operator (D_i + lambda_i) applied
    to the single component and to each xi coefficient."""
    lambdas = mu.lambdas

    def step(i, J, psi_row, xi, spec):
        lam = lambdas[i]
        parts = [total_derivative(psi_row[0], i, spec), Mul((lam, psi_row[0]))]
        for m in range(spec.p):
            deformed_dxi = expr_sum(
                [total_derivative(xi[m], i, spec), Mul((lam, xi[m]))]
            )
            parts.append(Mul((Const(-1), spec.jet_var(0, J.inc(m)), deformed_dxi)))
        return (expr_sum(parts),)

    return step


def _make_vector_step(mu):
    """Matrix-deformed step: the operator with matrix part L_i applied to
    the component vector and to the xi coefficients."""

    def step(i, J, psi_row, xi, spec):
        M = mu.matrices[i]
        q = spec.q
        out = []
        for a in range(q):
            parts = [total_derivative(psi_row[a], i, spec)]
            for b in range(q):
                parts.append(Mul((M[a][b], psi_row[b])))
            for m in range(spec.p):
                dxi = total_derivative(xi[m], i, spec)
                parts.append(Mul((Const(-1), spec.jet_var(a, J.inc(m)), dxi)))
                for b in range(q):
                    parts.append(
                        Mul((Const(-1), M[a][b], xi[m], spec.jet_var(b, J.inc(m))))
                    )
            out.append(expr_sum(parts))
        return tuple(out)

    return step


def _build_table(X: PointVectorField, step, n: int):
    """Component table of the prolongation, filled along the canonical path."""
    spec = X.spec
    table = {MultiIndex.zero(spec.p): tuple(X.phi)}
    for J in spec.multi_indices(n, min_order=1):
        i = J.last_slot()
        base = J.dec(i)
        table[J] = step(i, base, table[base], X.xi, spec)
    return table


def _as_field(X, table, n):
    spec = X.spec
    psi = {}
    for J, row in table.items():
        for a in range(spec.q):
            psi[(a, J)] = row[a]
    return JetVectorField(spec, X.xi, psi, order=n)


def _verify_path_independence(X, step, table, n, *, seed=None):
    """Every single-step edge of the table must be consistent; together
    the edges cover all increasing multiindex paths."""
    spec = X.spec
    for J in spec.multi_indices(n, min_order=2):
        slots = [i for i, c in enumerate(J.counts) if c]
        if len(slots) < 2:
            continue
        for i in slots:
            if i == J.last_slot():
                continue  # the canonical edge produced the stored value
            base = J.dec(i)
            alt = step(i, base, table[base], X.xi, spec)
            for a in range(spec.q):
                diff = normalize(table[J][a] - alt[a])
                if zero_verdict(diff, seed=seed) is Verdict.FALSE:
                    raise InconsistentMuError(
                        f"recursion paths disagree at {spec.jet_name(a, J)}: "
                        f"difference {diff}"
                    )


def prolong_standard(X: PointVectorField, n=None) -> JetVectorField:
    """The unique contact-preserving lift of ``X`` to order ``n``."""
    n = X.spec.order if n is None else n
    if n < 1:
        raise ProlongationError("prolongation order must be at least 1")
    table = _build_table(X, _step_standard, n)
    return _as_field(X, table, n)


def prolong_lambda(X: PointVectorField, lam, n=None) -> JetVectorField:
    """The lambda-deformed lift for scalar ODEs (one independent and one
    dependent variable), by the linear chain recursion
    ``psi_{k+1} = (D + lambda) psi_k - u_{k+1} (D + lambda) xi``.  The
    deforming function may live on the first jet space, or higher when
    the field is generalized."""
    spec = X.spec
    if spec.p != 1 or spec.q != 1:
        raise ProlongationError(
            "lambda prolongation needs p = q = 1; use the mu variants otherwise"
        )
    lam = normalize(as_expr(lam))
    order = _max_jet_order(lam, spec)
    if order > 1 and not X.generalized:
        raise ProlongationError(
            "lambda depends on jet order > 1; set generalized=True on the field"
        )
    n = spec.order if n is None else n
    if n < 1:
        raise ProlongationError("prolongation order must be at least 1")
    xi = X.xi[0]
    deformed_dxi = expr_sum([total_derivative(xi, 0, spec), Mul((lam, xi))])
    psi = [X.phi[0]]
    index = MultiIndex.zero(1)
    table = {index: (psi[0],)}
    for _k in range(n):
        index = index.inc(0)
        nxt = expr_sum(
            [
                total_derivative(psi[-1], 0, spec),
                Mul((lam, psi[-1])),
                Mul((Const(-1), spec.jet_var(0, index), deformed_dxi)),
            ]
        )
        psi.append(nxt)
        table[index] = (nxt,)
    return _as_field(X, table, n)


def prolong_mu_scalar(
    X: PointVectorField, mu: MuForm, n=None, *, path_check=False, seed=None
) -> JetVectorField:
    """The scalar mu-deformed lift.  Requires a closed form, or an
    explicit ``path_check`` waiver under which path independence of the
    recursion is verified directly and any disagreement raises."""
    spec = X.spec
    if spec.q != 1:
        raise ProlongationError("scalar mu prolongation needs q = 1")
    if not mu.is_scalar or mu.spec != spec:
        raise ProlongationError("mu must be a scalar form on the field's jet space")
    n = spec.order if n is None else n
    closed = d_closed(mu, seed=seed)
    if closed.verdict is Verdict.FALSE and not path_check:
        raise MuNotClosedError(
            f"the form is not closed (residuals {closed.residuals}); "
            "pass path_check=True to verify path independence instead"
        )
    step = _make_scalar_step(mu)
    table = _build_table(X, step, n)
    if path_check:
        _verify_path_independence(X, step, table, n, seed=seed)
    return _as_field(X, table, n)


def prolong_mu_vector(
    X: PointVectorField, mu: MuForm, n=None, *, path_check=False, seed=None
) -> JetVectorField:
    """The matrix mu-deformed lift for systems.  Requires the flatness
    condition (checked through :func:`mu_compatibility_residuals`), or
    the ``path_check`` waiver as in the scalar case."""
    spec = X.spec
    if mu.spec != spec:
        raise ProlongationError("mu must live on the field's jet space")
    n = spec.order if n is None else n
    flat = mu_compatibility_verdict(mu, seed=seed)
    if flat is Verdict.FALSE and not path_check:
        raise MuNotClosedError(
            "the form fails its compatibility condition; "
            "pass path_check=True to verify path independence instead"
        )
    step = _make_vector_step(mu)
    table = _build_table(X, step, n)
    if path_check:
        _verify_path_independence(X, step, table, n, seed=seed)
    return _as_field(X, table, n)


# ---------------------------------------------------------------------------
# compatibility residuals (shared with the gauge layer)


def mu_compatibility_residuals(mu: MuForm):
    """For every direction pair i < k, the matrix
    D_i L_k - D_k L_i + [L_i, L_k]; all zero exactly when the deformed
    derivatives along different directions commute."""
    spec = mu.spec
    out = {}
    for i in range(spec.p):
        for k in range(i + 1, spec.p):
            Li, Lk = mu.matrices[i], mu.matrices[k]
            R = mat_sub(
                mat_total_derivative(Lk, i, spec),
                mat_total_derivative(Li, k, spec),
            )
            R = mat_sub(R, mat_sub(mat_mul(Lk, Li), mat_mul(Li, Lk)))
            out[(i, k)] = R
    return out


def mu_compatibility_verdict(mu: MuForm, *, seed=None) -> Verdict:
    verdicts = []
    for R in mu_compatibility_residuals(mu).values():
        for row in R:
            for e in row:
                verdicts.append(zero_verdict(e, seed=seed))
    return Verdict.combine(verdicts)


# ---------------------------------------------------------------------------
# difference terms


@dataclass
class DifferenceTerms:
    """Difference between a deformed and the standard prolongation.

    ``terms`` maps (component, multiindex) to the difference expression;
    the zero-order rows are identically zero.  For scalar forms the same
    terms are re-derived through the one-step recursion driven by the
    characteristic, and ``recursion_residuals`` records the discrepancy
    of the two routes per (multiindex, direction) edge."""

    terms: dict
    recursion_residuals: dict | None
    recursion_verdict: Verdict | None


def difference_terms(
    X: PointVectorField, mu: MuForm, n=None, *, path_check=False, seed=None
) -> DifferenceTerms:
    spec = X.spec
    n = spec.order if n is None else n
    if spec.q == 1 and mu.is_scalar:
        deformed = prolong_mu_scalar(X, mu, n, path_check=path_check, seed=seed)
    else:
        deformed = prolong_mu_vector(X, mu, n, path_check=path_check, seed=seed)
    standard = prolong_standard(X, n)
    terms = {}
    for J in spec.multi_indices(n):
        for a in range(spec.q):
            terms[(a, J)] = normalize(deformed.psi_at(a, J) - standard.psi_at(a, J))

    residuals = None
    verdict = None
    if spec.q == 1:
        # the scalar difference terms satisfy their own recursion:
        # F_{J,i} = (D_i + lambda_i) F_J + lambda_i D_J Q,  F_0 = 0
        from .symmetry import characteristic

        Q = characteristic(X)[0]
        lambdas = mu.lambdas
        residuals = {}
        verdicts = []
        for J in spec.multi_indices(n - 1):
            dq = total_derivative_path(Q, J, spec)
            for i in range(spec.p):
                lhs = terms[(0, J.inc(i))]
                rhs = expr_sum(
                    [
                        total_derivative(terms[(0, J)], i, spec),
                        Mul((lambdas[i], terms[(0, J)])),
                        Mul((lambdas[i], dq)),
                    ]
                )
                r = normalize(lhs - rhs)
                if r != ZERO:
                    residuals[(J, i)] = r
                verdicts.append(zero_verdict(r, seed=seed))
        verdict = Verdict.combine(verdicts)
    return DifferenceTerms(terms, residuals, verdict)
