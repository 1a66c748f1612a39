"""Differential equations in solved form and symmetry verdicts.

An equation system assigns to each dependent variable one leading
derivative of top order and a right-hand side that contains no leading
derivative or derivative thereof.  Restriction to the solution manifold
substitutes the leading coordinates and their derivative consequences,
innermost first, so it terminates by construction.

A field is a symmetry (standard, lambda, or mu kind) when the chosen
prolongation, applied as a derivation to each residual
``u^a_{J*} - f^a``, vanishes after restriction.  The commutator
characterizations pair the bracket of the prolonged field and a total
derivative against the contact forms; the bracket is oriented so that a
lambda-prolonged field pairs to ``+lambda (Y . theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EquationError, ProlongationError, RestrictionError
from .expr import (
    Const,
    Expr,
    Mul,
    Var,
    Verdict,
    ZERO,
    as_expr,
    expr_sum,
    free_variables,
    normalize,
    pdiff,
    substitute,
    zero_verdict,
)
from .jets import (
    JetCoordinate,
    JetSpec,
    JetVectorField,
    MultiIndex,
    MuForm,
    contact_form,
    interior_product,
    total_derivative,
    total_derivative_path,
    truncated_total_derivative,
)
from .prolong import (
    PointVectorField,
    difference_terms,
    prolong_lambda,
    prolong_mu_scalar,
    prolong_mu_vector,
    prolong_standard,
)


@dataclass(frozen=True)
class DifferentialEquation:
    """A determined system in solved form: one equation per dependent
    variable, each ``u^a_{J*} = f^a`` with ``|J*|`` equal to the jet
    order and ``f^a`` free of every leading coordinate and of all their
    derivatives."""

    spec: JetSpec
    equations: tuple

    def __post_init__(self):
        eqs = []
        seen = set()
        for coord, rhs in self.equations:
            if not isinstance(coord, JetCoordinate):
                coord = JetCoordinate(coord[0], MultiIndex(tuple(coord[1])))
            rhs = normalize(as_expr(rhs))
            if coord.index.order != self.spec.order:
                raise EquationError(
                    f"leading coordinate {coord.name(self.spec)} must have "
                    f"order {self.spec.order}"
                )
            if coord.a in seen:
                raise EquationError(
                    f"two equations for dependent variable "
                    f"{self.spec.dependent[coord.a]}"
                )
            seen.add(coord.a)
            eqs.append((coord, rhs))
        if len(eqs) != self.spec.q:
            raise EquationError("need exactly one equation per dependent variable")
        eqs.sort(key=lambda it: it[0].a)
        object.__setattr__(self, "equations", tuple(eqs))
        for _coord, rhs in self.equations:
            for name in free_variables(rhs):
                kind = self.spec.decode(name)
                if kind[0] == "jet" and self._is_leading_derived(kind[1], kind[2]):
                    raise EquationError(
                        f"right-hand side contains {name}, which is a leading "
                        "coordinate or a derivative of one"
                    )

    @classmethod
    def from_strings(cls, spec: JetSpec, mapping) -> "DifferentialEquation":
        """Build from ``{leading-coordinate-name: rhs-expression}``."""
        from .parsing import parse

        eqs = []
        for lead, rhs in mapping.items():
            kind = spec.decode(lead)
            if kind[0] != "jet":
                raise EquationError(f"{lead!r} is not a jet coordinate")
            rhs_expr = parse(rhs) if isinstance(rhs, str) else as_expr(rhs)
            eqs.append((JetCoordinate(kind[1], kind[2]), rhs_expr))
        return cls(spec, tuple(eqs))

    def leading(self, a: int) -> MultiIndex:
        return self.equations[a][0].index

    def rhs(self, a: int) -> Expr:
        return self.equations[a][1]

    def _is_leading_derived(self, a: int, J: MultiIndex) -> bool:
        return J.dominates(self.equations[a][0].index)


def characteristic(X: PointVectorField):
    """The q-vector ``phi^a - u^a_i xi^i`` measuring the vertical action."""
    spec = X.spec
    out = []
    for a in range(spec.q):
        parts = [X.phi[a]]
        for i in range(spec.p):
            parts.append(
                Mul((Const(-1), spec.jet_var(a, MultiIndex.zero(spec.p).inc(i)), X.xi[i]))
            )
        out.append(expr_sum(parts))
    return tuple(out)


def invariant_set_relations(X: PointVectorField, n=None):
    """All total derivatives of the characteristic up to order n-1; their
    common zero set is the invariant set of the field."""
    spec = X.spec
    n = spec.order if n is None else n
    Q = characteristic(X)
    out = []
    for J in spec.multi_indices(n - 1):
        for q in Q:
            out.append(total_derivative_path(q, J, spec))
    return out


# ---------------------------------------------------------------------------
# restriction to the solution manifold


def _closed_substitutions(eq: DifferentialEquation, depth: int):
    """Replacement map for all leading coordinates and their derivatives
    up to ``depth`` extra orders; built lowest order outward so every
    replacement is free of leading-derived coordinates."""
    spec = eq.spec
    closed = {}
    bindings = {}
    for a in range(spec.q):
        closed[(a, MultiIndex.zero(spec.p))] = eq.rhs(a)
        lead = eq.leading(a)
        bindings[spec.jet_name(a, lead)] = eq.rhs(a)
    for K in spec.multi_indices(depth, min_order=1):
        for a in range(spec.q):
            i = K.last_slot()
            base = closed[(a, K.dec(i))]
            raw = total_derivative(base, i, spec)
            cooked = substitute(raw, bindings)
            closed[(a, K)] = cooked
            lead = eq.leading(a)
            name = spec.jet_name(a, MultiIndex(
                tuple(l + k for l, k in zip(lead.counts, K.counts))
            ))
            bindings[name] = cooked
    return bindings


def restrict_to_solution_manifold(e, eq: DifferentialEquation, depth=None) -> Expr:
    """Substitute the equation and its derivative consequences into ``e``."""
    spec = eq.spec
    e = normalize(as_expr(e))
    max_order = -1
    for name in free_variables(e):
        kind = spec.decode(name)
        if kind[0] == "jet":
            max_order = max(max_order, kind[2].order)
    if depth is None:
        depth = max(0, max_order - spec.order)
    bindings = _closed_substitutions(eq, depth)
    out = substitute(e, bindings)
    for name in free_variables(out):
        kind = spec.decode(name)
        if kind[0] == "jet" and eq._is_leading_derived(kind[1], kind[2]):
            raise RestrictionError(
                f"{name} exceeds the substitution depth {depth}"
            )
    return out


# ---------------------------------------------------------------------------
# symmetry verdicts


@dataclass
class SymmetryResult:
    """Per-equation residuals of the tangency test, after restriction."""

    kind: str
    verdict: Verdict
    residuals: tuple
    equation_verdicts: tuple

    def __bool__(self):
        return self.verdict is Verdict.TRUE


def _prolong_by_kind(X, kind, n, lam=None, mu=None, path_check=False, seed=None):
    if kind == "standard":
        return prolong_standard(X, n)
    if kind == "lambda":
        if lam is None:
            raise ProlongationError("kind 'lambda' needs the deforming function")
        return prolong_lambda(X, lam, n)
    if kind == "mu":
        if mu is None:
            raise ProlongationError("kind 'mu' needs the deforming form")
        if mu.is_scalar:
            return prolong_mu_scalar(X, mu, n, path_check=path_check, seed=seed)
        return prolong_mu_vector(X, mu, n, path_check=path_check, seed=seed)
    raise ProlongationError(f"unknown symmetry kind {kind!r}")


def check_symmetry(
    X: PointVectorField,
    eq: DifferentialEquation,
    kind: str = "standard",
    *,
    lam=None,
    mu=None,
    path_check=False,
    seed=None,
) -> SymmetryResult:
    """Tangency of the chosen prolongation to the solution manifold.

    The prolonged field is applied as a derivation to each residual
    ``u^a_{J*} - f^a``; the result is restricted to the solution manifold
    and classified.  TRUE on every equation means symmetry; a PROBABLY
    verdict survives into the aggregate rather than upgrading to TRUE.
    """
    spec = eq.spec
    if X.spec != spec:
        raise EquationError("field and equation live on different jet spaces")
    Y = _prolong_by_kind(
        X, kind, spec.order, lam=lam, mu=mu, path_check=path_check, seed=seed
    )
    residuals = []
    verdicts = []
    for coord, rhs in eq.equations:
        raw = normalize(Y.psi_at(coord.a, coord.index) - Y.apply(rhs))
        restricted = restrict_to_solution_manifold(raw, eq)
        residuals.append(restricted)
        verdicts.append(zero_verdict(restricted, seed=seed))
    return SymmetryResult(
        kind, Verdict.combine(verdicts), tuple(residuals), tuple(verdicts)
    )


# ---------------------------------------------------------------------------
# commutator characterizations


def commutator_with_total_derivative(Y: JetVectorField, i: int) -> JetVectorField:
    """Components of the bracket of the truncated total derivative in
    direction i with Y, by action on the coordinate functions; oriented
    so that lambda-prolonged fields pair with contact forms to
    ``+lambda`` times the pairing of Y itself."""
    spec = Y.spec
    n = Y.order
    dhat = truncated_total_derivative(spec, i, order=n)

    def bracket(v):
        return normalize(Y.apply(dhat.apply(v)) - dhat.apply(Y.apply(v)))

    xi = tuple(bracket(spec.independent_var(j)) for j in range(spec.p))
    psi = {}
    for J in spec.multi_indices(n):
        for a in range(spec.q):
            psi[(a, J)] = bracket(spec.jet_var(a, J))
    return JetVectorField(spec, xi, psi, order=n)


@dataclass
class CharacterizationResult:
    verdict: Verdict
    residuals: dict

    def __bool__(self):
        return self.verdict is Verdict.TRUE


def characterization_check(
    Y: JetVectorField, kind: str, *, lam=None, seed=None
) -> CharacterizationResult:
    """Pairing test for prolonged fields: for every contact generator,
    the bracket with each total derivative pairs to ``lambda`` times the
    field's own pairing (``lambda = 0`` for the standard kind)."""
    spec = Y.spec.with_order(Y.order)
    if kind == "standard":
        lam = Const(0)
        directions = range(spec.p)
    elif kind == "lambda":
        if spec.p != 1:
            raise ProlongationError("the lambda characterization needs p = 1")
        if lam is None:
            raise ProlongationError("kind 'lambda' needs the deforming function")
        lam = normalize(as_expr(lam))
        directions = (0,)
    else:
        raise ProlongationError(f"unknown characterization kind {kind!r}")
    residuals = {}
    verdicts = []
    for i in directions:
        C = commutator_with_total_derivative(Y, i)
        for J in spec.multi_indices(spec.order - 1):
            for a in range(spec.q):
                theta = contact_form(a, J, spec)
                lhs = interior_product(C, theta)
                rhs = Mul((lam, interior_product(Y, theta)))
                r = normalize(lhs - rhs)
                if r != ZERO:
                    residuals[(i, a, J)] = r
                verdicts.append(zero_verdict(r, seed=seed))
    return CharacterizationResult(Verdict.combine(verdicts), residuals)


# ---------------------------------------------------------------------------
# coincidence on the invariant set


@dataclass
class CoincidenceResult:
    """Whether the deformed prolongation agrees with the standard one on
    the field's invariant set.  ``vacuous`` marks an empty invariant set
    (reported as true but flagged); ``unverifiable`` marks relations that
    could not be solved for a jet coordinate."""

    verdict: Verdict
    vacuous: bool
    unverifiable: bool
    residuals: dict
    solved: dict

    def __bool__(self):
        return self.verdict is Verdict.TRUE and not self.vacuous


def _try_solve_linear(r, name, *, seed=None):
    """Solve ``r = 0`` for ``name`` when r is affine-linear in it with a
    provably nonzero coefficient; returns the solution or None."""
    A = pdiff(r, name)
    if name in free_variables(A):
        return None
    if zero_verdict(A, seed=seed) is not Verdict.FALSE:
        return None  # coefficient not provably nonzero
    B = normalize(r - Mul((A, Var(name))))
    if name in free_variables(B):
        return None
    sol = normalize(Mul((Const(-1), B)) / A)
    if name in free_variables(sol):
        return None
    return sol


def coincide_on_invariant_set(
    X: PointVectorField, mu: MuForm, n=None, *, path_check=False, seed=None
) -> CoincidenceResult:
    """Substitute the solved invariant-set relations into every difference
    term and verify that all of them vanish."""
    spec = X.spec
    n = spec.order if n is None else n
    diff = difference_terms(X, mu, n, path_check=path_check, seed=seed)
    relations = invariant_set_relations(X, n)

    solved = {}
    vacuous = False
    unverifiable = False

    def apply_solutions(e):
        return substitute(e, solved) if solved else normalize(e)

    for rel in relations:
        r = apply_solutions(rel)
        if r == ZERO:
            continue
        if r.__class__ is Const:
            vacuous = True  # a nonzero constant relation: empty invariant set
            break
        jet_names = sorted(
            (name for name in free_variables(r) if spec.decode(name)[0] == "jet"),
            key=lambda nm: (-spec.decode(nm)[2].order, nm),
        )
        if not jet_names:
            unverifiable = True
            continue
        top_order = spec.decode(jet_names[0])[2].order
        hit = None
        for name in jet_names:
            if spec.decode(name)[2].order != top_order:
                break
            sol = _try_solve_linear(r, name, seed=seed)
            if sol is not None:
                hit = (name, sol)
                break
        if hit is None:
            unverifiable = True
            continue
        name, sol = hit
        solved = {k: substitute(v, {name: sol}) for k, v in solved.items()}
        solved[name] = sol

    if vacuous:
        return CoincidenceResult(Verdict.TRUE, True, False, {}, dict(solved))

    residuals = {}
    verdicts = []
    for key, term in diff.terms.items():
        rest = apply_solutions(term)
        v = zero_verdict(rest, seed=seed)
        verdicts.append(v)
        if rest != ZERO:
            residuals[key] = rest
    verdict = Verdict.combine(verdicts)
    if verdict is Verdict.TRUE:
        unverifiable = False  # the solved subset was enough
    return CoincidenceResult(verdict, False, unverifiable, residuals, dict(solved))
