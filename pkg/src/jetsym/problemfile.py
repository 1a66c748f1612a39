"""Declarative problem files.

Plain-text, line oriented, diff friendly.  Sections open with a
bracketed header and hold ``key = expression`` lines:

* ``[jet]`` with ``independent``, ``dependent`` (comma separated) and
  ``order``;
* ``[field NAME]`` with ``xi <independent> = expr``,
  ``phi <dependent> = expr`` and optional ``generalized = true``;
* ``[mu NAME]`` with scalar entries ``<independent> = expr`` or matrix
  entries ``<independent> <dep-row> <dep-col> = expr``;
* ``[gauge NAME]`` with ``<dep-row> <dep-col> = expr`` entries and
  optional ``inverse <dep-row> <dep-col> = expr`` lines;
* ``[equation NAME]`` with one ``leading-coordinate = expr`` line per
  dependent variable;
* ``[task KIND [ID]]`` naming one operation (check-symmetry, prolong,
  check-compat, potential, darboux, gauge-check, coincide) and its
  arguments.

Comments run from ``#`` to the end of the line.  Missing mu/gauge
entries are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import JetsymError, ParseError, ProblemFileError
from .expr import Const
from .gauge import GaugeFunction
from .jets import JetSpec, MuForm
from .parsing import parse
from .prolong import PointVectorField
from .symmetry import DifferentialEquation

TASK_KINDS = (
    "check-symmetry",
    "prolong",
    "check-compat",
    "potential",
    "darboux",
    "gauge-check",
    "coincide",
)


@dataclass
class TaskDecl:
    kind: str
    task_id: str
    args: dict
    line: int


@dataclass
class ProblemFile:
    spec: JetSpec
    fields: dict
    mus: dict
    gauges: dict
    equations: dict
    tasks: list = field(default_factory=list)

    def field_named(self, name, line=None) -> PointVectorField:
        if name not in self.fields:
            raise ProblemFileError(f"undeclared field {name!r}", line)
        return self.fields[name]

    def mu_named(self, name, line=None) -> MuForm:
        if name not in self.mus:
            raise ProblemFileError(f"undeclared mu form {name!r}", line)
        return self.mus[name]

    def gauge_named(self, name, line=None) -> GaugeFunction:
        if name not in self.gauges:
            raise ProblemFileError(f"undeclared gauge function {name!r}", line)
        return self.gauges[name]

    def equation_named(self, name, line=None) -> DifferentialEquation:
        if name not in self.equations:
            raise ProblemFileError(f"undeclared equation {name!r}", line)
        return self.equations[name]


def _strip_comment(line):
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_expr(text, line_no):
    try:
        return parse(text)
    except ParseError as err:
        raise ProblemFileError(f"bad expression {text.strip()!r}: {err}", line_no)


def _split_sections(text):
    sections = []
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ProblemFileError("unterminated section header", line_no)
            header = line[1:-1].split()
            if not header:
                raise ProblemFileError("empty section header", line_no)
            current = (header, line_no, [])
            sections.append(current)
            continue
        if current is None:
            raise ProblemFileError("content before the first section header", line_no)
        if "=" not in line:
            raise ProblemFileError(f"expected 'key = value', got {line!r}", line_no)
        key, _eq, value = line.partition("=")
        current[2].append((key.strip(), value.strip(), line_no))
    return sections


def _build_jet(entries, line_no):
    values = {}
    for key, value, ln in entries:
        if key in values:
            raise ProblemFileError(f"duplicate key {key!r}", ln)
        values[key] = (value, ln)
    try:
        independent = tuple(
            n.strip() for n in values["independent"][0].replace(",", " ").split()
        )
        dependent = tuple(
            n.strip() for n in values["dependent"][0].replace(",", " ").split()
        )
        order = int(values["order"][0])
    except KeyError as missing:
        raise ProblemFileError(
            f"[jet] needs independent, dependent and order ({missing} missing)",
            line_no,
        )
    except ValueError:
        raise ProblemFileError("order must be an integer", values["order"][1])
    try:
        return JetSpec(independent, dependent, order)
    except JetsymError as err:
        raise ProblemFileError(str(err), line_no)


def _build_field(spec, entries, line_no):
    xi = {n: Const(0) for n in spec.independent}
    phi = {n: Const(0) for n in spec.dependent}
    generalized = False
    for key, value, ln in entries:
        parts = key.split()
        if parts == ["generalized"]:
            generalized = value.lower() in ("true", "yes", "1")
            continue
        if len(parts) != 2 or parts[0] not in ("xi", "phi"):
            raise ProblemFileError(
                f"field entries are 'xi <independent>' or 'phi <dependent>', got {key!r}",
                ln,
            )
        tag, name = parts
        target = xi if tag == "xi" else phi
        if name not in target:
            raise ProblemFileError(f"unknown variable {name!r} in field entry", ln)
        target[name] = _parse_expr(value, ln)
    try:
        return PointVectorField(
            spec,
            tuple(xi[n] for n in spec.independent),
            tuple(phi[n] for n in spec.dependent),
            generalized=generalized,
        )
    except JetsymError as err:
        raise ProblemFileError(str(err), line_no)


def _build_mu(spec, entries, line_no):
    scalar_entries = {}
    matrix_entries = {}
    for key, value, ln in entries:
        parts = key.split()
        if len(parts) == 1:
            scalar_entries[parts[0]] = (_parse_expr(value, ln), ln)
        elif len(parts) == 3:
            matrix_entries[tuple(parts)] = (_parse_expr(value, ln), ln)
        else:
            raise ProblemFileError(
                "mu entries are '<independent> = expr' (scalar) or "
                f"'<independent> <dep> <dep> = expr' (matrix), got {key!r}",
                ln,
            )
    if scalar_entries and matrix_entries:
        raise ProblemFileError(
            "a mu section must be all scalar or all matrix entries", line_no
        )
    if scalar_entries:
        if spec.q != 1:
            raise ProblemFileError(
                "scalar mu entries need exactly one dependent variable", line_no
            )
        lambdas = []
        for n in spec.independent:
            e, _ln = scalar_entries.pop(n, (Const(0), None))
            lambdas.append(e)
        if scalar_entries:
            bad = next(iter(scalar_entries))
            raise ProblemFileError(f"unknown independent name {bad!r} in mu entry",
                                   scalar_entries[bad][1])
        return MuForm.scalar(spec, lambdas)
    mats = [
        [[Const(0) for _ in range(spec.q)] for _ in range(spec.q)]
        for _ in range(spec.p)
    ]
    for (ind, row, col), (e, ln) in matrix_entries.items():
        if ind not in spec.independent:
            raise ProblemFileError(f"unknown independent name {ind!r}", ln)
        if row not in spec.dependent or col not in spec.dependent:
            raise ProblemFileError(f"unknown dependent name in {ind} {row} {col}", ln)
        mats[spec.independent.index(ind)][spec.dependent.index(row)][
            spec.dependent.index(col)
        ] = e
    return MuForm(spec, [tuple(tuple(r) for r in M) for M in mats])


def _build_gauge(spec, entries, line_no):
    direct = [[Const(1 if a == b else 0) for b in range(spec.q)] for a in range(spec.q)]
    inverse = [[Const(1 if a == b else 0) for b in range(spec.q)] for a in range(spec.q)]
    has_inverse = False
    for key, value, ln in entries:
        parts = key.split()
        target = direct
        if parts and parts[0] == "inverse":
            has_inverse = True
            target = inverse
            parts = parts[1:]
        if len(parts) != 2:
            raise ProblemFileError(
                f"gauge entries are '<dep> <dep> = expr', got {key!r}", ln
            )
        row, col = parts
        if row not in spec.dependent or col not in spec.dependent:
            raise ProblemFileError(f"unknown dependent name in {key!r}", ln)
        target[spec.dependent.index(row)][spec.dependent.index(col)] = _parse_expr(
            value, ln
        )
    try:
        return GaugeFunction(
            spec,
            tuple(tuple(r) for r in direct),
            inverse=tuple(tuple(r) for r in inverse) if has_inverse else None,
        )
    except JetsymError as err:
        raise ProblemFileError(str(err), line_no)


def _build_equation(spec, entries, line_no):
    mapping = {}
    for key, value, ln in entries:
        if key in mapping:
            raise ProblemFileError(f"duplicate leading coordinate {key!r}", ln)
        mapping[key] = _parse_expr(value, ln)
    try:
        return DifferentialEquation.from_strings(spec, mapping)
    except JetsymError as err:
        raise ProblemFileError(str(err), line_no)


def load_problem(text: str) -> ProblemFile:
    """Parse and resolve a problem file; all names are validated here."""
    sections = _split_sections(text)
    spec = None
    jets = [s for s in sections if s[0][0] == "jet"]
    if len(jets) != 1:
        raise ProblemFileError("need exactly one [jet] section",
                               jets[1][1] if len(jets) > 1 else None)
    spec = _build_jet(jets[0][2], jets[0][1])

    problem = ProblemFile(spec, {}, {}, {}, {})
    counter = 0
    for header, line_no, entries in sections:
        kind = header[0]
        if kind == "jet":
            continue
        if kind in ("field", "mu", "gauge", "equation"):
            if len(header) != 2:
                raise ProblemFileError(f"[{kind}] needs exactly one name", line_no)
            name = header[1]
            table = {
                "field": problem.fields,
                "mu": problem.mus,
                "gauge": problem.gauges,
                "equation": problem.equations,
            }[kind]
            if name in table:
                raise ProblemFileError(f"duplicate {kind} name {name!r}", line_no)
            builder = {
                "field": _build_field,
                "mu": _build_mu,
                "gauge": _build_gauge,
                "equation": _build_equation,
            }[kind]
            table[name] = builder(spec, entries, line_no)
            continue
        if kind == "task":
            if len(header) < 2 or header[1] not in TASK_KINDS:
                raise ProblemFileError(
                    f"unknown task kind {' '.join(header[1:2]) or '?'!r}; "
                    f"expected one of {', '.join(TASK_KINDS)}",
                    line_no,
                )
            counter += 1
            task_id = header[2] if len(header) > 2 else f"task-{counter}"
            args = {}
            for key, value, ln in entries:
                if key == "id":
                    task_id = value
                    continue
                args[key] = (value, ln)
            problem.tasks.append(TaskDecl(header[1], task_id, args, line_no))
            continue
        raise ProblemFileError(f"unknown section kind {kind!r}", line_no)
    return problem
