"""Exact rational linear programming with checkable certificates.

Problems are ``minimize c·x`` over free variables ``x`` subject to rows
``a·x (>=|<=|=) b``.  Sign restrictions are ordinary rows.  Every answer
comes with a certificate that :func:`verify_certificate` re-checks from
scratch, with no tolerance:

* optimal     -- primal point x and multipliers y with A^T y = c, sign
                 conditions on y, and c·x = b·y;
* unbounded   -- feasible point x and ray d with A d (>=|<=|=) 0, c·d < 0;
* infeasible  -- Farkas multipliers y with A^T y = 0, sign conditions, b·y > 0.

Sign conditions on a multiplier: ``>=`` rows need y >= 0, ``<=`` rows y <= 0,
``=`` rows are free.

The solver is a dense two-phase tableau simplex with Bland's rule.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError
from .rational import Q, fmt

SENSES = (">=", "<=", "=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[str, Fraction], ...]
    sense: str
    rhs: Fraction
    name: str = ""

    @classmethod
    def make(cls, coeffs: Mapping[str, object], sense: str, rhs=0, name: str = ""):
        if sense not in SENSES:
            raise InputError(f"unknown constraint sense {sense!r}")
        items = tuple((v, Q(c)) for v, c in coeffs.items() if Q(c) != 0)
        return cls(items, sense, Q(rhs), name)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def lhs(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Q(point.get(v, 0)) for v, c in self.coeffs), Fraction(0))

    def satisfied_by(self, point) -> bool:
        return _holds(self.lhs(point), self.sense, self.rhs)

    def scaled(self, k) -> "Constraint":
        k = Q(k)
        if k <= 0:
            raise InputError("constraints may only be rescaled by a positive factor")
        return Constraint(tuple((v, k * c) for v, c in self.coeffs), self.sense, k * self.rhs, self.name)


def _holds(lhs, sense, rhs) -> bool:
    if sense == ">=":
        return lhs >= rhs
    if sense == "<=":
        return lhs <= rhs
    return lhs == rhs


@dataclass(frozen=True)
class ExactLP:
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    objective: tuple[tuple[str, Fraction], ...]
    name: str = ""

    def __post_init__(self):
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise InputError("duplicate variable names")
        for con in self.constraints:
            for v, _ in con.coeffs:
                if v not in declared:
                    raise InputError(f"constraint {con.name or '?'} uses undeclared variable {v!r}")
        for v, _ in self.objective:
            if v not in declared:
                raise InputError(f"objective uses undeclared variable {v!r}")
        names = [c.name for c in self.constraints if c.name]
        if len(set(names)) != len(names):
            raise InputError("duplicate constraint names")

    @classmethod
    def make(cls, variables: Sequence[str], constraints: Sequence[Constraint], objective: Mapping[str, object], name=""):
        obj = tuple((v, Q(c)) for v, c in objective.items() if Q(c) != 0)
        cons = tuple(c if c.name else Constraint(c.coeffs, c.sense, c.rhs, f"c{i}") for i, c in enumerate(constraints))
        return cls(tuple(variables), cons, obj, name)

    def objective_dict(self) -> dict[str, Fraction]:
        return dict(self.objective)

    def value(self, point: Mapping[str, object]) -> Fraction:
        return sum((c * Q(point.get(v, 0)) for v, c in self.objective), Fraction(0))

    def negated(self) -> "ExactLP":
        """Same feasible region, objective sign flipped (maximize the old one)."""
        return ExactLP(self.variables, self.constraints, tuple((v, -c) for v, c in self.objective), self.name)

    def scaled(self, k) -> "ExactLP":
        k = Q(k)
        if k <= 0:
            raise InputError("rescaling factor must be positive")
        return ExactLP(
            self.variables,
            tuple(c.scaled(k) for c in self.constraints),
            tuple((v, k * c) for v, c in self.objective),
            self.name,
        )

    def with_constraint(self, con: Constraint) -> "ExactLP":
        if not con.name:
            con = Constraint(con.coeffs, con.sense, con.rhs, f"c{len(self.constraints)}")
        return ExactLP(self.variables, self.constraints + (con,), self.objective, self.name)

    # -- line-oriented text format --------------------------------------------
    def to_text(self) -> str:
        lines = [f"# {self.name}" if self.name else "# exact LP"]
        lines.append("vars " + " ".join(self.variables))
        lines.append("minimize " + _fmt_linear(self.objective))
        for con in self.constraints:
            lines.append(f"{con.name}: {_fmt_linear(con.coeffs)} {con.sense} {fmt(con.rhs)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExactLP":
        variables, objective, cons, name = None, None, [], ""
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if lineno == 1 and line[1:].strip() != "exact LP":
                    name = line[1:].strip()
                continue
            if line.startswith("vars"):
                variables = tuple(line.split()[1:])
            elif line.startswith("minimize"):
                objective = _parse_linear(line[len("minimize"):], lineno)
            else:
                label, sep, body = line.partition(":")
                if not sep:
                    raise InputError(f"line {lineno}: expected 'name: ...'")
                for sense in SENSES:
                    token = f" {sense} "
                    if token in body:
                        lhs, rhs = body.rsplit(token, 1)
                        break
                else:
                    raise InputError(f"line {lineno}: no constraint sense")
                coeffs = _parse_linear(lhs, lineno)
                cons.append(Constraint(tuple(coeffs.items()), sense, Q(rhs.strip()), label.strip()))
        if variables is None or objective is None:
            raise InputError("LP text needs 'vars' and 'minimize' lines")
        return cls(variables, tuple(cons), tuple(objective.items()), name)


def _fmt_linear(terms) -> str:
    items = list(terms.items() if isinstance(terms, Mapping) else terms)
    if not items:
        return "0"
    return " ".join(f"{'+' if c >= 0 else '-'}{fmt(abs(c))}*{v}" for v, c in items)


def _parse_linear(text: str, lineno: int) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for tok in text.split():
        if tok == "0":
            continue
        coef, star, var = tok.partition("*")
        if not star or coef[:1] not in "+-":
            raise InputError(f"line {lineno}: bad term {tok!r}")
        out[var] = out.get(var, Fraction(0)) + Q(coef)
    return out


# -- certificates ----------------------------------------------------------------


@dataclass
class Certificate:
    status: str  # "optimal" | "unbounded" | "infeasible"
    optimal_value: Fraction | None = None
    primal_point: dict[str, Fraction] = field(default_factory=dict)
    dual_multipliers: dict[str, Fraction] = field(default_factory=dict)
    ray: dict[str, Fraction] = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {"status": self.status}
        if self.optimal_value is not None:
            doc["optimal_value"] = fmt(self.optimal_value)
        for key in ("primal_point", "dual_multipliers", "ray"):
            vals = getattr(self, key)
            if vals:
                doc[key] = {k: fmt(v) for k, v in vals.items()}
        return doc

    @classmethod
    def from_json(cls, doc) -> "Certificate":
        if isinstance(doc, str):
            doc = json.loads(doc)
        conv = lambda d: {k: Q(v) for k, v in (d or {}).items()}  # noqa: E731
        val = doc.get("optimal_value")
        return cls(
            doc["status"],
            None if val is None else Q(val),
            conv(doc.get("primal_point")),
            conv(doc.get("dual_multipliers")),
            conv(doc.get("ray")),
        )

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class Verdict:
    ok: bool
    violations: list[str]
    primal_feasible: bool | None = None

    def __bool__(self):
        return self.ok


def _sign_ok(sense: str, y: Fraction) -> bool:
    if sense == ">=":
        return y >= 0
    if sense == "<=":
        return y <= 0
    return True


def verify_certificate(lp: ExactLP, cert: Certificate) -> Verdict:
    """Check a certificate exactly. Returns a falsy Verdict listing what failed."""
    bad: list[str] = []
    names = [c.name for c in lp.constraints]
    extra = set(cert.dual_multipliers) - set(names)
    if extra:
        bad.append(f"multipliers for unknown constraints: {sorted(extra)}")
    unknown = (set(cert.primal_point) | set(cert.ray)) - set(lp.variables)
    if unknown:
        bad.append(f"values for undeclared variables: {sorted(unknown)}")

    feasible = None
    if cert.status in ("optimal", "unbounded"):
        feasible = True
        for con in lp.constraints:
            if not con.satisfied_by(cert.primal_point):
                feasible = False
                bad.append(f"primal infeasible: {con.name}")

    def dual_checks(target: Mapping[str, Fraction]):
        for con in lp.constraints:
            y = cert.dual_multipliers.get(con.name, Fraction(0))
            if not _sign_ok(con.sense, y):
                bad.append(f"dual sign: multiplier of {con.name} ({con.sense}) is {fmt(y)}")
        for v in lp.variables:
            col = sum(
                (cert.dual_multipliers.get(con.name, Fraction(0)) * con.as_dict().get(v, Fraction(0)) for con in lp.constraints),
                Fraction(0),
            )
            if col != target.get(v, Fraction(0)):
                bad.append(f"dual stationarity fails on {v}: {fmt(col)} != {fmt(target.get(v, 0))}")

    def dual_value():
        return sum((cert.dual_multipliers.get(c.name, Fraction(0)) * c.rhs for c in lp.constraints), Fraction(0))

    if cert.status == "optimal":
        dual_checks(lp.objective_dict())
        primal = lp.value(cert.primal_point)
        if cert.optimal_value is None or primal != cert.optimal_value:
            bad.append("stated optimum differs from objective at primal point")
        if primal != dual_value():
            bad.append(f"strong duality fails: primal {fmt(primal)} vs dual {fmt(dual_value())}")
    elif cert.status == "unbounded":
        for con in lp.constraints:
            d = con.lhs(cert.ray)
            if not _holds(d, con.sense, 0):
                bad.append(f"ray leaves feasible region through {con.name}")
        if lp.value(cert.ray) >= 0:
            bad.append("ray does not decrease the objective")
    elif cert.status == "infeasible":
        dual_checks({})
        if dual_value() <= 0:
            bad.append("Farkas multipliers do not give a positive right-hand side")
    else:
        bad.append(f"unknown certificate status {cert.status!r}")
    return Verdict(not bad, bad, feasible)


# -- solver ------------------------------------------------------------------------


class _Tableau:
    """Dense tableau over Fractions.

    Columns: structural (x+ / x- per free variable, then one slack per
    inequality), then one artificial per row.  Artificial columns are kept
    to read off B^{-1}.
    """

    def __init__(self, A, b, n_struct):
        self.m = len(A)
        self.n_struct = n_struct
        self.rows = []
        for i, (row, rhs) in enumerate(zip(A, b)):
            art = [Fraction(0)] * self.m
            art[i] = Fraction(1)
            self.rows.append(list(row) + art + [rhs])
        self.basis = [n_struct + i for i in range(self.m)]
        self.width = n_struct + self.m

    def pivot(self, r, c):
        prow = self.rows[r]
        pv = prow[c]
        if pv != 1:
            prow[:] = [x / pv for x in prow]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                row[:] = [x - f * y for x, y in zip(row, prow)]
        self.basis[r] = c

    def reduced_costs(self, cost):
        cb = [cost[j] for j in self.basis]
        out = []
        for j in range(self.width):
            z = sum((cb[i] * self.rows[i][j] for i in range(self.m) if cb[i]), Fraction(0))
            out.append(cost[j] - z)
        return out

    def run(self, cost, allowed):
        """Bland's rule. Returns ("optimal", None) or ("unbounded", column)."""
        while True:
            rc = self.reduced_costs(cost)
            enter = next((j for j in range(self.width) if allowed[j] and rc[j] < 0), None)
            if enter is None:
                return "optimal", None
            best, leave = None, None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded", enter
            self.pivot(leave, enter)

    def values(self):
        x = [Fraction(0)] * self.width
        for i, j in enumerate(self.basis):
            x[j] = self.rows[i][-1]
        return x

    def duals(self, cost):
        # y = c_B B^{-1}; B^{-1} sits in the artificial columns
        cb = [cost[j] for j in self.basis]
        return [
            sum((cb[i] * self.rows[i][self.n_struct + k] for i in range(self.m) if cb[i]), Fraction(0))
            for k in range(self.m)
        ]


def minimize(lp: ExactLP) -> Certificate:
    """Solve exactly; the returned certificate always passes verify_certificate."""
    nv = len(lp.variables)
    col_of = {v: i for i, v in enumerate(lp.variables)}
    ineq = [i for i, c in enumerate(lp.constraints) if c.sense != "="]
    slack_col = {i: 2 * nv + k for k, i in enumerate(ineq)}
    n_struct = 2 * nv + len(ineq)

    A, b, flipped = [], [], []
    for i, con in enumerate(lp.constraints):
        row = [Fraction(0)] * n_struct
        for v, c in con.coeffs:
            row[2 * col_of[v]] += c
            row[2 * col_of[v] + 1] -= c
        if con.sense == ">=":
            row[slack_col[i]] = Fraction(-1)
        elif con.sense == "<=":
            row[slack_col[i]] = Fraction(1)
        rhs = con.rhs
        flip = rhs < 0
        if flip:
            row = [-x for x in row]
            rhs = -rhs
        A.append(row)
        b.append(rhs)
        flipped.append(flip)

    tab = _Tableau(A, b, n_struct)
    m = tab.m
    width = tab.width

    def to_original(y_std):
        return {con.name: (-y if flipped[i] else y) for i, (con, y) in enumerate(zip(lp.constraints, y_std))}

    def to_point(z):
        return {v: z[2 * k] - z[2 * k + 1] for k, v in enumerate(lp.variables)}

    # phase I: minimize the sum of artificials
    cost1 = [Fraction(0)] * n_struct + [Fraction(1)] * m
    tab.run(cost1, [True] * width)
    infeas = sum((tab.values()[n_struct + k] for k in range(m)), Fraction(0))
    if infeas > 0:
        y = tab.duals(cost1)
        return Certificate("infeasible", dual_multipliers=to_original(y))

    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if tab.basis[r] >= n_struct:
            c = next((j for j in range(n_struct) if tab.rows[r][j] != 0), None)
            if c is not None:
                tab.pivot(r, c)

    cost2 = [Fraction(0)] * width
    for v, c in lp.objective:
        cost2[2 * col_of[v]] += c
        cost2[2 * col_of[v] + 1] -= c
    allowed = [True] * n_struct + [False] * m
    status, enter = tab.run(cost2, allowed)
    z = tab.values()
    point = to_point(z)
    if status == "unbounded":
        d = [Fraction(0)] * width
        d[enter] = Fraction(1)
        for i, j in enumerate(tab.basis):
            d[j] = -tab.rows[i][enter]
        return Certificate("unbounded", primal_point=point, ray=to_point(d))
    y = tab.duals(cost2)
    return Certificate("optimal", lp.value(point), point, to_original(y))
