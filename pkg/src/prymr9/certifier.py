"""The non-pseudo-effectivity argument for K on the genus-9 Prym moduli space.

A component D' of the Brill-Noether divisor is written

    D' = a·lambda - b0p·delta0' - b0pp·delta0'' - b0ram·delta0ram - b1·delta1 - ...

and the test curves constrain (a, b0p, b0pp, b0ram, b1).  Minimizing R·D'
over that cone is an exact LP; its optimum 0 together with R·K = -1 rules out
K = t·D' + M with t >= 0 and R·M >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .divisor import D0P, D0PP, D0RAM, LAMBDA, CurveClass, canonical_class, curve_from_low, pair
from .errors import ComputationError, InputError
from .lp import Certificate, Constraint, ExactLP, minimize, verify_certificate
from .pencils import a0pp_pairing, k3_pencil_A, nikulin_pencil, pencil_R_intersections
from .rational import Q, fmt

VARIABLES = ("a", "b0p", "b0pp", "b0ram", "b1")
GENUS = 9

# Hypotheses imported from geometry; the certificate never proves these.
AXIOMS = {
    "dagger": "every member of the pencil R is irreducible and at most 1-nodal along some component D'",
    "R-moving": "R is a moving curve in the component D', so R·M >= 0 for M not containing D'",
    "A-sweeping": "A covers the moduli space, hence meets every effective divisor non-negatively",
    "Xi-disjoint": "a general Nikulin pencil misses the Brill-Noether divisor",
    "A0pp-sweeping": "A0'' sweeps Delta0'', so A0''·D' >= 0 for D' != Delta0''",
    "delta1-ruling": "a ruling of Delta1 meets D' non-negatively, so b1 >= 0",
    "lambda-big-nef": "lambda is big and nef, so a >= 0",
    "BDPP": "a projective variety whose canonical class is not pseudo-effective is uniruled",
}


def pairing_form(curve: CurveClass) -> dict[str, Fraction]:
    """Linear form in the unknowns giving curve·D'."""
    return {
        "a": curve[LAMBDA],
        "b0p": -curve[D0P],
        "b0pp": -curve[D0PP],
        "b0ram": -curve[D0RAM],
        "b1": -curve["delta1"],
    }


def build_constraints(g: int = GENUS, R: CurveClass = None) -> ExactLP:
    if g != GENUS:
        raise InputError(f"the constraint system is only known for genus 9, got {g}")
    R = R or pencil_R_intersections()
    xi = pairing_form(nikulin_pencil(g))
    A = pairing_form(k3_pencil_A(g))
    a0pp = {"b0pp": a0pp_pairing(g, 1, 0), "b1": a0pp_pairing(g, 0, 1)}
    cons = [
        Constraint.make(xi, "=", 0, "xi_disjoint"),
        Constraint.make(A, ">=", 0, "A_sweeping"),
        Constraint.make(a0pp, ">=", 0, "A0pp_sweeping"),
        Constraint.make({"b1": 1}, ">=", 0, "b1_nonneg"),
        Constraint.make({"a": 1}, ">=", 0, "a_nonneg"),
    ]
    return ExactLP.make(VARIABLES, cons, pairing_form(R), name="min R.D' over admissible components")


def eliminate_b0ram(lp: ExactLP) -> ExactLP:
    """Substitute b0ram out using the Nikulin equality and drop that row."""
    eq = next(c for c in lp.constraints if c.name == "xi_disjoint")
    eqd = eq.as_dict()
    k = eqd["b0ram"]
    # b0ram = (rhs - sum_{v != b0ram} c_v v) / k
    sub = {v: -c / k for v, c in eqd.items() if v != "b0ram"}
    const = eq.rhs / k

    def substitute(coeffs: dict[str, Fraction]):
        out = {v: c for v, c in coeffs.items() if v != "b0ram"}
        c = coeffs.get("b0ram", Fraction(0))
        for v, s in sub.items():
            out[v] = out.get(v, Fraction(0)) + c * s
        return out, c * const

    variables = tuple(v for v in lp.variables if v != "b0ram")
    cons = []
    for con in lp.constraints:
        if con is eq:
            continue
        coeffs, shift = substitute(con.as_dict())
        cons.append(Constraint.make(coeffs, con.sense, con.rhs - shift, con.name))
    obj, shift = substitute(lp.objective_dict())
    if shift:
        raise ComputationError("objective picked up a constant under substitution")
    return ExactLP.make(variables, cons, obj, name=lp.name + " (b0ram eliminated)")


def interior_witness() -> dict[str, Fraction]:
    """A point satisfying every inequality strictly and the equality exactly."""
    a, b0p = Fraction(1), Fraction(1)
    return {"a": a, "b0p": b0p, "b0pp": Fraction(1), "b0ram": (10 * a - 56 * b0p) / 8, "b1": Fraction(1)}


def sweeping_bound(lp: ExactLP = None) -> dict[str, Fraction]:
    """Bound on a/b0p implied by the A-constraint once b0ram is eliminated and b0pp >= 0.

    Reported next to the rounder 36/5 used as an intermediate step in print.
    """
    lp = lp or build_constraints()
    red = eliminate_b0ram(lp)
    A = next(c for c in red.constraints if c.name == "A_sweeping").as_dict()
    # A: ca·a + cp·b0p - ... >= 0 with ca < 0 < cp  =>  a/b0p <= cp/(-ca)
    exact = A["b0p"] / -A["a"]
    printed = Fraction(36, 5)
    # the objective 9*b0p - a only needs a/b0p <= 9
    return {"exact": exact, "printed": printed, "printed_is_stronger": printed < exact, "needed": Fraction(9)}


@dataclass
class CertificationReport:
    established: bool
    r_dot_k: Fraction
    lp_status: str
    lp_min: Fraction | None
    certificate: Certificate
    certificate_ok: bool
    reduced_min: Fraction | None
    steps: list[dict] = field(default_factory=list)
    axioms: dict[str, str] = field(default_factory=dict)
    omitted_variables: str = ""
    sweeping_bound: dict = field(default_factory=dict)

    @property
    def conclusion(self) -> str:
        if self.established:
            return (
                "K_R9 not pseudo-effective; R9 uniruled "
                "(modulo [BDPP], condition (dagger), sweeping hypotheses)"
            )
        return "no contradiction derived"

    def to_json(self) -> dict:
        return {
            "established": self.established,
            "conclusion": self.conclusion,
            "R.K": fmt(self.r_dot_k),
            "lp_status": self.lp_status,
            "lp_min": None if self.lp_min is None else fmt(self.lp_min),
            "reduced_min": None if self.reduced_min is None else fmt(self.reduced_min),
            "certificate": self.certificate.to_json(),
            "certificate_ok": self.certificate_ok,
            "certificate_digest": self.certificate.digest(),
            "steps": self.steps,
            "axioms": self.axioms,
            "omitted_variables": self.omitted_variables,
            "sweeping_bound": {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in self.sweeping_bound.items()},
        }


def _perturbed_R(perturb: dict | None) -> CurveClass:
    R = pencil_R_intersections()
    if not perturb:
        return R
    vals = R.as_dict()
    for key, value in perturb.items():
        label = {"lambda": LAMBDA, "delta0p": D0P, "delta0pp": D0PP, "delta0ram": D0RAM}.get(key, key)
        if label not in vals:
            raise InputError(f"cannot perturb unknown pairing {key!r}")
        vals[label] = Q(value)
    return CurveClass.from_pairings(GENUS, vals, name="R (perturbed)")


def certify_not_pseudoeffective(perturb: dict | None = None, t_values=(0, 1)) -> CertificationReport:
    """Run the implication chain; ``perturb`` overrides entries of R (negative controls)."""
    R = _perturbed_R(perturb)
    K = canonical_class(GENUS)
    rk = pair(R, K)
    steps = [
        {
            "id": "R.K",
            "statement": "R·K < 0",
            "value": fmt(rk),
            "holds": rk < 0,
        }
    ]

    lp = build_constraints(GENUS, R)
    cert = minimize(lp)
    verdict = verify_certificate(lp, cert)
    lp_min = cert.optimal_value if cert.status == "optimal" else None
    steps.append(
        {
            "id": "min R.D'",
            "statement": "min R·D' over the admissible cone is >= 0",
            "value": cert.status if lp_min is None else fmt(lp_min),
            "holds": bool(verdict) and lp_min is not None and lp_min >= 0,
            "violations": verdict.violations,
        }
    )

    reduced = eliminate_b0ram(lp)
    rcert = minimize(reduced)
    reduced_min = rcert.optimal_value if rcert.status == "optimal" else None
    steps.append(
        {
            "id": "reduced",
            "statement": "eliminating b0ram leaves the optimum unchanged",
            "value": rcert.status if reduced_min is None else fmt(reduced_min),
            "holds": bool(verify_certificate(reduced, rcert)) and reduced_min == lp_min,
        }
    )

    # K = t·D' + M with t >= 0, R·M >= 0 would force R·K >= t·min R·D' >= 0
    for t in t_values:
        t = Q(t)
        lower = t * lp_min if lp_min is not None else None
        holds = lower is not None and lower >= 0 and rk < 0
        steps.append(
            {
                "id": f"decomposition t={fmt(t)}",
                "statement": "R·K = t·R·D' + R·M >= 0 contradicts R·K < 0",
                "value": "unbounded" if lower is None else fmt(lower),
                "holds": holds,
            }
        )

    established = all(s["holds"] for s in steps)
    return CertificationReport(
        established=established,
        r_dot_k=rk,
        lp_status=cert.status,
        lp_min=lp_min,
        certificate=cert,
        certificate_ok=bool(verdict),
        reduced_min=reduced_min,
        steps=steps,
        axioms=dict(AXIOMS),
        omitted_variables=(
            "coefficients of delta_i, delta_{9-i}, delta_{i:9-i} other than delta1 are left out: "
            "R, Xi and A all pair to zero with them"
        ),
        sweeping_bound=sweeping_bound(lp),
    )


def curve_R(low=(9, 47, 0, 8)) -> CurveClass:
    return curve_from_low(GENUS, low, name="R")
