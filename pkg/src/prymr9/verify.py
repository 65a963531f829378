"""The catalogue of checked claims and the report they produce."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import certifier, divisor, lattice, pencils, taut
from .rational import fmt

MODULES = ("divisor", "grr", "lattice", "pencils", "cone")


def _s(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, Fraction)):
        return fmt(value)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_s(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    module: str
    paper_location: str
    compute: Callable[[dict], object]
    expected: object


@dataclass
class ItemResult:
    claim_id: str
    module: str
    paper_location: str
    computed_value: str
    expected_value: str
    status: str
    timing_ms: float | None = None
    error: str | None = None

    def to_json(self, timing=True):
        doc = {
            "claim_id": self.claim_id,
            "module": self.module,
            "paper_location": self.paper_location,
            "computed_value": self.computed_value,
            "expected_value": self.expected_value,
            "status": self.status,
        }
        if self.error:
            doc["error"] = self.error
        if timing:
            doc["timing_ms"] = round(self.timing_ms or 0.0, 3)
        return doc


@dataclass
class VerificationReport:
    items: list[ItemResult]

    @property
    def overall(self) -> str:
        return "pass" if self.items and all(i.status == "pass" for i in self.items) else "fail"

    def to_json(self, timing=True) -> dict:
        return {
            "overall": self.overall,
            "count": len(self.items),
            "items": [i.to_json(timing) for i in self.items],
        }

    def to_text(self, timing=True) -> str:
        lines = []
        for it in self.items:
            mark = "PASS" if it.status == "pass" else "FAIL"
            line = f"[{mark}] {it.claim_id:<26} {it.computed_value}"
            if it.status != "pass":
                line += f"   (expected {it.expected_value})"
            if timing:
                line += f"   {it.timing_ms:.2f} ms"
            lines.append(line)
        lines.append(f"overall: {self.overall} ({sum(i.status == 'pass' for i in self.items)}/{len(self.items)})")
        return "\n".join(lines)


def _R(ctx):
    return certifier._perturbed_R(ctx.get("perturb"))


def _low(c):
    return tuple(c.low())


def _claims() -> list[Claim]:
    d9 = divisor.d9_class
    K9 = lambda ctx: divisor.canonical_class(9)  # noqa: E731
    return [
        # divisor algebra
        Claim("eq1.2.K9.low", "divisor", "Eq. (1.2)", lambda c: _low(K9(c)), (13, -2, -2, -3)),
        Claim("eq1.1.pullback.delta0", "divisor", "Eq. (1.1)",
              lambda c: _low(divisor.pullback_from_Mg(9, {"delta0": 1})), (0, 1, 1, 2)),
        Claim("eq7.R.K", "divisor", "Eq. (7) / Cor. 3.2", lambda c: divisor.pair(_R(c), K9(c)), -1),
        Claim("cor3.2.R.D9", "divisor", "Cor. 3.2", lambda c: divisor.pair(_R(c), d9()), 102),
        Claim("cor3.2.alpha_independent", "divisor", "Cor. 3.2 / Thm 2.3",
              lambda c: tuple(divisor.pair(_R(c), d9(a)) for a in (0, 1, Fraction(187, 2))), (102, 102, 102)),
        Claim("thm2.1.Xi.D9", "divisor", "Thm 2.1 vs Thm 2.3",
              lambda c: divisor.pair(pencils.nikulin_pencil(9), d9()), 0),
        # tautological classes / GRR
        Claim("eq1.8.c1A", "grr", "Eq. (1.8)", lambda c: taut.c1_A(),
              taut.B(**{"lambda": -2}, a=Fraction(1, 2), b=Fraction(-1, 2), v=8, sdram=Fraction(1, 2))),
        Claim("eq1.9.c1B", "grr", "Eq. (1.9)", lambda c: taut.c1_B(),
              taut.B(**{"lambda": -3}, v=8, sdram=Fraction(3, 4))),
        Claim("thm1.1.degeneracy", "grr", "Thm 1.1", lambda c: taut.degeneracy_class(),
              taut.B(**{"lambda": -1}, a=Fraction(-1, 2), b=Fraction(1, 2), sdram=Fraction(1, 4))),
        Claim("thm2.3.D9", "grr", "Thm 2.3",
              lambda c: _low(taut.push_sigma(taut.degeneracy_class(), pencils.castelnuovo_number(9, 2, 8))),
              (366, -52, -52, Fraction(-187, 2))),
        Claim("sec1.rank24", "grr", "Sec. 1 (ranks of A, B)", lambda c: (taut.rank_A(), taut.rank_B()), (24, 24)),
        # lattice
        Claim("sec2.vE.square", "lattice", "Thm 2.1 proof", lambda c: _vE_square(), -4),
        Claim("sec2.e.square", "lattice", "Sec. 2", lambda c: _e_square(), -4),
        Claim("thm2.1.slope", "lattice", "Thm 2.1 proof", lambda c: _slope_E(), 4),
        Claim("thm2.1.forced_ra", "lattice", "Thm 2.1 proof",
              lambda c: lattice.stability_obstruction_report(9).forced, (3, 1)),
        # pencils and counts
        Claim("sec1.castelnuovo", "pencils", "Sec. 1", lambda c: pencils.castelnuovo_number(9, 2, 8), 42),
        Claim("intro.genus", "pencils", "Introduction", lambda c: pencils.plane_curve_genus(8, 12), 9),
        Claim("sec3.P8", "pencils", "Sec. 3", lambda c: int(pencils.expected_dim_linear_system(8, [2] * 12)), 8),
        Claim("lem3.4.quartics", "pencils", "Lemma 3.4",
              lambda c: int(pencils.expected_dim_linear_system(4, [1] * 12)), 2),
        Claim("lem3.4.codim", "pencils", "Lemma 3.4", lambda c: pencils.reducible_locus_codim(), 4),
        Claim("thm3.1.c2", "pencils", "Thm 3.1 proof", lambda c: pencils.pencil_R_breakdown()["c2"], 31),
        Claim("eq3.6.boundary", "pencils", "Eq. (3.6)",
              lambda c: pencils.pencil_R_breakdown()["boundary_total"], 63),
        Claim("thm3.1.R.lambda", "pencils", "Thm 3.1", lambda c: _R(c)[divisor.LAMBDA], 9),
        Claim("thm3.1.R.delta0p", "pencils", "Thm 3.1", lambda c: _R(c)[divisor.D0P], 47),
        Claim("thm3.1.R.delta0pp", "pencils", "Thm 3.1", lambda c: _R(c)[divisor.D0PP], 0),
        Claim("thm3.1.R.delta0ram", "pencils", "Thm 3.1", lambda c: _R(c)[divisor.D0RAM], 8),
        Claim("eq2.1.Xi9", "pencils", "Eq. (2.1)", lambda c: _low(pencils.nikulin_pencil(9)), (10, 56, 0, 8)),
        Claim("thm3.3.A9", "pencils", "Thm 3.3 proof",
              lambda c: _low(pencils.k3_pencil_A(9)), (2621430, 9437040, 72, 4718592)),
        # cone certifier
        Claim("thm3.3.lp_min", "cone", "Thm 3.3", lambda c: _cert(c).lp_min, 0),
        Claim("thm3.3.certificate", "cone", "Thm 3.3", lambda c: _cert(c).certificate_ok, True),
        Claim("thm3.3.max_unbounded", "cone", "Thm 3.3",
              lambda c: certifier.minimize(certifier.build_constraints(9, _R(c)).negated()).status, "unbounded"),
        Claim("thm0.1.not_pseudoeffective", "cone", "Thm 0.1", lambda c: _cert(c).established, True),
    ]


def _vE_square():
    lat = lattice.nikulin_picard(9)
    v = lattice.MukaiVector(4, lattice.polarization(lat) + lattice.half_sum(lat), 2)
    return lattice.mukai_pairing(v, v)


def _e_square():
    return lattice.half_sum(lattice.nikulin_picard(9)).square()


def _slope_E():
    lat = lattice.nikulin_picard(9)
    C = lattice.polarization(lat)
    return lattice.slope(C + lattice.half_sum(lat), 4, C)


def _cert(ctx):
    key = "_cert"
    if key not in ctx:
        ctx[key] = certifier.certify_not_pseudoeffective(ctx.get("perturb"))
    return ctx[key]


CLAIMS = _claims()


def select(only: str | None) -> list[Claim]:
    if not only:
        return list(CLAIMS)
    picked = [c for c in CLAIMS if c.module == only or c.claim_id == only or c.claim_id.startswith(only + ".")]
    return picked


def _run_one(claim: Claim, ctx: dict) -> ItemResult:
    start = time.perf_counter()
    error = None
    try:
        computed = _s(claim.compute(ctx))
    except Exception as exc:  # a failing claim is reported, not raised
        computed, error = "error", f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1000
    expected = _s(claim.expected)
    status = "pass" if error is None and computed == expected else "fail"
    return ItemResult(claim.claim_id, claim.module, claim.paper_location, computed, expected, status, elapsed, error)


def cmd_verify_all(only: str | None = None, perturb: dict | None = None, parallel: bool = False) -> VerificationReport:
    claims = select(only)
    order = {m: i for i, m in enumerate(MODULES)}
    claims.sort(key=lambda c: order[c.module])
    ctx: dict = {"perturb": perturb or {}}
    if parallel:
        _cert(ctx)  # shared, computed once up front
        with ThreadPoolExecutor() as pool:
            items = list(pool.map(lambda c: _run_one(c, ctx), claims))
    else:
        items = [_run_one(c, ctx) for c in claims]
    return VerificationReport(items)
