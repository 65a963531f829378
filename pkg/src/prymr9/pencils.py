"""Intersection numbers of the test curves and the plane-curve counts behind them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .divisor import LOW_LABELS, CurveClass, curve_from_low
from .errors import ComputationError, InputError


def _int(name, value, lo=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{name} must be an integer, got {value!r}")
    if lo is not None and value < lo:
        raise InputError(f"{name} must be >= {lo}, got {value}")
    return value


def plane_curve_genus(d: int, nodes: int) -> int:
    """Geometric genus of a plane curve of degree d with only ordinary nodes."""
    _int("degree", d, 1)
    _int("nodes", nodes, 0)
    arithmetic = (d - 1) * (d - 2) // 2
    if nodes > arithmetic:
        raise InputError(f"a degree-{d} curve has at most {arithmetic} nodes")
    return arithmetic - nodes


@dataclass(frozen=True)
class ExpectedDimension:
    """Virtual dimension of a linear system of plane curves with assigned points.

    Assumes general points; this is what is expected, not what is proven.
    """

    value: int

    @property
    def empty_expected(self) -> bool:
        return self.value < 0

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, ExpectedDimension):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)


def expected_dim_linear_system(d: int, multiplicities) -> ExpectedDimension:
    _int("degree", d, 1)
    mults = [_int("multiplicity", m, 1) for m in multiplicities]
    return ExpectedDimension(d * (d + 3) // 2 - sum(m * (m + 1) // 2 for m in mults))


def brill_noether_number(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (g - d + r)


def castelnuovo_number(g: int, r: int, d: int) -> int:
    """Number of g^r_d's on a general curve of genus g when rho = 0."""
    for name, v in (("g", g), ("r", r), ("d", d)):
        _int(name, v, 0)
    rho = brill_noether_number(g, r, d)
    if rho != 0:
        raise InputError(f"Brill-Noether number is {rho}, the count needs rho = 0")
    num = factorial(g) * prod(factorial(i) for i in range(r + 1))
    den = prod(factorial(g - d + r + i) for i in range(r + 1))
    if num % den:
        raise ComputationError("non-integral Castelnuovo quotient")
    return num // den


@dataclass(frozen=True)
class BlowupSurface:
    """Numerical data of a smooth projective surface fibred by the pencil."""

    chiO: int
    Ksq: int
    blowup_count: int = 0

    @classmethod
    def plane_blown_up(cls, n: int) -> "BlowupSurface":
        # infinitely near points count like any other monoidal transform
        _int("number of blown-up points", n, 0)
        return cls(chiO=1, Ksq=9 - n, blowup_count=n)


def noether_c2(surface: BlowupSurface) -> int:
    """Topological Euler number from Noether's formula."""
    return 12 * surface.chiO - surface.Ksq


@dataclass(frozen=True)
class PencilSpec:
    fiber_genus: int
    tangency_base_points: int
    surface: BlowupSurface

    def __post_init__(self):
        _int("fiber genus", self.fiber_genus, 0)
        _int("tangency base points", self.tangency_base_points, 0)


def octic_pencil_spec() -> PencilSpec:
    """The octic pencil: 12 nodes, 8 tangency points, 8 infinitely near tangent directions."""
    return PencilSpec(
        fiber_genus=plane_curve_genus(8, 12),
        tangency_base_points=8,
        surface=BlowupSurface.plane_blown_up(12 + 8 + 8),
    )


def pencil_R_intersections(spec: PencilSpec = None) -> CurveClass:
    """Intersection numbers of the sweeping pencil with lambda and delta0 classes.

    Every member is irreducible and at most 1-nodal, so the higher boundary
    classes are not met.  Members singular at a tangency base point are the
    delta0ram members; no member lies in delta0''.
    """
    spec = spec or octic_pencil_spec()
    g = spec.fiber_genus
    lam = spec.surface.chiO + g - 1
    total = noether_c2(spec.surface) + 4 * (g - 1)
    ram = spec.tangency_base_points
    d0p = total - 2 * ram
    if d0p < 0:
        raise ComputationError(f"pencil data give negative delta0' count {d0p}")
    if g < 2:
        raise ComputationError("fiber genus must be >= 2 to give a curve in the Prym moduli space")
    return curve_from_low(g, (lam, d0p, 0, ram), name="R")


def pencil_R_breakdown(spec: PencilSpec = None) -> dict[str, int]:
    spec = spec or octic_pencil_spec()
    c2 = noether_c2(spec.surface)
    g = spec.fiber_genus
    return {
        "chiO": spec.surface.chiO,
        "Ksq": spec.surface.Ksq,
        "c2": c2,
        "boundary_total": c2 + 4 * (g - 1),
        "ram": spec.tangency_base_points,
        "delta0p": c2 + 4 * (g - 1) - 2 * spec.tangency_base_points,
        "lambda": spec.surface.chiO + g - 1,
    }


def nikulin_pencil(g: int) -> CurveClass:
    """Lefschetz pencil of Prym curves on a general polarized Nikulin surface."""
    _int("genus", g, 2)
    return curve_from_low(g, (g + 1, 6 * g + 2, 0, 8), name="Xi")


def k3_pencil_A(g: int) -> CurveClass:
    """All Prym structures over a Lefschetz pencil on a K3 surface of genus g."""
    _int("genus", g, 2)
    k = 6 * g + 18
    return curve_from_low(
        g,
        ((g + 1) * (2 ** (2 * g) - 1), k * (2 ** (2 * g - 1) - 2), k, k * 2 ** (2 * g - 2)),
        name="A",
    )


def a0pp_pairing(g: int, b0pp, b1) -> Fraction:
    """A0''·D for D = a·lambda - b0''·delta0'' - b1·delta1 - ...; sweeps Delta0''."""
    _int("genus", g, 2)
    return (2 * g - 2) * Fraction(b0pp) - Fraction(b1)


def reducible_locus_codim(g9_octic_case: bool = True) -> int:
    """Lower bound for the codimension of reducible octics among 12-nodal ones.

    Splittings through a cubic or a 12-nodal septic are expected-empty; the
    largest family is a pair of quartics through the 12 points.
    """
    if not g9_octic_case:
        raise InputError("only the 12-nodal octic configuration is supported")
    ambient = int(expected_dim_linear_system(8, [2] * 12))
    quartic = int(expected_dim_linear_system(4, [1] * 12))
    return ambient - 2 * quartic


def reducible_locus_breakdown() -> dict[str, int]:
    return {
        "ambient": int(expected_dim_linear_system(8, [2] * 12)),
        "cubic": int(expected_dim_linear_system(3, [1] * 12)),
        "septic": int(expected_dim_linear_system(7, [2] * 12)),
        "quartic": int(expected_dim_linear_system(4, [1] * 12)),
        "reducible_params": 2 * int(expected_dim_linear_system(4, [1] * 12)),
        "codim": reducible_locus_codim(),
    }


def curve_table(g: int = 9) -> list[tuple]:
    """Rows (name, lambda, delta0', delta0'', delta0ram) for the CLI."""
    rows = []
    for curve in (pencil_R_intersections(), nikulin_pencil(g), k3_pencil_A(g)):
        rows.append((curve.name,) + tuple(curve[l] for l in LOW_LABELS))
    return rows


__all__ = [
    "BlowupSurface",
    "ExpectedDimension",
    "PencilSpec",
    "a0pp_pairing",
    "brill_noether_number",
    "castelnuovo_number",
    "expected_dim_linear_system",
    "k3_pencil_A",
    "nikulin_pencil",
    "noether_c2",
    "octic_pencil_spec",
    "pencil_R_breakdown",
    "pencil_R_intersections",
    "plane_curve_genus",
    "reducible_locus_breakdown",
    "reducible_locus_codim",
    "curve_table",
]

