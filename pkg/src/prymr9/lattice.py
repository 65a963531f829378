"""Picard lattice of a polarized Nikulin surface and Mukai-vector arithmetic."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .rational import Q, fmt


@dataclass(frozen=True)
class IntegralLattice:
    """Symmetric bilinear form on Q^n with a marked integral structure.

    The lattice is Z^n in ``basis_labels`` coordinates, enlarged by the
    ``glue`` vectors (which may have fractional coordinates).
    """

    basis_labels: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    glue: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        n = len(self.basis_labels)
        gram = tuple(tuple(Q(x) for x in row) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise InputError("Gram matrix shape does not match the basis")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise InputError(f"Gram matrix not symmetric at ({i}, {j})")
        glue = tuple(tuple(Q(x) for x in g) for g in self.glue)
        if any(len(g) != n for g in glue):
            raise InputError("glue vector has the wrong length")
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "glue", glue)

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def vector(self, coords: Sequence) -> "LatticeVector":
        return LatticeVector(self, tuple(Q(c) for c in coords))

    def basis_vector(self, label: str) -> "LatticeVector":
        coords = [0] * self.rank
        coords[self.basis_labels.index(label)] = 1
        return self.vector(coords)

    def zero(self) -> "LatticeVector":
        return self.vector([0] * self.rank)

    def form(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return sum(
            (x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def _glue_classes(self) -> set[tuple[Fraction, ...]]:
        # fractional parts reachable from sums of glue vectors
        frac = lambda v: tuple(c - math.floor(c) for c in v)  # noqa: E731
        seen = {tuple(Fraction(0) for _ in range(self.rank))}
        frontier = list(seen)
        while frontier:
            cur = frontier.pop()
            for g in self.glue:
                nxt = frac(tuple(a + b for a, b in zip(cur, g)))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    def contains(self, coords: Sequence) -> bool:
        fracs = tuple(Q(c) - math.floor(Q(c)) for c in coords)
        return fracs in self._glue_classes()

    def leading_minors(self, labels: Sequence[str]) -> list[Fraction]:
        idx = [self.basis_labels.index(l) for l in labels]
        return [_det([[self.gram[i][j] for j in idx[:k]] for i in idx[:k]]) for k in range(1, len(idx) + 1)]

    def to_json(self) -> str:
        doc = {
            "basis_labels": list(self.basis_labels),
            "gram": [[fmt(x) for x in row] for row in self.gram],
            "glue": [[fmt(x) for x in g] for g in self.glue],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text) -> "IntegralLattice":
        doc = json.loads(text) if isinstance(text, str) else text
        return cls(
            tuple(doc["basis_labels"]),
            tuple(tuple(Q(x) for x in row) for row in doc["gram"]),
            tuple(tuple(Q(x) for x in g) for g in doc.get("glue", [])),
        )


def _det(m: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-preserving elimination."""
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


@dataclass(frozen=True)
class LatticeVector:
    lattice: IntegralLattice = field(repr=False)
    coords: tuple[Fraction, ...]

    def _check(self, other):
        if not isinstance(other, LatticeVector):
            raise InputError("expected a lattice vector")
        if other.lattice != self.lattice:
            raise InputError("vectors live in different lattices")

    def dot(self, other: "LatticeVector") -> Fraction:
        self._check(other)
        return self.lattice.form(self.coords, other.coords)

    def square(self) -> Fraction:
        return self.dot(self)

    def __add__(self, other):
        self._check(other)
        return LatticeVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeVector(self.lattice, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Q(k)
        return LatticeVector(self.lattice, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return self.lattice.contains(self.coords)

    def is_zero(self):
        return not any(self.coords)


# --- Nikulin surfaces --------------------------------------------------------

NIKULIN_LABELS = ("C",) + tuple(f"N{i}" for i in range(1, 9))


def nikulin_picard(g: int, c_squared=None) -> IntegralLattice:
    """Z·C ⊕ Nikulin lattice: C² = 2g-2, N_i² = -2, everything else orthogonal.

    The half-sum e = (N_1 + ... + N_8)/2 is adjoined as glue.  ``c_squared``
    overrides C² for sensitivity checks.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise InputError(f"genus must be an integer >= 2, got {g!r}")
    csq = Q(2 * g - 2 if c_squared is None else c_squared)
    n = len(NIKULIN_LABELS)
    gram = [[Fraction(0)] * n for _ in range(n)]
    gram[0][0] = csq
    for i in range(1, n):
        gram[i][i] = Fraction(-2)
    half = (Fraction(0),) + (Fraction(1, 2),) * 8
    return IntegralLattice(NIKULIN_LABELS, tuple(map(tuple, gram)), (half,))


def polarization(lat: IntegralLattice) -> LatticeVector:
    return lat.basis_vector("C")


def half_sum(lat: IntegralLattice) -> LatticeVector:
    """The class e = (N_1 + ... + N_8)/2."""
    return lat.vector((0,) + (Fraction(1, 2),) * 8)


def extended_coords(v: LatticeVector) -> tuple[Fraction, ...]:
    """Coordinates in the generating set (C, e, N_1, ..., N_7).

    Writes x = c·C + t·e + sum_{i<=7} m_i N_i; integral vectors get integer
    coordinates here even when their N-coordinates are half-integers.
    """
    c, *n = v.coords
    t = 2 * n[7]
    return (c, t) + tuple(n[i] - n[7] for i in range(7))


# --- Mukai vectors -----------------------------------------------------------


@dataclass(frozen=True)
class MukaiVector:
    """(rank, c1, chi - rank)."""

    r0: Fraction
    c1: LatticeVector
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r0", Q(self.r0))
        object.__setattr__(self, "s", Q(self.s))

    def __add__(self, other):
        return MukaiVector(self.r0 + other.r0, self.c1 + other.c1, self.s + other.s)

    def __mul__(self, k):
        k = Q(k)
        return MukaiVector(k * self.r0, k * self.c1, k * self.s)

    __rmul__ = __mul__


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> Fraction:
    if v.c1.lattice != w.c1.lattice:
        raise InputError("Mukai vectors over different lattices")
    return v.c1.dot(w.c1) - v.s * w.r0 - v.r0 * w.s


def slope(c1: LatticeVector, rank, polarization: LatticeVector) -> Fraction:
    """Slope of a sheaf with first Chern class ``c1`` and rank ``rank``."""
    r = Q(rank)
    if r <= 0:
        raise InputError(f"rank must be positive, got {fmt(r)}")
    return c1.dot(polarization) / r


# --- the destabilization arithmetic ------------------------------------------

RANK_E = 4
RANK_LM = 2  # Lazarsfeld-Mukai bundle E_{C,L}

HYPOTHESES = {
    "mukai-dimension": "dim M^s_H(v) = v² + 2 when nonempty; v² < -2 forces non-stability",
    "big-nef-polarization": "slope stability is taken with respect to the big and nef class C, "
    "which need not be ample",
    "lm-semistable": "the Lazarsfeld-Mukai bundle E_{C,L} is μ-semistable",
    "maximal-rank-destabilizer": "E_1 is a maximal destabilizing subsheaf of maximal rank",
}


@dataclass
class Step:
    claim: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    holds: bool
    cites: tuple[str, ...] = ()

    def to_json(self):
        return {
            "claim": self.claim,
            "lhs": fmt(self.lhs),
            "relation": self.relation,
            "rhs": fmt(self.rhs),
            "holds": self.holds,
            "cites": list(self.cites),
        }


@dataclass
class StabilityReport:
    genus: int
    mukai_square: Fraction
    obstructed: bool
    steps: list[Step]
    candidates: dict[tuple[int, int], str]
    forced: tuple[int, int] | None
    hypotheses: dict[str, str]

    def to_json(self):
        return {
            "genus": self.genus,
            "mukai_square": fmt(self.mukai_square),
            "obstructed": self.obstructed,
            "steps": [s.to_json() for s in self.steps],
            "candidates": {f"r={r},a={a}": why for (r, a), why in sorted(self.candidates.items())},
            "forced": list(self.forced) if self.forced else None,
            "hypotheses": dict(self.hypotheses),
        }


_REL = {
    "<": lambda x, y: x < y,
    ">=": lambda x, y: x >= y,
    "=": lambda x, y: x == y,
}


def _step(claim, lhs, rel, rhs, cites=()):
    return Step(claim, Q(lhs), rel, Q(rhs), _REL[rel](Q(lhs), Q(rhs)), tuple(cites))


def stability_obstruction_report(g: int = 9, c_squared=None, chi_minus_rank=2) -> StabilityReport:
    """Exact arithmetic behind the non-stability of the extension bundle E.

    E has Mukai vector (4, C + e, chi - 4).  The destabilizing subsheaf E_1 of
    rank r <= 3 has c1 = aC + N' with N' in the Nikulin lattice.  Only the
    numeric steps are checked; sheaf-theoretic inputs appear as named
    hypotheses.
    """
    if g != 9:
        raise InputError(f"the destabilization argument is only set up for genus 9, got {g}")
    lat = nikulin_picard(g, c_squared)
    C, e = polarization(lat), half_sum(lat)
    vE = MukaiVector(RANK_E, C + e, chi_minus_rank)
    v2 = mukai_pairing(vE, vE)
    steps = [_step("v(E)^2 < -2", v2, "<", -2, ["mukai-dimension"])]
    if not steps[0].holds:
        return StabilityReport(g, v2, False, steps, {}, None, dict(HYPOTHESES))

    csq = C.square()
    mu_E = slope(C + e, RANK_E, C)
    steps.append(_step("mu(E) = c1(E).C / rk(E)", mu_E, "=", csq / RANK_E, ["big-nef-polarization"]))

    candidates: dict[tuple[int, int], str] = {}
    survivors = []
    for r in range(1, RANK_E):
        a_min = math.ceil(r * mu_E / csq)
        steps.append(_step(f"rank {r}: C²·a/r >= mu(E) needs a >= {a_min}", csq * a_min / r, ">=", mu_E))
        for a in range(a_min - 1, r + 1):
            mu_1 = slope(a * C, r, C)  # N' is orthogonal to C
            if mu_1 < mu_E:
                candidates[(r, a)] = "excluded: does not destabilize E"
                continue
            # c1(E_{C,L} ⊗ E_1^dual)·C = (r·C - rk(E_{C,L})·c1(E_1))·C
            twist = (r * C - RANK_LM * (a * C)).dot(C)
            if twist < 0:
                candidates[(r, a)] = "excluded by μ-semistability of E_{C,L}"
                continue
            candidates[(r, a)] = "admissible"
            survivors.append((r, a))

    forced = max(survivors) if survivors else None
    for cand in survivors:
        if cand != forced:
            candidates[cand] = "admissible arithmetically; not of maximal rank"
    if forced is not None:
        r, a = forced
        twist = (r * C - RANK_LM * (a * C)).dot(C)
        steps.append(_step(f"semistability at (r, a) = {forced}", twist, ">=", 0, ["lm-semistable", "maximal-rank-destabilizer"]))
    return StabilityReport(g, v2, True, steps, candidates, forced, dict(HYPOTHESES))
