"""Divisor and curve classes on the Prym moduli space over exact rationals.

Basis ordering is fixed::

    lambda, delta0', delta0'', delta0ram,
    delta1, delta{g-1}, delta1:{g-1}, delta2, delta{g-2}, delta2:{g-2}, ...

for i = 1 .. g//2.  When g is even the middle triple would repeat the label
``delta{g/2}``; the second copy is then written ``delta{g/2}'``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InputError, PartialClassWarning
from .rational import Q, fmt

LAMBDA = "lambda"
D0P = "delta0'"
D0PP = "delta0''"
D0RAM = "delta0ram"
LOW_LABELS = (LAMBDA, D0P, D0PP, D0RAM)

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _check_genus(g) -> int:
    if isinstance(g, bool) or not isinstance(g, int):
        raise InputError(f"genus must be an integer, got {g!r}")
    if g < 2:
        raise InputError(f"genus must be >= 2, got {g}")
    return g


def boundary_triple(g: int, i: int) -> tuple[str, str, str]:
    """Labels of (delta_i, delta_{g-i}, delta_{i:g-i})."""
    _check_genus(g)
    if not 1 <= i <= g // 2:
        raise InputError(f"boundary index {i} outside 1..{g // 2}")
    first = f"delta{i}"
    second = f"delta{g - i}" if g - i != i else f"delta{g - i}'"
    return first, second, f"delta{i}:{g - i}"


@lru_cache(maxsize=None)
def _labels(g: int) -> tuple[str, ...]:
    out = list(LOW_LABELS)
    for i in range(1, g // 2 + 1):
        out.extend(boundary_triple(g, i))
    return tuple(out)


def pretty_label(label: str) -> str:
    if label == LAMBDA:
        return "λ"
    if label == D0P:
        return "δ₀′"
    if label == D0PP:
        return "δ₀″"
    if label == D0RAM:
        return "δ₀^ram"
    body = label[len("delta"):]
    if ":" in body:
        return "δ_{" + body + "}"
    prime = "′" if body.endswith("'") else ""
    return "δ" + body.rstrip("'").translate(_SUB) + prime


@dataclass(frozen=True)
class PrymBasis:
    genus: int

    def __post_init__(self):
        _check_genus(self.genus)

    @property
    def labels(self) -> tuple[str, ...]:
        return _labels(self.genus)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"{label!r} is not a basis label for genus {self.genus}") from None

    def __len__(self):
        return len(self.labels)


def _vector(basis: PrymBasis, values: Mapping[str, object]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * len(basis)
    for label, value in values.items():
        out[basis.index(label)] = Q(value)
    return tuple(out)


class _Coordinates:
    """Shared plumbing for label-indexed rational vectors."""

    __slots__ = ()
    basis: PrymBasis
    values: tuple[Fraction, ...]

    def __getitem__(self, label: str) -> Fraction:
        return self.values[self.basis.index(label)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.basis.labels, self.values))

    @property
    def genus(self) -> int:
        return self.basis.genus

    def low(self) -> tuple[Fraction, ...]:
        """The (lambda, delta0', delta0'', delta0ram) part."""
        return self.values[:4]

    def _same_basis(self, other):
        if self.basis != other.basis:
            raise InputError(
                f"basis mismatch: genus {self.basis.genus} vs genus {other.basis.genus}"
            )


@dataclass(frozen=True)
class DivisorClass(_Coordinates):
    """Rational combination of the standard generators.

    ``partial`` marks a class only known on the partial compactification, i.e.
    modulo the boundary divisors delta_i, delta_{g-i}, delta_{i:g-i}; its
    coefficients on those labels are stored as 0 but mean "unknown".
    """

    basis: PrymBasis
    values: tuple[Fraction, ...]
    partial: bool = False

    def __post_init__(self):
        if len(self.values) != len(self.basis):
            raise InputError("coefficient vector does not match the basis")
        object.__setattr__(self, "values", tuple(Q(v) for v in self.values))

    @classmethod
    def from_coeffs(cls, g: int, coeffs: Mapping[str, object] = None, partial=False):
        basis = PrymBasis(g)
        return cls(basis, _vector(basis, coeffs or {}), partial)

    @classmethod
    def zero(cls, g: int) -> "DivisorClass":
        return cls.from_coeffs(g)

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return self.as_dict()

    def coeff(self, label: str) -> Fraction:
        return self[label]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._same_basis(other)
        vals = tuple(a + b for a, b in zip(self.values, other.values))
        return DivisorClass(self.basis, vals, self.partial or other.partial)

    def __neg__(self):
        return DivisorClass(self.basis, tuple(-a for a in self.values), self.partial)

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        k = Q(scalar)
        return DivisorClass(self.basis, tuple(k * a for a in self.values), self.partial)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        doc = {"genus": self.genus, "coeffs": {l: fmt(v) for l, v in self.as_dict().items()}}
        if self.partial:
            doc["partial"] = True
        return doc

    @classmethod
    def from_json(cls, doc) -> "DivisorClass":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.from_coeffs(doc["genus"], doc["coeffs"], bool(doc.get("partial", False)))

    def __str__(self):
        return format_combination(self.as_dict())


@dataclass(frozen=True)
class CurveClass(_Coordinates):
    """A one-parameter family recorded by its intersection numbers with the basis."""

    basis: PrymBasis
    values: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) != len(self.basis):
            raise InputError("pairing vector does not match the basis")
        object.__setattr__(self, "values", tuple(Q(v) for v in self.values))

    @classmethod
    def from_pairings(cls, g: int, pairings: Mapping[str, object], name: str = ""):
        basis = PrymBasis(g)
        return cls(basis, _vector(basis, pairings), name)

    @property
    def pairings(self) -> dict[str, Fraction]:
        return self.as_dict()

    def sees_higher_boundary(self) -> bool:
        return any(self.values[4:])

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "name": self.name,
            "pairings": {l: fmt(v) for l, v in self.as_dict().items()},
        }


def format_combination(coeffs: Mapping[str, Fraction], pretty=pretty_label) -> str:
    terms = []
    for label, c in coeffs.items():
        if c == 0:
            continue
        mag = abs(c)
        if mag == 1:
            body = pretty(label)
        elif mag.denominator == 1:
            body = f"{mag}{pretty(label)}"
        else:
            body = f"({fmt(mag)}){pretty(label)}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def canonical_class(g: int) -> DivisorClass:
    """Canonical class of the compactified Prym moduli space of genus ``g``."""
    _check_genus(g)
    coeffs = {LAMBDA: 13, D0P: -2, D0PP: -2, D0RAM: -3}
    for i in range(1, g // 2 + 1):
        for label in boundary_triple(g, i):
            coeffs[label] = -3 if i == 1 else -2
    return DivisorClass.from_coeffs(g, coeffs)


def pullback_from_Mg(g: int, mg_class: Mapping[str, object]) -> DivisorClass:
    """Pull back a class written in lambda, delta0, delta_i (1 <= i <= g//2)."""
    _check_genus(g)
    total = DivisorClass.zero(g)
    for key, value in mg_class.items():
        c = Q(value)
        if key == LAMBDA:
            image = {LAMBDA: 1}
        elif key == "delta0":
            image = {D0P: 1, D0PP: 1, D0RAM: 2}
        elif key.startswith("delta") and key[5:].isdigit():
            i = int(key[5:])
            if not 1 <= i <= g // 2:
                raise InputError(f"{key} is not a boundary class of M_{g} (need 1 <= i <= {g // 2})")
            image = dict.fromkeys(boundary_triple(g, i), 1)
        else:
            raise InputError(f"unknown class {key!r} on M_g")
        total = total + c * DivisorClass.from_coeffs(g, image)
    return total


def d9_class(alpha=0) -> DivisorClass:
    """Brill-Noether divisor class in genus 9 on the partial compactification.

    ``alpha`` is the undetermined extra multiple of delta0''.  Higher boundary
    coefficients are unknown and the class is flagged ``partial``.
    """
    a = Q(alpha)
    if a < 0:
        raise InputError(f"alpha must be >= 0, got {fmt(a)}")
    return DivisorClass.from_coeffs(
        9,
        {LAMBDA: 366, D0P: -52, D0PP: -52 - a, D0RAM: Fraction(-187, 2)},
        partial=True,
    )


def pair(curve: CurveClass, divisor: DivisorClass) -> Fraction:
    """Intersection number of a test curve with a divisor class."""
    curve._same_basis(divisor)
    if divisor.partial and curve.sees_higher_boundary():
        warnings.warn(
            "divisor is known only modulo higher boundary but the curve meets it; "
            "the pairing ignores those terms",
            PartialClassWarning,
            stacklevel=2,
        )
    return sum((c * d for c, d in zip(curve.values, divisor.values)), Fraction(0))


def curve_from_low(g: int, low: Iterable, name: str = "") -> CurveClass:
    """Curve with given (lambda, delta0', delta0'', delta0ram) pairings, zero elsewhere."""
    return CurveClass.from_pairings(g, dict(zip(LOW_LABELS, low)), name)
