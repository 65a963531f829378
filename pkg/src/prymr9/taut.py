"""Degree-2 tautological bookkeeping on the universal Prym curve.

Fiber side: a truncated graded commutative ring in the generators

    l    c1 of the Poincare bundle               degree 1
    p    c1 of the Prym bundle                   degree 1
    w    c1 of the relative dualizing sheaf      degree 1
    V    pullback of c1 of the rank-3 bundle V   degree 1
    C2V  pullback of c2 of V                     degree 2
    S    class of the singular locus of f        degree 2

Anything of degree > 2 vanishes.  Base side: linear combinations of
lambda, a, b, v = c1(V) and the pulled-back boundary classes.

Pushing the degree-2 integrand of Grothendieck-Riemann-Roch through the rule
table yields c1 of the bundles A and B, the degeneracy class of the map
A -> B, and finally (via the degree-42 map to the Prym moduli space) the
class of the Brill-Noether divisor in genus 9.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .divisor import D0P, D0PP, D0RAM, LAMBDA, DivisorClass, format_combination
from .errors import ContractError, InputError, UnsupportedSymbolError
from .rational import Q, fmt

GENERATORS = ("l", "p", "w", "V", "C2V", "S")
DEGREE = {"l": 1, "p": 1, "w": 1, "V": 1, "C2V": 2, "S": 2}
_GEN_PRETTY = {"l": "ℓ", "p": "p", "w": "w", "V": "V", "C2V": "C2V", "S": "S"}
_ORDER = {g: i for i, g in enumerate(GENERATORS)}

BASE_SYMBOLS = ("lambda", "a", "b", "v", "s_delta0'", "s_delta0''", "s_delta0ram")
_BASE_PRETTY = {
    "lambda": "λ",
    "a": "𝔞",
    "b": "𝔟",
    "v": "v",
    "s_delta0'": "σ*δ₀′",
    "s_delta0''": "σ*δ₀″",
    "s_delta0ram": "σ*δ₀^ram",
}

MAX_DEGREE = 2


def _monomial(gens) -> tuple[str, ...]:
    for g in gens:
        if g not in DEGREE:
            raise UnsupportedSymbolError(f"unknown fiber generator {g!r}")
    return tuple(sorted(gens, key=_ORDER.__getitem__))


def _mdeg(mono) -> int:
    return sum(DEGREE[g] for g in mono)


class FiberElement:
    """Element of the truncated fiber ring; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping = None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = _monomial(mono)
            c = Q(c)
            if c and _mdeg(mono) <= MAX_DEGREE:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def gen(cls, name: str) -> "FiberElement":
        return cls({(name,): 1})

    @classmethod
    def const(cls, c) -> "FiberElement":
        return cls({(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def _coerce(self, other):
        if isinstance(other, FiberElement):
            return other
        return FiberElement.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return FiberElement(out)

    __radd__ = __add__

    def __neg__(self):
        return FiberElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                if _mdeg(m1) + _mdeg(m2) > MAX_DEGREE:
                    continue
                m = _monomial(m1 + m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return FiberElement(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * FiberElement.const(1 / Q(scalar))

    def __pow__(self, n: int):
        result = FiberElement.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, FiberElement):
            try:
                other = FiberElement.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def degree_part(self, d: int) -> "FiberElement":
        return FiberElement({m: c for m, c in self._terms.items() if _mdeg(m) == d})

    def degrees(self) -> set[int]:
        return {_mdeg(m) for m in self._terms}

    def is_zero(self):
        return not self._terms

    def __str__(self):
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda m: (_mdeg(m), [_ORDER[g] for g in m]))
        out = ""
        for m in keys:
            c = self._terms[m]
            name = "·".join(
                _GEN_PRETTY[g] + ("²" if m.count(g) == 2 else "") for g in dict.fromkeys(m)
            )
            mag = abs(c)
            if not name:
                body = fmt(mag)
            elif mag == 1:
                body = name
            elif mag.denominator == 1:
                body = f"{mag}{name}"
            else:
                body = f"({fmt(mag)}){name}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    __repr__ = __str__


class BaseElement:
    """Linear combination of base symbols; products never occur."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[str, object] = None):
        clean = {}
        for sym, c in (coeffs or {}).items():
            if sym not in BASE_SYMBOLS:
                raise UnsupportedSymbolError(f"unknown base symbol {sym!r}")
            c = Q(c)
            if c:
                clean[sym] = clean.get(sym, Fraction(0)) + c
        self._coeffs = {s: clean[s] for s in BASE_SYMBOLS if clean.get(s)}

    def __getitem__(self, sym: str) -> Fraction:
        if sym not in BASE_SYMBOLS:
            raise UnsupportedSymbolError(f"unknown base symbol {sym!r}")
        return self._coeffs.get(sym, Fraction(0))

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, BaseElement):
            return NotImplemented
        out = dict(self._coeffs)
        for s, c in other._coeffs.items():
            out[s] = out.get(s, Fraction(0)) + c
        return BaseElement(out)

    __radd__ = __add__

    def __neg__(self):
        return BaseElement({s: -c for s, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, BaseElement):
            raise ContractError("products of base classes do not occur in this computation")
        k = Q(scalar)
        return BaseElement({s: k * c for s, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Q(scalar))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._coeffs
        if not isinstance(other, BaseElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def to_json(self) -> dict:
        return {s: fmt(c) for s, c in self._coeffs.items()}

    def __str__(self):
        return format_combination(self._coeffs, pretty=_BASE_PRETTY.__getitem__)

    __repr__ = __str__


def B(**coeffs) -> BaseElement:
    """Shorthand: ``B(a=1, s_delta0ram=-Fraction(1, 2))``.

    Boundary symbols contain quotes, so they may also be given via the
    keywords ``sd0p``, ``sd0pp`` and ``sdram``.
    """
    alias = {"sd0p": "s_delta0'", "sd0pp": "s_delta0''", "sdram": "s_delta0ram"}
    return BaseElement({alias.get(k, k): v for k, v in coeffs.items()})


l, p, w, V, C2V, S = (FiberElement.gen(g) for g in GENERATORS)

_SING = B(sd0p=1, sd0pp=1, sdram=2)

# Pushforward of every degree-2 monomial along the universal curve.
DEFAULT_RULES: dict[tuple[str, ...], BaseElement] = {
    ("l", "l"): B(a=1),
    ("l", "w"): B(b=1),
    ("w", "w"): B(**{"lambda": 12}) - _SING,  # Mumford
    ("p", "p"): B(sdram=Fraction(-1, 2)),
    ("p", "w"): B(),
    ("l", "p"): B(),
    ("p", "V"): B(),
    ("w", "V"): B(v=16),
    ("l", "V"): B(v=8),
    ("V", "V"): B(),
    ("C2V",): B(),
    ("S",): _SING,
}


def rules_with(**overrides) -> dict:
    """Copy of the default table with some entries replaced.

    Keys are monomials spelled as strings, e.g. ``rules_with(ll=B())``.
    """
    table = dict(DEFAULT_RULES)
    for key, value in overrides.items():
        mono = _parse_monomial(key)
        if mono not in table:
            raise UnsupportedSymbolError(f"no rule slot for monomial {key!r}")
        table[mono] = value
    return table


def _parse_monomial(text: str) -> tuple[str, ...]:
    gens, rest = [], text
    while rest:
        for g in sorted(GENERATORS, key=len, reverse=True):
            if rest.startswith(g):
                gens.append(g)
                rest = rest[len(g):]
                break
        else:
            raise UnsupportedSymbolError(f"cannot parse monomial {text!r}")
    return _monomial(gens)


def push_f(expr: FiberElement, rules: Mapping = None) -> BaseElement:
    """Push a homogeneous degree-2 fiber class down to the base."""
    rules = DEFAULT_RULES if rules is None else rules
    degs = expr.degrees()
    if degs - {2}:
        raise ContractError(f"push_f takes degree-2 input, got degrees {sorted(degs)}")
    total = BaseElement()
    for mono, c in expr.terms.items():
        try:
            image = rules[mono]
        except KeyError:
            raise UnsupportedSymbolError(f"no pushforward rule for {mono}") from None
        total = total + c * image
    return total


def rules_to_json(rules: Mapping = None) -> str:
    rules = DEFAULT_RULES if rules is None else rules
    doc = {"*".join(m): r.to_json() for m, r in rules.items()}
    return json.dumps(doc, indent=2, ensure_ascii=False)


# Chern data on the universal curve.
C1_M = V - l
C2_M = C2V + l * l - V * l
C1_MP = C1_M + 2 * p
C2_MP = C2_M + C1_M * p + p * p
RANK_MP = 2


def grr_pieces(rules: Mapping = None) -> dict[str, BaseElement]:
    """Pushforwards of the three degree-2 pieces of ch(M⊗P)·td(f).

    ``ch2``    ch_2(M⊗P)
    ``c1_td1`` c_1(M⊗P) · (-w/2)
    ``td2``    rank · (w² + [Sing f]) / 12
    """
    ch2 = Fraction(1, 2) * C1_MP * C1_MP - C2_MP
    return {
        "ch2": push_f(ch2, rules),
        "c1_td1": push_f(Fraction(-1, 2) * C1_MP * w, rules),
        "td2": push_f(Fraction(RANK_MP, 12) * (w * w + S), rules),
    }


def c1_A(rules: Mapping = None) -> BaseElement:
    """c1 of A = R^1 f_*(M⊗P); f_* of M⊗P vanishes so -c1(A) is the GRR degree-1 term."""
    pieces = grr_pieces(rules)
    return -(pieces["ch2"] + pieces["c1_td1"] + pieces["td2"])


C1_R1P = B(**{"lambda": -1}, sdram=Fraction(1, 4))


def c1_B(rank_V: int = 3, c1_r1p: BaseElement = None, rank_r1p: int = 8) -> BaseElement:
    """c1 of B = V ⊗ R^1 f_*(P)."""
    c1_r1p = C1_R1P if c1_r1p is None else c1_r1p
    return rank_r1p * B(v=1) + rank_V * c1_r1p


def rank_A(g: int = 9, deg_L: int = 8) -> int:
    # h^1(M_L ⊗ eta) = deg L + 2(g-1) for the rank-2 syzygy bundle
    return deg_L + 2 * (g - 1)


def rank_B(h0_L: int = 3, g: int = 9) -> int:
    return h0_L * (g - 1)


def degeneracy_class(rules: Mapping = None) -> BaseElement:
    """Class of the degeneracy locus of A -> B, i.e. c1(B) - c1(A)."""
    return c1_B() - c1_A(rules)


SIGMA_A = {LAMBDA: -564, D0P: 83, D0PP: 83, D0RAM: 166}
SIGMA_B = {LAMBDA: 252, D0P: -21, D0PP: -21, D0RAM: -42}
_SIGMA_PULLBACK = {"lambda": LAMBDA, "s_delta0'": D0P, "s_delta0''": D0PP, "s_delta0ram": D0RAM}


def push_sigma(expr: BaseElement, degree: int = 42) -> DivisorClass:
    """Push a base class forward to the genus-9 Prym moduli space.

    ``degree`` is the degree of the forgetful map from linear series (the
    Castelnuovo count).  The result is a class on the partial compactification.
    """
    if isinstance(degree, bool) or not isinstance(degree, int) or degree <= 0:
        raise InputError(f"degree must be a positive integer, got {degree!r}")
    if expr["v"]:
        raise UnsupportedSymbolError("no pushforward formula for c1(V) is available")
    out = dict.fromkeys((LAMBDA, D0P, D0PP, D0RAM), Fraction(0))
    for label, c in SIGMA_A.items():
        out[label] += expr["a"] * c
    for label, c in SIGMA_B.items():
        out[label] += expr["b"] * c
    for sym, label in _SIGMA_PULLBACK.items():
        out[label] += degree * expr[sym]
    return DivisorClass.from_coeffs(9, out, partial=True)
