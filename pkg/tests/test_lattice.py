import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymr9.errors import InputError
from prymr9.lattice import (
    IntegralLattice,
    MukaiVector,
    extended_coords,
    half_sum,
    mukai_pairing,
    nikulin_picard,
    polarization,
    slope,
    stability_obstruction_report,
)
from strategies import rationals

LAT = nikulin_picard(9)
C = polarization(LAT)
E = half_sum(LAT)
N = [LAT.basis_vector(f"N{i}") for i in range(1, 9)]


def test_gram_g9():
    assert C.square() == 16
    assert all(n.square() == -2 for n in N)
    assert all(C.dot(n) == 0 for n in N)
    assert N[0].dot(N[1]) == 0


def test_half_sum_square_by_expansion():
    # (1/2 sum N_i)^2 = 1/4 * sum_{i,j} N_i.N_j, expanded directly from the Gram rows
    gram = LAT.gram
    direct = sum(Fraction(1, 4) * gram[i][j] for i in range(1, 9) for j in range(1, 9))
    assert direct == Fraction(1, 4) * 8 * -2 == -4
    assert E.square() == -4
    assert E.dot(C) == 0


def test_half_sum_is_integral():
    total = N[0]
    for n in N[1:]:
        total = total + n
    assert (2 * E - total).is_zero()
    assert E.is_integral
    assert not (Fraction(1, 2) * N[0]).is_integral
    assert (E + N[3]).is_integral
    assert not (E + Fraction(1, 2) * C).is_integral


def test_extended_coordinates():
    assert extended_coords(E) == (0, 1) + (0,) * 7
    assert extended_coords(C + E) == (1, 1) + (0,) * 7
    assert all(Fraction(x).denominator == 1 for x in extended_coords(E + N[2]))


def test_block_minors_alternate():
    minors = LAT.leading_minors([f"N{i}" for i in range(1, 9)])
    assert minors == [Fraction(-2) ** k for k in range(1, 9)]


def test_bad_inputs():
    with pytest.raises(InputError):
        nikulin_picard(1)
    with pytest.raises(InputError):
        IntegralLattice(("x", "y"), ((1, 2), (3, 1)))
    with pytest.raises(InputError):
        slope(C, 0, C)
    with pytest.raises(InputError):
        mukai_pairing(MukaiVector(1, C, 0), MukaiVector(1, polarization(nikulin_picard(7)), 0))
    with pytest.raises(InputError):
        stability_obstruction_report(7)


def test_mukai_examples():
    vE = MukaiVector(4, C + E, 2)
    assert mukai_pairing(vE, vE) == (16 - 4) - 2 * 4 * 2 == -4
    zero = LAT.zero()
    assert mukai_pairing(MukaiVector(1, zero, 0), MukaiVector(0, zero, 1)) == -1
    assert mukai_pairing(MukaiVector(0, C, 0), MukaiVector(0, C, 0)) == 16


def test_slopes():
    assert slope(C + E, 4, C) == 4
    for a in range(0, 4):
        for r in range(1, 4):
            assert slope(a * C + N[0] - N[5], r, C) == Fraction(16 * a, r)
    assert slope(N[0], 1, C) == 0


def test_gram_json_round_trip():
    text = LAT.to_json()
    assert "-2" in text and "1/2" in text
    assert IntegralLattice.from_json(text) == LAT
    assert json.loads(text)["gram"][0][0] == "16"


def test_stability_report():
    rep = stability_obstruction_report(9)
    assert rep.obstructed and rep.mukai_square == -4
    assert rep.forced == (3, 1)
    assert rep.candidates[(1, 1)] == "excluded by μ-semistability of E_{C,L}"
    assert all(s.holds for s in rep.steps)
    assert "big-nef-polarization" in rep.hypotheses
    json.dumps(rep.to_json())


def test_stability_report_sensitivity():
    # both sides of the slope inequalities scale with C², so the forced pair is unchanged
    rep = stability_obstruction_report(9, c_squared=8)
    assert rep.mukai_square == (8 - 4) - 16
    assert rep.forced == (3, 1)
    # a Mukai vector with v² >= -2 gives no obstruction at all
    rep = stability_obstruction_report(9, chi_minus_rank=0)
    assert not rep.obstructed and rep.forced is None


def vectors():
    return st.builds(
        lambda r0, cs, s: MukaiVector(r0, LAT.vector(cs), s),
        rationals, st.lists(rationals, min_size=9, max_size=9), rationals,
    )


@settings(max_examples=150)
@given(vectors(), vectors(), vectors(), rationals, rationals)
def test_mukai_symmetric_bilinear(u, v, w, x, y):
    assert mukai_pairing(u, v) == mukai_pairing(v, u)
    assert mukai_pairing(x * u + y * v, w) == x * mukai_pairing(u, w) + y * mukai_pairing(v, w)


@settings(max_examples=100)
@given(st.lists(rationals, min_size=9, max_size=9), st.integers(1, 6), st.integers(1, 5))
def test_slope_homogeneous(cs, rank, k):
    c1 = LAT.vector(cs)
    assert slope(k * c1, k * rank, C) == slope(c1, rank, C)
