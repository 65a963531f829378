import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymr9.errors import ComputationError, InputError
from prymr9.pencils import (
    BlowupSurface,
    PencilSpec,
    a0pp_pairing,
    castelnuovo_number,
    curve_table,
    expected_dim_linear_system,
    k3_pencil_A,
    nikulin_pencil,
    noether_c2,
    octic_pencil_spec,
    pencil_R_breakdown,
    pencil_R_intersections,
    plane_curve_genus,
    reducible_locus_breakdown,
    reducible_locus_codim,
)


def test_plane_curve_genus():
    assert plane_curve_genus(8, 12) == 9
    assert plane_curve_genus(4, 0) == 3
    assert plane_curve_genus(8, 0) == 21
    with pytest.raises(InputError):
        plane_curve_genus(4, 4)
    with pytest.raises(InputError):
        plane_curve_genus(4, -1)


def test_expected_dim():
    assert expected_dim_linear_system(8, [2] * 12) == 8
    assert expected_dim_linear_system(4, [1] * 12) == 2
    cubic = expected_dim_linear_system(3, [1] * 12)
    assert cubic == -3 and cubic.empty_expected
    assert not expected_dim_linear_system(8, [2] * 12).empty_expected


def _syt_count(rows, cols):
    """Standard Young tableaux of a rows x cols rectangle, by brute-force filling."""
    n = rows * cols
    count = 0

    def fill(shape, k):
        nonlocal count
        if k == n:
            count += 1
            return
        for r in range(rows):
            if shape[r] < cols and (r == 0 or shape[r - 1] > shape[r]):
                shape[r] += 1
                fill(shape, k + 1)
                shape[r] -= 1

    fill([0] * rows, 0)
    return count


@pytest.mark.parametrize("g,r,d,expected", [(9, 2, 8, 42), (4, 1, 3, 2), (2, 1, 2, 1)])
def test_castelnuovo(g, r, d, expected):
    assert castelnuovo_number(g, r, d) == expected
    # independent oracle: g^r_d count = #SYT of the (r+1) x (g-d+r) rectangle
    assert _syt_count(r + 1, g - d + r) == expected


def test_castelnuovo_rejects_nonzero_rho():
    with pytest.raises(InputError):
        castelnuovo_number(9, 2, 9)


def test_castelnuovo_integral_sweep():
    seen = 0
    for g, r, d in itertools.product(range(0, 13), range(0, 5), range(0, 16)):
        if d > 2 * g or g - d + r < 1:
            continue
        if g - (r + 1) * (g - d + r) != 0:
            continue
        n = castelnuovo_number(g, r, d)
        assert isinstance(n, int) and n > 0
        assert n == _syt_count(r + 1, g - d + r)
        seen += 1
    assert seen >= 5


def test_noether():
    assert noether_c2(BlowupSurface(1, -19)) == 31
    assert noether_c2(BlowupSurface(1, 9)) == 3
    assert noether_c2(BlowupSurface.plane_blown_up(12)) == 15


@given(st.integers(-100, 100), st.integers(-100, 100))
def test_noether_round_trip(chi, ksq):
    s = BlowupSurface(chi, ksq)
    assert s.Ksq + noether_c2(s) == 12 * s.chiO


def test_octic_pencil_spec():
    spec = octic_pencil_spec()
    assert spec.surface.Ksq == -19 and spec.surface.chiO == 1
    assert spec.fiber_genus == 9 and spec.tangency_base_points == 8


def test_pencil_R():
    R = pencil_R_intersections()
    assert R.low() == (9, 47, 0, 8)
    assert not R.sees_higher_boundary()
    b = pencil_R_breakdown()
    assert (b["c2"], b["boundary_total"], b["delta0p"]) == (31, 63, 47)
    assert b["c2"] == 12 + 19 and b["boundary_total"] == 31 + 32


def test_pencil_R_lambda_cross_module():
    spec = octic_pencil_spec()
    assert pencil_R_intersections()["lambda"] == plane_curve_genus(8, 12) + spec.surface.chiO - 1


def test_pencil_R_without_tangency():
    spec = PencilSpec(9, 0, BlowupSurface(1, -19))
    assert pencil_R_intersections(spec)["delta0'"] == 63


def test_pencil_R_inconsistent():
    with pytest.raises(ComputationError):
        pencil_R_intersections(PencilSpec(9, 40, BlowupSurface(1, -19)))


def test_nikulin_pencil():
    assert nikulin_pencil(9).low() == (10, 56, 0, 8)
    assert nikulin_pencil(7).low() == (8, 44, 0, 8)
    assert nikulin_pencil(9)["delta3"] == 0
    with pytest.raises(InputError):
        nikulin_pencil(1)


def test_k3_pencil():
    # substitute with Python big ints
    assert 2**18 - 1 == 262143
    assert k3_pencil_A(9).low() == (10 * 262143, 72 * (2**17 - 2), 72, 72 * 2**16)
    assert k3_pencil_A(9).low() == (2621430, 9437040, 72, 4718592)
    assert k3_pencil_A(2).low() == (45, 180, 30, 120)
    assert k3_pencil_A(9)["delta3"] == 0


@pytest.mark.parametrize("g", range(2, 10))
def test_k3_pencil_two_torsion_count(g):
    A = k3_pencil_A(g)
    k = 6 * g + 18
    assert A["delta0'"] / k + 2 * A["delta0ram"] / k + 1 == 2 ** (2 * g) - 1


def test_a0pp():
    assert a0pp_pairing(9, 1, 0) == 16
    assert a0pp_pairing(9, 0, 0) == 0
    assert a0pp_pairing(9, 1, 16) == 0


def test_reducible_locus():
    assert reducible_locus_codim() == 4
    b = reducible_locus_breakdown()
    assert b["reducible_params"] == 2 * 2 == 4
    assert b["ambient"] == 8
    assert b["cubic"] < 0 and b["septic"] < 0


def test_curve_table():
    rows = curve_table()
    assert [r[0] for r in rows] == ["R", "Xi", "A"]
    assert rows[0][1:] == (9, 47, 0, 8)
