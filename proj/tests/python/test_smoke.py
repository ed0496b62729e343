import pytest

import hcpair


def test_rates():
    assert hcpair.h2(0.5) == pytest.approx(1.0)
    assert hcpair.kappa_z(0.1) == pytest.approx(0.1421937055582244, abs=1e-8)
    assert hcpair.trial_count(18, 64, 12.0, 2, 1) == 267
    rows = hcpair.table1()
    assert len(rows) == 7
    assert rows[4]["gamma_gv"] == pytest.approx(1.6949011893959167, abs=1e-12)


def test_planted_instance_round_trip(tmp_path):
    inst = hcpair.generate_planted(32, 16, 3, d2=5, seed=4)
    assert inst.n == 32 and inst.m == 16
    i, j, d = inst.planted
    assert d == 3
    path = tmp_path / "inst.bin"
    hcpair.write_instance(str(path), inst)
    back = hcpair.read_instance(str(path))
    assert back.rows == inst.rows


def test_solvers_match_brute_force():
    inst = hcpair.generate_planted(40, 16, 2, d2=4, seed=2)
    brute = hcpair.brute_force(inst)
    for res in (
        hcpair.solve_randomized(inst, 2, seed=1),
        hcpair.solve_gapped(inst, 2, 4, seed=1),
        hcpair.solve_deterministic(inst, 2),
    ):
        assert res.pair == brute.pair
        assert res.dist == brute.dist
    dmin, res, radii = hcpair.search_dmin(inst, seed=5)
    assert dmin == 2 and res.pair == brute.pair and radii[0] == 1


def test_worker_count_does_not_change_result():
    inst = hcpair.generate_planted(64, 18, 4, d2=6, seed=9)
    one = hcpair.solve_randomized(inst, 4, seed=3, workers=1, early_exit=False)
    many = hcpair.solve_randomized(inst, 4, seed=3, workers=4, early_exit=False)
    assert one == many


def test_bichromatic():
    red = ["101010101010"]
    blue = ["010101010101", "101010101011"]
    res = hcpair.solve_bichromatic(red, blue, 1, seed=0)
    assert (res.i, res.j, res.dist) == (0, 1, 1)


def test_codes():
    code = hcpair.GilbertCode(3, 1, 0)
    assert code.size == 4
    assert code.covering_radius == 1
    rs = hcpair.ReedSolomon(8, 32, 16)
    msg = list(range(16))
    word = rs.encode(msg)
    word[3] ^= 7
    assert rs.decode(word) == msg


def test_errors_are_typed():
    with pytest.raises(hcpair.DimensionError):
        hcpair.Instance(["0101", "011"])
    with pytest.raises(hcpair.HcpError):
        hcpair.solve_randomized(hcpair.generate_planted(8, 12, 2, seed=0), 2, code="bogus")


def test_lightbulb():
    out = hcpair.lightbulb(128, 0.98, seed=1)
    assert out["recovered"]
    assert out["sample_bits"] == hcpair.sample_dimension(128, 0.98)
