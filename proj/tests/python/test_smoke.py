import cmath
from fractions import Fraction

import pytest

import gkz


def test_command_names():
    assert "verify" in gkz.command_names()


def test_axis_basis_is_annihilated():
    basis = gkz.axis_basis(2, 3, Fraction(1, 2), 40)
    assert len(basis) == 2
    for f in basis:
        assert gkz.annihilates(2, 3, "1/2", f) == (True, True)


def test_resonant_polynomial():
    phi0 = gkz.axis_basis(2, 3, 8, 40)[0]
    assert phi0.terms == {(Fraction(4), Fraction(0)): 1, (Fraction(1), Fraction(2)): 12}
    rd = gkz.resonance_data(2, 3, 8)
    assert rd["q"] == 0 and rd["m0"] == 4 and rd["mprime"] == 2
    assert rd["vtilde"] == (Fraction(-2), Fraction(4))
    assert gkz.resonance_data(2, 3, "1/2") is None


def test_gevrey_index_near_slope():
    f = gkz.axis_basis(2, 3, "1/2", 300)[0]
    r = gkz.gevrey_index(f)
    assert r["classification"] == "GEVREY"
    assert abs(r["estimated_index"] - 1.5) <= 0.05
    assert r["s_theoretical"] == "3/2"


def test_monodromy():
    eig = gkz.monodromy_eigenvalues(2, 3, "1/2")
    assert any(abs(z - 1j) < 1e-12 for z in eig)
    assert all(abs(abs(z) - 1) < 1e-12 for z in eig)
    assert cmath.isclose(sorted(gkz.monodromy_eigenvalues(2, 3, 1), key=lambda z: z.real)[1], 1)


def test_ext_table_match():
    t = gkz.ext_table(2, 3, "1/2", 1, 2, "O")
    assert t["status"] == "MATCH"
    assert t["predicted"] == {"0": 2, "1": 0, "2": 0}
    assert gkz.ext_table(2, 3, 8, None, "inf", "Q")["measured"] == {"0": 0, "1": 0, "2": 0}


def test_run_command_and_errors():
    out = gkz.run_command("A = 2 3\nbeta = 1\n", "monodromy")
    assert out["passed"] is True
    assert gkz.run_command("A = 2 3\nbeta = 1\n", "monodromy", "text").endswith("\n")
    with pytest.raises(gkz.GkzError, match="gcd"):
        gkz.run_command("A = 2 4\nbeta = 1\n", "basis")
    with pytest.raises(ValueError):
        gkz.ext_table(2, 3, 1, 1, 2, "X")
    assert gkz.normalize_spec("beta = 1\nA = 2 3\n").startswith("A = 2 3")
