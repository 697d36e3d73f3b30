import cmath
import math
from fractions import Fraction

import pytest

import weilsum


def test_lattice():
    L = weilsum.Lattice([[2, 0, 0], [0, 2, 0], [0, 0, -2]])
    assert L.rank == 3
    assert L.det == -8
    assert L.signature == (2, 1)
    assert len(L.discriminant_group()) == 8
    with pytest.raises(weilsum.DomainError):
        weilsum.Lattice([[3]])


def test_kloosterman_sum():
    s = weilsum.kloosterman_sum([[2]], ["1/2"], [Fraction(1, 2)], 1, 1, 5)
    assert s.real == pytest.approx(2.558336368008463, rel=1e-14)
    assert abs(s.imag) < 1e-30
    with pytest.raises(weilsum.DomainError):
        weilsum.kloosterman_sum([[2]], ["1/2"], None, 2, 0, 3)


def test_ordinary_sum_weil_bound():
    for p in (2, 3, 5, 7, 11, 13):
        assert abs(weilsum.kloosterman_ordinary(1, 1, p)) <= 2 * math.sqrt(p)


def test_identity_and_fast_sum():
    r = weilsum.verify_identity([[2]], ["1/2"], ["1/2"], 1, 1, 5, 3)
    assert r["residual"] < 1e-40
    assert r["lhs"].real == pytest.approx(-0.6180339887498947, rel=1e-14)
    L = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    a = [Fraction(1, 2), 0, 0]
    r = weilsum.verify_identity(L, a, a, 4, 4, 3, 2)
    assert r["residual"] < 1e-40
    fast = weilsum.fast_kloosterman(L, a, a, 4, 4, 3, 1)
    slow = weilsum.kloosterman_sum(L, a, a, 4, 4, 3)
    assert abs(fast - slow) < 1e-30


def test_classical_identities():
    assert weilsum.verify_theta_identity(5, 1, 4, 3)["residual"] < 1e-40
    assert weilsum.verify_eta_identity(1, 49, 5, 7)["residual"] < 1e-40


def test_gauss_and_characters():
    g = weilsum.gauss_sum("plain", c=3)
    assert g == pytest.approx(1j * math.sqrt(3))
    assert weilsum.gauss_sum("pow2", a=1, b=0, lambda_=2, mode="brute") == pytest.approx(2 + 2j)
    assert weilsum.chi_m(5, 1, 1, -1, 1) == 1
    assert weilsum.weil_bound_rhs(1, 1, 1, 1) == pytest.approx(1.0)


def test_rho_and_xi():
    S = weilsum.rho([[2]], 0, -1, 1, 0)
    assert S[1][1] == pytest.approx(-0.5 + 0.5j)
    assert S[0][0] == pytest.approx(cmath.exp(-0.25j * math.pi) / math.sqrt(2))
    assert isinstance(weilsum.xi([[2, 0, 0], [0, 2, 0], [0, 0, 2]], ["1/2", 0, 0], ["1/2", 0, 0], 4, 4, 4, 3), Fraction)


def test_cli_entry():
    code, out, err = weilsum.run_cli(["compute-sum", "--gram", "[[2]]", "--alpha", "1/2", "--beta", "1/2",
                                      "--m", "1", "--n", "1", "--c", "1"])
    assert code == 0
    assert '"re"' in out
    code, _, _ = weilsum.run_cli(["compute-sum", "--gram", "[[3]]"])
    assert code == 2
