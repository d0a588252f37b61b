from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainpoly.exact import as_q, format_q, harmonic, moment, pochhammer, rank, solve_linear


@pytest.mark.parametrize("text,want", [("3", F(3)), ("-2/4", F(-1, 2)), (" 7/3 ", F(7, 3))])
def test_as_q_strings(text, want):
    assert as_q(text) == want


def test_as_q_rejects_floats_bools_and_zero_denominators():
    with pytest.raises(TypeError):
        as_q(0.5)
    with pytest.raises(TypeError):
        as_q(True)
    with pytest.raises(ValueError):
        as_q("1/0")


@given(st.fractions())
def test_format_roundtrip(x):
    assert as_q(format_q(x)) == x


def test_format_integer_has_no_slash():
    assert format_q(F(4, 2)) == "2"
    assert format_q(F(-3, 6)) == "-1/2"


def test_pochhammer_values():
    assert pochhammer(F(1, 2), 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3) == 0


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(4) == F(25, 12)


def test_moment_is_gamma_ratio():
    # int z^(k+a) e^-z / Gamma(a+1) = Gamma(a+k+1)/Gamma(a+1)
    assert moment(0, F(1, 3)) == 1
    assert moment(3, 0) == 6
    assert moment(2, F(1, 2)) == F(3, 2) * F(5, 2)
    with pytest.raises(ValueError):
        moment(1, -1)


def test_solve_linear_and_rank():
    assert solve_linear([[1, 2], [3, 4]], [5, 6]) == [F(-4), F(9, 2)]
    assert solve_linear([[1, 1], [1, 1]], [0, 1]) is None
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
