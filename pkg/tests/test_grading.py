from itertools import product

import pytest

from colorsuper.grading import ALL_DEGREES, D01, D10, D11, ZERO, Degree, inner, sign


def test_four_degrees_form_klein_group():
    assert len(set(ALL_DEGREES)) == 4
    for a in ALL_DEGREES:
        assert a + a == ZERO
        assert a + ZERO == a
    assert D01 + D10 == D11


def test_sign_table():
    # commutator unless the inner product is odd
    expected = {
        (ZERO, ZERO): 1, (ZERO, D11): 1, (D01, D01): -1, (D10, D10): -1,
        (D11, D11): 1, (D01, D10): 1, (D01, D11): -1, (D10, D11): -1,
    }
    for (a, b), s in expected.items():
        assert sign(a, b) == s
        assert sign(b, a) == s


def test_sign_is_bicharacter():
    for a, b, c in product(ALL_DEGREES, repeat=3):
        assert sign(a + b, c) == sign(a, c) * sign(b, c)
        assert inner(a, b) == inner(b, a)


def test_parse_round_trip():
    for d in ALL_DEGREES:
        assert Degree.parse(str(d)) == d


@pytest.mark.parametrize("bad", ["2", "012", "ab", "21"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Degree.parse(bad)


def test_bits_only():
    with pytest.raises(ValueError):
        Degree(2, 0)


def test_scalar_multiple_is_parity():
    assert 2 * D11 == ZERO
    assert 3 * D10 == D10
