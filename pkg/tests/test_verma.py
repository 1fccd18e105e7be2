from itertools import product

import pytest

from colorsuper.color_algebra import UnknownGenerator, bracket, gen
from colorsuper.grading import sign
from colorsuper.scalars import Scalar
from colorsuper.verma import (
    GENERATORS, BasisKet, VermaVector, act, act_element, act_oracle, ket, level_subspace, weight_blocks,
)

H, F = Scalar.h(), Scalar.f()


def kets(kmax):
    return [BasisKet(k, mu, nu) for k in range(kmax + 1) for mu in (0, 1) for nu in (0, 1)]


def vec(*pairs):
    return VermaVector({BasisKet(*b): Scalar.coerce(c) for b, c in pairs})


# [PAPER] action formulas, evaluated by hand at specific kets
def test_cartan_eigenvalues():
    assert act("N", (2, 1, 0)) == vec(((2, 1, 0), H + 5))
    assert act("Ft", (2, 1, 0)) == vec(((2, 1, 0), F + 1))
    assert act("Ft", (0, 0, 1)) == vec(((0, 0, 1), F - 1))


def test_raising_actions():
    assert act("A+", (1, 0, 1)) == vec(((2, 0, 1), 1))
    assert act("d+", (1, 1, 0)) == VermaVector()
    assert act("d-", (0, 1, 0)) == vec(((0, 1, 1), -1), ((1, 0, 0), 2))
    assert act("d-", (0, 1, 1)) == vec(((1, 0, 1), 2))


def test_lowering_actions():
    assert act("A-", (2, 1, 1)) == vec(((1, 1, 1), 8 * (H + 3)), ((2, 0, 0), 4 * (H + F)))
    assert act("c+", (1, 1, 0)) == vec(((1, 0, 0), 2 * (H + 2 - F)), ((0, 1, 1), -2))
    assert act("c-", (1, 0, 1)) == vec(((1, 0, 0), 2 * (H + F)), ((0, 1, 1), 2))
    assert act("c-", (0, 0, 0)) == VermaVector()


def test_lowest_weight_vector_is_annihilated():
    for g in ("A-", "c+", "c-"):
        assert not act(g, (0, 0, 0))


@pytest.mark.parametrize("g", GENERATORS)
def test_closed_form_matches_straightening(g):
    for b in kets(5):
        assert act(g, b) == act_oracle(g, b), (g, b)


def test_eight_generators():
    assert sorted(GENERATORS) == sorted(["A+", "A-", "N", "Ft", "c+", "c-", "d+", "d-"])


@pytest.mark.parametrize("x,y", list(product(GENERATORS, repeat=2)))
def test_representation_property(x, y):
    s = sign(gen(x).degree, gen(y).degree)
    for b in kets(3):
        v = VermaVector({b: Scalar(1)})
        lhs = act(x, act(y, v)) - act(y, act(x, v)) * s
        assert lhs == act_element(bracket(x, y), v), (x, y, b)


def test_levels_and_blocks():
    assert level_subspace(0) == [ket(0, 0, 0)]
    assert level_subspace(5) == [ket(2, 0, 1), ket(2, 1, 0)]
    assert level_subspace(6) == [ket(3, 0, 0), ket(2, 1, 1)]
    assert weight_blocks(5) == [[ket(2, 0, 1)], [ket(2, 1, 0)]]
    assert weight_blocks(6) == [[ket(3, 0, 0), ket(2, 1, 1)]]
    for m in range(1, 9):
        for b in level_subspace(m):
            assert b.level == m
            assert act("N", b) == VermaVector({b: H + m})


def test_bad_kets():
    with pytest.raises(ValueError):
        ket(0, 2, 0)
    with pytest.raises(ValueError):
        ket(-1, 0, 0)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        act("b+", (0, 0, 0))


def test_numeric_weights():
    v = act("A-", (1, 1, 1), Scalar(-2), Scalar(2))
    assert v == vec(((0, 1, 1), 4 * (-2 + 2)), ((1, 0, 0), 0))


def test_json_round_trip():
    v = vec(((2, 1, 1), Scalar(3) / (F - 3)), ((3, 0, 0), 1))
    assert VermaVector.from_json(v.to_json()) == v
