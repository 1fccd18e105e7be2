import time
from itertools import product

import pytest

from colorsuper import color_algebra as ca
from colorsuper.color_algebra import (
    EIGENVALUES, NEW_BASIS, OLD_BASIS, AlgebraElement, RelationMismatch, StructureTable, UnknownGenerator,
    bracket, build_new_basis, check_anti_involution, check_axioms, default_table, elem, expand, omega,
    to_new_basis,
)
from colorsuper.grading import D01, D10, D11, ZERO
from colorsuper.grassmann_calc import check_zeta_oracle
from colorsuper.scalars import SQRT2

E = AlgebraElement.of

# [PAPER] the non-vanishing defining relations, verbatim
DEFINING = [
    ("A-", "A+", E("N", 4)), ("A-", "N", E("A-", 2)), ("A+", "N", E("A+", -2)),
    ("A-", "b+", E("b-", 2)), ("A+", "b-", E("b+", -2)), ("N", "b-", E("b-", -1)), ("N", "b+", E("b+", 1)),
    ("A-", "a+", E("a-", 2)), ("A+", "a-", E("a+", -2)), ("N", "a-", E("a-", -1)), ("N", "a+", E("a+", 1)),
    ("b-", "b-", E("A-", 2)), ("b-", "b+", E("N", 2)), ("b+", "b+", E("A+", 2)),
    ("b-", "a+", E("F", 1)), ("b+", "a-", E("F", -1)), ("b-", "F", E("a-", 2)), ("b+", "F", E("a+", 2)),
    ("a-", "a-", E("A-", 2)), ("a-", "a+", E("N", 2)), ("a+", "a+", E("A+", 2)),
    ("a-", "F", E("b-", 2)), ("a+", "F", E("b+", 2)),
]

# [PAPER] rotated-basis relations; every other pair among c+-, d+-, Ft vanishes
ROTATED = {
    ("c+", "c-"): E("A-", 2), ("d+", "d-"): E("A+", 2),
    ("c+", "d+"): E("N", 2) - E("Ft", 2), ("c-", "d-"): E("N", 2) + E("Ft", 2),
    ("Ft", "c+"): E("c+", -1), ("Ft", "c-"): E("c-", 1),
    ("Ft", "d+"): E("d+", 1), ("Ft", "d-"): E("d-", -1),
}


def test_degrees_of_defining_basis():
    want = {"A-": ZERO, "A+": ZERO, "N": ZERO, "b-": D10, "b+": D10, "a-": D01, "a+": D01, "F": D11}
    assert {g.name: g.degree for g in OLD_BASIS} == want
    assert len(OLD_BASIS) == 8


@pytest.mark.parametrize("x,y,value", DEFINING, ids=[f"{x},{y}" for x, y, _ in DEFINING])
def test_defining_relations(x, y, value):
    assert bracket(x, y) == value


def test_unlisted_pairs_vanish():
    listed = {(x, y) for x, y, _ in DEFINING} | {(y, x) for x, y, _ in DEFINING}
    for x, y in product(OLD_BASIS, repeat=2):
        if (x.name, y.name) not in listed:
            assert not bracket(x, y), (x.name, y.name)


def test_axioms_exhaustive_and_fast():
    t0 = time.perf_counter()
    rep = check_axioms()
    elapsed = time.perf_counter() - t0
    assert rep.triples_checked == 512
    assert rep.pairs_checked == 64
    assert rep.ok, rep.violations()
    assert elapsed < 1.0


def test_corrupted_table_is_caught():
    bad = default_table().with_entry("A-", "A+", {"N": 3})
    rep = check_axioms(bad)
    assert not rep.ok
    assert not rep.closure and not rep.antisymmetry
    assert ("A-", "A+", "b-") in rep.jacobi


def test_corrupted_grading_is_caught():
    bad = default_table().with_entry("b-", "a+", {"N": 1})
    rep = check_axioms(bad)
    assert ("b-", "a+") in rep.closure


def test_graded_antisymmetry_examples():
    # symmetric for anticommutators, antisymmetric for commutators
    assert bracket("b+", "b-") == bracket("b-", "b+")
    assert bracket("a+", "b-") == -bracket("b-", "a+")
    assert bracket("F", "F") == AlgebraElement()


def test_anti_involution():
    rep = check_anti_involution()
    assert rep.pairs_checked == 64
    assert rep.ok
    for g in ca.GEN.values():
        assert omega(omega(g)) == elem(g)


def test_anti_involution_on_rotated_basis():
    # [PAPER] omega(c+-) = d+-, omega(Ft) = Ft
    assert omega("c+") == E("d+") and omega("c-") == E("d-") and omega("Ft") == E("Ft")
    assert check_anti_involution(NEW_BASIS).ok


def test_zeta_squares_to_one():
    x = E("b-")
    assert x.zeta_left().zeta_left() == x
    # zeta (1,1) against b- (1,0) picks up a sign when moved across
    assert x.zeta_left() == -x.zeta_right()


@pytest.mark.parametrize("x,y", list(product(("c-", "c+", "d-", "d+", "Ft"), repeat=2)))
def test_rotated_relations(x, y):
    want = ROTATED.get((x, y))
    if want is None and (y, x) in ROTATED:
        gx, gy = ca.gen(x), ca.gen(y)
        from colorsuper.grading import sign

        want = ROTATED[(y, x)] * (-sign(gx.degree, gy.degree))
    assert bracket(x, y) == (want if want is not None else AlgebraElement())


def test_nilpotency_and_anticommutation():
    for g in ("c+", "c-", "d+", "d-"):
        assert not bracket(g, g)
    assert not bracket("c+", "d-") and not bracket("c-", "d+")


def test_build_new_basis_definitions():
    defs = build_new_basis()
    half = SQRT2 / 2
    assert defs["c+"] == (E("a-") + E("b-").zeta_right()) * half
    assert defs["d-"] == (E("a+") - E("b+").zeta_left()) * half
    assert defs["Ft"] == E("F").zeta_left() * (SQRT2 * SQRT2 / 4)


def test_rotated_degrees():
    for n in ("c+", "c-", "d+", "d-"):
        assert expand(n).degree() == D01
    assert expand("Ft").degree() == ZERO


def test_eigenvalues_match_brackets():
    for name, (ev_n, ev_ft) in EIGENVALUES.items():
        assert bracket("N", name) == E(name, ev_n)
        assert bracket("Ft", name) == E(name, ev_ft)


def test_rotated_basis_closes():
    for x, y in product(NEW_BASIS, repeat=2):
        v = to_new_basis(bracket(expand(x), expand(y)))
        assert not v.has_zeta()


def test_bare_b_is_outside_rotated_span():
    with pytest.raises(RelationMismatch):
        to_new_basis(E("b-"))


def test_wrong_definition_is_reported():
    # replacing [b-, a+] = F by -F breaks the rotated relations
    bad = default_table().with_entry("b-", "a+", {"F": -1})
    with pytest.raises(RelationMismatch):
        build_new_basis(bad)


def test_clifford_oracle_for_zeta():
    rep = check_zeta_oracle()
    assert rep.pairs_checked == 21 * 21
    assert rep.ok, rep.mismatches[:3]


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        bracket("X", "A+")


def test_table_json_round_trip():
    for table in (default_table(), ca.rotated_table()):
        back = StructureTable.from_json(table.to_json())
        assert dict(back.items()) == dict(table.items())


def test_table_json_rejects_wrong_degree():
    data = default_table().to_json()
    data["degrees"]["F"] = "00"
    with pytest.raises(ValueError):
        StructureTable.from_json(data)


def test_element_json_round_trip():
    x = E("c+", SQRT2) + E("N", 3).zeta_left()
    assert AlgebraElement.from_json(x.to_json()) == x
