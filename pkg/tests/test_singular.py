from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorsuper.scalars import H as PH
from colorsuper.scalars import F as PF
from colorsuper.scalars import Poly2, Scalar
from colorsuper.singular import (
    Branch, SingularReport, classify_singular_symbolic, condition_system, find_singular_numeric,
    grid_values, is_irreducible, scan_grid, scan_point, specialize, theorem_families,
)
from colorsuper.verma import LOWERING, BasisKet, VermaVector, act

H, F = Scalar.h(), Scalar.f()


def one(x):
    return Poly2.const(x)


def paper_cond_sv(n):
    """[PAPER] the four conditions on alpha at level 2n, as (P, Q) with P + alpha Q = 0."""
    return [
        (one(n), PH + one(2 * n) - PF),
        (one(n), -(PH + PF)),
        (PH.scale(n) + one(n * (n - 1)), PH + PF),
        (Poly2(), (PH + one(n)).scale(n - 1)),
    ]


def proportional(a, b):
    (p1, q1), (p2, q2) = a, b
    if not (p1 or q1):
        return not (p2 or q2)
    # p1 q2 = p2 q1 and the constant relating them is the same for both slots
    ref = (p1, p2) if p1 else (q1, q2)
    lam = Scalar(ref[1]) / Scalar(ref[0])
    return lam.is_const() and Scalar(p2) == lam * Scalar(p1) and Scalar(q2) == lam * Scalar(q1)


@pytest.mark.parametrize("n", range(1, 7))
def test_condition_system_matches_paper(n):
    got = condition_system(n)
    assert len(got) == 4
    for mine, theirs in zip(got, paper_cond_sv(n)):
        assert proportional(mine, theirs), (n, mine, theirs)


def test_condition_system_level_six_verbatim():
    got = [(str(p), str(q)) for p, q in condition_system(3)]
    assert got == [("3", "h - f + 6"), ("3", "-h - f"), ("3*h + 6", "h + f"), ("0", "h + 3")]


def _family_key(level, eqs, nonzeros, vector):
    return (level, tuple(str(e) for e in eqs), tuple(str(q) for q in nonzeros), str(vector))


def test_classifier_reproduces_theorem_to_level_twelve():
    fams = classify_singular_symbolic(12)
    got = sorted(_family_key(f.level, f.equalities, f.nonzeros, f.vector) for f in fams)
    want = sorted(_family_key(*t) for t in theorem_families(12))
    assert got == want
    assert len(fams) == 2 + 6


def test_theorem_vector_formula():
    # [PAPER] |n,0,0> + n/(f-n) |n-1,1,1> at h = -n
    for n in range(1, 7):
        v = VermaVector({BasisKet(n, 0, 0): 1, BasisKet(n - 1, 1, 1): Scalar(n) / (F - n)})
        for L in LOWERING:
            assert not act(L, v, Scalar(-n), F)


def test_families_verify():
    for fam in classify_singular_symbolic(8, complete=True):
        assert fam.verify()


def test_complete_mode_adds_leading_zero_branch():
    extra = [f for f in classify_singular_symbolic(12, complete=True) if f.ansatz == "leading-zero"]
    assert [f.level for f in extra] == [2, 4, 6, 8, 10, 12]
    for f in extra:
        n = f.level // 2
        assert f.vector == VermaVector({BasisKet(n - 1, 1, 1): 1})
        assert f.applies(-n, n)
        assert not f.applies(-n, n + 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_missed_vector_at_h_minus_n_f_n(n):
    # [DERIVED] A- |n-1,1,1> = 4(n-1)(h+n)|n-2,1,1> + 4(h+f)|n-1,0,0>, c+- give 2(h+f), 2(h+2n-f)
    v = VermaVector({BasisKet(n - 1, 1, 1): 1})
    for L in LOWERING:
        assert not act(L, v, Scalar(-n), Scalar(n))
    pairs = find_singular_numeric(-n, n, 2 * n).pairs()
    assert (2 * n, v) in pairs


def test_numeric_examples():
    assert find_singular_numeric(1, 1, 6).pairs() == [(1, VermaVector({BasisKet(0, 1, 0): 1}))]
    assert find_singular_numeric(Fraction(1, 2), Fraction(-1, 2), 6).pairs() == [
        (1, VermaVector({BasisKet(0, 0, 1): 1}))]
    got = find_singular_numeric(-2, Fraction(1, 2), 6).pairs()
    alpha = Scalar(2) / (Scalar(Fraction(1, 2)) - 2)
    assert got == [(4, VermaVector({BasisKet(2, 0, 0): 1, BasisKet(1, 1, 1): alpha}))]
    assert find_singular_numeric(7, Fraction(1, 3), 8).pairs() == []


def test_origin_has_two_level_one_vectors():
    assert [m for m, _ in find_singular_numeric(0, 0, 6).pairs()] == [1, 1]


def test_report_rejects_non_singular_vector():
    from colorsuper.singular import SingularEntry

    with pytest.raises(AssertionError):
        SingularReport(Fraction(1), Fraction(2), 2, [SingularEntry(1, VermaVector({BasisKet(0, 1, 0): 1}))])


def test_report_json_round_trip():
    r = find_singular_numeric(-3, Fraction(2, 5), 6)
    back = SingularReport.from_json(r.to_json())
    assert back.pairs() == r.pairs()


def test_specialize_respects_nonzero_conditions():
    fams = classify_singular_symbolic(6)
    assert [m for m, _ in specialize(fams, -2, 2)] == [1]
    assert [m for m, _ in specialize(fams, -2, 3)] == [4]


def test_grid_values():
    vals = grid_values(-5, 5)
    assert len(vals) == 39
    assert Fraction(-5, 4) in vals and Fraction(0) in vals
    assert grid_values(2) == grid_values(-2, 2)
    with pytest.raises(ValueError):
        grid_values(3, 1)


def test_scan_faithful_vs_complete():
    vals = grid_values(-2, 2)
    faithful = scan_grid(vals, 6)
    bad = sorted((p.h0, p.f0) for p in faithful if not p.agrees)
    assert bad == [(-2, 2), (-1, 1)]
    assert all(p.agrees for p in scan_grid(vals, 6, complete=True))
    assert all(p.criterion_agrees for p in faithful)


def test_scan_workers_give_same_result():
    vals = grid_values(-1, 1)
    a = [p.to_json() for p in scan_grid(vals, 4)]
    b = [p.to_json() for p in scan_grid(vals, 4, workers=2)]
    assert a == b


@given(st.fractions(min_value=-6, max_value=6, max_denominator=6),
       st.fractions(min_value=-6, max_value=6, max_denominator=6))
def test_numeric_vectors_reverify(h0, f0):
    p = scan_point(h0, f0, 6, complete=True)
    assert p.agrees
    for e in p.report.entries:
        for L in LOWERING:
            assert not act(L, e.vector, Scalar(h0), Scalar(f0))


def test_irreducibility_certificates():
    assert is_irreducible(1, 3)
    assert not is_irreducible(2, 2)
    c = is_irreducible(-2, 1)
    assert not c and "level 4" in str(c)
    # h = -n with f = n: the criterion's second clause holds, but h = -f still applies
    assert not is_irreducible(-3, 3)
    assert str(is_irreducible(Fraction(1, 2), 3)) == "irreducible"


def test_branch_impose_and_exclude():
    b = Branch().impose(PH + one(2), "x")
    assert b.h == Scalar(-2)
    assert b.impose(PH, "y") is None
    c = b.exclude(PF - one(2), "z")
    assert c.contains(-2, 3) and not c.contains(-2, 2)


def test_max_level_validation(monkeypatch):
    with pytest.raises(ValueError):
        classify_singular_symbolic(0)
    with pytest.raises(ValueError):
        find_singular_numeric(0, 0, 0)
    monkeypatch.setenv("COLORSUPER_MAX_LEVEL", "4")
    from colorsuper.singular import default_max_level

    assert default_max_level() == 4
