from fractions import Fraction
from itertools import product

import pytest

from colorsuper.coset_realization import (
    DiffOperator, NotRealized, WeightData, check_invariance, check_pi_L_homomorphism, compose,
    direct_kernel_dimension, final_equation, graded_commutator, kernel_dimension, pi_L_first_order, pi_R,
    proportionality, proposition_operator, realize_singular, rewrite_in_psi_theta,
)
from colorsuper.color_algebra import bracket, gen
from colorsuper.grading import D01, ZERO, sign
from colorsuper.grassmann_calc import ChartMismatch, SuperFunction, parse_superfunction
from colorsuper.scalars import SQRT2, Scalar
from colorsuper.verma import BasisKet, VermaVector

F = Scalar.f()
dx = DiffOperator.partial("x")
dp = DiffOperator.partial("psi+")
dm = DiffOperator.partial("psi-")
psi_m = SuperFunction.var("psi-", "pm")


def theorem_vector(n):
    return VermaVector({BasisKet(n, 0, 0): 1, BasisKet(n - 1, 1, 1): Scalar(n) / (F - n)})


# ---------------------------------------------------------------------------
# right action

def test_right_action_generators():
    # [PAPER]
    assert pi_R("A+") == dx
    assert pi_R("d+") == dp + psi_m * dx * 2
    assert pi_R("d-") == dm
    w = WeightData.of(Fraction(1, 3), -2)
    assert pi_R("N", w) == DiffOperator.multiplication(Scalar(Fraction(1, 3)))
    assert pi_R("Ft", w) == DiffOperator.multiplication(Scalar(-2))


def test_lowering_generators_are_not_realized():
    for g in ("A-", "c+", "c-"):
        with pytest.raises(NotRealized):
            pi_R(g)


def test_composition_example():
    # [DERIVED] d/dpsi- (2 psi- d/dx phi) = 2 dx phi - 2 psi- d/dpsi- dx phi
    assert str(compose(dm, psi_m * dx * 2)) == "-2*psi- dx dpsi- + 2 dx"


@pytest.mark.parametrize("x,y", list(product(("A+", "d+", "d-"), repeat=2)))
def test_right_action_is_homomorphism_on_raising_part(x, y):
    s = sign(gen(x).degree, gen(y).degree)
    lhs = graded_commutator(pi_R(x), pi_R(y), s)
    rhs = DiffOperator({}, "pm")
    for (_, g), c in bracket(x, y).terms.items():
        rhs = rhs + pi_R(g) * c
    assert lhs == rhs


def test_cartan_constants_do_not_see_brackets():
    # pi_R(N) = h is a constant: its commutator with dx vanishes although [[N, A+]] = 2 A+
    assert not graded_commutator(pi_R("N"), pi_R("A+"), 1)
    assert bracket("N", "A+")


def test_operator_applies_right_to_left():
    phi = parse_superfunction("x^2*psi+*psi-", "pm")
    # dpsi+ dpsi- phi: first d/dpsi- gives -x^2 psi+, then d/dpsi+ gives -x^2
    assert compose(dp, dm).apply(phi) == parse_superfunction("-x^2", "pm")
    assert (dx ** 2).apply(phi) == parse_superfunction("2*psi+*psi-", "pm")


def test_operator_json_round_trip():
    op = proposition_operator(3, 2)
    assert DiffOperator.from_json(op.to_json()) == op


def test_chart_mismatch():
    with pytest.raises(ChartMismatch):
        dx + DiffOperator.partial("x", "pt")


# ---------------------------------------------------------------------------
# singular vectors as operators

def test_level_one_operators():
    assert realize_singular(VermaVector({BasisKet(0, 0, 1): 1})) == proposition_operator(1)
    assert realize_singular(VermaVector({BasisKet(0, 1, 0): 1})) == proposition_operator(2)


@pytest.mark.parametrize("n", range(1, 7))
def test_even_level_operator(n):
    op = realize_singular(theorem_vector(n), WeightData.of(-n))
    assert op == proposition_operator(3, n)
    # [PAPER] [dx + n/(f-n) (dpsi+ + 2 psi- dx) dpsi-] dx^(n-1)
    alpha = Scalar(n) / (F - n)
    direct = compose(dx + compose(dp + psi_m * dx * 2, dm) * alpha, dx ** (n - 1))
    assert op == direct


def test_numeric_example():
    # [DERIVED] h = -1, f = 2: alpha = 1/(2-1) = 1
    v = VermaVector({BasisKet(1, 0, 0): 1, BasisKet(0, 1, 1): 1})
    op = realize_singular(v, WeightData.of(-1, 2))
    assert str(op) == "dpsi+ dpsi- + 2*psi- dx dpsi- + dx"


@pytest.mark.parametrize("which,n,scale", [(1, None, SQRT2 / 2), (2, None, SQRT2 / 2)]
                         + [(3, n, 1) for n in range(1, 5)])
def test_final_equations_up_to_scale(which, n, scale):
    rewritten = rewrite_in_psi_theta(proposition_operator(which, n))
    assert proportionality(rewritten, final_equation(which, n)) == scale


@pytest.mark.parametrize("n", range(1, 5))
def test_cross_term_coefficient(n):
    rewritten = rewrite_in_psi_theta(proposition_operator(3, n))
    zeta = SuperFunction.var("zeta", "pt")
    # [PAPER] -(n zeta/(f-n)) d^2/dpsi dtheta, composed with dx^(n-1)
    assert rewritten.terms[(n - 1, 1, 1)] == zeta * (-Scalar(n) / (F - n))


@pytest.mark.parametrize("which,n", [(1, None), (2, None), (3, 1), (3, 2), (3, 3)])
def test_inverse_chart_change(which, n):
    op = proposition_operator(which, n)
    assert rewrite_in_psi_theta(rewrite_in_psi_theta(op), "pm") == op


def test_proportionality_rejects_different_shapes():
    assert proportionality(dx, dm) is None
    assert proportionality(dx * 3, dx) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_kernel_dimensions_agree(n):
    f0 = Fraction(2 * n + 1, 2)
    v = theorem_vector(n)
    op = realize_singular(v, WeightData.of(-n, f0))
    assert kernel_dimension(op, n + 2) == direct_kernel_dimension(v, -n, f0, n + 2)


def test_kernel_dimension_examples():
    # [DERIVED] d/dpsi- kills x^a and x^a psi+: 2 (cap + 1) functions
    assert kernel_dimension(dm, 3) == 8
    # dx^n kills polynomials of x-degree < n, times the 4 odd monomials
    assert kernel_dimension(dx ** 2, 4) == 8


# ---------------------------------------------------------------------------
# left action

def test_left_action_examples():
    # [DERIVED] translation in x; d+ and d- to first order
    assert pi_L_first_order("A+") == -dx
    assert pi_L_first_order("d+") == -dp
    assert pi_L_first_order("d-") == -dm + SuperFunction.var("psi+", "pm") * dx * 2


def test_left_action_homomorphism():
    rep = check_pi_L_homomorphism()
    assert rep.pairs_checked == 64
    assert rep.ok, rep.failures[:2]


def test_left_action_homomorphism_numeric_weights():
    assert check_pi_L_homomorphism(WeightData.of(Fraction(-3, 2), 5), x_cap=2).ok


def test_invariance_of_first_operator():
    w = WeightData.of(-F, F)
    rep = check_invariance(proposition_operator(1), w, w.shifted(1, -1), op_degree=D01)
    assert rep.ok


def test_invariance_of_second_operator():
    w = WeightData.of(F, F)
    rep = check_invariance(proposition_operator(2), w, w.shifted(1, 1), op_degree=D01)
    assert rep.ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_invariance_of_even_level_operator(n):
    w = WeightData.of(-n, F)
    rep = check_invariance(proposition_operator(3, n), w, w.shifted(2 * n, 0), op_degree=ZERO)
    assert rep.ok


def test_invariance_fails_at_wrong_weights():
    w = WeightData.of(-1, F)
    rep = check_invariance(proposition_operator(3, 1), w, w.shifted(2, 1))
    assert not rep.ok
    assert rep.residuals["Ft"] and rep.monomial_failures["Ft"]
    assert not rep.residuals["N"]


def test_invariance_needs_graded_sign():
    w = WeightData.of(-F, F)
    rep = check_invariance(proposition_operator(1), w, w.shifted(1, -1), op_degree=ZERO)
    assert not rep.ok
