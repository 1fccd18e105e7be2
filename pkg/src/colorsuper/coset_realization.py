"""Differential operators on covariant functions and the invariant equations.

Functions on the coset are polynomials in x, psi+, psi- (chart ``pm``) or
x, psi, theta (chart ``pt``), with zeta available as a coefficient.  An
operator is kept in normal form: function coefficients on the left, then
``dx^a dv1^e1 dv2^e2`` with v1, v2 the two Grassmann coordinates of the
chart in their canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .grading import ZERO, sign
from .grassmann_calc import (
    CHARTS, PSI, PSI_M, PSI_P, THETA, X, ZETA, ChartMismatch, SuperFunction, change_chart, derive,
)
from .linalg import nullspace
from .scalars import Poly2, QSqrt2, Scalar
from .verma import BasisKet, VermaVector

__all__ = [
    "NotRealized", "DiffOperator", "WeightData", "pi_R", "compose", "realize_singular",
    "rewrite_in_psi_theta", "proportionality", "proposition_operator", "final_equation",
    "monomial_basis", "operator_matrix", "kernel_dimension", "direct_matrix",
    "direct_kernel_dimension", "TruncationFailure", "adjoint_coefficients", "pi_L_first_order",
    "graded_commutator", "check_pi_L_homomorphism", "check_invariance", "InvarianceReport",
    "HomomorphismReport",
]


class NotRealized(ValueError):
    pass


def _dvars(chart: str) -> tuple:
    vs = CHARTS[chart]
    return (vs[0], vs[2], vs[3])


_ONE_D = (0, 0, 0)


def _dmul_left(i: int, d: tuple, chart: str) -> tuple:
    """(sign, multi-index) of d_i composed on the left of the derivative monomial d."""
    if i == 0:
        return 1, (d[0] + 1, d[1], d[2])
    if d[i]:
        return 0, None  # Grassmann derivatives square to zero
    vs = _dvars(chart)
    s = 1
    for j in range(1, i):
        if d[j]:
            s *= sign(vs[i].degree, vs[j].degree)
    out = list(d)
    out[i] = 1
    return s, tuple(out)


class DiffOperator:
    """Sum of ``coefficient * dx^a dv1^e1 dv2^e2`` terms."""

    __slots__ = ("chart", "terms")

    def __init__(self, terms=None, chart="pm"):
        if chart not in CHARTS:
            raise ChartMismatch(f"unknown chart {chart!r}")
        self.chart = chart
        clean = {}
        for d, c in (terms or {}).items():
            if not isinstance(c, SuperFunction):
                c = SuperFunction.const(c, chart)
            if c.chart != chart:
                raise ChartMismatch(f"{c.chart} coefficient in a {chart} operator")
            if c:
                d = tuple(d)
                clean[d] = clean[d] + c if d in clean else c
                if not clean[d]:
                    del clean[d]
        self.terms = dict(sorted(clean.items()))

    # -- constructors ----------------------------------------------------

    @classmethod
    def multiplication(cls, f, chart="pm") -> DiffOperator:
        return cls({_ONE_D: f}, chart)

    @classmethod
    def identity(cls, chart="pm") -> DiffOperator:
        return cls.multiplication(1, chart)

    @classmethod
    def partial(cls, v, chart="pm") -> DiffOperator:
        vs = _dvars(chart)
        v = v if not isinstance(v, str) else next(w for w in vs if w.name == v)
        if v not in vs:
            raise ChartMismatch(f"no derivative d/d{v} in chart {chart}")
        d = [0, 0, 0]
        d[vs.index(v)] = 1
        return cls({tuple(d): 1}, chart)

    # -- arithmetic ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiffOperator):
            return self.chart == other.chart and self.terms == other.terms
        return NotImplemented

    def _same(self, other):
        if other.chart != self.chart:
            raise ChartMismatch(f"{self.chart} vs {other.chart}")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return DiffOperator(out, self.chart)

    def __neg__(self):
        return DiffOperator({d: -c for d, c in self.terms.items()}, self.chart)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Composition with an operator; left multiplication of coefficients by a scalar."""
        if isinstance(other, DiffOperator):
            return compose(self, other)
        return DiffOperator({d: c * other for d, c in self.terms.items()}, self.chart)

    def __rmul__(self, other):
        if isinstance(other, SuperFunction):
            return DiffOperator({d: other * c for d, c in self.terms.items()}, self.chart)
        return self * other

    def __pow__(self, n: int):
        out = DiffOperator.identity(self.chart)
        for _ in range(n):
            out = compose(out, self)
        return out

    # -- evaluation ------------------------------------------------------

    def apply(self, f: SuperFunction) -> SuperFunction:
        if f.chart != self.chart:
            raise ChartMismatch(f"{f.chart} function under a {self.chart} operator")
        vs = _dvars(self.chart)
        out = SuperFunction({}, self.chart)
        for d, c in self.terms.items():
            g = f
            for i in (2, 1):
                if d[i]:
                    g = derive(vs[i], g)
            for _ in range(d[0]):
                g = derive(X, g)
            out = out + c * g
        return out

    __call__ = apply

    def substitute(self, h0=None, f0=None) -> DiffOperator:
        return DiffOperator({d: c.substitute(h0, f0) for d, c in self.terms.items()}, self.chart)

    def map_coefficients(self, fn) -> DiffOperator:
        return DiffOperator({d: fn(c) for d, c in self.terms.items()}, self.chart)

    def order(self) -> int:
        return max((sum(d) for d in self.terms), default=0)

    # -- text ------------------------------------------------------------

    def derivative_text(self, d) -> str:
        vs = _dvars(self.chart)
        parts = []
        for v, e in zip(vs, d):
            if e:
                parts.append(f"d{v.name}" if e == 1 else f"d{v.name}^{e}")
        return " ".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for d, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0])):
            dt = self.derivative_text(d)
            ct = c.to_text()
            if not dt:
                s = ct if len(c.terms) == 1 else f"({ct})"
            elif c == 1:
                s = dt
            elif c == -1:
                s = f"-{dt}"
            elif " " not in ct or _wrapped(ct):
                s = f"{ct} {dt}"
            else:
                s = f"({ct}) {dt}"
            out.append(s)
        text = out[0]
        for s in out[1:]:
            text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return text

    def __repr__(self):
        return f"DiffOperator[{self.chart}]({self})"

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "variables": [v.name for v in _dvars(self.chart)],
            "terms": [
                {"derivative": list(d), "coefficient": c.to_json()["terms"]}
                for d, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> DiffOperator:
        chart = data["chart"]
        return cls(
            {
                tuple(t["derivative"]): SuperFunction.from_json({"chart": chart, "terms": t["coefficient"]})
                for t in data["terms"]
            },
            chart,
        )


def _wrapped(text: str) -> bool:
    """True if one pair of parentheses encloses the whole text."""
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def _single_left(i: int, op: DiffOperator) -> DiffOperator:
    """d_i composed on the left of op, by the graded Leibniz rule."""
    chart = op.chart
    v = _dvars(chart)[i]
    out = {}

    def put(d, c):
        if c:
            out[d] = out[d] + c if d in out else c

    for d, c in op.terms.items():
        put(d, derive(v, c))
        for deg, part in c.parts_by_degree().items():
            s, dd = _dmul_left(i, d, chart)
            if s:
                put(dd, part * (s * sign(v.degree, deg)))
    return DiffOperator(out, chart)


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """a after b, in normal form."""
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart} vs {b.chart}")
    out = DiffOperator({}, a.chart)
    for d, c in a.terms.items():
        t = b
        for i in (2, 1):
            if d[i]:
                t = _single_left(i, t)
        for _ in range(d[0]):
            t = _single_left(0, t)
        out = out + c * t
    return out


# ---------------------------------------------------------------------------
# right action

@dataclass(frozen=True)
class WeightData:
    Lambda_N: Scalar = Scalar.h()
    Lambda_Ftilde: Scalar = Scalar.f()

    @classmethod
    def of(cls, h=None, f=None) -> WeightData:
        return cls(
            Scalar.h() if h is None else Scalar.coerce(h),
            Scalar.f() if f is None else Scalar.coerce(f),
        )

    def specialize(self, c: Scalar) -> Scalar:
        """Express a Scalar in h, f at these weights."""
        h, f = self.Lambda_N, self.Lambda_Ftilde
        if h.den.is_one() and f.den.is_one():
            return Scalar.coerce(c).compose(h.num, f.num)
        return _compose_rational(c, h, f)

    def shifted(self, level_shift: int, ft_shift: int) -> WeightData:
        return WeightData(self.Lambda_N + level_shift, self.Lambda_Ftilde + ft_shift)


def _compose_rational(c: Scalar, h: Scalar, f: Scalar) -> Scalar:
    def ev(p: Poly2) -> Scalar:
        acc = Scalar(0)
        for (i, j), v in p.terms.items():
            acc = acc + Scalar(Poly2.const(v)) * h ** i * f ** j
        return acc

    return ev(c.num) / ev(c.den)


_PM = "pm"


def _var_fn(v, chart=_PM) -> SuperFunction:
    return SuperFunction.var(v, chart)


def pi_R(g, w: WeightData | None = None) -> DiffOperator:
    """Right action of a generator of g_+ or g_0 on covariant functions."""
    from .color_algebra import gen

    w = w or WeightData()
    name = gen(g).name
    dx = DiffOperator.partial(X)
    if name == "A+":
        return dx
    if name == "d+":
        return DiffOperator.partial(PSI_P) + 2 * _var_fn(PSI_M) * dx
    if name == "d-":
        return DiffOperator.partial(PSI_M)
    if name == "N":
        return DiffOperator.multiplication(w.Lambda_N)
    if name == "Ft":
        return DiffOperator.multiplication(w.Lambda_Ftilde)
    raise NotRealized(f"{name} lies in g_- or outside the rotated basis; pi_R is zero or undefined there")


def realize_singular(v: VermaVector, w: WeightData | None = None) -> DiffOperator:
    """Sum over kets of coeff * pi_R(A+)^k pi_R(d+)^mu pi_R(d-)^nu."""
    w = w or WeightData()
    out = DiffOperator({}, _PM)
    ops = {name: pi_R(name, w) for name in ("A+", "d+", "d-")}
    for b, c in v.terms.items():
        op = DiffOperator.identity()
        for name, e in (("A+", b.k), ("d+", b.mu), ("d-", b.nu)):
            for _ in range(e):
                op = compose(op, ops[name])
        out = out + op * w.specialize(c)
    return out


# ---------------------------------------------------------------------------
# change of chart

_INV_SQRT2 = QSqrt2(1) / QSqrt2(0, 1)


def _chart_derivatives(target: str) -> dict:
    """Images of the source-chart partial derivatives (chain rule, left derivatives).

    d/du = sum over target coordinates y of (d y / d u) d/dy, with the
    coefficient computed by the left derivative of the substitution.
    """
    source = "pm" if target == "pt" else "pt"
    src = _dvars(source)
    tgt = _dvars(target)
    out = {src[0]: DiffOperator.partial(X, target)}
    for u in src[1:]:
        op = DiffOperator({}, target)
        for y in tgt[1:]:
            y_in_source = change_chart(SuperFunction.var(y, target), source)
            coef = change_chart(derive(u, y_in_source), target)
            op = op + coef * DiffOperator.partial(y, target)
        out[u] = op
    return out


def rewrite_in_psi_theta(op: DiffOperator, target: str = "pt") -> DiffOperator:
    """Exact change of chart of both coefficients and derivatives."""
    if op.chart == target:
        return op
    dmap = _chart_derivatives(target)
    src = _dvars(op.chart)
    out = DiffOperator({}, target)
    for d, c in op.terms.items():
        t = DiffOperator.identity(target)
        for _ in range(d[0]):
            t = compose(t, dmap[src[0]])
        for i in (1, 2):
            if d[i]:
                t = compose(t, dmap[src[i]])
        out = out + change_chart(c, target) * t
    return out


def proportionality(a: DiffOperator, b: DiffOperator):
    """Scalar lam with a = lam * b, or None."""
    if a.chart != b.chart or set(a.terms) != set(b.terms):
        return None
    if not a.terms:
        return Scalar(1)
    lam = None
    for d in a.terms:
        ca, cb = a.terms[d], b.terms[d]
        if set(ca.terms) != set(cb.terms):
            return None
        for m in ca.terms:
            r = ca.terms[m] / cb.terms[m]
            if lam is None:
                lam = r
            elif r != lam:
                return None
    return lam


# ---------------------------------------------------------------------------
# the invariant operators as displayed

def proposition_operator(which: int, n: int | None = None, f=None) -> DiffOperator:
    """Invariant operators in the (x, psi+, psi-) chart: 1, 2, or 3 (level 2n)."""
    f = Scalar.f() if f is None else Scalar.coerce(f)
    dx = DiffOperator.partial(X)
    dm = DiffOperator.partial(PSI_M)
    dplus = DiffOperator.partial(PSI_P) + 2 * _var_fn(PSI_M) * dx
    if which == 1:
        return dm
    if which == 2:
        return dplus
    if which == 3:
        if n is None or n < 1:
            raise ValueError("operator 3 needs n >= 1")
        alpha = Scalar(n) / (f - n)
        return compose(dx + compose(dplus, dm) * alpha, dx ** (n - 1))
    raise ValueError("which must be 1, 2 or 3")


def final_equation(which: int, n: int | None = None, f=None) -> DiffOperator:
    """The same equations written in x, psi, theta with zeta coefficients."""
    f = Scalar.f() if f is None else Scalar.coerce(f)
    V = lambda v: SuperFunction.var(v, "pt")  # noqa: E731
    psi, theta, zeta = V(PSI), V(THETA), V(ZETA)
    dx = DiffOperator.partial(X, "pt")
    dpsi = DiffOperator.partial(PSI, "pt")
    dth = DiffOperator.partial(THETA, "pt")
    if which == 1:
        return dpsi + zeta * dth
    if which == 2:
        return dpsi - zeta * dth + 2 * (psi - zeta * theta) * dx
    if which == 3:
        if n is None or n < 1:
            raise ValueError("equation 3 needs n >= 1")
        alpha = Scalar(n) / (f - n)
        euler = psi * dpsi + theta * dth - zeta * (psi * dth + theta * dpsi)
        inner = dx + compose(euler, dx) * alpha - compose(dpsi, dth) * (zeta * alpha)
        return compose(inner, DiffOperator.partial(X, "pt") ** (n - 1))
    raise ValueError("which must be 1, 2 or 3")


# ---------------------------------------------------------------------------
# finite-dimensional kernels

def monomial_basis(x_cap: int, chart: str = "pm", with_zeta: bool = False) -> list:
    zs = (0, 1) if with_zeta else (0,)
    return [
        SuperFunction({(a, z, e1, e2): 1}, chart)
        for a, z, e1, e2 in product(range(x_cap + 1), zs, (0, 1), (0, 1))
    ]


def operator_matrix(op: DiffOperator, basis: list) -> list:
    """Rows indexed by output monomials, columns by basis elements."""
    cols = [op.apply(b) for b in basis]
    keys = sorted({m for c in cols for m in c.terms})
    return [[c.terms.get(k, Scalar(0)) for c in cols] for k in keys]


def kernel_dimension(op: DiffOperator, x_cap: int) -> int:
    basis = monomial_basis(x_cap, op.chart)
    rows = operator_matrix(op, basis)
    return len(nullspace(rows, len(basis), Scalar(0), Scalar(1)))


def _direct_ket(b: BasisKet, mono: tuple) -> dict:
    """A+^k d+^mu d-^nu acting on x^a psi+^p psi-^q, by hand-written rules."""
    state = {mono: 1}

    def step(rule):
        nonlocal state
        out = {}
        for m, c in state.items():
            for mm, cc in rule(m):
                out[mm] = out.get(mm, 0) + c * cc
        state = {m: c for m, c in out.items() if c}

    def d_minus(m):
        a, p, q = m
        return [((a, p, 0), -1 if p else 1)] if q else []

    def d_plus(m):
        a, p, q = m
        out = []
        if p:
            out.append(((a, 0, q), 1))
        if a and not q:
            # 2 psi- d/dx: psi- passes psi+ when present
            out.append(((a - 1, p, 1), 2 * a * (-1 if p else 1)))
        return out

    def a_plus(m):
        a, p, q = m
        return [((a - 1, p, q), a)] if a else []

    for _ in range(b.nu):
        step(d_minus)
    for _ in range(b.mu):
        step(d_plus)
    for _ in range(b.k):
        step(a_plus)
    return state


def direct_matrix(v: VermaVector, h0, f0, x_cap: int) -> list:
    """Matrix of the operator of a singular vector, built without DiffOperator."""
    cols = [(a, p, q) for a in range(x_cap + 1) for p in (0, 1) for q in (0, 1)]
    images = []
    for m in cols:
        acc = {}
        for b, c in v.terms.items():
            cv = c.substitute(h0, f0)
            for mm, cc in _direct_ket(b, m).items():
                acc[mm] = acc.get(mm, Scalar(0)) + cv * cc
        images.append(acc)
    keys = sorted({k for img in images for k in img})
    return [[img.get(k, Scalar(0)) for img in images] for k in keys]


def direct_kernel_dimension(v: VermaVector, h0, f0, x_cap: int) -> int:
    rows = direct_matrix(v, h0, f0, x_cap)
    n = 4 * (x_cap + 1)
    rows = [r for r in rows if any(r)]
    return len(nullspace(rows, n, Scalar(0), Scalar(1)))


# ---------------------------------------------------------------------------
# left action to first order

class TruncationFailure(RuntimeError):
    pass


_MAX_AD_ORDER = 12


def _ad_step(z, s: SuperFunction, vec: dict, dX) -> dict:
    """ad of s*Z on tau * sum_V y_V V, returned as the new y's (tau kept leftmost)."""
    from .color_algebra import rotated_table

    table = rotated_table()
    out = {}
    for V, y in vec.items():
        br = table(z, V)
        if not br:
            continue
        factor = sign(z.degree, V.degree) * sign(z.degree, dX)
        sy = s * y
        for (p, g), c in br.terms.items():
            if p:
                raise TruncationFailure("zeta in a rotated-basis bracket")
            term = sy * (c * factor)
            out[g] = out[g] + term if g in out else term
    return {g: y for g, y in out.items() if y}


def _exp_neg_ad(z, s: SuperFunction, vec: dict, dX) -> dict:
    result = dict(vec)
    term = dict(vec)
    for k in range(1, _MAX_AD_ORDER + 1):
        term = _ad_step(z, s, term, dX)
        if not term:
            return {g: y for g, y in result.items() if y}
        coef = Scalar(-1) / k
        for g, y in term.items():
            term[g] = y * coef
            result[g] = result[g] + term[g] if g in result else term[g]
    raise TruncationFailure(f"ad series in {z} did not terminate within {_MAX_AD_ORDER} steps")


def adjoint_coefficients(g) -> dict:
    """y_Z with g_+^{-1} (tau X) g_+ = tau * sum_Z y_Z Z, for g_+ = e^{x A+} e^{psi+ d+} e^{psi- d-}."""
    from .color_algebra import gen

    X_ = gen(g)
    vec = {X_: SuperFunction.const(1)}
    for name, v in (("A+", X), ("d+", PSI_P), ("d-", PSI_M)):
        vec = _exp_neg_ad(gen(name), SuperFunction.var(v, _PM), vec, X_.degree)
    return vec


def pi_L_first_order(g, w: WeightData | None = None) -> DiffOperator:
    """Left action: -(sum over g_+ of y_Z pi_R(Z)) - y_N h - y_Ft f."""
    from .color_algebra import gen

    w = w or WeightData()
    out = DiffOperator({}, _PM)
    for Z, y in adjoint_coefficients(g).items():
        name = gen(Z).name
        if name in ("A+", "d+", "d-", "N", "Ft"):
            out = out - y * pi_R(name, w)
    return out


def graded_commutator(a: DiffOperator, b: DiffOperator, s: int) -> DiffOperator:
    return compose(a, b) - compose(b, a) * s


@dataclass
class HomomorphismReport:
    pairs_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_pi_L_homomorphism(w: WeightData | None = None, x_cap: int = 3) -> HomomorphismReport:
    """[[pi_L(X), pi_L(Y)]] = pi_L([[X, Y]]) for all pairs of the rotated basis.

    Checked both as a normal-form identity and on the monomials up to x^x_cap.
    """
    from .color_algebra import NEW_BASIS, bracket

    w = w or WeightData()
    L = {g: pi_L_first_order(g, w) for g in NEW_BASIS}
    basis = monomial_basis(x_cap)
    report = HomomorphismReport()
    for X_, Y_ in product(NEW_BASIS, repeat=2):
        lhs = graded_commutator(L[X_], L[Y_], sign(X_.degree, Y_.degree))
        rhs = DiffOperator({}, _PM)
        for (p, g), c in bracket(X_, Y_).terms.items():
            rhs = rhs + L[g] * c
        report.pairs_checked += 1
        if lhs != rhs or any(lhs.apply(b) != rhs.apply(b) for b in basis):
            report.failures.append((X_.name, Y_.name, str(lhs - rhs)))
    return report


@dataclass
class InvarianceReport:
    source: WeightData
    target: WeightData
    residuals: dict = field(default_factory=dict)
    # per generator: monomials of the test basis on which the residual is nonzero
    monomial_failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.residuals.values()) and not any(self.monomial_failures.values())


def check_invariance(op: DiffOperator, w: WeightData, w_target: WeightData, op_degree=ZERO,
                     x_cap: int = 3) -> InvarianceReport:
    """Residuals op pi_L(X, w) - s pi_L(X, w') op for every rotated generator X.

    ``s`` is sign(deg op, deg X); with op of degree zero it is +1.  Each
    residual is checked as a normal form and on the monomials up to x^x_cap.
    """
    from .color_algebra import NEW_BASIS

    report = InvarianceReport(w, w_target)
    basis = monomial_basis(x_cap)
    for X_ in NEW_BASIS:
        s = sign(op_degree, X_.degree)
        r = compose(op, pi_L_first_order(X_, w)) - compose(pi_L_first_order(X_, w_target), op) * s
        report.residuals[X_.name] = r
        report.monomial_failures[X_.name] = [str(b) for b in basis if r.apply(b)]
    return report
