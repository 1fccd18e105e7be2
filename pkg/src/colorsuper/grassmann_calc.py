"""Clifford algebras Cl(p, q) with p + q = 2, graded Grassmann numbers, and graded functions.

Three pieces live here:

* :class:`CliffordElement` and the tensor-product realization of graded
  Grassmann numbers by ordinary ones;
* a Cl(1,1) model of the formal ``zeta`` (``zeta -> gamma1 gamma2``) used to
  recompute zeta-extended brackets independently of the formal rules;
* :class:`SuperFunction`, polynomials in graded variables with left
  derivatives, in the chart (x, zeta, psi+, psi-) or (x, zeta, psi, theta).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .color_algebra import OLD_BASIS, AlgebraElement, bracket, default_table, elem, expand
from .grading import D01, D10, D11, ZERO, Degree, sign
from .scalars import QSqrt2, Scalar, parse_scalar

__all__ = [
    "SignatureMismatch", "ChartMismatch", "CliffordElement", "gamma", "clifford_mul",
    "GrassmannReport", "verify_grassmann_realization", "zeta_bracket_oracle",
    "ZetaOracleReport", "check_zeta_oracle", "GradedVariable", "VARIABLES", "CHARTS",
    "SuperFunction", "super_mul", "derive", "change_chart", "parse_superfunction",
]


class SignatureMismatch(ValueError):
    pass


class ChartMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Clifford algebra on two generators; blades are bitmasks (bit i <-> gamma_{i+1})

_BLADE_NAMES = {0: "1", 1: "g1", 2: "g2", 3: "g1g2"}
_BLADE_DEGREE = {0: ZERO, 1: D10, 2: D01, 3: D11}


def _check_signature(sig) -> tuple:
    p, q = sig
    if p < 0 or q < 0 or p + q != 2:
        raise ValueError(f"signature must have p + q = 2, got {sig}")
    return (p, q)


def _blade_mul(a: int, b: int, eta: tuple) -> tuple:
    """gamma-blade a times blade b as (sign, blade)."""
    s = 1
    # swaps: each bit of b passes the higher bits of a
    for j in range(2):
        if b >> j & 1:
            for i in range(j + 1, 2):
                if a >> i & 1:
                    s = -s
    for i in range(2):
        if a >> i & 1 and b >> i & 1:
            s *= eta[i]
    return s, a ^ b


class CliffordElement:
    __slots__ = ("coeffs", "signature")

    def __init__(self, coeffs=None, signature=(1, 1)):
        self.signature = _check_signature(signature)
        self.coeffs = {m: QSqrt2.coerce(c) for m, c in sorted((coeffs or {}).items()) if c}

    @property
    def eta(self) -> tuple:
        p, _ = self.signature
        return tuple(1 if i < p else -1 for i in range(2))

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.signature == other.signature and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self == CliffordElement({0: other}, self.signature)
        return NotImplemented

    def __add__(self, other):
        if self.signature != other.signature:
            raise SignatureMismatch(f"{self.signature} vs {other.signature}")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(out, self.signature)

    def __neg__(self):
        return CliffordElement({m: -c for m, c in self.coeffs.items()}, self.signature)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return CliffordElement({m: c * other for m, c in self.coeffs.items()}, self.signature)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{_BLADE_NAMES[m]}" if m else f"({c})" for m, c in self.coeffs.items())

    def __repr__(self):
        return f"CliffordElement({self}, signature={self.signature})"


def gamma(i: int, signature=(1, 1)) -> CliffordElement:
    if i not in (1, 2):
        raise ValueError("only gamma1 and gamma2 exist for p + q = 2")
    return CliffordElement({1 << (i - 1): 1}, signature)


def clifford_mul(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    if u.signature != v.signature:
        raise SignatureMismatch(f"{u.signature} vs {v.signature}")
    eta = u.eta
    out = {}
    for a, ca in u.coeffs.items():
        for b, cb in v.coeffs.items():
            s, m = _blade_mul(a, b, eta)
            out[m] = out.get(m, 0) + ca * cb * s
    return CliffordElement(out, u.signature)


# ---------------------------------------------------------------------------
# Cl(p,q) (x) Grassmann(xi1, xi2) (x) R[x1, x2]

def _grass_mul(a: int, b: int) -> tuple:
    if a & b:
        return 0, 0
    s = 1
    for j in range(2):
        if b >> j & 1:
            for i in range(j + 1, 2):
                if a >> i & 1:
                    s = -s
    return s, a | b


class _Tensor:
    __slots__ = ("terms", "eta")

    def __init__(self, terms, eta):
        self.terms = {k: c for k, c in terms.items() if c}
        self.eta = eta

    def __mul__(self, other):
        out = {}
        for (ca, ga, xa), va in self.terms.items():
            for (cb, gb, xb), vb in other.terms.items():
                s1, cm = _blade_mul(ca, cb, self.eta)
                s2, gm = _grass_mul(ga, gb)
                if not s2:
                    continue
                key = (cm, gm, (xa[0] + xb[0], xa[1] + xb[1]))
                out[key] = out.get(key, 0) + s1 * s2 * va * vb
        return _Tensor(out, self.eta)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return _Tensor(out, self.eta)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return _Tensor(out, self.eta)


@dataclass
class GrassmannReport:
    signature: tuple
    pairs_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _realization(eta) -> dict:
    """zeta_{alpha,i} for two commuting x's and two Grassmann xi's."""
    gens = {}
    for m in range(2):
        x = (1, 0) if m == 0 else (0, 1)
        gens[(ZERO, m)] = _Tensor({(0, 0, x): 1}, eta)
        gens[(D11, m)] = _Tensor({(3, 0, x): 1}, eta)
    for mu in range(2):
        gens[(D10, mu)] = _Tensor({(1, 1 << mu, (0, 0)): 1}, eta)
        gens[(D01, mu)] = _Tensor({(2, 1 << mu, (0, 0)): 1}, eta)
    return gens


def verify_grassmann_realization(signature=(1, 1)) -> GrassmannReport:
    """Check that every graded bracket of the tensor-product generators vanishes."""
    sig = _check_signature(signature)
    eta = CliffordElement({}, sig).eta
    gens = _realization(eta)
    report = GrassmannReport(sig)
    for (ka, u), (kb, v) in product(gens.items(), repeat=2):
        s = sign(ka[0], kb[0])
        r = u * v - (v * u if s == 1 else (v * u) * _Tensor({(0, 0, (0, 0)): -1}, eta))
        report.pairs_checked += 1
        if r.terms:
            report.violations.append((ka, kb, r.terms))
    return report


# ---------------------------------------------------------------------------
# zeta as gamma1 gamma2 in Cl(1,1), brackets recomputed from free words

_ETA11 = (1, -1)


def _to_words(x: AlgebraElement) -> dict:
    out = {}
    for (p, g), c in expand(x).terms.items():
        key = (3 if p else 0, (g,))
        out[key] = out.get(key, 0) + c
    return out


def _word_mul(u: dict, v: dict) -> dict:
    """Graded tensor product Cl(1,1) (x) T(g): (c w)(c' w') = sign(w, c') cc' ww'."""
    out = {}
    for (ca, wa), va in u.items():
        dwa = ZERO
        for g in wa:
            dwa = dwa + g.degree
        for (cb, wb), vb in v.items():
            s1, cm = _blade_mul(ca, cb, _ETA11)
            s = s1 * sign(dwa, _BLADE_DEGREE[cb])
            key = (cm, wa + wb)
            out[key] = out.get(key, 0) + s * va * vb
    return {k: c for k, c in out.items() if c}


def _homogeneous_parts(x: AlgebraElement) -> dict:
    parts = {}
    for (p, g), c in expand(x).terms.items():
        d = g.degree + D11 * p
        parts.setdefault(d, {})[(p, g)] = c
    return {d: AlgebraElement(t) for d, t in parts.items()}


def zeta_bracket_oracle(x, y, table=None) -> tuple:
    """Bracket of two zeta-extended elements computed in Cl(1,1) (x) words.

    Returns (element in the defining basis, list of inconsistencies).  An
    inconsistency is a surviving symmetric word part or a Clifford blade
    other than 1 and gamma1 gamma2.
    """
    table = table or default_table()
    x, y = elem(x), elem(y)
    acc = {}
    for dx, xp in _homogeneous_parts(x).items():
        for dy, yp in _homogeneous_parts(y).items():
            u, v = _to_words(xp), _to_words(yp)
            s = sign(dx, dy)
            uv, vu = _word_mul(u, v), _word_mul(v, u)
            for k, c in vu.items():
                uv[k] = uv.get(k, 0) - s * c
            for k, c in uv.items():
                if c:
                    acc[k] = acc.get(k, 0) + c
    acc = {k: c for k, c in acc.items() if c}
    problems = []
    out = {}
    seen = set()
    for (blade, (X, Y)), a in acc.items():
        if (blade, X, Y) in seen:
            continue
        seen.add((blade, X, Y))
        seen.add((blade, Y, X))
        if blade in (1, 2):
            problems.append(("blade", _BLADE_NAMES[blade], X.name, Y.name))
            continue
        sXY = sign(X.degree, Y.degree)
        if X == Y:
            if sXY == 1:
                problems.append(("symmetric", X.name, Y.name, a))
                continue
            val = table(X, Y) * (a / 2)
        else:
            b = acc.get((blade, (Y, X)), 0)
            if b != -sXY * a:
                problems.append(("symmetric", X.name, Y.name, a, b))
                continue
            val = table(X, Y) * a
        for (r, g), c in val.terms.items():
            key = ((r + (1 if blade == 3 else 0)) & 1, g)
            out[key] = out[key] + c if key in out else c
    return AlgebraElement(out), problems


@dataclass
class ZetaOracleReport:
    pairs_checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_zeta_oracle(elements=None) -> ZetaOracleReport:
    """Compare formal zeta-extended brackets with the Cl(1,1) recomputation.

    Default inputs: every zeta^p X for X in the defining basis, plus the
    rotated generators c+-, d+-, Ft.
    """
    if elements is None:
        elements = [AlgebraElement.of(g, zeta=p) for g in OLD_BASIS for p in (0, 1)]
        elements += [AlgebraElement.of(n) for n in ("c-", "c+", "d-", "d+", "Ft")]
    report = ZetaOracleReport()
    for x, y in product(elements, repeat=2):
        formal = bracket(expand(x), expand(y))
        got, problems = zeta_bracket_oracle(x, y)
        report.pairs_checked += 1
        if problems or got != formal:
            report.mismatches.append((str(x), str(y), str(formal), str(got), problems))
    return report


# ---------------------------------------------------------------------------
# graded functions

@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: Degree
    kind: str  # "even", "grassmann" or "unit" (zeta, squares to 1)

    def __str__(self):
        return self.name


X = GradedVariable("x", ZERO, "even")
ZETA = GradedVariable("zeta", D11, "unit")
PSI_P = GradedVariable("psi+", D01, "grassmann")
PSI_M = GradedVariable("psi-", D01, "grassmann")
PSI = GradedVariable("psi", D01, "grassmann")
THETA = GradedVariable("theta", D10, "grassmann")

VARIABLES = {v.name: v for v in (X, ZETA, PSI_P, PSI_M, PSI, THETA)}
# canonical variable order per chart; monomial = (x power, zeta bit, bit, bit)
CHARTS = {"pm": (X, ZETA, PSI_P, PSI_M), "pt": (X, ZETA, PSI, THETA)}


def _var(v) -> GradedVariable:
    return VARIABLES[v] if isinstance(v, str) else v


def _mono_mul(a: tuple, b: tuple, chart: str) -> tuple:
    """(sign, monomial) of the product of two canonical monomials; sign 0 means zero."""
    vars_ = CHARTS[chart]
    s = 1
    # bring every variable of b past the later variables of a
    for j in range(1, 4):
        if not b[j]:
            continue
        for i in range(j + 1, 4):
            if a[i]:
                s *= sign(vars_[j].degree, vars_[i].degree)
    out = [a[0] + b[0]]
    for j in range(1, 4):
        e = a[j] + b[j]
        if e == 2:
            if vars_[j].kind == "grassmann":
                return 0, None
            e = 0  # zeta^2 = 1
        out.append(e)
    return s, tuple(out)


class SuperFunction:
    """Polynomial in the graded variables of one chart with Scalar coefficients."""

    __slots__ = ("chart", "terms")

    def __init__(self, terms=None, chart="pm"):
        if chart not in CHARTS:
            raise ChartMismatch(f"unknown chart {chart!r}")
        self.chart = chart
        clean = {}
        for m, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                m = tuple(m)
                clean[m] = clean[m] + c if m in clean else c
                if not clean[m]:
                    del clean[m]
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def const(cls, c, chart="pm") -> SuperFunction:
        return cls({(0, 0, 0, 0): c}, chart)

    @classmethod
    def var(cls, v, chart=None) -> SuperFunction:
        v = _var(v)
        if chart is None:
            chart = "pm" if v in CHARTS["pm"] and v not in (X, ZETA) else "pt"
            if v in (X, ZETA):
                chart = "pm"
        vars_ = CHARTS[chart]
        if v not in vars_:
            raise ChartMismatch(f"{v} is not a variable of chart {chart}")
        m = [0, 0, 0, 0]
        m[vars_.index(v)] = 1
        return cls({tuple(m): 1}, chart)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SuperFunction):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction, QSqrt2, Scalar)):
            return self == SuperFunction.const(other, self.chart)
        return NotImplemented

    def __hash__(self):
        return hash((self.chart, tuple(self.terms.items())))

    def _same(self, other):
        if isinstance(other, SuperFunction):
            if other.chart != self.chart:
                raise ChartMismatch(f"{self.chart} vs {other.chart}")
            return other
        return SuperFunction.const(other, self.chart)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return SuperFunction(out, self.chart)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction({m: -c for m, c in self.terms.items()}, self.chart)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            return super_mul(self, other)
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return SuperFunction({m: c * other for m, c in self.terms.items()}, self.chart)

    def __rmul__(self, other):
        return self * other

    def degree(self) -> Degree | None:
        """Degree if homogeneous, else None."""
        ds = {self.monomial_degree(m) for m in self.terms}
        return ds.pop() if len(ds) == 1 else (ZERO if not ds else None)

    def monomial_degree(self, m) -> Degree:
        d = ZERO
        for v, e in zip(CHARTS[self.chart][1:], m[1:]):
            if e:
                d = d + v.degree
        return d

    def parts_by_degree(self) -> dict:
        out = {}
        for m, c in self.terms.items():
            out.setdefault(self.monomial_degree(m), {})[m] = c
        return {d: SuperFunction(t, self.chart) for d, t in out.items()}

    def max_x_degree(self) -> int:
        return max((m[0] for m in self.terms), default=0)

    def substitute(self, h0=None, f0=None) -> SuperFunction:
        return SuperFunction({m: c.substitute(h0, f0) for m, c in self.terms.items()}, self.chart)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        vars_ = CHARTS[self.chart]
        parts = []
        for m, c in self.terms.items():
            factors = []
            if m[0]:
                factors.append("x" if m[0] == 1 else f"x^{m[0]}")
            factors += [v.name for v, e in zip(vars_[1:], m[1:]) if e]
            body = "*".join(factors)
            cs = str(c)
            if (" " in cs or "/" in cs) and not (cs.startswith("(") and cs.endswith(")")):
                cs = f"({cs})"
            if not body:
                parts.append(cs)
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{cs}*{body}")
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SuperFunction[{self.chart}]({self})"

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "terms": [{"monomial": list(m), "coefficient": c.to_text()} for m, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> SuperFunction:
        return cls({tuple(t["monomial"]): parse_scalar(t["coefficient"]) for t in data["terms"]},
                   data["chart"])


def super_mul(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    if f.chart != g.chart:
        raise ChartMismatch(f"{f.chart} vs {g.chart}")
    out = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            s, m = _mono_mul(a, b, f.chart)
            if s:
                c = ca * cb * s
                out[m] = out[m] + c if m in out else c
    return SuperFunction(out, f.chart)


def derive(v, f: SuperFunction) -> SuperFunction:
    """Left derivative: move v to the front of each monomial, then strip it."""
    v = _var(v)
    vars_ = CHARTS[f.chart]
    if v not in vars_:
        raise ChartMismatch(f"{v} is not a variable of chart {f.chart}")
    if v.kind == "unit":
        raise ValueError("zeta is a unit, not a coordinate; it has no derivative")
    i = vars_.index(v)
    out = {}
    for m, c in f.terms.items():
        if not m[i]:
            continue
        if i == 0:
            mm, cc = (m[0] - 1,) + m[1:], c * m[0]
        else:
            s = 1
            for j in range(1, i):
                if m[j]:
                    s *= sign(v.degree, vars_[j].degree)
            mm = list(m)
            mm[i] = 0
            mm, cc = tuple(mm), c * s
        out[mm] = out[mm] + cc if mm in out else cc
    return SuperFunction(out, f.chart)


_INV_SQRT2 = QSqrt2(1) / QSqrt2(0, 1)


def _images(direction: str) -> tuple:
    if direction == "pt":
        src, tgt = "pm", "pt"
        psi, zt = SuperFunction.var(PSI, "pt"), SuperFunction.var(ZETA, "pt") * SuperFunction.var(THETA, "pt")
        img = {PSI_P: (psi + zt) * _INV_SQRT2, PSI_M: (psi - zt) * _INV_SQRT2}
    elif direction == "pm":
        src, tgt = "pt", "pm"
        p, m = SuperFunction.var(PSI_P, "pm"), SuperFunction.var(PSI_M, "pm")
        z = SuperFunction.var(ZETA, "pm")
        img = {PSI: (p + m) * _INV_SQRT2, THETA: z * (p - m) * _INV_SQRT2}
    else:
        raise ValueError(f"direction must be 'pt' or 'pm', got {direction!r}")
    img[X] = SuperFunction.var(X, tgt)
    img[ZETA] = SuperFunction.var(ZETA, tgt)
    return src, tgt, img


def change_chart(f: SuperFunction, direction: str | None = None) -> SuperFunction:
    """Substitute psi+- = (psi +- zeta theta)/sqrt2 or its inverse.

    ``direction`` is the target chart; by default the other one.
    """
    direction = direction or ("pt" if f.chart == "pm" else "pm")
    src, tgt, img = _images(direction)
    if f.chart == tgt:
        return f
    vars_ = CHARTS[src]
    out = SuperFunction({}, tgt)
    for m, c in f.terms.items():
        term = SuperFunction.const(c, tgt)
        for _ in range(m[0]):
            term = term * img[X]
        for v, e in zip(vars_[1:], m[1:]):
            if e:
                term = term * img[v]
        out = out + term
    return out


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>psi[+-]|[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list:
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()
    return toks


class _Parser:
    """Recursive descent over + - * / ^ and parentheses; values are SuperFunctions."""

    def __init__(self, text: str, chart: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.chart = chart

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> SuperFunction:
        out = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if set(rhs.terms) - {(0, 0, 0, 0)} or not rhs:
                    raise ValueError("division by a non-constant")
                out = out * rhs.terms[(0, 0, 0, 0)].inverse()
        return out

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            out = SuperFunction.const(1, self.chart)
            for _ in range(int(e)):
                out = out * base
            return out
        return base

    def atom(self):
        kind, val = self.take()
        const = lambda c: SuperFunction.const(c, self.chart)  # noqa: E731
        if kind == "num":
            return const(int(val))
        if kind == "name":
            if val == "sqrt2":
                return const(QSqrt2(0, 1))
            if val == "h":
                return const(Scalar.h())
            if val == "f":
                return const(Scalar.f())
            v = VARIABLES.get(val)
            if v is None or v not in CHARTS[self.chart]:
                raise ValueError(f"unknown variable {val!r} for chart {self.chart}")
            return SuperFunction.var(v, self.chart)
        if val == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ValueError(f"unexpected token {val!r}")


def parse_superfunction(text: str, chart: str = "pm") -> SuperFunction:
    """Inverse of :meth:`SuperFunction.to_text`; also accepts any +-*/^ expression."""
    return _Parser(text, chart).parse()
