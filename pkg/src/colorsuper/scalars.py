"""Exact coefficients: Q(sqrt2), polynomials in the weights h, f, and their fractions.

Three layers:

* :class:`QSqrt2` -- numbers ``a + b*sqrt2`` with rational ``a``, ``b``;
* :class:`Poly2`  -- sparse polynomials in ``h`` and ``f`` over Q(sqrt2);
* :class:`Scalar` -- reduced fractions of two :class:`Poly2`.

Fractions are kept canonical: numerator and denominator share no
non-constant factor, and the leading coefficient of the denominator in
graded-lex order (``h > f``) is 1.  Equality is therefore structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QSqrt2", "Poly2", "Scalar", "PoleError", "ZeroDenominator",
    "gcd_reduce", "scalar_eval", "poly_gcd", "parse_qsqrt2", "parse_poly2",
    "parse_scalar", "as_scalar", "SQRT2", "H", "F", "factor",
]


class ZeroDenominator(ZeroDivisionError):
    pass


class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes at an evaluation point."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _fstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class QSqrt2:
    """An element ``a + b*sqrt2`` of the quadratic field Q(sqrt2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    def __reduce__(self):
        return (QSqrt2, (self.a, self.b))

    @staticmethod
    def coerce(x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        return QSqrt2(x)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def __eq__(self, other):
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __add__(self, other):
        if not isinstance(other, QSqrt2):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            return QSqrt2(self.a + other, self.b)
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        if not isinstance(other, (QSqrt2, int, Rational)):
            return NotImplemented
        return self + (-QSqrt2.coerce(other))

    def __rsub__(self, other):
        return QSqrt2.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QSqrt2):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            return QSqrt2(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return QSqrt2(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> QSqrt2:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if not isinstance(other, (QSqrt2, int, Rational)):
            return NotImplemented
        return self * QSqrt2.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QSqrt2(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def to_text(self) -> str:
        if not self.b:
            return _fstr(self.a)
        return f"({_fstr(self.a)}) + ({_fstr(self.b)})*sqrt2"

    def __str__(self):
        if not self.b:
            return _fstr(self.a)
        if not self.a:
            return _sqrt2_str(self.b)
        tail = _sqrt2_str(abs(self.b))
        return f"({_fstr(self.a)} {'-' if self.b < 0 else '+'} {tail})"

    def __repr__(self):
        return f"QSqrt2({self.to_text()})"


def _sqrt2_str(b: Fraction) -> str:
    if b == 1:
        return "sqrt2"
    if b == -1:
        return "-sqrt2"
    if b.denominator == 1:
        return f"{b.numerator}*sqrt2"
    return f"({_fstr(b)})*sqrt2"


SQRT2 = QSqrt2(0, 1)
_Q0 = QSqrt2(0)
_Q1 = QSqrt2(1)


_QS_RE = re.compile(
    r"^\s*\(\s*(?P<a>[-+]?\d+(?:/\d+)?)\s*\)\s*\+\s*\(\s*(?P<b>[-+]?\d+(?:/\d+)?)\s*\)\s*\*\s*sqrt2\s*$"
)


def parse_qsqrt2(text: str) -> QSqrt2:
    m = _QS_RE.match(text)
    if m:
        return QSqrt2(Fraction(m["a"]), Fraction(m["b"]))
    return QSqrt2(Fraction(text.strip()))


# ---------------------------------------------------------------------------
# polynomials in h, f

Monomial = tuple  # (deg_h, deg_f)


def _grlex(m):
    return (m[0] + m[1], m[0])


class Poly2:
    """Sparse polynomial in ``h`` and ``f`` with Q(sqrt2) coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = QSqrt2.coerce(c)
                if c:
                    clean[(int(m[0]), int(m[1]))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    def __reduce__(self):
        return (Poly2, (self.terms,))

    @classmethod
    def _raw(cls, terms: dict) -> Poly2:
        # terms already clean
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def const(cls, c) -> Poly2:
        c = QSqrt2.coerce(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> Poly2:
        return cls({(i, j): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.terms == other.terms
        if isinstance(other, (int, Rational, QSqrt2)):
            return self.terms == Poly2.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def const_value(self) -> QSqrt2:
        return self.terms.get((0, 0), _Q0) if self.is_const() else None

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0)) == _Q1

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=-1)

    def leading(self):
        """Leading (monomial, coefficient) in graded-lex order with h > f."""
        m = max(self.terms, key=_grlex)
        return m, self.terms[m]

    def __add__(self, other):
        if not isinstance(other, Poly2):
            if not isinstance(other, (int, Rational, QSqrt2)):
                return NotImplemented
            other = Poly2.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly2, int, Rational, QSqrt2)):
            return NotImplemented
        if not isinstance(other, Poly2):
            other = Poly2.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly2.const(other) - self if not isinstance(other, Poly2) else other - self

    def scale(self, c) -> Poly2:
        c = QSqrt2.coerce(c)
        if not c:
            return Poly2._raw({})
        return Poly2._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            if not isinstance(other, (int, Rational, QSqrt2)):
                return NotImplemented
            return self.scale(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly2._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly2.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, h0, f0) -> QSqrt2:
        h0, f0 = QSqrt2.coerce(h0), QSqrt2.coerce(f0)
        total = _Q0
        for (i, j), c in self.terms.items():
            total = total + c * h0 ** i * f0 ** j
        return total

    def substitute(self, h0=None, f0=None) -> Poly2:
        """Partial substitution; ``None`` keeps the variable symbolic."""
        out = Poly2()
        for (i, j), c in self.terms.items():
            t = Poly2.const(c)
            t = t * (Poly2.const(QSqrt2.coerce(h0) ** i) if h0 is not None else Poly2.monomial(i, 0))
            t = t * (Poly2.const(QSqrt2.coerce(f0) ** j) if f0 is not None else Poly2.monomial(0, j))
            out = out + t
        return out

    def compose(self, hval: Poly2, fval: Poly2) -> Poly2:
        """Substitute polynomials for h and f."""
        out = Poly2()
        hp, fp = {0: Poly2.const(1)}, {0: Poly2.const(1)}
        for (i, j), c in self.terms.items():
            if i not in hp:
                hp[i] = hval ** i
            if j not in fp:
                fp[j] = fval ** j
            out = out + hp[i] * fp[j] * c
        return out

    def exact_div(self, other: Poly2) -> Poly2:
        """Quotient of an exact division; raises ValueError on a remainder."""
        if not other:
            raise ZeroDenominator("polynomial division by zero")
        lm, lc = other.leading()
        inv = lc.inverse()
        rem = self
        quot = {}
        while rem:
            m, c = rem.leading()
            if m[0] < lm[0] or m[1] < lm[1]:
                raise ValueError("polynomial division is not exact")
            qm = (m[0] - lm[0], m[1] - lm[1])
            qc = c * inv
            quot[qm] = quot.get(qm, _Q0) + qc
            rem = rem - other * Poly2._raw({qm: qc})
        return Poly2(quot)

    def to_text(self) -> str:
        items = sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)
        body = ", ".join(f"h^{i} f^{j}: {c.to_text()}" for (i, j), c in items)
        return "{" + body + "}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True):
            mono = "*".join(
                s for s in (_pow("h", i), _pow("f", j)) if s
            )
            neg = False
            if c.is_rational() and c.a < 0:
                neg, c = True, -c
            elif not c.is_rational() and not c.a and c.b < 0:
                neg, c = True, -c
            if not mono:
                coef = str(c)
            elif c == 1:
                coef = ""
            else:
                coef = str(c) + "*"
            parts.append(("-" if neg else "+", coef + mono))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, t in parts[1:]:
            text += f" {s} {t}"
        return text

    def __repr__(self):
        return f"Poly2({self})"


def _pow(v, e):
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


_MONO_RE = re.compile(r"^\s*h\^(\d+)\s+f\^(\d+)\s*$")


def parse_poly2(text: str) -> Poly2:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"polynomial text must be braced: {text!r}")
    body = text[1:-1].strip()
    terms = {}
    if body:
        for item in body.split(","):
            mono, _, coef = item.partition(":")
            m = _MONO_RE.match(mono)
            if not m:
                raise ValueError(f"bad monomial {mono!r}")
            key = (int(m[1]), int(m[2]))
            terms[key] = terms.get(key, _Q0) + parse_qsqrt2(coef)
    return Poly2(terms)


H = Poly2.monomial(1, 0)
F = Poly2.monomial(0, 1)


# ---------------------------------------------------------------------------
# gcd via content / primitive part: K[f][h] with K = Q(sqrt2)

def _u_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _u_divmod(a: list, b: list):
    """Dense univariate division over Q(sqrt2); index = degree."""
    a = list(a)
    q = [_Q0] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = a[i + k] - c * bc
        a.pop()
        _u_trim(a)
    return _u_trim(q), a


def _u_monic(a: list) -> list:
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _u_gcd(a: list, b: list) -> list:
    a, b = _u_trim(list(a)), _u_trim(list(b))
    if b:
        b = _u_monic(b)
    while b:
        # monic remainders keep coefficient growth in check
        r = _u_divmod(a, b)[1]
        a, b = b, (_u_monic(r) if r else r)
    return _u_monic(a) if a else []


def _u_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _u_trim(out)


def _u_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _Q0) - (b[i] if i < len(b) else _Q0) for i in range(n)]
    return _u_trim(out)


def _to_rec(p: Poly2) -> list:
    """Poly2 -> list indexed by h-degree of dense f-polynomials."""
    dh = p.degree_in(0)
    rec = [[] for _ in range(dh + 1)]
    for (i, j), c in p.terms.items():
        row = rec[i]
        while len(row) <= j:
            row.append(_Q0)
        row[j] = c
    return [_u_trim(r) for r in rec]


def _from_rec(rec: list) -> Poly2:
    terms = {}
    for i, row in enumerate(rec):
        for j, c in enumerate(row):
            if c:
                terms[(i, j)] = c
    return Poly2._raw(terms)


def _rec_trim(rec: list) -> list:
    while rec and not rec[-1]:
        rec.pop()
    return rec


def _content(rec: list) -> list:
    g = []
    for row in rec:
        if row:
            g = _u_gcd(g, row) if g else _u_gcd(row, [])
            if len(g) == 1:
                break
    return g


def _rec_div_content(rec: list, c: list) -> list:
    out = []
    for row in rec:
        if row:
            q, r = _u_divmod(row, c)
            assert not r
            out.append(q)
        else:
            out.append([])
    return out


def _rec_prem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b in K[f][h]."""
    a = [list(r) for r in a]
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        k = len(a) - 1 - db
        a = [_u_mul(r, lb) for r in a]
        for i, br in enumerate(b):
            a[i + k] = _u_sub(a[i + k], _u_mul(br, la))
        _rec_trim(a)
    return a


def poly_gcd(p: Poly2, q: Poly2) -> Poly2:
    """Greatest common divisor, normalized to leading coefficient 1."""
    if not p:
        return _monic(q) if q else Poly2()
    if not q:
        return _monic(p)
    if p.is_const() or q.is_const():
        return Poly2.const(1)
    a, b = _to_rec(p), _to_rec(q)
    ca, cb = _content(a), _content(b)
    cg = _u_gcd(ca, cb)
    a, b = _rec_div_content(a, ca), _rec_div_content(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _rec_prem(a, b)
        if not r:
            break
        rc = _content(r)
        a, b = b, _rec_div_content(r, rc)
    else:
        # b has h-degree 0: primitive part is a unit
        b = [[_Q1]]
    g = _from_rec(b) * _from_rec([cg])
    return _monic(g)


def _monic(p: Poly2) -> Poly2:
    _, lc = p.leading()
    return p.scale(lc.inverse())


# ---------------------------------------------------------------------------
# the fraction field

class Scalar:
    """Element of Q(sqrt2)(h, f), stored as a canonical reduced fraction."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _reduced=False):
        if not isinstance(num, Poly2):
            num = Poly2.const(num)
        if den is None:
            den = _P1
        elif not isinstance(den, Poly2):
            den = Poly2.const(den)
        if not den:
            raise ZeroDenominator("zero denominator")
        if not _reduced:
            num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.num, self.den))

    @staticmethod
    def coerce(x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, Poly2):
            return Scalar(x, _reduced=True)
        if isinstance(x, (int, Rational, QSqrt2)):
            return Scalar(Poly2.const(x), _reduced=True)
        raise TypeError(f"cannot coerce {x!r} to Scalar")

    @classmethod
    def h(cls) -> Scalar:
        return cls(H, _reduced=True)

    @classmethod
    def f(cls) -> Scalar:
        return cls(F, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_const(self) -> bool:
        return self.den.is_one() and self.num.is_const()

    def const_value(self) -> QSqrt2 | None:
        return self.num.const_value() if self.is_const() else None

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational, QSqrt2, Poly2)):
            return self == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return Scalar(self.num + other.num, _P1, _reduced=True)
            return Scalar(self.num + other.num, self.den)
        if other.den.is_one():
            return Scalar(self.num + other.num * self.den, self.den, _reduced=True)
        if self.den.is_one():
            return Scalar(self.num * other.den + other.num, other.den, _reduced=True)
        g = poly_gcd(self.den, other.den)
        d1, d2 = self.den.exact_div(g), other.den.exact_div(g)
        num = self.num * d2 + other.num * d1
        # only factors of g can cancel against num
        return Scalar(*_reduce_by(num, self.den * d2, g), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, QSqrt2)):
            return Scalar(self.num.scale(other), self.den, _reduced=True) if other else _ZERO
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, _P1, _reduced=True)
        if not self.num or not other.num:
            return _ZERO
        g1, g2 = poly_gcd(self.num, other.den), poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return Scalar(*_monic_den(num, den), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self.num:
            raise ZeroDenominator("division by a zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num ** n, self.den ** n, _reduced=True)

    def evaluate(self, h0, f0) -> QSqrt2:
        return scalar_eval(self, h0, f0)

    def substitute(self, h0=None, f0=None) -> Scalar:
        den = self.den.substitute(h0, f0)
        if not den:
            raise PoleError(f"denominator {self.den} vanishes at h={h0}, f={f0}")
        return Scalar(self.num.substitute(h0, f0), den)

    def compose(self, hval: Poly2, fval: Poly2) -> Scalar:
        den = self.den.compose(hval, fval)
        if not den:
            raise PoleError(f"denominator {self.den} vanishes under h={hval}, f={fval}")
        return Scalar(self.num.compose(hval, fval), den)

    def to_text(self) -> str:
        if self.den.is_one():
            return self.num.to_text()
        return f"{self.num.to_text()} / {self.den.to_text()}"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({self})"


def _canonical(num: Poly2, den: Poly2):
    if not den:
        raise ZeroDenominator("zero denominator")
    if not num:
        return Poly2(), _P1
    if den.is_const():
        inv = den.const_value().inverse()
        return num.scale(inv), _P1
    g = poly_gcd(num, den)
    if not g.is_one():
        num, den = num.exact_div(g), den.exact_div(g)
    _, lc = den.leading()
    if lc != 1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _monic_den(num: Poly2, den: Poly2):
    if not num:
        return Poly2(), _P1
    _, lc = den.leading()
    if lc != 1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _reduce_by(num: Poly2, den: Poly2, g: Poly2):
    """Cancel gcd(num, g) from num/den, given that no other common factor exists."""
    if not num:
        return Poly2(), _P1
    if not g.is_const():
        c = poly_gcd(num, g)
        if not c.is_one():
            num, den = num.exact_div(c), den.exact_div(c)
    return _monic_den(num, den)


_P1 = Poly2.const(1)
_ZERO = Scalar(Poly2(), _P1, _reduced=True)


def gcd_reduce(num: Poly2, den: Poly2) -> Scalar:
    """Canonical reduced fraction num/den."""
    return Scalar(num, den)


def scalar_eval(s: Scalar, h0, f0) -> QSqrt2:
    """Exact substitution h -> h0, f -> f0."""
    d = s.den.evaluate(h0, f0)
    if not d:
        raise PoleError(f"denominator {s.den} vanishes at h={h0}, f={f0}")
    return s.num.evaluate(h0, f0) / d


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if "/ {" in text:
        num, _, den = text.partition("/ {")
        return Scalar(parse_poly2(num), parse_poly2("{" + den))
    return Scalar(parse_poly2(text))


def as_scalar(x) -> Scalar:
    return Scalar.coerce(x)


def factor(p: Poly2) -> tuple:
    """Irreducible factorization ``(constant, [(monic factor, multiplicity), ...])``."""
    import sympy

    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.is_const():
        return p.const_value(), []
    r2 = sympy.sqrt(2)
    h, f = sympy.symbols("h f")
    expr = sum(
        (sympy.Rational(c.a.numerator, c.a.denominator)
         + sympy.Rational(c.b.numerator, c.b.denominator) * r2) * h ** i * f ** j
        for (i, j), c in p.terms.items()
    )
    _, parts = sympy.factor_list(expr, h, f, extension=r2)
    factors = []
    prod = Poly2.const(1)
    for fac, mult in parts:
        q = _from_sympy(sympy.Poly(fac, h, f))
        if q.is_const():
            continue
        q = _monic(q)
        factors.append((q, mult))
        prod = prod * q ** mult
    unit = p.exact_div(prod)
    assert unit.is_const()
    factors.sort(key=lambda t: t[0].to_text())
    return unit.const_value(), factors


def _from_sympy(poly) -> Poly2:
    import sympy

    terms = {}
    for (i, j), c in poly.terms():
        c = sympy.nsimplify(c)
        a, b = c.as_independent(sympy.sqrt(2), as_Add=True)
        bcoef = sympy.simplify(b / sympy.sqrt(2)) if b else 0
        terms[(i, j)] = QSqrt2(Fraction(str(sympy.Rational(a))), Fraction(str(sympy.Rational(bcoef))))
    return Poly2(terms)
