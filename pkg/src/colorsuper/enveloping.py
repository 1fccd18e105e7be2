"""Words in the enveloping algebra and their straightening to ordered monomials.

A :class:`PBW` engine fixes a generator order and a structure table and
rewrites ``x y -> sign(x, y) y x + [[x, y]]`` whenever ``x`` comes after
``y``; a repeated generator of self-anticommuting degree is replaced by
half its bracket with itself.  Monomials are exponent tuples in the
engine's order, so that nilpotent generators never carry exponent 2.

The default engine works in the rotated basis with the order
``A+ d+ d- | N Ft | A- c+ c-``: raising generators left, lowering right.
Applied to a lowest weight vector, any monomial with a lowering factor
dies, which is how Verma actions are read off.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache

from .color_algebra import (
    AlgebraElement, Generator, StructureTable, default_table, gen, rotated_table,
)
from .grading import sign
from .scalars import Scalar

__all__ = [
    "PBW", "NormalForm", "Word", "rotated_engine", "defining_engine", "straighten",
    "parse_word", "naive_collapse_witness", "CollapseWitness",
]

ROTATED_ORDER = ("A+", "d+", "d-", "N", "Ft", "A-", "c+", "c-")
DEFINING_ORDER = ("A+", "a+", "b+", "N", "F", "A-", "a-", "b-")


class Word:
    """Coefficient times an ordered product of generators."""

    __slots__ = ("factors", "coefficient")

    def __init__(self, factors, coefficient=1):
        self.factors = tuple(gen(g) for g in factors)
        self.coefficient = Scalar.coerce(coefficient)

    def __mul__(self, other: Word) -> Word:
        return Word(self.factors + other.factors, self.coefficient * other.coefficient)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        body = " ".join(g.name for g in self.factors) or "1"
        return body if self.coefficient == 1 else f"{self.coefficient} * {body}"

    def __repr__(self):
        return f"Word({self})"


_TOKEN = re.compile(r"^(?P<name>[A-Za-z~]+[+-]?)(?:\^(?P<exp>\d+))?$")


def parse_word(text: str) -> Word:
    """Parse whitespace-separated generator names; ``X^k`` repeats a factor."""
    factors = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        g = gen(m["name"])
        factors.extend([g] * int(m["exp"] or 1))
    return Word(factors)


class NormalForm:
    """Linear combination of ordered monomials (exponent tuples) of a :class:`PBW` engine."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine: PBW, terms=None):
        self.engine = engine
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, NormalForm):
            return self.engine is other.engine and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: NormalForm) -> NormalForm:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return NormalForm(self.engine, out)

    def __neg__(self):
        return NormalForm(self.engine, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> NormalForm:
        c = Scalar.coerce(c)
        return NormalForm(self.engine, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NormalForm):
            return self.engine.multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def monomial_str(self, m) -> str:
        parts = []
        for g, e in zip(self.engine.order, m):
            if e:
                parts.append(g.name if e == 1 else f"{g.name}^{e}")
        return " ".join(parts) or "1"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = self.monomial_str(m)
            if c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                cs = str(c)
                if " " in cs:
                    cs = f"({cs})"
                s = cs if mono == "1" else f"{cs} {mono}"
            out.append(s)
        text = out[0]
        for s in out[1:]:
            text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return text

    def __repr__(self):
        return f"NormalForm({self})"


class PBW:
    """Straightening engine for a fixed generator order and structure table."""

    def __init__(self, order, table: StructureTable):
        self.order = tuple(gen(g) for g in order)
        self.table = table
        self.position = {g: i for i, g in enumerate(self.order)}
        self.nilpotent = tuple(sign(g.degree, g.degree) == -1 for g in self.order)
        self._bracket = {}
        for i, x in enumerate(self.order):
            for j, y in enumerate(self.order):
                v = table(x, y)
                terms = []
                for (p, g), c in v.terms.items():
                    if p:
                        raise ValueError(f"bracket [[{x}, {y}]] carries zeta; use the rotated table")
                    terms.append((self.position[g], c))
                self._bracket[i, j] = tuple(terms)
        self._sign = {
            (i, j): sign(x.degree, y.degree)
            for i, x in enumerate(self.order) for j, y in enumerate(self.order)
        }
        self._lmul = lru_cache(maxsize=None)(self._lmul_uncached)

    # -- core rewriting --------------------------------------------------

    def _bump(self, m, i, d=1):
        return m[:i] + (m[i] + d,) + m[i + 1:]

    def _lmul_uncached(self, i: int, m: tuple) -> tuple:
        """generator i times the ordered monomial m, as ((monomial, coeff), ...)."""
        j = next((k for k, e in enumerate(m) if e), None)
        if j is None or i < j:
            return ((self._bump(m, i), Scalar(1)),)
        if i == j:
            if not self.nilpotent[i]:
                return ((self._bump(m, i), Scalar(1)),)
            # x x = (1/2) [[x, x]] for self-anticommuting x
            rest = self._bump(m, i, -1)
            acc = {}
            for k, c in self._bracket[i, i]:
                for mm, cc in self._lmul(k, rest):
                    acc[mm] = acc.get(mm, 0) + cc * c / 2
            return tuple((mm, c) for mm, c in acc.items() if c)
        # i > j: x_i x_j rest = s x_j (x_i rest) + [[x_i, x_j]] rest
        rest = self._bump(m, j, -1)
        acc = {}
        s = self._sign[i, j]
        for mm, c in self._lmul(i, rest):
            for m2, c2 in self._lmul(j, mm):
                acc[m2] = acc.get(m2, 0) + c * c2 * s
        for k, c in self._bracket[i, j]:
            for mm, cc in self._lmul(k, rest):
                acc[mm] = acc.get(mm, 0) + c * cc
        return tuple((mm, c) for mm, c in acc.items() if c)

    def one(self) -> NormalForm:
        return NormalForm(self, {(0,) * len(self.order): Scalar(1)})

    def generator(self, g) -> NormalForm:
        m = [0] * len(self.order)
        m[self.position[gen(g)]] = 1
        return NormalForm(self, {tuple(m): Scalar(1)})

    def left_multiply(self, g, nf: NormalForm) -> NormalForm:
        i = self.position[gen(g)]
        acc = {}
        for m, c in nf.terms.items():
            for mm, cc in self._lmul(i, m):
                acc[mm] = acc[mm] + c * cc if mm in acc else c * cc
        return NormalForm(self, acc)

    def element(self, x: AlgebraElement) -> NormalForm:
        """Embed a zeta-free algebra element as a degree-one normal form."""
        out = NormalForm(self)
        for (p, g), c in x.terms.items():
            if p:
                raise ValueError("zeta-carrying element is not in this basis")
            out = out + self.generator(g).scale(c)
        return out

    def straighten(self, word) -> NormalForm:
        if isinstance(word, str):
            word = parse_word(word)
        nf = self.one().scale(word.coefficient)
        for g in reversed(word.factors):
            nf = self.left_multiply(g, nf)
        return nf

    def monomial_word(self, m) -> Word:
        factors = []
        for g, e in zip(self.order, m):
            factors.extend([g] * e)
        return Word(factors)

    def multiply(self, u: NormalForm, v: NormalForm) -> NormalForm:
        out = NormalForm(self)
        for m, c in u.terms.items():
            nf = v.scale(c)
            for g in reversed(self.monomial_word(m).factors):
                nf = self.left_multiply(g, nf)
            out = out + nf
        return out

    # -- independent rewriting with a choosable strategy ------------------

    def straighten_by_rewriting(self, word, strategy="leftmost", rng=None) -> NormalForm:
        """Plain term rewriting on words; used to cross-check :meth:`straighten`.

        ``strategy`` selects which admissible redex is rewritten first:
        ``"leftmost"``, ``"rightmost"`` or ``"random"``.
        """
        if isinstance(word, str):
            word = parse_word(word)
        rng = rng or random.Random(0)
        pending = [(tuple(self.position[g] for g in word.factors), word.coefficient)]
        done = {}
        while pending:
            w, c = pending.pop()
            if not c:
                continue
            redexes = [
                k for k in range(len(w) - 1)
                if w[k] > w[k + 1] or (w[k] == w[k + 1] and self.nilpotent[w[k]])
            ]
            if not redexes:
                m = [0] * len(self.order)
                for i in w:
                    m[i] += 1
                m = tuple(m)
                done[m] = done[m] + c if m in done else c
                continue
            if strategy == "leftmost":
                k = redexes[0]
            elif strategy == "rightmost":
                k = redexes[-1]
            else:
                k = rng.choice(redexes)
            i, j = w[k], w[k + 1]
            head, tail = w[:k], w[k + 2:]
            if i == j:
                for g, cb in self._bracket[i, i]:
                    pending.append((head + (g,) + tail, c * cb / 2))
                continue
            pending.append((head + (j, i) + tail, c * self._sign[i, j]))
            for g, cb in self._bracket[i, j]:
                pending.append((head + (g,) + tail, c * cb))
        return NormalForm(self, done)


_ROTATED = None
_DEFINING = None


def rotated_engine() -> PBW:
    global _ROTATED
    if _ROTATED is None:
        _ROTATED = PBW(ROTATED_ORDER, rotated_table())
    return _ROTATED


def defining_engine() -> PBW:
    global _DEFINING
    if _DEFINING is None:
        _DEFINING = PBW(DEFINING_ORDER, default_table())
    return _DEFINING


def straighten(word, engine: PBW | None = None) -> NormalForm:
    return (engine or rotated_engine()).straighten(word)


class CollapseWitness:
    """(a+)^2 - (b+)^2 straightens to zero in U(g).

    Both squares equal A+, so the monomials (a+)^k (b+)^l that would span a
    Verma module over the defining triangular decomposition are linearly
    dependent once A+ acts.
    """

    def __init__(self):
        eng = defining_engine()
        self.a_squared = eng.straighten("a+ a+")
        self.b_squared = eng.straighten("b+ b+")
        self.difference = self.a_squared - self.b_squared
        self.A_plus = eng.generator("A+")

    @property
    def holds(self) -> bool:
        return not self.difference and self.a_squared == self.A_plus

    def __str__(self):
        return (
            f"(a+)^2 = {self.a_squared}; (b+)^2 = {self.b_squared}; "
            f"(a+)^2 - (b+)^2 = {self.difference}"
        )


def naive_collapse_witness() -> CollapseWitness:
    return CollapseWitness()
