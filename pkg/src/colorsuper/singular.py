"""Singular vectors of M(h, f): numeric search and symbolic classification.

The symbolic side tracks a *branch*: the weights ``h``, ``f`` written in
terms of whichever of them are still free, plus the polynomial
conditions that led there.  Every time a pivot polynomial is needed, the
branch forks into ``pivot != 0`` and one branch per irreducible factor
``= 0``.  Factors that show up here are linear in ``h`` and ``f``, so
imposing one is a substitution.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import nullspace
from .scalars import F, H, Poly2, QSqrt2, Scalar, factor
from .verma import LOWERING, BasisKet, VermaVector, act, level_subspace, weight_blocks

__all__ = [
    "Branch", "SingularFamily", "SingularEntry", "SingularReport", "Certificate",
    "find_singular_numeric", "classify_singular_symbolic", "is_irreducible",
    "condition_system", "theorem_families", "specialize", "default_max_level",
    "grid_values", "scan_grid", "scan_point", "ScanPoint", "NonlinearCondition",
]

DEFAULT_MAX_LEVEL = 12


def default_max_level() -> int:
    value = os.environ.get("COLORSUPER_MAX_LEVEL")
    return int(value) if value else DEFAULT_MAX_LEVEL


class NonlinearCondition(NotImplementedError):
    pass


def _monic(p: Poly2) -> Poly2:
    _, lc = p.leading()
    return p.scale(lc.inverse())


@dataclass(frozen=True)
class Branch:
    """A region of weight space cut out by equalities and non-vanishing conditions."""

    h_val: Poly2 = H
    f_val: Poly2 = F
    equalities: tuple = ()
    nonzeros: tuple = ()
    path: tuple = ()

    def reduce(self, p: Poly2) -> Poly2:
        return p.compose(self.h_val, self.f_val)

    def reduce_scalar(self, s: Scalar) -> Scalar:
        return s.compose(self.h_val, self.f_val)

    @property
    def h(self) -> Scalar:
        return Scalar(self.h_val)

    @property
    def f(self) -> Scalar:
        return Scalar(self.f_val)

    def impose(self, p: Poly2, label: str) -> Branch | None:
        """Add ``p = 0`` for an irreducible p; None if the branch becomes empty."""
        p = self.reduce(p)
        if not p:
            return self
        if p.is_const():
            return None
        if p.total_degree() > 1:
            raise NonlinearCondition(f"cannot impose {p} = 0 by substitution")
        a = p.terms.get((1, 0))
        if a:
            expr = (p - Poly2.monomial(1, 0, a)).scale(-a.inverse())
            hv, fv = expr, F
        else:
            b = p.terms[(0, 1)]
            expr = (p - Poly2.monomial(0, 1, b)).scale(-b.inverse())
            hv, fv = H, expr
        nonzeros = []
        for q in self.nonzeros:
            q = q.compose(hv, fv)
            if not q:
                return None
            if not q.is_const():
                nonzeros.extend(r for r, _ in factor(q)[1] if r not in nonzeros)
        return Branch(
            self.h_val.compose(hv, fv), self.f_val.compose(hv, fv),
            self.equalities + (_monic(p),), tuple(nonzeros), self.path + (label,),
        )

    def exclude(self, p: Poly2, label: str) -> Branch | None:
        """Add ``p != 0``; None if p vanishes identically on the branch."""
        p = self.reduce(p)
        if not p:
            return None
        if p.is_const():
            return self
        _, parts = factor(p)
        new = tuple(q for q, _ in parts if q not in self.nonzeros)
        return Branch(self.h_val, self.f_val, self.equalities, self.nonzeros + new,
                      self.path + (label,))

    def contains(self, h0, f0) -> bool:
        return all(not e.evaluate(h0, f0) for e in self.equalities) and all(
            q.evaluate(h0, f0) for q in self.nonzeros
        )


def _solve_system(polys, branch: Branch, label: str) -> list:
    """Branches on which every polynomial vanishes."""
    todo = [branch.reduce(p) for p in polys]
    todo = [p for p in todo if p]
    if not todo:
        return [branch]
    if any(p.is_const() for p in todo):
        return []
    p = todo[0]
    out = []
    _, parts = factor(p)
    for q, _ in parts:
        b = branch.impose(q, f"{label}: {q} = 0")
        if b is not None:
            out.extend(_solve_system(todo[1:], b, label))
    return out


# ---------------------------------------------------------------------------
# condition systems

def _lowering_components(kets, h=None, f=None) -> dict:
    """target ket -> list of coefficients, one per unknown, over all lowering operators."""
    h = Scalar.h() if h is None else h
    f = Scalar.f() if f is None else f
    rows = {}
    for j, b in enumerate(kets):
        for L in LOWERING:
            for target, c in act(L, VermaVector({b: 1}), h, f).terms.items():
                key = (L, target)
                rows.setdefault(key, [Scalar(0)] * len(kets))
                rows[key][j] = rows[key][j] + c
    return rows


def condition_system(n: int) -> list:
    """Annihilation conditions on |n,0,0> + alpha |n-1,1,1> as pairs (P, Q): P + alpha*Q = 0.

    Order: c+ (onto |n-1,0,1>), c- (onto |n-1,1,0>), A- onto |n-1,0,0>, A- onto |n-2,1,1>.
    Each equation is divided by the integer content of its coefficients.
    """
    if n < 1:
        raise ValueError("even-level system needs n >= 1")
    kets = level_subspace(2 * n)
    rows = _lowering_components(kets)
    order = [
        ("c+", BasisKet(n - 1, 0, 1)), ("c-", BasisKet(n - 1, 1, 0)),
        ("A-", BasisKet(n - 1, 0, 0)), ("A-", BasisKet(n - 2, 1, 1)),
    ]
    out = []
    for key in order:
        P, Q = rows.get(key, [Scalar(0), Scalar(0)])
        out.append(_strip_content(P.num, Q.num))
    return out


def _strip_content(P: Poly2, Q: Poly2):
    from math import gcd

    nums = [c.a for c in list(P.terms.values()) + list(Q.terms.values())]
    if not nums or any(c.b for c in list(P.terms.values()) + list(Q.terms.values())):
        return P, Q
    g = 0
    for x in nums:
        g = gcd(g, x.numerator)
    g = abs(g) or 1
    return P.scale(Fraction(1, g)), Q.scale(Fraction(1, g))


def _solve_alpha(eqs, branch: Branch, labels) -> list:
    """Solve P_i + alpha Q_i = 0 for (branch, alpha); alpha None means free."""
    red = [(branch.reduce(P), branch.reduce(Q), lab) for (P, Q), lab in zip(eqs, labels)]
    red = [t for t in red if t[0] or t[1]]
    if not red:
        return [(branch, None)]
    with_alpha = [t for t in red if t[1]]
    if not with_alpha:
        return [(b, None) for b in _solve_system([t[0] for t in red], branch, "no alpha")]
    P, Q, lab = with_alpha[0]
    out = []
    bq = branch.exclude(Q, f"{lab}: {Q} != 0")
    if bq is not None:
        alpha = Scalar(-P, Q)
        rest = [bq.reduce(P2 * Q - P * Q2) for P2, Q2, lab2 in red if lab2 != lab]
        for b in _solve_system(rest, bq, f"{lab} eliminated"):
            out.append((b, b.reduce_scalar(alpha)))
    _, parts = factor(Q)
    for q, _ in parts:
        b = branch.impose(q, f"{lab}: {q} = 0")
        if b is not None:
            out.extend(_solve_alpha(eqs, b, labels))
    return out


# ---------------------------------------------------------------------------
# results

@dataclass
class SingularFamily:
    level: int
    vector: VermaVector
    branch: Branch
    ansatz: str = "normalized"

    @property
    def equalities(self) -> tuple:
        return self.branch.equalities

    @property
    def nonzeros(self) -> tuple:
        return self.branch.nonzeros

    def applies(self, h0, f0) -> bool:
        return self.branch.contains(h0, f0)

    def specialize(self, h0, f0) -> VermaVector:
        return self.vector.substitute(h0, f0)

    def verify(self) -> bool:
        h, f = self.branch.h, self.branch.f
        if any(act(L, self.vector, h, f) for L in LOWERING):
            return False
        n_w = {b.n_weight(h) for b in self.vector.terms}
        ft_w = {b.ft_weight(f) for b in self.vector.terms}
        return len(n_w) == 1 and len(ft_w) == 1

    def conditions_text(self) -> str:
        parts = [f"{e} = 0" for e in self.equalities] + [f"{q} != 0" for q in self.nonzeros]
        return ", ".join(parts) or "always"

    def __str__(self):
        return f"level {self.level}: {self.conditions_text()}: {self.vector}"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "equalities": [e.to_text() for e in self.equalities],
            "nonzero": [q.to_text() for q in self.nonzeros],
            "vector": self.vector.to_json(),
            "ansatz": self.ansatz,
        }


def classify_singular_symbolic(max_level: int | None = None, complete: bool = False) -> list:
    """Singular vectors by level with the conditions on (h, f) under which they exist.

    Odd levels: each ket is alone in its Ft-weight space and is tested by
    itself.  Even level 2n: the ansatz |n,0,0> + alpha |n-1,1,1> is solved
    for alpha starting from the A- equation onto |n-2,1,1>, whose
    factorization alpha (n-1)(h+n) drives the case split.  With
    ``complete=True`` the branch where |n,0,0> has coefficient zero, which
    the ansatz normalizes away, is examined as well.
    """
    max_level = default_max_level() if max_level is None else max_level
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    families = []
    for m in range(1, max_level + 1):
        if m % 2:
            for b in level_subspace(m):
                families.extend(_single_ket_families(m, b, "normalized"))
        else:
            n = m // 2
            eqs = condition_system(n)
            labels = ["E1", "E2", "E3", "E4"]
            order = [3, 0, 1, 2]
            for br, alpha in _solve_alpha([eqs[i] for i in order], Branch(), [labels[i] for i in order]):
                if alpha is None:
                    # alpha unconstrained: the whole level is singular
                    for b in level_subspace(m):
                        families.append(SingularFamily(m, VermaVector({b: 1}), br))
                    continue
                v = VermaVector({BasisKet(n, 0, 0): 1, BasisKet(n - 1, 1, 1): alpha})
                families.append(SingularFamily(m, v, br))
            if complete:
                families.extend(_single_ket_families(m, BasisKet(n - 1, 1, 1), "leading-zero"))
    for fam in families:
        if not fam.verify():
            raise AssertionError(f"classifier produced a non-singular vector: {fam}")
    return families


def _single_ket_families(m, b, ansatz) -> list:
    rows = _lowering_components([b])
    polys = [r[0].num for r in rows.values()]
    return [
        SingularFamily(m, VermaVector({b: 1}), br, ansatz)
        for br in _solve_system(polys, Branch(), f"{b}")
    ]


def theorem_families(max_level: int) -> list:
    """The expected families, as (level, equalities, nonzeros, vector) tuples."""
    f = Scalar.f()
    out = [
        (1, (H - F,), (), VermaVector({BasisKet(0, 1, 0): 1})),
        (1, (H + F,), (), VermaVector({BasisKet(0, 0, 1): 1})),
    ]
    for n in range(1, max_level // 2 + 1):
        alpha = n / (f - n)
        out.append((2 * n, (H + n,), (F - n,),
                    VermaVector({BasisKet(n, 0, 0): 1, BasisKet(n - 1, 1, 1): alpha})))
    return out


def specialize(families, h0, f0) -> list:
    """Sorted (level, vector-text) pairs of the families that apply at (h0, f0)."""
    out = []
    for fam in families:
        if fam.applies(h0, f0):
            out.append((fam.level, fam.specialize(h0, f0)))
    return sorted(out, key=lambda t: (t[0], str(t[1])))


# ---------------------------------------------------------------------------
# numeric search

@dataclass
class SingularEntry:
    level: int
    vector: VermaVector
    condition: str = ""

    def to_json(self) -> dict:
        return {"level": self.level, "condition": self.condition, "vector": self.vector.to_json()}


@dataclass
class SingularReport:
    h0: Fraction
    f0: Fraction
    max_level: int
    entries: list = field(default_factory=list)

    def __post_init__(self):
        h, f = Scalar(self.h0), Scalar(self.f0)
        for e in self.entries:
            if any(act(L, e.vector, h, f) for L in LOWERING):
                raise AssertionError(f"reported vector {e.vector} is not singular")

    def __bool__(self):
        return bool(self.entries)

    def pairs(self) -> list:
        return sorted(((e.level, e.vector) for e in self.entries), key=lambda t: (t[0], str(t[1])))

    def to_json(self) -> dict:
        return {
            "h": _ftext(self.h0), "f": _ftext(self.f0), "max_level": self.max_level,
            "singular_vectors": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> SingularReport:
        entries = [
            SingularEntry(e["level"], VermaVector.from_json(e["vector"]), e.get("condition", ""))
            for e in data["singular_vectors"]
        ]
        return cls(Fraction(data["h"]), Fraction(data["f"]), data["max_level"], entries)


def _ftext(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _normalize(vec: list) -> list:
    lead = next(c for c in vec if c)
    return [c / lead for c in vec]


def find_singular_numeric(h0, f0, max_level: int | None = None) -> SingularReport:
    """All singular vectors up to ``max_level`` at the point (h0, f0), by exact linear algebra."""
    max_level = default_max_level() if max_level is None else max_level
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    h0, f0 = Fraction(h0), Fraction(f0)
    h, f = Scalar(h0), Scalar(f0)
    entries = []
    for m in range(1, max_level + 1):
        for kets in weight_blocks(m):
            rows = list(_lowering_components(kets, h, f).values())
            rows = [r for r in rows if any(r)]
            for vec in nullspace(rows, len(kets), Scalar(0), Scalar(1)):
                vec = _normalize(vec)
                v = VermaVector({b: c for b, c in zip(kets, vec)})
                entries.append(SingularEntry(m, v, f"h={_ftext(h0)}, f={_ftext(f0)}"))
    return SingularReport(h0, f0, max_level, entries)


def grid_values(lo: int = -5, hi: int | None = None) -> list:
    """Distinct rationals p/q with p and q in [lo, hi], q != 0; a single bound means [-b, b]."""
    if hi is None:
        lo, hi = -abs(lo), abs(lo)
    if lo > hi:
        raise ValueError(f"empty range {lo}..{hi}")
    vals = {Fraction(p, q) for p in range(lo, hi + 1) for q in range(lo, hi + 1) if q}
    return sorted(vals)


@dataclass
class ScanPoint:
    """Numeric search at one point, compared with the classifier and the criterion."""

    report: SingularReport
    expected: list
    irreducible: bool
    complete: bool = False

    @property
    def h0(self) -> Fraction:
        return self.report.h0

    @property
    def f0(self) -> Fraction:
        return self.report.f0

    @property
    def agrees(self) -> bool:
        return _pair_text(self.report.pairs()) == _pair_text(self.expected)

    @property
    def criterion_agrees(self) -> bool:
        return self.irreducible == (not self.report.entries)

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["classifier_agrees"] = self.agrees
        out["irreducible"] = self.irreducible
        out["criterion_agrees"] = self.criterion_agrees
        return out


def _pair_text(pairs) -> list:
    return [(m, str(v)) for m, v in pairs]


_FAMILIES = {}


def _families(max_level: int, complete: bool) -> list:
    key = (max_level, complete)
    if key not in _FAMILIES:
        _FAMILIES[key] = classify_singular_symbolic(max_level, complete)
    return _FAMILIES[key]


def scan_point(h0, f0, max_level: int | None = None, complete: bool = False) -> ScanPoint:
    max_level = default_max_level() if max_level is None else max_level
    report = find_singular_numeric(h0, f0, max_level)
    expected = specialize(_families(max_level, complete), report.h0, report.f0)
    return ScanPoint(report, expected, bool(is_irreducible(h0, f0)), complete)


def _scan_args(args):
    return scan_point(*args)


def scan_grid(values, max_level: int | None = None, complete: bool = False, workers: int = 1) -> list:
    """scan_point over the square grid values x values, in row-major order."""
    max_level = default_max_level() if max_level is None else max_level
    points = [(h0, f0, max_level, complete) for h0 in values for f0 in values]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_scan_args, points, chunksize=32))
    return [_scan_args(p) for p in points]


# ---------------------------------------------------------------------------
# irreducibility

@dataclass
class Certificate:
    irreducible: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.irreducible

    def __str__(self):
        if self.irreducible:
            return "irreducible"
        return "reducible: " + "; ".join(self.reasons)


def is_irreducible(h0, f0) -> Certificate:
    """Irreducibility criterion: h != +-f, and h = -n (n a positive integer) only with f = n."""
    h0, f0 = Fraction(h0), Fraction(f0)
    reasons = []
    if h0 == f0:
        reasons.append("h = f: singular vector |0,1,0> at level 1")
    if h0 == -f0:
        reasons.append("h = -f: singular vector |0,0,1> at level 1")
    if h0 < 0 and h0.denominator == 1 and f0 != -h0:
        n = int(-h0)
        reasons.append(f"h = -{n}, f != {n}: singular vector at level {2 * n}")
    return Certificate(not reasons, reasons)
