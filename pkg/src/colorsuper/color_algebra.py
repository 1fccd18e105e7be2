"""The eight-dimensional Z2 x Z2 graded color superalgebra and its zeta-extension.

Elements are finite sums ``coeff * zeta**p * X`` with ``p`` in {0, 1} and
``X`` a generator.  The formal parameter ``zeta`` has degree (1, 1),
squares to 1 and is always moved to the left of a generator using the
sign rule.  Two generator sets live side by side: the defining basis
``A-, A+, N, b-, b+, a-, a+, F`` and the rotated basis
``c-, c+, d-, d+, Ft`` built from it with zeta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import grading
from .grading import D01, D10, D11, ZERO, Degree, sign
from .scalars import SQRT2, QSqrt2, Scalar, parse_scalar

__all__ = [
    "Generator", "AlgebraElement", "StructureTable", "AxiomReport",
    "UnknownGenerator", "RelationMismatch", "GEN", "OLD_BASIS", "NEW_BASIS",
    "gen", "elem", "bracket", "check_axioms", "omega", "check_anti_involution",
    "build_new_basis", "expand", "to_new_basis", "default_table", "new_basis_table",
    "EIGENVALUES",
]


class UnknownGenerator(KeyError):
    pass


class RelationMismatch(AssertionError):
    def __init__(self, pair, expected, got):
        super().__init__(f"bracket {pair}: expected {expected}, got {got}")
        self.pair, self.expected, self.got = pair, expected, got


@dataclass(frozen=True, order=True)
class Generator:
    index: int
    name: str = field(compare=False)
    degree: Degree = field(compare=False)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Generator({self.name})"


_SPECS = [
    ("A-", ZERO), ("A+", ZERO), ("N", ZERO),
    ("b-", D10), ("b+", D10),
    ("a-", D01), ("a+", D01),
    ("F", D11),
    ("c-", D01), ("c+", D01), ("d-", D01), ("d+", D01), ("Ft", ZERO),
]

GEN = {name: Generator(i, name, d) for i, (name, d) in enumerate(_SPECS)}
_ALIASES = {"Ftilde": "Ft", "F~": "Ft", "F̃": "Ft", "A−": "A-", "b−": "b-", "a−": "a-",
            "c−": "c-", "d−": "d-"}

OLD_BASIS = tuple(GEN[n] for n in ("A-", "A+", "N", "b-", "b+", "a-", "a+", "F"))
NEW_BASIS = tuple(GEN[n] for n in ("A-", "A+", "N", "Ft", "c-", "c+", "d-", "d+"))
_NEW_ONLY = frozenset(GEN[n] for n in ("c-", "c+", "d-", "d+", "Ft"))

# (ad N, ad Ft) eigenvalues of the rotated basis
EIGENVALUES = {
    "A+": (2, 0), "A-": (-2, 0), "c+": (-1, -1), "c-": (-1, 1),
    "N": (0, 0), "Ft": (0, 0), "d+": (1, 1), "d-": (1, -1),
}


def gen(name) -> Generator:
    if isinstance(name, Generator):
        return name
    name = _ALIASES.get(name, name)
    try:
        return GEN[name]
    except KeyError:
        raise UnknownGenerator(name) from None


def _coef(c) -> Scalar:
    return Scalar.coerce(c)


class AlgebraElement:
    """Finite linear combination of ``zeta**p * X`` terms with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (p, g), c in (terms or {}).items():
            c = _coef(c)
            if c:
                key = (p & 1, gen(g))
                clean[key] = clean[key] + c if key in clean else c
                if not clean[key]:
                    del clean[key]
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def of(cls, name, coeff=1, zeta=0) -> AlgebraElement:
        return cls({(zeta, gen(name)): coeff})

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, AlgebraElement):
            return NotImplemented
        return AlgebraElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / _coef(c))

    def zeta_left(self) -> AlgebraElement:
        """zeta * self."""
        return AlgebraElement({(p ^ 1, g): c for (p, g), c in self.terms.items()})

    def zeta_right(self) -> AlgebraElement:
        """self * zeta, with zeta moved to canonical left position."""
        return AlgebraElement({
            (p ^ 1, g): c * sign(g.degree, D11) for (p, g), c in self.terms.items()
        })

    def degrees(self) -> set:
        return {g.degree + D11 * p for (p, g) in self.terms}

    def degree(self) -> Degree | None:
        ds = self.degrees()
        if len(ds) == 1:
            return ds.pop()
        return ZERO if not ds else None

    def generators(self) -> set:
        return {g for (_, g) in self.terms}

    def has_zeta(self) -> bool:
        return any(p for (p, _) in self.terms)

    def coefficient(self, name, zeta=0) -> Scalar:
        return self.terms.get((zeta, gen(name)), Scalar(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (p, g), c in self.terms.items():
            body = ("zeta*" if p else "") + g.name
            cs = str(c)
            if c == 1:
                parts.append(("+", body))
            elif c == -1:
                parts.append(("-", body))
            elif c.is_const() and cs.startswith("-") and " " not in cs:
                parts.append(("-", f"{cs[1:]}*{body}"))
            else:
                if " " in cs and not cs.startswith("("):
                    cs = f"({cs})"
                parts.append(("+", f"{cs}*{body}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, t in parts[1:]:
            text += f" {s} {t}"
        return text

    def __repr__(self):
        return f"AlgebraElement({self})"

    def to_json(self) -> list:
        return [
            {"zeta": p, "generator": g.name, "coefficient": c.to_text()}
            for (p, g), c in self.terms.items()
        ]

    @classmethod
    def from_json(cls, data: list) -> AlgebraElement:
        return cls({(t["zeta"], gen(t["generator"])): parse_scalar(t["coefficient"]) for t in data})


def elem(spec) -> AlgebraElement:
    """Build an element from a generator name or a ``{name: coeff}`` mapping."""
    if isinstance(spec, AlgebraElement):
        return spec
    if isinstance(spec, (str, Generator)):
        return AlgebraElement.of(spec)
    return AlgebraElement({(0, gen(k)): v for k, v in spec.items()})


# ---------------------------------------------------------------------------
# structure tables

# Only the non-vanishing brackets; the rest follows from graded antisymmetry.
_DEFINING = {
    ("A-", "A+"): {"N": 4}, ("A-", "N"): {"A-": 2}, ("A+", "N"): {"A+": -2},
    ("A-", "b+"): {"b-": 2}, ("A+", "b-"): {"b+": -2}, ("N", "b-"): {"b-": -1}, ("N", "b+"): {"b+": 1},
    ("A-", "a+"): {"a-": 2}, ("A+", "a-"): {"a+": -2}, ("N", "a-"): {"a-": -1}, ("N", "a+"): {"a+": 1},
    ("b-", "b-"): {"A-": 2}, ("b-", "b+"): {"N": 2}, ("b+", "b+"): {"A+": 2},
    ("b-", "a+"): {"F": 1}, ("b+", "a-"): {"F": -1}, ("b-", "F"): {"a-": 2}, ("b+", "F"): {"a+": 2},
    ("a-", "a-"): {"A-": 2}, ("a-", "a+"): {"N": 2}, ("a+", "a+"): {"A+": 2},
    ("a-", "F"): {"b-": 2}, ("a+", "F"): {"b+": 2},
}


class StructureTable:
    """Brackets of basis generators; missing ordered pairs are zero.

    Listed pairs are taken as given and their reversals are filled in by
    graded antisymmetry unless also listed explicitly.
    """

    def __init__(self, entries=None, generators=OLD_BASIS):
        self.generators = tuple(gen(g) for g in generators)
        table = {}
        for (x, y), v in (entries or {}).items():
            table[(gen(x), gen(y))] = elem(v)
        for (x, y), v in list(table.items()):
            if (y, x) not in table:
                table[(y, x)] = v * (-sign(x.degree, y.degree))
        self._table = {k: v for k, v in table.items() if v}

    def __call__(self, x: Generator, y: Generator) -> AlgebraElement:
        return self._table.get((x, y), AlgebraElement())

    def items(self):
        return self._table.items()

    def with_entry(self, x, y, value) -> StructureTable:
        """Copy with the bracket of (x, y) replaced; the reversal follows by antisymmetry."""
        x, y = gen(x), gen(y)
        entries = {k: v for k, v in self._table.items() if k != (y, x)}
        entries[(x, y)] = elem(value)
        return StructureTable(entries, self.generators)

    def to_json(self) -> dict:
        return {
            "degrees": {g.name: str(g.degree) for g in self.generators},
            "brackets": [
                {"left": x.name, "right": y.name, "value": v.to_json()}
                for (x, y), v in sorted(self._table.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> StructureTable:
        gens = tuple(gen(n) for n in data["degrees"])
        for g in gens:
            if str(g.degree) != data["degrees"][g.name]:
                raise ValueError(f"degree of {g.name} does not match")
        entries = {(b["left"], b["right"]): AlgebraElement.from_json(b["value"]) for b in data["brackets"]}
        return cls(entries, gens)


_DEFAULT = StructureTable(_DEFINING)


def default_table() -> StructureTable:
    return _DEFAULT


def _bracket_terms(x: AlgebraElement, y: AlgebraElement, table: StructureTable) -> AlgebraElement:
    out = AlgebraElement()
    acc = {}
    for (p, gx), cx in x.terms.items():
        for (q, gy), cy in y.terms.items():
            v = table(gx, gy)
            if not v:
                continue
            # [[z^p X, z^q Y]] = sign(deg X, q*deg z) z^(p+q) [[X, Y]]
            c = cx * cy * sign(gx.degree, D11 * q)
            for (r, g), cv in v.terms.items():
                key = ((p + q + r) & 1, g)
                # zeta factors inside v are already leftmost
                acc[key] = acc[key] + c * cv if key in acc else c * cv
    return out + AlgebraElement(acc)


def _uses_new(x: AlgebraElement) -> bool:
    return any(g in _NEW_ONLY for g in x.generators())


def bracket(x, y, table: StructureTable | None = None) -> AlgebraElement:
    """Graded bracket, extended bilinearly and through the zeta factors.

    Rotated-basis generators are expanded into the defining basis first;
    if either argument used them, the result is collected back.
    """
    x, y = elem(x), elem(y)
    table = table or _DEFAULT
    back = _uses_new(x) or _uses_new(y)
    for g in x.generators() | y.generators():
        if g not in table.generators and g not in _NEW_ONLY:
            raise UnknownGenerator(g.name)
    if back:
        x, y = expand(x), expand(y)
    out = _bracket_terms(x, y, table)
    if back:
        out = to_new_basis(out)
    return out


# ---------------------------------------------------------------------------
# axioms

@dataclass
class AxiomReport:
    pairs_checked: int = 0
    triples_checked: int = 0
    closure: list = field(default_factory=list)
    antisymmetry: list = field(default_factory=list)
    jacobi: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.closure or self.antisymmetry or self.jacobi)

    def violations(self) -> list:
        return (
            [("closure",) + v for v in self.closure]
            + [("antisymmetry",) + v for v in self.antisymmetry]
            + [("jacobi",) + v for v in self.jacobi]
        )


def check_axioms(table: StructureTable | None = None) -> AxiomReport:
    """Exhaustive check of grading closure, graded antisymmetry and graded Jacobi."""
    table = table if table is not None else _DEFAULT
    gens = table.generators
    rep = AxiomReport()
    br = {}
    for x, y in product(gens, repeat=2):
        v = table(x, y)
        br[x, y] = v
        rep.pairs_checked += 1
        if v and v.degrees() != {x.degree + y.degree}:
            rep.closure.append((x.name, y.name))
        if v != table(y, x) * (-sign(x.degree, y.degree)):
            rep.antisymmetry.append((x.name, y.name))
    for x, y, z in product(gens, repeat=3):
        rep.triples_checked += 1
        total = (
            _bracket_terms(elem(x), br[y, z], table) * sign(x.degree, z.degree)
            + _bracket_terms(elem(y), br[z, x], table) * sign(y.degree, x.degree)
            + _bracket_terms(elem(z), br[x, y], table) * sign(z.degree, y.degree)
        )
        if total:
            rep.jacobi.append((x.name, y.name, z.name))
    return rep


# ---------------------------------------------------------------------------
# anti-involution

_OMEGA = {
    "A-": "A+", "A+": "A-", "b-": "b+", "b+": "b-", "a-": "a+", "a+": "a-",
    "N": "N", "F": "F", "c-": "d-", "c+": "d+", "d-": "c-", "d+": "c+", "Ft": "Ft",
}


def omega(x) -> AlgebraElement:
    """Linear order-reversing involution exchanging raising and lowering generators.

    A zeta factor is kept and, the map being order reversing, ends up on
    the right: omega(zeta X) = omega(X) zeta.
    """
    x = elem(x)
    out = AlgebraElement()
    for (p, g), c in x.terms.items():
        img = AlgebraElement.of(_OMEGA[g.name], c)
        out = out + (img.zeta_right() if p else img)
    return out


@dataclass
class InvolutionReport:
    involutive: list = field(default_factory=list)
    anti_homomorphism: list = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.involutive or self.anti_homomorphism)


def check_anti_involution(basis=OLD_BASIS, table: StructureTable | None = None) -> InvolutionReport:
    rep = InvolutionReport()
    for g in GEN.values():
        if omega(omega(g)) != elem(g):
            rep.involutive.append(g.name)
    for x, y in product(basis, repeat=2):
        rep.pairs_checked += 1
        lhs = omega(bracket(x, y, table))
        rhs = bracket(omega(y), omega(x), table)
        if lhs != rhs:
            rep.anti_homomorphism.append((x.name, y.name, str(lhs), str(rhs)))
    return rep


# ---------------------------------------------------------------------------
# rotated basis

_INV_SQRT2 = QSqrt2(1) / SQRT2


def _definitions() -> dict:
    a_m, a_p = AlgebraElement.of("a-"), AlgebraElement.of("a+")
    b_m, b_p = AlgebraElement.of("b-"), AlgebraElement.of("b+")
    F_ = AlgebraElement.of("F")
    return {
        "c+": (a_m + b_m.zeta_right()) * _INV_SQRT2,
        "c-": (a_m - b_m.zeta_right()) * _INV_SQRT2,
        "d+": (a_p + b_p.zeta_left()) * _INV_SQRT2,
        "d-": (a_p - b_p.zeta_left()) * _INV_SQRT2,
        "Ft": F_.zeta_left() * QSqrt2(1, 0) / 2,
    }


_DEFS = _definitions()


def expand(x) -> AlgebraElement:
    """Rewrite rotated-basis generators in terms of the defining basis."""
    x = elem(x)
    out = AlgebraElement()
    for (p, g), c in x.terms.items():
        if g.name in _DEFS:
            img = _DEFS[g.name] * c
            out = out + (img.zeta_left() if p else img)
        else:
            out = out + AlgebraElement({(p, g): c})
    return out


def _solve_inverse() -> dict:
    """Express each defining-basis term in the image of the rotated basis."""
    images = {g: expand(g) for g in NEW_BASIS}
    keys = sorted({k for v in images.values() for k in v.terms})
    n = len(keys)
    assert n == len(NEW_BASIS)
    # rows: keys; columns: new generators -> solve M * coords = e_key
    cols = list(NEW_BASIS)
    M = [[images[g].terms.get(k, Scalar(0)) for g in cols] for k in keys]
    aug = [row + [Scalar(1) if i == j else Scalar(0) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                fac = aug[r][c]
                aug[r] = [a - fac * b for a, b in zip(aug[r], aug[c])]
    inverse = {}
    for j, k in enumerate(keys):
        combo = {(0, cols[i]): aug[i][n + j] for i in range(n)}
        inverse[k] = AlgebraElement(combo)
    return inverse


_INVERSE = _solve_inverse()


def to_new_basis(x, strict: bool = True) -> AlgebraElement:
    """Collect an element of the zeta-extended algebra on A+-, N, Ft, c+-, d+-.

    Terms outside that span (e.g. a bare ``b-`` or ``zeta*N``) raise
    :class:`RelationMismatch` when ``strict``; otherwise they are kept.
    """
    x = expand(x)
    out = AlgebraElement()
    rest = {}
    for k, c in x.terms.items():
        if k in _INVERSE:
            out = out + _INVERSE[k] * c
        else:
            rest[k] = c
    if rest:
        if strict:
            raise RelationMismatch("collect", "span of rotated basis", AlgebraElement(rest))
        out = out + AlgebraElement(rest)
    return out


def _expected_rotated() -> dict:
    E = AlgebraElement.of
    rel = {
        ("c+", "c-"): E("A-", 2), ("d+", "d-"): E("A+", 2),
        ("c+", "d+"): E("N", 2) - E("Ft", 2), ("c-", "d-"): E("N", 2) + E("Ft", 2),
        ("Ft", "c+"): E("c+", -1), ("Ft", "c-"): E("c-", 1),
        ("Ft", "d+"): E("d+", 1), ("Ft", "d-"): E("d-", -1),
    }
    full = {}
    for (x, y), v in rel.items():
        gx, gy = gen(x), gen(y)
        full[gx, gy] = v
        full[gy, gx] = v * (-sign(gx.degree, gy.degree))
    return full


def build_new_basis(table: StructureTable | None = None) -> dict:
    """Definitions of c+-, d+-, Ft, checked against their bracket relations.

    Every ordered pair of {c+-, d+-, Ft} must match the expected relation
    (zero where none is listed); every pair of the rotated basis must close
    without a zeta-carrying remainder.
    """
    expected = _expected_rotated()
    core = [gen(n) for n in ("c-", "c+", "d-", "d+", "Ft")]
    for x, y in product(core, repeat=2):
        got = bracket(x, y, table)
        want = expected.get((x, y), AlgebraElement())
        if got != want:
            raise RelationMismatch((x.name, y.name), want, got)
    for x, y in product(NEW_BASIS, repeat=2):
        v = _bracket_terms(expand(x), expand(y), table or _DEFAULT)
        to_new_basis(v, strict=True)
    return dict(_DEFS)


def new_basis_table(table: StructureTable | None = None) -> StructureTable:
    """Structure table of the rotated basis, computed through zeta."""
    entries = {}
    for x, y in product(NEW_BASIS, repeat=2):
        v = bracket(x, y, table)
        if v:
            entries[(x, y)] = v
    return StructureTable(entries, NEW_BASIS)


_NEW_TABLE = None


def rotated_table() -> StructureTable:
    global _NEW_TABLE
    if _NEW_TABLE is None:
        _NEW_TABLE = new_basis_table()
    return _NEW_TABLE
