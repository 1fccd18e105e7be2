"""The Verma module M(h, f) on the basis |k, mu, nu> = A+^k d+^mu d-^nu |h, f>.

Two independent routes compute the action of the rotated-basis generators:
:func:`act` uses closed forms, :func:`act_oracle` straightens
``g A+^k d+^mu d-^nu`` in the enveloping algebra and reads the result off
against the lowest weight vector.
"""

from __future__ import annotations

from typing import NamedTuple

from .color_algebra import AlgebraElement, UnknownGenerator, elem, gen
from .enveloping import rotated_engine
from .scalars import Scalar, parse_scalar

__all__ = [
    "BasisKet", "VermaVector", "act", "act_oracle", "act_element", "level_subspace",
    "weight_blocks", "LOWERING", "RAISING", "CARTAN", "GENERATORS", "ket", "HW", "FW",
]

HW = Scalar.h()
FW = Scalar.f()


class BasisKet(NamedTuple):
    k: int
    mu: int
    nu: int

    @property
    def level(self) -> int:
        return 2 * self.k + self.mu + self.nu

    def n_weight(self, h=HW):
        return h + self.level

    def ft_weight(self, f=FW):
        return f + self.mu - self.nu

    def __str__(self):
        return f"|{self.k},{self.mu},{self.nu}>"


def ket(k, mu, nu) -> BasisKet:
    if k < 0 or mu not in (0, 1) or nu not in (0, 1):
        raise ValueError(f"not a basis ket: ({k}, {mu}, {nu})")
    return BasisKet(k, mu, nu)


class VermaVector:
    """Finite combination of basis kets with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for b, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                b = BasisKet(*b)
                clean[b] = clean[b] + c if b in clean else c
                if not clean[b]:
                    del clean[b]
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, k, mu, nu, coeff=1) -> VermaVector:
        return cls({ket(k, mu, nu): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, VermaVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: VermaVector) -> VermaVector:
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return VermaVector(out)

    def __neg__(self):
        return VermaVector({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return VermaVector({b: v * c for b, v in self.terms.items()})

    __rmul__ = __mul__

    def levels(self) -> set:
        return {b.level for b in self.terms}

    def coefficient(self, k, mu, nu) -> Scalar:
        return self.terms.get(BasisKet(k, mu, nu), Scalar(0))

    def substitute(self, h0=None, f0=None) -> VermaVector:
        return VermaVector({b: c.substitute(h0, f0) for b, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for b, c in self.terms.items():
            if c == 1:
                parts.append(str(b))
            elif c == -1:
                parts.append(f"-{b}")
            else:
                cs = str(c)
                if " " in cs and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs}{b}")
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return f"VermaVector({self})"

    def to_json(self) -> list:
        return [
            {"ket": [b.k, b.mu, b.nu], "coefficient": c.to_text()}
            for b, c in self.terms.items()
        ]

    @classmethod
    def from_json(cls, data: list) -> VermaVector:
        return cls({BasisKet(*t["ket"]): parse_scalar(t["coefficient"]) for t in data})


RAISING = ("A+", "d+", "d-")
CARTAN = ("N", "Ft")
LOWERING = ("A-", "c+", "c-")
GENERATORS = RAISING + CARTAN + LOWERING


def _act_ket(name: str, b: BasisKet, h: Scalar, f: Scalar) -> dict:
    k, mu, nu = b
    sgn = -1 if mu else 1
    out = {}

    def put(kk, mm, nn, c):
        if c:
            key = BasisKet(kk, mm, nn)
            out[key] = out[key] + c if key in out else Scalar.coerce(c)

    if name == "N":
        put(k, mu, nu, h + 2 * k + mu + nu)
    elif name == "Ft":
        put(k, mu, nu, f + mu - nu)
    elif name == "A+":
        put(k + 1, mu, nu, 1)
    elif name == "d+":
        if mu == 0:
            put(k, 1, nu, 1)
    elif name == "d-":
        if nu == 0:
            put(k, mu, 1, sgn)
        if mu == 1:
            put(k + 1, 0, nu, 2)
    elif name == "A-":
        if k:
            put(k - 1, mu, nu, 4 * k * (h + k + mu + nu - 1))
        if mu and nu:
            put(k, 0, 0, 4 * (h + f))
    elif name == "c+":
        if mu == 1:
            put(k, 0, nu, 2 * (h + 2 * k + 2 * nu - f))
        if nu == 0 and k:
            put(k - 1, mu, 1, sgn * 2 * k)
    elif name == "c-":
        if nu == 1:
            put(k, mu, 0, sgn * 2 * (h + f))
        if mu == 0 and k:
            put(k - 1, 1, nu, 2 * k)
    else:
        raise UnknownGenerator(name)
    return out


def act(g, v, h=HW, f=FW) -> VermaVector:
    """Action of a rotated-basis generator on a Verma vector (closed forms)."""
    name = gen(g).name
    if name not in GENERATORS:
        raise UnknownGenerator(name)
    if isinstance(v, BasisKet) or isinstance(v, tuple):
        v = VermaVector({BasisKet(*v): 1})
    acc = {}
    for b, c in v.terms.items():
        for bb, cc in _act_ket(name, b, h, f).items():
            acc[bb] = acc[bb] + c * cc if bb in acc else c * cc
    return VermaVector(acc)


def act_element(x, v, h=HW, f=FW) -> VermaVector:
    """Linear extension of :func:`act` to an algebra element without zeta."""
    x = elem(x)
    out = VermaVector()
    for (p, g), c in x.terms.items():
        if p:
            raise ValueError("zeta-carrying element does not act on M(h,f)")
        out = out + act(g, v, h, f) * c
    return out


def act_oracle(g, b, h=HW, f=FW) -> VermaVector:
    """Straighten ``g A+^k d+^mu d-^nu`` and evaluate on the lowest weight vector."""
    name = gen(g).name
    if name not in GENERATORS:
        raise UnknownGenerator(name)
    b = BasisKet(*b)
    eng = rotated_engine()
    pos = eng.position
    state = eng.one()
    for gname, e in (("d-", b.nu), ("d+", b.mu), ("A+", b.k)):
        for _ in range(e):
            state = eng.left_multiply(gname, state)
    state = eng.left_multiply(name, state)
    i_ap, i_dp, i_dm = pos[gen("A+")], pos[gen("d+")], pos[gen("d-")]
    i_n, i_ft = pos[gen("N")], pos[gen("Ft")]
    lowering = [pos[gen(n)] for n in LOWERING]
    out = {}
    for m, c in state.terms.items():
        if any(m[i] for i in lowering):
            continue
        coeff = c * h ** m[i_n] * f ** m[i_ft]
        key = BasisKet(m[i_ap], m[i_dp], m[i_dm])
        out[key] = out[key] + coeff if key in out else coeff
    return VermaVector(out)


def level_subspace(m: int) -> list:
    """Basis kets of level m, in the order used for normalization."""
    if m < 0:
        raise ValueError("level must be non-negative")
    if m == 0:
        return [BasisKet(0, 0, 0)]
    n, odd = divmod(m, 2)
    if odd:
        return [BasisKet(n, 0, 1), BasisKet(n, 1, 0)]
    return [BasisKet(n, 0, 0), BasisKet(n - 1, 1, 1)]


def weight_blocks(m: int) -> list:
    """Level-m kets grouped by their Ft-weight offset (mu - nu), preserving order."""
    blocks = {}
    for b in level_subspace(m):
        blocks.setdefault(b.mu - b.nu, []).append(b)
    return list(blocks.values())
