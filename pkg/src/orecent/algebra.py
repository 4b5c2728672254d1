"""Finite-dimensional unital algebras over Q given by structure constants.

The built-in tower (rationals, complexes, quaternions, octonions) is made
by repeated Cayley-Dickson doubling with the product

    (a, b)(c, d) = (ac - d*b, da + bc*)

so the octonion multiplication table is fixed by this convention.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, mpq, rat, rat_str


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Structure constants ``constants[i][j][k]``: e_i * e_j = sum_k c_ijk e_k."""

    dim: int
    names: Tuple[str, ...]
    constants: Tuple[Tuple[Tuple[mpq, ...], ...], ...]
    unit: int = 0
    conjugation: Optional[Tuple[mpq, ...]] = None  # diagonal, known for the doubling chain
    _table: Tuple = field(init=False, repr=False)

    def __post_init__(self):
        d = self.dim
        if d < 1:
            raise AlgebraError("algebra dimension must be positive")
        if len(self.names) != d or len(set(self.names)) != d:
            raise AlgebraError("need one distinct name per basis element")
        if not 0 <= self.unit < d:
            raise AlgebraError("unit index out of range")
        c = self.constants
        if len(c) != d or any(len(r) != d or any(len(v) != d for v in r) for r in c):
            raise AlgebraError("structure constants must have shape dim x dim x dim")
        table = tuple(
            tuple(tuple((k, x) for k, x in enumerate(c[i][j]) if x) for j in range(d))
            for i in range(d))
        object.__setattr__(self, "_table", table)
        u = self.unit
        for j in range(d):
            expect = ((j, ONE),)
            if table[u][j] != expect or table[j][u] != expect:
                raise AlgebraError(f"basis element {self.names[u]} is not a two-sided unit")

    # identity by value so specs rebuilt from JSON compare equal
    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.dim, self.names, self.unit, self.constants) == (
            other.dim, other.names, other.unit, other.constants)

    def __hash__(self):
        return hash((self.dim, self.names, self.unit, self.constants))

    @property
    def one(self) -> "AlgElem":
        return self.basis(self.unit)

    @property
    def zero(self) -> "AlgElem":
        return AlgElem(self, (ZERO,) * self.dim)

    def basis(self, i: int) -> "AlgElem":
        return AlgElem(self, tuple(ONE if k == i else ZERO for k in range(self.dim)))

    def scalar(self, q) -> "AlgElem":
        return AlgElem(self, tuple(rat(q) if k == self.unit else ZERO for k in range(self.dim)))

    def element(self, coords: Sequence) -> "AlgElem":
        return AlgElem(self, tuple(rat(x) for x in coords))

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis name {name!r}") from None

    def is_associative(self) -> bool:
        return _is_associative(self)

    def is_commutative(self) -> bool:
        return all(self._table[i][j] == self._table[j][i]
                   for i in range(self.dim) for j in range(i))

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "names": list(self.names),
            "unit": self.unit,
            "constants": [[[rat_str(x) for x in v] for v in r] for r in self.constants],
        }
        if self.conjugation is not None:
            out["conjugation"] = [rat_str(x) for x in self.conjugation]
        return out

    @classmethod
    def from_json(cls, data) -> "AlgebraSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            consts = tuple(tuple(tuple(rat(x) for x in v) for v in r) for r in data["constants"])
            conj = data.get("conjugation")
            return cls(
                dim=int(data["dim"]),
                names=tuple(data["names"]),
                constants=consts,
                unit=int(data.get("unit", 0)),
                conjugation=None if conj is None else tuple(rat(x) for x in conj),
            )
        except KeyError as exc:
            raise AlgebraError(f"algebra JSON missing key {exc}") from None


@lru_cache(maxsize=None)
def _is_associative(spec: AlgebraSpec) -> bool:
    d = spec.dim
    basis = [spec.basis(i) for i in range(d)]
    return all(not associator(a, b, c) for a in basis for b in basis for c in basis)


@dataclass(frozen=True)
class AlgElem:
    spec: AlgebraSpec
    coords: Tuple[mpq, ...]

    def __post_init__(self):
        if len(self.coords) != self.spec.dim:
            raise AlgebraError(
                f"element has {len(self.coords)} coordinates, algebra has dim {self.spec.dim}")

    def __bool__(self) -> bool:
        return any(self.coords)

    def _check(self, other: "AlgElem"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.spec, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.spec, tuple(-a for a in self.coords))

    def scale(self, q) -> "AlgElem":
        q = rat(q)
        return AlgElem(self.spec, tuple(q * a for a in self.coords))

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        return mul(self, other)

    def is_scalar(self) -> bool:
        """True when the element is a rational multiple of the unit."""
        u = self.spec.unit
        return not any(x for k, x in enumerate(self.coords) if k != u)

    def scalar_part(self) -> mpq:
        return self.coords[self.spec.unit]

    def norm(self) -> mpq:
        return sum((x * x for x in self.coords), ZERO)

    def conj(self) -> "AlgElem":
        c = self.spec.conjugation
        if c is None:
            raise AlgebraError("conjugation is unknown for this algebra")
        return AlgElem(self.spec, tuple(s * x for s, x in zip(c, self.coords)))

    def __str__(self) -> str:
        return format_alg_elem(self)


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    """Bilinear extension of the structure constants."""
    a._check(b)
    spec = a.spec
    table = spec._table
    out = [ZERO] * spec.dim
    bnz = [(j, y) for j, y in enumerate(b.coords) if y]
    for i, x in enumerate(a.coords):
        if not x:
            continue
        row = table[i]
        for j, y in bnz:
            xy = x * y
            for k, c in row[j]:
                out[k] += xy * c
    return AlgElem(spec, tuple(out))


def associator(a: AlgElem, b: AlgElem, c: AlgElem) -> AlgElem:
    """(ab)c - a(bc)."""
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    """ab - ba."""
    return mul(a, b) - mul(b, a)


def format_alg_elem(a: AlgElem) -> str:
    """Short text: a rational for unit multiples, a basis name, or bracketed coordinates."""
    spec = a.spec
    if a.is_scalar():
        return rat_str(a.scalar_part())
    nz = [(k, x) for k, x in enumerate(a.coords) if x]
    if len(nz) == 1 and nz[0][1] == 1:
        return spec.names[nz[0][0]]
    return "[" + ", ".join(rat_str(x) for x in a.coords) + "]"


# -- the Cayley-Dickson tower ----------------------------------------------

def rationals() -> AlgebraSpec:
    return _rationals()


@lru_cache(maxsize=None)
def _rationals() -> AlgebraSpec:
    return AlgebraSpec(dim=1, names=("e0",), constants=(((ONE,),),), unit=0,
                       conjugation=(ONE,))


def cayley_dickson_double(spec: AlgebraSpec) -> AlgebraSpec:
    """Algebra of pairs over ``spec`` with (a,b)(c,d) = (ac - d*b, da + bc*).

    Only specs that carry a conjugation (the doubling chain) are accepted.
    """
    if spec.conjugation is None:
        raise AlgebraError("cayley_dickson_double needs an algebra with known conjugation")
    if spec.unit != 0:
        raise AlgebraError("doubling chain expects the unit at index 0")
    d = spec.dim
    base = [spec.basis(i) for i in range(d)]
    zero = spec.zero

    def split(i):
        return (base[i], zero) if i < d else (zero, base[i - d])

    consts = []
    for i in range(2 * d):
        a, b = split(i)
        row = []
        for j in range(2 * d):
            c, dd = split(j)
            first = mul(a, c) - mul(dd.conj(), b)
            second = mul(dd, a) + mul(b, c.conj())
            row.append(first.coords + second.coords)
        consts.append(tuple(row))
    conj = spec.conjugation + tuple(-ONE for _ in range(d))
    return AlgebraSpec(dim=2 * d, names=tuple(f"e{k}" for k in range(2 * d)),
                       constants=tuple(consts), unit=0, conjugation=conj)


@lru_cache(maxsize=None)
def complexes() -> AlgebraSpec:
    return cayley_dickson_double(rationals())


@lru_cache(maxsize=None)
def quaternions() -> AlgebraSpec:
    return cayley_dickson_double(complexes())


@lru_cache(maxsize=None)
def octonions() -> AlgebraSpec:
    return cayley_dickson_double(quaternions())


BUILTIN_ALGEBRAS = {
    "rationals": rationals,
    "complexes": complexes,
    "quaternions": quaternions,
    "octonions": octonions,
}


def builtin(name: str) -> AlgebraSpec:
    try:
        return BUILTIN_ALGEBRAS[name]()
    except KeyError:
        raise AlgebraError(
            f"unknown algebra {name!r}; choose from {sorted(BUILTIN_ALGEBRAS)}") from None


def nonassociative_basis_triples(spec: AlgebraSpec) -> List[Tuple[int, int, int]]:
    d = spec.dim
    b = [spec.basis(i) for i in range(d)]
    return [(i, j, k) for i in range(d) for j in range(d) for k in range(d)
            if associator(b[i], b[j], b[k])]
