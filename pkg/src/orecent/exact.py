"""Exact rational scalars and dense/sparse linear algebra over Q.

Scalars are :class:`gmpy2.mpq` values.  Matrices passed across module
boundaries are :class:`RatMatrix` (dense, row-major); the solvers in the
rest of the package feed sparse rows straight into the same elimination
routine through :func:`sparse_nullspace` and :class:`EchelonBasis`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

Rat = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)

SparseVec = Dict[Hashable, "mpq"]


def rat(value) -> mpq:
    """Coerce ints, ``"p/q"`` strings, Fractions and mpq values to a Rat."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return mpq(text)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rat_str(q: mpq) -> str:
    """Canonical ``p/q`` text (``p`` alone when the denominator is 1)."""
    q = rat(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: Tuple[mpq, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(rat(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij: Tuple[int, int]) -> mpq:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[mpq, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[mpq]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, v: Sequence) -> Tuple[mpq, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [rat(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), ZERO)
                     for i in range(self.rows))

    def sparse_rows(self) -> List[Dict[int, mpq]]:
        return [{j: x for j, x in enumerate(self.row(i)) if x} for i in range(self.rows)]


# -- elimination core -------------------------------------------------------

def _integer_row(row: Dict[int, mpq]) -> Dict[int, int]:
    den = math.lcm(*(int(x.denominator) for x in row.values())) if row else 1
    out = {c: int(x.numerator) * (den // int(x.denominator)) for c, x in row.items()}
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = math.gcd(*row.values()) if row else 1
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _combine(row: Dict[int, int], p: int, prow: Dict[int, int], f: int) -> Dict[int, int]:
    # p*row - f*prow, kept primitive
    out = {c: p * v for c, v in row.items()}
    for c, v in prow.items():
        nv = out.get(c, 0) - f * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


def _gauss_jordan(rows: Iterable[Dict[int, mpq]]) -> List[Tuple[int, Dict[int, mpq]]]:
    """Fraction-free Gauss-Jordan elimination on sparse rows.

    The pivot for each column is the first remaining row (in input order)
    with a nonzero entry there; columns are visited left to right.  Returns
    ``(pivot_col, row)`` pairs sorted by pivot column, each row scaled so the
    pivot entry is 1.
    """
    remaining = [_integer_row(r) for r in rows]
    remaining = [r for r in remaining if r]
    columns = sorted({c for r in remaining for c in r})
    pivots: List[Tuple[int, Dict[int, int]]] = []
    for col in columns:
        idx = next((i for i, r in enumerate(remaining) if col in r), None)
        if idx is None:
            continue
        prow = remaining.pop(idx)
        p = prow[col]
        for i, r in enumerate(remaining):
            f = r.get(col)
            if f:
                remaining[i] = _combine(r, p, prow, f)
        for i, (pc, r) in enumerate(pivots):
            f = r.get(col)
            if f:
                pivots[i] = (pc, _combine(r, p, prow, f))
        pivots.append((col, prow))
        remaining = [r for r in remaining if r]
    out = []
    for pc, r in pivots:
        lead = r[pc]
        out.append((pc, {c: mpq(v, lead) for c, v in r.items()}))
    return out


def rref(m: RatMatrix) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form of ``m`` and its pivot columns (increasing)."""
    pivots = _gauss_jordan(m.sparse_rows())
    entries: List[mpq] = []
    for _, r in pivots:
        entries.extend(r.get(j, ZERO) for j in range(m.cols))
    entries.extend([ZERO] * ((m.rows - len(pivots)) * m.cols))
    return RatMatrix(m.rows, m.cols, tuple(entries)), [pc for pc, _ in pivots]


def rank(m: RatMatrix) -> int:
    return len(_gauss_jordan(m.sparse_rows()))


def sparse_nullspace(rows: Iterable[Dict[int, mpq]], ncols: int) -> List[Dict[int, mpq]]:
    """Kernel basis of a sparse system, one vector per free column (ascending)."""
    pivots = _gauss_jordan(rows)
    pivot_cols = {pc for pc, _ in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = {f: ONE}
        for pc, r in pivots:
            x = r.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def nullspace_basis(m: RatMatrix) -> List[Tuple[mpq, ...]]:
    """Basis of ``{v : m v = 0}``; every vector is checked by multiplication."""
    basis = []
    for sv in sparse_nullspace(m.sparse_rows(), m.cols):
        v = tuple(sv.get(j, ZERO) for j in range(m.cols))
        if any(m.matvec(v)):
            raise ArithmeticError("nullspace vector failed verification")
        basis.append(v)
    return basis


# -- span membership --------------------------------------------------------

@dataclass(frozen=True)
class SpanResult:
    member: bool
    coeffs: Optional[Tuple[mpq, ...]] = None

    def __bool__(self) -> bool:
        return self.member


class EchelonBasis:
    """Incrementally maintained semi-echelon basis of a space of sparse vectors.

    Keys of the vectors may be any sortable hashables.  Each stored row
    remembers how it was built from the inserted vectors, so membership
    queries can return combination coefficients.
    """

    def __init__(self) -> None:
        self._rows: Dict[Hashable, Tuple[Dict, Dict[int, mpq]]] = {}
        self._order: List[Hashable] = []
        self.count = 0

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: SparseVec) -> Tuple[Dict, Dict[int, mpq]]:
        v = {k: rat(x) for k, x in vec.items() if x}
        combo: Dict[int, mpq] = {}
        for lead in self._order:
            x = v.get(lead)
            if not x:
                continue
            row, rcombo = self._rows[lead]
            for k, y in row.items():
                nv = v.get(k, ZERO) - x * y
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for i, y in rcombo.items():
                nv = combo.get(i, ZERO) - x * y
                if nv:
                    combo[i] = nv
                else:
                    combo.pop(i, None)
        return v, combo

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return False (and store nothing) if it was dependent."""
        idx = self.count
        self.count += 1
        v, combo = self._reduce(vec)
        if not v:
            return False
        # v = vec + sum combo_i input_i
        combo[idx] = combo.get(idx, ZERO) + ONE
        lead = min(v)
        x = v[lead]
        row = {k: y / x for k, y in v.items()}
        combo = {i: y / x for i, y in combo.items()}
        self._rows[lead] = (row, combo)
        self._order.append(lead)
        self._order.sort()
        return True

    def express(self, vec: SparseVec) -> Optional[Dict[int, mpq]]:
        """Coefficients (by insertion index) writing ``vec`` in the span, or None."""
        v, combo = self._reduce(vec)
        if v:
            return None
        return {i: -y for i, y in combo.items() if y}


def in_span(v: Sequence, basis: Sequence[Sequence]) -> SpanResult:
    """Whether ``v`` is a rational combination of ``basis``; coefficients if so."""
    n = len(v)
    for b in basis:
        if len(b) != n:
            raise ValueError("vectors of different lengths")
    eb = EchelonBasis()
    for b in basis:
        eb.add({j: rat(x) for j, x in enumerate(b) if x})
    combo = eb.express({j: rat(x) for j, x in enumerate(v) if x})
    if combo is None:
        return SpanResult(False)
    coeffs = tuple(combo.get(i, ZERO) for i in range(len(basis)))
    check = [sum((c * rat(b[j]) for c, b in zip(coeffs, basis)), ZERO) for j in range(n)]
    if check != [rat(x) for x in v]:
        raise ArithmeticError("span certificate failed verification")
    return SpanResult(True, coeffs)
