"""Annihilating polynomials P(s, t) with P(a, b) = 0 for commuting pairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .centralizer import PreconditionError, left_power
from .exact import ZERO, mpq, rat, rat_str, sparse_nullspace
from .ore import OreElem, chi, commutes, nucleus_check, ore_mul

# (i, j) indexes the monomial s^j t^i
Mono = Tuple[int, int]


def _graded_key(ij: Mono):
    i, j = ij
    return (i + j, j)


@dataclass(frozen=True)
class BivarPoly:
    """Polynomial in commuting s, t over Q; ``grid[i][j]`` multiplies s^j t^i."""

    grid: Tuple[Tuple[mpq, ...], ...] = ()

    def __post_init__(self):
        rows = [list(r) for r in self.grid]
        width = max((len(r) for r in rows), default=0)
        rows = [[rat(x) for x in r] + [ZERO] * (width - len(r)) for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        while rows and rows[0] and not any(r[-1] for r in rows):
            rows = [r[:-1] for r in rows]
        object.__setattr__(self, "grid", tuple(tuple(r) for r in rows))

    @classmethod
    def from_terms(cls, terms: Mapping[Mono, object]) -> "BivarPoly":
        terms = {k: rat(v) for k, v in terms.items() if rat(v)}
        if not terms:
            return cls(())
        ti = max(i for i, _ in terms) + 1
        sj = max(j for _, j in terms) + 1
        return cls(tuple(tuple(terms.get((i, j), ZERO) for j in range(sj)) for i in range(ti)))

    def terms(self) -> Dict[Mono, mpq]:
        return {(i, j): v for i, r in enumerate(self.grid) for j, v in enumerate(r) if v}

    def __bool__(self) -> bool:
        return bool(self.grid)

    @property
    def t_degree(self) -> int:
        return len(self.grid) - 1

    @property
    def s_degree(self) -> int:
        return max((j for (_, j) in self.terms()), default=-1)

    def normalized(self) -> "BivarPoly":
        """Scale so the leading coefficient in graded-lex order (s > t) is 1."""
        terms = self.terms()
        if not terms:
            return self
        lead = terms[max(terms, key=_graded_key)]
        return BivarPoly.from_terms({k: v / lead for k, v in terms.items()})

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        out = ""
        for idx, (i, j) in enumerate(sorted(terms, key=_graded_key, reverse=True)):
            v = terms[(i, j)]
            neg = v < 0
            v = -v if neg else v
            mono = [p for p in (_pow("s", j), _pow("t", i)) if p]
            body = "*".join(([rat_str(v)] if (v != 1 or not mono) else []) + mono)
            if idx == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> dict:
        return {"terms": [{"i": i, "j": j, "c": rat_str(v)}
                          for (i, j), v in sorted(self.terms().items())]}

    @classmethod
    def from_json(cls, data) -> "BivarPoly":
        return cls.from_terms({(int(t["i"]), int(t["j"])): rat(t["c"]) for t in data["terms"]})


def _pow(var: str, n: int) -> Optional[str]:
    if n == 0:
        return None
    return var if n == 1 else f"{var}^{n}"


def _require_pair(a: OreElem, b: OreElem, nucleus_bounds):
    if not commutes(a, b):
        raise PreconditionError(f"{a} and {b} do not commute")
    if nucleus_bounds is not None and not nucleus_check(a, *nucleus_bounds):
        raise PreconditionError(f"{a} is not in the nucleus")


def evaluate(P: BivarPoly, a: OreElem, b: OreElem,
             nucleus_bounds: Optional[Tuple[int, int]] = (3, 3)) -> OreElem:
    """sum_i f_i(a) b^i, each f_i(a) multiplied onto b^i from the left."""
    _require_pair(a, b, nucleus_bounds)
    ctx = a.ctx
    out = ctx.zero
    a_pows: Dict[int, OreElem] = {}
    for i, row in enumerate(P.grid):
        if not any(row):
            continue
        f = ctx.zero
        for j, v in enumerate(row):
            if v:
                if j not in a_pows:
                    a_pows[j] = left_power(a, j)
                f = f + a_pows[j].scale(v)
        out = out + ore_mul(f, left_power(b, i))
    return out


def annihilating_polynomial(a: OreElem, b: OreElem, max_t_deg: int, max_s_deg: int,
                            nucleus_bounds: Optional[Tuple[int, int]] = (3, 3)
                            ) -> Optional[BivarPoly]:
    """Nonzero P with t-degree <= max_t_deg, s-degree <= max_s_deg and P(a, b) = 0.

    The box is solved as one linear system over the products a^j b^i.
    Columns run in increasing graded order, so the kernel vector picked has
    the smallest possible leading monomial.  None if the box holds no relation.
    """
    _require_pair(a, b, nucleus_bounds)
    if chi(a) == float("-inf") or chi(a) <= 0:
        raise PreconditionError("need chi(a) > 0")
    a_pows = [a.ctx.one]
    for _ in range(max_s_deg):
        a_pows.append(ore_mul(a, a_pows[-1]))
    b_pows = [a.ctx.one]
    for _ in range(max_t_deg):
        b_pows.append(ore_mul(b, b_pows[-1]))
    monos: List[Mono] = sorted(((i, j) for i in range(max_t_deg + 1) for j in range(max_s_deg + 1)),
                               key=_graded_key)
    row_index: Dict = {}
    rows: List[Dict[int, mpq]] = []
    for col, (i, j) in enumerate(monos):
        for key, v in ore_mul(a_pows[j], b_pows[i]).terms.items():
            r = row_index.get(key)
            if r is None:
                r = row_index[key] = len(rows)
                rows.append({})
            rows[r][col] = v
    kernel = sparse_nullspace(rows, len(monos))
    if not kernel:
        return None
    P = BivarPoly.from_terms({monos[c]: v for c, v in kernel[0].items()}).normalized()
    if evaluate(P, a, b, None):
        raise ArithmeticError(f"relation {P} does not annihilate the pair")
    return P


def find_annihilating_polynomial(a: OreElem, b: OreElem, budget: int = 32,
                                 nucleus_bounds: Optional[Tuple[int, int]] = (3, 3)
                                 ) -> Optional[BivarPoly]:
    """Search boxes starting at (t, s) degrees (chi(a), chi(b)), doubling up to ``budget``."""
    _require_pair(a, b, nucleus_bounds)
    t_deg = max(int(chi(a)), 1)
    s_deg = max(int(chi(b)) if b else 0, 1)
    while True:
        P = annihilating_polynomial(a, b, min(t_deg, budget), min(s_deg, budget), None)
        if P is not None:
            return P
        if t_deg >= budget and s_deg >= budget:
            return None
        t_deg, s_deg = t_deg * 2, s_deg * 2
