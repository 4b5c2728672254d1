"""Centralizers of nucleus elements as free K[a]-modules.

Everything reduces to exact linear algebra: the centralizer up to x-degree
n is the kernel of b -> ab - ba on a finite box of monomials, and
membership in the K[a]-span of earlier basis elements is an echelon test
on the flattened coordinates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .coeff import NEG_INF
from .exact import ZERO, EchelonBasis, mpq, rat, sparse_nullspace
from .ore import Key, OreElem, chi, commutes, ore_mul, nucleus_check


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it needs."""


class RankBoundExceeded(RuntimeError):
    """The greedy basis grew past dim(A) * chi(a)."""


def left_power(b: OreElem, k: int) -> OreElem:
    """b^0 = 1, b^k = b (b^(k-1))."""
    if k < 0:
        raise ValueError("negative power")
    out = b.ctx.one
    for _ in range(k):
        out = ore_mul(b, out)
    return out


def leading_ydeg(a: OreElem, n: int) -> Optional[int]:
    """Forced y-degree of the leading coefficient of a degree-n element of C(a).

    With m = chi(a), alpha = deg_y of a's leading coefficient and
    s = deg_y sigma(y), the degree beta solves
    alpha + s^m beta = beta + s^n alpha  (s > 1), or m beta = n alpha (s = 1).
    None when the solution is not a nonnegative integer.
    """
    m = chi(a)
    if m == NEG_INF or m <= 0:
        raise PreconditionError("leading_ydeg needs chi(a) > 0")
    if n < 0:
        raise ValueError("negative x-degree")
    alpha = int(a.lead.deg)
    s = a.ctx.sigma.s
    if s > 1:
        num, den = alpha * (s ** n - 1), s ** m - 1
    else:
        num, den = n * alpha, m
    if num % den:
        return None
    return num // den


@dataclass
class CentralizerQuery:
    """A fixed nucleus element and the finite box the solver works in.

    ``ydeg_caps`` is None (auto), one int for every x-degree, or a sequence
    indexed by x-degree.  ``nucleus_bounds`` are the monomial bounds of the
    nucleus certificate demanded at construction; None skips it.
    """

    a: OreElem
    max_xdeg: int
    ydeg_caps: Union[None, int, Sequence[int]] = None
    slack: Optional[int] = None
    nucleus_bounds: Optional[Tuple[int, int]] = (3, 3)

    def __post_init__(self):
        m = chi(self.a)
        if m == NEG_INF or m <= 0:
            raise PreconditionError("the fixed element must have chi(a) > 0")
        if self.max_xdeg < 0:
            raise ValueError("max_xdeg must be nonnegative")
        if self.nucleus_bounds is not None:
            res = nucleus_check(self.a, *self.nucleus_bounds)
            if not res:
                w = res.witness
                raise PreconditionError(
                    f"{self.a} is not in the nucleus: {w.slot} associator with "
                    f"{', '.join(str(t) for t in w.triple)} is {w.value}")

    @property
    def m(self) -> int:
        return int(chi(self.a))

    @property
    def ctx(self):
        return self.a.ctx

    def caps(self, n: int) -> List[int]:
        if self.ydeg_caps is None:
            forced = [d for d in (leading_ydeg(self.a, k) for k in range(n + 1)) if d is not None]
            slack = self.slack
            if slack is None:
                slack = max(j for (_, j, _) in self.a.terms) * n
            return [max(forced) + slack] * (n + 1)
        if isinstance(self.ydeg_caps, int):
            return [self.ydeg_caps] * (n + 1)
        caps = list(self.ydeg_caps)
        if len(caps) < n + 1:
            raise ValueError(f"ydeg_caps has no entry for x-degree {len(caps)}")
        return caps[:n + 1]


def centralizer_space(q: CentralizerQuery, n: int) -> List[OreElem]:
    """A Q-basis of {b : chi(b) <= n, y-degrees within caps, ab = ba}."""
    if n > q.max_xdeg:
        raise ValueError(f"n={n} exceeds the query's max_xdeg={q.max_xdeg}")
    ctx, a = q.ctx, q.a
    caps = q.caps(n)
    unknowns: List[Key] = [(k, j, c) for k in range(n + 1) for j in range(caps[k] + 1)
                           for c in range(ctx.spec.dim)]
    row_index: Dict[Key, int] = {}
    rows: List[Dict[int, mpq]] = []
    for col, key in enumerate(unknowns):
        mono = ctx.elem({key: 1})
        comm = ore_mul(a, mono) - ore_mul(mono, a)
        for rk, v in comm.terms.items():
            r = row_index.get(rk)
            if r is None:
                r = row_index[rk] = len(rows)
                rows.append({})
            rows[r][col] = v
    out = []
    for vec in sparse_nullspace(rows, len(unknowns)):
        b = ctx.elem({unknowns[col]: v for col, v in vec.items()})
        if not commutes(a, b):
            raise ArithmeticError(f"kernel element {b} does not commute with {a}")
        out.append(b)
    out.sort(key=chi)
    return out


@dataclass
class ModuleBasis:
    elements: List[OreElem]
    degrees: List[int]
    a: OreElem
    ell: int
    m: int

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def rank_bound(self) -> int:
        return self.ell * self.m


def _span_generators(a_powers: List[OreElem], basis: Sequence[OreElem], m: int, n: int):
    for b in basis:
        d = chi(b)
        j = 0
        while j * m + d <= n:
            yield ore_mul(a_powers[j], b)
            j += 1


def _powers(a: OreElem, count: int) -> List[OreElem]:
    out = [a.ctx.one]
    for _ in range(count):
        out.append(ore_mul(a, out[-1]))
    return out


def module_basis(q: CentralizerQuery) -> ModuleBasis:
    """Greedy K[a]-basis b_1 = 1, b_2, ... of the centralizer up to ``max_xdeg``.

    At each degree n the centralizer space is compared with the Q-span of
    all a^j b_i of degree <= n; anything outside it becomes the next b.
    """
    a, ctx = q.a, q.ctx
    m = q.m
    ell = ctx.spec.dim
    powers = _powers(a, q.max_xdeg // m + 1)
    basis: List[OreElem] = [ctx.one]
    for n in range(q.max_xdeg + 1):
        eb = EchelonBasis()
        for g in _span_generators(powers, basis, m, n):
            eb.add(g.terms)
        for c in centralizer_space(q, n):
            if eb.express(c.terms) is not None:
                continue
            basis.append(c)
            if len(basis) > ell * m:
                raise RankBoundExceeded(
                    f"{len(basis)} independent centralizer elements exceed dim(A)*chi(a) = {ell * m}")
            for g in _span_generators(powers, [c], m, n):
                eb.add(g.terms)
    return ModuleBasis(basis, [int(chi(b)) for b in basis], a, ell, m)


def phi_of_a(powers: List[OreElem], coeffs: Sequence) -> OreElem:
    """sum_j coeffs[j] a^j from precomputed powers of a."""
    out = powers[0].ctx.zero
    for j, r in enumerate(coeffs):
        r = rat(r)
        if r:
            out = out + powers[j].scale(r)
    return out


def degree_sum_sides(basis: ModuleBasis, phis: Sequence[Sequence]):
    """Both sides of chi(sum phi_i b_i) = max_i (chi(phi_i) + chi(b_i)).

    ``phis[i]`` lists the rational coefficients of phi_i as a polynomial in a.
    """
    if len(phis) != len(basis.elements):
        raise ValueError("need one polynomial per basis element")
    deg = max((len(p) for p in phis), default=1)
    powers = _powers(basis.a, max(deg - 1, 0))
    total = basis.a.ctx.zero
    rhs = NEG_INF
    for p, b in zip(phis, basis.elements):
        phi = phi_of_a(powers, p)
        total = total + ore_mul(phi, b)
        rhs = max(rhs, chi(phi) + chi(b))
    return chi(total), rhs


@dataclass(frozen=True)
class DegreeSumResult:
    ok: bool
    trials: int
    counterexample: Optional[Tuple[Tuple[Tuple[mpq, ...], ...], object, object]] = None

    def __bool__(self) -> bool:
        return self.ok


def check_degree_sum(basis: ModuleBasis, a: OreElem, trials: int, seed: int = 0,
                     max_phi_deg: int = 2) -> DegreeSumResult:
    if a != basis.a:
        raise PreconditionError("basis was built for a different element")
    rng = random.Random(seed)
    for _ in range(trials):
        phis = []
        for _ in basis.elements:
            if rng.random() < 0.25:
                phis.append(())
                continue
            d = rng.randint(0, max_phi_deg)
            cs = [mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)]
            cs.append(mpq(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
            phis.append(tuple(cs))
        lhs, rhs = degree_sum_sides(basis, phis)
        if lhs != rhs:
            return DegreeSumResult(False, trials, (tuple(phis), lhs, rhs))
    return DegreeSumResult(True, trials)


def _lead_vec(b: OreElem) -> Dict[Tuple[int, int], mpq]:
    return dict(b.lead.items())


def leading_coefficient_rank(elems: Sequence[OreElem]) -> int:
    """Rank of the matrix of flattened leading x-coefficients."""
    eb = EchelonBasis()
    return sum(1 for b in elems if eb.add(_lead_vec(b)))


@dataclass(frozen=True)
class DCertificate:
    """``verdict`` is ``dependent`` (scalars lower chi), ``independent`` (at
    most ell inputs, no relation) or ``violated`` (more than ell inputs with
    independent leading coefficients, so condition D(ell) fails)."""

    verdict: str
    scalars: Optional[Tuple[mpq, ...]] = None
    chi_before: object = None
    chi_after: object = None

    @property
    def dependent(self) -> bool:
        return self.verdict == "dependent"


def _primitive(vec: Sequence[mpq]) -> Tuple[mpq, ...]:
    den = lcm(*(int(v.denominator) for v in vec))
    ints = [int(v * den) for v in vec]
    g = gcd(*ints)
    ints = [i // g for i in ints]
    first = next(i for i in ints if i)
    if first < 0:
        ints = [-i for i in ints]
    return tuple(mpq(i) for i in ints)


def check_D_condition(elems: Sequence[OreElem], ell: int) -> DCertificate:
    """Look for rationals, not all zero, with chi(sum alpha_i b_i) < chi(b_1)."""
    if not elems:
        raise ValueError("need at least one element")
    if any(not b for b in elems):
        raise PreconditionError("elements must be nonzero")
    d = chi(elems[0])
    if any(chi(b) != d for b in elems):
        raise PreconditionError("all elements must have the same chi")
    keys = sorted({k for b in elems for k in _lead_vec(b)})
    index = {k: r for r, k in enumerate(keys)}
    rows: List[Dict[int, mpq]] = [{} for _ in keys]
    for col, b in enumerate(elems):
        for k, v in _lead_vec(b).items():
            rows[index[k]][col] = v
    kernel = sparse_nullspace(rows, len(elems))
    if kernel:
        alphas = _primitive([kernel[0].get(i, ZERO) for i in range(len(elems))])
        combo = elems[0].ctx.zero
        for al, b in zip(alphas, elems):
            combo = combo + b.scale(al)
        after = chi(combo)
        if not after < d:
            raise ArithmeticError("dependence of leading coefficients did not lower chi")
        return DCertificate("dependent", alphas, d, after)
    return DCertificate("independent" if len(elems) <= ell else "violated", None, d, d)


@dataclass(frozen=True)
class RankDividesResult:
    ok: bool
    rank: int
    residues: Tuple[int, ...]
    distinct: bool
    closed: bool
    divides: bool

    def __bool__(self) -> bool:
        return self.ok


def check_rank_divides(basis: ModuleBasis, m: int) -> RankDividesResult:
    """Rank divides m, and the degree residues form a subgroup of Z_m."""
    if basis.a.ctx.spec.dim != 1:
        raise PreconditionError("rank divisibility is only asserted over a 1-dimensional algebra")
    if m <= 0:
        raise ValueError("m must be positive")
    res = [d % m for d in basis.degrees]
    distinct = len(set(res)) == len(res)
    g = set(res)
    closed = all((u + v) % m in g for u in g for v in g)
    divides = m % len(basis.elements) == 0
    return RankDividesResult(distinct and closed and divides, len(basis.elements),
                             tuple(res), distinct, closed, divides)
