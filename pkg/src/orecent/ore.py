"""Elements of the (possibly non-associative) Ore extension S = R[x; sigma, delta].

Elements are stored sparsely as ``{(k, j, c): q}`` meaning
``q * e_c * y^j * x^k``.  Multiplication is the bilinear extension of the
monomial rule

    (a x^m)(b x^n) = sum_i (a * pi^m_i(b)) x^(i+n),

where pi^m_i(b) is the sum of all words with i copies of sigma and m-i
copies of delta applied to b.  Monomial products are cached per context.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraSpec, AlgElem, format_alg_elem
from .coeff import (NEG_INF, CoeffPoly, ContextError, DeltaSpec, SigmaSpec,
                    apply_delta, apply_sigma, verify_sigma_derivation)
from .exact import ONE, ZERO, mpq, rat, rat_str

Key = Tuple[int, int, int]  # (x-degree, y-degree, basis index)


class OreContext:
    """R = A[y] together with sigma and delta; defines S = R[x; sigma, delta]."""

    def __init__(self, spec: AlgebraSpec, sigma: Optional[SigmaSpec] = None,
                 delta: Optional[DeltaSpec] = None, name: str = "custom",
                 verify_samples: int = 6):
        self.spec = spec
        self.sigma = sigma or SigmaSpec.identity()
        self.delta = delta or DeltaSpec.zero()
        self.name = name
        for p in (self.sigma.subst_poly, self.delta.delta_of_y):
            if p is not None and p.spec != spec:
                raise ContextError("sigma/delta data over a different algebra")
        if self.delta.mode == "d_dy" and not self.sigma.is_identity:
            raise ContextError("d/dy requires sigma = identity")
        if not verify_sigma_derivation(self.delta, self.sigma, verify_samples, spec):
            raise ContextError("delta is not a sigma-derivation for this sigma")
        self._pi_cache: Dict[Tuple[int, int, int, int], CoeffPoly] = {}
        self._pi_items_cache: Dict[Tuple[int, int, int, int], tuple] = {}
        self._mono_cache: Dict[Tuple[Key, Key], Tuple[Tuple[Key, mpq], ...]] = {}
        self._nucleus_cache: Dict[Tuple[Key, int, int], Optional["NucleusWitness"]] = {}

    def __repr__(self) -> str:
        return f"OreContext({self.name!r}, dim={self.spec.dim}, sigma={self.sigma.mode}, delta={self.delta.mode})"

    # -- constructors --------------------------------------------------------

    def elem(self, terms: Mapping[Key, object]) -> "OreElem":
        return OreElem(self, {k: rat(v) for k, v in terms.items() if v})

    @property
    def zero(self) -> "OreElem":
        return OreElem(self, {})

    @property
    def one(self) -> "OreElem":
        return OreElem(self, {(0, 0, self.spec.unit): ONE})

    @property
    def x(self) -> "OreElem":
        return OreElem(self, {(1, 0, self.spec.unit): ONE})

    @property
    def y(self) -> "OreElem":
        return OreElem(self, {(0, 1, self.spec.unit): ONE})

    def scalar(self, q) -> "OreElem":
        return self.elem({(0, 0, self.spec.unit): q})

    def const(self, c: AlgElem) -> "OreElem":
        return self.elem({(0, 0, i): v for i, v in enumerate(c.coords)})

    def monomial(self, c: int, j: int, k: int, q=1) -> "OreElem":
        """q * e_c * y^j * x^k."""
        return self.elem({(k, j, c): q})

    def from_coeffs(self, coeffs: Sequence[CoeffPoly]) -> "OreElem":
        terms = {}
        for k, p in enumerate(coeffs):
            for (j, c), v in p.items():
                terms[(k, j, c)] = v
        return OreElem(self, terms)

    def monomials(self, xdeg_bound: int, ydeg_bound: int) -> List["OreElem"]:
        return [self.monomial(c, j, k) for k in range(xdeg_bound + 1)
                for j in range(ydeg_bound + 1) for c in range(self.spec.dim)]

    # -- product machinery ----------------------------------------------------

    def pi_monomial(self, m: int, i: int, c: int, j: int) -> CoeffPoly:
        """pi^m_i(e_c y^j), via pi^m_i = sigma o pi^(m-1)_(i-1) + delta o pi^(m-1)_i."""
        key = (m, i, c, j)
        hit = self._pi_cache.get(key)
        if hit is not None:
            return hit
        if i < 0 or i > m:
            out = CoeffPoly.zero(self.spec)
        elif m == 0:
            out = CoeffPoly.monomial(self.spec.basis(c), j)
        else:
            out = CoeffPoly.zero(self.spec)
            if i >= 1:
                out = out + apply_sigma(self.sigma, self.pi_monomial(m - 1, i - 1, c, j))
            if i <= m - 1:
                out = out + apply_delta(self.delta, self.sigma, self.pi_monomial(m - 1, i, c, j))
        self._pi_cache[key] = out
        return out

    def _pi_items(self, m: int, i: int, c: int, j: int) -> Tuple[Tuple[Tuple[int, int], mpq], ...]:
        key = (m, i, c, j)
        hit = self._pi_items_cache.get(key)
        if hit is None:
            hit = self._pi_items_cache[key] = tuple(self.pi_monomial(m, i, c, j).items())
        return hit

    def mono_product(self, left: Key, right: Key) -> Tuple[Tuple[Key, mpq], ...]:
        """(e_c1 y^j1 x^k1)(e_c2 y^j2 x^k2) as sparse terms."""
        key = (left, right)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        k1, j1, c1 = left
        k2, j2, c2 = right
        # e_c1 y^j1 * p: shift by j1 and left-multiply by e_c1 through the table
        row = self.spec._table[c1]
        acc: Dict[Key, mpq] = {}
        for i in range(k1 + 1):
            for (j, c), v in self._pi_items(k1, i, c2, j2):
                for c3, s in row[c]:
                    kk = (i + k2, j + j1, c3)
                    acc[kk] = acc.get(kk, ZERO) + v * s
        out = tuple((kk, v) for kk, v in acc.items() if v)
        self._mono_cache[key] = out
        return out


class OreElem:
    """Immutable element of an Ore extension."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: OreContext, terms: Dict[Key, mpq]):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    def _same(self, other: "OreElem"):
        if not isinstance(other, OreElem):
            raise TypeError(f"expected an OreElem, got {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise ContextError("elements belong to different Ore contexts")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreElem):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "OreElem") -> "OreElem":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, ZERO) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return OreElem(self.ctx, out)

    def __neg__(self) -> "OreElem":
        return OreElem(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "OreElem") -> "OreElem":
        return self + (-other)

    def scale(self, q) -> "OreElem":
        q = rat(q)
        if not q:
            return self.ctx.zero
        return OreElem(self.ctx, {k: q * v for k, v in self.terms.items()})

    def __mul__(self, other: "OreElem") -> "OreElem":
        return ore_mul(self, other)

    @property
    def chi(self):
        return chi(self)

    def coeff(self, k: int) -> CoeffPoly:
        """Coefficient of x^k as a polynomial in y."""
        spec = self.ctx.spec
        rows: Dict[int, List[mpq]] = {}
        for (kk, j, c), v in self.terms.items():
            if kk == k:
                rows.setdefault(j, [ZERO] * spec.dim)[c] = v
        if not rows:
            return CoeffPoly.zero(spec)
        top = max(rows)
        zero = (ZERO,) * spec.dim
        return CoeffPoly(spec, tuple(spec.element(rows.get(j, zero)) for j in range(top + 1)))

    @property
    def coeffs(self) -> Tuple[CoeffPoly, ...]:
        if not self.terms:
            return ()
        return tuple(self.coeff(k) for k in range(int(chi(self)) + 1))

    @property
    def lead(self) -> CoeffPoly:
        """Leading x-coefficient (zero polynomial for the zero element)."""
        if not self.terms:
            return CoeffPoly.zero(self.ctx.spec)
        return self.coeff(int(chi(self)))

    def has_scalar_coeffs(self) -> bool:
        """All coefficients are rational multiples of the unit (real-coefficient element)."""
        u = self.ctx.spec.unit
        return all(c == u for (_, _, c) in self.terms)

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"OreElem({format_elem(self)!r})"

    def to_json(self) -> dict:
        groups = _group(self)
        return {"terms": [{"x": k, "y": j, "coef": [rat_str(v) for v in c.coords]}
                          for (k, j), c in groups]}


def elem_from_json(ctx: OreContext, data: Mapping) -> OreElem:
    terms = {}
    for t in data["terms"]:
        coef = t["coef"]
        if len(coef) != ctx.spec.dim:
            raise ContextError("coefficient length does not match the algebra")
        for c, v in enumerate(coef):
            q = rat(v)
            if q:
                terms[(int(t["x"]), int(t["y"]), c)] = terms.get((int(t["x"]), int(t["y"]), c), ZERO) + q
    return ctx.elem(terms)


def ore_mul(u: OreElem, v: OreElem) -> OreElem:
    u._same(v)
    mono = u.ctx.mono_product
    out: Dict[Key, mpq] = {}
    get = out.get
    for k1, q1 in u.terms.items():
        for k2, q2 in v.terms.items():
            q = q1 * q2
            for kk, r in mono(k1, k2):
                out[kk] = get(kk, ZERO) + q * r
    return OreElem(u.ctx, {k: v for k, v in out.items() if v})


def chi(u: OreElem):
    """Degree in x; -inf for zero."""
    if not u.terms:
        return NEG_INF
    return max(k for (k, _, _) in u.terms)


def commutes(u: OreElem, v: OreElem) -> bool:
    return ore_mul(u, v) == ore_mul(v, u)


def commutator_ore(u: OreElem, v: OreElem) -> OreElem:
    return ore_mul(u, v) - ore_mul(v, u)


def associator_ore(u: OreElem, v: OreElem, w: OreElem) -> OreElem:
    """(uv)w - u(vw)."""
    return ore_mul(ore_mul(u, v), w) - ore_mul(u, ore_mul(v, w))


def pi_map(ctx: OreContext, m: int, i: int, r: CoeffPoly) -> CoeffPoly:
    """Coefficient map with x^m r = sum_i pi^m_i(r) x^i."""
    if not 0 <= i <= m:
        raise IndexError(f"pi^{m}_{i} is undefined: need 0 <= i <= m")
    out = CoeffPoly.zero(ctx.spec)
    for (j, c), v in r.items():
        out = out + ctx.pi_monomial(m, i, c, j).scale(v)
    return out


def pi_map_words(ctx: OreContext, m: int, i: int, r: CoeffPoly) -> CoeffPoly:
    """Same as :func:`pi_map`, by summing over every word in sigma and delta."""
    if not 0 <= i <= m:
        raise IndexError(f"pi^{m}_{i} is undefined: need 0 <= i <= m")
    out = CoeffPoly.zero(ctx.spec)
    for positions in itertools.combinations(range(m), i):
        p = r
        for step in range(m):
            if step in positions:
                p = apply_sigma(ctx.sigma, p)
            else:
                p = apply_delta(ctx.delta, ctx.sigma, p)
        out = out + p
    return out


# -- nucleus ----------------------------------------------------------------

SLOTS = ("left", "middle", "right")


@dataclass(frozen=True)
class NucleusWitness:
    slot: str
    triple: Tuple[OreElem, OreElem, OreElem]
    value: OreElem


@dataclass(frozen=True)
class NucleusResult:
    ok: bool
    witness: Optional[NucleusWitness] = None
    xdeg_bound: int = 0
    ydeg_bound: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _scan(u: OreElem, mons: List[OreElem]) -> Optional[NucleusWitness]:
    # u against every (v, w) in all three slots; stops at the first nonzero associator
    uw = [ore_mul(u, w) for w in mons]
    wu = [ore_mul(w, u) for w in mons]
    for v in mons:
        uv = ore_mul(u, v)
        vu = ore_mul(v, u)
        for iw, w in enumerate(mons):
            vw = ore_mul(v, w)
            val = ore_mul(uv, w) - ore_mul(u, vw)
            if val:
                return NucleusWitness("left", (u, v, w), val)
            val = ore_mul(vu, w) - ore_mul(v, uw[iw])
            if val:
                return NucleusWitness("middle", (v, u, w), val)
            val = ore_mul(vw, u) - ore_mul(v, wu[iw])
            if val:
                return NucleusWitness("right", (v, w, u), val)
    return None


def nucleus_check(u: OreElem, xdeg_bound: int = 3, ydeg_bound: int = 3) -> NucleusResult:
    """Bounded certificate that ``u`` lies in the nucleus.

    True iff (u,v,w), (v,u,w) and (v,w,u) vanish for all v, w among the
    monomials e_c y^j x^k with j <= ydeg_bound, k <= xdeg_bound.  The
    associator is Q-trilinear, so u is first split into its monomial terms
    (each checked once per context and cached); only if some term fails is
    u scanned directly, which yields the witness.
    """
    ctx = u.ctx
    mons = ctx.monomials(xdeg_bound, ydeg_bound)
    failed = False
    for key in sorted(u.terms):
        ck = (key, xdeg_bound, ydeg_bound)
        if ck not in ctx._nucleus_cache:
            ctx._nucleus_cache[ck] = _scan(ctx.elem({key: 1}), mons)
        if ctx._nucleus_cache[ck] is not None:
            failed = True
            break
    if not failed:
        return NucleusResult(True, None, xdeg_bound, ydeg_bound)
    witness = _scan(u, mons)
    return NucleusResult(witness is None, witness, xdeg_bound, ydeg_bound)


# -- text form --------------------------------------------------------------

def _group(u: OreElem) -> List[Tuple[Tuple[int, int], AlgElem]]:
    spec = u.ctx.spec
    rows: Dict[Tuple[int, int], List[mpq]] = {}
    for (k, j, c), v in u.terms.items():
        rows.setdefault((k, j), [ZERO] * spec.dim)[c] = v
    return [(kj, spec.element(rows[kj])) for kj in sorted(rows, reverse=True)]


def _power(var: str, n: int) -> Optional[str]:
    if n == 0:
        return None
    return var if n == 1 else f"{var}^{n}"


def format_terms(groups: Mapping[Tuple[int, int], AlgElem]) -> str:
    """Canonical text for ``{(k, j): coefficient}``: terms by decreasing k, then j."""
    parts: List[Tuple[str, str]] = []
    for (k, j) in sorted(groups, reverse=True):
        c = groups[(k, j)]
        mono = [p for p in (_power("y", j), _power("x", k)) if p]
        sign = "+"
        if c.is_scalar():
            q = c.scalar_part()
            if q < 0:
                sign, q = "-", -q
            coef = None if (q == 1 and mono) else rat_str(q)
        else:
            coef = format_alg_elem(c)
        factors = ([coef] if coef else []) + mono
        parts.append((sign, "*".join(factors)))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_elem(u: OreElem) -> str:
    return format_terms(dict(_group(u)))
