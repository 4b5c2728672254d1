"""The coefficient ring R = A[y] (y central) and the maps sigma, delta on it."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

from .algebra import AlgebraSpec, AlgElem, mul
from .exact import mpq

NEG_INF = float("-inf")


class ContextError(ValueError):
    """Raised for invalid sigma/delta combinations."""


@dataclass(frozen=True)
class CoeffPoly:
    """Dense polynomial in y with algebra coefficients; trailing zeros trimmed."""

    spec: AlgebraSpec
    coeffs: Tuple[AlgElem, ...] = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        for c in cs:
            if c.spec is not self.spec and c.spec != self.spec:
                raise ContextError("coefficient from a different algebra")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "CoeffPoly":
        return cls(spec, ())

    @classmethod
    def constant(cls, c: AlgElem) -> "CoeffPoly":
        return cls(c.spec, (c,))

    @classmethod
    def monomial(cls, c: AlgElem, j: int) -> "CoeffPoly":
        return cls(c.spec, (c.spec.zero,) * j + (c,))

    @classmethod
    def scalar_poly(cls, spec: AlgebraSpec, values: Sequence) -> "CoeffPoly":
        """Polynomial whose y^j coefficient is values[j] times the unit."""
        return cls(spec, tuple(spec.scalar(v) for v in values))

    @classmethod
    def y(cls, spec: AlgebraSpec) -> "CoeffPoly":
        return cls.monomial(spec.one, 1)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def deg(self):
        """y-degree; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> AlgElem:
        return self.coeffs[-1] if self.coeffs else self.spec.zero

    def coeff(self, j: int) -> AlgElem:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.spec.zero

    def is_scalar_poly(self) -> bool:
        """All coefficients are rational multiples of the unit (so the poly is central)."""
        return all(c.is_scalar() for c in self.coeffs)

    def items(self) -> Iterable[Tuple[Tuple[int, int], mpq]]:
        """Nonzero ``((j, basis_index), value)`` pairs."""
        for j, c in enumerate(self.coeffs):
            for k, x in enumerate(c.coords):
                if x:
                    yield (j, k), x

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return CoeffPoly(self.spec, tuple(self.coeff(j) + other.coeff(j) for j in range(n)))

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return CoeffPoly(self.spec, tuple(self.coeff(j) - other.coeff(j) for j in range(n)))

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly(self.spec, tuple(-c for c in self.coeffs))

    def scale(self, q) -> "CoeffPoly":
        return CoeffPoly(self.spec, tuple(c.scale(q) for c in self.coeffs))

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        return poly_mul(self, other)

    def __str__(self) -> str:
        from .ore import format_terms
        return format_terms({(0, j): c for j, c in enumerate(self.coeffs) if c})


def poly_mul(p: CoeffPoly, q: CoeffPoly) -> CoeffPoly:
    """Convolution product; y commutes with everything."""
    if p.spec is not q.spec and p.spec != q.spec:
        raise ContextError("polynomials over different algebras")
    if not p or not q:
        return CoeffPoly.zero(p.spec)
    spec = p.spec
    out = [spec.zero] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        for j, b in enumerate(q.coeffs):
            if b:
                out[i + j] = out[i + j] + mul(a, b)
    return CoeffPoly(spec, tuple(out))


def poly_pow(p: CoeffPoly, n: int) -> CoeffPoly:
    out = CoeffPoly.constant(p.spec.one)
    for _ in range(n):
        out = poly_mul(p, out)
    return out


def left_scalar(c: AlgElem, p: CoeffPoly) -> CoeffPoly:
    return poly_mul(CoeffPoly.constant(c), p)


# -- sigma ------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaSpec:
    """Endomorphism of A[y] fixing A pointwise.

    ``mode`` is ``"identity"`` or ``"substitution"``; in the latter
    ``subst_poly`` is the image of y and must have central (unit-multiple)
    coefficients and y-degree at least 1.
    """

    mode: str = "identity"
    subst_poly: Optional[CoeffPoly] = None

    def __post_init__(self):
        if self.mode == "identity":
            if self.subst_poly is not None:
                raise ContextError("identity sigma takes no substitution polynomial")
        elif self.mode == "substitution":
            p = self.subst_poly
            if p is None:
                raise ContextError("substitution sigma needs the image of y")
            if not p.is_scalar_poly():
                raise ContextError("sigma(y) must have rational (central) coefficients")
            if p.deg < 1:
                raise ContextError("sigma(y) must have y-degree at least 1")
        else:
            raise ContextError(f"unknown sigma mode {self.mode!r}")

    @classmethod
    def identity(cls) -> "SigmaSpec":
        return cls("identity")

    @classmethod
    def substitution(cls, poly: CoeffPoly) -> "SigmaSpec":
        return cls("substitution", poly)

    @property
    def s(self) -> int:
        """deg_y sigma(y)."""
        return 1 if self.mode == "identity" else int(self.subst_poly.deg)

    @property
    def is_identity(self) -> bool:
        if self.mode == "identity":
            return True
        p = self.subst_poly
        return p.deg == 1 and not p.coeff(0) and p.coeff(1) == p.spec.one


@lru_cache(maxsize=None)
def _subst_power(sig: SigmaSpec, i: int) -> CoeffPoly:
    if i == 0:
        return CoeffPoly.constant(sig.subst_poly.spec.one)
    return poly_mul(sig.subst_poly, _subst_power(sig, i - 1))


def apply_sigma(sig: SigmaSpec, p: CoeffPoly) -> CoeffPoly:
    """sigma(sum p_i y^i) = sum p_i sigma(y)^i."""
    if sig.mode == "identity" or not p:
        return p
    out = CoeffPoly.zero(p.spec)
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + left_scalar(c, _subst_power(sig, i))
    return out


# -- delta ------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaSpec:
    """sigma-derivation of A[y] vanishing on A.

    ``mode``: ``"zero"``, ``"d_dy"`` (formal derivative; needs identity sigma)
    or ``"sigma_twisted"`` (determined by ``delta_of_y`` through the twisted
    Leibniz rule).  ``overrides`` replaces individual delta(y^k) values and
    exists to build deliberately broken maps for negative tests.
    """

    mode: str = "zero"
    delta_of_y: Optional[CoeffPoly] = None
    overrides: Tuple[Tuple[int, CoeffPoly], ...] = field(default=())

    def __post_init__(self):
        if self.mode not in ("zero", "d_dy", "sigma_twisted"):
            raise ContextError(f"unknown delta mode {self.mode!r}")
        if (self.mode == "sigma_twisted") != (self.delta_of_y is not None):
            raise ContextError("delta_of_y is required exactly in sigma_twisted mode")

    @classmethod
    def zero(cls) -> "DeltaSpec":
        return cls("zero")

    @classmethod
    def d_dy(cls) -> "DeltaSpec":
        return cls("d_dy")

    @classmethod
    def twisted(cls, delta_of_y: CoeffPoly) -> "DeltaSpec":
        return cls("sigma_twisted", delta_of_y)


@lru_cache(maxsize=None)
def _delta_ypow(dl: DeltaSpec, sig: SigmaSpec, spec: AlgebraSpec, k: int) -> CoeffPoly:
    for kk, val in dl.overrides:
        if kk == k:
            return val
    if k == 0:
        return CoeffPoly.zero(spec)
    # delta(y * y^(k-1)) = sigma(y) delta(y^(k-1)) + delta(y) y^(k-1)
    sy = apply_sigma(sig, CoeffPoly.y(spec))
    prev = _delta_ypow(dl, sig, spec, k - 1)
    return poly_mul(sy, prev) + poly_mul(dl.delta_of_y, CoeffPoly.monomial(spec.one, k - 1))


def apply_delta(dl: DeltaSpec, sig: SigmaSpec, p: CoeffPoly) -> CoeffPoly:
    spec = p.spec
    if dl.mode == "zero" or not p:
        return CoeffPoly.zero(spec)
    if dl.mode == "d_dy":
        if not sig.is_identity:
            raise ContextError("d/dy is only a sigma-derivation for sigma = identity")
        return CoeffPoly(spec, tuple(c.scale(j) for j, c in enumerate(p.coeffs))[1:])
    out = CoeffPoly.zero(spec)
    for k, c in enumerate(p.coeffs):
        if c and k:
            out = out + left_scalar(c, _delta_ypow(dl, sig, spec, k))
    return out


def random_rat(rng: random.Random, bound: int = 5) -> mpq:
    return mpq(rng.randint(-bound, bound), rng.randint(1, 3))


def random_alg(rng: random.Random, spec: AlgebraSpec, density: float = 1.0) -> AlgElem:
    return spec.element([random_rat(rng) if rng.random() < density else 0
                         for _ in range(spec.dim)])


def random_poly(rng: random.Random, spec: AlgebraSpec, max_deg: int = 3,
                density: float = 1.0) -> CoeffPoly:
    deg = rng.randint(0, max_deg)
    return CoeffPoly(spec, tuple(random_alg(rng, spec, density) for _ in range(deg + 1)))


def verify_sigma_derivation(dl: DeltaSpec, sig: SigmaSpec, sample_count: int,
                            spec: AlgebraSpec, seed: int = 0, max_deg: int = 3) -> bool:
    """Check delta(pq) = sigma(p) delta(q) + delta(p) q on seeded random pairs.

    Monomial pairs e_i y^j, e_k y^l are tried first so that a map that is
    wrong on a single basis product cannot slip through.
    """
    try:
        pairs = []
        for j in range(2):
            for i in range(spec.dim):
                a = CoeffPoly.monomial(spec.basis(i), j)
                for l in range(2):
                    for k in range(spec.dim):
                        pairs.append((a, CoeffPoly.monomial(spec.basis(k), l)))
        rng = random.Random(seed)
        for _ in range(sample_count):
            pairs.append((random_poly(rng, spec, max_deg), random_poly(rng, spec, max_deg)))
        for p, q in pairs:
            lhs = apply_delta(dl, sig, poly_mul(p, q))
            rhs = poly_mul(apply_sigma(sig, p), apply_delta(dl, sig, q)) + \
                poly_mul(apply_delta(dl, sig, p), q)
            if lhs != rhs:
                return False
    except ContextError:
        return False
    return True
