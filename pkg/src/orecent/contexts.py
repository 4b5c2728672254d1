"""Named Ore contexts used by the CLI and the tests."""
from __future__ import annotations

import json
import os
from functools import lru_cache
from typing import Optional

from .algebra import AlgebraSpec, builtin, octonions, rationals
from .coeff import ContextError, DeltaSpec, SigmaSpec
from .ore import OreContext
from .parser import parse_coeff_poly

PRESETS = ("diff-rat", "diff-oct", "subst-oct", "diff", "subst")


def load_algebra(ref: str) -> AlgebraSpec:
    """A built-in algebra name or a path to an AlgebraSpec JSON file."""
    if os.path.exists(ref):
        with open(ref) as fh:
            return AlgebraSpec.from_json(json.load(fh))
    return builtin(ref)


def differential_context(spec: AlgebraSpec, name: str = "diff") -> OreContext:
    """A[y][x; id, d/dy]."""
    return OreContext(spec, SigmaSpec.identity(), DeltaSpec.d_dy(), name)


def substitution_context(spec: AlgebraSpec, sigma_y: str = "y^2", delta_y: str = "1",
                         name: str = "subst") -> OreContext:
    """A[y][x; sigma, delta] with sigma(y) and delta(y) given as polynomials in y."""
    sig = SigmaSpec.substitution(parse_coeff_poly(sigma_y, spec))
    dpoly = parse_coeff_poly(delta_y, spec)
    dl = DeltaSpec.twisted(dpoly) if dpoly else DeltaSpec.zero()
    return OreContext(spec, sig, dl, name)


@lru_cache(maxsize=None)
def diff_rat() -> OreContext:
    return differential_context(rationals(), "diff-rat")


@lru_cache(maxsize=None)
def diff_oct() -> OreContext:
    return differential_context(octonions(), "diff-oct")


@lru_cache(maxsize=None)
def subst_oct(sigma_y: str = "y^2", delta_y: str = "1") -> OreContext:
    return substitution_context(octonions(), sigma_y, delta_y, "subst-oct")


def build_context(preset: str, algebra: Optional[str] = None, sigma_y: Optional[str] = None,
                  delta_y: Optional[str] = None) -> OreContext:
    if preset in ("diff-rat", "diff-oct"):
        if algebra or sigma_y or delta_y:
            raise ContextError(f"{preset} takes no --algebra/--s/--delta-y")
        return diff_rat() if preset == "diff-rat" else diff_oct()
    if preset == "subst-oct":
        if algebra:
            raise ContextError("subst-oct always uses the octonions")
        return subst_oct(sigma_y or "y^2", delta_y or "1")
    if preset in ("diff", "subst"):
        if not algebra:
            raise ContextError(f"--ctx {preset} needs --algebra")
        spec = load_algebra(algebra)
        if preset == "diff":
            if sigma_y or delta_y:
                raise ContextError("diff contexts fix sigma = id and delta = d/dy")
            return differential_context(spec)
        return substitution_context(spec, sigma_y or "y^2", delta_y or "1")
    raise ContextError(f"unknown context {preset!r}; choose from {', '.join(PRESETS)}")
