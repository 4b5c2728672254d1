"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import random

from orecent.algebra import associator, mul, octonions
from orecent.bc import annihilating_polynomial, evaluate, find_annihilating_polynomial
from orecent.centralizer import (CentralizerQuery, centralizer_space, check_D_condition,
                                 check_degree_sum, check_rank_divides, leading_coefficient_rank,
                                 leading_ydeg, left_power, module_basis)
from orecent.coeff import apply_delta, apply_sigma
from orecent.contexts import diff_oct, diff_rat, subst_oct
from orecent.exact import mpq
from orecent.ore import associator_ore, chi, commutes, nucleus_check, ore_mul
from orecent.parser import parse_element

from conftest import ACCEPTANCE_LINES, random_coeff_poly, random_elem
from oracles import cd_mul, from_nested, to_nested

PRESETS = {"diff-rat": diff_rat, "diff-oct": diff_oct, "subst-oct": subst_oct}


def record(n, ok, detail):
    line = f"[ACCEPT {n}] {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def E(src, ctx):
    return parse_element(src, ctx)


def test_criterion_1_octonion_composition():
    O = octonions()
    rng = random.Random(101)
    bad = []
    for t in range(1000):
        a = O.element([mpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)])
        b = O.element([mpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)])
        ab = mul(a, b)
        if list(ab.coords) != from_nested(cd_mul(to_nested(a.coords), to_nested(b.coords))):
            bad.append((t, "oracle"))
        if ab.norm() != a.norm() * b.norm():
            bad.append((t, "norm"))
        if associator(a, a, b) or associator(a, b, b):
            bad.append((t, "alternativity"))
    record(1, not bad, f"1000 octonion pairs: N(ab)=N(a)N(b), alternative, oracle agrees; failures={bad[:3]}")


def test_criterion_2_defining_relation():
    rng = random.Random(102)
    bad = []
    for name, make in PRESETS.items():
        ctx = make()
        for _ in range(500):
            r = random_coeff_poly(ctx.spec, rng, 3)
            lhs = ore_mul(ctx.x, ctx.from_coeffs([r]))
            rhs = ore_mul(ctx.from_coeffs([apply_sigma(ctx.sigma, r)]), ctx.x) + \
                ctx.from_coeffs([apply_delta(ctx.delta, ctx.sigma, r)])
            if lhs != rhs:
                bad.append((name, str(r)))
    record(2, not bad, f"x*r = sigma(r)*x + delta(r) on 500 r per preset; failures={bad[:3]}")


def test_criterion_3_pseudo_degree():
    rng = random.Random(103)
    bad = []
    equality_cases = 0
    for name, make in PRESETS.items():
        ctx = make()
        for _ in range(500):
            u = random_elem(ctx, rng, density=0.25)
            v = random_elem(ctx, rng, density=0.25)
            if u and v and chi(ore_mul(u, v)) != chi(u) + chi(v):
                bad.append((name, "product", str(u), str(v)))
            if chi(u + v) > max(chi(u), chi(v)):
                bad.append((name, "sum", str(u), str(v)))
            if chi(u) != chi(v):
                equality_cases += 1
                if chi(u + v) != max(chi(u), chi(v)):
                    bad.append((name, "equality", str(u), str(v)))
    record(3, not bad, f"chi axioms on 500 pairs per preset ({equality_cases} unequal-chi sums); "
                       f"failures={bad[:2]}")


def test_criterion_4_nucleus_membership():
    ctx = diff_oct()
    rng = random.Random(104)
    fails = []
    for u in (ctx.x, ctx.y):
        if not nucleus_check(u, 3, 3):
            fails.append(str(u))
    for _ in range(50):
        u = random_elem(ctx, rng, max_x=2, max_y=2, density=0.5, real=True)
        if not nucleus_check(u, 3, 3):
            fails.append(str(u))
    missing = []
    for _ in range(20):
        u = random_elem(ctx, rng, max_x=2, max_y=2, density=0.15)
        u = u + ctx.monomial(rng.randint(1, 7), rng.randint(0, 2), rng.randint(0, 2))
        assert not u.has_scalar_coeffs()
        res = nucleus_check(u, 3, 3)
        w = res.witness
        if res or w is None or associator_ore(*w.triple) != w.value or not w.value:
            missing.append(str(u))
    record(4, not fails and not missing,
           f"x, y, 50 real elements in nucleus at (3,3): {52 - len(fails)}/52; "
           f"20 non-real elements with verified witness: {20 - len(missing)}/20")


def test_criterion_5_rank_bound():
    O = diff_oct()
    a = E("x^2", O)
    mb = module_basis(CentralizerQuery(a, 5))
    oct_ok = len(mb) == 16 == mb.rank_bound and all(commutes(a, b) for b in mb.elements)
    R = diff_rat()
    ar = E("x^2", R)
    mbr = module_basis(CentralizerQuery(ar, 5))
    rat_ok = [str(b) for b in mbr.elements] == ["1", "x"] and bool(check_rank_divides(mbr, 2))
    record(5, oct_ok and rat_ok,
           f"diff-oct C(x^2) rank {len(mb)} (bound {mb.rank_bound}); "
           f"diff-rat basis {[str(b) for b in mbr.elements]}, rank divides 2: {rat_ok}")


def test_criterion_6_degree_sum():
    results = {}
    for name, make in (("diff-oct", diff_oct), ("diff-rat", diff_rat)):
        a = E("x^2", make())
        mb = module_basis(CentralizerQuery(a, 5))
        results[name] = check_degree_sum(mb, a, 200, seed=106)
    ok = all(results.values())
    record(6, ok, "degree-sum identity on 200 seeded trials: " +
           ", ".join(f"{k}={bool(v)}" for k, v in results.items()))


def _equal_chi_elements(space, n, count, rng):
    top = [b for b in space if chi(b) == n]
    out = []
    while len(out) < count:
        e = space[0].ctx.zero
        for b in space:
            e = e + b.scale(mpq(rng.randint(-4, 4), rng.randint(1, 3)))
        if chi(e) == n:
            out.append(e)
    return top, out


def test_criterion_7_condition_D8():
    ctx = diff_oct()
    a = E("x^2", ctx)
    q = CentralizerQuery(a, 4)
    rng = random.Random(107)
    details = []
    ok = True
    for n in range(1, 5):
        space = centralizer_space(q, n)
        top, elems = _equal_chi_elements(space, n, 9, rng)
        cert = check_D_condition(elems, 8)
        r = leading_coefficient_rank(top + elems)
        ok &= cert.dependent and cert.chi_after < n and r <= 8
        details.append(f"chi={n}: {cert.verdict}, rank {r}")
    record(7, ok, "9 equal-chi elements of C(x^2) in diff-oct; " + "; ".join(details))


def test_criterion_8_leading_degrees():
    ctx = subst_oct()
    a = E("y*x + 2", ctx)
    formula = [leading_ydeg(a, n) for n in range(5)]
    q = CentralizerQuery(a, 4)
    cross = []
    for n in range(1, 5):
        for b in centralizer_space(q, n):
            if chi(b) == n:
                cross.append((n, b.lead.deg == formula[n]))
    subst_ok = formula == [2 ** n - 1 for n in range(5)] and cross and all(c for _, c in cross)

    dctx = diff_oct()
    rng = random.Random(108)
    cases = 0
    diff_bad = []
    while cases < 20:
        gamma = rng.randint(0, 2)
        g = dctx.monomial(0, gamma, 1) + dctx.monomial(0, rng.randint(0, 2), 0, rng.randint(-3, 3))
        p, r = rng.randint(1, 3), rng.randint(1, 3)
        A, B = left_power(g, p), left_power(g, r)
        m, n = int(chi(A)), int(chi(B))
        alpha, beta = int(A.lead.deg), int(B.lead.deg)
        if not commutes(A, B) or m * beta != n * alpha or leading_ydeg(A, n) != beta:
            diff_bad.append((str(g), p, r))
        cases += 1
    record(8, subst_ok and not diff_bad,
           f"subst-oct leading_ydeg(y*x+2, n<=4) = {formula}, cross-checked on "
           f"{len(cross)} centralizer elements; diff-oct m*beta = n*alpha on {cases} "
           f"constructed pairs, failures={diff_bad[:2]}")


def test_criterion_9_burchnall_chaundy():
    R = diff_rat()
    x2, x3 = E("x^2", R), E("x^3", R)
    cusp = annihilating_polynomial(x2, x3, 2, 3)
    cusp_ok = cusp is not None and str(cusp) == "s^3 - t^2" and not evaluate(cusp, x2, x3)
    a = E("y*x^2 + x", R)
    Q = annihilating_polynomial(a, a, 1, 1)
    diag_ok = Q is not None and str(Q) == "s - t"

    rng = random.Random(109)
    fuzz = []
    for name, ctx, count in (("diff-rat", R, 12), ("diff-oct", diff_oct(), 8)):
        gens = [E(s, ctx) for s in ("x", "y*x + 1", "x + y", "x^2 - 2*y")]
        for _ in range(count):
            g = rng.choice(gens)
            powers = [ctx.one, g, left_power(g, 2)]

            def poly():
                deg = rng.randint(1, 2)
                cs = [mpq(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(deg)]
                cs.append(mpq(rng.choice([-2, -1, 1, 2])))
                out = ctx.zero
                for c, pw in zip(cs, powers):
                    out = out + pw.scale(c)
                return out

            u, v = poly(), poly()
            P = find_annihilating_polynomial(u, v)
            fuzz.append((name, P is not None and not evaluate(P, u, v)))
    fuzz_ok = len(fuzz) == 20 and all(ok for _, ok in fuzz)
    record(9, cusp_ok and diag_ok and fuzz_ok,
           f"(x^2, x^3) -> {cusp}; (a, a) -> {Q}; fuzz pairs annihilated "
           f"{sum(ok for _, ok in fuzz)}/{len(fuzz)}")


def test_criterion_10_associative_oracle():
    R = diff_rat()
    rng = random.Random(110)
    bad = 0
    for _ in range(500):
        u, v, w = (random_elem(R, rng, 2, 2, density=0.4) for _ in range(3))
        if associator_ore(u, v, w):
            bad += 1
    O = diff_oct()
    triple = (E("e1*x", O), E("e2", O), E("e4", O))
    detected = bool(associator_ore(*triple))
    record(10, bad == 0 and detected,
           f"diff-rat associative on 500 triples ({bad} failures); diff-oct triple "
           f"(e1*x, e2, e4) associator = {associator_ore(*triple)}")
