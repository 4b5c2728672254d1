import pytest
from hypothesis import strategies as st

from orecent.coeff import CoeffPoly
from orecent.contexts import diff_oct, diff_rat, subst_oct
from orecent.exact import mpq


@pytest.fixture(scope="session")
def rat_ctx():
    return diff_rat()


@pytest.fixture(scope="session")
def oct_ctx():
    return diff_oct()


@pytest.fixture(scope="session")
def sub_ctx():
    return subst_oct()


small_rats = st.builds(lambda n, d: mpq(n, d), st.integers(-6, 6), st.integers(1, 4))


def random_elem(ctx, rng, max_x=2, max_y=2, density=0.4, real=False):
    """Random element with roughly ``density`` of the monomial box filled."""
    terms = {}
    dim = 1 if real else ctx.spec.dim
    for k in range(max_x + 1):
        for j in range(max_y + 1):
            for c in range(dim):
                if rng.random() < density:
                    terms[(k, j, c)] = mpq(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    return ctx.elem(terms)


def random_coeff_poly(spec, rng, max_deg=3):
    deg = rng.randint(0, max_deg)
    return CoeffPoly(spec, tuple(
        spec.element([mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(spec.dim)])
        for _ in range(deg + 1)))


# acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
