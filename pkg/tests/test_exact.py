import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orecent.exact import (EchelonBasis, RatMatrix, in_span, mpq, nullspace_basis, rank, rat,
                           rat_str, rref)

from conftest import small_rats


def M(rows):
    return RatMatrix.from_rows(rows)


def test_rref_rank_one():
    r, piv = rref(M([[1, 2], [2, 4]]))
    assert r.to_rows() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_rref_zero():
    r, piv = rref(M([[0, 0], [0, 0]]))
    assert r.to_rows() == [[0, 0], [0, 0]]
    assert piv == []


def test_rref_diagonal():
    r, piv = rref(M([[2, 0], [0, 3]]))
    assert r.to_rows() == [[1, 0], [0, 1]]
    assert piv == [0, 1]


def test_nullspace_examples():
    (v,) = nullspace_basis(M([[1, 2]]))
    assert v[1] * -2 == v[0]
    assert nullspace_basis(RatMatrix.identity(3)) == []
    (v,) = nullspace_basis(M([[1, 1], [1, 1]]))
    assert v[0] == -v[1] and v[0] != 0


def test_in_span_examples():
    res = in_span((2, 4), [(1, 2)])
    assert res.member and res.coeffs == (2,)
    assert not in_span((1, 0), [(0, 1)])
    res = in_span((0, 0), [])
    assert res.member and res.coeffs == ()


def test_rat_parsing():
    assert rat("-2/3") == mpq(-2, 3)
    assert rat_str(mpq(4, 2)) == "2"
    assert rat_str(mpq(-1, 3)) == "-1/3"


def test_matrix_shape_checked():
    try:
        RatMatrix(2, 2, (mpq(1),))
    except ValueError:
        pass
    else:
        raise AssertionError("bad shape accepted")


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_rats, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rref_matches_sympy(rows):
    m = M(rows)
    r, piv = rref(m)
    sm = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                       for row in rows])
    sr, spiv = sm.rref()
    assert list(piv) == list(spiv)
    assert [[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
            for row in r.to_rows()] == sr.tolist()


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_properties(rows):
    m = M(rows)
    basis = nullspace_basis(m)
    for v in basis:
        assert not any(m.matvec(v))
    assert rank(m) + len(basis) == m.cols
    r, _ = rref(m)
    assert rref(r)[0] == r


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_rats, min_size=4, max_size=4), min_size=0, max_size=4),
       st.lists(small_rats, min_size=4, max_size=4))
def test_in_span_certificate(basis, v):
    res = in_span(v, basis)
    if res.member:
        combo = [sum((c * b[j] for c, b in zip(res.coeffs, basis)), mpq(0)) for j in range(4)]
        assert combo == list(v)
    else:
        def srank(vs):
            if not vs:
                return 0
            return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator))
                                  for x in b] for b in vs]).rank()
        assert srank(basis + [v]) == srank(basis) + 1


def test_echelon_basis_expresses_inserted_vectors():
    eb = EchelonBasis()
    vs = [{"a": 1, "b": 2}, {"b": 1}, {"a": 1, "b": 3}]
    assert eb.add(vs[0]) and eb.add(vs[1])
    assert not eb.add(vs[2])
    combo = eb.express({"a": 2, "b": 7})
    assert combo == {0: 2, 1: 3}
    assert eb.express({"c": 1}) is None
