from itertools import combinations
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from relgpoly.geometry import cross_polytope, cube, join, point, polygon, prism, pyramid, simplex
from relgpoly.gpoly import (
    FlagIndex,
    GPolynomial,
    MarkedDimTooSmall,
    check_g_shape,
    decomposition_residual,
    defining_relation_residual,
    flag_number,
    g_poly,
    g_relative,
    g_relative_by_inversion,
    gbar_poly,
    h_poly,
    kalai_deficit,
    relative_flag_number,
    stanley_identity_residual,
)
from relgpoly.lattice import (
    NotAFace,
    NotComparable,
    empty_lattice,
    interval,
    lattice_from_vertex_facet_incidence,
    lattice_join,
)

CUBE3 = cube(3).lattice
CUBE4 = cube(4).lattice
CROSS3 = cross_polytope(3).lattice
SQUARE = cube(2).lattice


def simplicial_h(counts):
    """Classical h-vector from the f-vector (valid for simplicial polytopes)."""
    d = len(counts) - 2
    f = counts[:-1]  # f_{-1}, ..., f_{d-1}
    return [sum((-1) ** (i - j) * comb(d - j, i - j) * f[j] for j in range(i + 1))
            for i in range(d + 1)]


def vertex(L, k=0):
    return L.of_dim(0)[k]


# -- GPolynomial -----------------------------------------------------------------

coeff_lists = st.lists(st.integers(-20, 20), max_size=6)


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists)
def test_polynomial_arithmetic_matches_sympy(a, b):
    q = sympy.Symbol("q")
    A, B = GPolynomial(a), GPolynomial(b)
    as_sym = lambda p: sum(c * q ** i for i, c in enumerate(p.coeffs))
    for ours, theirs in ((A * B, as_sym(A) * as_sym(B)), (A + B, as_sym(A) + as_sym(B)),
                         (A - B, as_sym(A) - as_sym(B))):
        assert sympy.expand(as_sym(ours) - theirs) == 0
        assert not ours.coeffs or ours.coeffs[-1] != 0


def test_polynomial_canonical_form():
    assert GPolynomial([1, 0, 0]).coeffs == (1,)
    assert GPolynomial([0, 0]).is_zero() and GPolynomial().to_list() == []
    assert GPolynomial([1, 4]) == [1, 4] and GPolynomial([1]) == 1
    assert repr(GPolynomial([1, 11, 2])) == "1 + 11q + 2q^2"


# -- h and g ------------------------------------------------------------------------

def test_h_square():
    # (q-1)^2 + 4(q-1) + 4
    assert h_poly(SQUARE) == [1, 2, 1]


def test_h_cube3():
    # (q-1)^3 + 8(q-1)^2 + 12(q-1) + 6(1+q)
    assert h_poly(CUBE3) == [1, 5, 5, 1]


def test_h_point():
    assert h_poly(point().lattice) == [1]


def test_g_empty():
    assert g_poly(empty_lattice()) == [1]


@pytest.mark.parametrize("d", range(7))
def test_g_simplex(d):
    assert g_poly(simplex(d).lattice) == [1]


def test_g_fixtures():
    assert g_poly(CUBE3) == [1, 4]
    assert g_poly(CROSS3) == [1, 2]
    assert h_poly(CUBE4) == [1, 12, 14, 12, 1]
    assert g_poly(CUBE4) == [1, 11, 2]


@pytest.mark.parametrize("n", range(3, 9))
def test_g_polygon(n):
    assert g_poly(polygon(n).lattice) == [1, n - 3]
    assert gbar_poly(polygon(n).lattice) == [1, n - 3]


@pytest.mark.parametrize("P", [cross_polytope(3), cross_polytope(4), simplex(5), polygon(7),
                               simplex(6)], ids=lambda P: P.name)
def test_h_matches_simplicial_formula(P):
    L = P.lattice
    assert all(len(L.face(f).vertex_set) == L.d for f in L.of_dim(L.d - 1))
    assert h_poly(L).to_list() == simplicial_h(list(L.counts_by_dim))


def test_gbar():
    assert gbar_poly(CUBE3) == [1, 2]
    assert gbar_poly(simplex(4).lattice) == [1]
    # cube(4) is simple, so its polar is simplicial: use the f-vector formula
    h = simplicial_h(list(reversed(CUBE4.counts_by_dim)))
    assert gbar_poly(CUBE4) == [h[0], h[1] - h[0], h[2] - h[1]]


@pytest.mark.parametrize("P", [cube(3), cube(4), prism(polygon(5)), pyramid(cube(3)),
                               join(polygon(4), simplex(1))], ids=lambda P: P.name)
def test_h_shape(P):
    h = h_poly(P.lattice)
    assert h.degree == P.dim and h[0] == 1
    assert h.coeffs == tuple(reversed(h.coeffs))  # Eulerian lattices give palindromic h
    check_g_shape(P.lattice, g_poly(P.lattice))


def test_pyramid_and_join_products():
    for base in (polygon(5), cube(3), cross_polytope(3)):
        assert g_poly(pyramid(base).lattice) == g_poly(base.lattice)
    assert g_poly(join(polygon(4), polygon(5)).lattice) == GPolynomial([1, 1]) * GPolynomial([1, 2])


# -- relative g ----------------------------------------------------------------------

def test_relative_top_is_g():
    for L in (CUBE3, CUBE4, CROSS3):
        assert g_relative(L, L.top) == g_poly(L)


def test_relative_facet():
    facet = CUBE3.of_dim(2)[0]
    assert g_relative(CUBE3, facet) == [0, 3]
    for P in (cube(4), prism(polygon(5)), pyramid(polygon(6))):
        L = P.lattice
        for f in L.of_dim(L.d - 1):
            sub = interval(L, L.bottom, f)
            assert g_relative(L, f) == g_poly(L) - g_poly(sub)


def test_relative_cube_vertex():
    assert g_relative(CUBE3, vertex(CUBE3)) == [0, 1]


def test_relative_empty_face_is_zero():
    for L in (CUBE3, CUBE4):
        assert g_relative(L, L.bottom).is_zero()


def test_not_a_face():
    with pytest.raises(NotAFace):
        g_relative(CUBE3, 999)
    with pytest.raises(NotAFace):
        g_relative(CUBE3, {0, 7})


def test_inversion_examples():
    facet = CUBE3.of_dim(2)[0]
    assert g_relative_by_inversion(CUBE3, facet) == [0, 3]
    assert g_relative_by_inversion(CUBE3, CUBE3.top) == g_poly(CUBE3)
    assert g_relative_by_inversion(CUBE3, vertex(CUBE3)) == [0, 1]


@pytest.mark.parametrize("P", [cube(3), cube(4), cross_polytope(4), prism(simplex(3)),
                               pyramid(polygon(5))], ids=lambda P: P.name)
def test_inversion_agrees_everywhere(P):
    L = P.lattice
    for f in range(len(L)):
        assert g_relative_by_inversion(L, f) == g_relative(L, f)
        assert defining_relation_residual(L, f).is_zero()


# -- flags ---------------------------------------------------------------------------

def brute_flags(L, dims, marked=None, face=None):
    layers = [L.of_dim(k) for k in dims]
    count = 0

    def rec(pos, prev):
        nonlocal count
        if pos == len(layers):
            count += 1
            return
        for x in layers[pos]:
            if prev is not None and not (L.leq(prev, x) and prev != x):
                continue
            if marked == pos + 1 and not L.leq(face, x):
                continue
            rec(pos + 1, x)

    rec(0, None)
    return count


def test_flag_examples():
    assert flag_number(CUBE3, (0,)) == 8
    assert flag_number(CUBE3, (0, 2)) == 24
    assert flag_number(CUBE3, ()) == 1


@pytest.mark.parametrize("L", [CUBE3, CROSS3, cube(4).lattice], ids=["cube3", "cross3", "cube4"])
def test_flags_match_brute_force(L):
    for size in range(L.d + 2):
        for dims in combinations(range(L.d + 1), size):
            assert flag_number(L, dims) == brute_flags(L, dims)


def test_relative_flag_examples():
    v = vertex(CUBE3)
    assert relative_flag_number(CUBE3, v, FlagIndex((0,), 1)) == 1
    assert relative_flag_number(CUBE3, v, FlagIndex((2,), 1)) == 3
    assert relative_flag_number(CUBE3, v, FlagIndex((1, 2), 2)) == 12
    with pytest.raises(MarkedDimTooSmall):
        relative_flag_number(CUBE3, CUBE3.of_dim(2)[0], FlagIndex((1, 2), 1))


def test_relative_flags_brute_and_special_case():
    L = CUBE3
    for f in (vertex(L), L.of_dim(1)[4], L.bottom):
        for size in range(1, L.d + 3):
            for dims in combinations(range(-1, L.d + 1), size):
                for k in range(1, size + 1):
                    if dims[k - 1] < L.dims[f]:
                        continue
                    I = FlagIndex(dims, k)
                    assert relative_flag_number(L, f, I) == brute_flags(L, dims, k, f)
                if dims[-1] == L.d and dims[0] >= 0:
                    I = FlagIndex(dims, size)
                    assert relative_flag_number(L, f, I) == flag_number(L, dims)
                    assert flag_number(L, dims) == flag_number(L, dims[:-1])


def test_flag_index_validation():
    with pytest.raises(ValueError):
        FlagIndex((2, 1))
    with pytest.raises(ValueError):
        FlagIndex((0, 1), 3)


# -- identities -------------------------------------------------------------------------

def test_stanley_examples():
    assert stanley_identity_residual(SQUARE).is_zero()
    assert stanley_identity_residual(simplex(3).lattice).is_zero()
    assert stanley_identity_residual(point().lattice).is_zero()


def test_decomposition_examples():
    L = CUBE3
    for f in range(len(L)):
        assert decomposition_residual(L, f, f).is_zero()
    assert decomposition_residual(L, L.top, L.top).is_zero()
    v = vertex(L)
    facet = next(f for f in L.of_dim(2) if L.leq(v, f))
    assert decomposition_residual(L, v, facet).is_zero()
    other = next(f for f in L.of_dim(2) if not L.leq(v, f))
    with pytest.raises(NotComparable):
        decomposition_residual(L, other, v)


def test_decomposition_through_explicit_intervals():
    """Evaluate the right-hand side with interval lattices and join_of_faces."""
    from relgpoly.lattice import join_of_faces
    L = CUBE3
    v = vertex(L)
    facet = next(f for f in L.of_dim(2) if L.leq(v, f))
    total = GPolynomial()
    for e in range(len(L)):
        if not L.leq(v, e):
            continue
        lower = interval(L, L.bottom, e)
        upper = interval(L, e, L.top)
        ef = join_of_faces(L, e, facet).id
        total = total + g_relative(lower, lower.origin.index(v)) * g_relative(upper, upper.origin.index(ef))
    assert total == g_relative(L, facet)


def test_kalai_examples():
    assert kalai_deficit(CUBE3, CUBE3.bottom).is_zero()
    assert kalai_deficit(CUBE3, vertex(CUBE3)) == [0, 4]


def test_join_lattice_relative_g():
    sq = SQUARE
    tri = lattice_from_vertex_facet_incidence(3, [{0, 1}, {1, 2}, {0, 2}], 2)
    J = lattice_join(sq, tri)
    F = J.origin.index((sq.top, tri.bottom))
    assert kalai_deficit(J, F).is_nonnegative()
    # the defining relation forces g(P, F) = 0 for a proper join factor
    assert g_relative(J, F).is_zero()


def test_memo_limit(monkeypatch):
    monkeypatch.setenv("GPOLY_MEMO_LIMIT", "0")
    L = cube(4).lattice
    assert g_poly(L) == [1, 11, 2]
    assert g_relative(L, vertex(L)) == g_relative(CUBE4, vertex(CUBE4))
    assert all(len(t) == 0 for t in L._memo.values())
