from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relgpoly.lattice import (
    FaceLattice,
    NotALattice,
    NotComparable,
    empty_lattice,
    interval,
    is_isomorphic,
    join_of_faces,
    lattice_from_vertex_facet_incidence,
    lattice_join,
    lattice_product,
    opposite,
    point_lattice,
    segment_lattice,
    simplex_lattice,
    validate,
)

TRIANGLE = lattice_from_vertex_facet_incidence(3, [{0, 1}, {1, 2}, {0, 2}], 2)
SQUARE = lattice_from_vertex_facet_incidence(4, [{0, 1}, {1, 2}, {2, 3}, {0, 3}], 2)
CUBE_VERTICES = list(product((0, 1), repeat=3))
CUBE_FACETS = [{i for i, v in enumerate(CUBE_VERTICES) if v[k] == s} for k in range(3) for s in (0, 1)]
CUBE = lattice_from_vertex_facet_incidence(8, CUBE_FACETS, 3)


def brute_cube_counts(d):
    # faces of [0,1]^d are words over {0, 1, *}; dim = number of stars
    counts = [1] + [0] * (d + 1)
    for word in product("01*", repeat=d):
        counts[word.count("*") + 1] += 1
    return tuple(counts)


def test_triangle_counts():
    assert TRIANGLE.counts_by_dim == (1, 3, 3, 1)


def test_square_counts():
    assert SQUARE.counts_by_dim == (1, 4, 4, 1)


def test_cube_counts_match_brute_force():
    assert brute_cube_counts(3) == (1, 8, 12, 6, 1)
    assert CUBE.counts_by_dim == brute_cube_counts(3)


def test_degenerate_lattices():
    E = lattice_from_vertex_facet_incidence(0, [], -1)
    assert E.d == -1 and len(E) == 1 and E.counts_by_dim == (1,)
    P = lattice_from_vertex_facet_incidence(1, [set()], 0)
    assert P.counts_by_dim == (1, 1)
    assert all(validate(L)["bounded"] for L in (E, P))


def test_non_polytopal_incidence_rejected():
    # three "facets" of a 2-dimensional object sharing one vertex: no diamond
    with pytest.raises(NotALattice):
        lattice_from_vertex_facet_incidence(4, [{0, 1}, {0, 2}, {0, 3}], 2)
    with pytest.raises(NotALattice):
        lattice_from_vertex_facet_incidence(3, [{0, 1}, {0, 1, 2}], 2)


def test_vertex_figure_of_cube_is_triangle():
    v = CUBE.of_dim(0)[0]
    I = interval(CUBE, v, CUBE.top)
    assert I.counts_by_dim == (1, 3, 3, 1)
    assert is_isomorphic(I, TRIANGLE)
    assert I.origin[0] == v and I.origin[-1] == CUBE.top


def test_interval_identity_and_point_cases():
    assert is_isomorphic(interval(CUBE, CUBE.bottom, CUBE.top), CUBE)
    f = CUBE.of_dim(1)[3]
    single = interval(CUBE, f, f)
    assert single.d == -1 and len(single) == 1


def test_interval_requires_comparable_faces():
    a, b = CUBE.of_dim(0)[:2]
    with pytest.raises(NotComparable):
        interval(CUBE, a, b)


def test_opposite_of_cube_is_octahedral():
    O = opposite(CUBE)
    assert O.counts_by_dim == (1, 6, 12, 8, 1)
    assert all(validate(O).values())


@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_simplex_self_dual(d):
    S = simplex_lattice(d)
    assert is_isomorphic(opposite(S), S)


def test_opposite_involution():
    for L in (CUBE, SQUARE, point_lattice(), empty_lattice()):
        assert is_isomorphic(opposite(opposite(L)), L)
        assert opposite(L).counts_by_dim == tuple(reversed(L.counts_by_dim))


def test_join_of_faces_square():
    v = {i: SQUARE.find([i]) for i in range(4)}
    assert join_of_faces(SQUARE, v[0], v[1]).vertex_set == {0, 1}
    assert join_of_faces(SQUARE, v[0], v[2]).id == SQUARE.top
    e = SQUARE.of_dim(1)[2]
    assert join_of_faces(SQUARE, e, SQUARE.bottom).id == e


faces_of_cube = st.integers(0, len(CUBE) - 1)


@settings(max_examples=200, deadline=None)
@given(faces_of_cube, faces_of_cube, faces_of_cube)
def test_join_of_faces_algebra(a, b, c):
    j = lambda x, y: join_of_faces(CUBE, x, y).id
    assert j(a, b) == j(b, a)
    assert j(a, a) == a
    assert j(a, CUBE.bottom) == a
    assert j(j(a, b), c) == j(a, j(b, c))
    # brute force: least common upper bound by vertex-set inclusion
    ub = [f for f in range(len(CUBE)) if CUBE.leq(a, f) and CUBE.leq(b, f)]
    assert j(a, b) == min(ub, key=lambda f: len(CUBE.face(f).vertex_set))


def test_products():
    seg = segment_lattice()
    assert lattice_product(seg, seg).counts_by_dim == (1, 4, 4, 1)
    cube = lattice_product(SQUARE, seg)
    assert cube.counts_by_dim == brute_cube_counts(3)
    assert is_isomorphic(cube, CUBE)
    assert is_isomorphic(lattice_product(CUBE, point_lattice()), CUBE)
    assert all(validate(lattice_product(cube, seg)).values())


def test_product_commutative_associative():
    seg = segment_lattice()
    assert is_isomorphic(lattice_product(TRIANGLE, seg), lattice_product(seg, TRIANGLE))
    left = lattice_product(lattice_product(TRIANGLE, seg), seg)
    right = lattice_product(TRIANGLE, lattice_product(seg, seg))
    assert is_isomorphic(left, right)


def brute_pyramid_counts(base_counts):
    # faces of a pyramid: faces G of the base, and apex * G (dim + 1)
    d = len(base_counts) - 2
    out = [0] * (d + 3)
    for k, c in enumerate(base_counts):
        out[k] += c
        out[k + 1] += c
    return tuple(out)


def test_joins():
    pt = point_lattice()
    assert is_isomorphic(lattice_join(pt, pt), segment_lattice())
    pyr = lattice_join(pt, SQUARE)
    assert pyr.counts_by_dim == brute_pyramid_counts(SQUARE.counts_by_dim) == (1, 5, 8, 5, 1)
    assert is_isomorphic(lattice_join(empty_lattice(), SQUARE), SQUARE)
    assert is_isomorphic(lattice_join(SQUARE, TRIANGLE), lattice_join(TRIANGLE, SQUARE))
    assert is_isomorphic(lattice_join(lattice_join(pt, SQUARE), pt),
                         lattice_join(pt, lattice_join(SQUARE, pt)))
    assert all(validate(pyr).values())


def test_validate_cube_passes():
    assert all(validate(CUBE).values())


def test_validate_flags_chain():
    chain = FaceLattice([0, 1, 3, 7], [(), (0,), (1,), (2,)])
    report = validate(chain)
    assert not report["diamond"]
    assert report["graded"]


def test_validate_flags_rank_gap():
    # bottom < a < top and bottom < b < c < top
    L = FaceLattice([0, 1, 2, 6, 7], [(), (0,), (0,), (2,), (1, 3)])
    assert not validate(L)["graded"]


@pytest.mark.parametrize("L", [TRIANGLE, SQUARE, CUBE, simplex_lattice(5)])
def test_euler_relation(L):
    assert sum((-1) ** f.dim for f in L.faces) == 0


def test_vertex_sets_strictly_monotone():
    for f in range(len(CUBE)):
        for c in CUBE.lower[f]:
            assert CUBE.face(c).vertex_set < CUBE.face(f).vertex_set


def test_is_isomorphic_distinguishes():
    assert not is_isomorphic(CUBE, opposite(CUBE))
    assert not is_isomorphic(lattice_join(point_lattice(), SQUARE), CUBE)
