"""Rational polytopes given by vertices, their facets, face lattices and
frameworks, plus generators for the standard families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .lattice import FaceLattice, bits, lattice_from_vertex_facet_incidence
from .linalg import _int_det, affine_hull_projection, integer_rows, to_fraction


class DegenerateInput(ValueError):
    pass


class NotExtremePoint(ValueError):
    pass


Point = tuple  # of Fraction


def _normalize_points(points) -> list[Point]:
    pts = [tuple(to_fraction(x) for x in p) for p in points]
    if not pts:
        raise DegenerateInput("a polytope needs at least one vertex")
    if len({len(p) for p in pts}) != 1:
        raise DegenerateInput("points have different lengths")
    if len(set(pts)) != len(pts):
        raise DegenerateInput("duplicate vertices")
    return pts


def project_to_affine_hull(points) -> tuple[int, list[Point]]:
    """Affine dimension and coordinates of ``points`` inside their affine hull.

    The chart is a coordinate projection, so it is an affine isomorphism onto
    the hull and keeps everything rational.
    """
    pts = _normalize_points(points)
    k, axes = affine_hull_projection(pts)
    return k, [tuple(p[a] for a in axes) for p in pts]


def _supporting_sets(coords: list[Point], d: int) -> list[frozenset]:
    n = len(coords)
    if d == 0:
        return [frozenset()]
    lifted = integer_rows([list(p) + [Fraction(1)] for p in coords])
    found: list[frozenset] = []
    for sub in combinations(range(n), d):
        if any(all(i in f for i in sub) for f in found):
            continue
        rows = [lifted[i] for i in sub]
        # normal of the hyperplane through the d points, via cofactors
        normal = []
        for j in range(d + 1):
            minor = [r[:j] + r[j + 1:] for r in rows]
            normal.append((-1) ** j * _int_det(minor))
        if not any(normal):
            continue
        vals = [sum(a * b for a, b in zip(normal, r)) for r in lifted]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            f = frozenset(i for i, v in enumerate(vals) if v == 0)
            if f not in found:
                found.append(f)
    return found


def facet_enumeration(vertices) -> list[frozenset]:
    """Vertex-index sets of the facets of conv(vertices), sorted.

    Brute force over affinely independent d-subsets; desk scale only.
    Raises :class:`NotExtremePoint` if some listed point is not a vertex.
    """
    d, coords = project_to_affine_hull(vertices)
    facets = sorted(_supporting_sets(coords, d), key=lambda f: sorted(f))
    if d >= 1:
        for v in range(len(coords)):
            inter = None
            for f in facets:
                if v in f:
                    inter = f if inter is None else inter & f
            if inter != {v}:
                raise NotExtremePoint(f"point {v} {tuple(map(str, coords[v]))} is not a vertex")
    elif len(coords) != 1:
        raise DegenerateInput("zero-dimensional input must be a single point")
    return facets


class Polytope:
    """Convex hull of finitely many rational points, all of them vertices.

    Facets and the face lattice are computed on construction; atoms of the
    lattice are the vertex indices.
    """

    def __init__(self, vertices, name: str = ""):
        self.vertices: tuple[Point, ...] = tuple(_normalize_points(vertices))
        self.name = name
        self.ambient_dim = len(self.vertices[0])
        self.dim, coords = project_to_affine_hull(self.vertices)
        self.coords: tuple[Point, ...] = tuple(coords)
        self.facets: tuple[frozenset, ...] = tuple(facet_enumeration(self.vertices))
        self.lattice: FaceLattice = lattice_from_vertex_facet_incidence(
            len(self.vertices), self.facets, self.dim)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Polytope{label} d={self.dim} n={len(self.vertices)}>"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


def face_lattice_of(P: Polytope) -> FaceLattice:
    return P.lattice


def n_union(P: Polytope, F) -> tuple[frozenset, frozenset]:
    """Vertices and face ids of the union of all facets containing ``F``."""
    L = P.lattice
    f = L.face_id(F)
    vmask = 0
    faces = 0
    for c in L.lower[L.top] if L.d >= 0 else ():
        if L.down[c] >> f & 1:
            vmask |= L.masks[c]
            faces |= L.down[c]
    return frozenset(bits(vmask)), frozenset(bits(faces))


@dataclass(frozen=True)
class Framework:
    """Points joined by straight edges (index pairs with i < j).

    ``labels`` gives the original vertex index of each point when the
    framework was cut out of a larger one.
    """

    points: tuple
    edges: tuple
    labels: tuple | None = None
    carriers: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.points)
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad edge {(i, j)}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)


def _framework_edges(P: Polytope, fan: str) -> list[tuple[tuple[int, int], int]]:
    """(edge, carrier face id) pairs: polytope edges plus 2-face diagonals."""
    if fan not in ("lowest", "highest"):
        raise ValueError("fan must be 'lowest' or 'highest'")
    L = P.lattice
    out = []
    for e in L.of_dim(1):
        i, j = sorted(bits(L.masks[e]))
        out.append(((i, j), e))
    for t in L.of_dim(2):
        verts = sorted(bits(L.masks[t]))
        if len(verts) <= 3:
            continue
        apex = verts[0] if fan == "lowest" else verts[-1]
        neighbours = set()
        for e in bits(L.down[t]):
            if L.dims[e] == 1 and L.masks[e] >> apex & 1:
                neighbours |= set(bits(L.masks[e]))
        for w in verts:
            if w != apex and w not in neighbours:
                out.append(((min(apex, w), max(apex, w)), t))
    out.sort()
    return out


def framework_of(P: Polytope, fan: str = "lowest") -> Framework:
    """Edges of P plus a fan triangulation of every 2-face with > 3 vertices."""
    if P.dim < 1:
        raise ValueError("frameworks need d >= 1")
    pairs = _framework_edges(P, fan)
    return Framework(P.coords, tuple(e for e, _ in pairs),
                     labels=tuple(range(P.n_vertices)), carriers=tuple(c for _, c in pairs))


def subframework(P: Polytope, F, fan: str = "lowest") -> Framework:
    """The part of ``framework_of(P)`` lying in the union of facets containing F."""
    verts, faces = n_union(P, F)
    labels = tuple(sorted(verts))
    pos = {v: k for k, v in enumerate(labels)}
    edges, carriers = [], []
    if P.dim >= 1:
        for (i, j), c in _framework_edges(P, fan):
            if c in faces:
                edges.append((pos[i], pos[j]))
                carriers.append(c)
    return Framework(tuple(P.coords[v] for v in labels), tuple(edges),
                     labels=labels, carriers=tuple(carriers))


# -- generators ------------------------------------------------------------------

def _pt(*xs) -> Point:
    return tuple(Fraction(x) for x in xs)


def point() -> Polytope:
    return Polytope([_pt(0)], name="point")


def simplex(d: int) -> Polytope:
    if d < 0:
        raise ValueError("d >= 0 required")
    if d == 0:
        return point()
    verts = [_pt(*([0] * d))] + [_pt(*[int(i == j) for j in range(d)]) for i in range(d)]
    return Polytope(verts, name=f"simplex{d}")


def cube(d: int) -> Polytope:
    if d < 0:
        raise ValueError("d >= 0 required")
    if d == 0:
        return point()
    return Polytope([_pt(*v) for v in product((0, 1), repeat=d)], name=f"cube{d}")


def cross_polytope(d: int) -> Polytope:
    if d < 1:
        raise ValueError("d >= 1 required")
    verts = []
    for i in range(d):
        for s in (1, -1):
            verts.append(_pt(*[s * int(i == j) for j in range(d)]))
    return Polytope(verts, name=f"cross{d}")


def polygon(n: int) -> Polytope:
    """Convex n-gon with integer vertices on the parabola y = x^2."""
    if n < 3:
        raise ValueError("n >= 3 required")
    return Polytope([_pt(i, i * i) for i in range(n)], name=f"polygon{n}")


def join(P: Polytope, Q: Polytope, name: str | None = None) -> Polytope:
    """Free join: P x {0} x {0} and {0} x Q x {1} in complementary flats.

    The first ``P.n_vertices`` vertices of the result are those of P.
    """
    a, b = P.dim, Q.dim
    verts = [p + (Fraction(0),) * b + (Fraction(0),) for p in P.coords]
    verts += [(Fraction(0),) * a + q + (Fraction(1),) for q in Q.coords]
    return Polytope(verts, name=name or f"join({P.name},{Q.name})")


def pyramid(P: Polytope) -> Polytope:
    """Pyramid over P; the apex is the last vertex."""
    verts = [p + (Fraction(0),) for p in P.coords] + [(Fraction(0),) * P.dim + (Fraction(1),)]
    return Polytope(verts, name=f"pyramid({P.name})")


def prism(P: Polytope) -> Polytope:
    verts = [p + (Fraction(0),) for p in P.coords] + [p + (Fraction(1),) for p in P.coords]
    return Polytope(verts, name=f"prism({P.name})")


def random_perturbed(P: Polytope, seed: int = 0) -> Polytope:
    """Image of P under a random invertible rational affine map.

    The linear part is a unit lower-triangular shear times a diagonal of
    nonzero rationals, so the face lattice is unchanged.
    """
    rng = random.Random(seed)
    n = P.ambient_dim

    def nonzero_rational():
        num = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
        return Fraction(num, rng.randint(1, 7))

    scale = [nonzero_rational() for _ in range(n)]
    shear = [[Fraction(int(i == j)) if j >= i else Fraction(rng.randint(-3, 3), rng.randint(1, 4))
              for j in range(n)] for i in range(n)]
    shift = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    verts = []
    for v in P.vertices:
        scaled = [s * x for s, x in zip(scale, v)]
        verts.append(tuple(sum(shear[i][j] * scaled[j] for j in range(n)) + shift[i]
                           for i in range(n)))
    return Polytope(verts, name=f"perturbed({P.name},{seed})")

