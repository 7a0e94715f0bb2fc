"""Face lattices of convex polytopes.

A :class:`FaceLattice` is a finite graded poset with a unique minimum (the
empty face, dim -1) and a unique maximum (the polytope itself). Each face
carries its set of atoms as an integer bitmask; the order is stored as the
covering relation together with up/down reachability bitsets over face ids.

Face ids are positions in a canonical ordering by ``(dim, sorted atoms)``.
They are stable for a given lattice, and constructions that build one
lattice from another record where each new face came from in ``origin``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class NotALattice(ValueError):
    """Raised when an incidence structure is not a polytopal face lattice."""


class NotComparable(ValueError):
    pass


class NotAFace(ValueError):
    pass


def bits(x: int):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(atoms: Iterable[int]) -> int:
    m = 0
    for a in atoms:
        m |= 1 << a
    return m


@dataclass(frozen=True)
class Face:
    id: int
    dim: int
    vertex_set: frozenset


class FaceLattice:
    """Immutable graded face poset.

    Build one with :func:`lattice_from_vertex_facet_incidence` or one of the
    constructions in this module; the bare constructor does not validate.
    """

    def __init__(self, masks: Sequence[int], lower_covers: Sequence[Iterable[int]],
                 origin: Sequence | None = None, n_atoms: int | None = None):
        n = len(masks)
        lower = [tuple(sorted(set(c))) for c in lower_covers]
        if len(lower) != n:
            raise ValueError("one cover list per face required")
        # longest-chain rank, computed in topological order
        rank = [None] * n
        order = sorted(range(n), key=lambda i: bin(masks[i]).count("1"))
        pending = set(range(n))
        while pending:
            progressed = False
            for i in order:
                if rank[i] is None and all(rank[c] is not None for c in lower[i]):
                    rank[i] = 1 + max((rank[c] for c in lower[i]), default=-1)
                    pending.discard(i)
                    progressed = True
            if not progressed:
                raise NotALattice("covering relation has a cycle")
        key = [(rank[i], sorted(bits(masks[i]))) for i in range(n)]
        perm = sorted(range(n), key=lambda i: key[i])
        new_id = {old: new for new, old in enumerate(perm)}

        self.masks: tuple[int, ...] = tuple(masks[i] for i in perm)
        self.dims: tuple[int, ...] = tuple(rank[i] - 1 for i in perm)
        self.lower: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(new_id[c] for c in lower[i])) for i in perm)
        upper: list[list[int]] = [[] for _ in range(n)]
        for i, cs in enumerate(self.lower):
            for c in cs:
                upper[c].append(i)
        self.upper: tuple[tuple[int, ...], ...] = tuple(tuple(u) for u in upper)
        self.origin = tuple(origin[i] for i in perm) if origin is not None else None
        self.n_atoms = n_atoms if n_atoms is not None else max(masks, default=0).bit_length()

        # reachability bitsets over face ids; ids are rank-sorted
        down = [0] * n
        for i in range(n):
            m = 1 << i
            for c in self.lower[i]:
                m |= down[c]
            down[i] = m
        up = [0] * n
        for i in reversed(range(n)):
            m = 1 << i
            for c in self.upper[i]:
                m |= up[c]
            up[i] = m
        self.down: tuple[int, ...] = tuple(down)
        self.up: tuple[int, ...] = tuple(up)
        self._by_mask = {m: i for i, m in enumerate(self.masks)}
        self._memo: dict = {}

    # -- basic access ------------------------------------------------------

    def __len__(self):
        return len(self.masks)

    def __repr__(self):
        return f"<FaceLattice d={self.d} counts={self.counts_by_dim}>"

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    @property
    def d(self) -> int:
        return self.dims[-1]

    @property
    def counts_by_dim(self) -> tuple[int, ...]:
        counts = [0] * (self.d + 2)
        for k in self.dims:
            if -1 <= k <= self.d:
                counts[k + 1] += 1
        return tuple(counts)

    @property
    def faces(self) -> list[Face]:
        return [self.face(i) for i in range(len(self))]

    def face(self, i: int) -> Face:
        return Face(i, self.dims[i], frozenset(bits(self.masks[i])))

    def face_id(self, f) -> int:
        """Accept a :class:`Face`, an id, or a vertex set; return the id."""
        if isinstance(f, Face):
            i = f.id
        elif isinstance(f, int):
            i = f
        else:
            m = mask_of(f)
            if m not in self._by_mask:
                raise NotAFace(f"no face with vertex set {sorted(f)}")
            return self._by_mask[m]
        if not 0 <= i < len(self):
            raise NotAFace(f"face id {i} out of range")
        return i

    def find(self, vertex_set: Iterable[int]) -> int | None:
        return self._by_mask.get(mask_of(vertex_set))

    def of_dim(self, k: int) -> list[int]:
        return [i for i, dk in enumerate(self.dims) if dk == k]

    def leq(self, a, b) -> bool:
        return bool(self.down[self.face_id(b)] >> self.face_id(a) & 1)

    def between(self, a: int, b: int) -> int:
        """Bitset of face ids in the closed interval [a, b]."""
        return self.up[a] & self.down[b]

    def facets(self) -> list[int]:
        return list(self.lower[self.top])


# -- construction ----------------------------------------------------------

def lattice_from_vertex_facet_incidence(n_atoms: int, facets: Iterable[Iterable[int]],
                                        d: int) -> FaceLattice:
    """Face lattice generated by intersections of facet vertex sets.

    Atoms are ``0 .. n_atoms - 1``. Raises :class:`NotALattice` if the closure
    is not a valid polytopal lattice of dimension ``d``.
    """
    fmasks = []
    for f in facets:
        f = list(f)
        if any(not 0 <= a < n_atoms for a in f):
            raise NotALattice(f"facet {sorted(f)} has atoms outside range({n_atoms})")
        fmasks.append(mask_of(f))
    fmasks = list(dict.fromkeys(fmasks))
    for i, a in enumerate(fmasks):
        for b in fmasks[i + 1:]:
            if a & b in (a, b):
                raise NotALattice("facets must be pairwise incomparable")
    full = (1 << n_atoms) - 1
    masks = {full: None, 0: None}
    queue = [full]
    while queue:
        x = queue.pop()
        for f in fmasks:
            y = x & f
            if y not in masks:
                masks[y] = None
                queue.append(y)
    masks = list(masks)
    covers = []
    for x in masks:
        if x == 0:
            covers.append(())
            continue
        cands = {x & f for f in fmasks if x & f != x} or {0}
        maximal = [y for y in cands if not any(y != z and y & z == y for z in cands)]
        covers.append(maximal)
    index = {m: i for i, m in enumerate(masks)}
    L = FaceLattice(masks, [[index[c] for c in cs] for cs in covers], n_atoms=n_atoms)
    report = validate(L)
    if L.d != d:
        raise NotALattice(f"closure has dimension {L.d}, expected {d}")
    bad = [k for k, ok in report.items() if not ok]
    if bad:
        raise NotALattice("failed checks: " + ", ".join(bad))
    return L


def validate(L: FaceLattice) -> dict[str, bool]:
    """Structural checks; returns a pass/fail flag per check."""
    n = len(L)
    minima = [i for i in range(n) if not L.lower[i]]
    maxima = [i for i in range(n) if not L.upper[i]]
    bounded = len(minima) == 1 and len(maxima) == 1 and L.dims[minima[0]] == -1
    graded = all(L.dims[c] == L.dims[i] - 1 for i in range(n) for c in L.lower[i])
    diamond = True
    for x in range(n):
        count: dict[int, int] = {}
        for y in L.upper[x]:
            for z in L.upper[y]:
                count[z] = count.get(z, 0) + 1
        if any(v != 2 for v in count.values()):
            diamond = False
            break
    euler = L.d < 0 or sum((-1) ** k for k in L.dims) == 0
    monotone = all(L.masks[c] & L.masks[i] == L.masks[c] and L.masks[c] != L.masks[i]
                   for i in range(n) for c in L.lower[i] if L.dims[c] >= 0)
    return {"bounded": bounded, "graded": graded, "diamond": diamond,
            "euler": euler, "atoms_monotone": monotone}


def empty_lattice() -> FaceLattice:
    return FaceLattice([0], [()], n_atoms=0)


def point_lattice() -> FaceLattice:
    return FaceLattice([0, 1], [(), (0,)], n_atoms=1)


def interval(L: FaceLattice, bottom, top) -> FaceLattice:
    """The interval [bottom, top] regraded so its minimum has dim -1.

    ``origin[i]`` of the result is the id in ``L`` of face ``i``.
    """
    b, t = L.face_id(bottom), L.face_id(top)
    if not L.leq(b, t):
        raise NotComparable(f"face {b} is not below face {t}")
    ids = list(bits(L.between(b, t)))
    atoms = [a for a in L.upper[b] if L.down[t] >> a & 1]
    pos = {old: k for k, old in enumerate(ids)}
    masks = []
    for i in ids:
        masks.append(sum(1 << k for k, a in enumerate(atoms) if L.down[i] >> a & 1))
    covers = [[pos[c] for c in L.lower[i] if c in pos] for i in ids]
    covers[0] = []
    return FaceLattice(masks, covers, origin=ids, n_atoms=len(atoms))


def opposite(L: FaceLattice) -> FaceLattice:
    """Order-reversed lattice (the face lattice of the polar polytope).

    Atoms of the result are the facets of ``L``; ``origin`` maps back to ids
    of ``L``.
    """
    n = len(L)
    coatoms = list(L.lower[L.top]) if n > 1 else []
    masks = [sum(1 << k for k, c in enumerate(coatoms) if L.up[i] >> c & 1) for i in range(n)]
    if n == 1:
        masks = [0]
    return FaceLattice(masks, [L.upper[i] for i in range(n)], origin=list(range(n)),
                       n_atoms=len(coatoms))


def join_of_faces(L: FaceLattice, E, F) -> Face:
    """Smallest face containing both ``E`` and ``F``."""
    common = L.up[L.face_id(E)] & L.up[L.face_id(F)]
    # ids are sorted by dim, so the lowest common upper bound comes first
    return L.face((common & -common).bit_length() - 1)


def join_id(L: FaceLattice, e: int, f: int) -> int:
    common = L.up[e] & L.up[f]
    return (common & -common).bit_length() - 1


def lattice_product(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    """Face lattice of the Cartesian product of two polytopes.

    Nonempty faces are pairs of nonempty faces; ``origin`` holds the pair of
    ids (``None`` for the empty face).
    """
    if L1.d < 0 or L2.d < 0:
        raise ValueError("product requires nonempty polytopes")
    n2 = L2.n_atoms
    pairs = [(a, b) for a in range(1, len(L1)) for b in range(1, len(L2))]
    pos = {p: k + 1 for k, p in enumerate(pairs)}
    masks = [0]
    covers: list[list[int]] = [[]]
    for a, b in pairs:
        m = 0
        for i in bits(L1.masks[a]):
            for j in bits(L2.masks[b]):
                m |= 1 << (i * n2 + j)
        masks.append(m)
        cs = [pos[(a2, b)] for a2 in L1.lower[a] if a2 != 0]
        cs += [pos[(a, b2)] for b2 in L2.lower[b] if b2 != 0]
        covers.append(cs or [0])
    return FaceLattice(masks, covers, origin=[None] + pairs, n_atoms=L1.n_atoms * n2)


def lattice_join(L1: FaceLattice, L2: FaceLattice) -> FaceLattice:
    """Face lattice of the free join: all pairs of faces, dims add plus one."""
    n1 = L1.n_atoms
    pairs = [(a, b) for a in range(len(L1)) for b in range(len(L2))]
    pos = {p: k for k, p in enumerate(pairs)}
    masks, covers = [], []
    for a, b in pairs:
        masks.append(L1.masks[a] | (L2.masks[b] << n1))
        covers.append([pos[(a2, b)] for a2 in L1.lower[a]] + [pos[(a, b2)] for b2 in L2.lower[b]])
    return FaceLattice(masks, covers, origin=pairs, n_atoms=n1 + L2.n_atoms)


def segment_lattice() -> FaceLattice:
    return lattice_join(point_lattice(), point_lattice())


def simplex_lattice(d: int) -> FaceLattice:
    n = d + 1
    return lattice_from_vertex_facet_incidence(
        n, [[j for j in range(n) if j != i] for i in range(n)] if n > 1 else [[]], d)


# -- isomorphism (tests and cross-checks only) -------------------------------

def _signature(L: FaceLattice):
    return (L.d, L.counts_by_dim,
            sorted((L.dims[i], len(L.lower[i]), len(L.upper[i])) for i in range(len(L))))


def is_isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    """Poset isomorphism test on the Hasse diagrams, matching dims."""
    if _signature(L1) != _signature(L2):
        return False
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    def hasse(L):
        G = nx.DiGraph()
        for i in range(len(L)):
            G.add_node(i, dim=L.dims[i])
            for c in L.lower[i]:
                G.add_edge(c, i)
        return G

    gm = DiGraphMatcher(hasse(L1), hasse(L2), node_match=lambda x, y: x["dim"] == y["dim"])
    return gm.is_isomorphic()
