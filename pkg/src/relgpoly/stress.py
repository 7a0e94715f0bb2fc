"""Affine dependencies, stresses of frameworks, and the geometric values of
the first two relative g-numbers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geometry import Framework, Polytope, framework_of, n_union, subframework
from .linalg import RationalMatrix, kernel_basis, kernel_dim, rank, to_fraction


class InclusionError(AssertionError):
    """A zero-extended kernel vector failed to land in the larger kernel."""


def _affine_matrix(points: Sequence[Sequence]) -> RationalMatrix:
    # columns are points; rows are (1, x_1, ..., x_d)
    n = len(points)
    dim = len(points[0])
    rows = [[Fraction(1)] * n] + [[to_fraction(p[c]) for p in points] for c in range(dim)]
    return RationalMatrix(rows, cols=n)


def affine_dependence_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the space of affine dependencies of ``points``."""
    if not points:
        return 0
    return kernel_dim(_affine_matrix(points))


def affine_dependence_dim_centered(points: Sequence[Sequence]) -> int:
    """Same quantity as |V| - 1 - rank of the coordinates centred at one point."""
    if not points:
        return 0
    base = points[0]
    centred = [[to_fraction(a) - to_fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    return len(points) - 1 - (rank(centred) if centred and centred[0] else 0)


def stress_matrix(fw: Framework) -> RationalMatrix:
    """Matrix of the map sending an edge to its equilibrium load.

    Rows are indexed vertex-major, coordinate-minor (row ``v * dim + c``);
    column ``k`` is edge ``fw.edges[k] = (i, j)`` with entries ``p_i - p_j``
    in the rows of ``i`` and ``p_j - p_i`` in the rows of ``j``.
    """
    n = len(fw.points)
    dim = len(fw.points[0]) if n else 0
    cols = len(fw.edges)
    M = [[Fraction(0)] * cols for _ in range(n * dim)]
    for k, (i, j) in enumerate(fw.edges):
        pi, pj = fw.points[i], fw.points[j]
        for c in range(dim):
            delta = to_fraction(pi[c]) - to_fraction(pj[c])
            M[i * dim + c][k] = delta
            M[j * dim + c][k] = -delta
    return RationalMatrix(M, cols=cols)


def stress_dim(fw: Framework) -> int:
    """Dimension of the space of self-stresses of ``fw``."""
    if not fw.edges:
        return 0
    return kernel_dim(stress_matrix(fw))


def stress_basis(fw: Framework) -> list[tuple[int, ...]]:
    if not fw.edges:
        return []
    return kernel_basis(stress_matrix(fw))


def _check_zero_extension(big: RationalMatrix, basis, positions: Sequence[int], what: str):
    for vec in basis:
        full = [0] * big.cols
        for k, x in zip(positions, vec):
            full[k] = x
        if any(big.apply(full)):
            raise InclusionError(f"zero extension of a {what} is not in the larger kernel")


def g1_geometric(P: Polytope, F, verify: bool = True) -> int:
    """dim Aff(V_P) / Aff(V_N) where N is the union of facets containing F."""
    vn, _ = n_union(P, F)
    vn = sorted(vn)
    full = affine_dependence_dim(P.coords)
    sub = affine_dependence_dim([P.coords[v] for v in vn])
    if verify and vn:
        basis = kernel_basis(_affine_matrix([P.coords[v] for v in vn]))
        _check_zero_extension(_affine_matrix(P.coords), basis, vn, "affine dependence")
    return full - sub


def g2_geometric(P: Polytope, F, fan: str = "lowest", verify: bool = True) -> int:
    """dim S(Phi_P) / S(Phi_N) for the framework cut out by the facets at F."""
    if P.dim < 1:
        return 0
    big = framework_of(P, fan)
    small = subframework(P, F, fan)
    full = stress_dim(big)
    sub = stress_dim(small)
    if verify and sub:
        index = {e: k for k, e in enumerate(big.edges)}
        positions = [index[(small.labels[i], small.labels[j])] for i, j in small.edges]
        _check_zero_extension(stress_matrix(big), stress_basis(small), positions, "stress")
    return full - sub


def dump(M: RationalMatrix, basis=None) -> str:
    """Exact text dump of a matrix and optionally a kernel basis."""
    text = M.to_text()
    if basis is not None:
        text += f"\n# kernel basis ({len(basis)} vectors)\n"
        text += "\n".join(" ".join(str(x) for x in v) for v in basis)
    return text
