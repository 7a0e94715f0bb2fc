"""Toric g- and h-polynomials, relative g-polynomials and flag numbers.

All recursions work on intervals ``[a, b]`` of one :class:`FaceLattice`
identified by face ids, so g(P/F), g(F) and relative versions never need
a new lattice object. Results are cached on the lattice, keyed by the
face ids involved.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .lattice import FaceLattice, NotAFace, NotComparable, bits, join_id, opposite


class GPolynomial:
    """Integer polynomial in q stored as a dense, trimmed coefficient tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, GPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == GPolynomial([other]).coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == GPolynomial(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return GPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return GPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return GPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
                coef = str(c) if (c != 1 or i == 0) else ""
                terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _coerce(x) -> GPolynomial:
    if isinstance(x, GPolynomial):
        return x
    if isinstance(x, int):
        return GPolynomial([x])
    return GPolynomial(x)


ZERO = GPolynomial()
ONE = GPolynomial([1])


def q_minus_one_power(k: int) -> GPolynomial:
    return GPolynomial(comb(k, i) * (-1) ** (k - i) for i in range(k + 1))


_QM1 = [q_minus_one_power(k) for k in range(16)]


def _qm1(k: int) -> GPolynomial:
    return _QM1[k] if k < len(_QM1) else q_minus_one_power(k)


@dataclass(frozen=True)
class FlagIndex:
    """Strictly increasing dimension sequence, optionally with a marked
    (1-based) position for relative flag numbers."""

    dims: tuple[int, ...]
    marked_k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if any(a >= b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError(f"flag dims must strictly increase: {self.dims}")
        if self.marked_k is not None and not 1 <= self.marked_k <= len(self.dims):
            raise ValueError(f"marked position {self.marked_k} out of range")


class MarkedDimTooSmall(ValueError):
    pass


# -- memo tables ---------------------------------------------------------------

class _Memo(dict):
    """Dict that stops accepting inserts past ``GPOLY_MEMO_LIMIT`` entries."""

    def __init__(self):
        super().__init__()
        limit = os.environ.get("GPOLY_MEMO_LIMIT")
        self.limit = int(limit) if limit else None

    def put(self, key, value):
        if self.limit is None or len(self) < self.limit:
            self[key] = value
        return value


def _memo(L: FaceLattice, name: str) -> _Memo:
    table = L._memo.get(name)
    if table is None:
        table = L._memo[name] = _Memo()
    return table


# -- interval recursions -------------------------------------------------------

def _truncate_g(h: GPolynomial, d: int) -> GPolynomial:
    out = [h[0]]
    for i in range(1, d // 2 + 1):
        out.append(h[i] - h[i - 1])
    return GPolynomial(out)


def interval_h(L: FaceLattice, a: int, b: int) -> GPolynomial:
    """h of the polytope whose face poset is [a, b]."""
    memo = _memo(L, "h")
    key = (a, b)
    if key in memo:
        return memo[key]
    db = L.dims[b]
    total = ZERO
    for c in bits(L.between(a, b) & ~(1 << b)):
        total = total + _qm1(db - L.dims[c] - 1) * interval_g(L, a, c)
    return memo.put(key, total)


def interval_g(L: FaceLattice, a: int, b: int) -> GPolynomial:
    """g of the polytope whose face poset is [a, b]; 1 when a == b."""
    if a == b:
        return ONE
    memo = _memo(L, "g")
    key = (a, b)
    if key in memo:
        return memo[key]
    g = _truncate_g(interval_h(L, a, b), L.dims[b] - L.dims[a] - 1)
    return memo.put(key, g)


def interval_gbar(L: FaceLattice, a: int, b: int) -> GPolynomial:
    """g of the polar of the polytope with face poset [a, b].

    The polar's face poset is [a, b] reversed, so the recursion runs over
    faces c with a < c <= b, each contributing the reversed interval [c, b].
    """
    if a == b:
        return ONE
    memo = _memo(L, "gbar")
    key = (a, b)
    if key in memo:
        return memo[key]
    da = L.dims[a]
    h = ZERO
    for c in bits(L.between(a, b) & ~(1 << a)):
        h = h + _qm1(L.dims[c] - da - 1) * interval_gbar(L, c, b)
    return memo.put(key, _truncate_g(h, L.dims[b] - da - 1))


def interval_g_relative(L: FaceLattice, b: int, f: int, e: int) -> GPolynomial:
    """g(E, F) for the polytope E with face poset [b, e] and its face f.

    Solves the defining convolution for the top term:
    g(E, F) = g(E) - sum over F <= D < E of g(D, F) * g(E/D).
    """
    if f == e:
        return interval_g(L, b, f)
    memo = _memo(L, "rel")
    key = (b, f, e)
    if key in memo:
        return memo[key]
    total = interval_g(L, b, e)
    for dface in bits(L.between(f, e) & ~(1 << e)):
        total = total - interval_g_relative(L, b, f, dface) * interval_g(L, dface, e)
    return memo.put(key, total)


# -- public API ------------------------------------------------------------------

def _fid(L: FaceLattice, F) -> int:
    return L.face_id(F)


def h_poly(L: FaceLattice) -> GPolynomial:
    if L.d < 0:
        raise ValueError("h is defined for nonempty polytopes")
    return interval_h(L, L.bottom, L.top)


def g_poly(L: FaceLattice) -> GPolynomial:
    return interval_g(L, L.bottom, L.top)


def gbar_poly(L: FaceLattice) -> GPolynomial:
    """g of the polar polytope, computed on the opposite lattice."""
    return g_poly(opposite(L))


def g_relative(L: FaceLattice, F) -> GPolynomial:
    """Relative g-polynomial g(P, F) of the top face P with respect to F."""
    return interval_g_relative(L, L.bottom, _fid(L, F), L.top)


def g_relative_by_inversion(L: FaceLattice, F) -> GPolynomial:
    """Closed form: alternating sum over F <= F' <= P of g(F') * gbar(P/F')."""
    f = _fid(L, F)
    top, d = L.top, L.d
    total = ZERO
    for fp in bits(L.between(f, top)):
        term = interval_g(L, L.bottom, fp) * interval_gbar(L, fp, top)
        total = total + term if (d - L.dims[fp]) % 2 == 0 else total - term
    return total


def stanley_identity_residual(L: FaceLattice) -> GPolynomial:
    """Alternating sum of gbar(F) * g(P/F) over all faces; zero for P nonempty."""
    if L.d < 0:
        raise ValueError("identity holds for nonempty polytopes only")
    total = ZERO
    for f in range(len(L)):
        term = interval_gbar(L, L.bottom, f) * interval_g(L, f, L.top)
        total = total + term if L.dims[f] % 2 == 0 else total - term
    return total


def defining_relation_residual(L: FaceLattice, F) -> GPolynomial:
    """sum over F <= E <= P of g(E, F) g(P/E), minus g(P)."""
    f = _fid(L, F)
    total = ZERO
    for e in bits(L.between(f, L.top)):
        total = total + interval_g_relative(L, L.bottom, f, e) * interval_g(L, e, L.top)
    return total - g_poly(L)


def decomposition_residual(L: FaceLattice, Fprime, F) -> GPolynomial:
    """g(P, F) minus sum over E >= F' of g(E, F') * g(P/E, (E v F)/E)."""
    fp, f = _fid(L, Fprime), _fid(L, F)
    if not L.leq(fp, f):
        raise NotComparable(f"face {fp} is not below face {f}")
    top = L.top
    total = ZERO
    for e in bits(L.between(fp, top)):
        ef = join_id(L, e, f)
        total = total + interval_g_relative(L, L.bottom, fp, e) * interval_g_relative(L, e, ef, top)
    return g_relative(L, f) - total


def kalai_deficit(L: FaceLattice, F) -> GPolynomial:
    """g(P) - g(F) * g(P/F); coefficientwise nonnegative for rational polytopes."""
    f = _fid(L, F)
    return g_poly(L) - interval_g(L, L.bottom, f) * interval_g(L, f, L.top)


def _flag_count(L: FaceLattice, dims: Sequence[int], marked: int | None, f: int | None) -> int:
    if not dims:
        return 1
    counts: dict[int, int] = {}
    for pos, k in enumerate(dims):
        layer = L.of_dim(k)
        if marked is not None and pos == marked - 1:
            layer = [x for x in layer if L.down[x] >> f & 1]
        if pos == 0:
            counts = {x: 1 for x in layer}
        else:
            counts = {y: sum(c for x, c in counts.items() if L.down[y] >> x & 1) for y in layer}
    return sum(counts.values())


def flag_number(L: FaceLattice, I) -> int:
    """Number of chains F1 < ... < Fn with dim Fj = I[j]."""
    I = I if isinstance(I, FlagIndex) else FlagIndex(tuple(I))
    if any(not 0 <= k <= L.d for k in I.dims):
        raise ValueError(f"flag dims must lie in [0, {L.d}]")
    return _flag_count(L, I.dims, None, None)


def relative_flag_number(L: FaceLattice, F, I: FlagIndex) -> int:
    """Number of I-flags whose marked member contains F."""
    f = _fid(L, F)
    if I.marked_k is None:
        raise ValueError("relative flag numbers need a marked position")
    if any(not -1 <= k <= L.d for k in I.dims):
        raise ValueError(f"flag dims must lie in [-1, {L.d}]")
    if I.dims[I.marked_k - 1] < L.dims[f]:
        raise MarkedDimTooSmall(
            f"marked dim {I.dims[I.marked_k - 1]} is below dim F = {L.dims[f]}")
    return _flag_count(L, I.dims, I.marked_k, f)


def check_g_shape(L: FaceLattice, g: GPolynomial) -> None:
    """Post-check: constant term 1 and degree at most d/2."""
    if g[0] != 1 or g.degree > max(L.d, 0) // 2:
        raise AssertionError(f"malformed g-polynomial {g!r} for d={L.d}")


__all__ = [
    "GPolynomial", "FlagIndex", "MarkedDimTooSmall", "NotAFace", "ZERO", "ONE",
    "h_poly", "g_poly", "gbar_poly", "g_relative", "g_relative_by_inversion",
    "stanley_identity_residual", "defining_relation_residual", "decomposition_residual",
    "kalai_deficit", "flag_number", "relative_flag_number", "interval_g", "interval_gbar",
    "interval_g_relative", "interval_h", "check_g_shape",
]
