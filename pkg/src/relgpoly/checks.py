"""Identity and inequality checks over all faces of one polytope.

Each check returns a plain dict ready for JSON: name, pass flag, number of
cases examined and the failing cases with their exact residuals.
"""

from __future__ import annotations

from .geometry import Polytope
from .gpoly import (
    decomposition_residual,
    g_poly,
    g_relative,
    g_relative_by_inversion,
    interval_g,
    kalai_deficit,
    stanley_identity_residual,
)
from .lattice import FaceLattice, bits
from .stress import g1_geometric, g2_geometric

CHECKS = ("stanley", "inversion", "decomposition", "kalai", "nonneg", "relnonneg",
          "thm5", "joinunit")

MAX_FAILURES_LISTED = 20


def _face_label(L: FaceLattice, f: int) -> dict:
    return {"id": f, "dim": L.dims[f], "vertices": sorted(bits(L.masks[f]))}


def _result(name: str, cases: int, failures: list, **extra) -> dict:
    out = {"check": name, "pass": not failures, "cases": cases,
           "n_failures": len(failures), "failures": failures[:MAX_FAILURES_LISTED]}
    out.update(extra)
    return out


def check_stanley(P: Polytope) -> dict:
    L = P.lattice
    res = stanley_identity_residual(L)
    return _result("stanley", 1, [] if res.is_zero() else [{"residual": res.to_list()}],
                   residual=res.to_list())


def check_inversion(P: Polytope) -> dict:
    L = P.lattice
    failures = []
    for f in range(len(L)):
        a, b = g_relative(L, f), g_relative_by_inversion(L, f)
        if a != b:
            failures.append({"face": _face_label(L, f), "g_relative": a.to_list(),
                             "by_inversion": b.to_list(), "residual": (a - b).to_list()})
    return _result("inversion", len(L), failures)


def comparable_pairs(L: FaceLattice):
    for f in range(len(L)):
        for fp in bits(L.down[f]):
            yield fp, f


def check_decomposition(P: Polytope, pairs=None) -> dict:
    L = P.lattice
    failures = []
    cases = 0
    for fp, f in (pairs if pairs is not None else comparable_pairs(L)):
        cases += 1
        res = decomposition_residual(L, fp, f)
        if not res.is_zero():
            failures.append({"lower": _face_label(L, fp), "face": _face_label(L, f),
                             "residual": res.to_list()})
    return _result("decomposition", cases, failures)


def check_kalai(P: Polytope) -> dict:
    L = P.lattice
    failures = []
    for f in range(len(L)):
        deficit = kalai_deficit(L, f)
        if not deficit.is_nonnegative():
            failures.append({"face": _face_label(L, f), "deficit": deficit.to_list()})
    return _result("kalai", len(L), failures)


def check_nonneg(P: Polytope) -> dict:
    """g of P, of every face, and of every quotient P/F."""
    L = P.lattice
    failures = []
    cases = 0
    for f in range(len(L)):
        for what, g in (("face", interval_g(L, L.bottom, f)), ("quotient", interval_g(L, f, L.top))):
            cases += 1
            if not g.is_nonnegative():
                failures.append({"face": _face_label(L, f), "of": what, "g": g.to_list()})
    return _result("nonneg", cases, failures)


def check_relnonneg(P: Polytope) -> dict:
    L = P.lattice
    failures = []
    for f in range(len(L)):
        g = g_relative(L, f)
        if not g.is_nonnegative():
            failures.append({"face": _face_label(L, f), "g_relative": g.to_list()})
    return _result("relnonneg", len(L), failures)


def check_thm5(P: Polytope) -> dict:
    L = P.lattice
    failures = []
    for f in range(len(L)):
        g = g_relative(L, f)
        geo = (g1_geometric(P, f), g2_geometric(P, f))
        if geo != (g[1], g[2]):
            failures.append({"face": _face_label(L, f), "g_relative": g.to_list(),
                             "g1_geometric": geo[0], "g2_geometric": geo[1]})
    return _result("thm5", len(L), failures)


def join_decompositions(L: FaceLattice) -> list[tuple[int, int]]:
    """Pairs (F, G) of proper nonempty faces with P the free join of F and G."""
    full = L.masks[L.top]
    out = []
    for f in range(1, len(L) - 1):
        g = L.find(bits(full ^ L.masks[f]))
        if g is None or g in (L.bottom, L.top):
            continue
        below_f = list(bits(L.down[f]))
        below_g = list(bits(L.down[g]))
        if len(below_f) * len(below_g) != len(L):
            continue
        ok = True
        for a in below_f:
            for b in below_g:
                c = L.find(bits(L.masks[a] | L.masks[b]))
                if c is None or L.dims[c] != L.dims[a] + L.dims[b] + 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append((f, g))
    return out


def check_joinunit(P: Polytope) -> dict:
    """g(P, F) == 1 for every face F that P is a join over."""
    L = P.lattice
    failures = []
    decomps = join_decompositions(L)
    for f, _ in decomps:
        g = g_relative(L, f)
        if g != 1:
            failures.append({"face": _face_label(L, f), "g_relative": g.to_list(), "expected": [1]})
    return _result("joinunit", len(decomps), failures)


RUNNERS = {
    "stanley": check_stanley,
    "inversion": check_inversion,
    "decomposition": check_decomposition,
    "kalai": check_kalai,
    "nonneg": check_nonneg,
    "relnonneg": check_relnonneg,
    "thm5": check_thm5,
    "joinunit": check_joinunit,
}


def parse_checks(text: str) -> list[str]:
    if text.strip() == "all":
        return list(CHECKS)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [n for n in names if n not in RUNNERS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return list(dict.fromkeys(names))


def run_checks(P: Polytope, names) -> list[dict]:
    return [RUNNERS[n](P) for n in names]


def g_summary(P: Polytope) -> list[int]:
    return g_poly(P.lattice).to_list()
