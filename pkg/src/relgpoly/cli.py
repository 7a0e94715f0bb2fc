"""Command line front end.

    relgpoly gen <family> <params...> [-o FILE]
    relgpoly compute FILE [--face SEL]
    relgpoly verify FILE --checks LIST|all
    relgpoly batch DIR --checks LIST|all [--jobs N] [--force]

JSON reports go to stdout, a short human summary to stderr. Exit status is
0 when every check passes, 1 on a check failure and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import geometry as geo
from .checks import CHECKS, parse_checks, run_checks
from .geometry import Polytope, project_to_affine_hull
from .gpoly import (
    FlagIndex,
    flag_number,
    g_poly,
    g_relative,
    g_relative_by_inversion,
    gbar_poly,
    h_poly,
    kalai_deficit,
)
from .lattice import NotAFace, NotALattice, bits
from .stress import dump, g1_geometric, g2_geometric, stress_basis, stress_matrix

MAX_VERTICES = 64
MAX_DIM = 6
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class InputError(Exception):
    pass


class ParseError(InputError):
    pass


class UnknownFamily(InputError):
    pass


class BadParams(InputError):
    pass


# -- polytope files ------------------------------------------------------------

def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"coordinate {x!r} is not an exact rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x.strip()):
        return Fraction(x.strip())
    raise ParseError(f"coordinate {x!r} is not an integer or p/q string")


def polytope_to_json(P: Polytope) -> dict:
    return {"name": P.name, "vertices": [[str(x) for x in v] for v in P.vertices]}


def read_vertices(path) -> tuple[str, list[tuple[Fraction, ...]]]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise ParseError(f"{path}: expected an object with a 'vertices' list")
    rows = data["vertices"]
    if not rows or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{path}: vertices must be a nonempty list of lists")
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"{path}: vertex rows have different lengths")
    verts = [tuple(parse_rational(x) for x in r) for r in rows]
    return str(data.get("name", Path(path).stem)), verts


def load_polytope(path, force: bool = False) -> Polytope:
    name, verts = read_vertices(path)
    if not force:
        if len(verts) > MAX_VERTICES:
            raise InputError(f"{path}: {len(verts)} vertices exceeds {MAX_VERTICES} (use --force)")
        try:
            dim, _ = project_to_affine_hull(verts)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from exc
        if dim > MAX_DIM:
            raise InputError(f"{path}: dimension {dim} exceeds {MAX_DIM} (use --force)")
    try:
        return Polytope(verts, name=name)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


# -- generation ------------------------------------------------------------------

_NAMED = {"point": geo.point, "segment": lambda: geo.simplex(1),
          "triangle": lambda: geo.simplex(2), "square": lambda: geo.cube(2)}
_SIMPLE = {"simplex": geo.simplex, "cube": geo.cube, "cross": geo.cross_polytope,
           "polygon": geo.polygon}


def polytope_from_token(token: str) -> Polytope:
    """``point``, ``square``, ``cube3``, ``polygon5``... or a JSON file path."""
    if token in _NAMED:
        P = _NAMED[token]()
        P.name = token
        return P
    m = re.fullmatch(r"(simplex|cube|cross|polygon)(\d+)", token)
    if m:
        return _build_simple(m.group(1), [m.group(2)])
    if token.endswith(".json"):
        return load_polytope(token)
    raise BadParams(f"cannot interpret polytope {token!r}")


def _build_simple(family: str, params: list[str]) -> Polytope:
    if len(params) != 1 or not params[0].isdigit():
        raise BadParams(f"{family} takes one nonnegative integer parameter")
    try:
        return _SIMPLE[family](int(params[0]))
    except ValueError as exc:
        raise BadParams(str(exc)) from exc


def cmd_gen(family: str, params: list[str]) -> Polytope:
    if family in _SIMPLE:
        return _build_simple(family, params)
    if family in ("pyramid", "prism"):
        if len(params) != 1:
            raise BadParams(f"{family} takes one polytope")
        return getattr(geo, family)(polytope_from_token(params[0]))
    if family == "join":
        if len(params) != 2:
            raise BadParams("join takes two polytopes")
        P, Q = (polytope_from_token(t) for t in params)
        return geo.join(P, Q, name=f"join({P.name},{Q.name})")
    raise UnknownFamily(f"unknown family {family!r}")


# -- compute ----------------------------------------------------------------------

_DIM_WORDS = {"vertex": 0, "edge": 1}


def select_face(P: Polytope, sel: str) -> int:
    """Face selector: ``0,1,3`` (vertex set), ``DIM:INDEX``, ``vertex:I``,
    ``edge:I``, ``facet:I``, ``empty`` or ``top``."""
    L = P.lattice
    sel = sel.strip()
    if sel == "empty":
        return L.bottom
    if sel == "top":
        return L.top
    if ":" in sel:
        kind, _, idx = sel.partition(":")
        if kind == "facet":
            dim = L.d - 1
        elif kind in _DIM_WORDS:
            dim = _DIM_WORDS[kind]
        else:
            try:
                dim = int(kind)
            except ValueError:
                raise ParseError(f"bad face selector {sel!r}") from None
        try:
            k = int(idx)
        except ValueError:
            raise ParseError(f"bad face selector {sel!r}") from None
        layer = L.of_dim(dim)
        if not 0 <= k < len(layer):
            raise NotAFace(f"no face {k} of dim {dim} (there are {len(layer)})")
        return layer[k]
    try:
        verts = [int(x) for x in sel.strip("{}").split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"bad face selector {sel!r}") from None
    f = L.find(verts)
    if f is None:
        raise NotAFace(f"vertex set {sorted(verts)} is not a face")
    return f


def _flag_vector(P: Polytope) -> dict[str, int]:
    L = P.lattice
    out = {}
    for size in range(0, L.d + 2):
        for dims in combinations(range(L.d + 1), size):
            out[",".join(map(str, dims))] = flag_number(L, FlagIndex(dims))
    return out


def cmd_compute(P: Polytope, face: str | None = None, flags: bool = False,
                dump_stress: bool = False) -> dict:
    L = P.lattice
    report = {"name": P.name, "dim": P.dim, "n_vertices": P.n_vertices,
              "f_vector": list(L.counts_by_dim),
              "h": h_poly(L).to_list(), "g": g_poly(L).to_list(), "gbar": gbar_poly(L).to_list()}
    if flags:
        report["flag_numbers"] = _flag_vector(P)
    if face is not None:
        f = select_face(P, face)
        rel = g_relative(L, f)
        report["face"] = {"id": f, "dim": L.dims[f], "vertices": sorted(bits(L.masks[f])),
                          "g_relative": rel.to_list(),
                          "g_relative_by_inversion": g_relative_by_inversion(L, f).to_list(),
                          "kalai_deficit": kalai_deficit(L, f).to_list(),
                          "g1_geometric": g1_geometric(P, f),
                          "g2_geometric": g2_geometric(P, f)}
    if dump_stress and P.dim >= 1:
        fw = geo.framework_of(P)
        print(dump(stress_matrix(fw), stress_basis(fw)), file=sys.stderr)
    return report


def cmd_verify(P: Polytope, checks: list[str]) -> dict:
    results = run_checks(P, checks)
    return {"name": P.name, "dim": P.dim, "g": g_poly(P.lattice).to_list(),
            "checks": results, "pass": all(r["pass"] for r in results)}


def _batch_one(args):
    path, checks, force, timing = args
    t0 = time.perf_counter()
    try:
        P = load_polytope(path, force=force)
        entry = {"file": Path(path).name, **cmd_verify(P, checks)}
    except (InputError, NotALattice, ValueError) as exc:
        entry = {"file": Path(path).name, "error": str(exc), "pass": False}
    if timing:
        entry["seconds"] = round(time.perf_counter() - t0, 4)
    return entry


def cmd_batch(directory, checks: list[str], jobs: int = 1, force: bool = False,
              timing: bool = False) -> dict:
    d = Path(directory)
    if not d.is_dir():
        raise InputError(f"{directory} is not a directory")
    files = sorted(str(p) for p in d.glob("*.json"))
    work = [(f, checks, force, timing) for f in files]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_batch_one, work))
    else:
        entries = [_batch_one(w) for w in work]
    n_fail = sum(1 for e in entries if "checks" in e for c in e["checks"] if not c["pass"])
    n_err = sum(1 for e in entries if "error" in e)
    return {"checks": checks, "files": entries,
            "summary": {"files": len(entries), "errors": n_err, "check_failures": n_fail,
                        "checks_run": sum(len(e.get("checks", ())) for e in entries)}}


# -- entry point ---------------------------------------------------------------------

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _summarize(entry: dict) -> None:
    for c in entry.get("checks", ()):
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status} {entry.get('name', '?')} {c['check']} "
              f"({c['cases']} cases, {c['n_failures']} failures)", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relgpoly", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a polytope file")
    g.add_argument("family")
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")

    c = sub.add_parser("compute", help="g, h, gbar and relative invariants")
    c.add_argument("file")
    c.add_argument("--face")
    c.add_argument("--flags", action="store_true", help="include all flag numbers")
    c.add_argument("--dump-stress", action="store_true",
                   help="print the stress matrix and kernel basis to stderr")
    c.add_argument("--force", action="store_true")

    v = sub.add_parser("verify", help="check identities and inequalities")
    v.add_argument("file")
    v.add_argument("--checks", default="all", help=f"comma list from {','.join(CHECKS)} or 'all'")
    v.add_argument("--force", action="store_true")

    b = sub.add_parser("batch", help="verify every *.json file in a directory")
    b.add_argument("dir")
    b.add_argument("--checks", default="all")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--force", action="store_true")
    b.add_argument("--timing", action="store_true", help="add per-file seconds to the report")

    gc = sub.add_parser("gen-corpus", help="write the standard corpus into a directory")
    gc.add_argument("dir")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            P = cmd_gen(args.family, args.params)
            text = json.dumps(polytope_to_json(P), indent=2) + "\n"
            if args.output:
                Path(args.output).write_text(text)
                print(f"wrote {P.name} ({P.n_vertices} vertices) to {args.output}", file=sys.stderr)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "gen-corpus":
            from .corpus import standard_corpus
            out = Path(args.dir)
            out.mkdir(parents=True, exist_ok=True)
            for k, P in enumerate(standard_corpus()):
                safe = re.sub(r"[^A-Za-z0-9]+", "_", P.name).strip("_")
                (out / f"{k:02d}_{safe}.json").write_text(json.dumps(polytope_to_json(P), indent=2) + "\n")
            return EXIT_OK
        if args.command == "compute":
            P = load_polytope(args.file, force=args.force)
            _emit(cmd_compute(P, args.face, flags=args.flags, dump_stress=args.dump_stress))
            return EXIT_OK
        checks = parse_checks(args.checks)
        if args.command == "verify":
            P = load_polytope(args.file, force=args.force)
            report = cmd_verify(P, checks)
            _emit(report)
            _summarize(report)
            return EXIT_OK if report["pass"] else EXIT_FAIL
        if args.command == "batch":
            report = cmd_batch(args.dir, checks, jobs=args.jobs, force=args.force,
                               timing=args.timing)
            _emit(report)
            for e in report["files"]:
                if "error" in e:
                    print(f"ERROR {e['file']}: {e['error']}", file=sys.stderr)
                _summarize(e)
            s = report["summary"]
            print(f"{s['files']} files, {s['checks_run']} checks, "
                  f"{s['check_failures']} failures, {s['errors']} errors", file=sys.stderr)
            if s["check_failures"]:
                return EXIT_FAIL
            return EXIT_INPUT if s["errors"] else EXIT_OK
    except (InputError, NotAFace, NotALattice, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
