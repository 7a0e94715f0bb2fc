"""The standard test corpus of small rational polytopes."""

from __future__ import annotations

from .geometry import (
    Polytope,
    cross_polytope,
    cube,
    join,
    point,
    polygon,
    prism,
    pyramid,
    random_perturbed,
    simplex,
)


def base_polytopes() -> list[Polytope]:
    out = [simplex(d) for d in range(7)]
    out += [cube(d) for d in range(2, 5)]
    out += [cross_polytope(d) for d in range(2, 5)]
    out += [polygon(n) for n in range(3, 9)]
    return out


def composite_polytopes() -> list[Polytope]:
    return [
        pyramid(polygon(5)),
        pyramid(cube(3)),
        pyramid(cross_polytope(3)),
        pyramid(pyramid(polygon(4))),
        prism(simplex(2)),
        prism(simplex(3)),
        prism(polygon(5)),
        prism(polygon(6)),
        prism(cross_polytope(3)),
        join(point(), polygon(6)),
        join(simplex(1), polygon(4)),
        join(polygon(4), polygon(5)),
    ]


def join_pairs() -> list[tuple[Polytope, Polytope, Polytope]]:
    """(F, Q, join(F, Q)) triples; F occupies the first vertices of the join."""
    pairs = [
        (point(), polygon(4)),
        (simplex(1), polygon(4)),
        (polygon(4), point()),
        (polygon(4), polygon(5)),
        (polygon(5), simplex(1)),
        (simplex(2), cube(2)),
    ]
    return [(F, Q, join(F, Q)) for F, Q in pairs]


PERTURBED_SEEDS = {"cube3": 1, "cross3": 2, "pyramid(polygon5)": 3, "prism(polygon5)": 4,
                   "cube4": 5, "cross4": 6}


def perturbed_pairs() -> list[tuple[Polytope, Polytope]]:
    originals = {P.name: P for P in base_polytopes() + composite_polytopes()}
    return [(originals[name], random_perturbed(originals[name], seed))
            for name, seed in PERTURBED_SEEDS.items()]


def standard_corpus() -> list[Polytope]:
    return base_polytopes() + composite_polytopes() + [Q for _, Q in perturbed_pairs()]


def is_simplex(P: Polytope) -> bool:
    return P.n_vertices == P.dim + 1
