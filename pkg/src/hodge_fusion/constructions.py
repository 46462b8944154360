"""Named complexes used as fixtures and by the ``gen`` command."""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Mapping

from .complex import ComplexError, DeltaComplex, closure, skeleton, unit_sphere, star, whitney_complex
from .fusion import SplitPair, split
from .products import geometric_product, suspension

KINDS = ("cyclic", "complete", "simplex_boundary", "minimal_sphere", "cross_polytope",
         "path", "skeleton_of", "wedge_circles", "random_whitney")

ICOSAHEDRON_FACES = [
    [1, 2, 3], [1, 2, 8], [1, 3, 7], [1, 6, 7], [1, 6, 8], [2, 3, 9], [2, 4, 8],
    [2, 4, 9], [3, 5, 7], [3, 5, 9], [4, 8, 12], [4, 9, 10], [4, 10, 12], [5, 7, 11],
    [5, 9, 10], [5, 10, 11], [6, 7, 11], [6, 8, 12], [6, 11, 12], [10, 11, 12],
]


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: tuple[int, ...] = ()


def cyclic(n: int) -> DeltaComplex:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return closure([(i, i % n + 1) for i in range(1, n + 1)])


def complete(n: int) -> DeltaComplex:
    """The full simplex on ``n`` vertices."""
    return closure([range(1, n + 1)])


def simplex_boundary(q: int) -> DeltaComplex:
    """Proper faces of the simplex on vertices ``1..q+1``, a (q-1)-sphere."""
    if q < 1:
        raise ValueError("q must be positive")
    return closure(combinations(range(1, q + 2), q))


def minimal_sphere(q: int) -> DeltaComplex:
    """One point glued to an open q-cell: two cells, dimensions 0 and q."""
    return DeltaComplex([[0], list(range(1, q + 2))], [0, q])


def cross_polytope(d: int) -> DeltaComplex:
    """Boundary of the d-dimensional cross polytope (iterated suspension of two points)."""
    G = DeltaComplex([[1], [2]])
    for _ in range(d - 1):
        G = suspension(G)
    return G


def path(n: int) -> DeltaComplex:
    return whitney_complex(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def skeleton_of(n: int, k: int) -> DeltaComplex:
    return skeleton(complete(n), k)


def wedge_circles(m: int) -> DeltaComplex:
    """``m`` triangle boundaries sharing vertex 1."""
    edges = []
    for i in range(m):
        a, b = 2 * i + 2, 2 * i + 3
        edges += [(1, a), (a, b), (1, b)]
    return closure(edges) if m else DeltaComplex([[1]])


def random_whitney(n: int, m: int, seed: int = 0) -> DeltaComplex:
    """Clique complex of a uniform random graph with ``n`` vertices and ``m`` edges."""
    pairs = list(combinations(range(1, n + 1), 2))
    rng = random.Random(seed)
    return whitney_complex(range(1, n + 1), rng.sample(pairs, min(m, len(pairs))))


def octahedron() -> DeltaComplex:
    return cross_polytope(3)


def icosahedron() -> DeltaComplex:
    return closure(ICOSAHEDRON_FACES)


def discrete_torus(n: int = 4) -> DeltaComplex:
    """A simplicial torus: the geometric product of two n-cycles."""
    return geometric_product(cyclic(n), cyclic(n))


_GENERATORS = {
    "cyclic": cyclic, "complete": complete, "simplex_boundary": simplex_boundary,
    "minimal_sphere": minimal_sphere, "cross_polytope": cross_polytope, "path": path,
    "skeleton_of": skeleton_of, "wedge_circles": wedge_circles, "random_whitney": random_whitney,
}


def generate(spec: GeneratorSpec | str, *params: int) -> DeltaComplex:
    if isinstance(spec, str):
        spec = GeneratorSpec(spec, tuple(params))
    try:
        fn = _GENERATORS[spec.kind]
    except KeyError:
        raise ValueError(f"unknown generator {spec.kind!r}; choose from {', '.join(KINDS)}") from None
    if any(p < 0 for p in spec.params):
        raise ValueError("generator parameters must be nonnegative")
    return fn(*spec.params)


def load_fixture(name: str):
    """A shipped triangulation (``rp2``, ``mobius``, ``friends``) as a document."""
    from .documents import parse_document

    data = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return parse_document(data)


def connected_sum(M: DeltaComplex, x, H: DeltaComplex, y, matching: Mapping[int, int]) -> SplitPair:
    """Glue ``M`` minus the star of ``x`` to ``H`` minus the ball around ``y``.

    ``matching`` sends the vertices of the unit sphere of ``x`` in ``M`` to
    those of the unit sphere of ``y`` in ``H`` and must induce an isomorphism
    of the two spheres. The result is split into the closed part coming from
    ``M`` and the open part coming from ``H``.
    """
    SM, SH = unit_sphere(M, x), unit_sphere(H, y)
    if set(matching) != set(SM.labels) or sorted(matching.values()) != SH.labels:
        raise ComplexError("matching must be a bijection between the sphere vertices")
    image = DeltaComplex([[matching[v] for v in c] for c in SM.cells], list(SM.dims))
    if image != SH:
        raise ComplexError("matching does not map one unit sphere onto the other")

    inverse = {v: k for k, v in matching.items()}
    ball = set(SH.cells) | set(star(H, y))
    rest = [(c, d) for c, d in zip(H.cells, H.dims) if c not in ball]
    fresh = max(M.labels) + 1
    for v in sorted({v for c, _ in rest for v in c} - set(inverse)):
        inverse[v] = fresh
        fresh += 1
    removed = set(star(M, x))
    K = [(c, d) for c, d in zip(M.cells, M.dims) if c not in removed]
    U = [(tuple(sorted(inverse[v] for v in c)), d) for c, d in rest]
    clash = {c for c, _ in K} & {c for c, _ in U}
    if clash:
        raise ComplexError(f"glued cells collide: {sorted(clash)[0]}")
    G = DeltaComplex([c for c, _ in K + U], [d for _, d in K + U])
    return split(G, [c for c, _ in K])
