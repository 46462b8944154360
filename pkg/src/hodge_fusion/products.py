"""Cartesian products of Delta sets, joins, suspension and refinements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cohomology import betti, convolve
from .complex import Cell, DeltaComplex, closure, whitney_complex
from .operators import dirac, square


def product_shift(A: DeltaComplex, B: DeltaComplex) -> int:
    """Offset added to the labels of ``B`` so they sit above those of ``A``.

    This is the largest label of ``A`` whenever ``B`` uses labels >= 1.
    """
    if not len(A) or not len(B):
        return 0
    return max(A.labels) + max(0, 1 - min(B.labels))


@dataclass(frozen=True)
class ProductCell:
    cell: Cell
    x: Cell
    y: Cell
    factor_dims: tuple[int, int]

    @property
    def dim(self) -> int:
        return sum(self.factor_dims)


def product_cells(A: DeltaComplex, B: DeltaComplex) -> list[ProductCell]:
    s = product_shift(A, B)
    out = []
    for x, dx in zip(A.cells, A.dims):
        for y, dy in zip(B.cells, B.dims):
            out.append(ProductCell(x + tuple(v + s for v in y), x, y, (dx, dy)))
    return out


def decode(cell: Sequence[int], A: DeltaComplex, B: DeltaComplex) -> tuple[Cell, Cell]:
    """Split a product cell back into its two factors."""
    s = product_shift(A, B)
    top = max(A.labels)
    x = tuple(v for v in cell if v <= top)
    y = tuple(v - s for v in cell if v > top)
    return x, y


def shannon_product(A: DeltaComplex, B: DeltaComplex) -> DeltaComplex:
    """Pairwise unions of cells with additive dimensions."""
    cells = product_cells(A, B)
    return DeltaComplex([c.cell for c in cells], [c.dim for c in cells])


def power(A: DeltaComplex, n: int) -> DeltaComplex:
    out = A
    for _ in range(n - 1):
        out = shannon_product(out, A)
    return out


def _join_shift(A: DeltaComplex, B: DeltaComplex) -> int:
    if set(A.labels) & set(B.labels):
        return product_shift(A, B)
    return 0


def join(A: DeltaComplex, B: DeltaComplex, mode: str = "closed") -> DeltaComplex:
    """Join of two complexes.

    ``closed`` returns the closure of all unions ``a | b`` together with ``A`` and
    ``B``; ``open`` keeps only the unions. Labels of ``B`` are shifted only if
    they clash with those of ``A``.
    """
    s = _join_shift(A, B)
    Bs = [tuple(v + s for v in y) for y in B.cells]
    unions = [x + y if x[-1] < y[0] else tuple(sorted(x + y)) for x in A.cells for y in Bs]
    if mode == "open":
        return DeltaComplex(unions)
    if mode != "closed":
        raise ValueError(f"unknown join mode {mode!r}")
    return closure(unions + list(A.cells) + Bs)


def suspension(H: DeltaComplex) -> DeltaComplex:
    return join(H, DeltaComplex([[1], [2]]))


def barycentric_refinement(G: DeltaComplex) -> DeltaComplex:
    """Order complex of the inclusion poset; cell ``i`` of ``G`` becomes vertex ``i+1``."""
    edges = [(i + 1, j + 1) for i in range(len(G)) for j in G.faces(i)]
    return whitney_complex(range(1, len(G) + 1), edges)


def geometric_product(A: DeltaComplex, B: DeltaComplex) -> DeltaComplex:
    """Clique complex of the componentwise inclusion graph on pairs of cells.

    The pair of cells ``(A.cells[i], B.cells[j])`` becomes vertex
    ``i * len(B) + j + 1``.
    """
    m = len(B)
    edges = []
    for i in range(len(A)):
        fi = (i,) + A.faces(i)
        for j in range(m):
            fj = (j,) + B.faces(j)
            v = i * m + j + 1
            edges.extend((v, a * m + b + 1) for a in fi for b in fj if (a, b) != (i, j))
    return whitney_complex(range(1, len(A) * m + 1), edges)


def kunneth_check(A: DeltaComplex, B: DeltaComplex) -> bool:
    return betti(shannon_product(A, B)) == convolve(betti(A), betti(B))


def tensor_harmonic(A: DeltaComplex, f: Sequence[int], B: DeltaComplex, g: Sequence[int]) -> np.ndarray:
    """The form ``(x, y) -> f(x) g(y)`` on the cells of ``shannon_product(A, B)``.

    Both inputs must be harmonic; the result then is harmonic as well.
    """
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    for X, v, name in ((A, f, "f"), (B, g, "g")):
        if v.shape != (len(X),):
            raise ValueError(f"{name} has the wrong length")
        if (square(dirac(X).D) @ v).any():
            raise ValueError(f"{name} is not harmonic")
    P = shannon_product(A, B)
    index = {(c.x, c.y): c.cell for c in product_cells(A, B)}
    out = np.zeros(len(P), dtype=np.int64)
    for i, x in enumerate(A.cells):
        for j, y in enumerate(B.cells):
            out[P.index(index[x, y])] = f[i] * g[j]
    return out
