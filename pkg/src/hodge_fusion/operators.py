"""Exterior derivative, Dirac matrix and Hodge Laplacian blocks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .complex import Cell, ComplexError, DeltaComplex


class NotDeltaSetError(ComplexError):
    """Raised when the assembled exterior derivative does not square to zero."""

    def __init__(self, matrix: np.ndarray):
        super().__init__("not a Delta-set: d^2 != 0")
        self.matrix = matrix


def incidence_sign(x: Cell, y: Cell,
                   dim_of: Mapping[Cell, int] | Callable[[Cell], int] | None = None) -> int:
    """Signed incidence of ``y`` as a codimension one face of ``x``.

    The sign is ``(-1)**k`` where ``k`` is the position of the removed label in
    the sorted ``x``. This equals the product of the permutation signatures of
    ``(removed,) + y`` and ``x``.
    """
    if len(x) != len(y) + 1:
        return 0
    if dim_of is not None:
        get = dim_of if callable(dim_of) else dim_of.__getitem__
        if get(x) != get(y) + 1:
            return 0
    for k in range(len(x)):
        if x[:k] + x[k + 1:] == tuple(y):
            return -1 if k % 2 else 1
    return 0


@dataclass(frozen=True)
class OperatorBundle:
    d: np.ndarray
    D: np.ndarray
    markers: tuple[int, ...]

    @property
    def L(self) -> np.ndarray:
        return square(self.D)


def exterior_derivative(G: DeltaComplex) -> np.ndarray:
    """The n x n matrix with ``d[i, j] = s(cell_i, cell_j)``."""
    n = len(G)
    d = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(G.cells):
        if len(x) < 2:
            continue
        for k in range(len(x)):
            j = G._index.get(x[:k] + x[k + 1:])
            if j is not None and G.dims[j] + 1 == G.dims[i]:
                d[i, j] = -1 if k % 2 else 1
    return d


def square(M: np.ndarray) -> np.ndarray:
    # floating matmul is exact here: entries of M are tiny integers and every
    # partial sum stays far below 2**53
    Mf = M.astype(np.float64)
    return np.rint(Mf @ Mf).astype(np.int64)


def dirac(G: DeltaComplex) -> OperatorBundle:
    d = exterior_derivative(G)
    return OperatorBundle(d=d, D=d + d.T, markers=G.markers)


def is_valid_delta(G: DeltaComplex) -> bool:
    d = exterior_derivative(G)
    return not square(d).any()


def _check(G: DeltaComplex) -> OperatorBundle:
    op = dirac(G)
    dd = square(op.d)
    if dd.any():
        raise NotDeltaSetError(dd)
    return op


def hodge_blocks(G: DeltaComplex) -> list[np.ndarray]:
    """The diagonal blocks ``L_0, ..., L_q`` of ``L = D^2``."""
    L = square(_check(G).D)
    m = G.markers
    return [L[m[k]:m[k + 1], m[k]:m[k + 1]] for k in range(len(m) - 1)]


def derivative_blocks(G: DeltaComplex) -> list[np.ndarray]:
    """The maps ``d_k`` from k-cells to (k+1)-cells, as f_{k+1} x f_k blocks."""
    d = _check(G).d
    m = G.markers
    return [d[m[k + 1]:m[k + 2], m[k]:m[k + 1]] for k in range(len(m) - 2)]
