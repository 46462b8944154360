"""Spectra of Hodge blocks and the left padded order on sequences."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import DeltaComplex, classify, SubsetClass, ComplexError
from .operators import hodge_blocks

ZERO = 1e-9


class NotSymmetricError(ValueError):
    pass


def eigenvalues(M) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix."""
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetricError("matrix must be square")
    if A.size == 0:
        return np.zeros(0)
    if not np.array_equal(A, A.T):
        raise NotSymmetricError("matrix is not symmetric")
    return np.linalg.eigvalsh(A)


def zero_count(spectrum: Sequence[float], threshold: float = ZERO) -> int:
    return int(np.sum(np.abs(np.asarray(spectrum)) < threshold))


def left_pad(x: Sequence[float], n: int) -> np.ndarray:
    x = np.sort(np.asarray(x, dtype=np.float64))
    return np.concatenate([np.zeros(max(0, n - x.size)), x])


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    n = max(len(x), len(y))
    return left_pad(x, n), left_pad(y, n)


def seq_leq(x: Sequence[float], y: Sequence[float], tol: float | None = None) -> bool:
    """``x <= y`` after sorting and left padding with zeros.

    With ``tol=None`` each comparison allows ``1e-9 * (1 + max|entry|)``.
    """
    a, b = _pair(x, y)
    if not a.size:
        return True
    if tol is None:
        tol = 1e-9 * (1 + max(np.abs(a).max(), np.abs(b).max()))
    return bool(np.all(a <= b + tol))


def seq_sum(x: Sequence[float], y: Sequence[float]) -> np.ndarray:
    a, b = _pair(x, y)
    return a + b


def seq_merge(x: Sequence[float], y: Sequence[float]) -> np.ndarray:
    return np.sort(np.concatenate([np.asarray(x, dtype=np.float64),
                                   np.asarray(y, dtype=np.float64)]))


def direct_sum(A, B) -> np.ndarray:
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    out = np.zeros((A.shape[0] + B.shape[0],) * 2, dtype=np.result_type(A, B))
    out[:A.shape[0], :A.shape[0]] = A
    out[A.shape[0]:, A.shape[0]:] = B
    return out


def padded_sum(A, B) -> np.ndarray:
    """Sum of two square matrices after padding the smaller one at the top left."""
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    n = max(A.shape[0], B.shape[0])
    out = np.zeros((n, n), dtype=np.result_type(A, B))
    out[n - A.shape[0]:, n - A.shape[0]:] += A
    out[n - B.shape[0]:, n - B.shape[0]:] += B
    return out


def matrix_leq(A, B, tol: float | None = None) -> bool:
    return seq_leq(eigenvalues(A), eigenvalues(B), tol)


def hodge_spectra(G: DeltaComplex) -> list[np.ndarray]:
    return [eigenvalues(L) for L in hodge_blocks(G)]


def spectrum(G: DeltaComplex) -> np.ndarray:
    blocks = hodge_spectra(G)
    return np.sort(np.concatenate(blocks)) if blocks else np.zeros(0)


@dataclass(frozen=True)
class SpectralCheck:
    whole: bool
    blocks: tuple[bool, ...]

    def __bool__(self) -> bool:
        return self.whole and all(self.blocks)


def _part(G: DeltaComplex, A: Iterable) -> DeltaComplex:
    A = list(A.cells if isinstance(A, DeltaComplex) else A)
    if classify(G, A) is SubsetClass.NEITHER:
        raise ComplexError("subset is neither open nor closed")
    return G.sub(A)


def _blocks(spectra: list[np.ndarray], n: int) -> list[np.ndarray]:
    return spectra + [np.zeros(0)] * (n - len(spectra))


def check_monotonicity(G: DeltaComplex, A: Iterable, tol: float | None = None) -> SpectralCheck:
    """Eigenvalues of an open or closed part never exceed those of ``G``."""
    H = _part(G, A)
    sg, sh = hodge_spectra(G), hodge_spectra(H)
    n = max(len(sg), len(sh))
    sg, sh = _blocks(sg, n), _blocks(sh, n)
    whole = seq_leq(np.concatenate(sh) if sh else [], np.concatenate(sg) if sg else [], tol)
    return SpectralCheck(whole, tuple(seq_leq(a, b, tol) for a, b in zip(sh, sg)))


def check_fusion_bound(G: DeltaComplex, K: Iterable, tol: float | None = None) -> SpectralCheck:
    """Merged spectra of a closed part and its open complement versus twice those of ``G``.

    Also confirms that the spectrum of the block sum ``L_K + L_U`` is the
    merge of the two spectra.
    """
    Kc = _part(G, K)
    if classify(G, Kc.cells) not in (SubsetClass.CLOSED, SubsetClass.CLOPEN):
        raise ComplexError("K must be closed")
    U = G.sub(c for c in G.cells if c not in Kc)
    sg, sk, su = hodge_spectra(G), hodge_spectra(Kc), hodge_spectra(U)
    n = max(len(sg), len(sk), len(su))
    sg, sk, su = _blocks(sg, n), _blocks(sk, n), _blocks(su, n)

    lk, lu = hodge_blocks(Kc), hodge_blocks(U)
    empty = np.zeros((0, 0), dtype=np.int64)
    merged_ok = True
    for k in range(n):
        a = lk[k] if k < len(lk) else empty
        b = lu[k] if k < len(lu) else empty
        direct = eigenvalues(direct_sum(a, b))
        merged_ok &= bool(np.allclose(direct, seq_merge(sk[k], su[k]), atol=1e-8))

    whole_m = seq_merge(np.concatenate(sk) if sk else [], np.concatenate(su) if su else [])
    whole_g = 2 * (np.concatenate(sg) if sg else np.zeros(0))
    whole = merged_ok and seq_leq(whole_m, whole_g, tol)
    per = tuple(seq_leq(seq_merge(a, b), 2 * c, tol) for a, b, c in zip(sk, su, sg))
    return SpectralCheck(whole, per)
