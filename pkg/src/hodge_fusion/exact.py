"""Exact rank, nullity and kernel bases over the rationals.

The fast route reduces modulo a large prime, lifts the kernel vectors back to
the rationals and checks them against the original integer matrix. A checked
lift proves the result: rank can only drop modulo a prime, so a full set of
true kernel vectors pins down the nullity, and their shape pins down the pivot
columns. When the check fails the matrix goes through fraction-free
elimination instead: rows are kept integral and divided by their content after
every pivot step, on int64 while a bound on the next update fits and on Python
integers otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

_SAFE = 2 ** 62
_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
           2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399)


def _integral(M) -> np.ndarray:
    """Integer matrix with the same row space as ``M`` (rows scaled by denominators)."""
    if isinstance(M, np.ndarray) and M.dtype.kind in "iub":
        return M.astype(np.int64) if M.dtype != np.int64 else M.copy()
    arr = np.array(M, dtype=object)
    if arr.size == 0:
        return np.zeros(arr.shape if arr.ndim == 2 else (0, 0), dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    rows = []
    for row in arr:
        fr = [Fraction(v) for v in row]
        den = reduce(math.lcm, (f.denominator for f in fr), 1)
        rows.append([int(f * den) for f in fr])
    out = np.array(rows, dtype=object)
    big = max(abs(v) for r in rows for v in r)
    return out.astype(np.int64) if big < _SAFE else out


def _content(rows: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(rows, axis=1) if rows.shape[1] else np.ones(rows.shape[0], dtype=rows.dtype)
    g[g == 0] = 1
    return g


def _amax(a: np.ndarray) -> int:
    return int(np.max(np.abs(a))) if a.size else 0


def integer_rref(M) -> tuple[np.ndarray, list[int]]:
    """Fraction-free reduced row echelon form.

    Returns ``(R, pivots)``. Row ``r`` of ``R`` has a positive entry in column
    ``pivots[r]`` and every other row is zero there; rows beyond ``len(pivots)``
    vanish. Each row of ``R`` is a positive multiple of the corresponding row of
    the usual reduced echelon form, so the pivot columns are canonical.
    """
    A = _integral(M)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = A[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + nz[np.argmin(np.abs(col[nz]))]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] //= _content(A[r:r + 1])[0]
        if A[r, c] < 0:
            A[r] = -A[r]
        p = A[r, c]
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            sub = A[others]
            if A.dtype != object and (_amax(sub) * int(p) + _amax(sub[:, c]) * _amax(A[r])) >= _SAFE:
                A = A.astype(object)
                sub = A[others]
            sub = sub * p - np.outer(sub[:, c], A[r])
            sub //= _content(sub)[:, None]
            A[others] = sub
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.array(A % p, dtype=np.int64)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r, c:] = A[r, c:] * pow(int(A[r, c]), p - 2, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] = (A[others, c:] - np.outer(A[others, c], A[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _lift(a: int, m: int) -> Fraction | None:
    """Rational reconstruction of a residue with numerator and denominator below sqrt(m/2)."""
    bound = math.isqrt(m // 2)
    r0, r1, t0, t1 = m, a % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1, t0, t1 = r1, r0 - q * r1, t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    return Fraction(r1, t1)


def _lifted_basis(acc, m: int, pivots: list[int], free: list[int], cols: int):
    basis = []
    for j, f in enumerate(free):
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            if acc[r, j]:
                x = _lift(-int(acc[r, j]), m)
                if x is None:
                    return None
                v[c] = x
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        w = [int(x * den) for x in v]
        g = reduce(math.gcd, w)
        basis.append(tuple(x // g for x in w))
    return basis


def _annihilates(A: np.ndarray, basis: list[tuple[int, ...]]) -> bool:
    if not basis or not A.shape[0]:
        return True
    B = np.array(basis, dtype=object).T
    big = max(abs(x) for b in basis for x in b)
    if A.dtype != object and big * max(_amax(A), 1) * A.shape[1] < _SAFE:
        return not (A @ B.astype(np.int64)).any()
    return not any(A.astype(object).dot(B).ravel())


def _modular_kernel(A: np.ndarray) -> list[tuple[int, ...]] | None:
    """Kernel basis from residues modulo several primes, or None if no checked lift was found."""
    cols = A.shape[1]
    pivots: list[int] | None = None
    for p in _PRIMES:
        R, piv = _rref_mod(A, p)
        if pivots is not None and piv != pivots:
            # a bad prime loses rank or pushes pivots to later columns
            if (len(piv), [-c for c in piv]) < (len(pivots), [-c for c in pivots]):
                continue
            pivots = None
        if pivots is None:
            pivots = piv
            free = [f for f in range(cols) if f not in set(piv)]
            acc = R[:len(piv)][:, free].astype(object)
            m = p
        else:
            t = (R[:len(piv)][:, free].astype(object) - acc) * pow(m % p, -1, p) % p
            acc = acc + m * t
            m *= p
        basis = _lifted_basis(acc, m, pivots, free, cols)
        if basis is not None and _annihilates(A, basis):
            return basis
    return None


def _kernel(M) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    A = _integral(M)
    basis = _modular_kernel(A)
    if basis is None:
        basis = _exact_kernel(A)
    return A, basis


def rank_nullity(M) -> tuple[int, int]:
    A, basis = _kernel(M)
    return A.shape[1] - len(basis), len(basis)


def rank(M) -> int:
    return rank_nullity(M)[0]


def nullity(M) -> int:
    return rank_nullity(M)[1]


def kernel_basis(M) -> list[tuple[int, ...]]:
    """Canonical integer basis of the right kernel of ``M``.

    One vector per free column, in column order: the free variable is set
    positive, the other free variables vanish, and the vector is scaled to
    coprime integer entries.
    """
    return _kernel(M)[1]


def _exact_kernel(A) -> list[tuple[int, ...]]:
    R, pivots = integer_rref(A)
    cols = R.shape[1]
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        used = [(r, c) for r, c in enumerate(pivots) if R[r, f] != 0]
        scale = reduce(math.lcm, (int(R[r, c]) for r, c in used), 1)
        v = [0] * cols
        v[f] = scale
        for r, c in used:
            v[c] = -int(R[r, f]) * (scale // int(R[r, c]))
        g = reduce(math.gcd, v)
        basis.append(tuple(x // g for x in v))
    return basis
