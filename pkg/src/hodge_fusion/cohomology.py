"""Betti vectors, harmonic forms, Euler-Poincare and McKean-Singer checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .complex import DeltaComplex, euler_characteristic
from .exact import kernel_basis, nullity
from .operators import hodge_blocks

Betti = tuple[int, ...]


def betti(G: DeltaComplex) -> Betti:
    """Nullities of the Hodge blocks, one per dimension."""
    return tuple(nullity(L) if L.size else 0 for L in hodge_blocks(G))


def harmonic_basis(G: DeltaComplex) -> list[list[tuple[int, ...]]]:
    """Integer kernel bases of each block, embedded as length-n vectors."""
    n = len(G)
    m = G.markers
    out = []
    for k, L in enumerate(hodge_blocks(G)):
        vecs = []
        for v in kernel_basis(L) if L.size else []:
            full = [0] * n
            full[m[k]:m[k + 1]] = v
            vecs.append(tuple(full))
        out.append(vecs)
    return out


def pad(b: Sequence[int], length: int) -> tuple[int, ...]:
    return tuple(b) + (0,) * (length - len(b))


def add(*vs: Sequence[int]) -> tuple[int, ...]:
    n = max((len(v) for v in vs), default=0)
    return tuple(sum(col) for col in zip(*(pad(v, n) for v in vs)))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple(x - y for x, y in zip(pad(a, n), pad(b, n)))


def convolve(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of the product of the two generating polynomials."""
    if not len(a) or not len(b):
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def alternating_sum(v: Sequence[int]) -> int:
    return sum((-1) ** k * x for k, x in enumerate(v))


def format_vector(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def euler_poincare_check(G: DeltaComplex) -> bool:
    return alternating_sum(betti(G)) == euler_characteristic(G)


def mckean_singer_supertrace(G: DeltaComplex, t: float) -> float:
    """Supertrace of the heat kernel exp(-tL)."""
    from .spectral import hodge_spectra

    return float(sum((-1) ** k * np.exp(-t * lam).sum()
                     for k, lam in enumerate(hodge_spectra(G))))


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: tuple[int, ...]

    def __call__(self, t):
        return evaluate(self, t)

    def __mul__(self, other: PoincarePolynomial) -> PoincarePolynomial:
        return PoincarePolynomial(convolve(self.coefficients, other.coefficients))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) or "0"


def poincare_polynomial(b: Sequence[int]) -> PoincarePolynomial:
    return PoincarePolynomial(tuple(int(x) for x in b))


def evaluate(poly: PoincarePolynomial, t):
    acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
    for c in reversed(poly.coefficients):
        acc = acc * t + c
    return acc
