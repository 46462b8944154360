"""Closed/open splits, interface cohomology and flip dynamics."""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .cohomology import Betti, add, betti, harmonic_basis, pad, sub
from .complex import Cell, ComplexError, DeltaComplex, format_cell, missing_face
from .exact import rank


class NotClosedError(ComplexError):
    def __init__(self, cell: Cell, face: Cell):
        super().__init__(f"K is not closed: {format_cell(cell)} lacks face {format_cell(face)}")
        self.cell = cell
        self.face = face


class ProjectionMismatch(AssertionError):
    """The projection route and the difference route for b(I) disagree."""

    def __init__(self, projected: Betti, difference: Betti):
        super().__init__(f"interface nullity {projected} differs from bK+bU-bG = {difference}")
        self.projected = projected
        self.difference = difference


@dataclass(frozen=True)
class SplitPair:
    """A complex ``G`` with a closed part ``K`` and its open complement ``U``.

    ``K`` and ``U`` hold cell indices into ``G``.
    """
    G: DeltaComplex
    K: frozenset[int]

    @cached_property
    def U(self) -> frozenset[int]:
        return frozenset(range(len(self.G))) - self.K

    @cached_property
    def closed_part(self) -> DeltaComplex:
        return self.G.sub(self.G.cells[i] for i in self.K)

    @cached_property
    def open_part(self) -> DeltaComplex:
        return self.G.sub(self.G.cells[i] for i in self.U)

    def k_cells(self) -> list[Cell]:
        return [self.G.cells[i] for i in sorted(self.K)]

    def u_cells(self) -> list[Cell]:
        return [self.G.cells[i] for i in sorted(self.U)]


def split(G: DeltaComplex, K_cells: Iterable[Iterable[int]]) -> SplitPair:
    K_cells = [tuple(c) for c in (K_cells.cells if isinstance(K_cells, DeltaComplex) else K_cells)]
    bad = missing_face(G, K_cells)
    if bad is not None:
        raise NotClosedError(*bad)
    return SplitPair(G, frozenset(G.index(c) for c in K_cells))


def pairs_decomposition(bI: Sequence[int]) -> list[tuple[int, int]] | None:
    """Write ``bI`` as a sum of ``c_j (e_j + e_{j+1})`` greedily from below.

    Returns the nonzero ``(j, c_j)`` or None when no such decomposition exists.
    """
    c_prev = 0
    out = []
    for j, v in enumerate(bI):
        c = v - c_prev
        if c < 0:
            return None
        if j == len(bI) - 1:
            if c:
                return None
        elif c:
            out.append((j, c))
        c_prev = c
    return out


@dataclass(frozen=True)
class FusionReport:
    bG: Betti
    bK: Betti
    bU: Betti
    bI: Betti
    inequality_holds: bool
    pairs: list[tuple[int, int]] | None

    @property
    def equality(self) -> bool:
        return not any(self.bI)


def fusion_report(s: SplitPair) -> FusionReport:
    bG, bK, bU = betti(s.G), betti(s.closed_part), betti(s.open_part)
    n = max(len(bG), len(bK), len(bU))
    bG, bK, bU = pad(bG, n), pad(bK, n), pad(bU, n)
    bI = sub(add(bK, bU), bG)
    return FusionReport(bG, bK, bU, bI, all(v >= 0 for v in bI), pairs_decomposition(bI))


def _embedded_basis(H: DeltaComplex, G: DeltaComplex) -> list[list[tuple[int, ...]]]:
    """Harmonic bases of ``H`` rewritten on the cell indices of ``G``."""
    pos = [G.index(c) for c in H.cells]
    out = []
    for vecs in harmonic_basis(H):
        block = []
        for v in vecs:
            w = [0] * len(G)
            for i, x in zip(pos, v):
                w[i] = x
            block.append(tuple(w))
        out.append(block)
    return out


def interface_nullity(s: SplitPair, check: bool = True) -> Betti:
    """Dimension of the kernel of the projection of harmonic forms of K and U
    onto the harmonic forms of G, per degree.

    With ``check`` set, the result is compared against ``bK + bU - bG`` and a
    :class:`ProjectionMismatch` is raised on disagreement.
    """
    hg = harmonic_basis(s.G)
    hk = _embedded_basis(s.closed_part, s.G)
    hu = _embedded_basis(s.open_part, s.G)
    n = max(len(hg), len(hk), len(hu))
    out = []
    for p in range(n):
        A = (hk[p] if p < len(hk) else []) + (hu[p] if p < len(hu) else [])
        B = hg[p] if p < len(hg) else []
        if not A:
            out.append(0)
            continue
        if not B:
            out.append(len(A))
            continue
        M = np.array(B, dtype=object) @ np.array(A, dtype=object).T
        out.append(len(A) - rank(M))
    result = tuple(out)
    if check:
        diff = fusion_report(s).bI
        if pad(result, len(diff)) != pad(diff, len(result)):
            raise ProjectionMismatch(result, diff)
    return result


# flip dynamics

TO_OPEN = "to_open"
TO_CLOSED = "to_closed"


@dataclass(frozen=True)
class Move:
    cell: Cell
    kind: str  # TO_OPEN: K -> U, TO_CLOSED: U -> K


def flip_moves(s: SplitPair) -> list[Move]:
    """Cells that can change sides while keeping K closed, in canonical order."""
    G = s.G
    moves = []
    for i in range(len(G)):
        if i in s.K:
            if not any(j in s.K for j in G.cofaces(i)):
                moves.append(Move(G.cells[i], TO_OPEN))
        elif not any(j in s.U for j in G.faces(i)):
            moves.append(Move(G.cells[i], TO_CLOSED))
    return moves


def apply_move(s: SplitPair, move: Move) -> SplitPair:
    i = s.G.index(move.cell)
    if move.kind == TO_OPEN:
        if i not in s.K or any(j in s.K for j in s.G.cofaces(i)):
            raise ComplexError(f"cannot move {format_cell(move.cell)} to the open part")
        return SplitPair(s.G, s.K - {i})
    if i in s.K or any(j in s.U for j in s.G.faces(i)):
        raise ComplexError(f"cannot move {format_cell(move.cell)} to the closed part")
    return SplitPair(s.G, s.K | {i})


def _unit(k: int, sign: int, n: int) -> tuple[int, ...]:
    v = [0] * n
    if 0 <= k < n:
        v[k] = sign
    return tuple(v)


@dataclass(frozen=True)
class DichotomyRecord:
    move: Move
    k: int
    dK: Betti
    dU: Betti
    case_K: str | None  # e.g. "+e_k" / "-e_{k-1}"; None means neither case
    case_U: str | None

    @property
    def ok(self) -> bool:
        return self.case_K is not None and self.case_U is not None


def _classify_delta(delta: Betti, cases: list[tuple[str, int, int]]) -> str | None:
    n = len(delta)
    for name, idx, sign in cases:
        if 0 <= idx < n and delta == _unit(idx, sign, n):
            return name
    return None


def _delta(before: Betti, after: Betti, n: int) -> Betti:
    return sub(pad(after, n), pad(before, n))


def dichotomy_track(s: SplitPair, move: Move, after: SplitPair | None = None,
                    before_betti: tuple[Betti, Betti] | None = None,
                    after_betti: tuple[Betti, Betti] | None = None) -> DichotomyRecord:
    """Record how b(K) and b(U) change across a move and name the case.

    Gaining a k-cell, K changes by +e_k or -e_{k-1}; losing one, U changes by
    -e_k or +e_{k+1}. The reverse move flips every sign.
    """
    after = after or apply_move(s, move)
    bK0, bU0 = before_betti or (betti(s.closed_part), betti(s.open_part))
    bK1, bU1 = after_betti or (betti(after.closed_part), betti(after.open_part))
    n = max(len(s.G.markers) - 1, 1)
    k = s.G.dim(move.cell)
    dK, dU = _delta(bK0, bK1, n), _delta(bU0, bU1, n)
    sgn = 1 if move.kind == TO_CLOSED else -1
    case_K = _classify_delta(dK, [("+e_k" if sgn > 0 else "-e_k", k, sgn),
                                     ("-e_{k-1}" if sgn > 0 else "+e_{k-1}", k - 1, -sgn)])
    case_U = _classify_delta(dU, [("-e_k" if sgn > 0 else "+e_k", k, -sgn),
                                     ("+e_{k+1}" if sgn > 0 else "-e_{k+1}", k + 1, sgn)])
    return DichotomyRecord(move, k, dK, dU, case_K, case_U)


def interface_norm(bK: Betti, bU: Betti, bG: Betti) -> int:
    return sum(abs(v) for v in sub(add(bK, bU), bG))


@dataclass(frozen=True)
class TraceStep:
    step: int
    pi: int
    move: Move | None
    accepted: bool
    record: DichotomyRecord | None = None


@dataclass
class AnnealResult:
    best: SplitPair
    best_pi: int
    trace: list[TraceStep] = field(default_factory=list)


def linear_schedule(start: float = 0.1, stop: float = 5.0) -> Callable[[int, int], float]:
    def beta(step: int, steps: int) -> float:
        if steps <= 1:
            return stop
        return start + (stop - start) * step / (steps - 1)
    return beta


class FlipState:
    """A split together with a seeded generator and the history of moves."""

    def __init__(self, split_pair: SplitPair, seed: int | None = 0):
        self.split = split_pair
        self.rng = random.Random(seed)
        self.history: list[tuple[Move, bool]] = []
        self.bG = betti(split_pair.G)
        self.bK = betti(split_pair.closed_part)
        self.bU = betti(split_pair.open_part)

    @property
    def pi(self) -> int:
        return interface_norm(self.bK, self.bU, self.bG)

    def propose(self) -> tuple[Move, SplitPair, Betti, Betti] | None:
        moves = flip_moves(self.split)
        if not moves:
            return None
        move = self.rng.choice(moves)
        nxt = apply_move(self.split, move)
        return move, nxt, betti(nxt.closed_part), betti(nxt.open_part)


def anneal_search(G: DeltaComplex, steps: int, beta_schedule: Callable[[int, int], float] | None = None,
                  seed: int | None = 0, initial: SplitPair | None = None) -> AnnealResult:
    """Metropolis search over flip moves maximising ``||bK + bU - bG||_1``.

    Starts from ``initial`` (default: empty K). Uphill and level moves are
    always taken, a loss of ``delta`` is taken with probability
    ``exp(-beta * delta)``. Every proposal is classified by
    :func:`dichotomy_track` and stored in the trace.
    """
    beta = beta_schedule or linear_schedule()
    state = FlipState(initial or SplitPair(G, frozenset()), seed)
    best, best_pi = state.split, state.pi
    result = AnnealResult(best, best_pi)
    for t in range(steps):
        prop = state.propose()
        if prop is None:
            result.trace.append(TraceStep(t, state.pi, None, False))
            continue
        move, nxt, bK1, bU1 = prop
        rec = dichotomy_track(state.split, move, nxt, (state.bK, state.bU), (bK1, bU1))
        new_pi = interface_norm(bK1, bU1, state.bG)
        loss = state.pi - new_pi
        accept = loss <= 0 or state.rng.random() < math.exp(-beta(t, steps) * loss)
        if accept:
            state.split, state.bK, state.bU = nxt, bK1, bU1
        state.history.append((move, accept))
        result.trace.append(TraceStep(t, state.pi, move, accept, rec))
        if state.pi > best_pi:
            best, best_pi = state.split, state.pi
    result.best, result.best_pi = best, best_pi
    return result


def write_trace(trace: Iterable[TraceStep], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["step", "pi", "move_kind", "cell", "accepted"])
    for st in trace:
        w.writerow([st.step, st.pi, st.move.kind if st.move else "",
                    " ".join(map(str, st.move.cell)) if st.move else "",
                    int(st.accepted)])
