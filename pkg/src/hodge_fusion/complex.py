"""Cells, Delta complexes and the finite Alexandroff topology on them."""
from __future__ import annotations

import enum
import random
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Cell = tuple[int, ...]


class ComplexError(ValueError):
    """Base class for malformed complexes and subsets."""


class CellNotFound(ComplexError):
    def __init__(self, cell: Cell):
        super().__init__(f"cell not in complex: {format_cell(cell)}")
        self.cell = cell


def make_cell(labels: Iterable[int]) -> Cell:
    """Return the canonical (sorted) form of a cell, rejecting repeats."""
    out = tuple(sorted(int(v) for v in labels))
    if not out:
        raise ComplexError("cells must be non-empty")
    if any(a == b for a, b in zip(out, out[1:])):
        raise ComplexError(f"repeated label in cell {out}")
    return out


def format_cell(x: Sequence[int]) -> str:
    return "{" + ",".join(str(v) for v in x) + "}"


def _cell_key(x: Cell, d: int) -> tuple:
    return (d, x)


class DeltaComplex:
    """An ordered family of distinct cells, each carrying a dimension.

    Cells are stored in canonical order: ascending dimension, then
    lexicographic order of the label tuples. ``markers[k]`` is the index of the
    first cell of dimension ``k``, so the ``k``-cells occupy
    ``cells[markers[k]:markers[k+1]]``.

    ``dims`` may be omitted (every cell gets ``len(x) - 1``), given as a
    sequence aligned with ``cells``, or given as a mapping cell -> dim.
    """

    __slots__ = ("cells", "dims", "markers", "_index", "_faces", "_cofaces")

    def __init__(self, cells: Iterable[Iterable[int]] = (),
                 dims: Sequence[int] | Mapping[Cell, int] | None = None):
        raw = [make_cell(c) for c in cells]
        if dims is None:
            dl = [len(c) - 1 for c in raw]
        elif isinstance(dims, Mapping):
            dl = [int(dims[c]) for c in raw]
        else:
            dl = [int(d) for d in dims]
            if len(dl) != len(raw):
                raise ComplexError(
                    f"{len(dl)} dimensions given for {len(raw)} cells")
        seen = set()
        for c, d in zip(raw, dl):
            if c in seen:
                raise ComplexError(f"duplicate cell {format_cell(c)}")
            if d < 0:
                raise ComplexError(f"negative dimension for {format_cell(c)}")
            seen.add(c)
        order = sorted(range(len(raw)), key=lambda i: _cell_key(raw[i], dl[i]))
        self.cells: tuple[Cell, ...] = tuple(raw[i] for i in order)
        self.dims: tuple[int, ...] = tuple(dl[i] for i in order)
        self._index = {c: i for i, c in enumerate(self.cells)}
        q = max(self.dims, default=-1)
        markers = [0]
        for k in range(q + 1):
            markers.append(markers[-1] + self.dims.count(k))
        self.markers: tuple[int, ...] = tuple(markers)
        self._faces = None
        self._cofaces = None

    # container protocol
    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __contains__(self, x) -> bool:
        try:
            return tuple(x) in self._index
        except TypeError:
            return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self.cells == other.cells and self.dims == other.dims

    def __hash__(self) -> int:
        return hash((self.cells, self.dims))

    def __repr__(self) -> str:
        body = ", ".join(format_cell(c) for c in self.cells[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"DeltaComplex([{body}{more}], n={len(self)})"

    @property
    def dimension(self) -> int:
        """Largest cell dimension, -1 for the empty complex."""
        return len(self.markers) - 2

    @property
    def labels(self) -> list[int]:
        return sorted({v for c in self.cells for v in c})

    def index(self, x: Iterable[int]) -> int:
        x = tuple(x)
        try:
            return self._index[x]
        except KeyError:
            raise CellNotFound(x) from None

    def dim(self, x: Iterable[int]) -> int:
        return self.dims[self.index(x)]

    def dim_map(self) -> dict[Cell, int]:
        return dict(zip(self.cells, self.dims))

    def cells_of_dim(self, k: int) -> tuple[Cell, ...]:
        if k < 0 or k > self.dimension:
            return ()
        return self.cells[self.markers[k]:self.markers[k + 1]]

    def sub(self, cells: Iterable[Iterable[int]]) -> DeltaComplex:
        """Sub-family of cells, keeping their dimensions."""
        chosen = {tuple(c) for c in cells}
        for c in chosen:
            if c not in self._index:
                raise CellNotFound(c)
        keep = [i for i, c in enumerate(self.cells) if c in chosen]
        return DeltaComplex([self.cells[i] for i in keep],
                            [self.dims[i] for i in keep])

    def relabel(self, mapping: Mapping[int, int] | Callable[[int], int]) -> DeltaComplex:
        f = mapping if callable(mapping) else mapping.__getitem__
        return DeltaComplex([[f(v) for v in c] for c in self.cells], list(self.dims))

    # subset relation inside the complex
    def faces(self, i: int) -> tuple[int, ...]:
        """Indices of the cells that are proper subsets of cell ``i``."""
        if self._faces is None:
            self._build_incidence()
        return self._faces[i]

    def cofaces(self, i: int) -> tuple[int, ...]:
        """Indices of the cells that properly contain cell ``i``."""
        if self._cofaces is None:
            self._build_incidence()
        return self._cofaces[i]

    def _build_incidence(self) -> None:
        n = len(self.cells)
        by_size: dict[int, list[int]] = {}
        for i, c in enumerate(self.cells):
            by_size.setdefault(len(c), []).append(i)
        faces: list[list[int]] = [[] for _ in range(n)]
        for i, c in enumerate(self.cells):
            smaller = sum(len(v) for s, v in by_size.items() if s < len(c))
            if 2 ** len(c) <= 4 * smaller:
                for r in range(1, len(c)):
                    for sub in combinations(c, r):
                        j = self._index.get(sub)
                        if j is not None:
                            faces[i].append(j)
            else:
                cs = set(c)
                for s, idx in by_size.items():
                    if s < len(c):
                        faces[i].extend(j for j in idx if cs.issuperset(self.cells[j]))
        cofaces: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            for j in faces[i]:
                cofaces[j].append(i)
        self._faces = tuple(tuple(sorted(f)) for f in faces)
        self._cofaces = tuple(tuple(sorted(f)) for f in cofaces)


class SubsetClass(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
    CLOPEN = "clopen"
    NEITHER = "neither"


def _indices(G: DeltaComplex, A: Iterable[Iterable[int]]) -> set[int]:
    if isinstance(A, DeltaComplex):
        A = A.cells
    return {G.index(a) for a in A}


def closure(sets: Iterable[Iterable[int]]) -> DeltaComplex:
    """Smallest simplicial complex containing every given set."""
    out: set[Cell] = set()
    for s in sets:
        x = make_cell(s)
        if x in out:
            continue
        for r in range(1, len(x) + 1):
            out.update(combinations(x, r))
    return DeltaComplex(out)


def star(G: DeltaComplex, x: Iterable[int]) -> list[Cell]:
    """All cells of ``G`` containing ``x``, in canonical order."""
    i = G.index(x)
    return [G.cells[j] for j in sorted((i,) + G.cofaces(i))]


def is_closed(G: DeltaComplex, A: Iterable[Iterable[int]]) -> bool:
    idx = _indices(G, A)
    return all(j in idx for i in idx for j in G.faces(i))


def is_open(G: DeltaComplex, A: Iterable[Iterable[int]]) -> bool:
    idx = _indices(G, A)
    return all(j in idx for i in idx for j in G.cofaces(i))


def missing_face(G: DeltaComplex, A: Iterable[Iterable[int]]) -> tuple[Cell, Cell] | None:
    """A pair (cell in A, face of it in G outside A), or None if A is closed."""
    idx = _indices(G, A)
    for i in sorted(idx):
        for j in G.faces(i):
            if j not in idx:
                return G.cells[i], G.cells[j]
    return None


def classify(G: DeltaComplex, A: Iterable[Iterable[int]]) -> SubsetClass:
    c, o = is_closed(G, A), is_open(G, A)
    if c and o:
        return SubsetClass.CLOPEN
    if c:
        return SubsetClass.CLOSED
    if o:
        return SubsetClass.OPEN
    return SubsetClass.NEITHER


def unit_ball(G: DeltaComplex, x: Iterable[int]) -> DeltaComplex:
    """Closure of the star of ``x`` inside ``G``."""
    i = G.index(x)
    ball = {i} | set(G.cofaces(i))
    for j in list(ball):
        ball.update(G.faces(j))
    return G.sub(G.cells[j] for j in ball)


def unit_sphere(G: DeltaComplex, x: Iterable[int]) -> DeltaComplex:
    """The unit ball with the star of ``x`` removed."""
    open_star = set(star(G, x))
    ball = unit_ball(G, x)
    return ball.sub(c for c in ball if c not in open_star)


def interior_boundary(G: DeltaComplex, M: Iterable[Iterable[int]]) -> tuple[list[Cell], list[Cell]]:
    idx = _indices(G, M)
    inner = [i for i in sorted(idx) if all(j in idx for j in G.cofaces(i))]
    inner_set = set(inner)
    return ([G.cells[i] for i in inner],
            [G.cells[i] for i in sorted(idx) if i not in inner_set])


def f_vector(A: DeltaComplex) -> tuple[int, ...]:
    m = A.markers
    return tuple(m[k + 1] - m[k] for k in range(len(m) - 1))


def euler_characteristic(A: DeltaComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(f_vector(A)))


def whitney_complex(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> DeltaComplex:
    """Clique complex of a simple graph."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from((a, b) for a, b in edges if a != b)
    return DeltaComplex(nx.enumerate_all_cliques(g))


def skeleton(G: DeltaComplex, k: int) -> DeltaComplex:
    if k < 0:
        raise ValueError("skeleton dimension must be nonnegative")
    stop = G.markers[min(k + 1, len(G.markers) - 1)]
    return DeltaComplex(G.cells[:stop], G.dims[:stop])


def random_open_set(G: DeltaComplex, k: int, seed: int | None = None) -> list[Cell]:
    """Union of ``k`` stars picked uniformly with replacement."""
    if k < 1 or not len(G):
        raise ValueError("need k >= 1 and a non-empty complex")
    rng = random.Random(seed)
    picked: set[int] = set()
    for i in rng.choices(range(len(G)), k=k):
        picked.add(i)
        picked.update(G.cofaces(i))
    return [G.cells[i] for i in sorted(picked)]


def integrate(M: Iterable[Iterable[int]], f: Callable[[Cell], object] | Mapping[Cell, object]):
    """Sum of ``f`` over the cells of ``M``."""
    get = f.__getitem__ if isinstance(f, Mapping) else f
    return sum((Fraction(get(tuple(x))) for x in M), Fraction(0))
