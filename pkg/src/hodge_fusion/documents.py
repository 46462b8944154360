"""Reading and writing complexes as JSON or plain text."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complex import DeltaComplex, ComplexError


class ParseError(ValueError):
    pass


@dataclass
class ComplexDocument:
    complex: DeltaComplex
    name: str | None = None
    label_table: dict[str, int] = field(default_factory=dict)

    def names(self) -> dict[int, str]:
        return {v: k for k, v in self.label_table.items()}


class _Labels:
    """Maps raw tokens to integer labels.

    Integers are kept as they are unless some token is not an integer, in which
    case every distinct token is numbered from 1 in order of first appearance.
    """

    def __init__(self, rows: list[list[str]], table: dict[str, int] | None):
        self.table = dict(table or {})
        self.lookup = dict(self.table)
        if self.table:
            # a supplied table names labels; the labels themselves stay valid
            for v in self.table.values():
                self.lookup.setdefault(str(v), v)
            return
        if all(_is_int(t) for row in rows for t in row):
            return
        for row in rows:
            for t in row:
                self.table.setdefault(str(t), len(self.table) + 1)
        self.lookup = self.table

    def __call__(self, token, where: str) -> int:
        if self.lookup:
            try:
                return self.lookup[str(token)]
            except KeyError:
                raise ParseError(f"{where}: unknown vertex {token!r}") from None
        if isinstance(token, bool) or not _is_int(token):
            raise ParseError(f"{where}: bad label {token!r}")
        return int(token)


def _is_int(t) -> bool:
    if isinstance(t, bool):
        return False
    if isinstance(t, int):
        return True
    if isinstance(t, str):
        try:
            int(t)
            return True
        except ValueError:
            return False
    return False


def _build(cells, dims, where) -> DeltaComplex:
    seen = {}
    for k, c in enumerate(cells):
        if len(set(c)) != len(c):
            raise ParseError(f"{where(k)}: repeated label in cell")
        key = tuple(sorted(c))
        if key in seen:
            raise ParseError(f"{where(k)}: duplicate cell (first at {where(seen[key])})")
        seen[key] = k
    if dims is not None:
        if len(dims) != len(cells):
            raise ParseError(f"dims: {len(dims)} entries for {len(cells)} cells")
        for k, (c, d) in enumerate(zip(cells, dims)):
            if not 0 <= d <= len(c) - 1:
                raise ParseError(f"{where(k)}: dimension {d} outside 0..{len(c) - 1}")
        below = -1  # largest dimension among strictly smaller cells
        sizes = sorted({len(c) for c in cells})
        for size in sizes:
            group = [k for k, c in enumerate(cells) if len(c) == size]
            for k in group:
                if dims[k] < below:
                    raise ParseError(f"{where(k)}: dimensions not monotone in cell size")
            below = max(below, max(dims[k] for k in group))
    try:
        return DeltaComplex(cells, dims)
    except ComplexError as e:
        raise ParseError(str(e)) from None


def parse_document(data: bytes | str) -> ComplexDocument:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def parse_complex(data: bytes | str) -> DeltaComplex:
    return parse_document(data).complex


def _parse_json(text: str) -> ComplexDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("cells"), list):
        raise ParseError("JSON document needs a \"cells\" list")
    raw = obj["cells"]
    for k, c in enumerate(raw):
        if not isinstance(c, list) or not c:
            raise ParseError(f"cells[{k}]: expected a non-empty list")
    table = obj.get("label_table")
    if table is not None and not (isinstance(table, dict) and all(_is_int(v) for v in table.values())):
        raise ParseError("label_table must map names to integers")
    labels = _Labels([[str(t) if not _is_int(t) else t for t in c] for c in raw], table)
    cells = [[labels(t, f"cells[{k}]") for t in c] for k, c in enumerate(raw)]
    dims = obj.get("dims")
    if dims is not None and not (isinstance(dims, list) and all(_is_int(d) for d in dims)):
        raise ParseError("dims must be a list of integers")
    G = _build(cells, dims, lambda k: f"cells[{k}]")
    name = obj.get("name")
    return ComplexDocument(G, str(name) if name is not None else None, labels.table)


def _parse_text(text: str) -> ComplexDocument:
    rows, dims, lines = [], [], []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        d = None
        if ":" in line:
            line, ds = line.rsplit(":", 1)
            try:
                d = int(ds)
            except ValueError:
                raise ParseError(f"line {no}: bad dimension {ds.strip()!r}") from None
        tokens = line.replace(",", " ").split()
        if not tokens:
            raise ParseError(f"line {no}: empty cell")
        rows.append(tokens)
        dims.append(d)
        lines.append(no)
    given = [d is not None for d in dims]
    if any(given) and not all(given):
        missing = lines[given.index(False)]
        raise ParseError(f"line {missing}: dimension missing (some lines give one)")
    labels = _Labels(rows, None)
    cells = [[labels(t, f"line {lines[k]}") for t in row] for k, row in enumerate(rows)]
    G = _build(cells, dims if all(given) and dims else None, lambda k: f"line {lines[k]}")
    return ComplexDocument(G, None, labels.table)


def serialize(G: DeltaComplex, name: str | None = None,
              label_table: dict[str, int] | None = None) -> str:
    """JSON document with the cells in canonical order and explicit dims."""
    obj: dict = {}
    if name is not None:
        obj["name"] = name
    obj["cells"] = [list(c) for c in G.cells]
    obj["dims"] = list(G.dims)
    if label_table:
        obj["label_table"] = dict(label_table)
    body = ",\n  ".join(f"{json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in obj.items())
    return "{\n  " + body + "\n}\n"


def serialize_document(doc: ComplexDocument) -> str:
    return serialize(doc.complex, doc.name, doc.label_table)
