"""Command line interface: ``hodge-fusion <command> ...``."""
from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Sequence, TextIO

from .cohomology import (alternating_sum, betti, euler_poincare_check, format_vector,
                         mckean_singer_supertrace, poincare_polynomial)
from .complex import (ComplexError, DeltaComplex, euler_characteristic, f_vector, format_cell,
                      random_open_set)
from .constructions import KINDS, generate, minimal_sphere, cyclic
from .documents import ComplexDocument, ParseError, parse_document, serialize
from .exact import nullity
from .fusion import (ProjectionMismatch, anneal_search, fusion_report, interface_nullity, split,
                     write_trace)
from .operators import NotDeltaSetError, dirac, hodge_blocks, is_valid_delta
from .products import (barycentric_refinement, geometric_product, join, kunneth_check,
                        shannon_product, suspension)
from .spectral import check_fusion_bound, check_monotonicity, hodge_spectra, zero_count

GEOMETRIC_WARN = 5000
SEED_ENV = "HODGE_FUSION_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


class _Ctx:
    def __init__(self, out: TextIO, err: TextIO, stdin: TextIO):
        self.out, self.err, self.stdin = out, err, stdin

    def print(self, *args) -> None:
        print(*args, file=self.out)

    def warn(self, msg: str) -> None:
        print(f"warning: {msg}", file=self.err)

    def read(self, path: str) -> ComplexDocument:
        if path == "-":
            text = self.stdin.read()
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise UsageError(f"cannot read {path}: {e.strerror}") from None
        try:
            return parse_document(text)
        except ParseError as e:
            raise UsageError(f"{path}: {e}") from None


def _cell_text(c, doc: ComplexDocument | None = None) -> str:
    names = doc.names() if doc is not None else {}
    if names:
        return "{" + ",".join(names.get(v, str(v)) for v in c) + "}"
    return format_cell(c)


def _require_delta(G: DeltaComplex) -> None:
    if not is_valid_delta(G):
        raise NotDeltaSetError(None)


def cmd_betti(ctx: _Ctx, a) -> int:
    doc = ctx.read(a.file)
    G = doc.complex
    _require_delta(G)
    f, b = f_vector(G), betti(G)
    if doc.name:
        ctx.print(f"name = {doc.name}")
    ctx.print(f"f = {format_vector(f)}")
    ctx.print(f"b = {format_vector(b)}")
    ctx.print(f"chi = {euler_characteristic(G)} (cells) = {alternating_sum(b)} (harmonic)")
    ctx.print(f"poincare = {poincare_polynomial(b)}")
    return 0


def cmd_dirac(ctx: _Ctx, a) -> int:
    G = ctx.read(a.file).complex
    op = dirac(G)
    ctx.print(f"n = {len(G)}")
    ctx.print(f"markers = {format_vector(op.markers)}")
    ctx.print(f"d^2 = 0: {'yes' if is_valid_delta(G) else 'no'}")
    if a.matrix:
        width = max((len(str(v)) for v in op.D.flat), default=1)
        for row in op.D:
            ctx.print(" ".join(str(v).rjust(width) for v in row))
    return 0


def cmd_spectrum(ctx: _Ctx, a) -> int:
    G = ctx.read(a.file).complex
    _require_delta(G)
    spectra = hodge_spectra(G)
    for k, lam in enumerate(spectra):
        ctx.print(f"L_{k}: " + " ".join(f"{v:.6g}" if abs(v) >= 1e-9 else "0" for v in lam))
    ctx.print(f"zeros = {format_vector([zero_count(s) for s in spectra])}")
    return 0


def _closed_cells(ctx: _Ctx, doc: ComplexDocument, a) -> list[tuple[int, ...]]:
    table = doc.label_table

    def label(tok: str) -> int:
        if table:
            if tok not in table:
                raise UsageError(f"unknown vertex {tok!r}")
            return table[tok]
        try:
            return int(tok)
        except ValueError:
            raise UsageError(f"bad label {tok!r}") from None

    if a.closed_cells is not None:
        cells = []
        for part in a.closed_cells.split(";"):
            toks = part.replace(",", " ").split()
            if toks:
                cells.append(tuple(sorted(label(t) for t in toks)))
        return cells
    other = ctx.read(a.closed)
    names = other.names()
    if names:
        return [tuple(sorted(label(names[v]) for v in c)) for c in other.complex.cells]
    return list(other.complex.cells)


def cmd_fuse(ctx: _Ctx, a) -> int:
    doc = ctx.read(a.file)
    G = doc.complex
    _require_delta(G)
    K = _closed_cells(ctx, doc, a)
    try:
        s = split(G, K)
    except ComplexError as e:
        raise UsageError(str(e)) from None
    r = fusion_report(s)
    ctx.print(f"|K| = {len(s.K)}, |U| = {len(s.U)}")
    ctx.print(f"bG = {format_vector(r.bG)}")
    ctx.print(f"bK = {format_vector(r.bK)}")
    ctx.print(f"bU = {format_vector(r.bU)}")
    ctx.print(f"bI = {format_vector(r.bI)}")
    status = 0
    try:
        proj = interface_nullity(s)
        ctx.print(f"interface nullity = {format_vector(proj)} (agrees)")
    except ProjectionMismatch as e:
        ctx.print(f"interface nullity = {format_vector(e.projected)} (MISMATCH)")
        status = 1
    if r.pairs is None:
        ctx.print("pairs: not decomposable")
    else:
        ctx.print("pairs: " + (" + ".join(f"{c}(e_{j}+e_{j + 1})" for j, c in r.pairs) or "none"))
    if not r.inequality_holds:
        ctx.print("verdict: fusion inequality VIOLATED")
        return 1
    ctx.print("verdict: fusion inequality holds " + ("with equality" if r.equality else "strictly"))
    return status


def _emit(ctx: _Ctx, G: DeltaComplex, name: str | None) -> int:
    ctx.out.write(serialize(G, name))
    return 0


def cmd_product(ctx: _Ctx, a) -> int:
    A, B = ctx.read(a.a).complex, ctx.read(a.b).complex
    if a.geometric:
        P = geometric_product(A, B)
        if len(P) > GEOMETRIC_WARN:
            ctx.warn(f"geometric product has {len(P)} cells")
        return _emit(ctx, P, "geometric product")
    return _emit(ctx, shannon_product(A, B), "product")


def cmd_join(ctx: _Ctx, a) -> int:
    A, B = ctx.read(a.a).complex, ctx.read(a.b).complex
    return _emit(ctx, join(A, B, "open" if a.open else "closed"), "join")


def cmd_suspend(ctx: _Ctx, a) -> int:
    return _emit(ctx, suspension(ctx.read(a.file).complex), "suspension")


def cmd_refine(ctx: _Ctx, a) -> int:
    return _emit(ctx, barycentric_refinement(ctx.read(a.file).complex), "refinement")


def cmd_gen(ctx: _Ctx, a) -> int:
    params = list(a.params)
    if a.kind == "random_whitney" and len(params) == 2:
        params.append(a.seed if a.seed is not None else default_seed())
    try:
        G = generate(a.kind, *params)
    except (TypeError, ValueError) as e:
        raise UsageError(f"gen {a.kind}: {e}") from None
    return _emit(ctx, G, " ".join([a.kind] + [str(p) for p in params]))


def cmd_anneal(ctx: _Ctx, a) -> int:
    doc = ctx.read(a.file)
    G = doc.complex
    _require_delta(G)
    if a.steps < 0:
        raise UsageError("--steps must be nonnegative")
    seed = a.seed if a.seed is not None else default_seed()
    res = anneal_search(G, a.steps, seed=seed)
    r = fusion_report(res.best)
    ctx.print(f"steps = {a.steps}, seed = {seed}")
    ctx.print(f"best pi = {res.best_pi}")
    ctx.print(f"bK = {format_vector(r.bK)}, bU = {format_vector(r.bU)}, bI = {format_vector(r.bI)}")
    ctx.print("K = " + " ".join(_cell_text(c, doc) for c in res.best.k_cells()))
    bad = sum(1 for st in res.trace if st.record is not None and not st.record.ok)
    ctx.print(f"dichotomy exceptions = {bad}")
    if a.trace:
        if a.trace == "-":
            write_trace(res.trace, ctx.out)
        else:
            with open(a.trace, "w", encoding="utf-8", newline="") as fh:
                write_trace(res.trace, fh)
    return 0


def _random_factor(rng: random.Random, budget: int) -> DeltaComplex:
    choices = [DeltaComplex([[1]]), cyclic(3), minimal_sphere(rng.randint(1, 3)),
               DeltaComplex([[3], [1, 2]]), generate("random_whitney", 5, rng.randint(3, 7), rng.randrange(10 ** 6))]
    fits = [c for c in choices if len(c) <= budget] or choices[:1]
    return rng.choice(fits)


def cmd_verify(ctx: _Ctx, a) -> int:
    G = ctx.read(a.file).complex
    seed = a.seed if a.seed is not None else default_seed()
    if a.trials < 0:
        raise UsageError("--trials must be nonnegative")
    rows: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        rows.append((name, ok, detail))
        ctx.print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))

    if not is_valid_delta(G):
        record("d^2 = 0", False, "d^2 != 0")
        return 1
    record("d^2 = 0", True)
    record("euler-poincare", euler_poincare_check(G))
    chi, n = euler_characteristic(G), len(G)
    worst = max(abs(mckean_singer_supertrace(G, t) - chi) for t in (0.0, 0.25, 1.0, 4.0))
    record("mckean-singer", worst <= 1e-6 * max(n, 1), f"max deviation {worst:.2e}")
    blocks = hodge_blocks(G)
    exact = [nullity(L) if L.size else 0 for L in blocks]
    floats = [zero_count(s) for s in hodge_spectra(G)]
    record("zero count", exact == floats, f"exact {format_vector(exact)} float {format_vector(floats)}")

    rng = random.Random(seed)
    mono = bound = ineq = proj = True
    for _ in range(a.trials if n else 0):
        U = random_open_set(G, rng.randint(1, max(1, n // 4)), rng.randrange(2 ** 32))
        Uset = set(U)
        K = [c for c in G.cells if c not in Uset]
        s = split(G, K)
        mono &= bool(check_monotonicity(G, K, 1e-8)) and bool(check_monotonicity(G, U, 1e-8))
        bound &= bool(check_fusion_bound(G, K, 1e-8))
        ineq &= fusion_report(s).inequality_holds
        try:
            interface_nullity(s)
        except ProjectionMismatch:
            proj = False
    record("spectral monotonicity", mono, f"{a.trials} splits")
    record("fusion bound", bound, f"{a.trials} splits")
    record("fusion inequality", ineq, f"{a.trials} splits")
    record("projection picture", proj, f"{a.trials} splits")
    B = _random_factor(rng, max(1, 2000 // max(n, 1)))
    record("kunneth", kunneth_check(G, B), f"second factor with {len(B)} cells")
    return 0 if all(ok for _, ok, _ in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodge-fusion",
                                description="Hodge cohomology of complexes, open sets and Delta-sets.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("betti", help="f-vector, Betti vector, Euler characteristic")
    s.add_argument("file")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("dirac", help="dimension markers and the Dirac matrix")
    s.add_argument("file")
    s.add_argument("--matrix", action="store_true", help="print the full matrix D")
    s.set_defaults(func=cmd_dirac)

    s = sub.add_parser("spectrum", help="eigenvalues of the Hodge blocks")
    s.add_argument("file")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("fuse", help="fusion report for a closed part and its open complement")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--closed", metavar="FILE2")
    g.add_argument("--closed-cells", metavar="CELLS", help='e.g. "1 2 3; 1 2; 1"')
    s.set_defaults(func=cmd_fuse)

    s = sub.add_parser("product", help="Cartesian product of two Delta-sets")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--geometric", action="store_true", help="clique complex of the pair poset")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("join", help="join of two complexes")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--open", action="store_true", help="keep only the unions, no closure")
    s.set_defaults(func=cmd_join)

    s = sub.add_parser("suspend", help="join with two points")
    s.add_argument("file")
    s.set_defaults(func=cmd_suspend)

    s = sub.add_parser("refine", help="barycentric refinement")
    s.add_argument("file")
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("gen", help="generate a named complex")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("anneal", help="search for splits with large interface cohomology")
    s.add_argument("file")
    s.add_argument("--steps", type=int, default=500)
    s.add_argument("--seed", type=int)
    s.add_argument("--trace", metavar="CSV")
    s.set_defaults(func=cmd_anneal)

    s = sub.add_parser("verify", help="run the invariant suite on a complex")
    s.add_argument("file")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    """Run one command; returns 0 on success, 1 on a property violation, 2 on bad usage."""
    ctx = _Ctx(stdout or sys.stdout, stderr or sys.stderr, stdin or sys.stdin)
    parser = build_parser()
    try:
        old_out, old_err = sys.stdout, sys.stderr
        sys.stdout, sys.stderr = ctx.out, ctx.err
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stdout, sys.stderr = old_out, old_err
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(ctx, args)
    except UsageError as e:
        print(f"error: {e}", file=ctx.err)
        return 2
    except NotDeltaSetError:
        print("error: d^2 != 0, not a Delta-set", file=ctx.err)
        return 1


def main() -> None:
    sys.exit(run())
