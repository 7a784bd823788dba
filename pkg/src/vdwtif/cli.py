"""Command-line front end.

Every command prints line-oriented ``key=value`` records. ``--porcelain``
output is frozen for scripting; the default human mode adds ``#`` comment
lines around the same records.

Exit codes: 0 success, 1 a verification came out false, 2 usage error
(bad expression, unmet precondition, resource limit).

Porcelain keys
--------------
classify  thick syndetic gap pws witness
apk       A k APk pws, then one ``x= y=`` line per sampled member
pipeline  A k witness T T_in_M M_stages M_accepted U_stages U_atom n_j F
          rounds repeat calls rebases progression terms terms_in_B_U X
          X_subset_APk_shift X_in_U APk [round l y x B] APK_PWS
stages    n B accept cert; then ``atom=`` for ``--kind uf``
algebra   n E
color     piece h intervals, then the pipeline keys
quotient  row sums; filters tifs left_ideals; check ok; K passed
oracle    horizon members thick_run gap ap  (all relative to the window)
"""
from __future__ import annotations

import argparse
import sys

from . import combinatorics as comb
from .algebra import SetAlgebra
from .dsl import ParseError, parse_set
from .epset import NAT, ResourceLimitError, set_lcm_cap, get_lcm_cap
from .filters import DEFAULT_STAGES, FipFamily, build_maximal_tif, build_ultrafilter
from .quotient import DEFAULT_MAX_MODULUS, ModulusError, check_correspondence, pseudosum_table
from .vdw import ClaimError, ap_k, ap_witness, corollary_coloring, theorem_main
from .windowset import WindowSet, materialize, oracle_find_ap, oracle_gap_bound
from . import _kernels


class UsageError(Exception):
    pass


def _b(x: bool) -> str:
    return "true" if x else "false"


def _list(xs) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


class _Out:
    def __init__(self, porcelain: bool):
        self.porcelain = porcelain
        self.lines: list[str] = []

    def rec(self, line: str):
        self.lines.append(line)

    def note(self, text: str):
        if not self.porcelain:
            self.lines.append(f"# {text}")


def _expr(text: str):
    try:
        return parse_set(text)
    except (ParseError, ValueError) as e:
        raise UsageError(f"bad set expression {text!r}: {e}") from None


# ---------------------------------------------------------------------------
# commands; each returns True when every verification passed


def cmd_classify(args, out: _Out) -> bool:
    s = _expr(args.expr)
    c = comb.classify(s)
    out.note(f"set {s}")
    gap = "-" if c["gap"] is None else str(c["gap"])
    witness = "-" if c["witness"] is None else _list(c["witness"])
    out.rec(f"thick={_b(c['thick'])} syndetic={_b(c['syndetic'])} gap={gap} pws={_b(c['pws'])} witness={witness}")
    return True


def cmd_apk(args, out: _Out) -> bool:
    s = _expr(args.expr)
    result = ap_k(s, args.k)
    out.rec(f"A={s}")
    out.rec(f"k={args.k}")
    out.rec(f"APk={result}")
    out.rec(f"pws={_b(comb.is_piecewise_syndetic(result))}")
    ok = True
    for x in result.members(result.a + args.samples * result.p)[: args.samples]:
        y = ap_witness(s, args.k, x)
        ok &= y is not None
        out.rec(f"x={x} y={y if y is not None else '-'}")
    return ok


def _emit_theorem(ev, out: _Out, trace: bool) -> bool:
    for line in ev.lines(trace=trace):
        out.rec(line)
    return ev.verdict


def cmd_pipeline(args, out: _Out) -> bool:
    s = _expr(args.expr)
    out.note(f"building maximal TIF and ultrafilter to stage {args.stages}")
    ev = theorem_main(s, args.k, args.stages)
    return _emit_theorem(ev, out, args.trace)


def cmd_stages(args, out: _Out) -> bool:
    seeds = [_expr(e) for e in args.seeds]
    algebra = SetAlgebra(seeds)
    tif = build_maximal_tif(algebra, FipFamily(shift_roots=[NAT]), args.n)
    if args.kind == "tif":
        filt = tif
    else:
        filt = build_ultrafilter(algebra, tif.as_family(), args.n, parent=tif)
    for d in filt.decisions:
        if not d.completion:
            out.rec(d.line())
    ok = all(r == d.accepted for (_, r), d in zip(filt.replay(), filt.decisions))
    if args.kind == "uf":
        out.rec(f"atom={filt.atom}")
    return ok


def cmd_algebra(args, out: _Out) -> bool:
    algebra = SetAlgebra([_expr(e) for e in args.seeds])
    out.note(repr(algebra))
    for n in range(1, args.show + 1):
        out.rec(f"n={n} E={algebra.element(n)}")
    return True


def cmd_color(args, out: _Out) -> bool:
    pieces = [_expr(e) for e in args.pieces]
    try:
        comb.check_partition(NAT, pieces)
    except ValueError as e:
        raise UsageError(str(e)) from None
    ev = corollary_coloring(pieces, args.k, args.stages)
    rep = ev.report
    out.note("pieces are numbered from 1")
    out.rec(f"piece={ev.index + 1} h={rep.k} intervals={_list(f'[{a},{b}]' for a, b in rep.intervals)}")
    return _emit_theorem(ev.theorem, out, args.trace)


def cmd_quotient(args, out: _Out) -> bool:
    P = args.P
    rep = check_correspondence(P)
    for r, row in enumerate(pseudosum_table(P)):
        out.rec(f"row={r} sums={_list(row)}")
    out.rec(f"filters={rep.n_filters} tifs={rep.n_tifs} left_ideals={rep.n_left_ideals}")
    for name, ok in rep.checks.items():
        out.rec(f"check={name} ok={_b(ok)}")
    out.rec(f"K={_list(sorted(rep.smallest_ideal))} passed={_b(rep.passed)}")
    for note in rep.notes:
        out.note(note)
    return rep.passed


def cmd_oracle(args, out: _Out) -> bool:
    if args.expr.startswith("win:"):
        try:
            win = WindowSet.from_string(args.expr)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if args.horizon is not None and args.horizon != win.horizon:
            raise UsageError("--horizon does not apply to a win: literal")
    else:
        s = _expr(args.expr)
        horizon = args.horizon if args.horizon is not None else s.a + 12 * s.p
        win = materialize(s, horizon)
    out.note("window verdicts hold up to the horizon only")
    gap = oracle_gap_bound(win)
    prog = oracle_find_ap(win, args.k)
    out.rec(f"horizon={win.horizon} members={len(win.members())}")
    out.rec(f"thick_run={int(_kernels.longest_run(win.bits))}")
    out.rec(f"gap={gap if gap is not None else '-'}")
    out.rec(f"ap={'-' if prog is None else f'({prog.start},{prog.gap},{prog.length})'}")
    return True


# ---------------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    # flags are accepted before and after the subcommand; subparsers must not
    # overwrite a value already given at top level
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--porcelain", action="store_true", default=d(False), help="frozen key=value output")
    p.add_argument("--horizon", type=int, default=d(None), help="window horizon for oracle checks")
    p.add_argument("--stages", type=int, default=d(DEFAULT_STAGES), help=f"stage budget (default {DEFAULT_STAGES})")
    p.add_argument("--lcm-cap", type=int, default=d(get_lcm_cap()), help="period cap for set operations")
    p.add_argument("--trace", action="store_true", default=d(False), help="dump claim rounds")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdwtif",
        description="Decision procedures and constructions for eventually periodic subsets of N.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(False)]

    p = sub.add_parser("classify", parents=common, help="thick / syndetic / piecewise syndetic")
    p.add_argument("expr")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("apk", parents=common, help="the set AP_k(A)")
    p.add_argument("expr")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_apk)

    p = sub.add_parser("pipeline", parents=common, help="run the main theorem's proof on A")
    p.add_argument("expr")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("stages", parents=common, help="staged filter decisions")
    p.add_argument("seeds", nargs="+")
    p.add_argument("--kind", choices=("uf", "tif"), default="uf")
    p.add_argument("--n", type=int, default=20)
    p.set_defaults(func=cmd_stages)

    p = sub.add_parser("algebra", parents=common, help="enumerate the generated algebra")
    p.add_argument("seeds", nargs="+")
    p.add_argument("--show", type=int, default=10)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("color", parents=common, help="coloring corollary")
    p.add_argument("pieces", nargs="+")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("quotient", parents=common, help="finite cyclic quotient model")
    p.add_argument("-P", type=int, required=True)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("oracle", parents=common, help="window brute force on a set or win: literal")
    p.add_argument("expr")
    p.add_argument("-k", type=int, default=2)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("k", "n", "show", "stages", "samples", "lcm_cap"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    if args.horizon is not None and args.horizon < 1:
        parser.error("--horizon must be positive")
    if getattr(args, "P", None) is not None and not 1 <= args.P <= DEFAULT_MAX_MODULUS:
        parser.error(f"-P must be in 1..{DEFAULT_MAX_MODULUS}")

    out = _Out(args.porcelain)
    old_cap = get_lcm_cap()
    set_lcm_cap(args.lcm_cap)
    try:
        ok = args.func(args, out)
    except (UsageError, comb.NotApplicableError, ResourceLimitError, ModulusError) as e:
        sys.stdout.write("".join(line + "\n" for line in out.lines))
        print(f"vdwtif: error: {e}", file=sys.stderr)
        return 2
    except ClaimError as e:
        sys.stdout.write("".join(line + "\n" for line in out.lines))
        print(f"vdwtif: verification failed: {e}", file=sys.stderr)
        return 1
    finally:
        set_lcm_cap(old_cap)
    sys.stdout.write("".join(line + "\n" for line in out.lines))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
