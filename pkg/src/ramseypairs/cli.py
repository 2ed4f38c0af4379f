"""Command-line entry point.  ``ramseypairs <subcommand> --help`` lists the flags of each command."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, fileio, ramsey
from .amplify import SMALL_M_CUTOFF, AmplifyParams, amplify_step, drive, trace_bounds
from .checks import fmt
from .embedding import Embedding, find_mono_copy
from .errors import ParseError, RamseyPairsError
from .extraction import ExtractionParams, MonoPair, Strictness, es_pair, esz_pair
from .graph import Color

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/7, got {text!r}") from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _csv_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _ids(vertices) -> str:
    return ",".join(str(v) for v in vertices) or "-"


def _pair_text(p: MonoPair) -> str:
    return f"{p.color.value} X={_ids(p.X)} Y={_ids(p.Y)}"


def _copy_text(e: Embedding) -> str:
    return f"copy {e.color.value} map={_ids(e.mapping)}"


def _read(loader, path: str):
    try:
        return loader(path)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns (text, exit code)


def cmd_gen(a) -> tuple[str, int]:
    if a.kind == "biased" and a.p is None:
        raise UsageError("biased colorings need --p")
    try:
        c = ramsey.gen_coloring(a.kind, a.n, a.p, a.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comment = f"{a.kind} N={a.n} seed={a.seed}" + (f" p={fmt(a.p)}" if a.p is not None else "")
    return fileio.format_coloring(c, comment), EXIT_OK


def cmd_extract_pair(a) -> tuple[str, int]:
    c = _read(fileio.read_coloring, a.coloring)
    if a.eps is None:
        if a.k is None or a.l is None:
            raise UsageError("give --k and --l, or --eps and --t")
        pair = es_pair(c, a.k, a.l)
        if a.format == "json":
            return _dump({"pair": pair.to_json()}), EXIT_OK
        return _pair_text(pair) + "\n", EXIT_OK
    if a.t is None:
        raise UsageError("--eps needs --t")
    pair, trace = esz_pair(c, ExtractionParams(eps=a.eps, t=a.t, strictness=Strictness(a.strictness)))
    if a.format == "json":
        return _dump({"pair": pair.to_json(), "trace": trace.to_json()}), EXIT_OK
    lines = [
        _pair_text(pair),
        f"branch {trace.branch}",
        f"deleted {trace.deleted} filtered {trace.filtered}",
        f"|B|={len(trace.B)} |R|={len(trace.R)} |S_R|={len(trace.S_R)}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def _load_pair(path: str) -> MonoPair:
    try:
        raw = json.loads(Path(path).read_text())
        raw = raw.get("pair", raw)
        return MonoPair(Color(raw["color"]), tuple(sorted(raw["X"])), tuple(sorted(raw["Y"])))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"{path}: not a pair file ({exc})") from None


def cmd_amplify(a) -> tuple[str, int]:
    c = _read(fileio.read_coloring, a.coloring)
    G = _read(fileio.read_graph, a.pattern)
    pair = _load_pair(a.pair) if a.pair else es_pair(c, a.k, a.k)
    params = AmplifyParams.build(a.alpha, G.m, Strictness(a.profile), t=a.t)
    step = amplify_step(c, G, pair, params)
    if a.format == "json":
        return _dump(step.to_json()), EXIT_OK
    lines = [f"input {_pair_text(pair)}", f"eps {fmt(params.eps)} t {params.t}"]
    if step.copy is not None:
        lines.append(_copy_text(step.copy))
    else:
        lines.append(f"sparse |S|={len(step.sparse_set)}")
        lines.append(f"pair {_pair_text(step.pair)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_prove(a) -> tuple[str, int]:
    c = _read(fileio.read_coloring, a.coloring)
    G = _read(fileio.read_graph, a.pattern)
    trace = drive(c, G, Strictness(a.profile), small_m_cutoff=a.cutoff, initial_size=a.initial, t_override=a.t)
    if a.format == "json":
        return _dump(trace.to_json()), EXIT_OK
    lines = [f"route {trace.route} profile {trace.profile}"]
    for r in trace.iterations:
        alpha = fmt(r.alpha) if r.alpha is not None else "-"
        line = f"step {r.i} {r.step} alpha={alpha} color={r.color or '-'} |X|={r.x_size} |Y|={r.y_size}"
        lines.append(line + (f" ({r.note})" if r.note else ""))
    lines.extend(f"note {n}" for n in trace.notes)
    lines.append(f"outcome {trace.outcome}")
    if trace.copy is not None:
        lines.append(_copy_text(trace.copy))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_trace_bounds(a) -> tuple[str, int]:
    if a.m < 2:
        raise UsageError("--m must be at least 2")
    report = trace_bounds(a.m)
    code = EXIT_OK if report.ok else EXIT_FAIL
    if a.format == "json":
        return _dump(report.to_json()), code
    lines = [
        f"m {report.m}",
        f"N 2^({report.n_exponent}*sqrt(m))",
        f"alpha {' '.join(report.alphas)}",
        f"floor log2|Y|>={fmt(report.floor_exponent)}*sqrt(m)",
        f"stop {report.stop_index}",
    ]
    for r in report.iterations:
        lines.append(
            f"iter {r['i']} {r['step']} alpha={r['alpha']} |X|>={r['x_size']} log2|Y|>={r['y_log2_lb'] or '-'}"
        )
    lines.extend(ch.line() for ch in report.checks)
    return "\n".join(lines) + "\n", code


def cmd_verify_constants(a) -> tuple[str, int]:
    checks = bounds.verify_inequalities(a.m, a.alpha_points, a.eps)
    code = EXIT_OK if all(ch.passed for ch in checks) else EXIT_FAIL
    if a.format == "json":
        return _dump([ch.to_json() for ch in checks]), code
    return "".join(ch.line() + "\n" for ch in checks), code


def cmd_ramsey(a) -> tuple[str, int]:
    path = a.exact or a.arrows or a.lower
    G = _read(fileio.read_graph, path)
    if a.exact:
        value = ramsey.ramsey_number_exact(G, a.nmax, a.max_edges)
        if a.format == "json":
            return _dump({"pattern": path, "r": value}), EXIT_OK
        return f"{value if value is not None else 'unknown'}\n", EXIT_OK
    if a.n is None:
        raise UsageError("--arrows and --lower need --n")
    if a.arrows:
        res = ramsey.arrows(a.n, G, a.max_edges)
        if a.format == "json":
            out = {"N": a.n, "arrows": res.arrows}
            out["witness_red_edges"] = sorted(map(list, res.witness.red.edges)) if res.witness else None
            return _dump(out), EXIT_OK
        if res.arrows:
            return f"K_{a.n} arrows the pattern\n", EXIT_OK
        return f"K_{a.n} does not arrow the pattern; witness:\n" + fileio.format_coloring(res.witness), EXIT_OK
    found = bounds.lower_bound_witness_search(G, a.n, a.trials, a.seed)
    if a.format == "json":
        out = {"N": a.n, "trials": a.trials, "seed": a.seed, "found": found is not None}
        out["witness_red_edges"] = sorted(map(list, found.red.edges)) if found else None
        return _dump(out), EXIT_OK
    if found is None:
        return f"none after {a.trials} trials\n", EXIT_OK
    return f"r(G) > {a.n}; witness:\n" + fileio.format_coloring(found), EXIT_OK


def cmd_check(a) -> tuple[str, int]:
    c = _read(fileio.read_coloring, a.coloring)
    G = _read(fileio.read_graph, a.pattern)
    found = {color: find_mono_copy(c, color, G) for color in (Color.RED, Color.BLUE)}
    if a.format == "json":
        return _dump({color.value: list(e.mapping) if e else None for color, e in found.items()}), EXIT_OK
    parts = []
    for color, e in found.items():
        parts.append(f"none in {color.value}" if e is None else f"{color.value} map={_ids(e.mapping)}")
    return "; ".join(parts) + "\n", EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="ramseypairs", description="Monochromatic pairs and Ramsey bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a coloring of K_N")
    s.add_argument("--kind", choices=[k.value for k in ramsey.ColoringKind], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=_rational)
    s.add_argument("--seed", type=_seed, default=0)
    s.set_defaults(run=cmd_gen)

    s = sub.add_parser("extract-pair", parents=[common], help="find a monochromatic pair")
    s.add_argument("--coloring", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--eps", type=_rational)
    s.add_argument("--t", type=int)
    s.add_argument("--strictness", choices=[x.value for x in Strictness], default="relaxed")
    s.set_defaults(run=cmd_extract_pair)

    s = sub.add_parser("amplify", parents=[common], help="one amplification step")
    s.add_argument("--coloring", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--pair", help="JSON file with color, X and Y; default: pivot pair with --k")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--alpha", type=_rational, default=Fraction(27))
    s.add_argument("--t", type=int, help="override t (relaxed profile only)")
    s.add_argument("--profile", choices=[x.value for x in Strictness], default="relaxed")
    s.set_defaults(run=cmd_amplify)

    s = sub.add_parser("prove", parents=[common], help="find a monochromatic copy or explain why not")
    s.add_argument("--coloring", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--profile", choices=[x.value for x in Strictness], default="relaxed")
    s.add_argument("--cutoff", type=int, default=SMALL_M_CUTOFF, help="largest m for the direct clique route")
    s.add_argument("--initial", type=int, help="override the first pair's clique size")
    s.add_argument("--t", type=int, help="override t in every amplification step")
    s.set_defaults(run=cmd_prove)

    s = sub.add_parser("trace-bounds", parents=[common], help="guaranteed sizes for a pattern with m edges")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(run=cmd_trace_bounds)

    s = sub.add_parser("verify-constants", parents=[common], help="interval sweep over the constant chains")
    s.add_argument("--m", type=_csv_ints, default=list(bounds.DEFAULT_M_VALUES))
    s.add_argument("--alpha-points", type=int, default=bounds.DEFAULT_ALPHA_POINTS)
    s.add_argument("--eps", type=lambda t: [_rational(x) for x in t.split(",")], default=list(bounds.DEFAULT_EPS_GRID))
    s.set_defaults(run=cmd_verify_constants)

    s = sub.add_parser("ramsey", parents=[common], help="exhaustive Ramsey oracles")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", metavar="PATTERN")
    mode.add_argument("--arrows", metavar="PATTERN")
    mode.add_argument("--lower", metavar="PATTERN")
    s.add_argument("--nmax", type=int, default=6)
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--max-edges", type=int, default=ramsey.DEFAULT_MAX_EDGES)
    s.set_defaults(run=cmd_ramsey)

    s = sub.add_parser("check", parents=[common], help="search both colors for a copy of the pattern")
    s.add_argument("--coloring", required=True)
    s.add_argument("--pattern", required=True)
    s.set_defaults(run=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text, code = args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RamseyPairsError as exc:
        # precondition violations, declared failures and exhausted budgets
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code
