"""d-conormal spaces, Nash modifications and Whitney checks from the shell.

Every subcommand prints one JSON report on stdout and a short summary on
stderr.  Exit codes: 0 success, 1 the verdict is negative, 2 bad input,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .conormal import (
    AffineVariety,
    GenericRankError,
    NotOnVarietyError,
    conormal_ideal,
    expected_dimension,
    fiber_ideal,
    transversality_check,
)
from .curves import NoCurvesError
from .exactpoly import EmptyVarietyError, Ideal, ResourceLimitError, ideal_dimension
from .grassmann import Chart, a_names, chart_cover
from .integrality import (
    Characterization,
    ChartSubvariety,
    EmptySmoothLocusError,
    characterize,
    check_integral,
    dimension_bound_check,
)
from .parsing import ParseError, parse_point, parse_variety_text
from .polar import EMPTY, polar_draws
from .sampling import NoSmoothSamplesError
from .whitney import (
    NotContainedError,
    WhitneyInstance,
    condition_a_report,
    condition_w_probe,
    delta_bound_trials,
)

__all__ = ["main", "parse_variety", "run", "InputError"]

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_variety(text: str) -> AffineVariety:
    """Parse a ``.var`` document; the unit ideal is rejected as EmptyVariety."""
    doc = parse_variety_text(text)
    if doc.n is not None and doc.n != len(doc.vars):
        raise ParseError(f"header says n={doc.n} but {len(doc.vars)} variables are declared")
    X = AffineVariety(Ideal(list(doc.polynomials), doc.vars))
    X.k  # computes and caches the dimension
    return X


def _read(path: str) -> tuple[str, dict]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8") from None
    return text, {"file": path, "sha256": hashlib.sha256(data).hexdigest()}


def _chart(n: int, d: int, index: int) -> Chart:
    cover = chart_cover(n, d)
    if not 0 <= index < len(cover):
        raise InputError(f"chart index {index} out of range 0..{len(cover) - 1}")
    return cover[index]


def _charts(args, n: int, d: int) -> list[tuple[int, Chart]]:
    cover = chart_cover(n, d)
    if getattr(args, "all_charts", False):
        return list(enumerate(cover))
    return [(args.chart, _chart(n, d, args.chart))]


def _y_axes(text: str, n: int) -> tuple:
    text = text.strip()
    if text.lower() in ("", "none", "0"):
        return ()
    try:
        axes = tuple(int(p) - 1 for p in text.split(","))
    except ValueError:
        raise InputError(f"--y-axes expects 1-based indices like '1,3', got {text!r}") from None
    if any(not 0 <= a < n for a in axes):
        raise InputError(f"--y-axes indices must lie in 1..{n}")
    return axes


def _check_d(X: AffineVariety, d: int) -> None:
    if not X.k <= d <= X.n - 1:
        raise InputError(f"--d must satisfy dim X = {X.k} <= d <= n - 1 = {X.n - 1}")


# ---------------------------------------------------------------------------
# subcommands; each returns (results, exit code, summary line)


def _conormal_charts(X, d, charts, with_fiber_at_0=False):
    rows = []
    for idx, ch in charts:
        C = conormal_ideal(X, d, ch)
        row = {
            "index": idx,
            "chart": ch.label(),
            "empty": C.is_empty(),
            "dim": C.dimension(),
            "ideal": C.ideal.sorted_strings(),
        }
        if with_fiber_at_0:
            try:
                F = fiber_ideal(C, [0] * X.n)
                row["fiber_at_0"] = F.sorted_strings()
                row["fiber_dim_at_0"] = None if F.is_unit() else ideal_dimension(F)
            except NotOnVarietyError:
                row["fiber_at_0"] = None
                row["fiber_dim_at_0"] = None
        rows.append(row)
    return rows


def cmd_conormal(args, nash=False):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    d = X.k if nash else args.d
    _check_d(X, d)
    rows = _conormal_charts(X, d, _charts(args, X.n, d), with_fiber_at_0=nash)
    expected = expected_dimension(X.n, d, X.k)
    dims = [r["dim"] for r in rows if r["dim"] is not None]
    dim = max(dims) if dims else None
    ok = dim == expected
    res = {"n": X.n, "k": X.k, "d": d, "variables": list(X.vars.names),
           "expected_dim": expected, "dim": dim, "dimension_formula": ok, "charts": rows}
    label = "nash" if nash else f"C_{d}"
    return inputs, res, EXIT_OK if ok else EXIT_FALSE, \
        f"{label}: dim {dim} (expected {expected}) over {len(rows)} chart(s)"


def cmd_fiber(args):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    _check_d(X, args.d)
    try:
        point = parse_point(args.point)
    except ParseError as exc:
        raise InputError(f"--point: {exc}") from None
    if len(point) != X.n:
        raise InputError(f"--point needs {X.n} coordinates")
    if not X.contains_point(point):
        raise InputError("the point is not on X")
    rows = []
    for idx, ch in _charts(args, X.n, args.d):
        C = conormal_ideal(X, args.d, ch)
        F = fiber_ideal(C, point)
        empty = F.is_unit()
        rows.append({"index": idx, "chart": ch.label(), "empty": empty,
                     "dim": None if empty else ideal_dimension(F),
                     "ideal": F.sorted_strings()})
    dims = [r["dim"] for r in rows if r["dim"] is not None]
    res = {"n": X.n, "k": X.k, "d": args.d, "point": args.point,
           "smooth_fiber_dim": (args.d - X.k) * (X.n - args.d),
           "dim": max(dims) if dims else None, "charts": rows}
    return inputs, res, EXIT_OK, f"fiber over ({args.point}): dim {res['dim']}"


def _zfile(args):
    text, inputs = _read(args.zfile)
    doc = parse_variety_text(text)
    if doc.n is not None and doc.n != args.n:
        raise InputError(f"file declares n={doc.n} but --n {args.n} was given")
    ch = _chart(args.n, args.d, args.chart)
    names = doc.vars.names
    expect_a = tuple(a_names(ch))
    if len(names) != args.n + len(expect_a) or names[args.n:] != expect_a:
        raise InputError(
            f"vars header must list {args.n} z-variables then {' '.join(expect_a)}"
        )
    try:
        Z = ChartSubvariety(ch, Ideal(list(doc.polynomials), doc.vars))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return Z, inputs


def cmd_check_integral(args):
    Z, inputs = _zfile(args)
    v = check_integral(Z)
    if v.is_integral:
        v = dimension_bound_check(Z, v)
    res = {"n": args.n, "d": args.d, "chart": Z.chart.label(), **v.to_dict()}
    summary = "integral" if v.is_integral else f"not integral; witness {v.witness}"
    return inputs, res, EXIT_OK if v.is_integral else EXIT_FALSE, summary


def cmd_characterize(args):
    Z, inputs = _zfile(args)
    r = characterize(Z)
    res = {"n": args.n, "d": args.d, "chart": Z.chart.label(), **r.to_dict()}
    ok = r.kind is Characterization.IS_D_CONORMAL_OF_IMAGE
    return inputs, res, EXIT_OK if ok else EXIT_FALSE, r.kind.value


def cmd_whitney_a(args):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    axes = _y_axes(args.y_axes, X.n)
    chart = _chart(X.n, X.k, args.chart) if args.chart is not None else None
    W = WhitneyInstance(X, axes, chart)
    rep = condition_a_report(W)
    res = {"n": X.n, "k": X.k, "y_axes": [a + 1 for a in axes], **rep.to_dict()}
    return inputs, res, EXIT_OK if rep.holds else EXIT_FALSE, \
        f"condition a {'holds' if rep.holds else 'fails'} along Y"


def cmd_whitney_w(args):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    W = WhitneyInstance(X, _y_axes(args.y_axes, X.n))
    rep = condition_w_probe(W, curves=args.curves, seed=args.seed)
    res = {"n": X.n, "k": X.k, "y_axes": [a + 1 for a in W.y_axes],
           "curves": args.curves, "seed": args.seed, **rep.to_dict()}
    ok = rep.verdict == "bounded"
    return inputs, res, EXIT_OK if ok else EXIT_FALSE, f"w probe: {rep.verdict}"


def cmd_delta(args):
    if not 0 <= args.t <= args.d <= args.n - 1:
        raise InputError("need 0 <= t <= d <= n - 1")
    if args.trials < 1:
        raise InputError("--trials must be positive")
    deltas, bounds = delta_bound_trials(args.n, args.d, args.t, args.trials, args.seed)
    ok = bool((deltas <= bounds * (1 + 1e-6) + 1e-12).all())
    worst = float((deltas / bounds).max()) if args.t else 0.0
    res = {"n": args.n, "d": args.d, "t": args.t, "trials": args.trials, "seed": args.seed,
           "verdict": ok, "max_delta_over_bound": float(f"{worst:.10g}"),
           "failures": int((deltas > bounds * (1 + 1e-6) + 1e-12).sum())}
    return {}, res, EXIT_OK if ok else EXIT_FALSE, \
        f"delta bound {'holds' if ok else 'fails'} on {args.trials} trials"


def cmd_polar(args):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    if not 1 <= args.k <= X.k - 1:
        raise InputError(f"--k must lie in 1..{X.k - 1}")
    if not X.k <= args.ell <= X.n - 1:
        raise InputError(f"--ell must lie in {X.k}..{X.n - 1}")
    chart = _chart(X.n, args.ell, args.chart) if args.chart is not None else None
    vote = polar_draws(X, args.ell, args.k, draws=args.draws, seed=args.seed, chart=chart)
    expected = X.k - args.k
    dim_ok = vote.majority in (expected, None)
    fiber_vals = [f.value for f in vote.fiber_checks]
    fiber_ok = all(v in (True, EMPTY) for v in fiber_vals)
    res = {"n": X.n, "k_dim": X.k, "ell": args.ell, "k": args.k, "seed": args.seed,
           "expected_dim": expected, "dim_ok": dim_ok, "fiber_formula_ok": fiber_ok,
           **vote.to_dict()}
    ok = dim_ok and fiber_ok
    return inputs, res, EXIT_OK if ok else EXIT_FALSE, \
        f"polar P_{args.k}: majority dim {vote.majority} (expected {expected} or empty)"


def cmd_transversality(args):
    text, inputs = _read(args.file)
    X = parse_variety(text)
    rows, ok = [], True
    for idx, ch in _charts(args, X.n, X.k):
        C = conormal_ideal(X, X.k, ch)
        if C.is_empty():
            continue
        v = transversality_check(C, samples=args.samples, seed=args.seed)
        ok = ok and v.passed
        rows.append({"index": idx, "chart": ch.label(), **v.to_dict()})
    res = {"n": X.n, "k": X.k, "samples": args.samples, "seed": args.seed,
           "passed": ok, "charts": rows}
    return inputs, res, EXIT_OK if ok else EXIT_FALSE, \
        f"transversality {'passes' if ok else 'fails'}"


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dconormal", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-only", action="store_true", help="no summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def charts(sp):
        sp.add_argument("--chart", type=int, default=0, help="chart index (0-based)")
        sp.add_argument("--all-charts", action="store_true")

    sp = sub.add_parser("conormal", parents=[common], help="chart ideals of C_d(X)")
    sp.add_argument("file")
    sp.add_argument("--d", type=int, required=True)
    charts(sp)
    sp = sub.add_parser("nash", parents=[common], help="Nash modification chart ideals")
    sp.add_argument("file")
    charts(sp)
    sp = sub.add_parser("fiber", parents=[common], help="fiber of C_d(X) over a point")
    sp.add_argument("file")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--point", required=True, help="comma-separated, e.g. '1,0,i'")
    charts(sp)
    for name, hlp in (("check-integral", "integrality of a chart subvariety"),
                      ("characterize", "is Z the d-conormal of its image?")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("zfile")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--chart", type=int, default=0)
    sp = sub.add_parser("whitney-a", parents=[common], help="Whitney condition a) along Y")
    sp.add_argument("file")
    sp.add_argument("--y-axes", required=True, help="1-based coordinate list, '' for the origin")
    sp.add_argument("--chart", type=int, default=None)
    sp = sub.add_parser("whitney-w", parents=[common], help="numeric probe of condition w)")
    sp.add_argument("file")
    sp.add_argument("--y-axes", required=True)
    sp.add_argument("--curves", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("delta", parents=[common], help="randomized delta-inequality check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("polar", parents=[common], help="polar varieties for random D")
    sp.add_argument("file")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--draws", type=int, default=5)
    sp.add_argument("--chart", type=int, default=None)
    sp = sub.add_parser("transversality", parents=[common],
                        help="transversality of the Nash charts to the Grassmannian factor")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=25)
    sp.add_argument("--seed", type=int, default=0)
    charts(sp)
    return p


_COMMANDS = {
    "conormal": cmd_conormal,
    "nash": lambda a: cmd_conormal(a, nash=True),
    "fiber": cmd_fiber,
    "check-integral": cmd_check_integral,
    "characterize": cmd_characterize,
    "whitney-a": cmd_whitney_a,
    "whitney-w": cmd_whitney_w,
    "delta": cmd_delta,
    "polar": cmd_polar,
    "transversality": cmd_transversality,
}

_CAVEATS = {
    "characterize": ["Z is assumed reduced and irreducible; this is not verified"],
    "whitney-a": ["checked globally along Y, which is stronger than the pointwise statement"],
    "whitney-w": ["numeric probe, not a proof"],
    "polar": ["D is drawn at random; draws disagreeing with the majority are flagged non-generic"],
}

_STATUS = {EXIT_OK: "ok", EXIT_FALSE: "verdict-false",
           EXIT_INPUT: "input-error", EXIT_RESOURCE: "resource-cap"}


def _echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json_only")}


def run(argv: list[str] | None = None) -> tuple[dict, int, str]:
    """Run one command; returns (report, exit code, summary)."""
    args = _parser().parse_args(argv)
    report = {"tool": "dconormal", "version": __version__,
              "command": args.command, "args": _echo(args)}
    try:
        inputs, results, code, summary = _COMMANDS[args.command](args)
        report.update(inputs=inputs, status=_STATUS[code], results=results,
                      caveats=_CAVEATS.get(args.command, []))
    except ResourceLimitError as exc:
        code, summary = EXIT_RESOURCE, f"resource cap reached: {exc}"
        report.update(status=_STATUS[code], error={"type": "ResourceLimit", "message": str(exc)})
    except (InputError, ParseError, EmptyVarietyError, GenericRankError, NotContainedError,
            EmptySmoothLocusError, NoSmoothSamplesError, NoCurvesError, ValueError) as exc:
        kind = "EmptyVariety" if isinstance(exc, EmptyVarietyError) else type(exc).__name__
        code, summary = EXIT_INPUT, f"{kind}: {exc}"
        report.update(status=_STATUS[code], error={"type": kind, "message": str(exc)})
    report["exit_code"] = code
    return report, code, summary


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code, summary = run(argv)
    sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    if "--json-only" not in argv:
        sys.stderr.write(f"dconormal {report['command']}: {summary}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
