"""Command-line interface: ``gneighbor <command> ...``.

Commands: noise, denoise, evaluate, sweep, benchmark, hwverify, hwreport.
Exit status is 0 on success, 1 when a hardware check finds a counterexample,
2 on invalid arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .bench import compare_methods, run_sweep, summarize, threshold_grid, variance_roi
from .corpus import load_corpus
from .gfilter import Aggregator, DistanceMode, FilterConfig, filter_image, threshold_from_normalized
from .imaging import NoiseSpec, PaddingMode, PgmError, add_salt_pepper, read_image, write_pgm
from .metrics import Circle, Rectangle, evaluate, reports_to_csv

log = logging.getLogger("gneighbor")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing helpers


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _ints(n: int):
    def parse(text: str):
        parts = text.split(",")
        if len(parts) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers")
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None

    return parse


def _add_threshold(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--threshold", type=int, help="similarity threshold on the 0-255 scale (default 13)")
    g.add_argument("--threshold-norm", type=float, help="similarity threshold on the 0-1 scale")


def _threshold(args) -> int:
    if args.threshold_norm is not None:
        try:
            return threshold_from_normalized(args.threshold_norm)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    eta = 13 if args.threshold is None else args.threshold
    if not 0 <= eta <= 255:
        raise UsageError(f"--threshold must lie in [0, 255], got {eta}")
    return eta


def _add_roi(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--roi-circle", type=_ints(3), metavar="X,Y,R", help="circular region: column, row, radius")
    g.add_argument("--roi-rect", type=_ints(4), metavar="R0,R1,C0,C1", help="inclusive row/column bounds")


def _roi(args):
    if getattr(args, "roi_circle", None):
        x, y, r = args.roi_circle
        return Circle(x, y, r)
    if getattr(args, "roi_rect", None):
        return Rectangle(*args.roi_rect)
    return None


def _noise(args) -> NoiseSpec:
    try:
        return NoiseSpec(args.density, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path):
    try:
        return read_image(path)
    except (OSError, PgmError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands


def cmd_noise(args) -> int:
    spec = _noise(args)
    img = _read(args.input)
    write_pgm(args.output, add_salt_pepper(img, spec), binary=not args.ascii)
    return 0


def cmd_denoise(args) -> int:
    try:
        cfg = FilterConfig(
            window=args.window,
            threshold=_threshold(args),
            aggregator=Aggregator(args.filter),
            distance=DistanceMode(args.distance),
            padding=PaddingMode(args.padding),
            adaptive=args.adaptive,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    img = _read(args.input)
    write_pgm(args.output, filter_image(img, cfg, workers=args.workers), binary=not args.ascii)
    echo = {
        "input": str(args.input),
        "output": str(args.output),
        "window": cfg.window,
        "threshold": cfg.threshold,
        "filter": cfg.aggregator.value,
        "distance": cfg.distance.value,
        "padding": cfg.padding.value,
        "adaptive": cfg.adaptive,
    }
    print(json.dumps(echo))
    return 0


def cmd_evaluate(args) -> int:
    roi = _roi(args)
    ref, dis = _read(args.reference), _read(args.distorted)
    try:
        rep = evaluate(ref, dis, roi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(rep.to_dict()))
    elif args.format == "csv":
        sys.stdout.write(reports_to_csv([((), rep)]))
    else:
        d = rep.to_dict()
        for key in ("mse", "psnr_db", "ssim", "ssim_l", "ssim_c", "ssim_s", "roi"):
            print(f"{key:8s} {d[key]}")
    return 0


def cmd_sweep(args) -> int:
    try:
        grid = threshold_grid(args.lo, args.hi, args.step)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 0.0 <= args.lo <= 1.0 or not 0.0 <= args.hi <= 1.0:
        raise UsageError("sweep bounds must lie in [0, 1]")
    noise = _noise(args)
    corpus = load_corpus(args.corpus)
    if not corpus:
        raise UsageError("no readable corpus images")
    res = run_sweep(
        corpus, grid, noise, window=args.window, aggregator=Aggregator(args.filter), padding=PaddingMode(args.padding)
    )
    if args.format == "json":
        text = json.dumps(
            {
                "thresholds": res.thresholds,
                "images": res.images,
                "mean_psnr": [None if math.isinf(v) else v for v in res.mean_curve("psnr")],
                "mean_ssim": res.mean_curve("ssim"),
                "best_threshold_psnr": res.best_threshold("psnr"),
            }
        ) + "\n"
    elif args.format == "csv":
        text = res.to_csv()
    else:
        lines = [f"{'threshold':>9} {'eta':>4} {'mean PSNR':>10} {'mean SSIM':>10}"]
        for t, p, s in zip(res.thresholds, res.mean_curve("psnr"), res.mean_curve("ssim")):
            lines.append(f"{t:9.3f} {threshold_from_normalized(t):4d} {p:10.3f} {s:10.4f}")
        lines.append(f"best threshold by mean PSNR: {res.best_threshold('psnr'):.3f}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.figures:
        from .plotting import plot_sweep

        for p in plot_sweep(res, args.figures):
            log.info("wrote %s", p)
    return 0


def cmd_benchmark(args) -> int:
    noise = _noise(args)
    eta = _threshold(args)
    corpus = load_corpus(args.corpus)
    if not corpus:
        raise UsageError("no readable corpus images")
    roi = None if args.no_reduced else (_roi(args) or variance_roi)
    rows = compare_methods(corpus, noise, eta, args.window, PaddingMode(args.padding), roi=roi)
    summary = summarize(rows)
    if args.format == "csv":
        text = reports_to_csv(
            [((r.image, r.method, r.reference), r.report) for r in rows], ("image", "method", "reference")
        )
    elif args.format == "json":
        text = json.dumps(
            [{"reference": ref, "method": m, **{k: list(v) for k, v in stats.items()}} for (ref, m), stats in summary.items()]
        ) + "\n"
    else:
        lines = []
        for (ref, m), st in summary.items():
            lines.append(
                f"{ref:8s} {m:16s} MSE {st['mse'][0]:.4f}±{st['mse'][1]:.4f}  "
                f"PSNR {st['psnr'][0]:.2f}±{st['psnr'][1]:.2f}  SSIM {st['ssim'][0]:.4f}±{st['ssim'][1]:.4f}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.figures:
        from .plotting import plot_comparison

        for p in plot_comparison(summary, args.figures):
            log.info("wrote %s", p)
    return 0


def cmd_hwverify(args, comparator=None) -> int:
    from .hwsim import compare_leq
    from .hwsim import verify

    if args.bits not in (4, 8):
        raise UsageError("--bits must be 4 or 8")
    limit = (1 << args.bits) - 1
    thresholds = args.g or ([13] if args.bits == 8 else [5])
    if any(not 0 <= g <= limit for g in thresholds):
        raise UsageError(f"thresholds must lie in [0, {limit}]")
    results = verify.run_all(
        args.bits,
        exhaustive=args.exhaustive,
        thresholds=thresholds,
        crossbar_trials=args.crossbar_trials,
        comparator=comparator or compare_leq,
    )
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({"ok": ok, "checks": [r.to_dict() for r in results]}, indent=2))
    elif args.format == "csv":
        print("check,total,passed,failed")
        for r in results:
            print(f"{r.name},{r.total},{r.passed},{r.total - r.passed}")
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.passed}/{r.total}")
            for ce in r.counterexamples:
                print(f"    counterexample {ce}")
    return 0 if ok else 1


def cmd_hwreport(args) -> int:
    from .hwsim import AreaPowerLedger, area_power_report

    if args.pixels < 1:
        raise UsageError("--pixels must be at least 1")
    ledger = AreaPowerLedger.published()
    if args.pixels != 1:
        ledger = ledger.scaled(args.pixels)
        if args.format == "text":
            print(f"# scaled linearly to {args.pixels} identification circuits (model assumption)")
    sys.stdout.write(area_power_report(ledger, args.format) + ("\n" if args.format == "json" else ""))
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gneighbor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def noise_opts(p):
        p.add_argument("--density", type=float, default=0.05, help="salt & pepper density (default 0.05)")
        p.add_argument("--seed", type=int, default=0)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("noise", help="add salt & pepper noise")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")
    noise_opts(p)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("denoise", help="run the G-neighbor or square filter")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--window", type=int, default=3)
    _add_threshold(p)
    p.add_argument("--filter", choices=[a.value for a in Aggregator], default="mean")
    p.add_argument("--adaptive", type=_bool, nargs="?", const=True, default=True)
    p.add_argument("--distance", choices=[d.value for d in DistanceMode], default="abs")
    p.add_argument("--padding", choices=[m.value for m in PaddingMode], default="zero")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("evaluate", help="quality report of a distorted image against a reference")
    p.add_argument("--reference", required=True)
    p.add_argument("--distorted", required=True)
    _add_roi(p)
    fmt(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="threshold sweep over a corpus")
    p.add_argument("--corpus", nargs="*", help="image files, directories or builtin:<name>")
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=0.3)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--filter", choices=[a.value for a in Aggregator], default="mean")
    p.add_argument("--padding", choices=[m.value for m in PaddingMode], default="zero")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--figures", help="directory for PNG figures")
    noise_opts(p)
    fmt(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("benchmark", help="square vs adaptive mean/median, full and reduced reference")
    p.add_argument("--corpus", nargs="*")
    p.add_argument("--window", type=int, default=3)
    _add_threshold(p)
    p.add_argument("--padding", choices=[m.value for m in PaddingMode], default="zero")
    _add_roi(p)
    p.add_argument("--no-reduced", action="store_true", help="skip the reduced-reference evaluation")
    p.add_argument("--out")
    p.add_argument("--figures")
    noise_opts(p)
    fmt(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("hwverify", help="hardware/software equivalence checks")
    p.add_argument("--bits", type=int, default=8)
    p.add_argument("--exhaustive", type=_bool, nargs="?", const=True, default=True)
    p.add_argument("--g", type=int, action="append", help="threshold word for the pipeline check (repeatable)")
    p.add_argument("--crossbar-trials", type=int, default=1000)
    fmt(p)
    p.set_defaults(func=cmd_hwverify)

    p = sub.add_parser("hwreport", help="area/power ledger")
    p.add_argument("--pixels", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_hwreport)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gneighbor {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
