"""Command-line interface: ``extremezeros {bounds,zeros,verify,sweep,asym}``.

Exit status is 0 when nothing failed, 1 when a hard check failed, 2 for bad
arguments or parameters outside the domain and 3 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from .asymptotics import jacobi_gamma, normalized_gaps
from .bounds import bound_set
from .harness import (
    SweepConfig,
    _parse_range,
    geometric_range,
    linear_range,
    records_to_json,
    run_sweep,
    standard_config,
    verify_point,
)
from .params import DomainError, JacobiParams, make_family
from .zeros import OracleError, all_zeros

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("extremezeros")


def _num(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _point_args(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True, choices=("laguerre", "jacobi"))
    p.add_argument("--k", type=int, required=True, help="degree")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, help="second Jacobi exponent")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _family(args):
    if args.family == "jacobi" and args.beta is None:
        raise DomainError("beta", None, "jacobi needs --beta")
    return make_family(args.family, args.k, args.alpha, args.beta)


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_bounds(args) -> int:
    bs = bound_set(_family(args))
    if args.json:
        print(json.dumps([asdict(b) for b in bs], indent=2))
        return EXIT_OK
    print(f"{'target':6} {'kind':5} {'source':18} {'role':4} {'applies':7} value")
    for b in bs:
        note = f"  ({b.condition_note})" if b.condition_note else ""
        print(f"{b.target:6} {b.kind:5} {b.source:18} {b.role:4} {_num(b.applicable):7} {_num(b.value)}{note}")
    return EXIT_OK


def cmd_zeros(args) -> int:
    zs = all_zeros(_family(args), args.target_rel_err)
    if args.json:
        doc = {
            "zeros": [float(z) for z in zs.zeros],
            "accuracy": zs.accuracy,
            "abs_accuracy": zs.abs_accuracy,
            "min_gap": zs.min_gap,
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    for z in zs.zeros:
        print(_num(float(z)))
    print(f"# accuracy {zs.accuracy:.3g}  min_gap {_num(zs.min_gap)}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = _family(args)
    cfg = SweepConfig(family=args.family, bethe_tol=args.tol, target_rel_err=args.target_rel_err)
    rec = verify_point(fam, cfg)
    if args.json:
        print(records_to_json([rec]), end="")
    else:
        print(f"status {rec.status}")
        print(f"x1 {_num(rec.x1)}  xk {_num(rec.xk)}")
        for b in rec.bounds:
            if not b.applicable:
                state = "n/a"
            else:
                state = "ok" if b.satisfied else "FAIL"
            print(f"  {b.target}-{b.kind}-{b.source:18} {state:4} value {_num(b.value)} margin {_num(b.margin)}")
        print(f"bethe residual {_num(rec.bethe_residual)} (tol {_num(rec.bethe_tolerance)})")
        print(f"envelope min D {_num(rec.envelope_min_margin)}")
        print(f"gap checks {rec.gap_checks_passed}/{rec.gap_checks_applicable}")
        if rec.failures:
            print("failures: " + ", ".join(rec.failures))
        if rec.soft_failures:
            print("soft warnings: " + ", ".join(rec.soft_failures))
    if rec.status == "oracle-failed":
        return EXIT_FAIL
    return EXIT_OK if rec.status == "pass" else EXIT_FAIL


def cmd_asym(args) -> int:
    fam = _family(args)
    zs = all_zeros(fam, args.target_rel_err)
    gaps = normalized_gaps(zs)
    doc = {"gaps": [asdict(g) for g in gaps]}
    if isinstance(fam, JacobiParams):
        doc["gamma"] = asdict(jacobi_gamma(fam.derived))
    if args.json:
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    if "gamma" in doc:
        g = doc["gamma"]
        print(f"gamma {_num(g['gamma'])}  regime {g['regime']}  small {_num(g['small_gamma'])}")
    for g in gaps:
        flag = "" if g.in_regime else "  (outside stated regime)"
        print(f"{g.target:3} {g.equation_tag:26} raw {_num(g.raw_gap)} scale {_num(g.scale)} normalized {_num(g.normalized)}{flag}")
    return EXIT_OK


def _sweep_config(args) -> SweepConfig:
    data: dict = {}
    if args.preset:
        base = asdict(standard_config(args.preset))
        data.update(base)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data.update(asdict(SweepConfig.from_json(fh.read())))
    # command-line values override the file
    if args.family:
        data["family"] = args.family
    if args.k:
        data["k_values"] = _ints(args.k)
    if args.k_range:
        data["k_values"] = geometric_range(*_parse_range(args.k_range))
    if args.alpha:
        data["alpha_values"] = _floats(args.alpha)
    if args.alpha_range:
        data["alpha_values"] = linear_range(*_parse_range(args.alpha_range))
    if args.beta:
        data["beta_values"] = _floats(args.beta)
    if args.beta_range:
        data["beta_values"] = linear_range(*_parse_range(args.beta_range))
    for key, attr in (
        ("bethe_tol", "tol"),
        ("target_rel_err", "target_rel_err"),
        ("output_path", "out"),
        ("output_format", "format"),
        ("jobs", "jobs"),
    ):
        v = getattr(args, attr)
        if v is not None:
            data[key] = v
    if args.alpha_ge_beta:
        data["alpha_ge_beta"] = True
    if args.no_empirical_k20:
        data["include_empirical_k20"] = False
    if "family" not in data:
        raise DomainError("family", None, "sweep needs --family, --preset or a config file")
    return SweepConfig(**data)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    summary = run_sweep(cfg)
    doc = summary.as_dict()
    if not args.full_summary:
        doc.pop("sandwich_widths")
    text = json.dumps(doc, indent=2) + "\n"
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return summary.exit_status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extremezeros", description="Bounds on extreme zeros of Laguerre and Jacobi polynomials")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="print every bound for one parameter point")
    _point_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("zeros", help="print all zeros for one parameter point")
    _point_args(p)
    p.add_argument("--target-rel-err", type=float, default=1e-12)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("verify", help="run every check at one parameter point")
    _point_args(p)
    p.add_argument("--tol", type=float, default=1e-6, help="Bethe residual floor")
    p.add_argument("--target-rel-err", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asym", help="normalized extreme-zero gaps and the Jacobi gamma regime")
    _point_args(p)
    p.add_argument("--target-rel-err", type=float, default=1e-12)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("sweep", help="verify a parameter grid and write a CSV/JSON report")
    p.add_argument("--config", help="JSON config file (command-line values override it)")
    p.add_argument("--preset", choices=("laguerre", "jacobi"), help="start from the standard grid")
    p.add_argument("--family", choices=("laguerre", "jacobi"))
    p.add_argument("--k", help="comma-separated degrees")
    p.add_argument("--k-range", help="geometric range start:stop:factor")
    p.add_argument("--alpha", help="comma-separated values")
    p.add_argument("--alpha-range", help="linear range start:stop:step")
    p.add_argument("--beta", help="comma-separated values")
    p.add_argument("--beta-range", help="linear range start:stop:step")
    p.add_argument("--alpha-ge-beta", action="store_true", help="drop grid pairs with beta > alpha")
    p.add_argument("--tol", type=float, help="Bethe residual floor (default 1e-6)")
    p.add_argument("--target-rel-err", type=float)
    p.add_argument("--no-empirical-k20", action="store_true", help="skip the soft 20 <= k < 56 Jacobi check")
    p.add_argument("--out", help="report path")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--jobs", type=int)
    p.add_argument("--summary", help="write the summary JSON here instead of stdout")
    p.add_argument("--full-summary", action="store_true", help="include the per-point sandwich widths")
    p.set_defaults(func=cmd_sweep)
    return parser


_NUMERIC_FLAGS = frozenset({"--alpha", "--beta", "--alpha-range", "--beta-range"})


def _glue_negative_values(argv):
    # argparse takes "-0.5:1:0.5" or "-0.5,0" for an option; bind such values to their flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _NUMERIC_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleError as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
