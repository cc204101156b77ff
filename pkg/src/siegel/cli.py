"""Command-line interface: scenario runner plus one-shot numeric subcommands.

Usage summary:
    siegel <scenario> --config cfg.json [--out report.json] [--seed S]
                      [--threads T] [--csv ratios.csv]
    siegel lattice build|verify ...
    siegel berezin | averaging | lp-norm | keylemma ...
    siegel schatten --measure mu.json --p P [--p P ...] [--report out.json]

Scenario runs exit 0 iff every verdict passed.
"""

import argparse
import json
import sys

import numpy as np

from .chart import QuadratureSpec, Region
from .experiments import SCENARIO_NAMES, ExperimentConfig, run_scenario
from .geometry import SiegelPoint, coords_of
from .lattice import Lattice, build_lattice, overlap_count, verify_covering
from .measures import DENSITY_FAMILIES, AtomicMeasure
from .transforms import (
    averaging_field,
    averaging_function,
    berezin_field,
    berezin_transform,
    keylemma_check,
    lp_lambda_norm,
)
from .schatten import gram_matrix, schatten_norm, spectrum


def load_measure(path):
    """Measure from JSON: atomic ({"atoms": ...}) or a named density family."""
    with open(path) as fh:
        data = json.load(fh)
    if "atoms" in data:
        return AtomicMeasure.from_json(data)
    if "family" in data:
        name = data["family"]
        if name not in DENSITY_FAMILIES:
            raise ValueError(f"unknown density family {name!r}; known: {sorted(DENSITY_FAMILIES)}")
        region = Region.from_dict(data["region"])
        params = data.get("params", {})
        if name == "gaussian-in-coordinates":
            params = dict(params)
            params["center"] = [complex(re, im) for re, im in params["center"]]
        return DENSITY_FAMILIES[name](region, **params)
    raise ValueError("measure JSON must contain 'atoms' or 'family'")


def parse_point(text):
    """A point from JSON text: [[re, im], ...]."""
    return SiegelPoint.from_json(json.loads(text))


def _emit(record, out=None):
    text = json.dumps(record, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    print(text)


def _cmd_scenario(args):
    overrides = {"seed": args.seed, "threads": args.threads, "out": args.out}
    if args.config:
        config = ExperimentConfig.from_json_file(args.config, scenario=args.scenario, **overrides)
    else:
        config = ExperimentConfig.from_dict({"scenario": args.scenario}, **overrides)
    report = run_scenario(config)
    if args.out:
        report.write(args.out)
    if args.csv:
        report.write_csv(args.csv)
    failed = [v for v in report.verdicts if not v["passed"]]
    print(f"{args.scenario}: {len(report.verdicts) - len(failed)}/{len(report.verdicts)} "
          f"verdicts passed in {report.runtime_s:.1f}s")
    for v in failed:
        print(f"  FAIL {v['name']}: value={v['value']:.6g} threshold={v['threshold']:.6g}")
    return 0 if not failed else 1


def _cmd_lattice(args):
    if args.action == "build":
        with open(args.region) as fh:
            region = Region.from_dict(json.load(fh))
        lat = build_lattice(region, args.r, seed=args.seed, budget=args.budget)
        _emit(lat.to_json(), args.out)
        print(f"built {len(lat)} lattice points", file=sys.stderr)
        return 0
    with open(args.lattice) as fh:
        lat = Lattice.from_json(json.load(fh))
    report = verify_covering(lat, samples=args.samples, seed=args.seed)
    report["min_separation"] = lat.min_separation()
    report["overlap_count"] = overlap_count(lat, 2 * lat.r, seed=args.seed)
    _emit(report, args.out)
    return 0 if report["fraction_covered"] == 1.0 else 1


def _cmd_berezin(args):
    mu = load_measure(args.measure)
    z = parse_point(args.point)
    value = berezin_transform(mu, z)
    _emit({"inputs": {"measure": args.measure, "point": z.to_json()},
           "value": float(value), "error_estimate": 0.0, "tail_estimate": 0.0}, args.out)
    return 0


def _cmd_averaging(args):
    mu = load_measure(args.measure)
    z = parse_point(args.point)
    value = averaging_function(mu, z, args.r)
    _emit({"inputs": {"measure": args.measure, "point": z.to_json(), "r": args.r},
           "value": float(value), "error_estimate": 0.0, "tail_estimate": 0.0}, args.out)
    return 0


def _cmd_lp_norm(args):
    mu = load_measure(args.measure)
    with open(args.region) as fh:
        region = Region.from_dict(json.load(fh))
    spec = QuadratureSpec(region=region, rel_tol=args.rel_tol)
    if args.transform == "berezin":
        fld = berezin_field(mu)
    else:
        fld = averaging_field(mu, args.r)
    norm, err = lp_lambda_norm(fld, args.p, spec)
    _emit({"inputs": {"measure": args.measure, "transform": args.transform,
                      "p": args.p, "r": args.r, "region": region.to_dict()},
           "value": norm, "error_estimate": err, "tail_estimate": 0.0}, args.out)
    return 0


def _cmd_keylemma(args):
    z = parse_point(args.point) if args.point else SiegelPoint([0.0] * (args.n - 1) + [1j])
    res = keylemma_check(z, args.s, args.t)
    _emit({"inputs": {"n": coords_of(z).size, "s": args.s, "t": args.t, "point": z.to_json()},
           "value": res.numeric, "closed_form": res.closed_form,
           "error_estimate": abs(res.ratio - 1.0), "tail_estimate": res.tail_estimate}, args.out)
    return 0


def _cmd_schatten(args):
    mu = load_measure(args.measure)
    if not isinstance(mu, AtomicMeasure):
        raise SystemExit("schatten requires an atomic measure")
    gram = gram_matrix(mu)
    spec = spectrum(gram)
    ev = spec.eigenvalues
    positive = ev[ev > 0]
    report = {
        "inputs": {"measure": args.measure, "atoms": len(mu)},
        "eigenvalues": ev.tolist(),
        "norms": {str(p): schatten_norm(spec, p) for p in (args.p or [1.0, 2.0])},
        "trace": spec.trace,
        "condition": {
            "rank": int(positive.size),
            "spectral_radius": float(ev[0]) if ev.size else 0.0,
            "condition_number": float(positive[0] / positive[-1]) if positive.size else np.inf,
        },
    }
    _emit(report, args.report)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="siegel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in SCENARIO_NAMES:
        sp = sub.add_parser(name, help=f"run the {name} scenario")
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--out", help="write the JSON report here")
        sp.add_argument("--csv", help="write the flat ratio table here")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--threads", type=int, default=None)
        sp.set_defaults(func=_cmd_scenario, scenario=name)

    lat = sub.add_parser("lattice", help="build or verify r-lattices")
    lat.add_argument("action", choices=["build", "verify"])
    lat.add_argument("--region", help="region JSON file (build)")
    lat.add_argument("--r", type=float, default=0.5)
    lat.add_argument("--seed", type=int, default=0)
    lat.add_argument("--budget", type=int, default=50_000)
    lat.add_argument("--lattice", help="lattice JSON file (verify)")
    lat.add_argument("--samples", type=int, default=20_000)
    lat.add_argument("--out")
    lat.set_defaults(func=_cmd_lattice)

    ber = sub.add_parser("berezin", help="Berezin transform at a point")
    ber.add_argument("--measure", required=True)
    ber.add_argument("--point", required=True, help='JSON, e.g. "[[0,0],[0,1]]"')
    ber.add_argument("--out")
    ber.set_defaults(func=_cmd_berezin)

    avg = sub.add_parser("averaging", help="averaging function at a point")
    avg.add_argument("--measure", required=True)
    avg.add_argument("--point", required=True)
    avg.add_argument("--r", type=float, default=0.5)
    avg.add_argument("--out")
    avg.set_defaults(func=_cmd_averaging)

    lp = sub.add_parser("lp-norm", help="L^p(dlambda) norm of a transform")
    lp.add_argument("--measure", required=True)
    lp.add_argument("--transform", choices=["berezin", "averaging"], default="berezin")
    lp.add_argument("--p", type=float, required=True)
    lp.add_argument("--r", type=float, default=0.5)
    lp.add_argument("--region", required=True, help="region JSON file")
    lp.add_argument("--rel-tol", type=float, default=1e-2, dest="rel_tol")
    lp.add_argument("--out")
    lp.set_defaults(func=_cmd_lp_norm)

    kl = sub.add_parser("keylemma", help="numeric vs closed-form key integral")
    kl.add_argument("--n", type=int, default=1)
    kl.add_argument("--s", type=float, required=True)
    kl.add_argument("--t", type=float, required=True)
    kl.add_argument("--point", help="JSON point; default (0', i)")
    kl.add_argument("--out")
    kl.set_defaults(func=_cmd_keylemma)

    sch = sub.add_parser("schatten", help="spectrum and Schatten norms of T_mu")
    sch.add_argument("--measure", required=True)
    sch.add_argument("--p", type=float, action="append")
    sch.add_argument("--report", help="write the JSON report here")
    sch.set_defaults(func=_cmd_schatten)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
