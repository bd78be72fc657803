"""Command line entry point: ``gen``, ``fit``, ``sweep`` and ``check``.

Exit codes: 0 success, 1 config or argument error, 2 numerical divergence
(or a failed check), 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .checks import run_checks
from .errors import ConfigError, DivergenceError, SchemaError, SubspaceError
from .estimators import PgdOptions
from .harness import (
    _BASIS,
    _DATA,
    _TEST,
    estimator_name,
    fit_point,
    load_config,
    plot_curves,
    run_sweep,
    write_csv,
)
from .model import (
    Dataset,
    FeatureSet,
    GroundTruthModel,
    derive_seed,
    grow_feature_orders,
    load_matrix,
    make_model,
    sample_dataset,
    save_matrix,
)

EXIT_OK, EXIT_CONFIG, EXIT_DIVERGED, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _alpha(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "+inf") else float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subspace-plane", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a model and dataset to a directory")
    gen.add_argument("--basis", choices=("hadamard", "random"), default="hadamard")
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--sigma", type=float, default=0.1)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--nsup", type=int, default=None, help="supervised pairs (default n)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output directory")

    fit = sub.add_parser("fit", help="fit one estimate at one plane coordinate")
    fit.add_argument("--alpha", type=_alpha, required=True, help="constraint softness, 'inf' for none")
    fit.add_argument("--nsup", type=int, required=True)
    fit.add_argument("--p", type=int, required=True)
    fit.add_argument("--k", type=int, default=None, help="subspace dimension (default m)")
    fit.add_argument("--data", required=True, help="directory written by 'gen'")
    fit.add_argument("--order-seed", type=int, default=0)
    fit.add_argument("--max-iters", type=int, default=2000)
    fit.add_argument("--rel-tol", type=float, default=1e-8)
    fit.add_argument("--report", default=None, help="JSON report path (default stdout)")

    sweep = sub.add_parser("sweep", help="run an experiment from a config file")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out-csv", default=None)
    sweep.add_argument("--out-plot", default=None)

    check = sub.add_parser("check", help="run invariant checks on small random instances")
    check.add_argument("--seed", type=int, default=0)
    return parser


def _write_meta(path: Path, meta: dict) -> None:
    path.write_text("".join(f"{k} = {v}\n" for k, v in meta.items()))


def _read_meta(path: Path) -> dict:
    meta = {}
    for line in path.read_text().splitlines():
        if "=" in line:
            k, v = (s.strip() for s in line.split("=", 1))
            meta[k] = v
    return meta


def cmd_gen(args) -> int:
    n_sup = args.n if args.nsup is None else args.nsup
    model = make_model(args.basis, args.d, args.m, args.sigma, derive_seed(args.seed, _BASIS))
    data = sample_dataset(model, args.n, n_sup, derive_seed(args.seed, _DATA))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_matrix(out / "basis.txt", model.basis)
    save_matrix(out / "x.txt", data.x_matrix)
    save_matrix(out / "z.txt", data.z_matrix)
    save_matrix(out / "x_mean.txt", data.sample_mean)
    save_matrix(out / "z_mean.txt", data.latent_mean)
    _write_meta(
        out / "meta.txt",
        {"basis": args.basis, "d": args.d, "m": args.m, "sigma": repr(float(args.sigma)),
         "n": args.n, "nsup": n_sup, "seed": args.seed},
    )
    print(f"wrote model and dataset (d={args.d}, m={args.m}, n={args.n}) to {out}")
    return EXIT_OK


def load_generated(directory) -> tuple:
    """Read back ``(model, dataset, meta)`` from a ``gen`` output directory."""
    directory = Path(directory)
    meta = _read_meta(directory / "meta.txt")
    model = GroundTruthModel(load_matrix(directory / "basis.txt"), float(meta["sigma"]))
    data = Dataset(
        load_matrix(directory / "x.txt"),
        load_matrix(directory / "z.txt"),
        int(meta["nsup"]),
        load_matrix(directory / "x_mean.txt")[:, 0],
        load_matrix(directory / "z_mean.txt")[:, 0],
    )
    return model, data, meta


def cmd_fit(args) -> int:
    model, data, meta = load_generated(args.data)
    k = model.latent_dim if args.k is None else args.k
    if not 0 <= args.nsup <= data.n_sup:
        raise ConfigError(f"--nsup must lie in [0, {data.n_sup}] for this dataset")
    if not 1 <= args.p <= model.ambient_dim:
        raise ConfigError(f"--p must lie in [1, {model.ambient_dim}]")
    order = grow_feature_orders(model.ambient_dim, 1, args.order_seed)[0]
    features = FeatureSet.from_order(order, args.p)
    opts = PgdOptions(max_iters=args.max_iters, rel_tol=args.rel_tol, seed=derive_seed(args.order_seed, 3))
    est, iters, err = fit_point(
        data, model, features, args.alpha, args.nsup, k, opts, test_seed=derive_seed(int(meta["seed"]), _TEST)
    )
    report = {
        "estimator": estimator_name(args.alpha, args.nsup, data.n),
        "alpha": "inf" if math.isinf(args.alpha) else args.alpha,
        "n_sup": args.nsup,
        "p": args.p,
        "k": est.target_dim,
        "features": list(features.indices),
        "iterations": iters,
        "e_in": err.e_in,
        "e_in_S": err.e_in_S,
        "e_out": err.e_out,
        "e_out_source": err.e_out_source,
        "estimate": np.asarray(est.matrix).tolist(),
    }
    text = json.dumps(report, indent=2)
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    out_csv = args.out_csv or config.out_csv
    out_plot = args.out_plot or config.out_plot
    if not out_csv and not out_plot:
        raise ConfigError("no output requested: give --out-csv/--out-plot or out_csv/out_plot in the config")
    result = run_sweep(config)
    if out_csv:
        write_csv(result, out_csv)
    if out_plot:
        plot_curves(result, out_plot)
    print(f"{len(result.records)} records")
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_checks(args.seed)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<28} {r.detail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_DIVERGED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"gen": cmd_gen, "fit": cmd_fit, "sweep": cmd_sweep, "check": cmd_check}[args.command]
    try:
        return handler(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SubspaceError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
