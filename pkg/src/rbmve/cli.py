"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data or validation error,
3 numeric degeneracy.
"""

from __future__ import annotations

import argparse
import sys

from .adm import adm_between
from .errors import RbmVeError
from .experiment import ExperimentConfig, run_experiment, save_trace, save_ve_csv, ve_stats, write_json
from .rbm import TrainConfig, load_model, save_model, train_cd1
from .synth import DistributionSpec, default_spec, generate_synthetic, load_csv, save_csv
from .virtual import AUTO, VeConfig, run_generation

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2**64), got {text}")
    return value


def _tolerance(text):
    return AUTO if text == AUTO else float(text)


def cmd_synth(args):
    spec = DistributionSpec.load(args.spec) if args.spec else default_spec()
    data = generate_synthetic(spec, args.n, args.seed)
    save_csv(data, args.out)
    print(f"wrote {data.shape[0]} x {data.shape[1]} dataset to {args.out}")


def cmd_train(args):
    data = load_csv(args.data)
    config = TrainConfig(
        epochs=args.epochs,
        learning_rate=args.lr,
        batch_size=args.batch,
        weight_init_stddev=args.init_stddev,
        seed=args.seed,
    )
    model, trace = train_cd1(data, args.hidden, config)
    save_model(model, args.out)
    trace_path = args.trace or f"{args.out}.trace.csv"
    save_trace(trace, trace_path)
    print(f"final training MSE {trace[-1]:.6g}; model written to {args.out}, trace to {trace_path}")


def cmd_genve(args):
    model = load_model(args.model)
    train = load_csv(args.train_data)
    config = VeConfig(
        n_candidates=args.candidates,
        tolerance=args.tolerance,
        oscillations=args.oscillations,
        seed=args.seed,
    )
    result = run_generation(model, train, config)
    stats = ve_stats(model, train, result)
    save_ve_csv(result.virtual_examples, args.out)
    write_json(stats, args.stats)
    line = f"accepted {result.n_accepted}/{result.n_candidates} at tolerance {result.tolerance_used:.6g}"
    if stats["adm"] is not None:
        line += f"; ADM {stats['adm']:.4f} ({stats['band']})"
    print(line)


def cmd_adm(args):
    model = load_model(args.model)
    value = adm_between(model, load_csv(args.train), load_csv(args.test))
    print(f"ADM {value.adm:.4f} ({value.band})  mse_tst={value.mse_tst:.6g} mse_trn={value.mse_trn:.6g}")
    if args.json:
        write_json(
            {"mse_trn": value.mse_trn, "mse_tst": value.mse_tst, "adm": value.adm, "band": str(value.band)},
            args.json,
        )


def cmd_experiment(args):
    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    report = run_experiment(config, args.out_dir)
    print(
        f"mse_trn {report['mse_trn']:.6g}; accepted {report['n_accepted']}/{report['n_candidates']}"
        + (f"; ADM {report['adm']:.4f} ({report['band']})" if report["adm"] is not None else "")
    )
    print(f"report written to {args.out_dir}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rbmve", description="Virtual example generation from a trained RBM.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a multi-modal synthetic dataset")
    p.add_argument("--spec", help="DistributionSpec JSON (default: built-in 4-D spec)")
    p.add_argument("--n", type=int, required=True, help="number of rows")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(func=cmd_synth)

    defaults = TrainConfig()
    p = sub.add_parser("train", help="train an RBM with CD-1")
    p.add_argument("--data", required=True, help="training CSV")
    p.add_argument("--hidden", type=int, default=24, help="hidden units (default: 24)")
    p.add_argument("--epochs", type=int, default=defaults.epochs)
    p.add_argument("--lr", type=float, default=defaults.learning_rate)
    p.add_argument("--batch", type=int, default=defaults.batch_size)
    p.add_argument("--init-stddev", type=float, default=defaults.weight_init_stddev)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, help="model JSON")
    p.add_argument("--trace", help="per-epoch MSE CSV (default: <out>.trace.csv)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("genve", help="generate virtual examples from uniform candidates")
    p.add_argument("--model", required=True)
    p.add_argument("--train-data", required=True, help="training CSV (for auto tolerance and ADM)")
    p.add_argument("--candidates", type=int, default=5000)
    p.add_argument("--tolerance", type=_tolerance, default=AUTO, help="'auto' or a positive number")
    p.add_argument("--oscillations", type=int, default=1)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, help="VE CSV")
    p.add_argument("--stats", required=True, help="stats JSON")
    p.set_defaults(func=cmd_genve)

    p = sub.add_parser("adm", help="ADM of a test set relative to the training set")
    p.add_argument("--model", required=True)
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--json", help="also write the result as JSON")
    p.set_defaults(func=cmd_adm)

    p = sub.add_parser("experiment", help="run the full pipeline")
    p.add_argument("--config", help="ExperimentConfig JSON (default: built-in defaults)")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except RbmVeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
