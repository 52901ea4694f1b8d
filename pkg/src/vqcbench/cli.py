"""Command line entry point.

Exit codes: 0 success, 1 usage/config error, 2 ingestion error,
3 runtime/training error.
"""

import argparse
import logging
import sys

from . import harness
from .errors import ConfigurationError, IngestionError, VqcBenchError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_run_options(p):
    p.add_argument("--config", help="JSON file with RunConfig keys")
    p.add_argument("--train", dest="train_path")
    p.add_argument("--test", dest="test_path")
    p.add_argument("--label-column", dest="label_column")
    p.add_argument("--out", dest="output_dir")
    p.add_argument("--seed", type=int)
    p.add_argument("--qubits", dest="qubit_counts", type=_int_list, help="e.g. 4,8,12")
    p.add_argument("--budgets", type=_int_list, help="evaluation budget per qubit count")
    p.add_argument("--feature-reps", dest="feature_reps", type=int)
    p.add_argument("--ansatz-reps", dest="ansatz_reps", type=int)
    p.add_argument("--phase-convention", dest="phase_convention", choices=["paper", "standard"])
    p.add_argument("--input-scale", dest="input_scale", type=float)
    p.add_argument("--eval-shots", dest="eval_shots", type=int)
    p.add_argument("--external-baselines", dest="external_baselines")
    p.add_argument("--dataset-label", dest="dataset_label")


def build_parser():
    parser = _Parser(prog="vqcbench", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("run", "classical stage and qubit sweep"),
        ("classical", "logistic baseline only"),
        ("hybrid", "PCA + VQC qubit sweep only"),
    ]:
        _add_run_options(sub.add_parser(name, help=text))
    s = sub.add_parser("synth", help="write a synthetic train/test CSV pair")
    s.add_argument("--out", required=True, help="directory for train.csv and test.csv")
    s.add_argument("--samples", type=int, default=500)
    s.add_argument("--features", type=int, default=2)
    s.add_argument("--separation", type=float, default=6.0)
    s.add_argument("--seed", type=int, default=42)
    r = sub.add_parser("report", help="re-emit tables from a saved report.json")
    r.add_argument("report_json")
    r.add_argument("--out", required=True)
    return parser


def _config_from(args):
    config = harness.RunConfig.from_file(args.config) if args.config else harness.RunConfig()
    overrides = {
        k: getattr(args, k)
        for k in (
            "train_path", "test_path", "label_column", "output_dir", "seed", "qubit_counts",
            "budgets", "feature_reps", "ansatz_reps", "phase_convention", "input_scale",
            "eval_shots", "external_baselines", "dataset_label",
        )
    }
    return config.replace(**overrides)


def _dispatch(args):
    if args.command == "synth":
        import os

        train, test = harness.synth_dataset(args.samples, args.features, args.separation, args.seed)
        os.makedirs(args.out, exist_ok=True)
        harness.write_csv(train, os.path.join(args.out, "train.csv"))
        harness.write_csv(test, os.path.join(args.out, "test.csv"))
        print(f"wrote {len(train.y)} training and {len(test.y)} test rows to {args.out}")
        return
    if args.command == "report":
        report = harness.load_report(args.report_json)
        paths = harness.emit_report(report, args.out)
        print(f"wrote {len(paths)} files to {args.out}")
        return

    config = _config_from(args)
    stages = {"run": ("classical", "hybrid"), "classical": ("classical",), "hybrid": ("hybrid",)}
    report = harness.run(config, stages[args.command])
    paths = harness.emit_report(report, config.output_dir)
    for row in report["metrics"]:
        print(
            f"{row['model']:<22} recall={row['recall']:.4f} acc={row['accuracy']:.4f} "
            f"auc={row['auc']:.4f}"
        )
    print(f"wrote {len(paths)} files to {config.output_dir}")
    if report["failures"]:
        return 3


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except ConfigurationError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _dispatch(args) or 0
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except IngestionError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return 2
    except (VqcBenchError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
