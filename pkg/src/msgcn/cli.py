"""Command-line entry point.

Exit codes: 0 success, 1 domain or validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .evaluation import (
    ExperimentConfig,
    ExperimentReport,
    GroupSpec,
    evaluate_networks,
    run_experiment,
)
from .formats import (
    FormatError,
    load_checkpoint,
    load_manifest,
    load_network,
    save_checkpoint,
    save_file_manifest,
    save_manifest,
    save_network,
    write_csv,
)
from .ingest import ingest_files
from .model import predict_network
from .synthgen import GeneratorConfig, generate_dataset, make_manifest
from .train import LossConfig, TrainConfig, fit, gradient_check

log = logging.getLogger("msgcn")


class UsageError(Exception):
    pass


def _floats(text: str, n: Optional[int] = None) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _pair(text):
    return tuple(_floats(text, 2))


def _triple(text):
    return tuple(_floats(text, 3))


# -- dataset directories ------------------------------------------------------


def _load_dir(path: Path, split: str):
    """Networks of a data directory, restricted to a manifest split."""
    manifest = path / "manifest.json"
    if manifest.exists():
        doc = load_manifest(manifest)
        files = doc["files"]
        cut = doc["train_count"]
    else:
        files = sorted(p.name for p in path.glob("*.json"))
        cut = len(files)
    if split == "train":
        files = files[:cut]
    elif split == "test":
        files = files[cut:] if manifest.exists() else files
    if not files:
        raise FormatError(f"{path}: no network files in the {split!r} split")
    return [load_network(path / f) for f in files]


# -- subcommands --------------------------------------------------------------


def cmd_generate(a) -> int:
    if a.p is not None and a.p_range is not None:
        raise UsageError("--p and --p-range are mutually exclusive")
    cfg = GeneratorConfig(a.type, a.nodes, a.layers, p=a.p, k=a.k, p_range=a.p_range, seed=a.seed)
    manifest = make_manifest(cfg, a.count, a.train_fraction)
    out = Path(a.out)
    width = max(4, len(str(a.count - 1)))
    files = []
    for k, net in enumerate(generate_dataset(manifest)):
        name = f"net_{k:0{width}d}.json"
        save_network(net, out / name)
        files.append(name)
    save_manifest(out / "manifest.json", manifest, files)
    print(f"wrote {len(files)} networks to {out} ({manifest.train_count} train / {a.count - manifest.train_count} test)")
    return 0


def cmd_train(a) -> int:
    nets = _load_dir(Path(a.data), "train")
    tc = TrainConfig(a.epochs, a.lr, a.dropout, a.hidden, seed=a.seed, warm_start=not a.no_warm_start)
    lc = LossConfig(*a.loss_weights, epsilon=a.epsilon)
    res = fit(nets, tc, lc)
    out = Path(a.out)
    save_checkpoint(out, res.params, tc, res.loss_config)
    hist = Path(a.history) if a.history else out.with_name(out.stem + "_history.csv")
    write_csv(hist, ["epoch", "loss"], [(k + 1, v) for k, v in enumerate(res.history)])
    print(f"trained on {len(nets)} networks; final epoch loss {res.history[-1]:.6g}; wrote {out} and {hist}")
    return 0


def _metrics_row(m):
    return [m.n, m.mse, m.pearson_r, m.r_squared, m.mean_abs_error]


METRIC_HEADER = ["n_links", "mse", "pearson_r", "r_squared", "mean_abs_error"]


def cmd_evaluate(a) -> int:
    ck = load_checkpoint(a.model)
    nets = _load_dir(Path(a.data), a.split)
    m, pred, actual = evaluate_networks(ck.params, nets)
    write_csv(a.out, METRIC_HEADER, [_metrics_row(m)])
    if a.predictions:
        write_csv(a.predictions, ["predicted", "actual", "abs_error"], zip(pred, actual, m.abs_errors))
    r = "undefined" if m.pearson_r is None else f"{m.pearson_r:.4f}"
    print(f"{m.n} links: mse={m.mse:.6g} r={r}")
    return 0


def cmd_predict(a) -> int:
    ck = load_checkpoint(a.model)
    net = load_network(a.network)
    rows = [
        (c.source_layer, c.source_node, c.target_layer, c.target_node, c.true_weight, w)
        for c, w in predict_network(ck.params, net)
    ]
    write_csv(
        a.out,
        ["source_layer", "source_node", "target_layer", "target_node", "true_weight", "predicted_weight"],
        rows,
    )
    print(f"wrote {len(rows)} predictions to {a.out}")
    return 0


def load_experiment_config(path) -> ExperimentConfig:
    """Read an INI experiment description.

    ``[experiment]`` holds trials, count, seed, train_fraction,
    ttest_metric and optional ``ttest_pairs = a:b, c:d``; ``[train]`` and
    ``[loss]`` override training defaults (``[train] warm_start = no``
    disables the warm start); each ``[group NAME]`` section
    holds type, nodes, layers and optional p, p_range, k.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not cp.read(path):
        raise FormatError(f"{path}: cannot read experiment config")
    try:
        ex = cp["experiment"] if cp.has_section("experiment") else {}
        groups = []
        for sec in cp.sections():
            if not sec.startswith("group "):
                continue
            g = cp[sec]
            groups.append(
                GroupSpec(
                    sec[len("group "):].strip(),
                    GeneratorConfig(
                        g.get("type", "complete"),
                        g.getint("nodes", 5),
                        g.getint("layers", 2),
                        p=g.getfloat("p") if "p" in g else None,
                        k=g.getint("k") if "k" in g else None,
                        p_range=_pair(g["p_range"]) if "p_range" in g else None,
                    ),
                )
            )
        if not groups:
            raise FormatError(f"{path}: no [group NAME] sections")
        tr = cp["train"] if cp.has_section("train") else {}
        tc = TrainConfig(
            epochs=int(tr.get("epochs", 40)),
            learning_rate=float(tr.get("lr", 1e-4)),
            dropout=float(tr.get("dropout", 0.5)),
            hidden_width=int(tr.get("hidden", 32)),
            warm_start=tr.get("warm_start", "yes").strip().lower() not in ("no", "false", "0", "off"),
        )
        ls = cp["loss"] if cp.has_section("loss") else {}
        weights = _triple(ls["weights"]) if "weights" in ls else LossConfig().weights
        lc = LossConfig(*weights, epsilon=float(ls.get("epsilon", 1e-8)))
        pairs = None
        if ex.get("ttest_pairs"):
            pairs = [tuple(s.strip() for s in item.split(":")) for item in ex["ttest_pairs"].split(",")]
            names = {g.name for g in groups}
            for p in pairs:
                if len(p) != 2 or not set(p) <= names:
                    raise FormatError(f"{path}: bad ttest pair {':'.join(p)!r}")
        return ExperimentConfig(
            groups,
            trials=int(ex.get("trials", 3)),
            count=int(ex.get("count", 200)),
            train_fraction=float(ex.get("train_fraction", 0.8)),
            seed=int(ex.get("seed", 0)),
            train=tc,
            loss=lc,
            ttest_pairs=pairs,
            ttest_metric=ex.get("ttest_metric", "abs_error"),
        )
    except (configparser.Error, argparse.ArgumentTypeError, KeyError) as exc:
        raise FormatError(f"{path}: {exc}") from None


def write_report(report: ExperimentReport, out: Path) -> None:
    write_csv(
        out / "trials.csv",
        ["group", "trial", "seed", "network_type", "num_nodes", "num_layers", "status", *METRIC_HEADER],
        [
            [t.group, t.trial, t.seed, t.network_type, t.num_nodes, t.num_layers, "ok" if t.ok else f"failed: {t.error}"]
            + (_metrics_row(t.metrics) if t.ok else [None] * len(METRIC_HEADER))
            for t in report.trials
        ],
    )
    summary = report.summary()
    write_csv(out / "summary.csv", list(summary[0]), [list(r.values()) for r in summary])
    write_csv(
        out / "ttests.csv",
        ["group_a", "group_b", "metric", "t", "p", "error"],
        [(t.group_a, t.group_b, t.metric, t.t, t.p, t.error) for t in report.ttests],
    )


def cmd_experiment(a) -> int:
    cfg = load_experiment_config(a.config)
    report = run_experiment(cfg)
    out = Path(a.out)
    write_report(report, out)
    for row in report.summary():
        print(f"{row['group']}: r={row['pearson_r_mean']} mse={row['mse_mean']} ({row['failed']} failed)")
    return 0 if all(t.ok for t in report.trials) else 1


def cmd_ingest(a) -> int:
    nets = ingest_files(a.stations, a.boardings, a.intra, a.cross, a.date)
    out = Path(a.out)
    files = []
    for k, net in enumerate(nets):
        name = f"{a.date}_{k:03d}.json"
        save_network(net, out / name)
        files.append(name)
    save_file_manifest(out / "manifest.json", files, source="temporal", date=a.date)
    print(f"wrote {len(files)} networks to {out}")
    return 0


def cmd_gradcheck(a) -> int:
    results = gradient_check(a.seed, a.instances)
    failed = [r for r in results if not r.ok and not r.kink]
    kinks = sum(r.kink for r in results)
    worst = max(
        (abs(r.analytic - r.numeric) / max(abs(r.analytic), abs(r.numeric), 1e-300) for r in results if not r.kink),
        default=0.0,
    )
    print(f"{len(results)} partials over {a.instances} instances; {len(failed)} failed; {kinks} skipped at ReLU kinks; worst rel err {worst:.2e}")
    for r in failed[:20]:
        print(f"  FAIL instance {r.instance} {r.parameter}{list(r.index)}: analytic {r.analytic:.10g} numeric {r.numeric:.10g}")
    return 0 if not failed else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msgcn", description="Interlayer link-weight prediction on spatial multiplex networks")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a synthetic dataset")
    g.add_argument("--type", required=True, choices=["complete", "random", "small-world", "small_world"])
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--layers", type=int, default=2)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--p", type=float)
    g.add_argument("--p-range", type=_pair)
    g.add_argument("--k", type=int)
    g.add_argument("--train-fraction", type=float, default=0.8)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    t = sub.add_parser("train", help="train a model on a dataset directory")
    t.add_argument("--data", required=True)
    t.add_argument("--epochs", type=int, default=40)
    t.add_argument("--hidden", type=int, default=32)
    t.add_argument("--dropout", type=float, default=0.5)
    t.add_argument("--lr", type=float, default=1e-4)
    t.add_argument("--loss-weights", type=_triple, default=LossConfig().weights, metavar="MSE,SPREAD,RANGE")
    t.add_argument("--epsilon", type=float, default=1e-8)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--no-warm-start", action="store_true", help="train from the plain zero-bias initialization")
    t.add_argument("--out", required=True)
    t.add_argument("--history", help="loss history CSV (default: <out stem>_history.csv)")
    t.set_defaults(func=cmd_train)

    e = sub.add_parser("evaluate", help="metrics of a trained model on a dataset directory")
    e.add_argument("--model", required=True)
    e.add_argument("--data", required=True)
    e.add_argument("--split", choices=["test", "train", "all"], default="test")
    e.add_argument("--out", required=True)
    e.add_argument("--predictions", help="optional per-link CSV of predictions and errors")
    e.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("predict", help="predict every candidate interlayer link of one network")
    p.add_argument("--model", required=True)
    p.add_argument("--network", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    x = sub.add_parser("experiment", help="run repeated trials from an INI config")
    x.add_argument("--config", required=True)
    x.add_argument("--out", required=True)
    x.set_defaults(func=cmd_experiment)

    i = sub.add_parser("ingest-temporal", help="build two-layer networks from temporal flow CSVs")
    i.add_argument("--stations", required=True)
    i.add_argument("--boardings", required=True)
    i.add_argument("--intra", required=True)
    i.add_argument("--cross", required=True)
    i.add_argument("--date", required=True)
    i.add_argument("--out", required=True)
    i.set_defaults(func=cmd_ingest)

    c = sub.add_parser("gradcheck", help="compare analytic gradients with finite differences")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--instances", type=int, default=20)
    c.set_defaults(func=cmd_gradcheck)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"msgcn: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"msgcn: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
