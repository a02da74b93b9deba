#!/usr/bin/env python
# PYTHON_ARGCOMPLETE_OK
"""CLI for the trajectory representation learning pipeline.

Pipeline order: preprocess (or synth) -> segment -> train -> encode ->
evaluate / sweep / project. Every artifact gets a ``.manifest.yaml`` next to
it and is recorded in the run registry.
"""

import argcomplete
import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Optional

import numpy as np
import yaml
from pydantic import ValidationError

from src.config import AtsccConfig, load_config
from src.databases.clients.sqlite import RegistryClient
from src.databases.datatypes.runs import MetricRecord, RunRecord, RunRepository
from src.encoder import Checkpoint, encode_dataset, load_checkpoint, save_checkpoint
from src.errors import AtsccError, ConfigError
from src.evaluation import (
    EvalScores,
    InstanceRepr,
    aggregate_seeds,
    evaluate_representations,
    extract_instance_repr,
    instance_repr,
    mi_sweep,
    pca_project,
    raw_final_state,
    write_metrics_csv,
    write_projection_csv,
    write_sweep_csv,
)
from src.features import FeatureSelector, feature_dataset
from src.manifest import RunManifest, package_version, write_manifest
from src.preprocess import preprocess_pipeline, split_by_hash
from src.segmentation import RdpParams, is_degenerate, segment_dataset
from src.synth import default_scenario, generate_tracks, load_scenario, synth_dataset, tracks_to_records
from src.training import LossVariant, grid_search, train, write_grid_table, write_loss_curve
from src.trajectories import (
    Dataset,
    read_dataset,
    read_labels_csv,
    read_raw_csv,
    read_representations,
    write_dataset,
    write_raw_csv,
    write_representations,
)

logger = logging.getLogger("atscc")


class Run:
    """Collects provenance for one invocation and records it on finish."""

    def __init__(self, args: argparse.Namespace, config: AtsccConfig):
        self.args = args
        self.config = config
        self.started = time.perf_counter()
        self.inputs: list[str] = []
        self.outputs: list[Path] = []
        self.snapshot: dict[str, Any] = {}
        self.seeds: list[int] = [args.seed]
        self.metrics: list[dict[str, Any]] = []

    def finish(self) -> None:
        """Write a manifest next to every output and record the run."""
        manifest = RunManifest(
            command=self.args.command,
            config=self.snapshot,
            seeds=self.seeds,
            inputs=self.inputs,
            outputs=[str(p) for p in self.outputs],
            version=package_version(),
            wall_time_s=time.perf_counter() - self.started,
        )
        manifest_files = [write_manifest(manifest, out) for out in self.outputs]
        for path in self.outputs:
            print(f"Wrote {path}")
        if self.args.no_registry or not manifest_files:
            return

        run = RunRecord(
            command=manifest.command,
            version=manifest.version,
            config_json=json.dumps(manifest.config, sort_keys=True, default=str),
            seeds_json=json.dumps(manifest.seeds),
            inputs_json=json.dumps(manifest.inputs),
            outputs_json=json.dumps(manifest.outputs),
            wall_time_s=manifest.wall_time_s,
            source_file=f"{manifest_files[0]}@{manifest.created_at.isoformat()}",
        )
        metrics = [MetricRecord.model_validate({**row, "run_id": run.id}) for row in self.metrics]
        with RegistryClient(self.args.registry) as client, client.session() as session:
            RunRepository(session).save_run(run, metrics)


def _dump(model: Any) -> dict[str, Any]:
    return model.model_dump(mode="json")


def _write_split(dataset: Dataset, args: argparse.Namespace, run: Run) -> None:
    """Write the dataset, or a train/test pair when a test output is given."""
    if args.test_output is None:
        write_dataset(dataset, args.output)
        run.outputs.append(args.output)
        return
    train_idx, test_idx = split_by_hash(dataset.ids, args.test_fraction)
    if not train_idx or not test_idx:
        raise ConfigError("hash split left the train or test side empty")
    for indices, path, side in ((train_idx, args.output, "train"), (test_idx, args.test_output, "test")):
        part = dataset.subset(indices)
        part.metadata["split"] = {"side": side, "method": "sha256", "test_fraction": args.test_fraction}
        write_dataset(part, path)
        run.outputs.append(path)


def cmd_preprocess(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Clean raw surveillance CSV into a processed dataset."""
    pre = config.preprocess_config(
        ref_lat=args.ref_lat,
        ref_lon=args.ref_lon,
        ref_alt_m=args.ref_alt,
        r_max_m=args.r_max,
        direction=args.direction,
        downsample_s=args.downsample,
    )
    records = read_raw_csv(args.input)
    labels = read_labels_csv(args.labels) if args.labels else None
    dataset = preprocess_pipeline(records, pre, labels=labels, threads=args.threads)
    run.inputs = [str(args.input)] + ([str(args.labels)] if args.labels else [])
    run.snapshot = {"preprocess": _dump(pre)}
    _write_split(dataset, args, run)


def cmd_synth(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Generate a labeled synthetic dataset."""
    scenario = load_scenario(args.scenario) if args.scenario else default_scenario()
    overrides = {
        "per_class": args.per_class,
        "noise_h_m": args.noise_h,
        "noise_v_m": args.noise_v,
        "downsample_s": args.downsample,
    }
    scenario = scenario.model_validate({**_dump(scenario), **{k: v for k, v in overrides.items() if v is not None}})
    dataset = synth_dataset(scenario, seed=args.seed, threads=args.threads)
    run.inputs = [str(args.scenario)] if args.scenario else []
    run.snapshot = {"scenario": _dump(scenario)}
    _write_split(dataset, args, run)
    if args.raw_csv:
        write_raw_csv(tracks_to_records(generate_tracks(scenario, args.seed, args.threads), scenario), args.raw_csv)
        run.outputs.append(args.raw_csv)


def cmd_segment(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Attach RDP segment IDs to a processed dataset."""
    dataset = read_dataset(args.input)
    params = RdpParams(epsilon=args.epsilon)
    segment_ids = segment_dataset(dataset, params, args.threads)
    if is_degenerate(segment_ids, dataset.lengths):
        logger.warning(f"epsilon {args.epsilon} leaves every trajectory as a single segment")
    metadata = {**dataset.metadata, "segmentation": {"epsilon": args.epsilon}}
    write_dataset(dataset.model_copy(update={"segment_ids": segment_ids, "metadata": metadata}), args.output)
    run.inputs = [str(args.input)]
    run.snapshot = {"segmentation": _dump(params)}
    run.outputs.append(args.output)


def _encoder_overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "layers": args.layers,
        "model_dim": args.model_dim,
        "heads": args.heads,
        "repr_dim": args.repr_dim,
        "mask_prob": args.mask_prob,
        "attn_dropout": args.attn_dropout,
        "random_masking": args.random_masking,
        "token_l2_norm": args.token_l2_norm,
        "repr_l2_norm": args.repr_l2_norm,
    }


def _train_overrides(args: argparse.Namespace, epsilon: Optional[float]) -> dict[str, Any]:
    return {
        "epsilon": epsilon,
        "tau": args.tau,
        "epochs": args.epochs,
        "batch_size": args.batch_size,
        "lr": args.lr,
        "weight_decay": args.weight_decay,
        "patience": args.patience,
        "loss_variant": args.loss_variant,
        "features": FeatureSelector.parse(args.features) if args.features is not None else None,
        "seed": args.seed,
    }


def cmd_train(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Train an encoder on a segmented dataset."""
    dataset = read_dataset(args.input)
    stored = dataset.metadata.get("segmentation", {}).get("epsilon")
    if dataset.segment_ids is None:
        if args.epsilon is None:
            raise ConfigError(f"{args.input} has no segment IDs; run segment first or pass --epsilon")
        logger.info(f"Segmenting {args.input} at epsilon {args.epsilon}")
        dataset = dataset.model_copy(
            update={"segment_ids": segment_dataset(dataset, RdpParams(epsilon=args.epsilon), args.threads)}
        )
        stored = args.epsilon
    elif args.epsilon is not None and stored is not None and args.epsilon != stored:
        raise ConfigError(f"{args.input} was segmented at epsilon {stored}, not {args.epsilon}")

    train_config = config.train_config(**_train_overrides(args, stored))
    encoder_config = config.encoder_config(
        **_encoder_overrides(args), input_dim=train_config.features.n_features
    )
    result = train(dataset, encoder_config, train_config)
    save_checkpoint(result.checkpoint, args.output)
    run.inputs = [str(args.input)]
    run.snapshot = {"encoder": _dump(encoder_config), "train": _dump(train_config)}
    run.outputs.append(args.output)
    if args.loss_curve:
        write_loss_curve(result.loss_curve, args.loss_curve)
        run.outputs.append(args.loss_curve)


def _require_checkpoint(args: argparse.Namespace) -> list[Checkpoint]:
    if not args.checkpoint:
        raise ConfigError("checkpoint required")
    return [load_checkpoint(path) for path in args.checkpoint]


def _instances(checkpoint: Checkpoint, dataset: Dataset) -> InstanceRepr:
    features = feature_dataset(dataset, FeatureSelector.parse(checkpoint.features))
    seqs = encode_dataset(checkpoint.encoder, features, dataset.lengths, dataset.ids, dataset.labels)
    return instance_repr(seqs)


def cmd_encode(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Export per-timestep representations of a dataset."""
    checkpoint = _require_checkpoint(args)[0]
    dataset = read_dataset(args.input)
    features = feature_dataset(dataset, FeatureSelector.parse(checkpoint.features))
    seqs = encode_dataset(checkpoint.encoder, features, dataset.lengths, dataset.ids, dataset.labels)
    vectors = np.full((dataset.n, dataset.t_max, checkpoint.config.repr_dim), np.nan)
    for i, seq in enumerate(seqs):
        vectors[i, : len(seq.vectors)] = seq.vectors
    write_representations(args.output, dataset.ids, vectors, dataset.lengths, dataset.labels)
    run.inputs = [str(args.input), str(args.checkpoint[0])]
    run.outputs.append(args.output)


def _metric_row(name: str, epsilon: Optional[float], tau: Optional[float], scores: EvalScores) -> dict[str, Any]:
    return {
        "dataset": name,
        "epsilon": epsilon,
        "tau": tau,
        "seed": scores.seed,
        "C": scores.C,
        "gamma": scores.gamma,
        "acc": scores.acc,
        "nmi": scores.nmi,
        "ari": scores.ari,
    }


def cmd_evaluate(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Score checkpoints by SVM accuracy and k-means NMI/ARI on a test set."""
    checkpoints = _require_checkpoint(args)
    train_set, test_set = read_dataset(args.train), read_dataset(args.test)
    name = args.dataset_name or Path(args.test).stem
    settings = config.evaluation

    learned: list[EvalScores] = []
    for checkpoint in checkpoints:
        seed = int(checkpoint.train.get("seed", args.seed))
        scores = evaluate_representations(
            _instances(checkpoint, train_set),
            _instances(checkpoint, test_set),
            seed=seed,
            C=settings.C,
            gamma=settings.gamma,
            threads=args.threads,
        )
        learned.append(scores)
        run.metrics.append(_metric_row(name, checkpoint.epsilon, checkpoint.train.get("tau"), scores))

    if args.baseline:
        raw_train, raw_test = raw_final_state(train_set), raw_final_state(test_set)
        for scores in learned:
            baseline = evaluate_representations(
                raw_train, raw_test, seed=scores.seed, C=settings.C, gamma=settings.gamma, threads=args.threads
            )
            run.metrics.append(_metric_row(f"{name}-raw", None, None, baseline))

    summary = aggregate_seeds(learned)
    for metric, stats in summary.items():
        print(f"{metric}\t{stats['mean']:.4f} +/- {stats['std']:.4f}")
    write_metrics_csv(run.metrics, args.output)
    run.inputs = [str(args.train), str(args.test)] + [str(p) for p in args.checkpoint]
    run.seeds = [s.seed for s in learned]
    run.snapshot = {
        "evaluation": _dump(settings),
        "svm": [{"seed": s.seed, "C": s.C, "gamma": s.gamma} for s in learned],
        "summary": summary,
    }
    run.outputs.append(args.output)


def _instance_matrix(args: argparse.Namespace) -> InstanceRepr:
    """Instance vectors from a representation archive or a dataset plus checkpoint."""
    if args.representations:
        ids, vectors, lengths, labels = read_representations(args.representations)
        return InstanceRepr(ids=ids, vectors=extract_instance_repr(vectors, lengths), labels=labels)
    if not args.input:
        raise ConfigError("pass --representations or --input with --checkpoint")
    return _instances(_require_checkpoint(args)[0], read_dataset(args.input))


def cmd_sweep(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Mutual information between k-means clusters and labels over a range of k."""
    instances = _instance_matrix(args)
    settings = config.evaluation
    k_min = args.k_min or settings.k_min or int(np.unique(instances.labels).size)
    rows = mi_sweep(
        instances.vectors,
        instances.labels,
        k_min,
        args.k_max or settings.k_max,
        args.step or settings.step,
        seed=args.seed,
        threads=args.threads,
    )
    write_sweep_csv(rows, args.output)
    run.inputs = [str(p) for p in (args.representations, args.input) if p]
    run.outputs.append(args.output)


def cmd_gridsearch(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Search epsilon x tau on a validation split of the training set."""
    dataset = read_dataset(args.input)
    train_config = config.train_config(**_train_overrides(args, None))
    encoder_config = config.encoder_config(
        **_encoder_overrides(args), input_dim=train_config.features.n_features
    )
    result = grid_search(
        dataset,
        encoder_config,
        train_config,
        args.epsilons,
        args.taus,
        val_fraction=args.val_fraction,
        threads=args.threads,
    )
    write_grid_table(result, args.output)
    print(f"Best: epsilon={result.best.epsilon} tau={result.best.tau}")
    run.inputs = [str(args.input)]
    run.snapshot = {
        "encoder": _dump(encoder_config),
        "train": _dump(train_config),
        "selection": result.selection,
        "val_fraction": args.val_fraction,
        "best": _dump(result.best),
    }
    run.outputs.append(args.output)


def cmd_project(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """Export a 2-D PCA projection of instance representations."""
    instances = _instance_matrix(args)
    projection = pca_project(instances.vectors, dims=2)
    write_projection_csv(instances.ids, instances.labels.tolist(), projection, args.output)
    run.inputs = [str(p) for p in (args.representations, args.input) if p]
    run.snapshot = {"explained_variance_ratio": projection.explained_variance_ratio.tolist()}
    run.outputs.append(args.output)


def run_to_dict(run: RunRecord) -> dict:
    """Convert a run to a JSON-serializable dict."""
    return {
        "id": str(run.id),
        "command": run.command,
        "version": run.version,
        "config": json.loads(run.config_json),
        "seeds": json.loads(run.seeds_json),
        "inputs": json.loads(run.inputs_json),
        "outputs": json.loads(run.outputs_json),
        "wall_time_s": run.wall_time_s,
        "created_at": run.created_at.isoformat(),
    }


def metric_to_dict(metric: MetricRecord) -> dict:
    return {
        "dataset": metric.dataset,
        "epsilon": metric.epsilon,
        "tau": metric.tau,
        "seed": metric.seed,
        "C": metric.C,
        "gamma": metric.gamma,
        "acc": metric.acc,
        "nmi": metric.nmi,
        "ari": metric.ari,
    }


def cmd_runs(args: argparse.Namespace, config: AtsccConfig, run: Run) -> None:
    """List recorded runs or show one with its metrics."""
    client = RegistryClient(args.registry, create=False)
    if not client.exists and args.run_id is None:
        print("[]" if args.json else "No runs recorded.")
        return
    with client, client.session() as session:
        repo = RunRepository(session)
        if args.run_id is None:
            runs = repo.list_runs(args.filter_command)
            if args.json:
                print(json.dumps([run_to_dict(r) for r in runs], indent=2))
                return
            if not runs:
                print("No runs recorded.")
                return
            print("ID\tCommand\tCreated\tWall (s)\tOutputs")
            print("-" * 80)
            for r in runs:
                outputs = ",".join(json.loads(r.outputs_json))
                print(f"{r.id}\t{r.command}\t{r.created_at:%Y-%m-%d %H:%M:%S}\t{r.wall_time_s:.1f}\t{outputs}")
            return

        found = repo.get_run(args.run_id)
        if found is None:
            raise ConfigError(f"no unique run matches {args.run_id}")
        metrics = repo.get_metrics(found.id)
        if args.json:
            print(json.dumps({**run_to_dict(found), "metrics": [metric_to_dict(m) for m in metrics]}, indent=2))
            return
        print(yaml.safe_dump(run_to_dict(found), sort_keys=True).rstrip())
        if metrics:
            print("dataset\tepsilon\ttau\tseed\tC\tgamma\tacc\tnmi\tari")
            for m in metrics:
                print(f"{m.dataset}\t{m.epsilon}\t{m.tau}\t{m.seed}\t{m.C}\t{m.gamma}\t{m.acc:.4f}\t{m.nmi:.4f}\t{m.ari:.4f}")


def _add_split_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", type=Path, required=True, help="Processed dataset (train side when splitting)")
    parser.add_argument("--test-output", type=Path, help="Also split by flight-id hash and write the test side here")
    parser.add_argument("--test-fraction", type=float, default=0.5, help="Test share of the hash split (default: 0.5)")


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("encoder")
    group.add_argument("--layers", type=int)
    group.add_argument("--model-dim", type=int)
    group.add_argument("--heads", type=int)
    group.add_argument("--repr-dim", type=int)
    group.add_argument("--mask-prob", type=float)
    group.add_argument("--attn-dropout", type=float)
    group.add_argument("--no-random-masking", dest="random_masking", action="store_const", const=False)
    group.add_argument("--no-token-l2-norm", dest="token_l2_norm", action="store_const", const=False)
    group.add_argument("--no-repr-l2-norm", dest="repr_l2_norm", action="store_const", const=False)

    group = parser.add_argument_group("training")
    group.add_argument("--tau", type=float)
    group.add_argument("--epochs", type=int)
    group.add_argument("--batch-size", type=int)
    group.add_argument("--lr", type=float)
    group.add_argument("--weight-decay", type=float)
    group.add_argument("--patience", type=int)
    group.add_argument("--loss-variant", choices=[v.value for v in LossVariant])
    group.add_argument("--features", help="Feature groups: pos, pos+path, pos+polar or all")


def _add_instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--representations", "-r", type=Path, help="Archive written by encode")
    parser.add_argument("--input", "-i", type=Path, help="Dataset to encode (with --checkpoint)")
    parser.add_argument("--checkpoint", "-c", type=Path, action="append")
    parser.add_argument("--output", "-o", type=Path, required=True)


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser for the pipeline CLI."""
    parser = argparse.ArgumentParser(
        prog="atscc",
        description="Learn and evaluate aircraft trajectory representations.",
    )
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads (default: 1)")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument("--registry", type=Path, help="Run registry database (default: data/databases/sqlite/runs.db)")
    parser.add_argument("--no-registry", action="store_true", help="Do not record this run")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Log debug messages")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Log warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # preprocess command
    p = subparsers.add_parser("preprocess", help="Clean raw surveillance CSV")
    p.add_argument("--input", "-i", type=Path, required=True, help="Raw CSV")
    p.add_argument("--labels", type=Path, help="CSV of flight_id,label")
    p.add_argument("--ref-lat", type=float)
    p.add_argument("--ref-lon", type=float)
    p.add_argument("--ref-alt", type=float)
    p.add_argument("--r-max", type=float, help="Bounding radius in meters")
    p.add_argument("--direction", choices=["arrival", "departure"])
    p.add_argument("--downsample", type=int, help="Keep one state every N seconds")
    _add_split_args(p)

    # synth command
    p = subparsers.add_parser("synth", help="Generate a labeled synthetic dataset")
    p.add_argument("--scenario", type=Path, help="Scenario YAML (default: built-in 4-class scenario)")
    p.add_argument("--per-class", type=int)
    p.add_argument("--noise-h", type=float, help="Horizontal noise std in meters")
    p.add_argument("--noise-v", type=float, help="Vertical noise std in meters")
    p.add_argument("--downsample", type=int)
    p.add_argument("--raw-csv", type=Path, help="Also write geodetic raw CSV")
    _add_split_args(p)

    # segment command
    p = subparsers.add_parser("segment", help="Attach RDP segment IDs")
    p.add_argument("--input", "-i", type=Path, required=True)
    p.add_argument("--output", "-o", type=Path, required=True)
    p.add_argument("--epsilon", type=float, required=True, help="RDP tolerance on scaled coordinates")

    # train command
    p = subparsers.add_parser("train", help="Train an encoder")
    p.add_argument("--input", "-i", type=Path, required=True, help="Segmented dataset")
    p.add_argument("--output", "-o", type=Path, required=True, help="Checkpoint")
    p.add_argument("--loss-curve", type=Path, help="CSV of epoch,mean_loss")
    p.add_argument("--epsilon", type=float, help="Segment on the fly when the dataset has no IDs")
    _add_model_args(p)

    # encode command
    p = subparsers.add_parser("encode", help="Export representations")
    p.add_argument("--input", "-i", type=Path, required=True)
    p.add_argument("--checkpoint", "-c", type=Path, action="append")
    p.add_argument("--output", "-o", type=Path, required=True, help=".npz archive")

    # evaluate command
    p = subparsers.add_parser("evaluate", help="Classification and clustering scores")
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("--test", type=Path, required=True)
    p.add_argument("--checkpoint", "-c", type=Path, action="append", help="Repeat for several seeds")
    p.add_argument("--output", "-o", type=Path, required=True, help="Metrics CSV")
    p.add_argument("--dataset-name", help="Value of the dataset column (default: test file stem)")
    p.add_argument("--baseline", action="store_true", help="Also score raw final-state features")

    # sweep command
    p = subparsers.add_parser("sweep", help="Mutual information versus number of clusters")
    _add_instance_args(p)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--step", type=int)

    # gridsearch command
    p = subparsers.add_parser("gridsearch", help="Search epsilon and tau on a validation split")
    p.add_argument("--input", "-i", type=Path, required=True, help="Labeled training dataset")
    p.add_argument("--output", "-o", type=Path, required=True, help="Grid table CSV")
    p.add_argument("--epsilons", type=float, nargs="+", required=True)
    p.add_argument("--taus", type=float, nargs="+", required=True)
    p.add_argument("--val-fraction", type=float, default=0.25)
    _add_model_args(p)

    # project command
    p = subparsers.add_parser("project", help="2-D PCA projection of instance representations")
    _add_instance_args(p)

    # runs command
    p = subparsers.add_parser("runs", help="List or show recorded runs")
    p.add_argument("run_id", nargs="?", help="Run id or unique prefix")
    p.add_argument("--command", dest="filter_command", help="Only runs of this command")
    p.add_argument("--json", action="store_true", help="Output in JSON format")

    return parser


COMMANDS = {
    "preprocess": cmd_preprocess,
    "synth": cmd_synth,
    "segment": cmd_segment,
    "train": cmd_train,
    "encode": cmd_encode,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "gridsearch": cmd_gridsearch,
    "project": cmd_project,
    "runs": cmd_runs,
}


def _one_line(error: Exception) -> str:
    return " ".join(str(error).split())


def main(args: Optional[list[str]] = None) -> None:
    """Main entry point for the pipeline CLI."""
    parser = create_parser()
    argcomplete.autocomplete(parser)
    parsed_args = parser.parse_args(args)

    if parsed_args.command is None:
        parser.print_help()
        sys.exit(1)

    level = logging.DEBUG if parsed_args.verbose else logging.WARNING if parsed_args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s - %(levelname)s - %(message)s", force=True)

    try:
        config = load_config(parsed_args.config)
        run = Run(parsed_args, config)
        COMMANDS[parsed_args.command](parsed_args, config, run)
        if parsed_args.command != "runs":
            run.finish()
    except FileNotFoundError as e:
        print(f"File not found: {e.filename}", file=sys.stderr)
        sys.exit(1)
    except (AtsccError, ValidationError, yaml.YAMLError) as e:
        print(f"Error: {_one_line(e)}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
