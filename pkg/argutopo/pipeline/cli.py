"""
Command-line interface of argutopo.

Subcommands
-----------
analyze
    Full pipeline over one or more text files, one JSON report per text.
persistence
    Point-cloud CSV -> persistence diagram JSON.
delay-params
    Series CSV -> selected (D, tau) with the selection traces.
image
    Diagram JSON -> persistence-image CSV (plus JSON metadata sibling).

Exit codes: 0 success, 1 usage or configuration error, 2 data or parse error,
3 numerical-stage error.

Usage
-----
    $ argutopo analyze --model toy_model.txt --mode both --seed 7 --out results \\
          valid_argument.txt circular_argument.txt
    $ argutopo persistence --input cloud.csv --max-homology-dim 1 --out diagram.json
    $ argutopo --config my_defaults.yaml analyze valid_argument.txt

Author
------
Andreas Rasmusson
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from loguru import logger

from argutopo.common.errors import ArgutopoError, ConfigError, DataError, StageError
from argutopo.common.files import atomic_write_text
from argutopo.common.global_logging import DEFAULT_LEVEL, configure_logging
from argutopo.features.images import persistence_image
from argutopo.pipeline.config import DIRECTIONS, MODES, RunConfig
from argutopo.pipeline.plotting import emit_plot
from argutopo.pipeline.run import AnalysisReport, analyze
from argutopo.signal.parameters import choose_delay_parameters
from argutopo.signal.series import read_cloud_csv, read_series_csv
from argutopo.tda.diagram import PersistenceDiagram
from argutopo.tda.distances import pairwise_distances
from argutopo.tda.rips import rips_persistence
from argutopo.text_embedding.formats import load_model

U64_MAX = (1 << 64) - 1


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _u64(value: str) -> int:
    seed = int(value)
    if not 0 <= seed <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2**64 - 1], got {value}")
    return seed


# -------------------------------
# Parser
# -------------------------------
def _add_delay_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("delay parameters")
    group.add_argument("--tau", help="auto-acf, auto-mi or a positive integer")
    group.add_argument("--dim", help="auto-fnn or a positive integer")
    group.add_argument("--acf-threshold", dest="acf_threshold", type=float)
    group.add_argument("--mi-bins", dest="mi_bins", type=int)
    group.add_argument("--fnn-max-dim", dest="fnn_max_dim", type=int)
    group.add_argument("--fnn-rtol", dest="fnn_r_tol", type=float)
    group.add_argument("--fnn-threshold", dest="fnn_threshold", type=float)


def _add_homology_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-homology-dim", dest="max_homology_dim", type=int, choices=(1, 2))
    parser.add_argument("--max-radius", dest="max_radius", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argutopo", description="Topological analysis of texts through word-delay embeddings.")
    parser.add_argument("--log-level", dest="log_level", default=None, help=f"loguru level (default {DEFAULT_LEVEL})")
    parser.add_argument("--config", dest="config_file", metavar="YAML", help="defaults file replacing the bundled defaults.yaml")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("analyze", help="analyze text files")
    run.add_argument("texts", nargs="+", metavar="TEXTFILE")
    run.add_argument("--model", dest="model_path")
    run.add_argument("--model-format", dest="model_format", choices=("glove-text", "word2vec-bin"))
    run.add_argument("--mode", choices=MODES)
    run.add_argument("--seed", type=_u64)
    run.add_argument("--replicates", type=int)
    direction = run.add_mutually_exclusive_group()
    direction.add_argument("--shared-direction", dest="direction", action="store_const", const=DIRECTIONS[0])
    direction.add_argument("--per-text-direction", dest="direction", action="store_const", const=DIRECTIONS[1])
    run.add_argument("--lowercase", action=argparse.BooleanOptionalAction, default=None)
    run.add_argument("--keep-punctuation", dest="strip_punctuation", action="store_const", const=False)
    run.add_argument("--oov", choices=("skip", "fail"))
    _add_delay_options(run)
    _add_homology_options(run)
    run.add_argument("--noise-threshold", dest="noise_thresholds", type=float, nargs="+", metavar="FLOAT")
    run.add_argument("--image", action="store_const", const=True)
    run.add_argument("--image-resolution", dest="image_resolution", type=int, nargs=2, metavar=("ROWS", "COLS"))
    run.add_argument("--image-sigma", dest="image_sigma", type=float)
    run.add_argument("--timing", dest="record_timing", action="store_const", const=True)
    run.add_argument("--out", dest="out_dir")
    run.add_argument("--plot", action="store_const", const=True)
    run.add_argument("--jobs", type=int, default=4, help="texts analyzed concurrently")

    persistence = commands.add_parser("persistence", help="point-cloud CSV to diagram JSON")
    persistence.add_argument("--input", required=True)
    _add_homology_options(persistence)
    persistence.add_argument("--out", help="diagram JSON path (stdout when omitted)")
    persistence.add_argument("--plot", dest="plot_path", metavar="SVG")

    delay = commands.add_parser("delay-params", help="series CSV to selected (D, tau)")
    delay.add_argument("--input", required=True)
    _add_delay_options(delay)
    delay.add_argument("--out", help="report JSON path (stdout when omitted)")

    image = commands.add_parser("image", help="diagram JSON to persistence-image CSV")
    image.add_argument("--input", required=True)
    image.add_argument("--dim", type=int, default=1)
    image.add_argument("--resolution", type=int, nargs=2, default=None, metavar=("ROWS", "COLS"))
    image.add_argument("--sigma", type=float)
    image.add_argument("--out", help="image CSV path (stdout when omitted)")
    return parser


_CONFIG_FIELDS = (
    "model_path", "model_format", "mode", "seed", "direction", "replicates", "record_timing",
    "lowercase", "strip_punctuation", "oov", "tau", "dim", "acf_threshold", "mi_bins",
    "fnn_max_dim", "fnn_r_tol", "fnn_threshold", "max_homology_dim", "max_radius",
    "noise_thresholds", "image", "image_resolution", "image_sigma", "out_dir", "plot",
)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """YAML defaults (bundled, or `--config`) overridden by every option given on the command line."""
    overrides = {name: getattr(args, name) for name in _CONFIG_FIELDS if hasattr(args, name)}
    return RunConfig.from_yaml_defaults(args.config_file or "defaults.yaml", **overrides)


# -------------------------------
# Output helpers
# -------------------------------
def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DataError(f"{path} is not valid UTF-8: {e.reason}") from None
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror}") from None


def _stems(paths: Sequence[str]) -> List[str]:
    stems, seen = [], set()
    for index, path in enumerate(paths):
        stem = Path(path).stem
        if stem in seen:
            stem = f"{stem}_{index}"
        seen.add(stem)
        stems.append(stem)
    return stems


def _write_artifacts(config: RunConfig, report: AnalysisReport, stem: str) -> None:
    out = Path(config.out_dir)
    atomic_write_text(out / f"{stem}.report.json", report.to_json())
    for source, diagram in report.diagrams.items():
        atomic_write_text(out / f"{stem}.{source}.diagram.json", diagram.to_json())
        if config.plot:
            emit_plot(diagram, out / f"{stem}.{source}.svg", title=f"{stem} ({source})")
    for source, images in report.images.items():
        for image in images:
            image.write(out / f"{stem}.{source}.h{image.dim}.image.csv")


# -------------------------------
# Commands
# -------------------------------
def cmd_analyze(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if config.model_path is None:
        raise ConfigError("--model is required (or set run.model_path in the defaults)")
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be positive, got {args.jobs}")
    texts = [_read_text(path) for path in args.texts]
    try:
        model = load_model(config.model_path, config.model_format)
    except ArgutopoError as e:
        raise StageError("load_model", e) from e
    logger.info("loaded {}", model.summary())

    stems = _stems(args.texts)

    def work(index: int):
        try:
            report = analyze(config, texts[index], model, text_name=stems[index], index=index)
            _write_artifacts(config, report, stems[index])
            return None
        except ArgutopoError as e:
            return e

    with ThreadPoolExecutor(max_workers=min(args.jobs, len(texts))) as pool:
        outcomes = list(pool.map(work, range(len(texts))))

    exit_code = 0
    for path, outcome in zip(args.texts, outcomes):
        if outcome is not None:
            print(f"argutopo: {path}: {outcome}", file=sys.stderr)
            exit_code = exit_code or outcome.exit_code
    return exit_code


def cmd_persistence(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    cloud = read_cloud_csv(args.input)
    diagram = rips_persistence(pairwise_distances(cloud), config.max_homology_dim, config.radius)
    _emit(diagram.to_json(), args.out)
    if args.plot_path:
        emit_plot(diagram, args.plot_path)
    return 0


def cmd_delay_params(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    series = read_series_csv(args.input)
    params = choose_delay_parameters(
        series,
        config.tau,
        config.dim,
        acf_threshold=config.acf_threshold,
        mi_bins=config.mi_bins,
        fnn_max_dim=config.fnn_max_dim,
        fnn_r_tol=config.fnn_r_tol,
        fnn_threshold=config.fnn_threshold,
    )
    result: Dict = {"N": series.N, "D": params.D, "tau": params.tau, "method_report": params.method_report}
    _emit(json.dumps(result, indent=2, allow_nan=False) + "\n", args.out)
    return 0


def cmd_image(args: argparse.Namespace) -> int:
    diagram = PersistenceDiagram.from_json(_read_text(args.input))
    config = RunConfig.from_yaml_defaults(
        args.config_file or "defaults.yaml", image_resolution=args.resolution, image_sigma=args.sigma
    )
    image = persistence_image(diagram, args.dim, config.image_resolution, config.image_sigma)
    if args.out is None:
        sys.stdout.write(image.to_csv())
    else:
        image.write(args.out)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "persistence": cmd_persistence,
    "delay-params": cmd_delay_params,
    "image": cmd_image,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``argutopo`` console script.

    Returns
    -------
    int
        Process exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level or DEFAULT_LEVEL)
    except ValueError as e:
        print(f"argutopo: invalid log level: {e}", file=sys.stderr)
        return ConfigError.exit_code
    try:
        return COMMANDS[args.command](args)
    except ArgutopoError as e:
        print(f"argutopo: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"argutopo: {e}", file=sys.stderr)
        return DataError.exit_code


if __name__ == "__main__":
    sys.exit(main())
