"""
End-to-end analysis of one text.

The word-delay-embedding (WDE) path runs

    tokenize -> embed_tokens -> sample_direction -> project_series
    -> choose_delay_parameters -> delay_embed -> rips_persistence -> features

and the baseline path computes Rips persistence directly on the cloud of word
vectors. In ``both`` mode the two paths share one tokenization, one OOV report and
one projection seed.

Every stage runs inside `_stage`, which turns an `ArgutopoError` into a
`StageError` carrying the stage label (and keeps the exit code of the cause).

Functions
---------
run_wde, run_baseline, run_both
    One report for one text.
analyze
    Dispatch on ``config.mode``.
direction_seed
    Projection seed of the i-th text of a batch.

Author
------
Andreas Rasmusson
"""

import contextlib
import json
import statistics
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from loguru import logger

from argutopo.common.errors import ArgutopoError, DataError, SignalError, StageError
from argutopo.features.images import PersistenceImage, persistence_image
from argutopo.features.significance import diagram_stats
from argutopo.pipeline.config import RunConfig
from argutopo.signal.delay import delay_embed
from argutopo.signal.parameters import DelayParameters, choose_delay_parameters
from argutopo.signal.projection import project_series, sample_direction
from argutopo.signal.series import PointCloud, TimeSeries
from argutopo.tda.diagram import PersistenceDiagram
from argutopo.tda.distances import pairwise_distances
from argutopo.tda.rips import rips_persistence
from argutopo.text_embedding.formats import load_model
from argutopo.text_embedding.model import EmbeddingModel, VectorSequence, embed_tokens
from argutopo.text_embedding.tokenizer import TokenPolicy, tokenize

_SEED_MASK = (1 << 64) - 1


@dataclass
class AnalysisReport:
    """
    Result of analyzing one text.

    `to_dict` fixes the field order, so equal reports serialize to identical bytes.
    Sections that do not apply to the run's mode stay ``None`` and are left out.
    """
    text_name: str
    config: Dict
    config_hash: str
    tokens: Dict
    direction: Optional[Dict] = None
    delay: Optional[Dict] = None
    diagrams: Dict[str, PersistenceDiagram] = field(default_factory=dict)
    stats: Dict[str, List[Dict]] = field(default_factory=dict)
    images: Dict[str, List[PersistenceImage]] = field(default_factory=dict)
    replicates: Optional[Dict] = None
    timing: Optional[Dict[str, float]] = None

    def to_dict(self) -> Dict:
        report = {
            "text": self.text_name,
            "config_hash": self.config_hash,
            "config": self.config,
            "tokens": self.tokens,
        }
        if self.direction is not None:
            report["direction"] = self.direction
        if self.delay is not None:
            report["delay"] = self.delay
        report["diagrams"] = {name: d.to_dict() for name, d in self.diagrams.items()}
        report["stats"] = self.stats
        if self.images:
            report["images"] = {name: [image.to_dict() for image in images] for name, images in self.images.items()}
        if self.replicates is not None:
            report["replicates"] = self.replicates
        if self.timing is not None:
            report["timing"] = self.timing
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    def summary(self) -> str:
        return f"AnalysisReport({self.text_name}, diagrams={sorted(self.diagrams)})"


class _Timer:
    def __init__(self, enabled: bool):
        self.timings: Optional[Dict[str, float]] = {} if enabled else None


@contextlib.contextmanager
def _stage(name: str, timer: _Timer):
    logger.debug("stage {} started", name)
    start = time.perf_counter()
    try:
        yield
    except StageError:
        raise
    except ArgutopoError as e:
        raise StageError(name, e) from e
    if timer.timings is not None:
        timer.timings[name] = timer.timings.get(name, 0.0) + time.perf_counter() - start


def direction_seed(config: RunConfig, index: int = 0) -> int:
    """Seed for the i-th text: the config seed, offset by `index` under ``per-text``."""
    if config.direction == "per-text":
        return (config.seed + index) & _SEED_MASK
    return config.seed


# -------------------------------
# Shared stages
# -------------------------------
def _load(config: RunConfig, model: Optional[EmbeddingModel], timer: _Timer) -> EmbeddingModel:
    if model is not None:
        return model
    with _stage("load_model", timer):
        if config.model_path is None:
            raise DataError("no embedding model given (model_path is unset)")
        return load_model(config.model_path, config.model_format)


def _embed(config: RunConfig, text: str, model: EmbeddingModel, timer: _Timer) -> Tuple[VectorSequence, Dict]:
    with _stage("tokenize", timer):
        tokens = tokenize(text, TokenPolicy(config.lowercase, config.strip_punctuation))
    with _stage("embed_tokens", timer):
        vectors = embed_tokens(model, tokens, config.oov)
        if len(vectors) == 0:
            raise DataError(f"none of the {len(tokens)} tokens is in the embedding model")
    report = {
        "count": len(tokens),
        "kept": len(vectors),
        "oov": [{"position": position, "token": token} for position, token in vectors.skipped],
    }
    return vectors, report


def _features(config: RunConfig, diagram: PersistenceDiagram, timer: _Timer) -> Tuple[List[Dict], List[PersistenceImage]]:
    with _stage("features", timer):
        stats = [diagram_stats(diagram, t).to_dict() for t in config.noise_thresholds]
        images = []
        if config.image:
            images = [
                persistence_image(diagram, dim, config.image_resolution, config.image_sigma)
                for dim in range(diagram.max_dim + 1)
            ]
    return stats, images


def _persistence(config: RunConfig, cloud: PointCloud, timer: _Timer, source: str) -> PersistenceDiagram:
    with _stage("rips_persistence", timer):
        diagram = rips_persistence(pairwise_distances(cloud), config.max_homology_dim, config.radius)
    return diagram.with_metadata(source=source, config_hash=config.config_hash())


# -------------------------------
# WDE
# -------------------------------
def _wde_cloud(config: RunConfig, vectors: VectorSequence, seed: int, timer: _Timer) -> Tuple[PointCloud, DelayParameters]:
    with _stage("sample_direction", timer):
        direction = sample_direction(vectors.dimension, seed)
    with _stage("project_series", timer):
        series = project_series(vectors, direction)
    with _stage("select_parameters", timer):
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
        _require_points(series, params)
    with _stage("delay_embed", timer):
        cloud = delay_embed(series, params.D, params.tau)
    return cloud, params


def _require_points(series: TimeSeries, params: DelayParameters) -> None:
    if params.point_count(series.N) < 2:
        needed = (params.D - 1) * params.tau + 2
        raise SignalError(
            f"text has {series.N} in-vocabulary tokens, but D={params.D}, tau={params.tau} "
            f"needs at least {needed}; use a longer text or smaller --dim/--tau"
        )


def _max_persistence(diagram: PersistenceDiagram, dim: int) -> Optional[float]:
    lifetimes = [p.persistence for p in diagram.finite(dim)]
    return max(lifetimes) if lifetimes else None


def _replicates(config: RunConfig, vectors: VectorSequence, seed: int, main: PersistenceDiagram, params) -> Dict:
    """Max H1 persistence of the WDE over `config.replicates` consecutive seeds."""
    runs = [{"seed": seed, "D": params.D, "tau": params.tau, "max_h1_persistence": _max_persistence(main, 1)}]
    for offset in range(1, config.replicates):
        replicate_seed = (seed + offset) & _SEED_MASK
        scratch = _Timer(False)
        try:
            cloud, replicate_params = _wde_cloud(config, vectors, replicate_seed, scratch)
            diagram = _persistence(config, cloud, scratch, "wde")
        except StageError as e:
            logger.warning("replicate with seed {} failed: {}", replicate_seed, e)
            runs.append({"seed": replicate_seed, "error": str(e)})
            continue
        runs.append(
            {
                "seed": replicate_seed,
                "D": replicate_params.D,
                "tau": replicate_params.tau,
                "max_h1_persistence": _max_persistence(diagram, 1),
            }
        )
    values = [r["max_h1_persistence"] for r in runs if r.get("max_h1_persistence") is not None]
    return {"runs": runs, "median_max_h1_persistence": statistics.median(values) if values else None}


def _analyze(
    config: RunConfig,
    text: str,
    model: Optional[EmbeddingModel],
    text_name: str,
    index: int,
    wde: bool,
    baseline: bool,
) -> AnalysisReport:
    config = config.validate()
    timer = _Timer(config.record_timing)
    model = _load(config, model, timer)
    vectors, token_report = _embed(config, text, model, timer)
    report = AnalysisReport(text_name, config.echo(), config.config_hash(), token_report)

    if baseline:
        cloud = PointCloud(vectors.vectors.astype("float64"))
        diagram = _persistence(config, cloud, timer, "baseline")
        report.diagrams["baseline"] = diagram
        report.stats["baseline"], images = _features(config, diagram, timer)
        if images:
            report.images["baseline"] = images

    if wde:
        seed = direction_seed(config, index)
        cloud, params = _wde_cloud(config, vectors, seed, timer)
        diagram = _persistence(config, cloud, timer, "wde")
        report.direction = {"seed": seed, "dimension": vectors.dimension}
        report.delay = {"D": params.D, "tau": params.tau, "points": cloud.n_points, "method_report": params.method_report}
        report.diagrams["wde"] = diagram
        report.stats["wde"], images = _features(config, diagram, timer)
        if images:
            report.images["wde"] = images
        if config.replicates > 1:
            report.replicates = _replicates(config, vectors, seed, diagram, params)

    report.timing = timer.timings
    logger.info("analyzed {}: {}", text_name, ", ".join(d.summary() for d in report.diagrams.values()))
    return report


def run_wde(
    config: RunConfig, text: str, model: Optional[EmbeddingModel] = None, text_name: str = "text", index: int = 0
) -> AnalysisReport:
    """
    Word-delay-embedding analysis of `text`.

    Parameters
    ----------
    config : RunConfig
    text : str
        UTF-8 text.
    model : EmbeddingModel, optional
        Preloaded model; loaded from ``config.model_path`` when omitted.
    text_name : str
        Label written into the report.
    index : int
        Position of the text in a batch; selects the seed under ``per-text`` directions.

    Raises
    ------
    StageError
        Labelled with the failing stage. Too few in-vocabulary tokens for the
        selected (D, tau) fail in ``select_parameters`` with the token count and
        the parameters in the message.
    """
    return _analyze(config, text, model, text_name, index, wde=True, baseline=False)


def run_baseline(
    config: RunConfig, text: str, model: Optional[EmbeddingModel] = None, text_name: str = "text", index: int = 0
) -> AnalysisReport:
    """Rips persistence of the word-vector cloud itself (one point per kept token)."""
    return _analyze(config, text, model, text_name, index, wde=False, baseline=True)


def run_both(
    config: RunConfig, text: str, model: Optional[EmbeddingModel] = None, text_name: str = "text", index: int = 0
) -> AnalysisReport:
    return _analyze(config, text, model, text_name, index, wde=True, baseline=True)


def analyze(
    config: RunConfig, text: str, model: Optional[EmbeddingModel] = None, text_name: str = "text", index: int = 0
) -> AnalysisReport:
    """Run the paths selected by ``config.mode``."""
    runner = {"wde": run_wde, "baseline": run_baseline, "both": run_both}[config.mode]
    return runner(config, text, model, text_name, index)
