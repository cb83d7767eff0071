"""
Run configuration for the analysis pipeline.

The defaults are read from ``yaml_files/defaults.yaml``; command-line options and
callers override individual fields. A validated `RunConfig` is echoed verbatim into
every report, and the SHA-256 of that echo (canonical JSON, sorted keys) identifies
the configuration that produced a diagram.

Classes
-------
RunConfig
    Immutable, validated set of pipeline parameters.

Dependencies
------------
- pyyaml (through `load_yaml`): default values

Author
------
Andreas Rasmusson
"""

import dataclasses
import hashlib
import json
import math
import numbers
from dataclasses import dataclass, fields
from typing import Dict, Optional, Tuple, Union

from argutopo.common.errors import ConfigError, SignalError
from argutopo.signal.parameters import DIM_METHODS, TAU_METHODS, parse_policy
from argutopo.text_embedding.formats import FORMAT_NAMES
from argutopo.text_embedding.model import OovPolicy
from argutopo.yaml_files.yaml_loading import load_yaml

MODES = ("wde", "baseline", "both")
DIRECTIONS = ("shared", "per-text")

# YAML keys whose field name differs from the key
_RENAMED = {("homology", "max_dim"): "max_homology_dim"}
# fields that only choose where artifacts go; they never change a report
_OUTPUT_ONLY = ("out_dir", "plot")


@dataclass(frozen=True)
class RunConfig:
    model_path: Optional[str] = None
    model_format: str = "glove-text"
    mode: str = "both"
    seed: int = 0
    direction: str = "shared"
    replicates: int = 1
    record_timing: bool = False

    lowercase: bool = True
    strip_punctuation: bool = True
    oov: str = "skip"

    tau: Union[str, int] = "auto-acf"
    dim: Union[str, int] = "auto-fnn"
    acf_threshold: float = 1.0 / math.e
    mi_bins: int = 16
    fnn_max_dim: int = 10
    fnn_r_tol: float = 10.0
    fnn_threshold: float = 0.01

    max_homology_dim: int = 1
    max_radius: Optional[float] = None

    noise_thresholds: Tuple[float, ...] = (0.05, 0.1, 0.25)
    image: bool = False
    image_resolution: Tuple[int, int] = (20, 20)
    image_sigma: Optional[float] = None

    out_dir: str = "argutopo_out"
    plot: bool = False

    # -------------------------------
    # Construction
    # -------------------------------
    @classmethod
    def from_yaml_defaults(cls, file_name: str = "defaults.yaml", **overrides) -> "RunConfig":
        """
        Build a validated config from the YAML defaults plus keyword overrides.

        Overrides whose value is ``None`` are ignored, so unset CLI options keep the
        default.

        Raises
        ------
        ConfigError
            On unknown fields or invalid values.
        """
        values: Dict = {}
        for section, entries in (load_yaml(file_name) or {}).items():
            if entries is not None and not isinstance(entries, dict):
                raise ConfigError(f"section {section!r} of {file_name} must be a mapping")
            for key, value in (entries or {}).items():
                values[_RENAMED.get((section, key), key)] = value
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_echo(values)

    @classmethod
    def from_echo(cls, echo: Dict) -> "RunConfig":
        """Rebuild a config from a report's ``config`` section (or any field mapping)."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(echo) - known)
        if unknown:
            raise ConfigError(f"unknown configuration fields: {', '.join(unknown)}")
        values = dict(echo)
        for name in ("noise_thresholds", "image_resolution"):
            if isinstance(values.get(name), list):
                values[name] = tuple(values[name])
        try:
            config = cls(**values)
        except TypeError as e:
            raise ConfigError(str(e)) from None
        return config.validate()

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes).validate()

    # -------------------------------
    # Validation
    # -------------------------------
    def validate(self) -> "RunConfig":
        """
        Check every field and normalize policies.

        Returns
        -------
        RunConfig
            A config whose fixed policies are ints and numeric fields have their
            canonical types.

        Raises
        ------
        ConfigError
        """
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"direction must be one of {', '.join(DIRECTIONS)}, got {self.direction!r}")
        if self.model_format not in FORMAT_NAMES:
            raise ConfigError(f"unknown model format {self.model_format!r}")
        try:
            oov = OovPolicy(self.oov).value
        except ValueError:
            raise ConfigError(f"oov must be 'skip' or 'fail', got {self.oov!r}") from None
        try:
            tau = parse_policy(self.tau, TAU_METHODS)
            dim = parse_policy(self.dim, DIM_METHODS)
        except SignalError as e:
            raise ConfigError(str(e)) from None

        _require(_is_int(self.seed) and self.seed >= 0, f"seed must be a non-negative integer, got {self.seed!r}")
        for name in ("replicates", "mi_bins", "fnn_max_dim"):
            value = getattr(self, name)
            _require(_is_int(value) and value >= 1, f"{name} must be a positive integer, got {value!r}")
        _require(
            _is_int(self.max_homology_dim) and self.max_homology_dim in (1, 2),
            f"max_homology_dim must be 1 or 2, got {self.max_homology_dim!r}",
        )
        _require(
            _is_real(self.acf_threshold) and 0 < self.acf_threshold < 1,
            f"acf_threshold must be a number in (0, 1), got {self.acf_threshold!r}",
        )
        _require(_is_real(self.fnn_r_tol) and self.fnn_r_tol > 0, f"fnn_r_tol must be a positive number, got {self.fnn_r_tol!r}")
        _require(
            _is_real(self.fnn_threshold) and 0 < self.fnn_threshold <= 1,
            f"fnn_threshold must be a number in (0, 1], got {self.fnn_threshold!r}",
        )
        _require(
            self.max_radius is None or (_is_real(self.max_radius) and self.max_radius >= 0),
            f"max_radius must be a non-negative number, got {self.max_radius!r}",
        )
        thresholds = self.noise_thresholds
        _require(
            isinstance(thresholds, (list, tuple)) and all(_is_real(t) and t >= 0 for t in thresholds),
            f"noise thresholds must be non-negative numbers, got {thresholds!r}",
        )
        _require(len(thresholds) > 0, "at least one noise threshold is required")
        _require(
            isinstance(self.image_resolution, (list, tuple))
            and len(self.image_resolution) == 2
            and all(_is_int(r) and r >= 1 for r in self.image_resolution),
            f"image_resolution must be two positive integers, got {self.image_resolution!r}",
        )
        _require(
            self.image_sigma is None or (_is_real(self.image_sigma) and self.image_sigma > 0),
            f"image_sigma must be a positive number, got {self.image_sigma!r}",
        )

        return dataclasses.replace(
            self,
            oov=oov,
            tau=tau,
            dim=dim,
            acf_threshold=float(self.acf_threshold),
            fnn_r_tol=float(self.fnn_r_tol),
            fnn_threshold=float(self.fnn_threshold),
            max_radius=None if self.max_radius is None else float(self.max_radius),
            noise_thresholds=tuple(float(t) for t in self.noise_thresholds),
            image_resolution=tuple(int(r) for r in self.image_resolution),
            image_sigma=None if self.image_sigma is None else float(self.image_sigma),
        )

    # -------------------------------
    # Echo
    # -------------------------------
    @property
    def radius(self) -> float:
        return math.inf if self.max_radius is None else self.max_radius

    def echo(self) -> Dict:
        """JSON-ready field mapping in declaration order, output locations excluded."""
        echo = {}
        for f in fields(self):
            if f.name in _OUTPUT_ONLY:
                continue
            value = getattr(self, f.name)
            echo[f.name] = list(value) if isinstance(value, tuple) else value
        return echo

    def config_hash(self) -> str:
        canonical = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _is_int(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_real(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)
