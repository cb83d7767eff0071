"""
YAML configuration loading.

Run defaults ship as ``defaults.yaml`` next to this module. `load_yaml` reads a
bundled file by name, or any other YAML file by path, and always returns a
mapping of sections.

Functions
---------
- `load_yaml`: parse a YAML configuration file into a dictionary

Author
------
Andreas Rasmusson
"""

from pathlib import Path
from typing import Dict, Union

import yaml

from argutopo.common.errors import ConfigError

PACKAGE_DIR = Path(__file__).parent


def _resolve(yaml_file: Union[str, Path]) -> Path:
    # bundled files take precedence over same-named files in the working directory
    candidate = Path(yaml_file)
    bundled = PACKAGE_DIR / candidate
    if not candidate.is_absolute() and bundled.exists():
        return bundled
    return candidate


def load_yaml(yaml_file: Union[str, Path]) -> Dict:
    """
    Load a YAML configuration file.

    Parameters
    ----------
    yaml_file : str or Path
        Name of a file in the `yaml_files` package (``"defaults.yaml"``), or a
        path to a YAML file elsewhere.

    Returns
    -------
    dict
        The parsed document; an empty file gives an empty dict.

    Raises
    ------
    ConfigError
        If the file cannot be read, is not valid YAML, or its top level is not a
        mapping.
    """
    path = _resolve(yaml_file)
    try:
        with open(path, "r", encoding="utf-8") as f:
            content = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read configuration file {path}: {e.strerror}") from None
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from None
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ConfigError(f"{path} must contain a mapping of sections, found {type(content).__name__}")
    return content
