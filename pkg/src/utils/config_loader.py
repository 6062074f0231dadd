from __future__ import annotations

import copy
from pathlib import Path
from typing import Any

import yaml

from .paths import CONFIG_DIR


def deep_merge(a: dict, b: dict) -> dict:
    """Merges b into a recursively; a null value in b removes the key."""
    for k, v in b.items():
        if isinstance(v, dict) and isinstance(a.get(k), dict):
            deep_merge(a[k], v)
        elif v is None and k in a:
            a.pop(k, None)
        else:
            a[k] = v
    return a


def load_config(experiment: str | None = None, config_dir: Path = CONFIG_DIR) -> dict[str, Any]:
    """common.yaml + <experiment>.yaml"""
    config_dir = Path(config_dir)
    with open(config_dir / "common.yaml", encoding="utf-8") as f:
        common_cfg = yaml.safe_load(f) or {}
    if not experiment:
        return common_cfg

    overlay_path = config_dir / f"{experiment}.yaml"
    if not overlay_path.exists():
        raise FileNotFoundError(f"No config overlay named '{experiment}' in {config_dir}")
    with open(overlay_path, encoding="utf-8") as f:
        experiment_cfg = yaml.safe_load(f) or {}

    return deep_merge(copy.deepcopy(common_cfg), experiment_cfg)
