"""Plain-text key=value run configuration with flag overrides and manifests."""

from __future__ import annotations

import hashlib
import json
import os
from typing import Dict, Iterable, Optional

from .errors import ConfigError


def parse_config_text(text: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


class RunConfig:
    """Key=value settings; credentials stay in the environment, never here."""

    def __init__(self, values: Optional[Dict[str, str]] = None):
        self.values = dict(values or {})

    @classmethod
    def load(cls, path: Optional[str], overrides: Iterable[str] = ()) -> "RunConfig":
        values: Dict[str, str] = {}
        if path:
            if not os.path.exists(path):
                raise ConfigError(f"config file not found: {path}")
            with open(path, "r", encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        for item in overrides:
            if "=" not in item:
                raise ConfigError(f"override must be key=value: {item!r}")
            key, _, value = item.partition("=")
            values[key.strip()] = value.strip()
        return cls(values)

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.values.get(key, default)

    def require(self, key: str) -> str:
        if key not in self.values:
            raise ConfigError(f"missing required config key {key!r}")
        return self.values[key]

    def get_int(self, key: str, default: int) -> int:
        raw = self.values.get(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"config key {key!r} must be an integer") from None

    def get_bool(self, key: str, default: bool) -> bool:
        raw = self.values.get(key)
        if raw is None:
            return default
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"config key {key!r} must be a boolean")

    def require_path(self, key: str) -> str:
        path = self.require(key)
        if not os.path.exists(path):
            raise ConfigError(f"config key {key!r}: path does not exist: {path}")
        return path

    def canonical(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in sorted(self.values.items()))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()


def file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir: str, config: RunConfig, subcommand: str,
                   inputs: Iterable[str], outputs: Iterable[str]):
    """Record everything needed for a byte-identical rerun (no wall clock)."""
    manifest = {
        "subcommand": subcommand,
        "config_hash": config.digest(),
        "config": dict(sorted(config.values.items())),
        "inputs": {p: file_digest(p) for p in sorted(set(inputs))},
        "outputs": sorted(set(outputs)),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
