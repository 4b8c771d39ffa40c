"""Run configuration: built-in defaults < config file < command-line flags."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from affinecs.quad import DEFAULT_ORDERS

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_TOLERANCES = {
    "coeffs": 0.0,          # exact integer equality
    "egf": 1e-10,
    "dilation": 1e-8,
    "kernel_series": 1e-8,
    "reproduce": 1e-6,
    "gram": 1e-8,
    "cayley": 1e-12,
    "isometry": 1e-4,
    "isometry_full": 1e-9,
    "roundtrip": 1e-4,
    "intertwining": 1e-5,
    "zeta": 1e-4,
    "adjoint": 1e-5,
}

OUTPUT_FORMATS = ("text", "csv", "json")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    orders: dict = field(default_factory=lambda: dict(DEFAULT_ORDERS))
    sigma: float = 8.0
    gamma: float = 32.0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output: str = "text"

    def validate(self):
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if not self.gamma > 1:
            raise ConfigError(f"gamma must exceed 1, got {self.gamma}")
        for k, v in self.tolerances.items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance name {k!r}")
            if v < 0 or (v == 0 and k != "coeffs"):
                raise ConfigError(f"tolerance {k} must be positive, got {v}")
        for k, v in self.orders.items():
            if k not in DEFAULT_ORDERS:
                raise ConfigError(f"unknown quadrature order {k!r}")
            if int(v) < 1:
                raise ConfigError(f"order {k} must be positive")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"output must be one of {OUTPUT_FORMATS}")
        return self

    def update(self, data):
        """Merge a mapping shaped like the config file."""
        quad = data.get("quadrature", {})
        for key in ("sigma", "gamma"):
            if key in data:
                setattr(self, key, float(data[key]))
            if key in quad:
                setattr(self, key, float(quad[key]))
        orders = dict(data.get("orders", {}))
        orders.update(quad.get("orders", {}))
        self.orders.update({k: int(v) for k, v in orders.items()})
        self.tolerances.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
        if "output" in data:
            self.output = str(data["output"])
        return self


def load_file(path):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return json.loads(text)
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def parse_assignments(items, cast=float):
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise ConfigError(f"expected NAME=VALUE, got {part!r}")
            k, v = part.split("=", 1)
            try:
                out[k.strip()] = cast(v.strip())
            except ValueError:
                raise ConfigError(f"bad value in {part!r}") from None
    return out
