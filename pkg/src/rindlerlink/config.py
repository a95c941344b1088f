"""Sweep configuration: file parsing, overrides, validation.

The on-disk format is a flat key = value text file; section headers in
the TOML style are allowed and act as key prefixes (``[grid]`` followed
by ``T = [...]`` defines ``grid.T``). Values use Python literal syntax:
numbers, quoted strings, booleans, and lists. Command-line overrides
are ``key=value`` tokens in the same syntax and accept either the bare
key or the dotted form.
"""

from __future__ import annotations

import ast
import configparser
import dataclasses
import io
import math
from dataclasses import dataclass

from .errors import ConfigError
from .overlap_engine import DEFAULT_SETTINGS, QuadratureSettings

ENGINE_MODES = ("analytic", "numeric", "both")
ATTACK_MODELS = ("trusted_amplifier", "purified_all")
DETECTION_MODES = ("homodyne",)

# Canonical dotted keys. The short name (after the dot) doubles as the
# bare spelling in section-less files and overrides, so it must stay
# unique across sections.
_KNOWN_KEYS = (
    "grid.T",
    "grid.k_so",
    "grid.a",
    "grid.eta",
    "channel.V_A",
    "channel.beta_rec",
    "channel.attack",
    "channel.detection",
    "engine.mode",
    "source.sigma",
    "source.sigma_ratio",
    "source.k_perp",
    "detector.k_max",
    "detector.tau_window",
    "quadrature.inner_tol",
    "quadrature.outer_tol",
    "quadrature.k_floor",
    "quadrature.gl_order",
    "output.directory",
    "output.prefix",
    "output.figures",
    "output.verbose",
)

_SHORT_TO_DOTTED = {key.split(".", 1)[1]: key for key in _KNOWN_KEYS}
_SHORT_TO_DOTTED["engine"] = "engine.mode"


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep description; axes are sorted ascending."""

    t_values: tuple
    k_so_values: tuple
    a_values: tuple
    eta_values: tuple
    v_a: object  # positive float, or the string "optimize"
    beta_rec: float
    attack: str
    detection: str
    engine: str
    sigma: object
    sigma_ratio: object
    k_perp: float
    k_max: object
    tau_window: object
    settings: QuadratureSettings
    directory: str
    prefix: str
    figures: bool
    verbose: bool

    @property
    def grid_size(self) -> int:
        return (
            len(self.t_values)
            * len(self.k_so_values)
            * len(self.a_values)
            * len(self.eta_values)
        )

    def canonical(self) -> dict:
        """Full effective configuration as a JSON-ready mapping.

        Every known key appears, defaults included, so the manifest
        echo is a complete reproduction recipe.
        """
        return {
            "grid.T": list(self.t_values),
            "grid.k_so": list(self.k_so_values),
            "grid.a": list(self.a_values),
            "grid.eta": list(self.eta_values),
            "channel.V_A": self.v_a,
            "channel.beta_rec": self.beta_rec,
            "channel.attack": self.attack,
            "channel.detection": self.detection,
            "engine.mode": self.engine,
            "source.sigma": self.sigma,
            "source.sigma_ratio": self.sigma_ratio,
            "source.k_perp": self.k_perp,
            "detector.k_max": self.k_max,
            "detector.tau_window": self.tau_window,
            "quadrature.inner_tol": self.settings.inner_tol,
            "quadrature.outer_tol": self.settings.outer_tol,
            "quadrature.k_floor": self.settings.k_floor,
            "quadrature.gl_order": self.settings.gl_order,
            "output.directory": self.directory,
            "output.prefix": self.prefix,
            "output.figures": self.figures,
            "output.verbose": self.verbose,
        }

    def sigma_for(self, k_so: float) -> float:
        """Source bandwidth at one grid point; ratio scales with |k_so|."""
        if self.sigma is not None:
            return self.sigma
        return self.sigma_ratio * abs(k_so)


def _coerce(text: str):
    """Parse one value: Python literal syntax, TOML-style booleans, or
    a bare string as fallback."""
    stripped = text.strip()
    if stripped.lower() == "true":
        return True
    if stripped.lower() == "false":
        return False
    try:
        return ast.literal_eval(stripped)
    except (ValueError, SyntaxError):
        return stripped


def parse_config_text(text: str) -> dict:
    """Read key = value pairs into a dotted-key mapping (values raw).

    Files without a leading section header get an implicit one so the
    flat form stays legal.
    """
    body = text
    for line in text.splitlines():
        bare = line.strip()
        if not bare or bare.startswith("#") or bare.startswith(";"):
            continue
        if not bare.startswith("["):
            body = "[config]\n" + text
        break
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    parser.optionxform = str  # keys are case-sensitive (T vs t)
    try:
        parser.read_string(body)
    except configparser.Error as exc:
        raise ConfigError(f"unparseable config: {exc}") from exc
    raw = {}
    for section in parser.sections():
        for short, value in parser.items(section):
            if section == "config":
                dotted = _SHORT_TO_DOTTED.get(short, short)
            else:
                dotted = f"{section}.{short}"
            if dotted in raw:
                raise ConfigError(f"duplicate key {dotted!r}", key=dotted)
            raw[dotted] = _coerce(value)
    return raw


def load_config(path: str) -> dict:
    try:
        with io.open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return parse_config_text(text)


def apply_overrides(raw: dict, overrides) -> dict:
    """Merge ``key=value`` tokens over a raw mapping (returns a copy)."""
    merged = dict(raw)
    for token in overrides:
        key, sep, value = token.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"override {token!r} is not key=value", key=token)
        dotted = _SHORT_TO_DOTTED.get(key, key)
        merged[dotted] = _coerce(value)
    return merged


def _as_axis(value, key: str) -> tuple:
    items = list(value) if isinstance(value, (list, tuple)) else [value]
    if not items:
        raise ConfigError(f"{key} must be a non-empty list", key=key)
    axis = []
    for item in items:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{key} entries must be numbers", key=key)
        item = float(item)
        if not math.isfinite(item):
            raise ConfigError(f"{key} entries must be finite", key=key)
        axis.append(item)
    return tuple(sorted(axis))


def _as_float(value, key: str, positive=True, maximum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number", key=key)
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite", key=key)
    if positive and value <= 0:
        raise ConfigError(f"{key} must be positive", key=key)
    if maximum is not None and value > maximum:
        raise ConfigError(f"{key} must be <= {maximum}", key=key)
    return value


def _as_bool(value, key: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{key} must be true or false", key=key)
    return value


def _as_choice(value, key: str, choices) -> str:
    if value not in choices:
        raise ConfigError(
            f"{key} must be one of {', '.join(choices)}", key=key
        )
    return value


def build_sweep_config(raw: dict) -> SweepConfig:
    """Validate a raw mapping into a SweepConfig.

    Raises ConfigError naming the offending key on the first problem
    found; unknown keys are rejected rather than ignored.
    """
    for key in raw:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key {key!r}", key=key)

    for required in ("grid.T", "grid.k_so"):
        if required not in raw:
            raise ConfigError(f"missing required key {required}", key=required)
    t_values = _as_axis(raw["grid.T"], "grid.T")
    k_so_values = _as_axis(raw["grid.k_so"], "grid.k_so")
    for k_so in k_so_values:
        if k_so >= 0:
            raise ConfigError(
                "grid.k_so entries must be negative (left-moving source)",
                key="grid.k_so",
            )
    a_values = _as_axis(raw.get("grid.a", 1.0), "grid.a")
    for a in a_values:
        if a <= 0:
            raise ConfigError("grid.a entries must be positive", key="grid.a")
    eta_values = _as_axis(raw.get("grid.eta", 1.0), "grid.eta")
    for eta in eta_values:
        if not 0.0 < eta <= 1.0:
            raise ConfigError(
                "grid.eta entries must lie in (0, 1]", key="grid.eta"
            )

    v_a = raw.get("channel.V_A", 2.0)
    if v_a != "optimize":
        v_a = _as_float(v_a, "channel.V_A")
    beta_rec = _as_float(raw.get("channel.beta_rec", 1.0), "channel.beta_rec", maximum=1.0)
    attack = _as_choice(raw.get("channel.attack", "trusted_amplifier"), "channel.attack", ATTACK_MODELS)
    detection = _as_choice(raw.get("channel.detection", "homodyne"), "channel.detection", DETECTION_MODES)
    engine = _as_choice(raw.get("engine.mode", "analytic"), "engine.mode", ENGINE_MODES)

    sigma = raw.get("source.sigma")
    sigma_ratio = raw.get("source.sigma_ratio")
    if sigma is not None:
        sigma = _as_float(sigma, "source.sigma")
    if sigma_ratio is not None:
        sigma_ratio = _as_float(sigma_ratio, "source.sigma_ratio")
    if engine in ("numeric", "both"):
        if (sigma is None) == (sigma_ratio is None):
            raise ConfigError(
                "numeric engine needs exactly one of source.sigma or source.sigma_ratio",
                key="source.sigma",
            )
    k_perp = _as_float(raw.get("source.k_perp", 1.0), "source.k_perp")

    k_max = raw.get("detector.k_max")
    if k_max is not None:
        k_max = _as_float(k_max, "detector.k_max")
    tau_window = raw.get("detector.tau_window")
    if tau_window is not None:
        tau_window = _as_float(tau_window, "detector.tau_window")

    settings = DEFAULT_SETTINGS
    replacements = {}
    for field in ("inner_tol", "outer_tol", "k_floor"):
        dotted = f"quadrature.{field}"
        if dotted in raw:
            replacements[field] = _as_float(raw[dotted], dotted)
    if "quadrature.gl_order" in raw:
        order = raw["quadrature.gl_order"]
        if isinstance(order, bool) or not isinstance(order, int) or order < 2:
            raise ConfigError(
                "quadrature.gl_order must be an integer >= 2",
                key="quadrature.gl_order",
            )
        replacements["gl_order"] = order
    if replacements:
        settings = dataclasses.replace(settings, **replacements)

    directory = raw.get("output.directory", "sweep_out")
    if not isinstance(directory, str) or not directory:
        raise ConfigError("output.directory must be a non-empty string", key="output.directory")
    prefix = raw.get("output.prefix", "sweep")
    if not isinstance(prefix, str) or not prefix or "/" in prefix:
        raise ConfigError(
            "output.prefix must be a non-empty name without path separators",
            key="output.prefix",
        )
    figures = _as_bool(raw.get("output.figures", True), "output.figures")
    verbose = _as_bool(raw.get("output.verbose", False), "output.verbose")

    return SweepConfig(
        t_values=t_values,
        k_so_values=k_so_values,
        a_values=a_values,
        eta_values=eta_values,
        v_a=v_a,
        beta_rec=beta_rec,
        attack=attack,
        detection=detection,
        engine=engine,
        sigma=sigma,
        sigma_ratio=sigma_ratio,
        k_perp=k_perp,
        k_max=k_max,
        tau_window=tau_window,
        settings=settings,
        directory=directory,
        prefix=prefix,
        figures=figures,
        verbose=verbose,
    )
