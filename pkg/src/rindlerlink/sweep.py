"""Grid evaluation and bit-stable tabular output.

A sweep walks the Cartesian product of the configured T, k_so, a and
eta axes in lexicographic order, computes the channel and the key rate
at every point, and serializes the result as CSV (canonical), a
gnuplot-style surface file, and a JSON run manifest. Output bytes are
a pure function of the configuration: worker count and scheduling
order never leak into the files.
"""

from __future__ import annotations

import dataclasses
import io
import itertools
import json
import math
import os
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channel_analytic import gain_from_kappa, kappa_from_geometry
from .config import SweepConfig
from .errors import ConfigError, DiscretizationError, NonConvergenceError
from .gaussian_qkd import key_rate, optimize_modulation
from .overlap_engine import compute_overlap
from .wavepackets import (
    DetectorProfile,
    SourceProfile,
    TransverseProfile,
    validity_report,
)

CSV_COLUMNS = (
    "T",
    "k_so",
    "a",
    "kappa",
    "G",
    "V",
    "eta",
    "V_A",
    "I_AB",
    "chi_BE",
    "K",
    "engine",
    "discrepancy",
    "validity",
    "status",
)
CSV_HEADER = ",".join(CSV_COLUMNS)

_FLOAT_COLUMNS = frozenset(
    ("T", "k_so", "a", "kappa", "G", "V", "eta", "V_A", "I_AB", "chi_BE", "K", "discrepancy")
)

WORKERS_ENV = "RINDLERLINK_WORKERS"


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a completed sweep."""

    T: float
    k_so: float
    a: float
    kappa: float
    G: float
    V: float
    eta: float
    V_A: float
    I_AB: float
    chi_BE: float
    K: float
    engine: str
    discrepancy: float
    validity: str
    status: str
    diagnostics: object = None  # JSON-ready dict for verbose output; not serialized to CSV

    def csv_values(self) -> tuple:
        return tuple(getattr(self, name) for name in CSV_COLUMNS)


def worker_count() -> int:
    """Worker pool size from the environment; absent means one per CPU
    capped at 8. The count affects wall time only, never output bytes."""
    text = os.environ.get(WORKERS_ENV)
    if text is None:
        return min(8, os.cpu_count() or 1)
    try:
        count = int(text)
    except ValueError:
        count = 0
    if count < 1:
        raise ConfigError(
            f"{WORKERS_ENV} must be a positive integer, got {text!r}",
            key=WORKERS_ENV,
        )
    return count


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return "%.17g" % value


def _nan_row(T, k_so, a, eta, engine, status) -> SweepRow:
    # kappa is well defined algebraically even past the horizon and its
    # sign is the telltale, so it stays numeric on horizon rows.
    nan = math.nan
    return SweepRow(
        T=T,
        k_so=k_so,
        a=a,
        kappa=2.0 * math.pi * abs(k_so) * T,
        G=nan,
        V=nan,
        eta=eta,
        V_A=nan,
        I_AB=nan,
        chi_BE=nan,
        K=nan,
        engine=engine,
        discrepancy=nan,
        validity="n/a",
        status=status,
    )


def _numeric_gain(variance_ratio: float) -> float:
    # The measured variance pins the gain through V = 2G - 1; the mean
    # ratio is kept as a diagnostic instead because the noise figure is
    # what bounds the key rate.
    return 0.5 * (variance_ratio + 1.0)


def _kappa_from_gain(gain: float) -> float:
    if gain <= 1.0:
        return math.inf
    return math.log(gain / (gain - 1.0))


def evaluate_point(T: float, k_so: float, a: float, eta: float, config: SweepConfig) -> SweepRow:
    """Evaluate one grid point; never raises for horizon or rough grids.

    Horizon points (T <= 0) and numeric non-convergence become rows
    with a telling status so grids stay rectangular.
    """
    if T <= 0.0:
        return _nan_row(T, k_so, a, eta, config.engine, "horizon")

    kappa = kappa_from_geometry(k_so, T)
    gain = gain_from_kappa(kappa)
    variance = 2.0 * gain - 1.0

    profiles = None
    validity = "n/a"
    if config.sigma is not None or config.sigma_ratio is not None:
        transverse = TransverseProfile(k_perp=config.k_perp)
        src = SourceProfile(k_so=k_so, sigma=config.sigma_for(k_so), transverse=transverse)
        det = DetectorProfile(
            transverse=transverse, k_max=config.k_max, tau_window=config.tau_window
        )
        profiles = (src, det)
        report = validity_report(src, det, T)
        flags = report.violated()
        validity = "ok" if not flags else ";".join(flags)

    overlap = None
    status = "ok"
    if config.engine in ("numeric", "both"):
        try:
            overlap = compute_overlap(profiles[0], profiles[1], T, config.settings)
        except (NonConvergenceError, DiscretizationError):
            status = "nonconverged"
        else:
            extra = [w for w in overlap.diagnostics.warnings if w not in validity]
            if extra:
                joined = ";".join(extra)
                validity = joined if validity in ("ok", "n/a") else validity + ";" + joined

    primary_kappa = kappa
    if config.engine == "numeric":
        if overlap is None:
            return dataclasses.replace(
                _nan_row(T, k_so, a, eta, config.engine, status), validity=validity
            )
        primary_kappa = _kappa_from_gain(_numeric_gain(overlap.variance_ratio))

    if config.v_a == "optimize":
        v_a, primary = optimize_modulation(
            primary_kappa,
            eta,
            beta_rec=config.beta_rec,
            detection=config.detection,
            attack=config.attack,
        )
    else:
        v_a = config.v_a
        primary = key_rate(
            primary_kappa,
            eta,
            v_a,
            beta_rec=config.beta_rec,
            detection=config.detection,
            attack=config.attack,
        )

    discrepancy = math.nan
    if config.engine == "both" and overlap is not None:
        numeric_kappa = _kappa_from_gain(_numeric_gain(overlap.variance_ratio))
        numeric = key_rate(
            numeric_kappa,
            eta,
            v_a,
            beta_rec=config.beta_rec,
            detection=config.detection,
            attack=config.attack,
        )
        scale = max(abs(primary.key_rate), abs(numeric.key_rate))
        if scale == 0.0:
            discrepancy = 0.0
        else:
            discrepancy = abs(primary.key_rate - numeric.key_rate) / scale

    if config.engine == "numeric":
        row_gain = _numeric_gain(overlap.variance_ratio)
        row_variance = overlap.variance_ratio
    else:
        row_gain = gain
        row_variance = variance

    diagnostics = None
    if overlap is not None:
        diagnostics = {
            "T": T,
            "k_so": k_so,
            "a": a,
            "eta": eta,
            "mean_ratio": overlap.mean_ratio,
            "variance_ratio": overlap.variance_ratio,
        }
        diagnostics.update(overlap.diagnostics.as_record())

    return SweepRow(
        T=T,
        k_so=k_so,
        a=a,
        kappa=kappa,
        G=row_gain,
        V=row_variance,
        eta=eta,
        V_A=v_a,
        I_AB=primary.i_ab,
        chi_BE=primary.chi_be,
        K=primary.key_rate,
        engine=config.engine,
        discrepancy=discrepancy,
        validity=validity,
        status=status,
        diagnostics=diagnostics,
    )


def grid_points(config: SweepConfig):
    """Lexicographic grid order over (T, k_so, a, eta), axes ascending."""
    return itertools.product(
        config.t_values, config.k_so_values, config.a_values, config.eta_values
    )


def run_sweep(config: SweepConfig) -> list:
    """Evaluate the whole grid concurrently, assemble in grid order."""
    points = list(grid_points(config))
    rows = [None] * len(points)
    workers = worker_count()
    if workers == 1 or len(points) <= 1:
        for index, point in enumerate(points):
            rows[index] = evaluate_point(*point, config)
        return rows
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(evaluate_point, *point, config): index
            for index, point in enumerate(points)
        }
        for future, index in futures.items():
            rows[index] = future.result()
    return rows


def format_csv(rows) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(_fmt(value) for value in row.csv_values()))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list:
    """Inverse of format_csv (diagnostics are not round-tripped)."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized CSV header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ValueError(f"bad CSV row: {line!r}")
        kwargs = {}
        for name, part in zip(CSV_COLUMNS, parts):
            kwargs[name] = float(part) if name in _FLOAT_COLUMNS else part
        rows.append(SweepRow(**kwargs))
    return rows


def format_surface(rows, config: SweepConfig) -> str:
    """Whitespace-separated K(T, k_so) surface at the first (a, eta)
    slice, one blank-line-separated block per k_so value."""
    a0 = config.a_values[0]
    eta0 = config.eta_values[0]
    lines = [
        "# key-rate surface K(T, k_so) at a=%s eta=%s" % (_fmt(a0), _fmt(eta0)),
        "# columns: T k_so K",
    ]
    by_key = {(row.T, row.k_so): row for row in rows if row.a == a0 and row.eta == eta0}
    for k_so in config.k_so_values:
        lines.append("")
        for T in config.t_values:
            row = by_key[(T, k_so)]
            lines.append("%s %s %s" % (_fmt(row.T), _fmt(row.k_so), _fmt(row.K)))
    return "\n".join(lines) + "\n"


def build_manifest(rows, config: SweepConfig, outputs: dict) -> dict:
    status_counts = {}
    for row in rows:
        status_counts[row.status] = status_counts.get(row.status, 0) + 1
    versions = {
        "numpy": np.__version__,
        "python": platform.python_version(),
        "rindlerlink": __version__,
    }
    if config.figures:
        import matplotlib

        versions["matplotlib"] = matplotlib.__version__
    return {
        "config": config.canonical(),
        "grid": {
            "rows": len(rows),
            "status_counts": status_counts,
            "surface_slice": {"a": config.a_values[0], "eta": config.eta_values[0]},
        },
        "outputs": outputs,
        "tolerances": dataclasses.asdict(config.settings),
        "versions": versions,
    }


def format_manifest(manifest: dict) -> str:
    return json.dumps(manifest, sort_keys=True, indent=2) + "\n"


def format_diagnostics(rows) -> str:
    lines = [
        json.dumps(row.diagnostics, sort_keys=True)
        for row in rows
        if row.diagnostics is not None
    ]
    return "\n".join(lines) + "\n" if lines else ""


def _write_text(path: str, text: str) -> None:
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def emit_outputs(rows, config: SweepConfig) -> dict:
    """Write CSV, surface, optional figures/diagnostics, and manifest.

    Returns {kind: path}. I/O errors propagate as OSError with the
    offending path attached.
    """
    outdir = config.directory
    os.makedirs(outdir, exist_ok=True)
    names = {
        "csv": config.prefix + ".csv",
        "manifest": config.prefix + "_manifest.json",
        "surface": config.prefix + "_surface.dat",
    }
    _write_text(os.path.join(outdir, names["csv"]), format_csv(rows))
    _write_text(os.path.join(outdir, names["surface"]), format_surface(rows, config))

    diagnostics_text = format_diagnostics(rows) if config.verbose else ""
    if diagnostics_text:
        names["diagnostics"] = config.prefix + "_diagnostics.jsonl"
        _write_text(os.path.join(outdir, names["diagnostics"]), diagnostics_text)

    if config.figures:
        from . import report

        for kind, filename in report.render_figures(rows, config, outdir).items():
            names[kind] = filename

    manifest = build_manifest(rows, config, names)
    _write_text(os.path.join(outdir, names["manifest"]), format_manifest(manifest))
    return {kind: os.path.join(outdir, name) for kind, name in names.items()}
