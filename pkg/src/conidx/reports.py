"""Experiment configs, CSV/JSON emission, and the on-disk sequence cache.

Configs are strict JSON: unknown fields are rejected and all schema
violations are reported at once.  Output files are written atomically
(temp file + rename) and floats are printed with 17 significant digits so
a re-run produces byte-identical files.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .density import IndexReport, SeqWindow
from .harness import ExperimentResult, ExperimentSpec
from .points import IRRATIONAL_VALUES, PointSpec


class ConfigError(ValueError):
    """Carries the full list of schema violations."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


_OPERATORS = ("lagrange1d", "lagrange2d", "shepard1d", "shepard2d")
_SPEC_FIELDS = {"lagrange1d": ("theta",), "lagrange2d": ("theta", "gamma"),
                "shepard1d": ("x0",), "shepard2d": ("x0", "y0")}
_KNOWN_FIELDS = {
    "schema_version", "experiment", "theta", "gamma", "x0", "y0", "d", "s",
    "window", "epsilon", "checkpoints", "tol", "targets", "eval_point",
    "cross_check", "out", "cache_dir",
}


@dataclass
class ExperimentConfig:
    """Validated experiment configuration (mirrors the JSON schema)."""

    experiment: str
    specs: dict[str, PointSpec]
    d: float = 1.0
    s: float = 2.0
    window: int = 1000
    epsilon: float | None = None
    checkpoints: int = 16
    tol: float = 0.03
    targets: list[tuple[float, float]] | None = None
    eval_point: tuple[float, float] | None = None
    cross_check: bool = False
    out_report: str | None = None
    out_csv: str | None = None
    cache_dir: str | None = None
    schema_version: int = 1

    def to_experiment_spec(self) -> ExperimentSpec:
        names = _SPEC_FIELDS[self.experiment]
        spec_x = self.specs[names[0]]
        spec_y = self.specs[names[1]] if len(names) > 1 else None
        return ExperimentSpec(
            operator=self.experiment,
            spec_x=spec_x,
            spec_y=spec_y,
            d=self.d,
            s=self.s,
            window=self.window,
            epsilon=self.epsilon,
            checkpoint_count=self.checkpoints,
            tolerance=self.tol,
            eval_point=self.eval_point,
            targets=self.targets,
            cross_check=self.cross_check,
        )

    def to_json_dict(self) -> dict:
        out: dict = {"schema_version": self.schema_version, "experiment": self.experiment}
        for name, spec in self.specs.items():
            out[name] = ({"rational": [spec.p, spec.q]} if spec.is_rational
                         else {"irrational": spec.name})
        if self.experiment == "lagrange1d":
            out["d"] = self.d
        if self.experiment.startswith("shepard"):
            out["s"] = self.s
        out["window"] = self.window
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        out["checkpoints"] = self.checkpoints
        out["tol"] = self.tol
        if self.targets is not None:
            out["targets"] = [list(t) for t in self.targets]
        if self.eval_point is not None:
            out["eval_point"] = list(self.eval_point)
        if self.cross_check:
            out["cross_check"] = True
        out_paths = {}
        if self.out_report:
            out_paths["report"] = self.out_report
        if self.out_csv:
            out_paths["csv"] = self.out_csv
        if out_paths:
            out["out"] = out_paths
        if self.cache_dir:
            out["cache_dir"] = self.cache_dir
        return out


def _parse_point(raw, name: str, errors: list[str]) -> PointSpec | None:
    if not isinstance(raw, dict) or len(raw) != 1:
        errors.append(f"{name}: expected {{\"rational\": [p, q]}} or {{\"irrational\": name}}")
        return None
    if "rational" in raw:
        pq = raw["rational"]
        if (not isinstance(pq, list) or len(pq) != 2
                or not all(isinstance(v, int) for v in pq)):
            errors.append(f"{name}.rational: expected a pair of integers")
            return None
        p, q = pq
        if q == 0:
            errors.append(f"{name}.rational: q must be nonzero")
            return None
        try:
            return PointSpec.rational(p, q)
        except ValueError as exc:
            errors.append(f"{name}.rational: {exc}")
            return None
    if "irrational" in raw:
        nm = raw["irrational"]
        if nm not in IRRATIONAL_VALUES:
            presets = ", ".join(sorted(IRRATIONAL_VALUES))
            errors.append(f"{name}.irrational: unknown preset {nm!r}; presets: {presets}")
            return None
        return PointSpec.irrational(nm)
    errors.append(f"{name}: must contain 'rational' or 'irrational'")
    return None


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a JSON experiment config; raise ConfigError listing
    every violation found."""
    errors: list[str] = []
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"invalid JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])
    for key in sorted(set(raw) - _KNOWN_FIELDS):
        errors.append(f"unknown field {key!r}")
    version = raw.get("schema_version")
    if version != 1:
        errors.append("schema_version must be 1")
    experiment = raw.get("experiment")
    if experiment not in _OPERATORS:
        errors.append(f"experiment must be one of {', '.join(_OPERATORS)}")
        raise ConfigError(errors)
    specs: dict[str, PointSpec] = {}
    for name in _SPEC_FIELDS[experiment]:
        if name not in raw:
            errors.append(f"missing required point spec {name!r}")
        else:
            spec = _parse_point(raw[name], name, errors)
            if spec is not None:
                specs[name] = spec
    for name in ("theta", "gamma", "x0", "y0"):
        if name in raw and name not in _SPEC_FIELDS[experiment]:
            errors.append(f"field {name!r} does not apply to {experiment}")
    window = raw.get("window")
    if not isinstance(window, int) or window < 2:
        errors.append("window must be an integer >= 2")
        window = 2
    s = raw.get("s", 2.0)
    if not isinstance(s, (int, float)) or s < 1:
        errors.append("s must be >= 1")
        s = 2.0
    d = raw.get("d", 1.0)
    if not isinstance(d, (int, float)):
        errors.append("d must be a number")
        d = 1.0
    epsilon = raw.get("epsilon")
    if epsilon is not None and (not isinstance(epsilon, (int, float)) or epsilon <= 0):
        errors.append("epsilon must be positive")
        epsilon = None
    checkpoints = raw.get("checkpoints", 16)
    if not isinstance(checkpoints, int) or checkpoints < 2:
        errors.append("checkpoints must be an integer >= 2")
        checkpoints = 16
    tol = raw.get("tol", 0.03)
    if not isinstance(tol, (int, float)) or tol <= 0:
        errors.append("tol must be positive")
        tol = 0.03
    targets = raw.get("targets")
    if targets is not None:
        good = (isinstance(targets, list) and targets
                and all(isinstance(t, list) and len(t) == 2
                        and all(isinstance(v, (int, float)) for v in t) for t in targets))
        if good:
            targets = [(float(a), float(b)) for a, b in targets]
        else:
            errors.append("targets must be a nonempty list of [lo, hi] pairs")
            targets = None
    eval_point = raw.get("eval_point")
    if eval_point is not None:
        if (isinstance(eval_point, list) and len(eval_point) == 2
                and all(isinstance(v, (int, float)) for v in eval_point)):
            eval_point = (float(eval_point[0]), float(eval_point[1]))
        else:
            errors.append("eval_point must be a pair [x, y]")
            eval_point = None
    cross_check = raw.get("cross_check", False)
    if not isinstance(cross_check, bool):
        errors.append("cross_check must be a boolean")
        cross_check = False
    out = raw.get("out", {})
    if not isinstance(out, dict) or set(out) - {"report", "csv"}:
        errors.append("out must be an object with keys 'report' and/or 'csv'")
        out = {}
    cache_dir = raw.get("cache_dir")
    if cache_dir is not None and not isinstance(cache_dir, str):
        errors.append("cache_dir must be a string path")
        cache_dir = None
    if errors:
        raise ConfigError(errors)
    return ExperimentConfig(
        experiment=experiment,
        specs=specs,
        d=float(d),
        s=float(s),
        window=window,
        epsilon=None if epsilon is None else float(epsilon),
        checkpoints=checkpoints,
        tol=float(tol),
        targets=targets,
        eval_point=eval_point,
        cross_check=cross_check,
        out_report=out.get("report"),
        out_csv=out.get("csv"),
        cache_dir=cache_dir,
    )


# ---------------------------------------------------------------------------
# emission


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _atomic_write(path: str | Path, data: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_csv(win: SeqWindow, path: str | Path) -> None:
    """Write the window values: `n,value` rows, or `n,m,value` row-major."""
    lines: list[str] = []
    if win.dim == 1:
        lines.append("n,value")
        for i, v in enumerate(win.values, start=1):
            lines.append(f"{i},{_fmt(v)}")
    else:
        lines.append("n,m,value")
        if win.factors is not None:
            u, v = win.factors
            for n in range(1, win.n_max + 1):
                row = u[n - 1] * v
                for m in range(1, win.n_max + 1):
                    lines.append(f"{n},{m},{_fmt(row[m - 1])}")
        else:
            for n in range(1, win.n_max + 1):
                for m in range(1, win.n_max + 1):
                    lines.append(f"{n},{m},{_fmt(win.values[n - 1, m - 1])}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _target_to_json(report: IndexReport) -> dict:
    t = report.target
    if t.kind == "value":
        tgt: dict = {"value": t.value}
    elif t.kind == "set":
        tgt = {"intervals": [list(iv) for iv in t.intervals]}
    else:
        tgt = {"kind": t.kind}
    entry = {
        "target": tgt,
        "epsilon": report.epsilon,
        "estimate": {
            "checkpoints": list(report.estimate.checkpoints),
            "ratios": list(report.estimate.ratios),
            "lower": report.estimate.lower_est,
            "upper": report.estimate.upper_est,
        },
        "predicted": report.predicted,
        "verdict": report.verdict,
    }
    if report.predicted_is_lower_bound:
        entry["predicted_is_lower_bound"] = True
    if "label" in report.notes:
        entry["label"] = report.notes["label"]
    return entry


@dataclass
class RunReport:
    """Everything one experiment run produced, ready for serialization."""

    config: dict
    targets: list[dict]
    residual_mass: float | None
    runtime_ms: float
    version: str = __version__
    all_pass: bool = field(init=False)

    def __post_init__(self):
        self.all_pass = all(t.get("verdict") == "pass" for t in self.targets)

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "targets": self.targets,
            "residual_mass": self.residual_mass,
            "runtime_ms": round(self.runtime_ms, 3),
            "version": self.version,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def build_run_report(config: ExperimentConfig, result: ExperimentResult,
                     runtime_ms: float) -> RunReport:
    return RunReport(
        config=config.to_json_dict(),
        targets=[_target_to_json(r) for r in result.reports],
        residual_mass=result.residual_mass,
        runtime_ms=runtime_ms,
    )


def emit_report(report: RunReport, path: str | Path) -> None:
    _atomic_write(path, report.to_json())


# ---------------------------------------------------------------------------
# sequence cache


class SequenceCache:
    """Content-addressed store for computed operator windows.

    The key hashes the operator, its point specs and parameters, the window
    size, and the tool version, so stale entries never match.
    """

    def __init__(self, directory: str | Path):
        self.dir = Path(directory)

    def key(self, spec: ExperimentSpec) -> str:
        payload = {
            "operator": spec.operator,
            "spec_x": spec.spec_x.label(),
            "spec_y": spec.spec_y.label() if spec.spec_y else None,
            "d": spec.d,
            "s": spec.s,
            "window": spec.window,
            "eval_point": list(spec.eval_point) if spec.eval_point else None,
            "version": __version__,
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:24]

    def path_for(self, spec: ExperimentSpec) -> Path:
        return self.dir / f"{self.key(spec)}.npz"

    def load(self, spec: ExperimentSpec) -> SeqWindow | None:
        path = self.path_for(spec)
        if not path.exists():
            return None
        with np.load(path) as data:
            if "u" in data:
                return SeqWindow.from_product(data["u"], data["v"])
            values = data["values"]
        return (SeqWindow.from_values_1d(values) if values.ndim == 1
                else SeqWindow.from_matrix(values))

    def store(self, spec: ExperimentSpec, win: SeqWindow) -> Path:
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(spec)
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                if win.factors is not None:
                    np.savez(fh, u=win.factors[0], v=win.factors[1])
                else:
                    np.savez(fh, values=win.values)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def entries(self) -> list[Path]:
        if not self.dir.exists():
            return []
        return sorted(self.dir.glob("*.npz"))

    def clear(self) -> int:
        n = 0
        for path in self.entries():
            path.unlink()
            n += 1
        return n
