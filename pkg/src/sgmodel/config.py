"""Config-file driven runs.

One canonical flat key-value format with sections (INI syntax); the
shipped configs/brownian.cfg documents every key.  A run is a pure
function of (config file, seed): the sha256 of the config bytes is
embedded in every output so stale artifacts are detectable.
"""
from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import AccuracyTarget
from .errors import ConfigError, InfeasibleTargetError
from .karhunen_loeve import (
    KernelSpec,
    brownian_kernel,
    custom_kernel,
    nystrom_eigensystem,
    ou_kernel,
)
from .orlicz import (
    OrliczSpec,
    check_power_convexity,
    numeric_table,
    piecewise_gamma,
    power_gamma,
    validate_spec,
)
from .subgaussian import SubGaussianSource, gaussian, rademacher, uniform_symmetric

ROUTES = ("theorem9", "theorem10", "theorem11", "series7", "series8")
MODES = ("consistent", "paper-literal")


@dataclass(frozen=True)
class RunConfig:
    spec: OrliczSpec
    source: SubGaussianSource
    target: AccuracyTarget
    route: str
    kernel: KernelSpec | None
    series_manifest: Path | None
    n_nodes: int
    panels: int
    safety: float
    n_paths: int
    seed: int
    mode: str
    modes: int
    config_hash: str
    path: Path


def config_hash(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _get(section, key, cast, default=None, where=""):
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"missing key {key!r} in section [{where}]")
    try:
        return cast(section[key])
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r} in section [{where}]: {exc}") from exc


def _parse_orlicz(parser) -> OrliczSpec:
    if "orlicz" not in parser:
        raise ConfigError("missing [orlicz] section")
    sec = parser["orlicz"]
    family = _get(sec, "family", str, where="orlicz").strip().lower()
    if family == "power":
        return power_gamma(_get(sec, "gamma", float, where="orlicz"))
    if family == "piecewise":
        return piecewise_gamma(_get(sec, "gamma", float, where="orlicz"))
    if family == "table":
        table_path = Path(_get(sec, "table_path", str, where="orlicz"))
        rows = np.genfromtxt(table_path, delimiter=",", names=True)
        return numeric_table(np.atleast_1d(rows["x"]), np.atleast_1d(rows["phi"]))
    raise ConfigError(f"unknown orlicz family {family!r}")


def _parse_source(parser) -> SubGaussianSource:
    if "source" not in parser:
        raise ConfigError("missing [source] section")
    sec = parser["source"]
    kind = _get(sec, "kind", str, where="source").strip().lower()
    if kind == "gaussian":
        return gaussian(_get(sec, "sigma", float, default=1.0, where="source"))
    if kind == "rademacher":
        return rademacher()
    if kind == "uniform":
        return uniform_symmetric(_get(sec, "b", float, where="source"))
    raise ConfigError(f"unknown source kind {kind!r}")


_EXPR_NAMES = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "minimum": np.minimum,
    "maximum": np.maximum,
    "pi": np.pi,
}


def _parse_kernel(parser, T: float) -> KernelSpec | None:
    if "kernel" not in parser:
        return None
    sec = parser["kernel"]
    kind = _get(sec, "kernel", str, where="kernel").strip().lower()
    if kind == "brownian":
        return brownian_kernel(T)
    if kind == "ou":
        return ou_kernel(_get(sec, "theta", float, where="kernel"), T)
    if kind == "custom":
        expr = _get(sec, "expression", str, where="kernel")
        code = compile(expr, "<kernel expression>", "eval")

        def B(t, s, _code=code):
            return eval(_code, {"__builtins__": {}}, {**_EXPR_NAMES, "t": t, "s": s})

        return custom_kernel(B, T)
    raise ConfigError(f"unknown kernel {kind!r}")


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        read = parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not read:
        raise ConfigError(f"cannot read config file {path}")

    if "target" not in parser:
        raise ConfigError("missing [target] section")
    tsec = parser["target"]
    delta = _get(tsec, "delta", float, where="target")
    if delta <= 0:
        raise InfeasibleTargetError(
            "accuracy delta must be positive; a zero-accuracy target is unachievable"
        )
    target = AccuracyTarget(
        p=_get(tsec, "p", float, where="target"),
        delta=delta,
        alpha=_get(tsec, "alpha", float, where="target"),
        T=_get(tsec, "T", float, where="target"),
    )

    if "model" not in parser:
        raise ConfigError("missing [model] section")
    route = _get(parser["model"], "route", str, where="model").strip()
    if route not in ROUTES:
        raise ConfigError(f"route must be one of {ROUTES}, got {route!r}")

    spec = _parse_orlicz(parser)
    source = _parse_source(parser)
    kernel = _parse_kernel(parser, target.T)
    series_manifest = None
    if "series" in parser:
        series_manifest = path.parent / _get(parser["series"], "manifest", str, where="series")

    num = parser["numerics"] if "numerics" in parser else {}
    ker = parser["kernel"] if "kernel" in parser else {}

    def num_or_kernel(key, cast, default):
        # the kernel block may carry its numeric keys; a single source of
        # truth is enforced when both sections define one
        in_num, in_ker = key in num, key in ker
        if in_num and in_ker:
            raise ConfigError(f"{key!r} set in both [numerics] and [kernel]")
        if in_num:
            return _get(num, key, cast, where="numerics")
        if in_ker:
            return _get(ker, key, cast, where="kernel")
        return default

    mode = str(num_or_kernel("mode", str, "consistent")).strip()
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")

    return RunConfig(
        spec=spec,
        source=source,
        target=target,
        route=route,
        kernel=kernel,
        series_manifest=series_manifest,
        n_nodes=int(num_or_kernel("n_nodes", int, 256)),
        panels=int(num_or_kernel("panels", int, 64)),
        safety=float(num_or_kernel("safety", float, 2.0)),
        n_paths=int(num_or_kernel("n_paths", int, 20_000)),
        seed=int(num_or_kernel("seed", int, 0)),
        mode=mode,
        modes=int(num_or_kernel("modes", int, 20)),
        config_hash=config_hash(path),
        path=path,
    )


def validate_config(cfg: RunConfig) -> list[str]:
    """Pre-computation diagnostics; empty list means runnable."""
    problems = validate_spec(cfg.spec)

    if cfg.route in ("theorem11", "series8"):
        if cfg.spec.family != "power" or not (cfg.spec.gamma and cfg.spec.gamma < 2.0):
            problems.append(
                f"route {cfg.route} requires the power family with gamma < 2, "
                f"got family={cfg.spec.family!r}"
            )
        elif not check_power_convexity(cfg.spec, cfg.spec.gamma):
            problems.append("phi(|x|^{1/gamma}) is not convex")
    else:
        if not check_power_convexity(cfg.spec, 2.0):
            problems.append("phi(|x|^{1/2}) is not convex, s = 2 routes unavailable")

    if cfg.route.startswith("series"):
        if cfg.series_manifest is None:
            problems.append(f"route {cfg.route} requires a [series] manifest")
    else:
        if cfg.kernel is None:
            problems.append(f"route {cfg.route} requires a [kernel] section")
        else:
            try:
                nystrom_eigensystem(cfg.kernel, n_nodes=32, M=1)
            except Exception as exc:
                problems.append(f"kernel probe failed: {exc}")

    return problems
