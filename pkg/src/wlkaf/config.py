"""Experiment configuration files: strict parsing and exact round-trips.

Configs are YAML mappings with one section per filter arm::

    scenario: soft_circular
    trials: 20
    samples: 3000
    snr_db: 15.0
    seed: 1234
    novelty: {delta1: 0.15, delta2: 0.2}
    arms:
      gcklms:
        algorithm: gcklms
        mu: 0.14285714285714285
        kernel:
          k_rr: {kind: gaussian, gamma: 6.5}
          k_jj: {kind: gaussian, gamma: 5.5}
          k_rj: {kind: zero}
          k_jr: {kind: zero}

A kernel is either the four-sub-kernel mapping above or one closed form,
``{kind: complex_gaussian, gamma: ...}`` / ``{kind: real_gaussian,
gamma: ...}``, for the baselines whose kernels are not composed from
sub-kernels.  Unknown keys anywhere are errors: a silently ignored
hyperparameter would invalidate an experiment.  ``trials``, ``samples``,
``snr_db``, ``seed`` and ``novelty`` may be omitted and fall back to the
scenario's desk-scale defaults (omitting ``novelty`` enables the standard
thresholds on channel scenarios; ``novelty: null`` disables it).
"""

from __future__ import annotations

import math
from pathlib import Path

import yaml

from .errors import ConfigError
from .filters import ALGORITHMS, NoveltyParams
from .harness import SCENARIOS, ArmConfig, ExperimentConfig
from .kernels import DirectKernel, KernelSpec, RealSubKernel

__all__ = [
    "load_config",
    "from_mapping",
    "to_mapping",
    "serialize_config",
    "save_config",
    "apply_overrides",
    "scale_defaults",
]

_SUB_KINDS = ("gaussian", "zero", "scaled_gaussian")
_DIRECT_KINDS = ("complex_gaussian", "real_gaussian")

# Desk-scale (trials, samples) defaults and the original full-scale counts.
_DESK_SCALE = {
    "soft_circular": (20, 3000),
    "soft_noncircular": (20, 3000),
    "strong_circular": (20, 3000),
    "strong_noncircular": (20, 3000),
    "soft_binary": (20, 4000),
    "random_process": (20, 10000),
}
_FULL_SCALE = {
    "soft_circular": (100, 5000),
    "soft_noncircular": (100, 5000),
    "strong_circular": (100, 5000),
    "strong_noncircular": (100, 5000),
    "soft_binary": (100, 10000),
    "random_process": (100, 10000),
}

_DEFAULT_SNR_DB = 15.0
_DEFAULT_SEED = 1234
_DEFAULT_NOVELTY = {"delta1": 0.15, "delta2": 0.2}


def scale_defaults(scenario: str, full: bool = False) -> tuple:
    """(trials, samples) for a scenario at desk or full scale."""
    table = _FULL_SCALE if full else _DESK_SCALE
    if scenario not in table:
        raise ConfigError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    return table[scenario]


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _expect_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected a mapping, got {type(value).__name__}")
    return value


def _check_keys(mapping: dict, allowed, path: str):
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        _fail(path, f"unknown key(s) {', '.join(map(repr, unknown))}; allowed: {', '.join(allowed)}")


def _number(value, path: str, *, positive: bool = False, allow_inf: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    v = float(value)
    if math.isnan(v):
        _fail(path, "must not be NaN")
    if math.isinf(v) and not (allow_inf and v > 0):
        _fail(path, "must be finite")
    if positive and not v > 0:
        _fail(path, f"must be > 0, got {value!r}")
    return v


def _integer(value, path: str, *, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    return value


def _parse_sub_kernel(value, path: str) -> RealSubKernel:
    m = _expect_mapping(value, path)
    _check_keys(m, ("kind", "gamma", "scale"), path)
    kind = m.get("kind")
    if kind not in _SUB_KINDS:
        _fail(f"{path}.kind", f"expected one of {_SUB_KINDS}, got {kind!r}")
    if kind == "zero":
        _check_keys(m, ("kind",), path)
        return RealSubKernel.zero()
    gamma = _number(m.get("gamma"), f"{path}.gamma", positive=True)
    if kind == "gaussian":
        _check_keys(m, ("kind", "gamma"), path)
        return RealSubKernel.gaussian(gamma)
    scale = _number(m.get("scale", 1.0), f"{path}.scale")
    return RealSubKernel.scaled(gamma, scale)


def _parse_kernel(value, path: str):
    m = _expect_mapping(value, path)
    if "kind" in m:
        _check_keys(m, ("kind", "gamma"), path)
        kind = m["kind"]
        if kind not in _DIRECT_KINDS:
            _fail(
                f"{path}.kind",
                f"expected one of {_DIRECT_KINDS} (or the four-sub-kernel form), got {kind!r}",
            )
        return DirectKernel(kind, _number(m.get("gamma"), f"{path}.gamma", positive=True))
    parts = ("k_rr", "k_jj", "k_rj", "k_jr")
    _check_keys(m, parts, path)
    missing = [p for p in parts if p not in m]
    if missing:
        _fail(path, f"missing sub-kernel(s): {', '.join(missing)}")
    return KernelSpec(**{p: _parse_sub_kernel(m[p], f"{path}.{p}") for p in parts})


def _parse_arm(name, value, path: str) -> ArmConfig:
    if not isinstance(name, str) or not name:
        _fail(path, f"arm names must be nonempty strings, got {name!r}")
    m = _expect_mapping(value, path)
    _check_keys(m, ("algorithm", "mu", "kernel"), path)
    algorithm = m.get("algorithm")
    if algorithm not in ALGORITHMS:
        _fail(f"{path}.algorithm", f"expected one of {ALGORITHMS}, got {algorithm!r}")
    mu = _number(m.get("mu"), f"{path}.mu", positive=True)
    if "kernel" not in m:
        _fail(f"{path}.kernel", "required")
    kernel = _parse_kernel(m["kernel"], f"{path}.kernel")
    try:
        return ArmConfig(name=name, algorithm=algorithm, mu=mu, kernel=kernel)
    except ConfigError as exc:
        _fail(path, str(exc))


def _parse_novelty(value, path: str):
    if value is None:
        return None
    m = _expect_mapping(value, path)
    _check_keys(m, ("delta1", "delta2"), path)
    return NoveltyParams(
        delta1=_number(m.get("delta1"), f"{path}.delta1", positive=True),
        delta2=_number(m.get("delta2"), f"{path}.delta2", positive=True),
    )


def from_mapping(mapping: dict) -> ExperimentConfig:
    """Validate a plain mapping (parsed YAML) into an ExperimentConfig."""
    m = _expect_mapping(mapping, "config")
    _check_keys(m, ("scenario", "trials", "samples", "snr_db", "seed", "novelty", "arms"), "config")
    scenario = m.get("scenario")
    if scenario not in SCENARIOS:
        _fail("scenario", f"expected one of {SCENARIOS}, got {scenario!r}")
    desk_trials, desk_samples = scale_defaults(scenario)
    trials = _integer(m.get("trials", desk_trials), "trials", minimum=1)
    samples = _integer(m.get("samples", desk_samples), "samples", minimum=1)
    snr_db = _number(m.get("snr_db", _DEFAULT_SNR_DB), "snr_db", allow_inf=True)
    seed = _integer(m.get("seed", _DEFAULT_SEED), "seed", minimum=0)
    if "novelty" in m:
        novelty = _parse_novelty(m["novelty"], "novelty")
    elif scenario == "random_process":
        novelty = None
    else:
        novelty = _parse_novelty(_DEFAULT_NOVELTY, "novelty")
    arms_map = _expect_mapping(m.get("arms"), "arms")
    if not arms_map:
        _fail("arms", "need at least one arm section")
    arms = tuple(_parse_arm(name, val, f"arms.{name}") for name, val in arms_map.items())
    return ExperimentConfig(
        scenario=scenario,
        arms=arms,
        trials=trials,
        samples_per_trial=samples,
        snr_db=snr_db,
        novelty=novelty,
        base_seed=seed,
    )


def _sub_kernel_mapping(sub: RealSubKernel) -> dict:
    if sub.kind == "zero":
        return {"kind": "zero"}
    if sub.kind == "gaussian":
        return {"kind": "gaussian", "gamma": float(sub.gamma)}
    return {"kind": "scaled_gaussian", "gamma": float(sub.gamma), "scale": float(sub.scale)}


def _kernel_mapping(kernel) -> dict:
    if isinstance(kernel, DirectKernel):
        return {"kind": kernel.kind, "gamma": float(kernel.gamma)}
    return {part: _sub_kernel_mapping(getattr(kernel, part)) for part in ("k_rr", "k_jj", "k_rj", "k_jr")}


def to_mapping(cfg: ExperimentConfig) -> dict:
    """Plain-mapping form of a config; inverse of :func:`from_mapping`."""
    return {
        "scenario": cfg.scenario,
        "trials": int(cfg.trials),
        "samples": int(cfg.samples_per_trial),
        "snr_db": float(cfg.snr_db),
        "seed": int(cfg.base_seed),
        "novelty": None
        if cfg.novelty is None
        else {"delta1": float(cfg.novelty.delta1), "delta2": float(cfg.novelty.delta2)},
        "arms": {
            arm.name: {
                "algorithm": arm.algorithm,
                "mu": float(arm.mu),
                "kernel": _kernel_mapping(arm.kernel),
            }
            for arm in cfg.arms
        },
    }


def serialize_config(cfg: ExperimentConfig) -> str:
    """YAML text for a config; load(serialize(cfg)) == cfg exactly."""
    return yaml.safe_dump(to_mapping(cfg), sort_keys=False, default_flow_style=False)


def save_config(cfg: ExperimentConfig, path) -> None:
    Path(path).write_text(serialize_config(cfg))


def load_config(path) -> ExperimentConfig:
    """Parse and validate a config file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {p}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = f" at line {mark.line + 1}" if mark is not None else ""
        raise ConfigError(f"{p}: parse error{line}: {exc.problem}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{p}: parse error: {exc}") from exc
    return from_mapping(data)


def apply_overrides(mapping: dict, assignments) -> dict:
    """Apply ``path.to.key=value`` overrides onto a config mapping in place.

    Values are parsed as YAML scalars, so ``mu=0.2``, ``full=true`` and
    ``novelty=null`` behave as expected.  Intermediate keys must already
    exist (arm names included); a ``null`` section is promoted to an empty
    mapping so its fields can be filled in.
    """
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        raw_path, raw_value = item.split("=", 1)
        keys = [k for k in raw_path.strip().split(".") if k]
        if not keys:
            raise ConfigError(f"override {item!r} has an empty key path")
        try:
            value = yaml.safe_load(raw_value)
        except yaml.YAMLError as exc:
            raise ConfigError(f"override {item!r}: cannot parse value: {exc}") from exc
        node = mapping
        walked = []
        for key in keys[:-1]:
            walked.append(key)
            if not isinstance(node, dict):
                raise ConfigError(f"override {item!r}: {'.'.join(walked[:-1])} is not a section")
            if key not in node or node[key] is None:
                node[key] = {}
            node = node[key]
        if not isinstance(node, dict):
            raise ConfigError(f"override {item!r}: {'.'.join(walked)} is not a section")
        node[keys[-1]] = value
    return mapping
