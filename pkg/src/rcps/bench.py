"""Benchmark harness: repeated estimation trials and NRMSE-vs-N curves.

One elementary trial draws K input realizations, pushes them through a
fixed unitary, simulates N measurements per realization, estimates the
two moments of the outcome-0 probability and solves for (phi3, phi4).
An experiment repeats this ``trials`` times for every (K, N) cell of a
grid and reports, per cell and per parameter, the normalized root mean
square error

    NRMSE = sqrt(mean((estimate - truth)^2)) / |truth|

over the non-failed trials.  Trial streams are keyed by
(master_seed, K, N, trial_index), so cells are independent, trials are
parallelizable in principle, and a rerun of the same configuration is
byte-identical.

Two degenerate modes isolate error sources: ``exact_prob`` removes shot
noise (each segment reports its true P0, as if N were infinite), and
``analytic_moments`` bypasses sampling entirely (the estimator receives
the exact moments, so the pipeline reduces to a round trip).

Configurations can be loaded from a flat key-value text file whose
first line is the version header ``rcps-config v1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .estimator import SignChoice, blind_estimate, select_candidate
from .measurement import estimate_moments, run_multiple_preparation
from .moments import expected_p0, expected_p0_squared, input_moments
from .process import UnitaryParams, p0_closed_form
from .rng import derive_rng
from .states import QubitInputDistribution, sample_input_realizations

__all__ = [
    "ExperimentConfig",
    "TrialResult",
    "CellNrmse",
    "NrmseReport",
    "ConfigError",
    "CONFIG_HEADER",
    "run_trial",
    "nrmse",
    "run_experiment",
    "report_to_csv",
    "parse_config_text",
    "load_config_file",
    "serialize_config",
]

CONFIG_HEADER = "rcps-config v1"

# A phi3 estimate this close to {0, +-pi} is in the regime where the
# phi4 equation degenerates; the CLI surfaces a warning.
DEGENERATE_PHI3_MARGIN = 1e-2

_SELECTION_MODES = ("residual", "oracle")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one benchmark experiment."""

    truth: UnitaryParams
    dist: QubitInputDistribution
    k_values: tuple[int, ...]
    n_values: tuple[int, ...]
    trials: int
    master_seed: int
    selection_mode: str = "residual"
    bias_correct: bool = False
    exact_prob: bool = False
    analytic_moments: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ValueError("k_values must be non-empty with entries >= 1")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be non-empty with entries >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit non-negative integer")
        if self.selection_mode not in _SELECTION_MODES:
            raise ValueError(f"selection_mode must be one of {_SELECTION_MODES}")


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one elementary trial (estimates absent on failure)."""

    k_draws: int
    n_shots: int
    trial_index: int
    phi3_hat: float | None
    phi4_hat: float | None
    signs: SignChoice | None
    failed: bool
    reason: str | None = None

    def __post_init__(self):
        if self.failed and (self.phi3_hat is not None or self.phi4_hat is not None):
            raise ValueError("failed trial must not carry estimates")


@dataclass(frozen=True)
class CellNrmse:
    """NRMSE of both parameters for one (K, N) cell."""

    k_draws: int
    n_shots: int
    nrmse_phi3: float
    nrmse_phi4: float
    n_failed: int
    n_degenerate_phi3: int = 0


@dataclass(frozen=True)
class NrmseReport:
    cells: tuple[CellNrmse, ...]
    trials: int

    def any_cell_all_failed(self) -> bool:
        return any(c.n_failed >= self.trials for c in self.cells)


def _trial_moments(cfg: ExperimentConfig, k_draws: int, n_shots: int,
                   rng: np.random.Generator) -> tuple[float, float]:
    if cfg.analytic_moments:
        mom = input_moments(cfg.dist)
        return (expected_p0(cfg.truth.phi3, cfg.truth.phi4, mom),
                expected_p0_squared(cfg.truth.phi3, cfg.truth.phi4, mom))
    if cfg.exact_prob:
        # infinite-N limit: each segment reports its true probability,
        # leaving only the K-draw sampling error (no shot noise, hence
        # nothing to bias-correct)
        r, phi = sample_input_realizations(cfg.dist, k_draws, rng)
        p0 = p0_closed_form(cfg.truth.phi3, cfg.truth.phi4, r, phi)
        return float(np.mean(p0)), float(np.mean(p0 ** 2))
    record = run_multiple_preparation(
        cfg.dist, cfg.truth, k_draws, n_shots, rng)
    est = estimate_moments(record, bias_correct=cfg.bias_correct)
    return est.m1_hat, est.m2_hat


def run_trial(cfg: ExperimentConfig, k_draws: int, n_shots: int,
              trial_index: int) -> TrialResult:
    """Run one elementary trial with its own derived random stream.

    The stream is keyed by (master_seed, K, N, trial_index), so the same
    arguments always reproduce the same result bit for bit.  Estimation
    failure is recorded in the result rather than raised.
    """
    rng = derive_rng(cfg.master_seed, k_draws, n_shots, trial_index)
    m1, m2 = _trial_moments(cfg, k_draws, n_shots, rng)
    # guard against corrected estimates grazing the domain boundary
    m1 = min(max(m1, 0.0), 1.0)
    m2 = min(max(m2, 0.0), 1.0)
    result = blind_estimate(m1, m2, cfg.dist)
    if not result:
        reason = "; ".join(result.failures) or "no candidates"
        return TrialResult(k_draws=k_draws, n_shots=n_shots,
                           trial_index=trial_index, phi3_hat=None,
                           phi4_hat=None, signs=None, failed=True,
                           reason=reason)
    chosen = select_candidate(
        result.candidates, mode=cfg.selection_mode,
        truth=(cfg.truth.phi3, cfg.truth.phi4))
    return TrialResult(k_draws=k_draws, n_shots=n_shots,
                       trial_index=trial_index, phi3_hat=chosen.phi3_hat,
                       phi4_hat=chosen.phi4_hat, signs=chosen.signs,
                       failed=False)


def nrmse(estimates, truth: float) -> float:
    """Root mean square error of ``estimates`` divided by |truth|."""
    values = np.asarray(estimates, dtype=np.float64)
    if values.size == 0:
        raise ValueError("nrmse needs at least one estimate")
    if truth == 0.0:
        raise ValueError("NRMSE undefined at zero truth")
    return float(np.sqrt(np.mean((values - truth) ** 2)) / abs(truth))


def run_experiment(cfg: ExperimentConfig) -> NrmseReport:
    """Run ``cfg.trials`` trials for every (K, N) cell of the grid.

    Cells are visited in configuration order and trials in index order,
    so the aggregate is deterministic.  A cell whose trials all failed
    reports NaN for both parameters.
    """
    cells = []
    for k_draws in cfg.k_values:
        for n_shots in cfg.n_values:
            phi3_hats = []
            phi4_hats = []
            n_failed = 0
            n_degenerate = 0
            for t in range(cfg.trials):
                result = run_trial(cfg, k_draws, n_shots, t)
                if result.failed:
                    n_failed += 1
                    continue
                phi3_hats.append(result.phi3_hat)
                phi4_hats.append(result.phi4_hat)
                if (abs(result.phi3_hat) < DEGENERATE_PHI3_MARGIN
                        or abs(abs(result.phi3_hat) - math.pi) < DEGENERATE_PHI3_MARGIN):
                    n_degenerate += 1
            if phi3_hats:
                cell = CellNrmse(
                    k_draws=k_draws, n_shots=n_shots,
                    nrmse_phi3=nrmse(phi3_hats, cfg.truth.phi3),
                    nrmse_phi4=nrmse(phi4_hats, cfg.truth.phi4),
                    n_failed=n_failed, n_degenerate_phi3=n_degenerate)
            else:
                cell = CellNrmse(k_draws=k_draws, n_shots=n_shots,
                                 nrmse_phi3=math.nan, nrmse_phi4=math.nan,
                                 n_failed=n_failed)
            cells.append(cell)
    return NrmseReport(cells=tuple(cells), trials=cfg.trials)


def report_to_csv(report: NrmseReport) -> str:
    """CSV rows (K, N, param, nrmse, n_failed, trials), 17 digits."""
    lines = ["K,N,param,nrmse,n_failed,trials"]
    for cell in report.cells:
        for param, value in (("phi3", cell.nrmse_phi3), ("phi4", cell.nrmse_phi4)):
            text = "nan" if math.isnan(value) else f"{value:.17g}"
            lines.append(f"{cell.k_draws},{cell.n_shots},{param},{text},"
                         f"{cell.n_failed},{report.trials}")
    return "\n".join(lines) + "\n"


class ConfigError(ValueError):
    """Malformed configuration file or option values."""


_DEFAULT_TRUTH = UnitaryParams(phi1=math.pi / 10, phi2=2 * math.pi / 10,
                               phi3=3 * math.pi / 10, phi4=4 * math.pi / 10)
_DEFAULT_DIST = QubitInputDistribution(r_min=0.0, r_max=1.0,
                                       phi_bound=math.pi / 4)

_CONFIG_DEFAULTS: dict[str, str] = {
    "phi1": repr(_DEFAULT_TRUTH.phi1),
    "phi2": repr(_DEFAULT_TRUTH.phi2),
    "phi3": repr(_DEFAULT_TRUTH.phi3),
    "phi4": repr(_DEFAULT_TRUTH.phi4),
    "r_min": "0.0",
    "r_max": "1.0",
    "phi_bound": repr(math.pi / 4),
    "k_values": "1000",
    "n_values": "1000",
    "trials": "100",
    "master_seed": "12345",
    "selection": "residual",
    "bias_correct": "false",
    "exact_prob": "false",
    "analytic_moments": "false",
}


def _parse_bool(key: str, text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ConfigError(f"{key} must be 'true' or 'false', got {text!r}")


def _parse_int_list(key: str, text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"{key} must be comma-separated integers: {exc}") from exc


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse the flat key-value configuration format.

    The first non-empty line must be ``rcps-config v1``; remaining lines
    are ``key value`` pairs (``#`` starts a comment).  Unknown keys are
    rejected.  Missing keys take the documented defaults.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != CONFIG_HEADER:
        raise ConfigError(f"missing version header line {CONFIG_HEADER!r}")
    values = dict(_CONFIG_DEFAULTS)
    for ln in lines[1:]:
        parts = ln.split(None, 1)
        if len(parts) != 2:
            raise ConfigError(f"malformed config line: {ln!r}")
        key, val = parts[0], parts[1].strip()
        if key not in values:
            raise ConfigError(f"unknown config key: {key!r}")
        values[key] = val
    return config_from_values(values)


def config_from_values(values: dict[str, str]) -> ExperimentConfig:
    """Build an ExperimentConfig from string values (all keys present)."""
    try:
        truth = UnitaryParams(phi1=float(values["phi1"]),
                              phi2=float(values["phi2"]),
                              phi3=float(values["phi3"]),
                              phi4=float(values["phi4"]))
        dist = QubitInputDistribution(r_min=float(values["r_min"]),
                                      r_max=float(values["r_max"]),
                                      phi_bound=float(values["phi_bound"]))
        return ExperimentConfig(
            truth=truth,
            dist=dist,
            k_values=_parse_int_list("k_values", values["k_values"]),
            n_values=_parse_int_list("n_values", values["n_values"]),
            trials=int(values["trials"]),
            master_seed=int(values["master_seed"]),
            selection_mode=values["selection"],
            bias_correct=_parse_bool("bias_correct", values["bias_correct"]),
            exact_prob=_parse_bool("exact_prob", values["exact_prob"]),
            analytic_moments=_parse_bool("analytic_moments",
                                         values["analytic_moments"]),
        )
    except ConfigError:
        raise
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config_file(path) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc


def default_config() -> ExperimentConfig:
    return config_from_values(dict(_CONFIG_DEFAULTS))


def serialize_config(cfg: ExperimentConfig) -> str:
    """Render a config back to the versioned text format."""
    lines = [
        CONFIG_HEADER,
        f"phi1 {cfg.truth.phi1!r}",
        f"phi2 {cfg.truth.phi2!r}",
        f"phi3 {cfg.truth.phi3!r}",
        f"phi4 {cfg.truth.phi4!r}",
        f"r_min {cfg.dist.r_min!r}",
        f"r_max {cfg.dist.r_max!r}",
        f"phi_bound {cfg.dist.phi_bound!r}",
        "k_values " + ",".join(str(k) for k in cfg.k_values),
        "n_values " + ",".join(str(n) for n in cfg.n_values),
        f"trials {cfg.trials}",
        f"master_seed {cfg.master_seed}",
        f"selection {cfg.selection_mode}",
        f"bias_correct {'true' if cfg.bias_correct else 'false'}",
        f"exact_prob {'true' if cfg.exact_prob else 'false'}",
        f"analytic_moments {'true' if cfg.analytic_moments else 'false'}",
    ]
    return "\n".join(lines) + "\n"
