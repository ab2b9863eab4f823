"""Randomized checks of the invariance and monotonicity properties of D_n.

Every trial draws from its own generator seeded by ``(seed, check, trial)``,
so a single failing trial can be replayed without running the others.
"""

from __future__ import annotations

import configparser
import math
import os
import time
from dataclasses import dataclass, field, fields, replace
from typing import Any, Callable, Iterable

import numpy as np

from .bipartition import Locus, all_loci, reduce
from .monotones import (
    ENUMERATION_CAP,
    d_monotone,
    d_monotone_minors,
    d_monotone_schmidt,
    linear_entropy,
    schmidt_spectrum,
)
from .states import PureState, random_state
from .transforms import (
    LocalUnitary,
    MONOTONE_TOL,
    TwoOutcomePovm,
    apply_local_unitary,
    apply_povm,
    apply_subspace_unitary,
    averaged_power,
    haar_unitary,
    povm_forefactor,
)

CHECKS = ("oracle", "lu", "subspace", "povm", "forefactor")
_CHECK_IDS = {name: i for i, name in enumerate(CHECKS)}


@dataclass(frozen=True)
class HarnessConfig:
    trials: int = 1000
    seed: int = 0
    min_qubits: int = 2
    max_qubits: int = 5
    nus: tuple[float, ...] = (0.25, 0.5, 1.0)
    tolerance: float = MONOTONE_TOL
    invariance_tolerance: float = 1e-10
    # forefactor trials need D(psi) above this
    min_d: float = 1e-6
    start: int = 0
    checks: tuple[str, ...] = CHECKS

    def __post_init__(self) -> None:
        if self.trials < 0 or self.start < 0:
            raise ValueError("trials and start must be non-negative")
        if not 2 <= self.min_qubits <= self.max_qubits:
            raise ValueError(f"need 2 <= min_qubits <= max_qubits, got {self.min_qubits}, {self.max_qubits}")
        if not self.nus or any(not 0.0 < nu <= 1.0 for nu in self.nus):
            raise ValueError(f"every nu must lie in (0, 1], got {self.nus}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}; choose from {CHECKS}")

    @classmethod
    def from_file(cls, path: str | os.PathLike, **overrides: Any) -> "HarnessConfig":
        """Read ``key = value`` lines (no section header; ``#`` comments allowed)."""
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), **overrides)

    @classmethod
    def from_text(cls, text: str, **overrides: Any) -> "HarnessConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        parser.read_string("[harness]\n" + text)
        known = {f.name: f for f in fields(cls)}
        values: dict[str, Any] = {}
        for key, raw in parser["harness"].items():
            key = key.replace("-", "_")
            if key == "nu":
                key = "nus"
            if key not in known:
                raise ValueError(f"unknown harness option {key!r}")
            values[key] = _coerce(key, raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(key: str, raw: str) -> Any:
    if key == "nus":
        return parse_float_list(raw)
    if key == "checks":
        return tuple(tok.strip() for tok in raw.split(",") if tok.strip())
    if key in ("trials", "seed", "min_qubits", "max_qubits", "start"):
        return int(raw)
    return float(raw)


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    evaluations: int = 0
    failures: int = 0
    max_error: float = 0.0
    first_counterexample: dict[str, Any] | None = None
    skipped: int = 0
    elapsed: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, error: float, failed: bool, details: Callable[[], dict[str, Any]]) -> None:
        self.evaluations += 1
        if math.isfinite(error):
            self.max_error = max(self.max_error, error)
        if failed:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = details()

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "trials": self.trials,
            "evaluations": self.evaluations,
            "failures": self.failures,
            "skipped": self.skipped,
            "max_error": self.max_error,
            "first_counterexample": self.first_counterexample,
            "extra": self.extra,
        }


@dataclass
class HarnessReport:
    config: HarnessConfig
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "ok": self.ok,
            "checks": [r.to_dict() for r in self.results],
        }


def trial_rng(seed: int, check: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, _CHECK_IDS[check], trial])


def replay_command(cfg: HarnessConfig, check: str, trial: int) -> str:
    nus = ",".join(repr(nu) for nu in cfg.nus)
    return (
        f"qubit-monotones verify --only {check} --seed {cfg.seed} --start {trial} --trials 1 "
        f"--min-qubits {cfg.min_qubits} --max-qubits {cfg.max_qubits} --nu {nus}"
    )


def _random_setup(rng: np.random.Generator, cfg: HarnessConfig) -> tuple[PureState, Locus]:
    N = int(rng.integers(cfg.min_qubits, cfg.max_qubits + 1))
    state = random_state(N, rng)
    loci = all_loci(N)
    return state, loci[int(rng.integers(len(loci)))]


def _relative_error(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(y))


def _base(cfg: HarnessConfig, check: str, trial: int, state: PureState, **kw: Any) -> dict[str, Any]:
    return {
        "check": check,
        "seed": cfg.seed,
        "trial": trial,
        "n_qubits": state.num_qubits,
        **kw,
        "command": replay_command(cfg, check, trial),
    }


def check_oracle(cfg: HarnessConfig) -> CheckResult:
    """Minor enumeration (or Gram determinant above the cap) against the Schmidt route."""
    res = CheckResult("oracle")
    enumerated = 0
    for t in range(cfg.start, cfg.start + cfg.trials):
        rng = trial_rng(cfg.seed, "oracle", t)
        N = int(rng.integers(cfg.min_qubits, cfg.max_qubits + 1))
        state = random_state(N, rng)
        res.trials += 1
        for locus in all_loci(N):
            rv = reduce(state, locus)
            d_s = d_monotone_schmidt(schmidt_spectrum(rv))
            d_m = d_monotone_minors(rv, strategy="auto", cap=ENUMERATION_CAP)
            enumerated += math.comb(rv.length, rv.l) <= ENUMERATION_CAP
            err = _relative_error(d_m, d_s)
            res.record(
                err,
                err > cfg.invariance_tolerance,
                lambda: _base(cfg, "oracle", t, state, locus=list(locus.indices), d_schmidt=d_s, d_minors=d_m),
            )
    res.extra["enumerated_loci"] = enumerated
    return res


def check_lu(cfg: HarnessConfig) -> CheckResult:
    """A Haar unitary on one random qubit leaves every D_n unchanged."""
    res = CheckResult("lu")
    for t in range(cfg.start, cfg.start + cfg.trials):
        rng = trial_rng(cfg.seed, "lu", t)
        N = int(rng.integers(cfg.min_qubits, cfg.max_qubits + 1))
        state = random_state(N, rng)
        qubit = int(rng.integers(1, N + 1))
        u = haar_unitary(2, rng)
        after = apply_local_unitary(state, LocalUnitary(qubit, u))
        res.trials += 1
        for locus in all_loci(N):
            d0, d1 = d_monotone(state, locus), d_monotone(after, locus)
            err = _relative_error(d1, d0)
            res.record(
                err,
                err > cfg.invariance_tolerance,
                lambda: _base(cfg, "lu", t, state, qubit=qubit, locus=list(locus.indices), before=d0, after=d1),
            )
    return res


def check_subspace(cfg: HarnessConfig) -> CheckResult:
    """A Haar ``l x l`` unitary on the whole locus leaves D_n at that locus unchanged."""
    res = CheckResult("subspace")
    for t in range(cfg.start, cfg.start + cfg.trials):
        rng = trial_rng(cfg.seed, "subspace", t)
        state, locus = _random_setup(rng, cfg)
        u = haar_unitary(locus.l, rng)
        after = apply_subspace_unitary(state, locus, u)
        d0, d1 = d_monotone(state, locus), d_monotone(after, locus)
        res.trials += 1
        err = _relative_error(d1, d0)
        res.record(
            err,
            err > cfg.invariance_tolerance,
            lambda: _base(cfg, "subspace", t, state, locus=list(locus.indices), before=d0, after=d1),
        )
    return res


def check_povm(cfg: HarnessConfig) -> CheckResult:
    """``<D**nu>`` never exceeds ``D**nu`` for a random POVM on a random qubit.

    The linear entropy is checked alongside at nu = 1.
    """
    res = CheckResult("povm")
    entropy_failures = 0
    degenerate = 0
    for t in range(cfg.start, cfg.start + cfg.trials):
        rng = trial_rng(cfg.seed, "povm", t)
        state, locus = _random_setup(rng, cfg)
        qubit = int(rng.integers(1, state.num_qubits + 1))
        povm = TwoOutcomePovm.random(qubit, rng)
        branches = apply_povm(state, povm)
        degenerate += sum(br.degenerate for br in branches)
        d0 = d_monotone(state, locus)
        d_out = [None if br.degenerate else d_monotone(br.state, locus) for br in branches]
        res.trials += 1
        for nu in cfg.nus:
            lhs, rhs = averaged_power(branches, d_out, nu), d0**nu
            res.record(
                lhs - rhs,
                lhs > rhs + cfg.tolerance,
                lambda: _base(
                    cfg, "povm", t, state, locus=list(locus.indices), nu=nu,
                    lhs=lhs, rhs=rhs, povm=povm.params(),
                    probabilities=[br.probability for br in branches],
                ),
            )
        s0 = linear_entropy(schmidt_spectrum(reduce(state, locus)))
        s_avg = sum(
            br.probability * linear_entropy(schmidt_spectrum(reduce(br.state, locus)))
            for br in branches
            if not br.degenerate
        )
        if s_avg > s0 + cfg.tolerance:
            entropy_failures += 1
            res.failures += 1
            if res.first_counterexample is None:
                res.first_counterexample = _base(
                    cfg, "povm", t, state, locus=list(locus.indices), quantity="S",
                    lhs=s_avg, rhs=s0, povm=povm.params(),
                )
    res.extra.update(entropy_failures=entropy_failures, degenerate_branches=degenerate)
    return res


def check_forefactor(cfg: HarnessConfig) -> CheckResult:
    """For a POVM on a locus qubit, ``<D**nu> / D**nu`` equals the analytic forefactor.

    Trials with ``D(psi) <= min_d`` are redrawn. The asymmetric ``printed``
    reading is evaluated too and its largest deviation reported in ``extra``.
    """
    res = CheckResult("forefactor")
    printed_max = 0.0
    for t in range(cfg.start, cfg.start + cfg.trials):
        rng = trial_rng(cfg.seed, "forefactor", t)
        for _ in range(100):
            state, locus = _random_setup(rng, cfg)
            d0 = d_monotone(state, locus)
            if d0 > cfg.min_d:
                break
            res.skipped += 1
        else:
            raise RuntimeError(f"trial {t}: no state with D > {cfg.min_d} in 100 draws")
        qubit = int(locus.indices[rng.integers(locus.n)])
        povm = TwoOutcomePovm.random(qubit, rng)
        branches = apply_povm(state, povm)
        probs = (branches[0].probability, branches[1].probability)
        d_out = [None if br.degenerate else d_monotone(br.state, locus) for br in branches]
        res.trials += 1
        for nu in cfg.nus:
            ratio = averaged_power(branches, d_out, nu) / d0**nu
            predicted = povm_forefactor(povm, probs, nu, "squared")
            printed_max = max(printed_max, abs(ratio - povm_forefactor(povm, probs, nu, "printed")))
            err = abs(ratio - predicted)
            res.record(
                err,
                err > cfg.tolerance,
                lambda: _base(
                    cfg, "forefactor", t, state, locus=list(locus.indices), nu=nu, ratio=ratio,
                    predicted=predicted, povm=povm.params(), probabilities=list(probs),
                ),
            )
    res.extra["printed_reading_max_deviation"] = printed_max
    return res


CHECK_FUNCTIONS: dict[str, Callable[[HarnessConfig], CheckResult]] = {
    "oracle": check_oracle,
    "lu": check_lu,
    "subspace": check_subspace,
    "povm": check_povm,
    "forefactor": check_forefactor,
}


def run_checks(cfg: HarnessConfig, checks: Iterable[str] | None = None) -> HarnessReport:
    results = []
    for name in checks or cfg.checks:
        t0 = time.perf_counter()
        result = CHECK_FUNCTIONS[name](cfg)
        result.elapsed = time.perf_counter() - t0
        results.append(result)
    return HarnessReport(cfg, results)


def with_overrides(cfg: HarnessConfig, **kw: Any) -> HarnessConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
