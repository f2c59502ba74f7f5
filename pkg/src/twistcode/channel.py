"""Exact-count error channel and Monte-Carlo decoding runs.

Every trial draws from its own PCG64 stream seeded by ``(seed, trial)``
through :class:`numpy.random.SeedSequence`, so results do not depend on
the order in which trials are run.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .decoder import DecoderState, decode
from .perm import Word

__all__ = [
    "ChannelSpec",
    "SimulationFailure",
    "SimulationStats",
    "inject_errors",
    "simulate",
    "trial_rng",
]


@dataclass(frozen=True)
class ChannelSpec:
    error_count: int
    rng_seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.error_count < 0:
            raise ValueError("error_count must be non-negative")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _corrupt(symbols: np.ndarray, e: int, n: int, rng: np.random.Generator) -> np.ndarray:
    if e > symbols.size:
        raise ValueError(f"cannot corrupt {e} positions of a length-{symbols.size} word")
    out = symbols.copy()
    if e == 0:
        return out
    if n < 2:
        raise ValueError("a one-letter alphabet has no different symbol to substitute")
    pos = rng.choice(symbols.size, size=e, replace=False)
    shift = rng.integers(1, n, size=e)
    out[pos] = (out[pos] - 1 + shift) % n + 1
    return out


def inject_errors(word: Word, spec: ChannelSpec, trial: int = 0) -> Word:
    """Replace exactly ``spec.error_count`` positions by different symbols."""
    rng = trial_rng(spec.rng_seed, trial)
    arr = _corrupt(np.asarray(word.symbols, dtype=np.int64), spec.error_count, word.alphabet_size, rng)
    return Word(tuple(int(x) for x in arr), word.alphabet_size)


@dataclass
class SimulationStats:
    code: str
    trials: int
    error_count: int
    r_tw: int
    bound: int  # lambda * |U|
    successes: int = 0
    failures: int = 0
    miscorrections: int = 0
    histogram: Counter = field(default_factory=Counter)
    max_attempts: int = 0
    wall_time: float = 0.0

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def summary(self) -> str:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(self.histogram.items()))
        return (
            f"code {self.code}: {self.trials} trials, e={self.error_count} (r_tw={self.r_tw})\n"
            f"  success rate {self.success_rate:.4f}  failures {self.failures}  "
            f"miscorrections {self.miscorrections}\n"
            f"  max attempts {self.max_attempts} (bound {self.bound})\n"
            f"  attempts histogram {hist}\n"
            f"  wall time {self.wall_time:.2f}s"
        )

    def tsv(self) -> str:
        hist = ",".join(f"{k}:{v}" for k, v in sorted(self.histogram.items()))
        cols = [
            self.code, self.trials, self.error_count, self.r_tw, self.successes, self.failures,
            self.miscorrections, f"{self.success_rate:.6f}", self.max_attempts, self.bound, hist,
        ]
        return "\t".join(str(c) for c in cols)

    TSV_HEADER = "code\ttrials\te\tr_tw\tsuccesses\tfailures\tmiscorrections\tsuccess_rate\tmax_attempts\tbound\thistogram"


class SimulationFailure(AssertionError):
    """A guaranteed-success run failed; carries the trial's seed and transcript."""

    def __init__(self, message: str, seed: int, trial: int, transcript: str):
        super().__init__(f"{message} (seed={seed}, trial={trial})\n{transcript}")
        self.seed = seed
        self.trial = trial
        self.transcript = transcript


def simulate(state: DecoderState, spec: ChannelSpec, stress: bool = False) -> SimulationStats:
    """Transmit random codewords through the channel and decode them.

    Unless ``stress`` is set, ``spec.error_count`` must not exceed ``r_tw``
    and any failure, miscorrection or attempt count above ``lambda * |U|``
    raises :class:`SimulationFailure`.
    """
    code = state.code
    if not stress and spec.error_count > state.r_tw:
        raise ValueError(
            f"e = {spec.error_count} exceeds r_tw = {state.r_tw}; use stress mode"
        )
    state.warm()
    stats = SimulationStats(code.name, spec.trials, spec.error_count, state.r_tw, state.max_attempts)
    N = code.g1.order()
    start = time.perf_counter()
    for t in range(spec.trials):
        rng = trial_rng(spec.rng_seed, t)
        g = int(rng.integers(N))
        sent = code.encode_index(g)
        received = _corrupt(sent, spec.error_count, code.n, rng)
        res = decode(state, received)
        k = len(res.attempts)
        stats.histogram[k] += 1
        stats.max_attempts = max(stats.max_attempts, k)
        ok = res.success and res.element == g
        if ok:
            stats.successes += 1
        elif res.success:
            stats.miscorrections += 1
        else:
            stats.failures += 1
        if not stress and (not ok or k > state.max_attempts):
            transcript = (
                f"sent     {' '.join(map(str, sent))}\n"
                f"received {' '.join(map(str, received))}\n{res.log()}"
            )
            what = "miscorrection" if res.success and not ok else (
                "decoding failure" if not ok else f"{k} attempts exceed bound {state.max_attempts}"
            )
            raise SimulationFailure(what, spec.rng_seed, t, transcript)
    stats.wall_time = time.perf_counter() - start
    return stats
