"""Normality, two-sample KS and bootstrap tests for score distributions.

All randomness comes from numpy's PCG64 generator seeded with one explicit
64-bit integer, so every interval is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import kolmogorov

from newsprominence import kernels
from newsprominence.errors import ValidationError

PRNG = "numpy.random.PCG64"
MIN_NORMALITY_N = 20


@dataclass(frozen=True)
class SampleSet:
    label: str
    values: tuple[float, ...]

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"sample {self.label!r} contains non-finite values")

    @classmethod
    def of(cls, label: str, values) -> "SampleSet":
        return cls(label, tuple(float(v) for v in values))

    def __len__(self):
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # not a pytest class

    statistic: float
    p_value: float
    method: str
    sample_sizes: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "sample_sizes": list(self.sample_sizes),
        }


@dataclass(frozen=True)
class BootstrapConfig:
    resamples: int = 10000
    level: float = 0.95
    seed: int = 0

    def __post_init__(self):
        if self.resamples < 1:
            raise ValidationError("resamples must be >= 1")
        if not 0.0 < self.level < 1.0:
            raise ValidationError("level must lie in (0, 1)")


@dataclass(frozen=True)
class BootstrapCI:
    low: float
    high: float
    level: float
    resamples: int
    seed: int
    estimate: float

    def contains(self, value: float) -> bool:
        return self.low <= value <= self.high

    def to_json(self) -> dict:
        return {
            "method": "percentile bootstrap of mean difference",
            "estimate": self.estimate,
            "low": self.low,
            "high": self.high,
            "level": self.level,
            "resamples": self.resamples,
            "seed": self.seed,
            "prng": PRNG,
        }


def _as_sample(x, label) -> SampleSet:
    return x if isinstance(x, SampleSet) else SampleSet.of(label, x)


def _nonempty(*samples: SampleSet) -> None:
    for s in samples:
        if len(s) == 0:
            raise ValidationError(f"sample {s.label!r} is empty")


def ks2_test(a, b) -> TestResult:
    """Two-sample Kolmogorov-Smirnov test.

    The statistic is exact; the p-value uses the asymptotic Kolmogorov
    distribution at ``sqrt(n1 * n2 / (n1 + n2)) * D``.
    """
    a, b = _as_sample(a, "a"), _as_sample(b, "b")
    _nonempty(a, b)
    xa = np.sort(a.array())
    xb = np.sort(b.array())
    d = float(kernels.ks_statistic(xa, xb))
    n1, n2 = xa.size, xb.size
    en = n1 * n2 / (n1 + n2)
    p = float(np.clip(kolmogorov(math.sqrt(en) * d), 0.0, 1.0))
    return TestResult(d, p, "ks_2samp (asymptotic)", (n1, n2))


def _skew_z(x: np.ndarray) -> float:
    n = x.size
    d = x - x.mean()
    m2 = np.mean(d**2)
    b1 = np.mean(d**3) / m2**1.5
    y = b1 * math.sqrt((n + 1) * (n + 3) / (6.0 * (n - 2)))
    beta2 = (
        3.0 * (n * n + 27 * n - 70) * (n + 1) * (n + 3)
        / ((n - 2.0) * (n + 5) * (n + 7) * (n + 9))
    )
    w2 = -1.0 + math.sqrt(2.0 * (beta2 - 1.0))
    delta = 1.0 / math.sqrt(0.5 * math.log(w2))
    alpha = math.sqrt(2.0 / (w2 - 1.0))
    ya = y / alpha
    return delta * math.log(ya + math.sqrt(ya * ya + 1.0))


def _kurtosis_z(x: np.ndarray) -> float:
    # Anscombe & Glynn (1983)
    n = x.size
    d = x - x.mean()
    m2 = np.mean(d**2)
    b2 = np.mean(d**4) / m2**2
    mean_b2 = 3.0 * (n - 1) / (n + 1)
    var_b2 = 24.0 * n * (n - 2) * (n - 3) / ((n + 1.0) ** 2 * (n + 3) * (n + 5))
    xs = (b2 - mean_b2) / math.sqrt(var_b2)
    sqrt_beta1 = (
        6.0 * (n * n - 5 * n + 2) / ((n + 7.0) * (n + 9))
        * math.sqrt(6.0 * (n + 3) * (n + 5) / (n * (n - 2.0) * (n - 3)))
    )
    a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + math.sqrt(1.0 + 4.0 / sqrt_beta1**2))
    term1 = 1.0 - 2.0 / (9.0 * a)
    denom = 1.0 + xs * math.sqrt(2.0 / (a - 4.0))
    if denom == 0.0:
        return math.inf
    term2 = math.copysign(abs((1.0 - 2.0 / a) / denom) ** (1.0 / 3.0), denom)
    return (term1 - term2) / math.sqrt(2.0 / (9.0 * a))


def dagostino_pearson(a) -> TestResult:
    """D'Agostino-Pearson omnibus normality test (K^2 with 2 d.o.f.)."""
    a = _as_sample(a, "a")
    x = a.array()
    if x.size < MIN_NORMALITY_N:
        raise ValidationError(
            f"normality test needs at least {MIN_NORMALITY_N} values, got {x.size}"
        )
    if np.ptp(x) == 0.0:
        raise ValidationError(f"sample {a.label!r} has zero variance")
    k2 = _skew_z(x) ** 2 + _kurtosis_z(x) ** 2
    # chi-square survival function with 2 degrees of freedom
    p = math.exp(-0.5 * k2)
    return TestResult(float(k2), float(p), "dagostino_pearson", (x.size,))


def _resampled_means(rng, x: np.ndarray, resamples: int, chunk: int) -> np.ndarray:
    out = np.empty(resamples)
    n = x.size
    for start in range(0, resamples, chunk):
        stop = min(start + chunk, resamples)
        idx = rng.integers(0, n, size=(stop - start, n))
        out[start:stop] = x[idx].mean(axis=1)
    return out


def bootstrap_mean_diff(a, b, config: Optional[BootstrapConfig] = None) -> BootstrapCI:
    """Percentile bootstrap interval for ``mean(a) - mean(b)``."""
    config = config or BootstrapConfig()
    a, b = _as_sample(a, "a"), _as_sample(b, "b")
    _nonempty(a, b)
    xa, xb = a.array(), b.array()
    rng = np.random.Generator(np.random.PCG64(config.seed))
    # cap the index block at roughly 4M entries per draw
    chunk = max(1, 4_000_000 // max(xa.size, xb.size))
    diffs = _resampled_means(rng, xa, config.resamples, chunk) - _resampled_means(
        rng, xb, config.resamples, chunk
    )
    tail = (1.0 - config.level) / 2.0
    low, high = np.quantile(diffs, [tail, 1.0 - tail])
    return BootstrapCI(
        float(low),
        float(high),
        config.level,
        config.resamples,
        config.seed,
        float(xa.mean() - xb.mean()),
    )


def percent_difference(linked_mean: float, unlinked_mean: float) -> float:
    if not unlinked_mean > 0:
        raise ValidationError(
            f"percent difference undefined for baseline mean {unlinked_mean!r}"
        )
    return 100.0 * (linked_mean - unlinked_mean) / unlinked_mean
