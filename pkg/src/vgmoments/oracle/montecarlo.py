"""Seeded Monte Carlo estimates of VG and product-normal moments.

Random numbers come from numpy's Philox4x64 counter-based generator.  The
master seed is split with ``SeedSequence.spawn`` into one independent
stream per batch, so a batch's draws depend only on (seed, batch index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..errors import OrderError
from ..normprod import ProductNormalParams
from ..signedlog import ONE, SignedLogValue
from ..vg import Kind, VGParams, _as_moment_integer, validate

DEFAULT_SEED = 20240229


@dataclass(frozen=True)
class MonteCarloSettings:
    sample_count: int = 10_000_000
    seed: int = DEFAULT_SEED
    batch_count: int = 100

    def __post_init__(self):
        if self.batch_count < 2:
            raise ValueError("batch_count must be at least 2 to estimate a standard error")
        if self.sample_count < self.batch_count:
            raise ValueError(
                f"sample_count ({self.sample_count}) must be >= batch_count ({self.batch_count})"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    def batch_sizes(self) -> list[int]:
        base, extra = divmod(self.sample_count, self.batch_count)
        return [base + (1 if i < extra else 0) for i in range(self.batch_count)]


def batch_generators(settings: MonteCarloSettings) -> list[np.random.Generator]:
    children = np.random.SeedSequence(settings.seed).spawn(settings.batch_count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def sample_product_mean(p: ProductNormalParams, settings: MonteCarloSettings) -> Iterator[np.ndarray]:
    """Yield one array of draws of (1/n) sum U_i V_i per batch."""
    scale = p.sigma_v * math.sqrt(1.0 - p.rho * p.rho)
    slope = p.rho * p.sigma_v / p.sigma_u
    for rng, size in zip(batch_generators(settings), settings.batch_sizes()):
        u = p.sigma_u * rng.standard_normal((size, p.n))
        v = slope * u + scale * rng.standard_normal((size, p.n))
        yield (u * v).mean(axis=1)


def sample_vg(params: VGParams, settings: MonteCarloSettings) -> Iterator[np.ndarray]:
    """Yield VG draws per batch as the variance-mean mixture mu + beta W + sqrt(W) eps.

    W is gamma with shape nu + 1/2 and rate (alpha^2 - beta^2) / 2.
    """
    validate(params)
    shape = params.nu + 0.5
    scale = 2.0 / ((params.alpha - params.beta) * (params.alpha + params.beta))
    for rng, size in zip(batch_generators(settings), settings.batch_sizes()):
        w = rng.gamma(shape, scale, size)
        yield params.mu + params.beta * w + np.sqrt(w) * rng.standard_normal(size)


def monte_carlo_moments(
    target: VGParams | ProductNormalParams,
    queries: list[tuple[float, Kind | str]],
    settings: MonteCarloSettings | None = None,
) -> list[tuple[SignedLogValue, float]]:
    """Batch-means estimates for several (k, kind) pairs from one set of draws."""
    settings = settings or MonteCarloSettings()
    checked = []
    for k, kind in queries:
        kind = Kind(kind)
        if kind is Kind.RAW:
            k = _as_moment_integer(k)
        elif not k >= 0:
            raise OrderError(f"Monte Carlo moments need k >= 0, got {k!r}")
        checked.append((k, kind))
    if all(k == 0 for k, _ in checked):
        return [(ONE, 0.0) for _ in checked]

    if isinstance(target, ProductNormalParams):
        stream = sample_product_mean(target, settings)
    else:
        stream = sample_vg(target, settings)
    batch_means = np.zeros((settings.batch_count, len(checked)))
    for b, draws in enumerate(stream):
        if draws.size == 0:
            raise ValueError(f"Monte Carlo batch {b} is empty")
        magnitude = np.abs(draws)
        for i, (k, kind) in enumerate(checked):
            values = magnitude**k if kind is Kind.ABSOLUTE else draws**k
            batch_means[b, i] = values.mean()

    sizes = np.asarray(settings.batch_sizes(), dtype=float)
    results = []
    for i, (k, _) in enumerate(checked):
        if k == 0:
            results.append((ONE, 0.0))
            continue
        means = batch_means[:, i]
        estimate = float(np.dot(sizes, means) / sizes.sum())
        stderr = float(means.std(ddof=1) / math.sqrt(len(means)))
        results.append((SignedLogValue.from_float(estimate), stderr))
    return results


def moment_by_monte_carlo(
    target: VGParams | ProductNormalParams,
    k: float,
    kind: Kind | str = Kind.ABSOLUTE,
    settings: MonteCarloSettings | None = None,
) -> tuple[SignedLogValue, float]:
    """Batch-means estimate of one moment and its standard error."""
    return monte_carlo_moments(target, [(k, kind)], settings)[0]
