"""Zero-secrecy-rate event and the Monte-Carlo ZSRP estimator.

The secrecy rate of the served user is [C_main - C_eve]+ with
C = log2(1 + gamma_B * gain) on both links, so the zero-secrecy-rate
event {C_main < C_eve} reduces to the gain comparison
{main_gain < eve_gain}: the transmit SNR gamma_B cancels exactly and
never enters the estimator.

Trials are simulated in fixed-size blocks, each with its own
counter-derived random stream keyed by (seed, block index).  Workers
only ever merge integer event counts, so the estimate is bit-identical
for any thread count and any partitioning of blocks across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fading import FadingParams
from .propagation import (AirGroundParams, ScenarioGeometry, bs_ris_gain,
                          large_scale_gain, ris_user_gain,
                          sample_eve_distance)
from .scheduling import SchemeId, select_fcsi_pfs, select_gcsi_pfs

#: Trials per independent random block.  Fixed: changing it changes the
#: draw partitioning and therefore the sampled values for a given seed.
BLOCK_TRIALS = 4096


@dataclass(frozen=True)
class ScenarioConfig:
    """Full parameterization of one simulated downlink."""

    geometry: ScenarioGeometry
    air: AirGroundParams
    fading: FadingParams
    scheme: SchemeId
    gamma_b_db: float = 20.0
    alpha_eve: float = 2.0
    eve_center: str = "bs"
    eve_center_h_m: Optional[float] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma_b_db):
            raise ValueError("gamma_b_db must be finite")
        if self.alpha_eve <= 0.0:
            raise ValueError("alpha_eve must be positive")
        if self.eve_center not in ("bs", "fixed"):
            raise ValueError("eve_center must be 'bs' or 'fixed'")
        if self.eve_center_h_m is not None and self.eve_center_h_m <= 0.0:
            raise ValueError("eve_center_h_m must be positive")

    @property
    def n_users(self) -> int:
        return self.geometry.n_users

    @property
    def gamma_b_linear(self) -> float:
        return 10.0 ** (self.gamma_b_db / 10.0)


@dataclass(frozen=True)
class ChannelDraw:
    """One full realization: BS-RIS vector, per-user vectors, eve distance."""

    h_br: np.ndarray
    h_rn: np.ndarray
    d_be: float


@dataclass(frozen=True)
class ZsrpEstimate:
    """Monte-Carlo ZSRP with its binomial standard error."""

    p_hat: float
    std_err: float
    trials: int
    seed: int


def capacity_main(gamma_b: float, cascaded_gain: float) -> float:
    """Main-link capacity log2(1 + gamma_B * gain) in bits/s/Hz."""
    if cascaded_gain < 0.0:
        raise ValueError("gain must be nonnegative")
    return math.log2(1.0 + gamma_b * cascaded_gain)


def capacity_eve(gamma_b: float, wiretap_gain: float) -> float:
    """Wiretap-link capacity; identical formula to the main link."""
    return capacity_main(gamma_b, wiretap_gain)


def zsr_indicator(main_gain: float, eve_gain: float) -> bool:
    """Zero-secrecy-rate event: strict gain comparison.

    Equivalent to C_main < C_eve for every positive transmit SNR by
    monotonicity of log2(1 + gamma x); ties (measure zero) are secure.
    """
    return main_gain < eve_gain


def sample_channel_draw(rng: np.random.Generator,
                        config: ScenarioConfig) -> ChannelDraw:
    """One explicit realization with large-scale gains folded in.

    Convenience for inspection and tests; the estimator itself draws in
    vectorized blocks (same distributions, different draw layout).
    """
    from .fading import sample_channel_vector
    geom, air, fad = config.geometry, config.air, config.fading
    sigma2_sq = bs_ris_gain(geom, air)
    h_br = sample_channel_vector(rng, fad.m2, sigma2_sq, fad.n_elements)
    h_rn = np.stack([
        sample_channel_vector(rng, fad.m1, ris_user_gain(geom, air, u),
                              fad.n_elements)
        for u in range(geom.n_users)])
    d_be = float(sample_eve_distance(rng, geom.r_eve_m))
    return ChannelDraw(h_br=h_br, h_rn=h_rn, d_be=d_be)


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    """Independent substream for one block, partition-invariant."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence((seed, block_index))))


def _eve_distances(rng: np.random.Generator, config: ScenarioConfig,
                   n: int) -> np.ndarray:
    """BS-eavesdropper distances for one block.

    'bs' keeps the uniform ball centered on the BS, so the distance is
    the sampled radius.  'fixed' pins the ball's center at the reference
    altitude (eve_center_h_m, defaulting to the configured altitude) and
    measures distance to the possibly different current BS altitude; the
    azimuth draw is consumed for placement completeness even though only
    the polar component affects the distance.
    """
    rho = sample_eve_distance(rng, config.geometry.r_eve_m, size=n)
    if config.eve_center == "bs":
        return rho
    u_pol = rng.random(n)
    rng.random(n)  # azimuth
    h0 = (config.eve_center_h_m if config.eve_center_h_m is not None
          else config.geometry.h_br_m)
    dz = config.geometry.h_br_m - h0
    dir_z = 1.0 - 2.0 * u_pol
    return np.sqrt(np.maximum(rho ** 2 - 2.0 * rho * dir_z * dz + dz ** 2,
                              0.0))


def _simulate_block(config: ScenarioConfig, seed: int, block_index: int,
                    n: int) -> tuple[int, int]:
    """Event and opportunity counts for one block (integers only)."""
    rng = _block_rng(seed, block_index)
    geom, air, fad = config.geometry, config.air, config.fading
    n_users, n_el = geom.n_users, fad.n_elements
    # fixed draw order: BS-side powers, user-side powers, eve placement
    gb_pow = rng.gamma(float(fad.m2), 1.0 / fad.m2, (n, n_el))
    gr_pow = rng.gamma(float(fad.m1), 1.0 / fad.m1, (n, n_users, n_el))
    d_be = _eve_distances(rng, config, n)
    eve_gain = large_scale_gain(air.ref_gain, np.maximum(d_be, 1e-9),
                                config.alpha_eve)

    sigma2_sq = bs_ris_gain(geom, air)
    sigma1_sq = np.array([ris_user_gain(geom, air, u)
                          for u in range(n_users)])
    if config.scheme.fully_connected:
        small = gb_pow.sum(axis=1)[:, None] * gr_pow.sum(axis=2)
    else:
        small = np.sqrt(gb_pow)[:, None, :] * np.sqrt(gr_pow)
        small = small.sum(axis=2) ** 2
    main_gain = sigma2_sq * sigma1_sq[None, :] * small

    rule = config.scheme.rule
    if rule == "rs":
        # slot average over all users: every user contributes an indicator
        hits = int(np.count_nonzero(main_gain < eve_gain[:, None]))
        return hits, n * n_users
    if rule == "gcsi":
        sel = select_gcsi_pfs(gr_pow.sum(axis=2), n_el)
    else:
        sel = select_fcsi_pfs(small, fad.m1, fad.m2, n_el)
    served = main_gain[np.arange(n), sel]
    hits = int(np.count_nonzero(served < eve_gain))
    return hits, n


def run_monte_carlo(config: ScenarioConfig, trials: int, seed: int,
                    threads: int = 1) -> ZsrpEstimate:
    """Estimate the ZSRP over ``trials`` independent channel draws.

    The result depends only on (config, trials, seed): blocks own
    counter-derived streams and merging sums integers, so any thread
    count produces bit-identical output.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    blocks = [(i, min(BLOCK_TRIALS, trials - i * BLOCK_TRIALS))
              for i in range((trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS)]
    if threads == 1 or len(blocks) == 1:
        results = [_simulate_block(config, seed, i, n) for i, n in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda item: _simulate_block(config, seed, *item), blocks))
    hits = sum(r[0] for r in results)
    opportunities = sum(r[1] for r in results)
    p_hat = hits / opportunities
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return ZsrpEstimate(p_hat=p_hat, std_err=std_err, trials=trials,
                        seed=seed)
