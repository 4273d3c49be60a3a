"""Air-to-ground propagation geometry and large-scale gains.

The BS is an aerial platform at altitude ``h_br_m`` whose horizontal
distance to the RIS is ``r_br_m``; its path-loss exponent interpolates
between a ground value alpha(0) and a zenith value alpha(pi/2) through the
elevation-dependent LoS probability

    P_los(theta) = 1 / (1 + a2 * exp(-b2 * (theta_deg - a2)))

with theta in degrees.  RIS-to-user links are terrestrial and use alpha(0);
the eavesdropper overhears the BS directly over a free-space leg with
exponent 2.  All large-scale gains follow G = G0 * d^(-alpha) with G0 the
linear reference gain at 1 m.

The eavesdropper location is uniform inside a radius-R sphere centered on
the BS, so its BS distance has pdf 3 psi^2 / R^3 on [0, R].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Desk-scale default environment.  a2/b2 are the usual dense-urban logistic
# constants; the reference gain is calibrated so that the cascaded RIS link
# and the eavesdropper's direct leg compete over the default geometry
# (a physical ~1e-3 at 1 m makes the double path loss of the cascade
# unwinnable and every secrecy probability saturates at 1).
DEFAULT_A2 = 9.61
DEFAULT_B2 = 0.16
DEFAULT_ALPHA_ZENITH = 2.0
DEFAULT_ALPHA_GROUND = 3.5
DEFAULT_REF_GAIN = 5.0e5


@dataclass(frozen=True)
class AirGroundParams:
    """Environment constants of the air-to-ground exponent model."""

    a2: float = DEFAULT_A2
    b2: float = DEFAULT_B2
    alpha_zenith: float = DEFAULT_ALPHA_ZENITH
    alpha_ground: float = DEFAULT_ALPHA_GROUND
    ref_gain: float = DEFAULT_REF_GAIN

    def __post_init__(self) -> None:
        if self.a2 <= 0.0 or self.b2 <= 0.0:
            raise ValueError("a2 and b2 must be positive")
        if self.alpha_zenith <= 0.0 or self.alpha_ground <= 0.0:
            raise ValueError("path-loss exponents must be positive")
        if self.alpha_zenith > self.alpha_ground:
            raise ValueError("alpha_zenith must not exceed alpha_ground")
        if self.ref_gain <= 0.0:
            raise ValueError("ref_gain must be positive")

    @property
    def alpha_user(self) -> float:
        """RIS-to-user exponent; pinned to the ground value alpha(0)."""
        return self.alpha_ground


#: Free-space exponent of the BS-to-eavesdropper leg (not configurable).
EVE_PATHLOSS_EXPONENT = 2.0


@dataclass(frozen=True)
class NodePosition:
    """Cartesian position in meters (z up)."""

    x: float
    y: float
    z: float

    def distance_to(self, other: "NodePosition") -> float:
        return math.sqrt((self.x - other.x) ** 2 + (self.y - other.y) ** 2
                         + (self.z - other.z) ** 2)


@dataclass(frozen=True)
class ScenarioGeometry:
    """Static layout: aerial BS, RIS, users, and the eavesdropper sphere."""

    r_br_m: float = 300.0
    h_br_m: float = 150.0
    d_rn_m: tuple[float, ...] = (50.0, 50.0, 50.0, 50.0)
    r_eve_m: float = 500.0

    def __post_init__(self) -> None:
        if self.r_br_m <= 0.0 or self.h_br_m <= 0.0:
            raise ValueError("BS horizontal distance and altitude must be positive")
        if len(self.d_rn_m) == 0 or any(d <= 0.0 for d in self.d_rn_m):
            raise ValueError("need at least one user with positive RIS distance")
        if self.r_eve_m <= 0.0:
            raise ValueError("eavesdropper sphere radius must be positive")

    @property
    def n_users(self) -> int:
        return len(self.d_rn_m)

    @property
    def d_br_3d_m(self) -> float:
        """Slant BS-RIS distance."""
        return math.hypot(self.r_br_m, self.h_br_m)


@dataclass(frozen=True)
class EvePlacement:
    """One sampled eavesdropper position in BS-centered spherical coordinates.

    Only ``d_be_m`` enters the secrecy test; the angles are carried for
    completeness of the placement model.
    """

    d_be_m: float
    azimuth_rad: float
    polar_rad: float

    def __post_init__(self) -> None:
        if self.d_be_m < 0.0:
            raise ValueError("distance must be nonnegative")


def elevation_angle(h_m: float, r_m: float) -> float:
    """Elevation of the aerial BS seen from the RIS, in radians."""
    if r_m <= 0.0:
        raise ValueError("horizontal distance must be positive")
    if h_m < 0.0:
        raise ValueError("altitude must be nonnegative")
    return math.atan2(h_m, r_m)


def los_probability(theta_deg: float, params: AirGroundParams) -> float:
    """Logistic LoS probability; theta is the elevation in degrees."""
    if theta_deg < 0.0 or theta_deg > 90.0:
        raise ValueError("elevation must lie in [0, 90] degrees")
    return 1.0 / (1.0 + params.a2 * math.exp(-params.b2 * (theta_deg - params.a2)))


def fit_exponent_coefficients(params: AirGroundParams) -> tuple[float, float]:
    """(a1, b1) of alpha(theta) = a1 * P_los(theta) + b1.

    Anchored exactly at theta = 0 and, through the customary P_los(90) ~ 1
    approximation, at the zenith:

        a1 = (alpha_zenith - alpha_ground) * (1 + a2 e^{a2 b2}) / (a2 e^{a2 b2})
        b1 = alpha_ground - a1 / (1 + a2 e^{a2 b2})
    """
    w = params.a2 * math.exp(params.a2 * params.b2)
    a1 = (params.alpha_zenith - params.alpha_ground) * (1.0 + w) / w
    b1 = params.alpha_ground - a1 / (1.0 + w)
    return a1, b1


def pathloss_exponent_air(theta_deg: float, params: AirGroundParams) -> float:
    """Elevation-dependent BS-RIS exponent alpha(theta)."""
    a1, b1 = fit_exponent_coefficients(params)
    return a1 * los_probability(theta_deg, params) + b1


def large_scale_gain(ref_gain: float, d_m, alpha: float):
    """Power-law gain G0 * d^(-alpha); scalar or array distances."""
    if ref_gain <= 0.0:
        raise ValueError("reference gain must be positive")
    if np.any(np.asarray(d_m) <= 0.0):
        raise ValueError("distance must be positive")
    return ref_gain * d_m ** (-alpha)


def bs_ris_gain(geom: ScenarioGeometry, params: AirGroundParams) -> float:
    """Per-element large-scale power gain sigma_2^2 of the BS-RIS hop."""
    theta_deg = math.degrees(elevation_angle(geom.h_br_m, geom.r_br_m))
    alpha = pathloss_exponent_air(theta_deg, params)
    return large_scale_gain(params.ref_gain, geom.d_br_3d_m, alpha)


def ris_user_gain(geom: ScenarioGeometry, params: AirGroundParams, user: int) -> float:
    """Per-element large-scale power gain sigma_1^2 of the RIS-user hop."""
    return large_scale_gain(params.ref_gain, geom.d_rn_m[user], params.alpha_user)


def eve_wiretap_gain(ref_gain: float, d_be_m: float) -> float:
    """Deterministic free-space wiretap gain G0 / d^2 of the BS-eve leg."""
    if d_be_m <= 0.0:
        raise ValueError("eavesdropper distance must be positive")
    return large_scale_gain(ref_gain, d_be_m, EVE_PATHLOSS_EXPONENT)


def sample_eve_distance(rng: np.random.Generator, r_max_m: float,
                        size: int | None = None):
    """Draw BS-eve distances with density 3 psi^2 / R^3 (inverse CDF R u^{1/3})."""
    if r_max_m <= 0.0:
        raise ValueError("sphere radius must be positive")
    u = rng.random(size)
    return r_max_m * np.cbrt(u)


def sample_eve_placement(rng: np.random.Generator, r_max_m: float) -> EvePlacement:
    """Full spherical placement; only the distance feeds the secrecy test."""
    d = float(sample_eve_distance(rng, r_max_m))
    azimuth = float(rng.uniform(0.0, 2.0 * math.pi))
    polar = float(math.acos(1.0 - 2.0 * rng.random()))
    return EvePlacement(d_be_m=d, azimuth_rad=azimuth, polar_rad=polar)
