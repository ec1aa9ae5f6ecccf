"""Gaussian-model sum-capacity bounds, power-split schemes, and gDoF formulas.

All rates are in bits per channel use (base-2 logs).  The symmetric channel
is parameterized by SNR and the exponents alpha (cross links, |h_i|^2 =
SNR^alpha) and beta (cognitive-to-primary links, |h_c|^2 = SNR^beta); the
direct links have |h_d|^2 = SNR and the cognitive user's own link h_KK stays
free.  Strong-interference certification quantifies over input correlation
triples on a configurable grid, filtered by default to positive semidefinite
joint correlation matrices; a failed grid point is a conclusive refutation
while a fully passing grid is reported as certified at that density only.
"""

from __future__ import annotations

import cmath
import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np

_REL_TOL = 1e-12


@dataclass(frozen=True)
class GaussianSymParams:
    """Symmetric K-user channel point: (K, SNR, alpha, beta, h_KK, phases)."""

    k: int
    snr: float
    alpha: float
    beta: float
    h_kk: complex = 0j
    theta_i: float = 0.0
    theta_c: float = 0.0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("need at least two users")
        if self.snr <= 0:
            raise ValueError("snr must be positive (linear scale)")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("exponents must be nonnegative")

    @property
    def h_d(self) -> float:
        return self.snr ** 0.5

    @property
    def h_i(self) -> complex:
        return self.snr ** (self.alpha / 2) * cmath.exp(1j * self.theta_i)

    @property
    def h_c(self) -> complex:
        return self.snr ** (self.beta / 2) * cmath.exp(1j * self.theta_c)


@dataclass(frozen=True)
class CorrelationTriple:
    """Pairwise input correlations (rho1, rho2, rho3), each at most 1 in magnitude."""

    rho1: complex
    rho2: complex
    rho3: complex

    def __post_init__(self):
        for r in (self.rho1, self.rho2, self.rho3):
            if abs(r) > 1 + _REL_TOL:
                raise ValueError("correlation magnitudes must be at most 1")

    def conditional_covariance(self) -> np.ndarray:
        """2x2 covariance of the two aided inputs given the first."""
        return np.array([
            [1 - abs(self.rho1) ** 2, self.rho3 - self.rho1 * np.conj(self.rho2)],
            [np.conj(self.rho3) - np.conj(self.rho1) * self.rho2, 1 - abs(self.rho2) ** 2],
        ])

    def correlation_matrix(self) -> np.ndarray:
        r1, r2, r3 = self.rho1, self.rho2, self.rho3
        return np.array([
            [1, np.conj(r1), np.conj(r2)],
            [r1, 1, r3],
            [r2, np.conj(r3), 1],
        ])

    def is_psd(self, tol: float = 1e-12) -> bool:
        eig = np.linalg.eigvalsh(self.correlation_matrix())
        return bool(eig.min() >= -tol)


@dataclass(frozen=True)
class PowerSplit:
    """Beamforming/private amplitude pairs; validated against unit power."""

    alphas: tuple[complex, ...]
    gammas: tuple[complex, ...]
    beta_last: complex
    gamma_last: complex

    def __post_init__(self):
        if len(self.alphas) != len(self.gammas):
            raise ValueError("alphas and gammas must pair up")
        for a, g in zip(self.alphas, self.gammas):
            if abs(a) ** 2 + abs(g) ** 2 > 1 + 1e-9:
                raise ValueError("per-user power exceeds the unit constraint")
        k_minus_1 = len(self.alphas)
        if abs(self.gamma_last) ** 2 + k_minus_1 * abs(self.beta_last) ** 2 > 1 + 1e-9:
            raise ValueError("cognitive-user power exceeds the unit constraint")


class SplitCase(enum.Enum):
    RELAY_ONLY = "relay_only"        # weak own link: cognitive user sends no private rate
    PRIVATE_RATE = "private_rate"    # strong own link: private stream below the noise
    NOT_APPLICABLE = "not_applicable"


# ---------------------------------------------------------------------------
# strong-interference certification
# ---------------------------------------------------------------------------

def default_grid_density() -> tuple[int, int]:
    """Magnitude x phase counts per correlation, overridable via CIFC_RHO_GRID."""
    raw = os.environ.get("CIFC_RHO_GRID")
    if not raw:
        return (9, 8)
    try:
        mags, phases = raw.lower().split("x")
        density = (int(mags), int(phases))
    except ValueError as exc:
        raise ValueError(f"CIFC_RHO_GRID must look like '9x8', got {raw!r}") from exc
    if density[0] < 2 or density[1] < 1:
        raise ValueError("grid density needs at least 2 magnitudes and 1 phase")
    return density


@lru_cache(maxsize=8)
def _rho_grid(density: tuple[int, int], require_psd: bool):
    """PSD-filtered grid of correlation triples plus covariance pieces."""
    n_mag, n_phase = density
    mags = np.linspace(0.0, 1.0, n_mag)
    phases = 2 * np.pi * np.arange(n_phase) / n_phase
    values = np.unique(np.concatenate(
        [[0.0 + 0.0j], (mags[1:, None] * np.exp(1j * phases)[None, :]).ravel()]))
    r1, r2, r3 = (a.ravel() for a in np.meshgrid(values, values, values, indexing="ij"))
    if require_psd:
        # unit-diagonal Hermitian: PSD iff det >= 0 and the pairwise-minor sum >= 0
        sq = abs(r1) ** 2 + abs(r2) ** 2 + abs(r3) ** 2
        det = 1 - sq + 2 * (np.conj(r1) * r3 * r2).real
        keep = (det >= -1e-12) & (3 - sq >= -1e-12)
        r1, r2, r3 = r1[keep], r2[keep], r3[keep]
    s11 = 1 - abs(r1) ** 2
    s22 = 1 - abs(r2) ** 2
    s12 = r3 - r1 * np.conj(r2)
    return r1, r2, r3, s11, s22, s12


@dataclass(frozen=True)
class StrongConditionCheck:
    holds: bool
    own_link_ok: bool
    min_margin: float
    witness: Optional[CorrelationTriple]
    density: tuple[int, int]
    psd_filtered: bool


def strong_conditions_hold(p: GaussianSymParams,
                           density: Optional[tuple[int, int]] = None,
                           require_psd: bool = True,
                           tol: float = 1e-9) -> StrongConditionCheck:
    """Grid certification of the strong-interference conditions for K = 3.

    Checks |h_33|^2 <= |h_c|^2 and, for every grid correlation triple, that
    the direct-pair quadratic form does not exceed the cross-pair form under
    the conditional input covariance.  A failing triple is returned as the
    witness; min_margin is the worst normalized slack over the grid.
    """
    if p.k != 3:
        raise ValueError("strong-interference certification is defined for K = 3")
    if density is None:
        density = default_grid_density()
    own_link_ok = abs(p.h_kk) ** 2 <= abs(p.h_c) ** 2 * (1 + _REL_TOL)
    r1, r2, r3, s11, s22, s12 = _rho_grid(density, require_psd)
    hd, hi, hc = p.h_d, p.h_i, p.h_c

    def form(h0, h1):
        return (s11 * abs(h0) ** 2 + s22 * abs(h1) ** 2
                + 2 * (np.conj(h0) * s12 * h1).real)

    q_cross = form(hi, hc)
    q_direct = form(hd, hc)
    scale = np.maximum(1.0, np.abs(q_cross) + np.abs(q_direct))
    margins = (q_cross - q_direct) / scale
    worst = int(np.argmin(margins))
    min_margin = float(margins[worst])
    grid_ok = min_margin >= -tol
    witness = None
    if not grid_ok:
        witness = CorrelationTriple(complex(r1[worst]), complex(r2[worst]), complex(r3[worst]))
    return StrongConditionCheck(own_link_ok and grid_ok, own_link_ok,
                                min_margin, witness, density, require_psd)


# ---------------------------------------------------------------------------
# sum-rate bounds
# ---------------------------------------------------------------------------

def strong_sum_outer(p: GaussianSymParams) -> float:
    """Outer bound log2(1 + (|h_i| + |h_d| + |h_c|)^2), valid under the
    certified strong-interference conditions."""
    s = abs(p.h_i) + p.h_d + abs(p.h_c)
    return math.log2(1 + s * s)


def compound_mac_sum_inner(p: GaussianSymParams) -> float:
    """Relay-aided compound-MAC inner bound where both primary receivers
    decode both messages: log2(1 + (|h_c| + sqrt(|h_d|^2 + |h_i|^2))^2)."""
    s = abs(p.h_c) + math.hypot(p.h_d, abs(p.h_i))
    return math.log2(1 + s * s)


def k_user_sum_outer(p: GaussianSymParams) -> float:
    """K-user sum-rate outer bound on the symmetric channel (K >= 3)."""
    if p.k < 3:
        raise ValueError("the K-user outer bound needs K >= 3")
    k = p.k
    hd, hi, hc = p.h_d, p.h_i, p.h_c
    t1 = math.log2(1 + (hd + (k - 2) * abs(hi) + abs(hc)) ** 2)
    t2 = (k - 2) * math.log2(1 + abs(hd - hi) ** 2 / 2)
    t3 = float(k - 2)
    t4 = math.log2(1 + abs(p.h_kk) ** 2 / (1 + (k - 1) * abs(hc) ** 2))
    return t1 + t2 + t3 + t4


def power_split_case(p: GaussianSymParams, literal_own_link: bool = False) -> SplitCase:
    """Which power-split scheme applies at this channel point.

    Requires (K-1)|h_i|^2 <= |h_c|^2 <= |h_d|^2; the own-link comparison uses
    |h_KK|^2 against |h_c|^2 (set literal_own_link for the unsquared variant).
    """
    if p.k < 3:
        raise ValueError("power-split cases are defined for K >= 3")
    hi2 = abs(p.h_i) ** 2
    hc2 = abs(p.h_c) ** 2
    if not ((p.k - 1) * hi2 <= hc2 * (1 + _REL_TOL) and hc2 <= p.snr * (1 + _REL_TOL)):
        return SplitCase.NOT_APPLICABLE
    own = abs(p.h_kk) if literal_own_link else abs(p.h_kk) ** 2
    return SplitCase.RELAY_ONLY if own <= hc2 * (1 + _REL_TOL) else SplitCase.PRIVATE_RATE


@dataclass(frozen=True)
class SplitRates:
    case: SplitCase
    rates: tuple[float, ...]
    split: PowerSplit

    @property
    def sum_rate(self) -> float:
        return sum(self.rates)


def power_split_achievable(p: GaussianSymParams,
                           literal_own_link: bool = False) -> SplitRates:
    """Achievable rates of the reduced-cognition power-split scheme.

    Relay-only case: every user's zero-forced stream yields
    R_1 = log2(1 + (1 - 1/sqrt(K-1))^2 |h_d|^2) and
    R_i = log2(1 + ||h_d| - h_i|^2) for the other primaries, R_K = 0.
    Private-rate case: the primaries see an equivalent noise power of
    (K^2-2)/(K-1)^2 and the cognitive user sends below their noise floors.
    """
    case = power_split_case(p, literal_own_link)
    if case is SplitCase.NOT_APPLICABLE:
        raise ValueError("power-split scheme does not apply at this channel point")
    k = p.k
    hi, hc = p.h_i, p.h_c
    root = math.sqrt(k - 1)
    if case is SplitCase.RELAY_ONLY:
        ratio = hi / hc if abs(hc) > 0 else 0j
        r1 = math.log2(1 + (1 - 1 / root) ** 2 * p.snr)
        r_mid = math.log2(1 + abs(p.h_d - hi) ** 2)
        rates = (r1,) + (r_mid,) * (k - 2) + (0.0,)
        split = PowerSplit((ratio,) * (k - 1), (0j,) * (k - 1), ratio, 0j)
        return SplitRates(case, rates, split)
    denom = 1 + (k - 1) * abs(hc) ** 2
    r_primary = math.log2(1 + ((k - 1) ** 2 / (k ** 2 - 2))
                          * ((root - 1) / root) ** 2 * p.snr)
    r_last = math.log2(1 + abs(p.h_kk) ** 2 / denom)
    gamma = math.sqrt(1 / denom)
    zf = hi * math.sqrt((k - 1) / denom)
    rates = (r_primary,) * (k - 1) + (r_last,)
    split = PowerSplit((zf,) * (k - 1), (complex(gamma),) * (k - 1), zf, complex(gamma))
    return SplitRates(case, rates, split)


def power_split_gap_bound(k: int, case: SplitCase) -> float:
    """Closed-form bound on outer minus achievable sum rate, in bits."""
    if k < 3:
        raise ValueError("gap bounds are defined for K >= 3")
    root = math.sqrt(k - 1)
    main = (2 * root + k - 2) ** 2 / (root - 1) ** 2
    if case is SplitCase.RELAY_ONLY:
        return math.log2(main) + (k - 1)
    if case is SplitCase.PRIVATE_RATE:
        c = (k ** 2 - 2) / (k - 1) ** 2
        return math.log2(c * main) + (k - 2) * math.log2(c * (root + 1) ** 2 / (root - 1) ** 2)
    raise ValueError("no gap bound for an inapplicable case")


# ---------------------------------------------------------------------------
# gDoF and the bridge to the deterministic model
# ---------------------------------------------------------------------------

Scalar = Union[int, float, Fraction]


def gdof(model: str, k: int, alpha: Scalar) -> Scalar:
    """Generalized degrees of freedom of the CMS, broadcast, or plain
    interference network; exact when alpha is a Fraction."""
    if k < 2:
        raise ValueError("need at least two users")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    one = alpha - alpha + 1  # unit of the same numeric type
    name = model.upper()
    if name == "CMS":
        return k * max(one, alpha) - alpha
    if name == "BC":
        return k * max(one, alpha)
    if name == "IFC":
        return k * min(one, max(alpha / 2, one - alpha / 2), max(alpha, one - alpha))
    raise ValueError(f"unknown model {model!r} (expected CMS, BC or IFC)")


def gain_to_lda_exponent(h: complex) -> int:
    """Deterministic-model exponent floor(log2(1 + |h|^2)) of a channel gain."""
    return math.floor(math.log2(1 + abs(h) ** 2))


# Reference constants for the full dirty-paper broadcast scheme (not built here).
DPC_GAP_3USER_BITS = 6.0


def dpc_reference_gap(k: int) -> float:
    """Constant-gap reference for the dirty-paper broadcast scheme."""
    if k == 3:
        return DPC_GAP_3USER_BITS
    if k >= 4:
        return (k - 2) * math.log2(k - 2) + 3.88
    raise ValueError("reference gap is defined for K >= 3")
