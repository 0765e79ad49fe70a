"""Interferometer topologies built from the phase-space primitives.

Two layouts are supported:

* ``sui`` -- an SU(1,1) interferometer: a parametric amplifier (PA1) splits
  a coherent seed into correlated signal/idler beams, the idler picks up the
  sensing phase, and a second amplifier (PA2) recombines them.  The idler
  output port is detected.
* ``mzi`` -- a conventional Mach-Zehnder interferometer with 50:50
  splitters, used as the shot-noise-limited reference.  The port that goes
  dark at phi = pi is detected.

Losses are modeled as pure attenuation in two places: ``eta_internal``
(both arms, between splitter and combiner, ahead of the phase element) and
``eta_detection`` (both outputs, after the combiner).

The seed amplitude is dimensionless (photons per temporal mode); the
detection layer converts photon fluxes to per-sample amplitudes before
building configs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .gaussian import (
    GaussianState,
    ModePair,
    apply_loss,
    apply_op,
    beam_splitter,
    coherent_state,
    mean_photon_number,
    phase_shift,
    quadrature_variance,
    two_mode_squeezer,
)

SUI = "sui"
MZI = "mzi"

#: Mode index of the arm that carries the sensing phase, and of the detected
#: output port (the SUI idler; the MZI port that is dark at phi = pi).
PHASE_MODE = 1


@dataclass(frozen=True)
class InterferometerConfig:
    topology: str = SUI
    gain1: float = 5.0
    gain2: float = 5.0
    seed_alpha: complex = 1.0
    eta_internal: float = 1.0
    eta_detection: float = 1.0
    seed_compensation: bool = False
    lock_setpoint: float = np.pi

    def __post_init__(self):
        if self.topology not in (SUI, MZI):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.topology == SUI and (self.gain1 < 1.0 or self.gain2 < 1.0):
            raise ValueError("intensity gains must be >= 1")
        for name in ("eta_internal", "eta_detection"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @property
    def effective_seed(self) -> complex:
        """Injected amplitude after the MZI seed-doubling compensation.

        The compensation doubles the injected *intensity* to make up for the
        50:50 split ahead of the sensing arm; it is ignored for the SUI.
        """
        if self.topology == MZI and self.seed_compensation:
            return self.seed_alpha * np.sqrt(2.0)
        return self.seed_alpha


def build_state(config: InterferometerConfig, phi: float) -> GaussianState:
    """Two-mode output state of the configured interferometer at phase ``phi``."""
    pair = ModePair(0, PHASE_MODE)
    state = coherent_state([config.effective_seed, 0.0])
    if config.topology == SUI:
        split = two_mode_squeezer(config.gain1, pair, n_modes=2)
        recombine = two_mode_squeezer(config.gain2, pair, n_modes=2)
    else:
        split = beam_splitter(0.5, pair, n_modes=2)
        recombine = beam_splitter(0.5, pair, n_modes=2)
    state = apply_op(state, split)
    for mode in (0, 1):
        state = apply_loss(state, mode, config.eta_internal)
    state = apply_op(state, phase_shift(phi, PHASE_MODE, n_modes=2))
    state = apply_op(state, recombine)
    for mode in (0, 1):
        state = apply_loss(state, mode, config.eta_detection)
    return state


def sui_fringe_intensity(gain1: float, gain2: float, alpha: complex, phi: float) -> float:
    """Mean photon number at the SU(1,1) idler output port (lossless).

    The idler output operator is
    c1 a_i + c2 a_s† with c2 = sqrt(G2 g1) e^{i phi} + sqrt(G1 g2), so a
    coherent seed alpha on the signal gives |c2|^2 (|alpha|^2 + 1); for equal
    gains this reduces to 2 G g (|alpha|^2 + 1)(1 + cos phi), vanishing at
    the dark fringe phi = pi.
    """
    if gain1 < 1.0 or gain2 < 1.0:
        raise ValueError("intensity gains must be >= 1")
    g1, g2 = gain1 - 1.0, gain2 - 1.0
    c2 = np.sqrt(gain2 * g1) * np.exp(1j * phi) + np.sqrt(gain1 * g2)
    return float(np.abs(c2) ** 2 * (abs(alpha) ** 2 + 1.0))


def mzi_fringe_intensity(i_ps_cl: float, phi: float) -> float:
    """Dark-port intensity of the reference interferometer, I/2 (1 + cos phi)."""
    if i_ps_cl < 0.0:
        raise ValueError("input intensity must be non-negative")
    return float(0.5 * i_ps_cl * (1.0 + np.cos(phi)))


def phase_sensing_intensity(config: InterferometerConfig, convention: str = "paper") -> float:
    """Bookkeeping intensity of the field that samples the phase.

    ``convention="paper"`` follows the published bookkeeping for the SUI,
    g1^2 (|alpha|^2 + 1); ``convention="physical"`` returns the actual mean
    photon number of the idler arm after the first amplifier,
    g1 (|alpha|^2 + 1).  For the MZI both conventions return the photon
    number in the sensing arm after the first splitter (compensation
    included).  Matched-comparison harnesses use the physical convention;
    see :func:`matched_mzi_config`.
    """
    if convention not in ("paper", "physical"):
        raise ValueError(f"unknown convention {convention!r}")
    if config.topology == MZI:
        return float(abs(config.effective_seed) ** 2 / 2.0)
    g1 = config.gain1 - 1.0
    base = abs(config.seed_alpha) ** 2 + 1.0
    return float(g1 * g1 * base if convention == "paper" else g1 * base)


def matched_mzi_config(sui_config: InterferometerConfig, rule: str = "physical") -> InterferometerConfig:
    """MZI twin of an SUI config with a fairness-matched seed.

    ``rule="physical"`` puts the same photon number on the phase element as
    the SUI idler arm carries (this is the matching under which the
    sensitivity-ratio law 1/sqrt(2G) holds).  ``rule="paper"`` applies the
    published fairness bookkeeping instead: the compensated MZI sensing arm
    carries twice the SUI paper-convention value.  Losses are shared: the
    two layouts model the same optical path.
    """
    if sui_config.topology != SUI:
        raise ValueError("expected an SUI configuration")
    if rule == "physical":
        arm = phase_sensing_intensity(sui_config, "physical")
    elif rule == "paper":
        arm = 2.0 * phase_sensing_intensity(sui_config, "paper")
    else:
        raise ValueError(f"unknown fairness rule {rule!r}")
    # With compensation on, the effective seed intensity is 2 |seed|^2 and
    # the sensing arm carries half of it, i.e. |seed|^2 = arm.
    return replace(
        sui_config,
        topology=MZI,
        gain1=1.0,
        gain2=1.0,
        seed_alpha=complex(np.sqrt(arm)),
        seed_compensation=True,
    )


class LockPointResponse(NamedTuple):
    """Small-signal response of the detected port at the lock phase."""

    lo_phase: float          # homodyne LO angle that maximizes the slope
    slope: float             # |d<X_lo>/d phi| at the lock point
    noise_variance: float    # quadrature variance at that LO angle
    mode: int


def lock_point_response(
    config: InterferometerConfig,
    phi: float | None = None,
    step: float = 1e-6,
) -> LockPointResponse:
    """Homodyne slope and noise of the detected port near the lock phase.

    The slope is evaluated by central differencing of the mean quadratures;
    the LO phase is chosen along the direction of maximum response.  For a
    configuration with no mean response (e.g. vacuum seed), the LO phase
    defaults to 0.
    """
    if phi is None:
        phi = config.lock_setpoint
    mode = PHASE_MODE
    k = 2 * mode
    up = build_state(config, phi + step).mean[k:k + 2]
    dn = build_state(config, phi - step).mean[k:k + 2]
    grad = (up - dn) / (2.0 * step)
    slope = float(np.hypot(grad[0], grad[1]))
    lo = float(np.arctan2(grad[1], grad[0])) if slope > 0.0 else 0.0
    var = quadrature_variance(build_state(config, phi), mode, lo)
    return LockPointResponse(lo, slope, var, mode)


def fringe_scan(config: InterferometerConfig, phi_grid) -> dict[str, np.ndarray]:
    """Engine-evaluated intensity and noise of the detected port versus phase.

    The noise column is the quadrature variance at the lock-point LO angle
    (the angle a locked homodyne detector would sit at).
    """
    phi_grid = np.asarray(phi_grid, dtype=float).reshape(-1)
    if phi_grid.size == 0:
        raise ValueError("phase grid must be non-empty")
    lo = lock_point_response(config).lo_phase
    intensity = np.empty(phi_grid.size)
    variance = np.empty(phi_grid.size)
    for j, phi in enumerate(phi_grid):
        state = build_state(config, phi)
        intensity[j] = mean_photon_number(state, PHASE_MODE)
        variance[j] = quadrature_variance(state, PHASE_MODE, lo)
    return {"phi": phi_grid, "intensity": intensity, "variance": variance}


def dark_fringe_variance(gain: float, eta_internal: float, eta_detection: float) -> float:
    """Closed-form detected-port noise of an equal-gain SUI at the dark fringe.

    Internal loss degrades the correlation between the arms, so the
    recombined noise rises above vacuum:
    V = eta_d * [eta_i + (1 - eta_i)(2G - 1)] + (1 - eta_d).
    Detection loss alone leaves the dark-fringe noise at vacuum level.
    """
    inner = eta_internal + (1.0 - eta_internal) * (2.0 * gain - 1.0)
    return eta_detection * inner + (1.0 - eta_detection)


def fit_total_efficiency(gain: float, amplified_noise_db: float) -> float:
    """Transmission eta that maps single-amplifier noise to a measured level.

    Solves 10^(dB/10) = eta (2G - 1) + (1 - eta) for eta, i.e. the
    attenuation needed after one amplifier of intensity gain G so that the
    amplified vacuum reads ``amplified_noise_db`` above shot noise.
    """
    if gain <= 1.0:
        raise ValueError("gain must exceed 1 to produce excess noise")
    target = 10.0 ** (amplified_noise_db / 10.0)
    eta = (target - 1.0) / (2.0 * gain - 2.0)
    if not 0.0 < eta <= 1.0:
        raise ValueError(
            f"measured level {amplified_noise_db:g} dB is not reachable at gain {gain:g}"
        )
    return float(eta)


def split_efficiency(gain: float, eta_total: float, snr_gap_db: float) -> tuple[float, float]:
    """Split a total efficiency into internal/detection parts hitting a target SNR gap.

    For an equal-gain SUI and its loss-sharing MZI twin at matched sensing
    intensity, the power-SNR ratio is 2G / V with V the dark-fringe variance
    from :func:`dark_fringe_variance`.  Given the product
    eta_internal * eta_detection = eta_total, this solves for the split that
    makes 10 log10(2G / V) equal ``snr_gap_db``.
    """
    if not 0.0 < eta_total <= 1.0:
        raise ValueError("eta_total must lie in (0, 1]")
    v_target = 2.0 * gain / 10.0 ** (snr_gap_db / 10.0)
    if v_target < 1.0:
        raise ValueError("requested gap exceeds the lossless limit 10*log10(2G)")
    # V = 1 + 2 (G - 1) eta_total (1/eta_i - 1)  =>  solve for eta_i.
    u = 1.0 + (v_target - 1.0) / (2.0 * (gain - 1.0) * eta_total)
    eta_internal = 1.0 / u
    eta_detection = eta_total * u
    if eta_detection > 1.0 + 1e-12:
        raise ValueError("gap not reachable with this total efficiency")
    return float(eta_internal), float(min(eta_detection, 1.0))
