"""Brute-force oscillator simulator in a truncated number basis.

This is the validation oracle for the phase-space engine: it represents the
full state vector on a per-mode photon-number grid ``0..cutoff`` and applies
gates as exponentials of their (anti-Hermitian) generators via sparse
expm-action.  It is deliberately independent of :mod:`suisim.gaussian` -- it
shares only the quadrature convention x = a + a†, p = -i(a - a†).

Not meant to be fast; intended for small gains and low photon numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

NORM_TOL = 1e-9
DEFAULT_LOSS_THRESHOLD = 1e-6


class TruncationLossError(RuntimeError):
    """Raised when state support reaches the photon-number cutoff.

    Carries the estimated probability mass in the top two number layers of
    the affected modes.
    """

    def __init__(self, loss: float, detail: str = ""):
        super().__init__(
            f"truncation loss {loss:.3e} exceeds tolerance{': ' + detail if detail else ''}"
        )
        self.loss = loss


@dataclass(frozen=True)
class FockState:
    """State vector over the truncated number basis of ``n_modes`` modes."""

    n_modes: int
    cutoff: int
    amplitudes: np.ndarray  # flat, length (cutoff + 1) ** n_modes

    def __post_init__(self):
        if self.n_modes < 1 or self.cutoff < 1:
            raise ValueError("need n_modes >= 1 and cutoff >= 1")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dim:
            raise ValueError("amplitude vector has wrong length")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.n_modes

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.cutoff + 1,) * self.n_modes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def boundary_mass(self, modes=None) -> float:
        """Probability in the top two number layers of the given modes."""
        probs = np.abs(self.tensor()) ** 2
        if modes is None:
            modes = range(self.n_modes)
        mask = np.zeros(probs.shape, dtype=bool)
        for m in modes:
            idx = [slice(None)] * self.n_modes
            idx[m] = slice(self.cutoff - 1, self.cutoff + 1)
            mask[tuple(idx)] = True
        return float(probs[mask].sum())


def fock_vacuum(n_modes: int, cutoff: int) -> FockState:
    amps = np.zeros((cutoff + 1) ** n_modes, dtype=complex)
    amps[0] = 1.0
    return FockState(n_modes, cutoff, amps)


def fock_coherent(amplitudes, cutoff: int) -> FockState:
    """Product coherent state; per-mode amplitudes are Poissonian in n."""
    alphas = np.atleast_1d(np.asarray(amplitudes, dtype=complex))
    vec = np.ones(1, dtype=complex)
    for alpha in alphas:
        single = np.empty(cutoff + 1, dtype=complex)
        single[0] = np.exp(-0.5 * abs(alpha) ** 2)
        for n in range(cutoff):
            single[n + 1] = single[n] * alpha / np.sqrt(n + 1)
        vec = np.kron(vec, single)
    return FockState(len(alphas), cutoff, vec)


def _lowering(cutoff: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, cutoff + 1)), 1, format="csr")


def _mode_op(op: sp.spmatrix, mode: int, n_modes: int, cutoff: int) -> sp.csr_matrix:
    d = cutoff + 1
    full = sp.identity(1, format="csr", dtype=complex)
    for m in range(n_modes):
        block = op if m == mode else sp.identity(d, format="csr", dtype=complex)
        full = sp.kron(full, block, format="csr")
    return full


def _check_truncation(state: FockState, modes, threshold: float, detail: str) -> None:
    loss = state.boundary_mass(modes)
    if loss > threshold:
        raise TruncationLossError(loss, detail)


def fock_apply_squeezer(
    state: FockState,
    gain: float,
    pair,
    *,
    inverse: bool = False,
    loss_threshold: float = DEFAULT_LOSS_THRESHOLD,
) -> FockState:
    """Two-mode squeezer exp(r (a_s† a_i† - a_s a_i)) with cosh r = sqrt(gain).

    Raises :class:`TruncationLossError` if the result leans on the cutoff
    (probability in the top two layers above ``loss_threshold``).
    """
    if gain < 1.0:
        raise ValueError("intensity gain must be >= 1")
    s, i = (pair.signal, pair.idler) if hasattr(pair, "signal") else pair
    r = float(np.arccosh(np.sqrt(gain)))
    if inverse:
        r = -r
    if r == 0.0:
        return state
    a_s = _mode_op(_lowering(state.cutoff), s, state.n_modes, state.cutoff)
    a_i = _mode_op(_lowering(state.cutoff), i, state.n_modes, state.cutoff)
    pair_down = a_s @ a_i
    gen = r * (pair_down.conj().T - pair_down)
    amps = expm_multiply(gen, state.amplitudes)
    out = FockState(state.n_modes, state.cutoff, amps)
    _check_truncation(out, (s, i), loss_threshold, f"squeezer gain={gain:g}")
    return out


def fock_apply_phase(state: FockState, phi: float, mode: int) -> FockState:
    """Phase rotation a -> e^{i phi} a: amplitudes pick up e^{i phi n}."""
    factors = np.exp(1j * phi * np.arange(state.cutoff + 1))
    shape = [1] * state.n_modes
    shape[mode] = state.cutoff + 1
    tens = state.tensor() * factors.reshape(shape)
    return FockState(state.n_modes, state.cutoff, tens.reshape(-1))


def fock_apply_beam_splitter(
    state: FockState,
    transmissivity: float,
    pair,
    *,
    loss_threshold: float = DEFAULT_LOSS_THRESHOLD,
) -> FockState:
    """Beam splitter matching the phase-space convention: a_0 -> sqrt(T) a_0 + sqrt(1-T) a_1."""
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    m0, m1 = (pair.signal, pair.idler) if hasattr(pair, "signal") else pair
    theta = float(np.arctan2(np.sqrt(1.0 - transmissivity), np.sqrt(transmissivity)))
    if theta == 0.0:
        return state
    a_0 = _mode_op(_lowering(state.cutoff), m0, state.n_modes, state.cutoff)
    a_1 = _mode_op(_lowering(state.cutoff), m1, state.n_modes, state.cutoff)
    gen = theta * (a_0.conj().T @ a_1 - a_1.conj().T @ a_0)
    amps = expm_multiply(gen, state.amplitudes)
    out = FockState(state.n_modes, state.cutoff, amps)
    _check_truncation(out, (m0, m1), loss_threshold, f"beam splitter T={transmissivity:g}")
    return out


def _apply_single(state: FockState, op: sp.spmatrix, mode: int) -> np.ndarray:
    d = state.cutoff + 1
    tens = state.tensor()
    moved = np.tensordot(op.toarray(), tens, axes=([1], [mode]))
    return np.moveaxis(moved, 0, mode).reshape(-1)


def fock_photon_number(state: FockState, mode: int) -> float:
    """Exact ``<a† a>`` of one mode in the truncated basis."""
    probs = np.abs(state.tensor()) ** 2
    axes = tuple(m for m in range(state.n_modes) if m != mode)
    marginal = probs.sum(axis=axes) if axes else probs
    return float(marginal @ np.arange(state.cutoff + 1))


def fock_quadrature_mean(state: FockState, mode: int, lo_phase: float = 0.0) -> float:
    """Mean of e^{-i t} a + e^{i t} a† for lo_phase t."""
    a = _lowering(state.cutoff)
    a_psi = _apply_single(state, a, mode)
    exp_a = np.vdot(state.amplitudes, a_psi)
    return float(2.0 * np.real(np.exp(-1j * lo_phase) * exp_a))


def fock_quadrature_variance(state: FockState, mode: int, lo_phase: float = 0.0) -> float:
    a = _lowering(state.cutoff)
    x_op = np.exp(-1j * lo_phase) * a + np.exp(1j * lo_phase) * a.conj().T
    x_psi = _apply_single(state, sp.csr_matrix(x_op), mode)
    mean_sq = float(np.real(np.vdot(x_psi, x_psi)))  # X is Hermitian
    mean = float(np.real(np.vdot(state.amplitudes, x_psi)))
    return mean_sq - mean * mean


def fock_overlap(state_a: FockState, state_b: FockState) -> float:
    """|<a|b>|^2 of two states on the same grid."""
    if (state_a.n_modes, state_a.cutoff) != (state_b.n_modes, state_b.cutoff):
        raise ValueError("states live on different grids")
    return float(np.abs(np.vdot(state_a.amplitudes, state_b.amplitudes)) ** 2)


def fock_expectation(state: FockState, observable: str, mode: int, lo_phase: float = 0.0) -> float:
    """Dispatch helper for the oracle-check report tables."""
    if observable == "photon_number":
        return fock_photon_number(state, mode)
    if observable == "quadrature":
        return fock_quadrature_mean(state, mode, lo_phase)
    if observable == "quadrature_variance":
        return fock_quadrature_variance(state, mode, lo_phase)
    raise ValueError(f"unknown observable {observable!r}")
