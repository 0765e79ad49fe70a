"""Gaussian-state phase-space engine.

States are described by their first and second quadrature moments.  The
quadrature convention is

    x = a + a†,   p = -i (a - a†),

so the vacuum has unit variance in every quadrature (shot-noise units) and
"dB above vacuum" is simply ``10*log10(variance)``.  The mean vector and
covariance matrix are ordered ``x1, p1, x2, p2, ...`` (x-p interleaved).

Parametric amplifiers are parameterised by their *intensity* gain G >= 1,
with the idler-gain g = G - 1, i.e. the mode operators transform as

    a_s -> sqrt(G) a_s + sqrt(g) a_i†,
    a_i -> sqrt(G) a_i + sqrt(g) a_s†.

All pump phases are absorbed into the interferometer phase, so the squeezer
constructor carries no phase parameter of its own.

Every type here is an immutable value and every operation is a pure
function; they are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
PHYSICALITY_TOL = 1e-9

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form for ``n_modes`` in x-p interleaved ordering."""
    return np.kron(np.eye(n_modes), _J)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ModePair:
    """Names the two roles of a two-mode operation (e.g. signal/idler)."""

    signal: int
    idler: int

    def __post_init__(self):
        if self.signal < 0 or self.idler < 0:
            raise ValueError("mode indices must be non-negative")
        if self.signal == self.idler:
            raise ValueError("signal and idler must be distinct modes")


def _as_pair(pair) -> ModePair:
    if isinstance(pair, ModePair):
        return pair
    s, i = pair
    return ModePair(int(s), int(i))


@dataclass(frozen=True)
class GaussianState:
    """Mean quadrature vector and covariance matrix of an n-mode state.

    ``mean`` has length ``2 * n_modes`` and ``cov`` is the symmetric
    ``2n x 2n`` covariance matrix, both in shot-noise units (vacuum
    covariance is the identity).
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.asarray(self.cov, dtype=float)
        if mean.size == 0 or mean.size % 2 != 0:
            raise ValueError("mean must have even, positive length")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"cov shape {cov.shape} does not match mean length {mean.size}"
            )
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        omega = symplectic_form(mean.size // 2)
        # Uncertainty principle: cov + i*Omega must be positive semidefinite.
        eigs = np.linalg.eigvalsh(cov + 1j * omega)
        if eigs.min() < -PHYSICALITY_TOL:
            raise ValueError(
                f"covariance violates the uncertainty bound (min eig {eigs.min():.3e})"
            )
        object.__setattr__(self, "mean", _freeze(mean))
        object.__setattr__(self, "cov", _freeze(cov))

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2


@dataclass(frozen=True)
class SymplecticOp:
    """Linear phase-space map: mean -> S mean + d, cov -> S cov S^T."""

    matrix: np.ndarray
    displacement: np.ndarray
    label: str = ""

    def __post_init__(self):
        s = np.asarray(self.matrix, dtype=float)
        d = np.asarray(self.displacement, dtype=float).reshape(-1)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2 != 0:
            raise ValueError("matrix must be square with even dimension")
        if d.size != s.shape[0]:
            raise ValueError("displacement length must match matrix dimension")
        omega = symplectic_form(s.shape[0] // 2)
        if np.max(np.abs(s @ omega @ s.T - omega)) > SYMPLECTIC_TOL:
            raise ValueError("matrix is not symplectic")
        object.__setattr__(self, "matrix", _freeze(s))
        object.__setattr__(self, "displacement", _freeze(d))

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def vacuum_state(n_modes: int) -> GaussianState:
    """Vacuum on ``n_modes``: zero mean, identity covariance."""
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    return GaussianState(np.zeros(2 * n_modes), np.eye(2 * n_modes))


def coherent_state(amplitudes) -> GaussianState:
    """Product coherent state with one complex amplitude per mode.

    Mode k gets mean ``(2 Re alpha_k, 2 Im alpha_k)`` and retains vacuum
    noise, so its mean photon number is ``|alpha_k|^2``.
    """
    alphas = np.atleast_1d(np.asarray(amplitudes, dtype=complex))
    if alphas.ndim != 1 or alphas.size == 0:
        raise ValueError("amplitudes must be a non-empty 1-d sequence")
    mean = np.empty(2 * alphas.size)
    mean[0::2] = 2.0 * alphas.real
    mean[1::2] = 2.0 * alphas.imag
    return GaussianState(mean, np.eye(2 * alphas.size))


def _embedded_identity(n_modes: int) -> np.ndarray:
    return np.eye(2 * n_modes)


def two_mode_squeezer(gain: float, pair, n_modes: int | None = None) -> SymplecticOp:
    """Parametric amplifier with intensity gain ``gain`` on a mode pair.

    Implements a_s -> sqrt(G) a_s + sqrt(g) a_i† (and symmetrically for the
    idler) with g = G - 1.  Deamplification (G < 1) is not modeled.
    """
    pair = _as_pair(pair)
    if gain < 1.0:
        raise ValueError("intensity gain must be >= 1")
    if n_modes is None:
        n_modes = max(pair.signal, pair.idler) + 1
    if max(pair.signal, pair.idler) >= n_modes:
        raise ValueError("pair indices exceed n_modes")
    cg, sg = np.sqrt(gain), np.sqrt(gain - 1.0)
    s = _embedded_identity(n_modes)
    a, b = 2 * pair.signal, 2 * pair.idler
    s[a:a + 2, a:a + 2] = cg * np.eye(2)
    s[b:b + 2, b:b + 2] = cg * np.eye(2)
    s[a:a + 2, b:b + 2] = sg * _Z
    s[b:b + 2, a:a + 2] = sg * _Z
    label = f"tms(gain={gain:g}, pair=({pair.signal},{pair.idler}))"
    return SymplecticOp(s, np.zeros(2 * n_modes), label)


def phase_shift(phi: float, mode: int, n_modes: int | None = None) -> SymplecticOp:
    """Rotation of one mode's (x, p) plane by ``phi`` (a -> e^{i phi} a)."""
    if mode < 0:
        raise ValueError("mode must be non-negative")
    if n_modes is None:
        n_modes = mode + 1
    if mode >= n_modes:
        raise ValueError("mode index exceeds n_modes")
    c, sn = np.cos(phi), np.sin(phi)
    s = _embedded_identity(n_modes)
    k = 2 * mode
    s[k:k + 2, k:k + 2] = np.array([[c, -sn], [sn, c]])
    return SymplecticOp(s, np.zeros(2 * n_modes), f"phase(phi={phi:g}, mode={mode})")


def beam_splitter(transmissivity: float, pair, n_modes: int | None = None) -> SymplecticOp:
    """Real orthogonal mixing of two modes with power transmission T.

    With T = |t|^2 the first mode of the pair maps to
    sqrt(T) a_0 + sqrt(1-T) a_1; total photon number is conserved.
    """
    pair = _as_pair(pair)
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    if n_modes is None:
        n_modes = max(pair.signal, pair.idler) + 1
    if max(pair.signal, pair.idler) >= n_modes:
        raise ValueError("pair indices exceed n_modes")
    t, r = np.sqrt(transmissivity), np.sqrt(1.0 - transmissivity)
    s = _embedded_identity(n_modes)
    a, b = 2 * pair.signal, 2 * pair.idler
    s[a:a + 2, a:a + 2] = t * np.eye(2)
    s[b:b + 2, b:b + 2] = t * np.eye(2)
    s[a:a + 2, b:b + 2] = r * np.eye(2)
    s[b:b + 2, a:a + 2] = -r * np.eye(2)
    label = f"bs(T={transmissivity:g}, pair=({pair.signal},{pair.idler}))"
    return SymplecticOp(s, np.zeros(2 * n_modes), label)


def apply_op(state: GaussianState, op: SymplecticOp) -> GaussianState:
    """Apply a symplectic map to a state, returning a new state."""
    if op.matrix.shape[0] != state.mean.size:
        raise ValueError(
            f"operation acts on {op.n_modes} modes but state has {state.n_modes}"
        )
    mean = op.matrix @ state.mean + op.displacement
    cov = op.matrix @ state.cov @ op.matrix.T
    cov = 0.5 * (cov + cov.T)  # keep the symmetry invariant under rounding
    return GaussianState(mean, cov)


def compose(first: SymplecticOp, *rest: SymplecticOp) -> SymplecticOp:
    """Compose operations in application order (left argument acts first)."""
    s = first.matrix
    d = first.displacement
    labels = [first.label]
    for op in rest:
        if op.matrix.shape != s.shape:
            raise ValueError("cannot compose operations of different size")
        d = op.matrix @ d + op.displacement
        s = op.matrix @ s
        labels.append(op.label)
    return SymplecticOp(s, d, " ; ".join(labels))


def apply_loss(state: GaussianState, mode: int, eta: float) -> GaussianState:
    """Pure attenuation of one mode: transmission ``eta`` toward vacuum.

    Means scale by sqrt(eta), the mode covariance block relaxes to
    eta*block + (1-eta)*I, and cross covariances scale by sqrt(eta).
    Loss is not symplectic, hence not a :class:`SymplecticOp`.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError("transmission must lie in [0, 1]")
    if mode < 0 or mode >= state.n_modes:
        raise ValueError("mode index out of range")
    root = np.sqrt(eta)
    k = 2 * mode
    mean = state.mean.copy()
    mean[k:k + 2] *= root
    cov = state.cov.copy()
    cov[k:k + 2, :] *= root
    cov[:, k:k + 2] *= root
    cov[k:k + 2, k:k + 2] += (1.0 - eta) * np.eye(2)
    return GaussianState(mean, cov)


def mean_photon_number(state: GaussianState, mode: int) -> float:
    """Mean photon number of one mode, ``<a† a>``.

    In the x = a + a† convention this is
    (mx^2 + mp^2)/4 + (Var x + Var p - 2)/4.
    """
    if mode < 0 or mode >= state.n_modes:
        raise ValueError("mode index out of range")
    k = 2 * mode
    mx, mp = state.mean[k], state.mean[k + 1]
    vx, vp = state.cov[k, k], state.cov[k + 1, k + 1]
    n = 0.25 * (mx * mx + mp * mp) + 0.25 * (vx + vp - 2.0)
    if -1e-12 < n < 0.0:
        n = 0.0
    return float(n)


def total_photon_number(state: GaussianState) -> float:
    return sum(mean_photon_number(state, m) for m in range(state.n_modes))


def quadrature_variance(state: GaussianState, mode: int, lo_phase: float) -> float:
    """Variance of x*cos(lo_phase) + p*sin(lo_phase) for one mode."""
    if mode < 0 or mode >= state.n_modes:
        raise ValueError("mode index out of range")
    k = 2 * mode
    c = np.array([np.cos(lo_phase), np.sin(lo_phase)])
    return float(c @ state.cov[k:k + 2, k:k + 2] @ c)


def quadrature_mean(state: GaussianState, mode: int, lo_phase: float) -> float:
    """Mean of x*cos(lo_phase) + p*sin(lo_phase) for one mode."""
    if mode < 0 or mode >= state.n_modes:
        raise ValueError("mode index out of range")
    k = 2 * mode
    return float(
        state.mean[k] * np.cos(lo_phase) + state.mean[k + 1] * np.sin(lo_phase)
    )
