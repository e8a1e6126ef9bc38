"""Entanglement transfer and phase gates on engineered chains.

States live in the vacuum plus single-excitation sector of a chain: a
``(N_C + 1)``-dimensional space with basis ``{|vac>, |1>, ..., |N_C>}``.  Two
logical qubits are represented either as (non-interacting qubit) x (chain) or
as two parallel chains; genuine multi-excitation chain states are out of
scope.  The vacuum is a zero-energy eigenstate unless a field explicitly
shifts it, so its amplitude never changes during evolution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Spectrum, diagonalize, transfer_amplitude
from .exceptions import (
    ConfigurationError,
    ContractViolationError,
    DomainError,
    PerfectTransferRequiredError,
    TransferBrokenError,
)
from .hamiltonian import Hamiltonian, engineered_chain

__all__ = [
    "ExcitationState",
    "TwoQubitDensity",
    "concurrence",
    "bell_transfer",
    "distribute_entanglement",
    "density_matrix_split",
    "parallel_chain_transfer",
    "apply_phase_correction",
    "phase_during_transfer",
    "field_for_phase",
    "fielded_transfer_phase",
]


@dataclass(frozen=True)
class ExcitationState:
    """Normalized amplitudes over ``{|vac>, |1>, ..., |N_C>}``."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise ContractViolationError(f"state norm {norm} is not 1 within 1e-10")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return len(self.amps)

    @property
    def vacuum_amplitude(self) -> complex:
        return complex(self.amps[0])

    def site_amplitude(self, j: int) -> complex:
        """Amplitude of the excitation at chain site ``j`` (1-based)."""
        return complex(self.amps[j])


@dataclass(frozen=True)
class TwoQubitDensity:
    """4x4 density matrix over a logical qubit pair (row-major |ij> basis)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ContractViolationError(f"density matrix must be 4x4, got {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise ContractViolationError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise ContractViolationError("density matrix trace is not 1")
        if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -1e-10:
            raise ContractViolationError("density matrix is not positive semidefinite")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


def concurrence(rho) -> float:
    """Two-qubit concurrence (spin-flip eigenvalue formula)."""
    m = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho, dtype=complex)
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    yy = np.kron(sy, sy)
    r = m @ yy @ m.conj() @ yy
    ev = np.sort(np.abs(np.linalg.eigvals(r).real))
    sq = np.sqrt(ev)
    return float(max(0.0, sq[3] - sq[2] - sq[1] - sq[0]))


def _chain_propagator(spec: Spectrum, t: float, vacuum_energy: float = 0.0) -> np.ndarray:
    """Propagator on vacuum + single-excitation space (dimension n + 1)."""
    n = spec.n
    u = np.zeros((n + 1, n + 1), dtype=complex)
    u[0, 0] = cmath.exp(-1j * vacuum_energy * t)
    u[1:, 1:] = spec.vectors @ np.diag(np.exp(-1j * spec.values * t)) @ spec.vectors.conj().T
    return u


def _default_certification_window(spec: Spectrum) -> float:
    gaps = np.diff(np.unique(np.round(spec.values, 12)))
    gap = gaps.min() if len(gaps) else 1.0
    return 4.0 * math.pi / gap


def _certified_t0(h: Hamiltonian, tol: float, t_max: float | None) -> float:
    from .pst import pst_certificate

    spec = diagonalize(h)
    window = t_max if t_max is not None else _default_certification_window(spec)
    verdict = pst_certificate(h, 0, h.n - 1, t_max=window, tol=tol)
    if verdict.kind != "perfect":
        raise PerfectTransferRequiredError(
            f"Hamiltonian '{h.label}' is not certified perfect over (0, {window:.3g}] "
            f"(max modulus {verdict.max_modulus:.6g})"
        )
    return verdict.t0


def bell_transfer(
    h: Hamiltonian,
    which: str = "adjacent-pair",
    t0: float | None = None,
    t_max: float | None = None,
    tol: float = 1e-9,
):
    """Carry the adjacent-pair Bell state down a perfect-transfer chain.

    Evolves ``(|1> + |2>)/sqrt(2)`` for the transfer time and reports the
    overlap modulus against ``(|N_C> + |N_C-1>)/sqrt(2)``.  Under a real
    engineered chain every mirror pair transfers with one common phase, so
    the modulus reaches 1.

    Returns ``(final ExcitationState, overlap modulus)``.
    """
    if which != "adjacent-pair":
        raise DomainError(f"unsupported input state {which!r}")
    if h.n < 2:
        raise ConfigurationError("bell transfer needs at least two sites")
    if t0 is None:
        t0 = _certified_t0(h, tol, t_max)
    spec = diagonalize(h)
    n = h.n
    amps = np.zeros(n + 1, dtype=complex)
    amps[1] = amps[2] = 1.0 / math.sqrt(2.0)
    state = ExcitationState(amps)
    u = _chain_propagator(spec, t0)
    final = ExcitationState(u @ state.amps)
    target = np.zeros(n + 1, dtype=complex)
    target[n] = target[n - 1] = 1.0 / math.sqrt(2.0)
    overlap = complex(target.conj() @ final.amps)
    return final, abs(overlap)


def _initial_bell_joint(n: int) -> np.ndarray:
    """(|0>_NI |vac> + |1>_NI |site 1>)/sqrt(2) as a (2, n+1) amplitude table."""
    psi = np.zeros((2, n + 1), dtype=complex)
    psi[0, 0] = 1.0 / math.sqrt(2.0)
    psi[1, 1] = 1.0 / math.sqrt(2.0)
    return psi


def _chain_site_split(n: int):
    """Map chain basis index ``s`` to (readout occupation, environment index).

    The readout qubit is the occupation of site ``N_C``; the environment
    basis collects the vacuum-like configuration (index 0) and the
    single-excitation positions ``1..N_C-1``.
    """
    occ = np.zeros(n + 1, dtype=int)
    env = np.zeros(n + 1, dtype=int)
    occ[n] = 1
    env[0] = 0
    env[n] = 0
    for j in range(1, n):
        env[j] = j
    return occ, env


def distribute_entanglement(h: Hamiltonian, t: float) -> TwoQubitDensity:
    """Share a Bell pair between a non-interacting qubit and the chain end.

    Starts from the Bell state between the non-interacting qubit and site 1,
    evolves only the chain factor for time ``t``, and traces out every chain
    site except ``N_C``.  At the transfer time the reduced pair is maximally
    entangled up to the chain's known transported phase.
    """
    spec = diagonalize(h)
    n = h.n
    psi = _initial_bell_joint(n)
    u = _chain_propagator(spec, t)
    psi_t = psi @ u.T  # chain factor evolves; NI factor is identity
    occ, env = _chain_site_split(n)
    table = np.zeros((2, 2, n), dtype=complex)  # (NI, occupation, environment)
    for s in range(n + 1):
        table[:, occ[s], env[s]] += psi_t[:, s]
    rho = np.einsum("ibe,jce->ibjc", table, table.conj()).reshape(4, 4)
    return TwoQubitDensity(rho)


def _validate_density(rho0) -> np.ndarray:
    if isinstance(rho0, TwoQubitDensity):
        return rho0.matrix
    return TwoQubitDensity(np.asarray(rho0, dtype=complex)).matrix


def density_matrix_split(h: Hamiltonian, rho0, t: float) -> TwoQubitDensity:
    """Move the chain half of a two-qubit density matrix down the chain.

    ``rho0`` lives on (non-interacting qubit) x (site-1 occupation).  Each
    component evolves as ``|i>(exp(-iHt)|j>) <i'|(<j'| exp(iHt))``; the
    output is reduced onto (non-interacting qubit, site-``N_C`` occupation).
    At the transfer time this returns ``rho0`` with the transported phase on
    its coherences; no correction is applied here.
    """
    m0 = _validate_density(rho0)
    spec = diagonalize(h)
    n = h.n
    d = n + 1

    embed = np.zeros((2 * d, 4), dtype=complex)  # columns: logical |i j>
    for i in range(2):
        for j in range(2):
            embed[i * d + j, 2 * i + j] = 1.0  # chain index 0 = vac, 1 = site 1
    rho_full = embed @ m0 @ embed.conj().T

    u = np.kron(np.eye(2), _chain_propagator(spec, t))
    rho_t = u @ rho_full @ u.conj().T

    occ, env = _chain_site_split(n)
    iso = np.zeros((2 * d, 2, 2, n), dtype=complex)
    for i in range(2):
        for s in range(d):
            iso[i * d + s, i, occ[s], env[s]] = 1.0
    iso = iso.reshape(2 * d, 4, n)
    rho_red = np.einsum("spe,st,tqe->pq", iso.conj(), rho_t, iso)
    return TwoQubitDensity(rho_red)


def parallel_chain_transfer(
    h: Hamiltonian, rho0, t: float, h2: Hamiltonian | None = None
) -> TwoQubitDensity:
    """Send a two-qubit density matrix across two chains run in parallel.

    ``rho0`` is encoded on (site 1 of chain 1) x (site 1 of chain 2); the
    joint propagator factorizes as the product of the per-chain propagators,
    so each chain carries its logical qubit independently.  The output is
    reduced onto the pair of far-end occupations.
    """
    m0 = _validate_density(rho0)
    if h2 is None:
        h2 = h
    if h2.n != h.n:
        raise ConfigurationError(f"chain lengths differ: {h.n} vs {h2.n}")
    spec1 = diagonalize(h)
    spec2 = diagonalize(h2)
    n = h.n
    d = n + 1

    embed = np.zeros((d * d, 4), dtype=complex)
    for j1 in range(2):
        for j2 in range(2):
            embed[j1 * d + j2, 2 * j1 + j2] = 1.0
    rho_full = embed @ m0 @ embed.conj().T

    u = np.kron(_chain_propagator(spec1, t), _chain_propagator(spec2, t))
    rho_t = u @ rho_full @ u.conj().T

    occ, env = _chain_site_split(n)
    iso = np.zeros((d * d, 4, n * n), dtype=complex)
    for s1 in range(d):
        for s2 in range(d):
            iso[s1 * d + s2, 2 * occ[s1] + occ[s2], env[s1] * n + env[s2]] = 1.0
    rho_red = np.einsum("spe,st,tqe->pq", iso.conj(), rho_t, iso)
    return TwoQubitDensity(rho_red)


def apply_phase_correction(rho: TwoQubitDensity, phi: float, both: bool = False) -> TwoQubitDensity:
    """Undo the transported phase on the chain-borne qubit(s) of a pair.

    Conjugates by ``diag(1, e^{-i phi})`` on the second (chain) qubit, or on
    both qubits for the parallel-chain layout.  Correction is opt-in: the
    transfer routines report raw matrices.
    """
    gate_single = np.diag([1.0, cmath.exp(-1j * phi)])
    if both:
        gate = np.kron(gate_single, gate_single)
    else:
        gate = np.kron(np.eye(2), gate_single)
    return TwoQubitDensity(gate @ rho.matrix @ gate.conj().T)


def phase_during_transfer(h: Hamiltonian, n_c: int | None = None, tol: float = 1e-9) -> float:
    """Phase transported end-to-end by a (possibly mixed) modulated chain.

    The transfer time is read off the spectrum (the level spacing fixes
    ``t0 = pi/spacing``).  Raises :class:`TransferBrokenError` when the
    transfer modulus at ``t0`` falls below ``1 - tol``: mixing the real and
    imaginary chain families must not break perfect transfer.
    """
    if n_c is not None and n_c != h.n:
        raise ConfigurationError(f"n_c={n_c} does not match Hamiltonian size {h.n}")
    spec = diagonalize(h)
    spacing = np.diff(spec.values)
    lam = float(spacing.mean())
    if lam <= 0 or np.abs(spacing - lam).max() > 1e-8 * max(1.0, lam):
        raise ContractViolationError("spectrum is not an arithmetic progression")
    t0 = math.pi / lam
    f = transfer_amplitude(spec, 0, h.n - 1, t0)
    if abs(f) < 1.0 - tol:
        raise TransferBrokenError(
            f"transfer modulus {abs(f):.12g} at t0={t0:.6g} is below 1 - {tol}"
        )
    return float(np.angle(f))


def field_for_phase(phi: float, n_c: int, t0: float) -> float:
    """Uniform field strength that sets the transported phase to ``phi``.

    ``B = (phi - (pi/2)(N_C - 1)) / t0``.  The field shifts the
    single-excitation energies by ``B (N_C - 2)/2`` and the vacuum by
    ``B N_C / 2``, so the phase accumulated relative to the vacuum moves by
    ``B t0``.  Verify with :func:`fielded_transfer_phase`.
    """
    if not t0 > 0:
        raise DomainError(f"t0 must be positive, got {t0}")
    return (phi - 0.5 * math.pi * (n_c - 1)) / t0


def fielded_transfer_phase(n_c: int, t0: float, field: float) -> float:
    """Measured transfer phase of an engineered chain under a uniform field.

    Builds the engineered chain whose transfer time is ``t0`` (coupling scale
    ``pi/t0``), shifts the single-excitation block by ``field*(N_C-2)/2`` and
    the vacuum by ``field*N_C/2``, evolves, and returns the phase of the
    arriving amplitude relative to the vacuum amplitude.
    """
    if not t0 > 0:
        raise DomainError(f"t0 must be positive, got {t0}")
    lam = math.pi / t0
    base = engineered_chain(n_c, lam)
    shifted = np.array(base.matrix) + (field * (n_c - 2) / 2.0) * np.eye(n_c)
    h = Hamiltonian(n_c, shifted, label="engineered-jx-fielded")
    spec = diagonalize(h)
    vacuum_energy = field * n_c / 2.0
    u = _chain_propagator(spec, t0, vacuum_energy=vacuum_energy)
    amp_vac = u[0, 0]
    amp = u[n_c, 1]  # site 1 -> site N_C in the padded space
    if abs(amp) < 1.0 - 1e-9:
        raise TransferBrokenError(f"fielded transfer modulus {abs(amp):.12g} below 1")
    return float(np.angle(amp * amp_vac.conjugate()))
