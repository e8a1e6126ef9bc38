"""Single-excitation Hamiltonians for every interaction family.

All constructors return exactly Hermitian matrices: the hopping families
restricted to the one-excitation sector, where an XY network's Hamiltonian
coincides with the weighted adjacency matrix of its graph.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractViolationError, DomainError, InvalidSizeError
from .graph import Graph

__all__ = [
    "Hamiltonian",
    "from_graph",
    "engineered_couplings",
    "engineered_chain",
    "jy_chain",
    "mixed_phase_chain",
    "heisenberg_chain_with_field",
    "to_graph",
    "hamiltonian_to_json",
    "hamiltonian_from_json",
]


@dataclass(frozen=True)
class Hamiltonian:
    """An ``n x n`` Hermitian matrix with a construction-family label.

    The matrix is stored complex and write-protected.  Hermiticity must hold
    exactly (entry ``[i, j]`` equal to the conjugate of ``[j, i]`` as floats),
    which every constructor in this module guarantees.
    """

    n: int
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.n, self.n):
            raise ContractViolationError(f"matrix shape {m.shape} != ({self.n}, {self.n})")
        if not (m == m.conj().T).all():
            raise ContractViolationError("matrix is not exactly Hermitian")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def is_real(self) -> bool:
        return bool((self.matrix.imag == 0.0).all())


def from_graph(g: Graph) -> Hamiltonian:
    """Hopping Hamiltonian of an XY network: the weighted adjacency matrix."""
    return Hamiltonian(g.n, g.adjacency().astype(complex), label="xy-graph")


def engineered_couplings(n_c: int, lam: float = 2.0) -> tuple:
    """Couplings ``J_j = (lam/2) * sqrt(j*(n_c - j))`` for ``j = 1..n_c-1``.

    With ``lam=2`` these are the couplings a corner column-collapse of the
    binary hypercube produces.
    """
    if n_c < 2:
        raise InvalidSizeError(f"chain needs n_c >= 2, got {n_c}")
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam}")
    return tuple(0.5 * lam * math.sqrt(j * (n_c - j)) for j in range(1, n_c))


def engineered_chain(n_c: int, lam: float) -> Hamiltonian:
    """Modulated chain whose spectrum is an arithmetic progression.

    Tridiagonal real symmetric matrix with off-diagonal entries
    ``(lam/2)*sqrt(j*(n_c-j))``; as an operator it is ``lam`` times the
    transverse angular-momentum matrix of a spin-(n_c-1)/2 particle, so its
    eigenvalues are ``lam * {-(n_c-1)/2, ..., +(n_c-1)/2}`` in unit steps and
    end-to-end transfer is perfect at ``t0 = pi/lam``.
    """
    j = engineered_couplings(n_c, lam)
    m = np.zeros((n_c, n_c), dtype=complex)
    for k in range(n_c - 1):
        m[k, k + 1] = j[k]
        m[k + 1, k] = j[k]
    return Hamiltonian(n_c, m, label="engineered-jx")


def jy_chain(n_c: int, lam: float) -> Hamiltonian:
    """Purely imaginary variant of the engineered chain.

    Entries ``[j, j+1] = -i*(lam/2)*sqrt((j+1)*(n_c-1-j))`` and their
    conjugates below the diagonal.  Same spectrum as
    :func:`engineered_chain`; the end-to-end transfer amplitude at
    ``t0 = pi/lam`` is exactly ``+1`` (no per-site ``-i`` factor).
    """
    j = engineered_couplings(n_c, lam)
    m = np.zeros((n_c, n_c), dtype=complex)
    for k in range(n_c - 1):
        m[k, k + 1] = -1j * j[k]
        m[k + 1, k] = 1j * j[k]
    return Hamiltonian(n_c, m, label="jy")


def mixed_phase_chain(n_c: int, lam: float, gamma: float, sign: int = 1) -> Hamiltonian:
    """Entrywise combination ``gamma * Jx-chain + sign*sqrt(1-gamma^2) * Jy-chain``.

    ``gamma = 1`` reproduces the engineered chain, ``gamma = 0`` the Jy chain;
    any mixture preserves perfect end-to-end transfer at ``t0 = pi/lam`` while
    rotating the transported phase.
    """
    if abs(gamma) > 1:
        raise DomainError(f"gamma must lie in [-1, 1], got {gamma}")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    mx = engineered_chain(n_c, lam).matrix
    my = jy_chain(n_c, lam).matrix
    m = gamma * mx + sign * math.sqrt(1.0 - gamma * gamma) * my
    return Hamiltonian(n_c, m, label="mixed-jx-jy")


def heisenberg_chain_with_field(j) -> tuple:
    """Isotropically coupled chain plus the compensating site-local field.

    For couplings ``J_1..J_{N_C-1}`` the isotropic interaction contributes a
    site-dependent diagonal ``D_j = (1/2) sum_k J_k - J_{j-1} - J_j`` (with
    ``J_0 = J_{N_C} = 0``) on top of the hopping terms.  The field
    ``B_j = (1/2)(J_{j-1} + J_j) - sum_k J_k / (2*(N_C - 2))`` adds
    ``2*B_j - sum_k B_k`` to site ``j``, which flattens the diagonal to a
    uniform shift.  Returns ``(D, B, Hamiltonian)`` where the Hamiltonian is
    the single-excitation matrix with the field included.
    """
    j = tuple(float(x) for x in j)
    n_c = len(j) + 1
    if n_c < 3:
        raise InvalidSizeError(f"field compensation needs n_c >= 3, got {n_c}")

    def coupling(k: int) -> float:  # 1-based, zero beyond the ends
        return j[k - 1] if 1 <= k <= n_c - 1 else 0.0

    total = sum(j)
    d = tuple(0.5 * total - coupling(k - 1) - coupling(k) for k in range(1, n_c + 1))
    b = tuple(
        0.5 * (coupling(k - 1) + coupling(k)) - total / (2.0 * (n_c - 2))
        for k in range(1, n_c + 1)
    )

    b_total = sum(b)
    m = np.zeros((n_c, n_c), dtype=complex)
    for k in range(n_c - 1):
        m[k, k + 1] = j[k]
        m[k + 1, k] = j[k]
    for k in range(n_c):
        m[k, k] = d[k] + 2.0 * b[k] - b_total
    return d, b, Hamiltonian(n_c, m, label="heisenberg-field")


def to_graph(h: Hamiltonian) -> Graph:
    """Weighted graph whose adjacency matrix is ``h`` (real families only)."""
    if not h.is_real:
        raise ContractViolationError("only real symmetric Hamiltonians map to graphs")
    if not (np.diag(h.matrix.real) == 0.0).all():
        raise ContractViolationError("nonzero diagonal cannot be represented as a graph")
    edges = []
    for i in range(h.n):
        for k in range(i + 1, h.n):
            w = h.matrix[i, k].real
            if w != 0.0:
                edges.append((i, k, w))
    return Graph(h.n, tuple(edges))


def hamiltonian_to_json(h: Hamiltonian) -> str:
    """Serialize to ``{"n": int, "re": [[...]], "im": [[...]]}``."""
    return json.dumps(
        {
            "n": h.n,
            "re": h.matrix.real.tolist(),
            "im": h.matrix.imag.tolist(),
        },
        sort_keys=True,
    )


def hamiltonian_from_json(text: str, label: str = "") -> Hamiltonian:
    doc = json.loads(text)
    m = np.array(doc["re"], dtype=float) + 1j * np.array(doc["im"], dtype=float)
    return Hamiltonian(int(doc["n"]), m, label=label)
