"""Shared numerical oracles for the test suite.

The closed-form symplectic eigenvalues in the library are cross-checked here
against generic linear-algebra routes that never touch the closed forms:
eigenvalues of i*Omega*gamma for the joint state, and the pseudoinverse-based
conditional-matrix construction for the post-measurement state.
"""

from __future__ import annotations

import numpy as np

OMEGA_1MODE = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_eigs_generic(gamma: np.ndarray) -> list[float]:
    """Symplectic spectrum of a 2n x 2n covariance matrix (xpxp ordering),
    descending, via the eigenvalues of i*Omega*gamma (each appears twice)."""
    n = gamma.shape[0] // 2
    omega = np.kron(np.eye(n), OMEGA_1MODE)
    eigs = np.linalg.eigvals(1j * omega @ gamma)
    mags = np.sort(np.abs(eigs))[::-1]
    return [float(0.5 * (mags[2 * i] + mags[2 * i + 1])) for i in range(n)]


def conditional_after_homodyne(gamma4: np.ndarray) -> np.ndarray:
    """Covariance of mode A conditioned on a q-homodyne measurement of mode B,
    gamma_A - sigma^T (X gamma_B X)^+ sigma with X = diag(1, 0)."""
    block_a = gamma4[:2, :2]
    block_b = gamma4[2:, 2:]
    cross = gamma4[:2, 2:]
    x = np.diag([1.0, 0.0])
    h_hom = np.linalg.pinv(x @ block_b @ x)
    return block_a - cross @ h_hom @ cross.T
