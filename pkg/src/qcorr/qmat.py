"""Small dense complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` arrays of shape (2, 2) or (4, 4). Two-qubit
operators use the basis order |00>, |01>, |10>, |11> with qubit A as the
left tensor factor.
"""
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


class EigenResult(NamedTuple):
    """Eigenvalues sorted descending and the matching eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmatrix(a, dims=(2, 4)):
    """Coerce ``a`` to a complex square array and check its dimension.

    :raises ValueError: wrong shape or non-finite entries.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of dimension {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _check_subsystem(which):
    if which not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")


def kron(a, b):
    """Tensor product ``a (x) b`` of two single-qubit operators (A on the left)."""
    a = as_cmatrix(a, dims=(2,))
    b = as_cmatrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep):
    """Reduced operator on subsystem ``keep`` ('A' or 'B') of a 4x4 operator."""
    _check_subsystem(keep)
    r = as_cmatrix(rho, dims=(4,)).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    return np.einsum("ijik->jk", r)


def partial_transpose(rho, part="B"):
    """Transpose the indices of subsystem ``part`` only."""
    _check_subsystem(part)
    r = as_cmatrix(rho, dims=(4,)).reshape(2, 2, 2, 2)
    if part == "B":
        r = r.transpose(0, 3, 2, 1)
    else:
        r = r.transpose(2, 1, 0, 3)
    return r.reshape(4, 4)


def hs_norm_sq(a):
    """Squared Hilbert-Schmidt norm Tr(A^dagger A)."""
    a = np.asarray(a, dtype=complex)
    return float(np.sum(np.abs(a) ** 2))


def _offdiag_norm(h):
    return np.sqrt(hs_norm_sq(h - np.diag(np.diag(h))))


def herm_eig(h):
    """Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot element, then applies a
    real Givens rotation that annihilates it. Sweeps stop once the
    off-diagonal Hilbert-Schmidt norm drops below ``JACOBI_TOL`` (scaled by the
    matrix norm when that exceeds one).

    :param h: 2x2 or 4x4 Hermitian matrix.
    :return: :class:`EigenResult` with eigenvalues sorted descending.
    :raises ValueError: if ``h`` is not Hermitian within ``HERMITIAN_TOL``.
    """
    h = as_cmatrix(h)
    skew = np.sqrt(hs_norm_sq(h - h.conj().T))
    if skew > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (||H - H^dagger|| = {skew:.3e})")
    a = 0.5 * (h + h.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    tol = JACOBI_TOL * max(1.0, np.sqrt(hs_norm_sq(a)))

    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(a) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r == 0.0:
                    continue
                phase = a[p, q] / r
                angle = 0.5 * np.arctan2(2.0 * r, (a[q, q] - a[p, p]).real)
                c, s = np.cos(angle), np.sin(angle)
                u = np.eye(n, dtype=complex)
                # diag phase on q makes the pivot real, then the rotation zeroes it
                u[p, p] = c
                u[p, q] = s
                u[q, p] = -s * np.conj(phase)
                u[q, q] = c * np.conj(phase)
                a = u.conj().T @ a @ u
                a[p, q] = a[q, p] = 0.0
                v = v @ u

    w = np.real(np.diag(a))
    order = np.argsort(w)[::-1]
    return EigenResult(w[order], v[:, order])


def herm_eigvals(h):
    """Eigenvalues only, descending."""
    return herm_eig(h).eigenvalues

