"""Two-qubit density matrices: construction, validation and Bloch decomposition."""
from dataclasses import dataclass, field

import numpy as np

from .qmat import I2, PAULIS, as_cmatrix, herm_eigvals, hs_norm_sq

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

_LOCAL_A = [np.kron(s, I2) for s in PAULIS]
_LOCAL_B = [np.kron(I2, s) for s in PAULIS]
_CORR = [[np.kron(s, t) for t in PAULIS] for s in PAULIS]

# index pairs (excited-weight, ground-weight) for the two Werner superpositions
_PAIRS = {
    "11,00": (3, 0),
    "10,01": (2, 1),
}


class PhysicsError(ValueError):
    """A matrix violates a density-matrix invariant."""

    def __init__(self, report):
        super().__init__("; ".join(report.failures))
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`.

    ``failures`` is empty when the matrix is a valid density matrix, in which
    case ``state`` carries the certified :class:`DensityMatrix`.
    """

    hermiticity_error: float
    trace: complex
    min_eigenvalue: float
    failures: list = field(default_factory=list)
    state: "DensityMatrix | None" = None

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        return {
            "ok": self.ok,
            "hermiticity_error": self.hermiticity_error,
            "trace": [self.trace.real, self.trace.imag],
            "min_eigenvalue": self.min_eigenvalue,
            "failures": list(self.failures),
        }


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A certified two-qubit state. Build through :func:`validate` or :meth:`of`."""

    mat: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    @classmethod
    def of(cls, mat):
        """Validate ``mat`` and wrap it, raising :class:`PhysicsError` on failure."""
        report = validate(mat)
        if not report.ok:
            raise PhysicsError(report)
        return report.state


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors ``x`` (qubit A), ``y`` (qubit B) and correlation matrix ``R``."""

    x: np.ndarray
    y: np.ndarray
    R: np.ndarray

    def to_matrix(self):
        rho = np.eye(4, dtype=complex)
        for i in range(3):
            rho += self.x[i] * _LOCAL_A[i] + self.y[i] * _LOCAL_B[i]
            for j in range(3):
                rho += self.R[i, j] * _CORR[i][j]
        return rho / 4


def validate(rho):
    """Check Hermiticity, unit trace and positivity of a 4x4 matrix.

    Never raises for physics violations; each failed invariant is listed in
    the returned report with the size of the violation.
    """
    m = as_cmatrix(rho, dims=(4,))
    herm_err = float(np.sqrt(hs_norm_sq(m - m.conj().T)))
    tr = complex(np.trace(m))
    failures = []
    if herm_err > HERMITIAN_TOL:
        failures.append(f"hermiticity violation: ||rho - rho^dagger|| = {herm_err:.3e}")
        min_eig = float("nan")
    else:
        min_eig = float(herm_eigvals(0.5 * (m + m.conj().T))[-1])
    if abs(tr - 1) > TRACE_TOL:
        failures.append(f"trace violation: trace = {tr.real:.12g}{tr.imag:+.3g}j")
    if min_eig < -PSD_TOL:
        failures.append(f"positivity violation: min eigenvalue = {min_eig:.12g}")
    state = DensityMatrix(m.copy()) if not failures else None
    return ValidationReport(herm_err, tr, min_eig, failures, state)


def werner(p, theta, pair="11,00"):
    """Werner-type state ``p |phi><phi| + (1 - p) I/4``.

    ``|phi> = sin(theta)|11> + cos(theta)|00>`` for ``pair="11,00"`` and
    ``sin(theta)|10> + cos(theta)|01>`` for ``pair="10,01"``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"purity p must lie in [0, 1], got {p}")
    try:
        hi, lo = _PAIRS[pair]
    except KeyError:
        raise ValueError(f"pair must be one of {sorted(_PAIRS)}, got {pair!r}") from None
    phi = np.zeros(4, dtype=complex)
    phi[hi] = np.sin(theta)
    phi[lo] = np.cos(theta)
    return p * np.outer(phi, phi.conj()) + (1 - p) * np.eye(4) / 4


def bloch_decompose(rho):
    m = as_cmatrix(rho, dims=(4,))
    # Tr(m P) = sum(m * P^T) for each Pauli product P
    x = np.array([np.sum(m * op.T).real for op in _LOCAL_A])
    y = np.array([np.sum(m * op.T).real for op in _LOCAL_B])
    R = np.array([[np.sum(m * op.T).real for op in row] for row in _CORR])
    return BlochForm(x, y, R)


def qubit_basis(theta_b, phi_b):
    """Orthonormal pair (|n+>, |n->) along Bloch direction (theta_b, phi_b)."""
    up = np.array([np.cos(theta_b / 2), np.exp(1j * phi_b) * np.sin(theta_b / 2)])
    down = np.array([np.sin(theta_b / 2), -np.exp(1j * phi_b) * np.cos(theta_b / 2)])
    return up, down


def classical_quantum(probs, basis_angles, sigmas):
    """Zero-discord state ``sum_k p_k |k><k| (x) sigma_k`` (classical on A)."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (2,) or np.any(probs < 0) or abs(probs.sum() - 1) > 1e-12:
        raise ValueError(f"probs must be a non-negative 2-vector summing to 1, got {probs}")
    if len(sigmas) != 2:
        raise ValueError("need exactly two conditional states")
    rho = np.zeros((4, 4), dtype=complex)
    for pk, ket, sigma in zip(probs, qubit_basis(*basis_angles), sigmas):
        sigma = as_cmatrix(sigma, dims=(2,))
        if (
            hs_norm_sq(sigma - sigma.conj().T) > HERMITIAN_TOL**2
            or abs(np.trace(sigma) - 1) > TRACE_TOL
            or herm_eigvals(sigma)[-1] < -PSD_TOL
        ):
            raise ValueError("conditional states must be single-qubit density matrices")
        rho += pk * np.kron(np.outer(ket, ket.conj()), sigma)
    return rho


class MatrixFormatError(ValueError):
    """Malformed density-matrix JSON."""


def matrix_to_json(rho):
    """Nested 4x4 list of [re, im] pairs, row-major."""
    m = as_cmatrix(rho, dims=(4,))
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data):
    """Parse the nested [re, im] layout produced by :func:`matrix_to_json`.

    :raises MatrixFormatError: naming the first offending row or entry.
    """
    if not isinstance(data, list) or len(data) != 4:
        raise MatrixFormatError("top level: expected a list of 4 rows")
    m = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != 4:
            raise MatrixFormatError(f"row {i}: expected a list of 4 entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
                or not all(np.isfinite(entry))
            ):
                raise MatrixFormatError(f"entry [{i}][{j}]: expected a finite [re, im] pair, got {entry!r}")
            m[i, j] = complex(entry[0], entry[1])
    return m
