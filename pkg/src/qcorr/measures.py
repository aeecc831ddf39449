"""Correlation measures for two-qubit states.

Entropies are in bits. Discord and classical correlation default to a
projective measurement on qubit B; the geometric discord defaults to
qubit A.
"""
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .qmat import I2, PAULIS, as_cmatrix, herm_eigvals, partial_trace, partial_transpose
from .states import bloch_decompose

EIG_CLAMP = 1e-9
PROB_FLOOR = 1e-14
# partial-transpose eigenvalues above this are roundoff, not entanglement
PT_ZERO = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective qubit measurement along Bloch angles (theta_m, phi_m)."""

    theta_m: float
    phi_m: float

    @property
    def direction(self):
        st = np.sin(self.theta_m)
        return np.array([st * np.cos(self.phi_m), st * np.sin(self.phi_m), np.cos(self.theta_m)])

    def projectors(self):
        n_sigma = sum(c * s for c, s in zip(self.direction, PAULIS))
        return (I2 + n_sigma) / 2, (I2 - n_sigma) / 2


@dataclass(frozen=True)
class OptimizerSettings:
    """Coarse grid plus Nelder-Mead refinement for the measurement-angle search."""

    grid_theta: int = 64
    grid_phi: int = 128
    xatol: float = 1e-8
    fatol: float = 1e-15
    max_iter: int = 500


DEFAULT_OPTS = OptimizerSettings()


class ClassicalCorrelation(NamedTuple):
    value: float
    basis: MeasurementBasis
    converged: bool


@dataclass(frozen=True)
class CorrelationReport:
    mutual_info: float
    classical_corr: float
    discord: float
    gmqd: float
    negativity: float
    argmax_basis: MeasurementBasis
    converged: bool = True

    def as_dict(self):
        return asdict(self)


def _other(which):
    if which not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")
    return "A" if which == "B" else "B"


def _entropy_from_eigs(w):
    w = np.asarray(w, dtype=float)
    w = np.where(w < EIG_CLAMP, 0.0, w)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log2(nz)))


def von_neumann_entropy(rho):
    """S = -Tr(rho log2 rho) for a one- or two-qubit state.

    Eigenvalues below ``EIG_CLAMP`` are treated as zero.
    """
    return max(0.0, _entropy_from_eigs(herm_eigvals(np.asarray(rho))))


def mutual_information(rho):
    rho = as_cmatrix(rho, dims=(4,))
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def conditional_entropy(rho, basis, measured="B"):
    """Average entropy of the unmeasured qubit after measuring ``measured`` in ``basis``.

    Built directly from the post-measurement states
    ``rho_k = Tr_m[(1 (x) Pi_k) rho (1 (x) Pi_k)] / p_k``.
    """
    keep = _other(measured)
    rho = as_cmatrix(rho, dims=(4,))
    total = 0.0
    for proj in basis.projectors():
        op = np.kron(I2, proj) if measured == "B" else np.kron(proj, I2)
        post = partial_trace(op @ rho @ op, keep)
        pk = float(np.trace(post).real)
        if pk < PROB_FLOOR:
            continue
        total += pk * von_neumann_entropy(post / pk)
    return total


def _binary_entropy(r):
    # entropy of a qubit with Bloch-vector length r
    r = np.clip(r, 0.0, 1.0)
    out = np.zeros_like(r)
    for sign in (1.0, -1.0):
        q = 0.5 * (1 + sign * r)
        mask = q > 0
        out[mask] -= q[mask] * np.log2(q[mask])
    return out


def _conditional_entropy_bloch(bloch, measured, theta, phi):
    """Vectorised conditional entropy over arrays of angles via the Bloch form.

    Measuring B along n leaves A with Bloch vector (x +/- R n)/(1 +/- y.n)
    with probability (1 +/- y.n)/2; measuring A is the transposed picture.
    """
    if measured == "B":
        loc, other, corr = bloch.x, bloch.y, bloch.R
    else:
        loc, other, corr = bloch.y, bloch.x, bloch.R.T
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    n = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
    yn = n @ other
    rn = n @ corr.T
    total = np.zeros(yn.shape)
    for sign in (1.0, -1.0):
        pk = 0.5 * (1 + sign * yn)
        vec = loc + sign * rn
        length = np.linalg.norm(vec, axis=-1)
        ok = pk >= PROB_FLOOR
        r = np.where(ok, length / np.where(ok, 2 * pk, 1.0), 0.0)
        total += np.where(ok, pk * _binary_entropy(r), 0.0)
    return total


def _h2(r):
    if r >= 1.0:
        return 0.0
    q, qm = 0.5 * (1 + r), 0.5 * (1 - r)
    return -(q * math.log2(q) + qm * math.log2(qm)) if r > 0 else 1.0


def _scalar_objective(bloch, measured):
    """Plain-float version of :func:`_conditional_entropy_bloch` for the local search."""
    if measured == "B":
        loc, other, corr = bloch.x, bloch.y, bloch.R
    else:
        loc, other, corr = bloch.y, bloch.x, bloch.R.T
    lx, ly, lz = (float(v) for v in loc)
    ox, oy, oz = (float(v) for v in other)
    (c00, c01, c02), (c10, c11, c12), (c20, c21, c22) = corr.tolist()

    def f(v):
        st = math.sin(v[0])
        nx, ny, nz = st * math.cos(v[1]), st * math.sin(v[1]), math.cos(v[0])
        yn = ox * nx + oy * ny + oz * nz
        rx = c00 * nx + c01 * ny + c02 * nz
        ry = c10 * nx + c11 * ny + c12 * nz
        rz = c20 * nx + c21 * ny + c22 * nz
        total = 0.0
        for sign in (1.0, -1.0):
            pk = 0.5 * (1 + sign * yn)
            if pk < PROB_FLOOR:
                continue
            length = math.sqrt((lx + sign * rx) ** 2 + (ly + sign * ry) ** 2 + (lz + sign * rz) ** 2)
            total += pk * _h2(min(1.0, length / (2 * pk)))
        return total

    return f


def measurement_grid(n_theta, n_phi):
    """Endpoint-inclusive polar grid, endpoint-exclusive azimuth grid."""
    return np.linspace(0.0, np.pi, n_theta), np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)


def classical_correlation(rho, measured="B", opts=DEFAULT_OPTS):
    """Maximal information gained about one qubit by projectively measuring the other.

    A coarse angle grid locates the basin, then Nelder-Mead polishes the best
    grid point. The search is deterministic.

    :return: :class:`ClassicalCorrelation` ``(value, basis, converged)``.
    """
    keep = _other(measured)
    rho = as_cmatrix(rho, dims=(4,))
    s_keep = von_neumann_entropy(partial_trace(rho, keep))
    bloch = bloch_decompose(rho)

    thetas, phis = measurement_grid(opts.grid_theta, opts.grid_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = _conditional_entropy_bloch(bloch, measured, tt, pp)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    x0 = np.array([thetas[i], phis[j]])

    objective = _scalar_objective(bloch, measured)
    step = np.array([np.pi / (opts.grid_theta - 1), 2 * np.pi / opts.grid_phi])
    simplex = np.array([x0, x0 + [step[0], 0.0], x0 + [0.0, step[1]]])
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": opts.xatol,
            "fatol": opts.fatol,
            "maxiter": opts.max_iter,
            "maxfev": 4 * opts.max_iter,
        },
    )
    best_x, best_f = (res.x, float(res.fun)) if res.fun <= vals[i, j] else (x0, float(vals[i, j]))
    theta_m = float(np.mod(best_x[0], 2 * np.pi))
    phi_m = float(best_x[1])
    if theta_m > np.pi:
        theta_m, phi_m = 2 * np.pi - theta_m, phi_m + np.pi
    basis = MeasurementBasis(theta_m, float(np.mod(phi_m, 2 * np.pi)))
    return ClassicalCorrelation(s_keep - best_f, basis, bool(res.success))


def quantum_discord(rho, measured="B", opts=DEFAULT_OPTS):
    value = mutual_information(rho) - classical_correlation(rho, measured, opts).value
    return max(0.0, value)


def gmqd(rho, measured="A"):
    """Geometric discord: squared Hilbert-Schmidt distance to the closest classical-quantum state.

    For two qubits this is (|x|^2 + ||R||_F^2 - k_max)/4 with k_max the top
    eigenvalue of x x^T + R R^T, x being the measured qubit's Bloch vector.
    """
    _other(measured)
    b = bloch_decompose(rho)
    x, R = (b.x, b.R) if measured == "A" else (b.y, b.R.T)
    K = np.outer(x, x) + R @ R.T
    k_max = np.linalg.eigvalsh(K)[-1]
    return max(0.0, float(0.25 * (x @ x + np.sum(R**2) - k_max)))


def negativity(rho):
    """-2 times the sum of the negative eigenvalues of the B-partial transpose."""
    w = herm_eigvals(partial_transpose(rho, "B"))
    return max(0.0, float(-2.0 * np.sum(w[w < -PT_ZERO])))


def correlation_report(rho, measured="B", opts=DEFAULT_OPTS, gmqd_measured="A"):
    rho = as_cmatrix(rho, dims=(4,))
    mi = mutual_information(rho)
    cc = classical_correlation(rho, measured, opts)
    return CorrelationReport(
        mutual_info=max(0.0, mi),
        classical_corr=max(0.0, cc.value),
        discord=max(0.0, mi - cc.value),
        gmqd=gmqd(rho, gmqd_measured),
        negativity=negativity(rho),
        argmax_basis=cc.basis,
        converged=cc.converged,
    )
