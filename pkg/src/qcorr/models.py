"""Closed-form two-qubit states for the two models.

``Model.CAVITY``: two non-interacting qubits resonantly coupled to one
vacuum cavity mode, started in the Werner state built on |11>, |00>.

``Model.DEPHASING``: two flip-flop coupled qubits dephased by a bosonic
bath, started in the Werner state built on |10>, |01>.

Time enters only as the dimensionless ``lambda_t``. All matrices use the
basis order |00>, |01>, |10>, |11>.
"""
import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .qmat import herm_eigvals, hs_norm_sq
from .states import werner

# cavity Rabi frequency in units of lambda (sqrt(6) = 2.4495 to five digits)
VARPI_OVER_LAMBDA = math.sqrt(6.0)
CAVITY_PERIOD = 2 * math.pi / VARPI_OVER_LAMBDA


class Model(str, enum.Enum):
    CAVITY = "cavity"
    DEPHASING = "dephasing"


@dataclass(frozen=True)
class ModelParams:
    p: float
    theta: float
    gamma_over_lambda: float = 0.0
    lambda_t: float = 0.0
    model: Model = Model.CAVITY

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"purity p must lie in [0, 1], got {self.p}")
        if not self.gamma_over_lambda >= 0.0:
            raise ValueError(f"gamma/lambda must be >= 0, got {self.gamma_over_lambda}")
        if not math.isfinite(self.lambda_t):
            raise ValueError(f"lambda_t must be finite, got {self.lambda_t}")
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta}")
        object.__setattr__(self, "model", Model(self.model))

    def at(self, lambda_t):
        return replace(self, lambda_t=lambda_t)


class CavityCoefficients(NamedTuple):
    a1: float
    a2: float
    a3: float
    a4: float
    a5: float


class DephasingCoefficients(NamedTuple):
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: complex
    beta: float
    L_d: float


class DephasingDiagnostics(NamedTuple):
    """Cross-checks of the dephasing state against closed forms.

    ``literal_radicand`` is (1+p)^2 - 16|alpha4|^2 from the naive closed-form eigenvalue
    formula; ``block_radicand`` is the radicand of the exact 2x2-block
    spectrum written in the same 1/4[(1+p) +/- sqrt(.)] form.
    ``werner_deviation`` is the Hilbert-Schmidt distance between the state at
    lambda_t = 0 and the Werner state it is meant to start from.
    """

    literal_radicand: float
    block_radicand: float
    literal_eigenvalues: np.ndarray
    block_eigenvalues: np.ndarray
    eigenvalue_residual: float
    werner_deviation: float
    min_eigenvalue: float


def _require(params, model):
    if params.model is not model:
        raise ValueError(f"expected {model.value} parameters, got {params.model.value}")


def cavity_coefficients(params):
    _require(params, Model.CAVITY)
    p, th = params.p, params.theta
    c = math.cos(VARPI_OVER_LAMBDA * params.lambda_t)
    s2 = math.sin(th) ** 2
    mixed = (1 - p) / 4
    a1 = mixed + p / 9 * (2 + c) ** 2 * s2
    a2 = mixed + p * math.cos(th) ** 2 + 2 * p / 9 * (1 - c) ** 2 * s2
    a3 = p / 3 * (2 + c) * math.sin(th) * math.cos(th)
    a4 = mixed + p / 6 * (1 - c * c) * s2
    return CavityCoefficients(a1, a2, a3, a4, a4 - mixed)


def cavity_state(params):
    a1, a2, a3, a4, a5 = cavity_coefficients(params)
    rho = np.diag([a2, a4, a4, a1]).astype(complex)
    rho[0, 3] = rho[3, 0] = a3
    rho[1, 2] = rho[2, 1] = a5
    return rho


def cavity_eigvals_analytic(params):
    """Closed-form spectrum, descending.

    The {|00>, |11>} block uses the discriminant (a1 - a2)^2 + 4 a3^2.
    """
    a1, a2, a3, a4, a5 = cavity_coefficients(params)
    rad = math.sqrt((a1 - a2) ** 2 + 4 * a3**2)
    w = [a4 + a5, a4 - a5, 0.5 * (a1 + a2 + rad), 0.5 * (a1 + a2 - rad)]
    return np.sort(w)[::-1]


def cavity_reduced(params, which="A"):
    """Marginal of either qubit; both are diag(a2 + a4, a1 + a4) in |0>, |1>."""
    if which not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")
    a1, a2, _, a4, _ = cavity_coefficients(params)
    return np.diag([a2 + a4, a1 + a4]).astype(complex)


def decoherence_factor(gamma_over_lambda, lambda_t):
    """Effective single-rate dephasing factor exp(-(gamma/lambda) * lambda_t)."""
    if gamma_over_lambda < 0 or lambda_t < 0:
        raise ValueError("gamma/lambda and lambda_t must be non-negative")
    return math.exp(-gamma_over_lambda * lambda_t)


def dephasing_coefficients(params, decoherence=decoherence_factor):
    """Matrix elements of the dephasing state.

    ``decoherence(gamma_over_lambda, lambda_t)`` supplies L_d; swap it to
    model another bath spectrum.
    """
    _require(params, Model.DEPHASING)
    p, th = params.p, params.theta
    L = float(decoherence(params.gamma_over_lambda, params.lambda_t))
    beta = p / 2 * L * math.cos(2 * th) * math.cos(2 * params.lambda_t)
    alpha4 = complex(p / 2 * math.sin(2 * th), -beta)
    return DephasingCoefficients(
        (1 - p) / 4, (1 + p) / 4 - beta, (1 + p) / 4 + beta, alpha4, beta, L
    )


def dephasing_state(params, decoherence=decoherence_factor):
    a1, a2, a3, a4, _, _ = dephasing_coefficients(params, decoherence)
    rho = np.diag([a1, a3, a2, a1]).astype(complex)
    rho[2, 1] = a4
    rho[1, 2] = a4.conjugate()
    return rho


def dephasing_eigvals_analytic(params, decoherence=decoherence_factor):
    """Exact spectrum {alpha1, alpha1} plus the {|01>, |10>} block pair, descending."""
    a1, a2, a3, a4, _, _ = dephasing_coefficients(params, decoherence)
    rad = math.sqrt((a2 - a3) ** 2 + 4 * abs(a4) ** 2)
    w = [a1, a1, 0.5 * (a2 + a3 + rad), 0.5 * (a2 + a3 - rad)]
    return np.sort(w)[::-1]


def dephasing_reduced(params, which="A", decoherence=decoherence_factor):
    """Diagonal marginals in the |0>, |1> basis; A and B swap populations."""
    a1, a2, a3, _, _, _ = dephasing_coefficients(params, decoherence)
    if which == "A":
        return np.diag([a1 + a3, a1 + a2]).astype(complex)
    if which == "B":
        return np.diag([a1 + a2, a1 + a3]).astype(complex)
    raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")


def dephasing_diagnostics(params, decoherence=decoherence_factor):
    p = params.p
    a1, _, _, a4, beta, _ = dephasing_coefficients(params, decoherence)
    literal = (1 + p) ** 2 - 16 * abs(a4) ** 2
    block = 16 * (beta**2 + abs(a4) ** 2)
    root = np.emath.sqrt(literal)
    literal_eigs = np.array([a1, a1, (1 + p + root) / 4, (1 + p - root) / 4])
    block_eigs = np.array([a1, a1, (1 + p + math.sqrt(block)) / 4, (1 + p - math.sqrt(block)) / 4])
    rho0 = dephasing_state(params.at(0.0), decoherence)
    dev = math.sqrt(hs_norm_sq(rho0 - werner(p, params.theta, "10,01")))
    min_eig = float(herm_eigvals(dephasing_state(params, decoherence))[-1])
    return DephasingDiagnostics(
        float(literal),
        float(block),
        literal_eigs,
        block_eigs,
        float(np.max(np.abs(literal_eigs - block_eigs))),
        dev,
        min_eig,
    )


def model_state(params, decoherence=decoherence_factor):
    if params.model is Model.CAVITY:
        return cavity_state(params)
    return dephasing_state(params, decoherence)


def model_eigvals_analytic(params, decoherence=decoherence_factor):
    if params.model is Model.CAVITY:
        return cavity_eigvals_analytic(params)
    return dephasing_eigvals_analytic(params, decoherence)
