"""Quantum and classical correlations of two-qubit states and two exactly solvable models."""
from .measures import (
    CorrelationReport,
    MeasurementBasis,
    OptimizerSettings,
    classical_correlation,
    conditional_entropy,
    correlation_report,
    gmqd,
    mutual_information,
    negativity,
    quantum_discord,
    von_neumann_entropy,
)
from .models import (
    Model,
    ModelParams,
    cavity_state,
    decoherence_factor,
    dephasing_state,
    model_state,
)
from .states import DensityMatrix, PhysicsError, bloch_decompose, classical_quantum, validate, werner

__version__ = "0.1.0"
