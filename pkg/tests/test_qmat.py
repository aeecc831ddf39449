import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from oracles import eigvals_2x2, random_density, random_qubit_density
from qcorr.qmat import (
    I2,
    SX,
    SZ,
    herm_eig,
    hs_norm_sq,
    kron,
    partial_trace,
    partial_transpose,
)

finite = st.floats(-10, 10, allow_nan=False)
cplx2 = arrays(complex, (2, 2), elements=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
cplx4 = arrays(complex, (4, 4), elements=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))

BELL = np.zeros((4, 4))
BELL[0, 0] = BELL[0, 3] = BELL[3, 0] = BELL[3, 3] = 0.5


def hermitian(m):
    return m + m.conj().T


class TestKron:
    def test_identity(self):
        assert_allclose(kron(I2, I2), np.eye(4))

    def test_sigma_z_left(self):
        assert_allclose(kron(SZ, I2), np.diag([1, 1, -1, -1]))

    def test_sigma_x_sigma_x(self):
        assert_allclose(kron(SX, SX), np.fliplr(np.eye(4)))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            kron(np.eye(4), I2)

    @given(cplx2, cplx2)
    def test_trace_factorises(self, a, b):
        assert np.trace(kron(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-9)


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(0)
        a, b = random_qubit_density(rng), random_qubit_density(rng)
        assert_allclose(partial_trace(np.kron(a, b), "A"), a, atol=1e-15)
        assert_allclose(partial_trace(np.kron(a, b), "B"), b, atol=1e-15)

    def test_bell_marginal(self):
        assert_allclose(partial_trace(BELL, "A"), I2 / 2)
        assert_allclose(partial_trace(BELL, "B"), I2 / 2)

    def test_bad_label(self):
        with pytest.raises(ValueError):
            partial_trace(BELL, "C")

    @given(cplx4, cplx4, finite, finite)
    def test_linear(self, r1, r2, alpha, beta):
        for keep in "AB":
            lhs = partial_trace(alpha * r1 + beta * r2, keep)
            rhs = alpha * partial_trace(r1, keep) + beta * partial_trace(r2, keep)
            assert_allclose(lhs, rhs, atol=1e-12)

    @given(cplx4)
    def test_trace_preserved(self, r):
        for keep in "AB":
            assert np.trace(partial_trace(r, keep)) == pytest.approx(np.trace(r), abs=1e-10)


class TestPartialTranspose:
    def test_maximally_mixed(self):
        assert_allclose(partial_transpose(np.eye(4) / 4, "B"), np.eye(4) / 4)

    def test_bell_spectrum(self):
        pt = partial_transpose(BELL, "B")
        assert_allclose(np.sort(np.linalg.eigvalsh(pt)), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_a_and_b_are_related_by_full_transpose(self):
        r = random_density(np.random.default_rng(1))
        assert_allclose(partial_transpose(r, "A"), partial_transpose(r, "B").T)

    @given(cplx4)
    def test_involution(self, r):
        for part in "AB":
            assert np.array_equal(partial_transpose(partial_transpose(r, part), part), r)

    @given(cplx4)
    def test_hermitian_and_trace(self, r):
        h = hermitian(r)
        pt = partial_transpose(h, "B")
        assert_allclose(pt, pt.conj().T)
        assert np.trace(pt) == pytest.approx(np.trace(h))


class TestHermEig:
    def test_diagonal(self):
        res = herm_eig(np.diag([1.0, 3.0, 4.0, 2.0]))
        assert_allclose(res.eigenvalues, [4, 3, 2, 1])

    def test_pauli_x(self):
        assert_allclose(herm_eig(SX).eigenvalues, [1, -1], atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            herm_eig(np.array([[0, 1], [0, 0]]))

    def test_rejects_other_dims(self):
        with pytest.raises(ValueError):
            herm_eig(np.eye(3))

    @settings(max_examples=200)
    @given(cplx4)
    def test_reconstruction_and_orthonormality(self, r):
        h = hermitian(r)
        w, v = herm_eig(h)
        scale = max(1.0, np.sqrt(hs_norm_sq(h)))
        assert np.all(np.diff(w) <= 0)
        assert np.sqrt(hs_norm_sq(h - v @ np.diag(w) @ v.conj().T)) <= 1e-10 * scale
        assert np.sqrt(hs_norm_sq(v.conj().T @ v - np.eye(4))) <= 1e-10
        assert w.sum() == pytest.approx(np.trace(h).real, abs=1e-10 * scale)

    @settings(max_examples=200)
    @given(cplx2)
    def test_matches_characteristic_polynomial(self, r):
        h = hermitian(r)
        assert_allclose(herm_eig(h).eigenvalues, eigvals_2x2(h), atol=1e-10 * max(1, np.abs(h).max()))

    def test_degenerate_spectrum(self):
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        h = q @ np.diag([1.0, 1.0, 0.0, 0.0]) @ q.conj().T
        w, v = herm_eig(h)
        assert_allclose(w, [1, 1, 0, 0], atol=1e-12)
        assert_allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-12)


class TestHSNorm:
    def test_identity(self):
        assert hs_norm_sq(np.eye(4)) == 4

    def test_zero(self):
        assert hs_norm_sq(np.zeros((4, 4))) == 0

    def test_pauli_product(self):
        assert hs_norm_sq(np.kron(SX, SZ)) == 4

    @given(cplx4)
    def test_singular_values(self, a):
        assert hs_norm_sq(a) == pytest.approx(np.sum(np.linalg.svd(a, compute_uv=False) ** 2), rel=1e-9, abs=1e-12)
