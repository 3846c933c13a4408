import numpy as np
import pytest

from qcollide import DensityMatrix, PreconditionError


def test_valid_construction(make_density):
    rho = DensityMatrix(make_density(4), 2)
    assert rho.dim == 4
    assert abs(np.trace(rho.mat) - 1.0) < 1e-12


def test_rejects_wrong_qubit_count(make_density):
    with pytest.raises(PreconditionError):
        DensityMatrix(make_density(4), 1)


def test_rejects_non_hermitian():
    mat = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
    with pytest.raises(PreconditionError, match="Hermitian"):
        DensityMatrix(mat, 1)


def test_rejects_wrong_trace():
    with pytest.raises(PreconditionError, match="trace"):
        DensityMatrix(np.eye(2, dtype=complex), 1)


def test_rejects_negative_eigenvalue():
    mat = np.diag([1.5, -0.5]).astype(complex)
    with pytest.raises(PreconditionError, match="positive"):
        DensityMatrix(mat, 1)


def test_matrix_is_read_only():
    rho = DensityMatrix.maximally_mixed(1)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 5.0


def test_from_vector_normalises():
    rho = DensityMatrix.from_vector([2.0, 0.0])
    assert np.abs(rho.mat - np.diag([1.0, 0.0])).max() < 1e-12
    assert rho.purity() == pytest.approx(1.0)


def test_computational_basis_bit_convention():
    # qubit 0 is the most significant bit: "10" is index 2
    rho = DensityMatrix.computational_basis(2, "10")
    expected = np.zeros((4, 4), dtype=complex)
    expected[2, 2] = 1.0
    assert np.array_equal(rho.mat, expected)
    assert rho.isclose(DensityMatrix.computational_basis(2, 2))


def test_maximally_mixed():
    rho = DensityMatrix.maximally_mixed(2)
    assert np.array_equal(rho.mat, np.eye(4) / 4)
    assert rho.purity() == pytest.approx(0.25)


def test_partial_trace_method(make_density, make_pure):
    psi = make_pure(2)
    left = DensityMatrix.from_vector(psi)
    right = DensityMatrix(make_density(2), 1)
    joint = DensityMatrix(np.kron(left.mat, right.mat), 2)
    assert joint.partial_trace([0]).isclose(left)
    assert joint.partial_trace([1]).isclose(right)
