import numpy as np
import pytest

from qcollide import (
    ConfigurationError,
    DensityMatrix,
    KrausChannel,
    ModelConfig,
    PreconditionError,
    apply_channel,
    depolarising_channel,
    embedded_pauli,
    heisenberg_hamiltonian,
    linalg,
    partial_swap,
    swap_operator,
)
from qcollide.model import IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z


class TestModelConfig:
    def test_scalar_couplings_broadcast(self):
        config = ModelConfig.uniform(3, eta=0.3, omega=0.2)
        assert config.j_chain == (10.0, 10.0)
        assert config.j_res == (1.0, 1.0)

    def test_single_site_has_no_bonds(self):
        config = ModelConfig(n_sites=1, eta=0.0, omega=0.0)
        assert config.j_chain == ()
        assert config.j_res == ()

    def test_eta_range(self):
        with pytest.raises(ConfigurationError, match=r"\[0, pi/2\]"):
            ModelConfig(n_sites=1, eta=2.0, omega=0.0)

    def test_omega_range(self):
        with pytest.raises(ConfigurationError, match=r"\[0, 1\]"):
            ModelConfig(n_sites=1, eta=0.0, omega=-0.1)

    def test_coupling_length_mismatch(self):
        with pytest.raises(ConfigurationError, match="length"):
            ModelConfig(n_sites=3, eta=0.0, omega=0.0, j_chain=(1.0,), j_res=(1.0, 1.0))

    def test_dt_positive(self):
        with pytest.raises(ConfigurationError, match="dt"):
            ModelConfig(n_sites=1, eta=0.0, omega=0.0, dt=0.0)


class TestEmbeddedPauli:
    def test_single_qubit(self):
        assert np.array_equal(embedded_pauli("z", 0, 1), PAULI_Z)

    def test_embedding_position(self):
        assert np.array_equal(embedded_pauli("x", 1, 2), np.kron(IDENTITY_2, PAULI_X))

    def test_commuting_factors(self):
        product = embedded_pauli("x", 0, 2) @ embedded_pauli("x", 1, 2)
        assert np.array_equal(product, np.kron(PAULI_X, PAULI_X))

    def test_index_out_of_range(self):
        with pytest.raises(PreconditionError):
            embedded_pauli("x", 2, 2)


class TestHeisenbergHamiltonian:
    def test_no_bonds_is_zero(self):
        h = heisenberg_hamiltonian((), 0, 2)
        assert np.array_equal(h, np.zeros((4, 4)))

    def test_two_site_spectrum(self):
        h = heisenberg_hamiltonian((1.0,), 0, 2)
        w = np.linalg.eigvalsh(h)
        assert np.abs(w - np.array([-1.5, 0.5, 0.5, 0.5])).max() < 1e-12

    def test_commutes_with_total_magnetisation(self):
        h = heisenberg_hamiltonian((10.0, 10.0), 0, 3)
        total_z = sum(embedded_pauli("z", q, 3) for q in range(3))
        assert np.abs(h @ total_z - total_z @ h).max() < 1e-12

    def test_offset_embedding_acts_as_identity_elsewhere(self, make_density):
        h = heisenberg_hamiltonian((1.0,), 1, 3)
        # no coupling touches qubit 0, so [h, Z_0] = 0
        z0 = embedded_pauli("z", 0, 3)
        assert np.abs(h @ z0 - z0 @ h).max() < 1e-12

    def test_does_not_fit(self):
        with pytest.raises(ConfigurationError):
            heisenberg_hamiltonian((1.0, 1.0), 1, 3)


class TestSwapOperators:
    def test_swap_basis_action(self):
        s = swap_operator(0, 1, 2)
        ket01 = np.array([0, 1, 0, 0], dtype=complex)
        ket10 = np.array([0, 0, 1, 0], dtype=complex)
        assert np.array_equal(s @ ket01, ket10)
        ket00 = np.array([1, 0, 0, 0], dtype=complex)
        assert np.array_equal(s @ ket00, ket00)

    def test_swap_is_involution(self):
        s = swap_operator(0, 2, 3)
        assert np.array_equal(s @ s, np.eye(8))

    def test_swap_pauli_identity(self):
        # S = (II + XX + YY + ZZ)/2, verified entrywise
        expected = 0.5 * (np.eye(4) + np.kron(PAULI_X, PAULI_X)
                          + np.kron(PAULI_Y, PAULI_Y) + np.kron(PAULI_Z, PAULI_Z))
        assert np.abs(swap_operator(0, 1, 2) - expected).max() < 1e-15

    def test_swap_same_qubit_rejected(self):
        with pytest.raises(PreconditionError):
            swap_operator(1, 1, 2)

    def test_partial_swap_limits(self, make_pure):
        assert np.abs(partial_swap(0.0, 0, 1, 2) - np.eye(4)).max() == 0
        psi, phi = make_pure(2), make_pure(2)
        product = np.kron(psi, phi)
        swapped = partial_swap(np.pi / 2, 0, 1, 2) @ product
        assert np.abs(swapped - 1j * np.kron(phi, psi)).max() < 1e-12

    def test_partial_swap_intermediate(self):
        ket10 = np.array([0, 0, 1, 0], dtype=complex)
        ket01 = np.array([0, 1, 0, 0], dtype=complex)
        out = partial_swap(np.pi / 4, 0, 1, 2) @ ket10
        expected = (ket10 + 1j * ket01) / np.sqrt(2)
        assert np.abs(out - expected).max() < 1e-12

    @pytest.mark.parametrize("eta", np.linspace(0.0, np.pi / 2, 7))
    def test_partial_swap_unitary_and_exponential_form(self, eta):
        u = partial_swap(eta, 0, 1, 2)
        assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-10
        generator = -0.5 * (np.kron(PAULI_X, PAULI_X) + np.kron(PAULI_Y, PAULI_Y)
                            + np.kron(PAULI_Z, PAULI_Z))
        exponential = np.exp(1j * eta / 2) * linalg.expm_hermitian(generator, eta)
        assert np.abs(u - exponential).max() < 1e-10

    def test_partial_swap_conserves_pair_magnetisation(self):
        u = partial_swap(0.7, 0, 1, 2)
        total_z = embedded_pauli("z", 0, 2) + embedded_pauli("z", 1, 2)
        assert np.abs(u @ total_z - total_z @ u).max() < 1e-12

    def test_partial_swap_eta_range(self):
        with pytest.raises(ConfigurationError):
            partial_swap(1.7, 0, 1, 2)


class TestDepolarisingChannel:
    def test_omega_zero_is_identity(self, make_density):
        channel = depolarising_channel(0.0, 0, 1)
        rho = DensityMatrix(make_density(2), 1)
        assert apply_channel(channel, rho).isclose(rho)

    def test_omega_one_fully_mixes(self, make_density):
        channel = depolarising_channel(1.0, 0, 1)
        rho = DensityMatrix(make_density(2), 1)
        out = apply_channel(channel, rho)
        assert np.abs(out.mat - np.eye(2) / 2).max() < 1e-12

    def test_half_strength_on_ground_state(self):
        channel = depolarising_channel(0.5, 0, 1)
        out = apply_channel(channel, DensityMatrix.computational_basis(1, 0))
        assert np.abs(out.mat - np.diag([0.75, 0.25])).max() < 1e-12

    @pytest.mark.parametrize("omega", [0.0, 0.3, 1.0])
    def test_completeness(self, omega):
        channel = depolarising_channel(omega, 1, 2)
        total = sum(k.conj().T @ k for k in channel.ops)
        assert np.abs(total - np.eye(4)).max() < 1e-12

    def test_convex_form_equivalence(self, make_density):
        # channel output equals (1-omega)*rho + omega*(I_m/2 (x) Tr_m rho)
        omega = 0.37
        channel = depolarising_channel(omega, 1, 2)
        rho = DensityMatrix(make_density(4), 2)
        out = apply_channel(channel, rho)
        reduced = linalg.partial_trace(rho.mat, [0], 2)
        expected = (1 - omega) * rho.mat + omega * np.kron(reduced, np.eye(2) / 2)
        assert np.abs(out.mat - expected).max() < 1e-12

    def test_channels_on_distinct_qubits_commute(self, make_density):
        rho = DensityMatrix(make_density(4), 2)
        ch0 = depolarising_channel(0.6, 0, 2)
        ch1 = depolarising_channel(0.6, 1, 2)
        one_way = apply_channel(ch1, apply_channel(ch0, rho))
        other_way = apply_channel(ch0, apply_channel(ch1, rho))
        assert np.abs(one_way.mat - other_way.mat).max() < 1e-12

    def test_omega_range(self):
        with pytest.raises(ConfigurationError):
            depolarising_channel(1.2, 0, 1)


class TestApplyChannel:
    def test_identity_channel(self, make_density):
        rho = DensityMatrix(make_density(2), 1)
        identity = KrausChannel((np.eye(2, dtype=complex),))
        assert apply_channel(identity, rho).isclose(rho)

    def test_full_depolarise_leaves_other_marginals(self, make_pure):
        a = DensityMatrix.from_vector(make_pure(2))
        b = DensityMatrix.from_vector(make_pure(2))
        joint = DensityMatrix(np.kron(a.mat, b.mat), 2)
        out = apply_channel(depolarising_channel(1.0, 1, 2), joint)
        assert out.partial_trace([0]).isclose(a)
        assert np.abs(out.partial_trace([1]).mat - np.eye(2) / 2).max() < 1e-12

    def test_trace_preserved_on_random_inputs(self, make_density):
        channel = depolarising_channel(0.8, 0, 2)
        for _ in range(5):
            rho = DensityMatrix(make_density(4), 2)
            out = apply_channel(channel, rho)
            assert abs(np.trace(out.mat) - 1.0) < 1e-12

    def test_dim_mismatch(self, make_density):
        channel = depolarising_channel(0.5, 0, 1)
        with pytest.raises(PreconditionError):
            apply_channel(channel, DensityMatrix(make_density(4), 2))

    def test_incomplete_kraus_set_rejected(self):
        with pytest.raises(PreconditionError, match="completeness"):
            KrausChannel((0.5 * np.eye(2, dtype=complex),))
