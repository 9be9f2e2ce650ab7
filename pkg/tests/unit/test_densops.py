"""
Unit tests for dense operator algebra
"""
import math

import numpy as np
import pytest

from core.densops import (
    DensityOperator,
    HermitianOperator,
    SubsystemLayout,
    dephase,
    entropy_of_probabilities,
    hs_norm_sq,
    measured_relative_entropy,
    mutual_information,
    partial_trace,
    partial_transpose,
    reduced,
    spectrum,
    tensor_product,
    trace_norm,
    von_neumann_entropy,
)
from core.errors import LayoutError, NonHermitianError, PSDViolationError, TraceError

AB = SubsystemLayout.qubits("A", "B")


def werner(p):
    psi = np.array([0, 1, 1, 0]) / math.sqrt(2)
    return DensityOperator((1 - p) / 4 * np.eye(4) + p * np.outer(psi, psi), AB)


def random_density(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


class TestSubsystemLayout:
    """Tests for SubsystemLayout"""

    def test_dim_and_positions(self):
        """Test total dimension and label lookup"""
        layout = SubsystemLayout(("nB", "A", "B"), (5, 2, 2))
        assert layout.dim == 20
        assert layout.position("A") == 1
        assert layout.dim_of("nB") == 5
        assert "B" in layout
        assert "C" not in layout

    def test_unknown_label(self):
        """Test unknown labels raise LayoutError"""
        with pytest.raises(LayoutError):
            AB.position("C")

    def test_duplicate_names_rejected(self):
        """Test names must be unique"""
        with pytest.raises(LayoutError):
            SubsystemLayout(("A", "A"), (2, 2))

    def test_concat_collision(self):
        """Test concatenating layouts with shared names fails"""
        with pytest.raises(LayoutError):
            AB.concat(SubsystemLayout.qubits("B"))

    def test_without(self):
        """Test dropping factors keeps order"""
        layout = SubsystemLayout.qubits("A", "B", "C").without(["B"])
        assert layout.factor_names == ("A", "C")


class TestOperatorValidation:
    """Tests for construction-time checks"""

    def test_non_hermitian(self):
        """Test NonHermitianError reports the deviation"""
        with pytest.raises(NonHermitianError) as info:
            HermitianOperator([[0, 1], [0, 0]])
        assert info.value.deviation == pytest.approx(1.0)

    def test_trace(self):
        """Test TraceError for non-unit trace"""
        with pytest.raises(TraceError):
            DensityOperator(np.eye(2))

    def test_psd(self):
        """Test PSDViolationError for a negative eigenvalue"""
        with pytest.raises(PSDViolationError):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_layout_dimension_mismatch(self):
        """Test layout must match the matrix size"""
        with pytest.raises(LayoutError):
            DensityOperator(np.eye(4) / 4, SubsystemLayout.qubits("A"))

    def test_data_is_read_only(self):
        """Test operators are immutable"""
        rho = werner(0.5)
        with pytest.raises(ValueError):
            rho.data[0, 0] = 1.0

    def test_from_ket_normalizes(self):
        """Test from_ket builds a unit-trace projector"""
        rho = DensityOperator.from_ket([1, 1], SubsystemLayout.qubits("A"))
        np.testing.assert_allclose(rho.data, np.full((2, 2), 0.5))


class TestPartialOperations:
    """Tests for partial trace and partial transpose"""

    def test_partial_trace_of_product(self):
        """Test Tr_B(rho_A x rho_B) = rho_A"""
        rho_a = DensityOperator(random_density(2, 1), SubsystemLayout.qubits("A"))
        rho_b = DensityOperator(random_density(3, 2), SubsystemLayout(("B",), (3,)))
        joint = tensor_product(rho_a, rho_b)
        np.testing.assert_allclose(partial_trace(joint, "B").data, rho_a.data, atol=1e-14)
        np.testing.assert_allclose(partial_trace(joint, "A").data, rho_b.data, atol=1e-14)

    def test_partial_trace_several_factors(self):
        """Test tracing a party that owns two factors"""
        layout = SubsystemLayout(("nB", "A", "B"), (3, 2, 2))
        rho = DensityOperator(random_density(12, 3), layout)
        direct = partial_trace(rho, ["nB", "B"])
        stepwise = partial_trace(partial_trace(rho, "B"), "nB")
        np.testing.assert_allclose(direct.data, stepwise.data, atol=1e-14)
        assert direct.layout.factor_names == ("A",)

    def test_reduced_keeps_layout_order(self):
        """Test reduced() on the named factors"""
        rho = DensityOperator(random_density(8, 4), SubsystemLayout.qubits("A", "B", "C"))
        assert reduced(rho, ["C", "A"]).layout.factor_names == ("A", "C")

    def test_partial_transpose_werner_spectrum(self):
        """Test PT eigenvalues {(1+p)/4 x3, (1-3p)/4}"""
        p = 0.6
        pt = partial_transpose(werner(p), "A")
        expected = sorted([(1 + p) / 4] * 3 + [(1 - 3 * p) / 4])
        np.testing.assert_allclose(sorted(spectrum(pt).eigenvalues), expected, atol=1e-12)

    def test_partial_transpose_is_involution(self):
        """Test PT applied twice is the identity"""
        rho = DensityOperator(random_density(4, 5), AB)
        twice = partial_transpose(partial_transpose(rho, "B"), "B")
        np.testing.assert_allclose(twice.data, rho.data, atol=1e-15)

    def test_partial_transpose_stack(self):
        """Test a leading batch axis is transposed matrix by matrix"""
        from core.densops import partial_transpose_array

        stack = np.stack([werner(0.2).data, werner(0.9).data])
        batched = partial_transpose_array(stack, AB, "A")
        for i, p in enumerate((0.2, 0.9)):
            np.testing.assert_allclose(batched[i], partial_transpose(werner(p), "A").data)


class TestSpectralQuantities:
    """Tests for entropies and norms"""

    def test_spectrum_descending(self):
        """Test eigenvalues come sorted descending"""
        eigs = spectrum(werner(0.5)).eigenvalues
        assert list(eigs) == sorted(eigs, reverse=True)

    def test_spectrum_total_and_minimum(self):
        """Test eigenvalues of a density operator sum to one with the smallest last"""
        result = spectrum(werner(0.2))
        assert result.total == pytest.approx(1.0, abs=1e-12)
        assert result.minimum == pytest.approx(0.2, abs=1e-12)
        assert result.minimum == result.eigenvalues[-1]

    def test_werner_entropy(self):
        """Test S(rho_AB) at p = 0.5"""
        assert von_neumann_entropy(werner(0.5)) == pytest.approx(1.548795, abs=1e-6)

    def test_entropy_zero_log_zero(self):
        """Test 0 log 0 = 0 and tiny negatives are clamped"""
        assert entropy_of_probabilities(np.array([1.0, 0.0, -1e-17])) == pytest.approx(0.0)

    def test_entropy_rejects_negative_spectrum(self):
        """Test clearly negative eigenvalues are an error"""
        with pytest.raises(PSDViolationError):
            von_neumann_entropy(np.diag([1.1, -0.1]))

    def test_maximally_mixed(self):
        """Test S = log2 d for the maximally mixed state"""
        rho = DensityOperator.maximally_mixed(SubsystemLayout.qubits("A", "B", "C"))
        assert von_neumann_entropy(rho) == pytest.approx(3.0)

    def test_trace_norm_and_hs_norm(self):
        """Test norms of a diagonal indefinite operator"""
        h = np.diag([0.5, -0.25, 0.0])
        assert trace_norm(h) == pytest.approx(0.75)
        assert hs_norm_sq(h) == pytest.approx(0.3125)

    def test_mutual_information_bell(self):
        """Test I(A:B) = 2 for a Bell state"""
        assert mutual_information(werner(1.0), "A", "B") == pytest.approx(2.0, abs=1e-12)


class TestDephasing:
    """Tests for dephase and the measured relative entropy"""

    def test_dephase_in_z_removes_coherences(self):
        """Test z-dephasing of B keeps only the diagonal for the Werner state"""
        z = [np.diag([1, 0]), np.diag([0, 1])]
        measured = dephase(werner(0.6), {"B": z})
        np.testing.assert_allclose(measured.data, np.diag(np.diag(werner(0.6).data)), atol=1e-15)

    def test_relative_entropy_is_nonnegative(self):
        """Test S(phi(rho)) - S(rho) >= 0"""
        z = [np.diag([1, 0]), np.diag([0, 1])]
        rho = DensityOperator(random_density(4, 7), AB)
        measured = dephase(rho, {"A": z, "B": z})
        assert measured_relative_entropy(rho, measured) >= -1e-12
