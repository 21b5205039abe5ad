import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeficit.entropy import (
    conditional_tsallis,
    entropy_difference,
    mutual_entropy,
    relative_entropy,
    tsallis,
    tsallis_infinity_criterion,
    von_neumann,
)
from qdeficit.linalg import CheckError, DensityMatrix, tensor_product
from qdeficit.states import (
    PureStateAmplitudes,
    example_state,
    isospectral_pair,
    pure_density,
    random_mixed,
    random_pure,
    werner,
)
from qdeficit.structure import decohere

LN2 = math.log(2.0)
LN3 = math.log(3.0)


def binary_entropy(p):
    total = 0.0
    for x in (p, 1 - p):
        if x > 0:
            total -= x * math.log(x)
    return total


class TestVonNeumann:
    def test_pure_state_zero(self):
        assert von_neumann(example_state("E4")) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_qubit(self):
        assert von_neumann(DensityMatrix(np.eye(2) / 2, (2, 1))) == pytest.approx(LN2)

    def test_werner_half(self):
        expected = -0.625 * math.log(0.625) - 3 * 0.125 * math.log(0.125)
        assert von_neumann(werner(0.5)) == pytest.approx(expected, abs=1e-12)


class TestTsallis:
    def test_pure_state_zero_for_any_q(self):
        rho = example_state("E4")
        for q in (0.5, 1.0, 2.0, 5.0, 50.0):
            assert tsallis(rho, q) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_q2(self):
        rho = DensityMatrix(np.eye(4) / 4, (2, 2))
        assert tsallis(rho, 2.0) == pytest.approx(0.75, abs=1e-14)

    def test_werner_half_q2(self):
        expected = (0.625**2 + 3 * 0.125**2 - 1) / (1 - 2)
        assert tsallis(werner(0.5), 2.0) == pytest.approx(expected, abs=1e-14)

    def test_rejects_nonpositive_q(self):
        for q in (0.0, -1.0):
            with pytest.raises(ValueError):
                tsallis(werner(0.5), q)

    def test_continuity_at_q_one(self):
        for rho in (werner(0.5), example_state("E1"), random_mixed(4, 3)):
            s1 = von_neumann(rho)
            above = tsallis(rho, 1.0 + 1e-4)
            below = tsallis(rho, 1.0 - 1e-4)
            assert abs(above - s1) <= 1e-3
            assert abs(below - s1) <= 1e-3
            # the symmetric mean cancels the linear term in (q - 1)
            assert abs((above + below) / 2 - s1) <= 1e-6


class TestEntropyDifference:
    def test_e1_negative_on_a_zero_on_b(self):
        rho = example_state("E1")
        assert entropy_difference(rho, "A", 1.0) == pytest.approx((5 / 6) * math.log(4 / 5), abs=1e-10)
        assert entropy_difference(rho, "B", 1.0) == pytest.approx(0.0, abs=1e-10)

    def test_e2_positive_both_sides(self):
        rho = example_state("E2")
        expected = (5 / 6) * math.log(5 / 4)
        assert entropy_difference(rho, "A", 1.0) == pytest.approx(expected, abs=1e-10)
        assert entropy_difference(rho, "B", 1.0) == pytest.approx(expected, abs=1e-10)

    def test_e3_zero_for_all_q(self):
        rho = example_state("E3")
        for q in (0.5, 1.0, 2.0, 5.0):
            for side in ("A", "B"):
                assert abs(entropy_difference(rho, side, q)) <= 1e-12

    def test_product_state_gives_other_factor_entropy(self):
        rng = np.random.default_rng(2)
        z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = z @ z.conj().T
        rho_a = m / np.trace(m).real
        sigma_b = np.array([[0.85, 0.1], [0.1, 0.15]], dtype=complex)
        composite = DensityMatrix(tensor_product(rho_a, sigma_b), (2, 2))
        s_b = von_neumann(DensityMatrix(sigma_b, (2, 1)))
        s_a = von_neumann(DensityMatrix(rho_a, (2, 1)))
        assert entropy_difference(composite, "A", 1.0) == pytest.approx(s_b, abs=1e-10)
        assert entropy_difference(composite, "B", 1.0) == pytest.approx(s_a, abs=1e-10)


class TestConditionalTsallis:
    def test_reduces_to_difference_at_q_one(self):
        rho = example_state("E1")
        for side in ("A", "B"):
            assert conditional_tsallis(rho, side, 1.0) == pytest.approx(
                entropy_difference(rho, side, 1.0), abs=1e-14
            )

    def test_bell_state_minus_ln2(self):
        rho = example_state("E4")
        for side in ("A", "B"):
            assert conditional_tsallis(rho, side, 1.0) == pytest.approx(-LN2, abs=1e-12)

    def test_werner_zero_crossing_near_0747(self):
        from scipy.optimize import brentq

        root = brentq(lambda p: conditional_tsallis(werner(p), "A", 1.0), 0.5, 0.9, xtol=1e-12)
        assert root == pytest.approx(0.7476, abs=1e-3)

    def test_werner_q2_threshold_below_conditional_one(self):
        # at q=2 the Werner conditional crosses zero at p = 1/sqrt(3)
        from scipy.optimize import brentq

        root = brentq(lambda p: conditional_tsallis(werner(p), "A", 2.0), 0.3, 0.9, xtol=1e-12)
        assert root == pytest.approx(1 / math.sqrt(3), abs=1e-9)

    def test_denominator_underflow_guard(self):
        with pytest.raises(CheckError) as err:
            conditional_tsallis(werner(0.0), "A", 2000.0)
        assert err.value.check == "conditional denominator"

    def test_product_state_q1_additivity(self):
        rho_a = np.diag([0.9, 0.1]).astype(complex)
        sigma_b = np.diag([0.6, 0.4]).astype(complex)
        composite = DensityMatrix(tensor_product(rho_a, sigma_b), (2, 2))
        s_other = binary_entropy(0.6)
        assert conditional_tsallis(composite, "A", 1.0) == pytest.approx(s_other, abs=1e-12)
        assert conditional_tsallis(composite, "A", 1.0) >= 0.0


class TestInfinityCriterion:
    def test_werner_boundary(self):
        sat_a, sat_b = tsallis_infinity_criterion(werner(1 / 3))
        assert sat_a and sat_b
        sat_a, sat_b = tsallis_infinity_criterion(werner(1 / 3 + 1e-9))
        assert not sat_a and not sat_b
        sat_a, sat_b = tsallis_infinity_criterion(werner(1 / 3 - 1e-9))
        assert sat_a and sat_b

    def test_pure_entangled_violates(self):
        assert tsallis_infinity_criterion(example_state("E4")) == (False, False)

    def test_e6_boundary_satisfied(self):
        assert tsallis_infinity_criterion(example_state("E6")) == (True, True)

    def test_agrees_with_q50_sign_on_reference_states(self):
        states = [example_state(name) for name in ("E1", "E2", "E3", "E4", "E5", "E6")]
        states += [werner(float(p)) for p in np.arange(0.0, 1.0 + 1e-12, 0.05)]
        for rho in states:
            flags = tsallis_infinity_criterion(rho)
            for side, flag in zip(("A", "B"), flags):
                sign = conditional_tsallis(rho, side, 50.0)
                assert flag == (sign >= -1e-12), (rho, side, sign)


class TestMutualEntropy:
    def test_product_example_zero(self):
        assert mutual_entropy(example_state("E5")) == pytest.approx(0.0, abs=1e-12)

    def test_bell_state(self):
        assert mutual_entropy(example_state("E4")) == pytest.approx(2 * LN2, abs=1e-12)

    def test_isospectral_pair_share_value(self):
        expected = (3 * LN3 - 2 * LN2) / 3
        for rho in isospectral_pair():
            assert mutual_entropy(rho) == pytest.approx(expected, abs=1e-10)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(min_value=0, max_value=10**9))
    def test_nonnegative_property(self, seed):
        rho = random_mixed(seed, seed % 4 + 1)
        assert mutual_entropy(rho) >= -1e-10

    def test_zero_iff_product(self):
        rho_a = np.diag([0.7, 0.3]).astype(complex)
        sigma_b = np.array([[0.5, 0.2], [0.2, 0.5]], dtype=complex)
        product = DensityMatrix(tensor_product(rho_a, sigma_b), (2, 2))
        assert mutual_entropy(product) <= 1e-10
        # and a correlated state is bounded away from zero
        assert mutual_entropy(example_state("E6")) > 0.5


class TestRelativeEntropy:
    def test_self_distance_zero(self):
        rho = werner(0.4)
        assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_pure_vs_maximally_mixed(self):
        pure = pure_density(PureStateAmplitudes(1, 0, 0, 0))
        mixed = DensityMatrix(np.eye(4) / 4, (2, 2))
        assert relative_entropy(pure, mixed) == pytest.approx(math.log(4), abs=1e-12)

    def test_klein_mechanism_for_decohered_state(self):
        rho = werner(0.5)
        rho_d, _ = decohere(rho)
        gap = von_neumann(rho_d) - von_neumann(rho)
        assert relative_entropy(rho, rho_d) == pytest.approx(gap, abs=1e-10)
        assert gap >= 0.0

    def test_support_violation_returns_infinity(self):
        full = DensityMatrix(np.eye(4) / 4, (2, 2))
        pure = example_state("E4")
        assert relative_entropy(full, pure) == math.inf

    def test_positive_for_distinct_states(self):
        assert relative_entropy(werner(0.3), werner(0.6)) > 1e-3

    def test_dimension_mismatch(self):
        with pytest.raises(CheckError):
            relative_entropy(werner(0.5), DensityMatrix(np.eye(2) / 2, (2, 1)))


class TestPureStateTheoremB:
    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=0, max_value=10**9))
    def test_marginal_entropies_equal_and_conditional_nonpositive(self, seed):
        amps = random_pure(seed)
        rho = pure_density(amps)
        s_a = von_neumann(rho.marginal("A"))
        s_b = von_neumann(rho.marginal("B"))
        assert abs(s_a - s_b) <= 1e-9
        for side in ("A", "B"):
            assert conditional_tsallis(rho, side, 1.0) <= 1e-10

    def test_separable_pure_state_has_zero_conditional(self):
        rho = pure_density(PureStateAmplitudes(0, 1, 0, 0))
        for side in ("A", "B"):
            assert abs(conditional_tsallis(rho, side, 1.0)) <= 1e-12
