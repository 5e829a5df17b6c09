import math

import numpy as np
import pytest

from divscore import (
    FeatureMatrix,
    KernelSpec,
    SimilarityMatrix,
    WeightVector,
    gram_from_features,
    validate_similarity_matrix,
    weighted_kernel,
)
from divscore.errors import (
    AsymmetryExceedsToleranceError,
    DiagonalNotUnitError,
    DimensionMismatchError,
    NegativeWeightError,
    NonFiniteEntryError,
    NonPositiveSigmaError,
    NonSquareError,
    ValidationError,
    WeightSumError,
    ZeroNormRowError,
)

from helpers import random_kernel


class TestValidateSimilarityMatrix:
    def test_identity_passes(self):
        k = validate_similarity_matrix(np.eye(3))
        assert k.n == 3
        assert np.array_equal(k.entries, np.eye(3))

    def test_single_sample_is_legal(self):
        assert validate_similarity_matrix([[1.0]]).n == 1

    def test_rejects_nonsquare(self):
        with pytest.raises(NonSquareError):
            validate_similarity_matrix(np.ones((2, 3)))

    def test_rejects_empty(self):
        with pytest.raises(NonSquareError):
            validate_similarity_matrix(np.zeros((0, 0)))

    def test_rejects_nan_with_position(self):
        a = np.eye(4)
        a[1, 2] = np.nan
        with pytest.raises(NonFiniteEntryError) as exc:
            validate_similarity_matrix(a)
        assert (exc.value.i, exc.value.j) == (1, 2)

    def test_rejects_gross_asymmetry(self):
        with pytest.raises(AsymmetryExceedsToleranceError):
            validate_similarity_matrix([[1.0, 0.2], [0.9, 1.0]])

    def test_rejects_bad_diagonal(self):
        a = np.eye(3)
        a[2, 2] = 1.1
        with pytest.raises(DiagonalNotUnitError) as exc:
            validate_similarity_matrix(a)
        assert exc.value.i == 2

    def test_tiny_asymmetry_is_averaged_away(self):
        a = np.array([[1.0, 0.5], [0.5 + 1e-10, 1.0]])
        k = validate_similarity_matrix(a)
        assert k.entries[0, 1] == k.entries[1, 0]
        assert abs(k.entries[0, 1] - (0.5 + 5e-11)) < 1e-15

    def test_entries_outside_unit_range_warn(self):
        with pytest.warns(UserWarning):
            validate_similarity_matrix([[1.0, 2.0], [2.0, 1.0]])

    def test_result_is_readonly(self):
        k = validate_similarity_matrix(np.eye(2))
        with pytest.raises(ValueError):
            k.entries[0, 0] = 7.0


class TestFeatureMatrix:
    def test_rows_are_normalized(self):
        f = FeatureMatrix([[3.0, 4.0], [0.0, 2.0]])
        assert np.allclose(np.linalg.norm(f.rows, axis=1), 1.0, atol=1e-15)

    def test_zero_row_rejected_with_index(self):
        with pytest.raises(ZeroNormRowError) as exc:
            FeatureMatrix([[1.0, 0.0], [0.0, 0.0]])
        assert exc.value.i == 1

    def test_nan_rejected(self):
        with pytest.raises(NonFiniteEntryError):
            FeatureMatrix([[1.0, np.nan]])

    def test_wrong_rank_rejected(self):
        with pytest.raises(DimensionMismatchError):
            FeatureMatrix(np.ones(4))


class TestGramFromFeatures:
    def test_orthonormal_rows_give_identity(self):
        g = gram_from_features(FeatureMatrix(np.eye(3)))
        assert np.allclose(g.entries, np.eye(3), atol=1e-15)

    def test_duplicate_rows_give_all_ones(self):
        g = gram_from_features(FeatureMatrix([[2.0, 1.0]] * 4))
        assert np.allclose(g.entries, 1.0, atol=1e-15)

    def test_known_pair(self):
        g = gram_from_features(FeatureMatrix([[1.0, 0.0], [1.0, 1.0]]))
        assert abs(g.entries[0, 1] - math.sqrt(0.5)) <= 1e-15

    def test_validates_within_machine_slack(self):
        # contract: symmetry exact after averaging, diagonal within 8*eps*d
        rng = np.random.default_rng(5)
        f = FeatureMatrix(rng.standard_normal((40, 9)))
        g = gram_from_features(f)
        eps = np.finfo(float).eps
        validate_similarity_matrix(g.entries, sym_tol=0.0, diag_tol=8 * eps * f.dim)


class TestWeightVector:
    def test_valid(self):
        w = WeightVector([0.25, 0.75])
        assert len(w) == 2

    def test_zero_entries_allowed(self):
        WeightVector([1.0, 0.0, 0.0])

    def test_negative_rejected(self):
        with pytest.raises(NegativeWeightError) as exc:
            WeightVector([1.2, -0.2])
        assert exc.value.i == 1

    def test_bad_sum_rejected(self):
        with pytest.raises(WeightSumError):
            WeightVector([0.5, 0.4])

    def test_sum_tolerance_is_1e6(self):
        WeightVector([0.5, 0.5 + 5e-7])
        with pytest.raises(WeightSumError):
            WeightVector([0.5, 0.5 + 5e-6])


class TestWeightedKernel:
    def test_identity_uniform(self):
        k = validate_similarity_matrix(np.eye(2))
        m = weighted_kernel(k, WeightVector([0.5, 0.5]))
        assert np.allclose(m, np.diag([0.5, 0.5]), atol=1e-16)

    def test_identity_skewed(self):
        k = validate_similarity_matrix(np.eye(2))
        m = weighted_kernel(k, WeightVector([0.9, 0.1]))
        assert np.allclose(np.diag(m), [0.9, 0.1], atol=1e-15)

    def test_ones_kernel_uniform(self):
        k = validate_similarity_matrix(np.ones((2, 2)))
        m = weighted_kernel(k, WeightVector([0.5, 0.5]))
        assert np.allclose(m, 0.5, atol=1e-16)

    def test_length_mismatch(self):
        k = validate_similarity_matrix(np.eye(3))
        with pytest.raises(DimensionMismatchError):
            weighted_kernel(k, WeightVector([0.5, 0.5]))

    @pytest.mark.parametrize("n", [2, 7, 23])
    def test_trace_is_one(self, n):
        rng = np.random.default_rng(n)
        k = SimilarityMatrix(random_kernel(rng, n))
        p = rng.random(n)
        w = WeightVector(p / p.sum())
        assert abs(np.trace(weighted_kernel(k, w)) - 1.0) <= 1e-12

    @pytest.mark.parametrize("n", [3, 8])
    def test_uniform_weights_recover_kernel_over_n(self, n):
        rng = np.random.default_rng(n + 100)
        k = SimilarityMatrix(random_kernel(rng, n))
        m = weighted_kernel(k, WeightVector(np.full(n, 1.0 / n)))
        assert np.allclose(m, k.entries / n, atol=1e-15)


class TestKernelSpec:
    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            KernelSpec("euclidean")

    def test_rbf_requires_positive_sigma(self):
        for sigma in (0.0, -1.0, float("inf"), float("nan"), None):
            with pytest.raises((NonPositiveSigmaError, ValidationError)):
                KernelSpec("rbf", sigma=sigma)
        KernelSpec("rbf", sigma=2.5)

    def test_ngram_bounds(self):
        assert KernelSpec("ngram").max_n == 4
        with pytest.raises(ValidationError):
            KernelSpec("ngram", max_n=0)
        with pytest.raises(ValidationError):
            KernelSpec("ngram", max_n=64)

    def test_tanimoto_requires_bits(self):
        with pytest.raises(ValidationError):
            KernelSpec("tanimoto")
        assert KernelSpec("tanimoto", bits=2048).echo() == {"kind": "tanimoto", "bits": 2048}

    def test_echo_carries_parameters(self):
        assert KernelSpec("rbf", sigma=1.5).echo() == {"kind": "rbf", "sigma": 1.5}
        assert KernelSpec("cosine").echo() == {"kind": "cosine"}
