"""Diversity scoring for sample collections.

The headline metric is the Vendi Score: the exponentiated Shannon entropy of
the eigenvalues of the trace-normalized similarity matrix, read as the
effective number of distinct samples. Also here: a probability-weighted
variant, a covariance fast path for explicit embeddings, a Nystrom
approximation, five stock kernels, and the usual baseline metrics (IntDiv,
n-gram diversity, Mode Diversity).
"""

__version__ = "0.1.0"

from .baselines import (
    BaselineResult,
    intdiv,
    intdiv_from_features,
    mean_ngram_diversity,
    mode_diversity,
    ngram_diversity,
)
from .errors import DivscoreError, NumericalError, ValidationError
from .loaders import (
    DatasetHandle,
    load_dense_csv,
    load_fingerprints,
    load_kernel_csv,
    load_labels,
    load_texts,
    load_weights,
)
from .matrix import (
    FeatureMatrix,
    KernelSpec,
    SimilarityMatrix,
    WeightVector,
    gram_from_features,
    validate_similarity_matrix,
    weighted_kernel,
)
from .similarity import (
    ClassDistributionSample,
    FingerprintSample,
    TextSample,
    build_kernel,
    cosine_similarity,
    ngram_similarity,
    probability_product_similarity,
    rbf_similarity,
    tanimoto_similarity,
)
from .spectrum import (
    SpectrumResult,
    normalized_spectrum,
    nystrom_vendi,
    shannon_entropy,
    vendi_score,
    vendi_score_from_features,
    vendi_score_trace,
    vendi_score_weighted,
)

__all__ = [
    "__version__",
    "BaselineResult",
    "ClassDistributionSample",
    "DatasetHandle",
    "DivscoreError",
    "FeatureMatrix",
    "FingerprintSample",
    "KernelSpec",
    "NumericalError",
    "SimilarityMatrix",
    "SpectrumResult",
    "TextSample",
    "ValidationError",
    "WeightVector",
    "build_kernel",
    "cosine_similarity",
    "gram_from_features",
    "intdiv",
    "intdiv_from_features",
    "load_dense_csv",
    "load_fingerprints",
    "load_kernel_csv",
    "load_labels",
    "load_texts",
    "load_weights",
    "mean_ngram_diversity",
    "mode_diversity",
    "ngram_diversity",
    "ngram_similarity",
    "normalized_spectrum",
    "nystrom_vendi",
    "probability_product_similarity",
    "rbf_similarity",
    "shannon_entropy",
    "tanimoto_similarity",
    "validate_similarity_matrix",
    "vendi_score",
    "vendi_score_from_features",
    "vendi_score_trace",
    "vendi_score_weighted",
    "weighted_kernel",
]
