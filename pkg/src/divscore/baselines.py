"""Reference diversity metrics the spectral score is compared against.

IntDiv is one minus the mean pairwise similarity; n-gram diversity is the
distinct-over-total ratio on the pooled n-gram multiset; Mode Diversity is
the exponentiated entropy of the mean class distribution, i.e. the effective
number of modes actually covered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoNgramsAvailableError, ValidationError
from .matrix import FeatureMatrix, SimilarityMatrix
from .similarity import ClassDistributionSample, TextSample, _ngram_counts
from .spectrum import shannon_entropy


@dataclass(frozen=True)
class BaselineResult:
    metric: str
    value: float
    n: int


def intdiv(kernel: SimilarityMatrix) -> float:
    """1 - (1/n^2) sum_ij K[i, j]; 0 for all-identical samples."""
    n = kernel.n
    value = 1.0 - float(kernel.entries.sum()) / (n * n)
    return max(0.0, value)  # clamp rounding drift; mean similarity never exceeds 1


def intdiv_from_features(features: FeatureMatrix) -> float:
    """IntDiv without materializing the Gram: 1 - ||mean row||^2.

    The double sum over inner products collapses to the squared norm of the
    mean embedding, so this is O(nd) and exact up to rounding.
    """
    mu = features.rows.mean(axis=0)
    return max(0.0, 1.0 - float(mu @ mu))


def ngram_diversity(texts: list[TextSample], n: int) -> float:
    """Distinct n-grams over total n-grams, pooled across all texts."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if len(texts) < 1:
        raise ValidationError("at least one text is required")
    distinct: set[tuple[str, ...]] = set()
    total = 0
    for t in texts:
        counts = _ngram_counts(t.tokens, n)
        distinct.update(counts)
        total += sum(counts.values())
    if total == 0:
        raise NoNgramsAvailableError(n)
    return len(distinct) / total


def mean_ngram_diversity(texts: list[TextSample], max_n: int = 4) -> tuple[list[float], float]:
    """Per-n diversities for n = 1..max_n and their mean.

    Every order must have at least one n-gram somewhere in the corpus;
    otherwise the mean is undefined and the failing order is reported.
    """
    per_n = [ngram_diversity(texts, n) for n in range(1, max_n + 1)]
    return per_n, sum(per_n) / max_n


def mode_diversity(samples: list[ClassDistributionSample]) -> float:
    """exp H of the mean class distribution; ranges over [1, #classes].

    Coincides with the probability-weighted Vendi Score under a diagonal
    kernel over classes, which is what makes it a fair baseline.
    """
    if len(samples) < 1:
        raise ValidationError("at least one class distribution is required")
    dims = {s.probs.size for s in samples}
    if len(dims) > 1:
        raise ValidationError(f"class counts differ across samples: {sorted(dims)}")
    mean = np.mean(np.stack([s.probs for s in samples]), axis=0)
    return math.exp(shannon_entropy(mean))
