"""Spectral diversity scores.

The Vendi Score of a collection is exp(H(lambda)) where lambda are the
eigenvalues of the trace-normalized similarity matrix K/n and H is Shannon
entropy with the 0 log 0 = 0 convention. The eigenvalues form a probability
vector (K has a unit diagonal, so tr(K/n) = 1), and the score reads as the
effective number of distinct samples: n for an identity kernel, 1 when all
samples are identical.

Four computation paths are provided and agree within path_tol = 1e-8:

* vendi_score            exact n x n symmetric eigensolve
* vendi_score_from_features
                         d x d covariance eigensolve, O(d^2 n + d^3); the
                         Gram and the covariance share nonzero eigenvalues
* vendi_score_trace      von Neumann form exp(-tr(M log M)) with the matrix
                         log built from the eigendecomposition; serves as an
                         independent cross-check of the entropy route
* nystrom_vendi          column-sampled approximation for large n
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EigensolverFailure,
    NotPositiveSemidefiniteError,
    RankDeficientBlockError,
    SpectrumSumError,
    ValidationError,
)
from .matrix import FeatureMatrix, SimilarityMatrix, WeightVector, weighted_kernel

SPECTRUM_TOL = 1e-6    # allowed |sum(eigenvalues) - 1| before renormalizing
ENTROPY_FLOOR = 1e-300  # eigenvalues at or below this contribute exactly zero
PSD_EIG_TOL = 1e-8     # on the trace-1 matrix; equals the documented 1e-8 * n on K
PINV_TOL = 1e-10       # relative cutoff for the Nystrom block pseudo-inverse
PATH_TOL = 1e-8


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalue simplex of a scored collection plus its entropy and score.

    eigenvalues is nonincreasing, clamped to [0, 1], and sums to 1. It may be
    shorter than n when a reduced route (covariance, Nystrom) was used; the
    missing eigenvalues are exact zeros. score == exp(entropy).
    """

    eigenvalues: np.ndarray
    entropy: float
    score: float
    n: int

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)

    def top_eigenvalues(self, k: int = 10) -> np.ndarray:
        """First min(k, n) eigenvalues, zero-padded so the route does not show."""
        k = min(k, self.n)
        out = np.zeros(k)
        m = min(k, self.eigenvalues.size)
        out[:m] = self.eigenvalues[:m]
        return out


def shannon_entropy(p: np.ndarray) -> float:
    """-sum p_i log p_i over entries above the floor, natural log."""
    live = p[p > ENTROPY_FLOOR]
    if live.size == 0:
        return 0.0
    return float(-np.sum(live * np.log(live)))


def _eigvalsh(m: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(str(e)) from e


def _clean_eigenvalues(w: np.ndarray, *, renormalize_always: bool = False) -> np.ndarray:
    """Clamp, sort nonincreasing, and renormalize a trace-1 spectrum.

    Eigenvalues in [-PSD_EIG_TOL, 0) are rounding noise and clamp to zero;
    anything lower is a genuine PSD violation. The sum must already be 1
    within SPECTRUM_TOL unless renormalize_always is set (Nystrom, whose
    reconstruction legitimately loses trace).
    """
    lo = float(w.min())
    if lo < -PSD_EIG_TOL:
        raise NotPositiveSemidefiniteError(lo)
    w = np.clip(w, 0.0, 1.0)
    total = float(w.sum())
    if not renormalize_always and abs(total - 1.0) > SPECTRUM_TOL:
        raise SpectrumSumError(total)
    if total <= 0.0:
        raise SpectrumSumError(total)
    w = w / total
    return np.sort(w)[::-1]


def _result(lam: np.ndarray, n: int) -> SpectrumResult:
    h = shannon_entropy(lam)
    return SpectrumResult(eigenvalues=lam, entropy=h, score=math.exp(h), n=n)


def normalized_spectrum(kernel: SimilarityMatrix) -> np.ndarray:
    """Eigenvalues of K/n: nonincreasing, clamped to [0, 1], summing to 1."""
    w = _eigvalsh(kernel.entries / kernel.n)
    return _clean_eigenvalues(w)


def vendi_score(kernel: SimilarityMatrix) -> SpectrumResult:
    """Exact Vendi Score via the n x n eigensolve. Score lies in [1, n]."""
    lam = normalized_spectrum(kernel)
    return _result(lam, kernel.n)


def vendi_score_weighted(kernel: SimilarityMatrix, weights: WeightVector) -> SpectrumResult:
    """Probability-weighted Vendi Score.

    Eigendecomposes diag(sqrt p) K diag(sqrt p), whose trace is 1 by
    construction. With uniform weights this equals vendi_score(kernel); with
    a diagonal kernel it reduces to exp(H(p)).
    """
    m = weighted_kernel(kernel, weights)
    lam = _clean_eigenvalues(_eigvalsh(m))
    return _result(lam, kernel.n)


def vendi_score_from_features(features: FeatureMatrix) -> SpectrumResult:
    """Vendi Score from explicit embeddings via the d x d covariance.

    (1/n) sum_i phi_i phi_i^T shares its nonzero eigenvalues with the Gram
    matrix over the same rows, so this route costs O(d^2 n + d^3) and pays
    off whenever d < n. Unit rows make the covariance trace exactly 1.
    """
    f = features.rows
    n = features.n
    cov = (f.T @ f) / n
    cov = (cov + cov.T) / 2.0
    lam = _clean_eigenvalues(_eigvalsh(cov))
    return _result(lam, n)


def vendi_score_trace(kernel: SimilarityMatrix) -> SpectrumResult:
    """Vendi Score as exp(-tr(M log M)) for M = K/n.

    The matrix logarithm is assembled from the eigendecomposition (log the
    eigenvalues, rotate back) and traced against M, exercising different
    arithmetic than the entropy route; the two agree within 1e-8 and this
    form doubles as a cross-check oracle. Zero eigenvalues are excluded from
    the log, which realizes the 0 log 0 = 0 convention.
    """
    m = kernel.entries / kernel.n
    try:
        w, u = np.linalg.eigh(m)
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(str(e)) from e
    lo = float(w.min())
    if lo < -PSD_EIG_TOL:
        raise NotPositiveSemidefiniteError(lo)
    logw = np.where(w > ENTROPY_FLOOR, np.log(np.maximum(w, ENTROPY_FLOOR)), 0.0)
    logm = (u * logw) @ u.T
    h = -float(np.sum(m * logm))  # tr(M log M); both factors are symmetric
    lam = _clean_eigenvalues(w)
    return SpectrumResult(eigenvalues=lam, entropy=h, score=math.exp(h), n=kernel.n)


def nystrom_vendi(kernel: SimilarityMatrix, m: int, seed: int = 0) -> SpectrumResult:
    """Approximate Vendi Score from m uniformly sampled columns.

    Samples m column indices without replacement (deterministic per seed),
    eigendecomposes the m x m intersection block W with a relative
    pseudo-inverse cutoff of PINV_TOL, and extends through the column block.
    The reconstruction's spectrum is renormalized to a simplex; its trace is
    below 1 for m < n, which is inherent to the approximation. m = n
    reproduces the exact score.
    """
    n = kernel.n
    if not 1 <= m <= n:
        raise ValidationError(f"nystrom sample count must be in [1, {n}], got {m}")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(n, size=m, replace=False))
    c = kernel.entries[:, idx]
    w_block = c[idx, :]
    try:
        s, v = np.linalg.eigh(w_block)
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(str(e)) from e
    cutoff = PINV_TOL * float(s.max())
    keep = s > max(cutoff, 0.0)
    if not keep.any():
        raise RankDeficientBlockError()
    # K_hat = C W^+ C^T = B B^T with B = C V S^{-1/2}; the nonzero eigenvalues
    # of K_hat/n are those of B^T B / n, an r x r problem.
    b = c @ (v[:, keep] / np.sqrt(s[keep]))
    small = (b.T @ b) / n
    small = (small + small.T) / 2.0
    lam = _clean_eigenvalues(_eigvalsh(small), renormalize_always=True)
    return _result(lam, n)
