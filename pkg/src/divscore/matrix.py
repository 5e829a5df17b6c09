"""Validated kernel-side types: similarity matrices, feature matrices, weights.

A SimilarityMatrix is the n x n object every score consumes; construction via
validate_similarity_matrix is the supported path and enforces squareness,
finiteness, symmetry within tolerance, and a unit diagonal. Positive
semidefiniteness is deliberately not checked here; the eigensolve certifies it
later, where it is free.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
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

SYM_TOL = 1e-8        # relative to the largest entry magnitude
DIAG_TOL = 1e-6
WEIGHT_TOL = 1e-6
NORM_TOL = 1e-12

KERNEL_KINDS = ("cosine", "rbf", "ngram", "tanimoto", "prob-product", "precomputed")


def _first_nonfinite(a: np.ndarray) -> tuple[int, int]:
    i, j = np.argwhere(~np.isfinite(a))[0]
    return int(i), int(j)


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric unit-diagonal similarity matrix, immutable after construction."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def validate_similarity_matrix(
    raw, *, sym_tol: float = SYM_TOL, diag_tol: float = DIAG_TOL
) -> SimilarityMatrix:
    """Check a raw square array and return it as a SimilarityMatrix.

    Asymmetry within sym_tol (relative) is repaired by averaging K and its
    transpose; anything larger is an error. Entries outside [-1, 1] are legal
    here but diagnosed with a warning, since they guarantee a later PSD
    failure.
    """
    a = np.array(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        rows = a.shape[0] if a.ndim >= 1 else 0
        cols = a.shape[1] if a.ndim >= 2 else 0
        raise NonSquareError(rows, cols)
    if a.size == 0:
        raise NonSquareError(0, 0)
    if not np.isfinite(a).all():
        raise NonFiniteEntryError(*_first_nonfinite(a))

    scale = max(1.0, float(np.abs(a).max()))
    gap = np.abs(a - a.T)
    worst = float(gap.max())
    if worst > sym_tol * scale:
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        raise AsymmetryExceedsToleranceError(int(i), int(j), worst)
    k = (a + a.T) / 2.0

    diag_gap = np.abs(np.diag(k) - 1.0)
    if float(diag_gap.max()) > diag_tol:
        i = int(np.argmax(diag_gap))
        raise DiagonalNotUnitError(i, float(k[i, i]))

    if float(np.abs(k).max()) > 1.0 + diag_tol:
        warnings.warn(
            "similarity entries outside [-1, 1]; the matrix cannot be positive "
            "semidefinite with a unit diagonal",
            stacklevel=2,
        )
    return SimilarityMatrix(k)


@dataclass(frozen=True)
class FeatureMatrix:
    """Row-per-sample embedding matrix; rows are unit-normalized on construction."""

    rows: np.ndarray

    def __post_init__(self):
        a = np.array(self.rows, dtype=float)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionMismatchError(
                f"feature matrix must be 2-dimensional and nonempty, got shape {a.shape}"
            )
        if not np.isfinite(a).all():
            raise NonFiniteEntryError(*_first_nonfinite(a))
        norms = np.linalg.norm(a, axis=1)
        bad = np.nonzero(norms < NORM_TOL)[0]
        if bad.size:
            raise ZeroNormRowError(int(bad[0]))
        a = a / norms[:, None]
        a.setflags(write=False)
        object.__setattr__(self, "rows", a)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


def gram_from_features(features: FeatureMatrix) -> SimilarityMatrix:
    """Inner-product Gram matrix of the (already normalized) feature rows."""
    g = features.rows @ features.rows.T
    g = (g + g.T) / 2.0  # BLAS output is symmetric only up to rounding
    return SimilarityMatrix(g)


@dataclass(frozen=True)
class WeightVector:
    """Probability vector over samples: nonnegative, sums to 1 within tolerance."""

    p: np.ndarray

    def __post_init__(self):
        a = np.array(self.p, dtype=float)
        if a.ndim != 1 or a.size < 1:
            raise DimensionMismatchError(f"weights must be a nonempty vector, got shape {a.shape}")
        if not np.isfinite(a).all():
            i = int(np.nonzero(~np.isfinite(a))[0][0])
            raise ValidationError(f"weight {i} is not finite")
        neg = np.nonzero(a < 0)[0]
        if neg.size:
            i = int(neg[0])
            raise NegativeWeightError(i, float(a[i]))
        total = float(a.sum())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise WeightSumError(total)
        a.setflags(write=False)
        object.__setattr__(self, "p", a)

    def __len__(self) -> int:
        return self.p.size


def weighted_kernel(kernel: SimilarityMatrix, weights: WeightVector) -> np.ndarray:
    """diag(sqrt p) K diag(sqrt p); trace equals 1 when K has a unit diagonal.

    Returns a plain array: the result has the weights, not ones, on its
    diagonal, so it is not a SimilarityMatrix.
    """
    if len(weights) != kernel.n:
        raise DimensionMismatchError(
            f"weight vector has {len(weights)} entries for a {kernel.n}-sample kernel"
        )
    r = np.sqrt(weights.p)
    return kernel.entries * np.outer(r, r)


@dataclass(frozen=True)
class KernelSpec:
    """Declarative kernel choice plus its parameters.

    kind is one of cosine | rbf | ngram | tanimoto | prob-product | precomputed.
    sigma applies to rbf, max_n to ngram, bits to tanimoto.
    """

    kind: str
    sigma: float | None = None
    max_n: int | None = field(default=None)
    bits: int | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValidationError(
                f"unknown kernel kind {self.kind!r}, expected one of {', '.join(KERNEL_KINDS)}"
            )
        if self.kind == "rbf":
            if self.sigma is None or not np.isfinite(self.sigma) or self.sigma <= 0:
                raise NonPositiveSigmaError(self.sigma if self.sigma is not None else float("nan"))
        if self.kind == "ngram":
            if self.max_n is None:
                object.__setattr__(self, "max_n", 4)
            if not isinstance(self.max_n, int) or not 1 <= self.max_n <= 32:
                raise ValidationError(f"max_n must be an integer in [1, 32], got {self.max_n!r}")
        if self.kind == "tanimoto":
            if self.bits is None or not isinstance(self.bits, int) or self.bits < 1:
                raise ValidationError(f"tanimoto requires a positive bit count, got {self.bits!r}")

    def echo(self) -> dict:
        """Kind plus the parameters that apply, for report headers."""
        out: dict = {"kind": self.kind}
        if self.kind == "rbf":
            out["sigma"] = float(self.sigma)
        elif self.kind == "ngram":
            out["max_n"] = int(self.max_n)
        elif self.kind == "tanimoto":
            out["bits"] = int(self.bits)
        return out
