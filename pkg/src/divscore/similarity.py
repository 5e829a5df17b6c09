"""Sample types and similarity kernels.

Every kernel k satisfies k(x, x) = 1 and symmetry; cosine may go negative,
the rest stay in [0, 1]. Positive semidefiniteness is certified by the
eigensolve downstream. cosine and ngram admit explicit feature maps, so
build_kernel returns a FeatureMatrix for them (enabling the covariance fast
path); rbf, tanimoto and prob-product return the materialized Gram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BitLengthMismatchError,
    DimensionMismatchError,
    EmptyFingerprintError,
    EmptyTextError,
    KindMismatchError,
    NonPositiveSigmaError,
    ValidationError,
    ZeroNormVectorError,
)
from .matrix import NORM_TOL, WEIGHT_TOL, FeatureMatrix, KernelSpec, SimilarityMatrix

DEFAULT_MAX_N = 4


# --- sample types ---------------------------------------------------------


@dataclass(frozen=True)
class TextSample:
    """A tokenized text; tokens are opaque identifiers, at least one required."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) == 0:
            raise EmptyTextError()
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @classmethod
    def from_line(cls, line: str, lowercase: bool = False) -> "TextSample":
        """Whitespace tokenization; the one rule every consumer shares."""
        if lowercase:
            line = line.lower()
        return cls(tuple(line.split()))


@dataclass(frozen=True)
class FingerprintSample:
    """Fixed-length bitset stored as an int mask; at least one bit must be set."""

    mask: int
    n_bits: int

    def __post_init__(self):
        if self.n_bits < 1:
            raise ValidationError(f"fingerprint length must be positive, got {self.n_bits}")
        if self.mask.bit_length() > self.n_bits:
            raise BitLengthMismatchError(self.n_bits, self.mask.bit_length())
        if self.mask == 0:
            raise EmptyFingerprintError()

    def popcount(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class ClassDistributionSample:
    """Probability vector over a fixed label set.

    Validated to sum to 1 within WEIGHT_TOL and then renormalized exactly, so
    the probability-product kernel's diagonal is 1 to machine precision.
    """

    probs: np.ndarray

    def __post_init__(self):
        a = np.array(self.probs, dtype=float)
        if a.ndim != 1 or a.size < 1:
            raise DimensionMismatchError(
                f"class distribution must be a nonempty vector, got shape {a.shape}"
            )
        if not np.isfinite(a).all():
            raise ValidationError("class distribution has a non-finite entry")
        if (a < 0).any():
            i = int(np.nonzero(a < 0)[0][0])
            raise ValidationError(f"class probability {i} is negative")
        total = float(a.sum())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValidationError(f"class probabilities sum to {total!r}, must be 1 within tolerance")
        a = a / total
        a.setflags(write=False)
        object.__setattr__(self, "probs", a)


# --- pairwise kernels -----------------------------------------------------


def cosine_similarity(u, v) -> float:
    """Inner product of the unit-normalized vectors; may be negative."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatchError(f"vector shapes differ: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu < NORM_TOL or nv < NORM_TOL:
        raise ZeroNormVectorError()
    return float(u @ v) / (nu * nv)


def rbf_similarity(u, v, sigma: float) -> float:
    """exp(-||u - v||^2 / (2 sigma^2))."""
    if not (np.isfinite(sigma) and sigma > 0):
        raise NonPositiveSigmaError(sigma)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatchError(f"vector shapes differ: {u.shape} vs {v.shape}")
    d2 = float(np.sum((u - v) ** 2))
    return math.exp(-d2 / (2.0 * sigma * sigma))


def _ngram_counts(tokens: tuple[str, ...], n: int) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for i in range(len(tokens) - n + 1):
        g = tokens[i : i + n]
        counts[g] = counts.get(g, 0) + 1
    return counts


def _count_cosine(ca: dict, cb: dict) -> float:
    if len(cb) < len(ca):
        ca, cb = cb, ca
    dot = sum(c * cb.get(g, 0) for g, c in ca.items())
    if dot == 0:
        return 0.0
    na = math.sqrt(sum(c * c for c in ca.values()))
    nb = math.sqrt(sum(c * c for c in cb.values()))
    return dot / (na * nb)


def ngram_similarity(a: TextSample, b: TextSample, max_n: int = DEFAULT_MAX_N) -> float:
    """Mean over n = 1..max_n of the cosine between n-gram count vectors.

    When a sample is shorter than n its count vector is empty; the order-n
    term is then 0 unless both are empty, in which case it is 1 for identical
    token sequences and 0 otherwise. This keeps k(x, x) = 1 for any length.
    """
    if not 1 <= max_n <= 32:
        raise ValidationError(f"max_n must be in [1, 32], got {max_n}")
    total = 0.0
    for n in range(1, max_n + 1):
        a_has = len(a.tokens) >= n
        b_has = len(b.tokens) >= n
        if a_has and b_has:
            total += _count_cosine(_ngram_counts(a.tokens, n), _ngram_counts(b.tokens, n))
        elif not a_has and not b_has:
            total += 1.0 if a.tokens == b.tokens else 0.0
        # one-sided: empty against nonempty contributes 0
    return total / max_n


def tanimoto_similarity(a: FingerprintSample, b: FingerprintSample) -> float:
    """|a AND b| / |a OR b| on the bitsets; exact integer arithmetic."""
    if a.n_bits != b.n_bits:
        raise BitLengthMismatchError(a.n_bits, b.n_bits)
    return (a.mask & b.mask).bit_count() / (a.mask | b.mask).bit_count()


def probability_product_similarity(a: ClassDistributionSample, b: ClassDistributionSample) -> float:
    """Bhattacharyya coefficient sum_y sqrt(p_y q_y); 1 iff the distributions match."""
    if a.probs.shape != b.probs.shape:
        raise DimensionMismatchError(
            f"class counts differ: {a.probs.size} vs {b.probs.size}"
        )
    return float(np.sqrt(a.probs * b.probs).sum())


# --- batch construction ---------------------------------------------------


def _ngram_feature_dict(tokens: tuple[str, ...], max_n: int) -> dict[tuple, float]:
    """Explicit unit embedding realizing ngram_similarity as an inner product.

    Each order n contributes a unit-norm block scaled by 1/sqrt(max_n):
    normalized counts when the text is long enough, otherwise a single
    indicator dimension keyed by the full token sequence (so two short
    identical texts land on the same axis and differing ones stay orthogonal).
    """
    scale = 1.0 / math.sqrt(max_n)
    vec: dict[tuple, float] = {}
    for n in range(1, max_n + 1):
        counts = _ngram_counts(tokens, n)
        if counts:
            norm = math.sqrt(sum(c * c for c in counts.values()))
            for g, c in counts.items():
                vec[(n, g)] = scale * c / norm
        else:
            vec[(n, None, tokens)] = scale
    return vec


def _build_ngram_features(texts: list[TextSample], max_n: int) -> FeatureMatrix:
    dicts = [_ngram_feature_dict(t.tokens, max_n) for t in texts]
    columns: dict[tuple, int] = {}
    for d in dicts:
        for key in d:
            if key not in columns:
                columns[key] = len(columns)
    rows = np.zeros((len(texts), len(columns)))
    for i, d in enumerate(dicts):
        for key, value in d.items():
            rows[i, columns[key]] = value
    return FeatureMatrix(rows)


def _build_tanimoto(samples: list[FingerprintSample], bits: int) -> SimilarityMatrix:
    for s in samples:
        if s.n_bits != bits:
            raise BitLengthMismatchError(bits, s.n_bits)
    nbytes = (bits + 7) // 8
    packed = np.frombuffer(
        b"".join(s.mask.to_bytes(nbytes, "big") for s in samples), dtype=np.uint8
    ).reshape(len(samples), nbytes)
    a = np.unpackbits(packed, axis=1, count=nbytes * 8)[:, -bits:].astype(np.int64)
    inter = a @ a.T
    pops = a.sum(axis=1)
    union = pops[:, None] + pops[None, :] - inter
    return SimilarityMatrix(inter / union)


def _build_rbf(x: np.ndarray, sigma: float) -> SimilarityMatrix:
    sq = np.einsum("ij,ij->i", x, x)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    d2 = (d2 + d2.T) / 2.0
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)  # ||u - u||^2 is 0 exactly, keep the diagonal at 1
    return SimilarityMatrix(np.exp(-d2 / (2.0 * sigma * sigma)))


def _as_dense(samples) -> np.ndarray:
    a = np.asarray(samples, dtype=float)
    if a.ndim != 2:
        raise KindMismatchError(
            f"this kernel expects an n x d array of vectors, got shape {a.shape}"
        )
    return a


def build_kernel(samples, spec: KernelSpec) -> FeatureMatrix | SimilarityMatrix:
    """Assemble the kernel for a homogeneous sample collection.

    cosine and ngram return a FeatureMatrix whose Gram matches the pairwise
    function entrywise; the other kinds return the SimilarityMatrix directly.
    The sample container must match the kind, no coercion is attempted.
    """
    if len(samples) < 1:
        raise ValidationError("at least one sample is required")
    kind = spec.kind

    if kind == "precomputed":
        raise KindMismatchError("precomputed kernels are loaded from file, not built")

    if kind == "cosine":
        return FeatureMatrix(_as_dense(samples))

    if kind == "rbf":
        return _build_rbf(_as_dense(samples), float(spec.sigma))

    if kind == "ngram":
        if not all(isinstance(s, TextSample) for s in samples):
            raise KindMismatchError("ngram kernel expects TextSample inputs")
        return _build_ngram_features(list(samples), int(spec.max_n))

    if kind == "tanimoto":
        if not all(isinstance(s, FingerprintSample) for s in samples):
            raise KindMismatchError("tanimoto kernel expects FingerprintSample inputs")
        return _build_tanimoto(list(samples), int(spec.bits))

    if kind == "prob-product":
        if not all(isinstance(s, ClassDistributionSample) for s in samples):
            raise KindMismatchError("prob-product kernel expects ClassDistributionSample inputs")
        dims = {s.probs.size for s in samples}
        if len(dims) > 1:
            raise DimensionMismatchError(f"class counts differ across samples: {sorted(dims)}")
        r = np.sqrt(np.stack([s.probs for s in samples]))
        k = r @ r.T
        return SimilarityMatrix((k + k.T) / 2.0)

    raise KindMismatchError(f"unsupported kernel kind {kind!r}")
