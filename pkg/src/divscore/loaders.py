"""File ingestion. Formats are deliberately boring: CSV and line-oriented text.

All loaders read UTF-8 and report failures with 1-based physical line
numbers (a skipped header is line 1). No loader ever returns partially
parsed data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadHexError,
    EmptyLineError,
    HexLengthError,
    NonFiniteValueError,
    ParseError,
    RaggedRowsError,
    ValidationError,
)
from .matrix import SimilarityMatrix, WeightVector, validate_similarity_matrix
from .similarity import FingerprintSample, TextSample


@dataclass(frozen=True)
class DatasetHandle:
    """A homogeneous collection plus optional per-item labels and weights."""

    kind: str  # dense | texts | fingerprints | distributions
    items: object
    labels: list[str] | None = None
    weights: WeightVector | None = None
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.n:
            raise ValidationError(
                f"{len(self.labels)} labels for {self.n} samples; every item needs one"
            )
        if self.weights is not None and len(self.weights) != self.n:
            raise ValidationError(
                f"{len(self.weights)} weights for {self.n} samples; every item needs one"
            )

    @property
    def n(self) -> int:
        return len(self.items)


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _parse_csv_rows(path: str, header: bool) -> list[list[float]]:
    lines = _read_lines(path)
    start = 1 if header else 0
    rows: list[list[float]] = []
    width = -1
    for lineno, line in enumerate(lines[start:], start=start + 1):
        fields = [f.strip() for f in line.split(",")]
        values = []
        for col, tok in enumerate(fields, start=1):
            try:
                v = float(tok)
            except ValueError:
                raise ParseError(lineno, col, f"{tok!r} is not a number") from None
            values.append(v)
        if not all(np.isfinite(values)):
            raise NonFiniteValueError(lineno)
        if width == -1:
            width = len(values)
        elif len(values) != width:
            raise RaggedRowsError(lineno, width, len(values))
        rows.append(values)
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return rows


def load_dense_csv(path: str, *, header: bool = False) -> DatasetHandle:
    """Comma-separated real vectors, one sample per row."""
    rows = _parse_csv_rows(path, header)
    return DatasetHandle(kind="dense", items=np.array(rows, dtype=float), source=path)


def load_texts(path: str, *, lowercase: bool = False, allow_empty: bool = False) -> DatasetHandle:
    """One whitespace-tokenized sample per line."""
    samples: list[TextSample] = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        if lowercase:
            line = line.lower()
        tokens = tuple(line.split())
        if not tokens:
            if allow_empty:
                continue
            raise EmptyLineError(lineno)
        samples.append(TextSample(tokens))
    if not samples:
        raise ValidationError(f"{path}: no text samples")
    return DatasetHandle(kind="texts", items=samples, source=path)


def load_fingerprints(path: str, bits: int) -> DatasetHandle:
    """One hex-encoded fingerprint per line, left-padded to the declared width."""
    if bits < 1:
        raise ValidationError(f"--bits must be positive, got {bits}")
    samples: list[FingerprintSample] = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        tok = line.strip()
        try:
            mask = int(tok, 16)
        except ValueError:
            raise BadHexError(lineno, tok) from None
        if mask.bit_length() > bits:
            raise HexLengthError(lineno, bits)
        if mask == 0:
            raise ValidationError(f"line {lineno}: fingerprint has no bits set")
        samples.append(FingerprintSample(mask, bits))
    if not samples:
        raise ValidationError(f"{path}: no fingerprints")
    return DatasetHandle(kind="fingerprints", items=samples, source=path)


def load_kernel_csv(path: str, *, header: bool = False) -> SimilarityMatrix:
    """A full precomputed n x n similarity matrix; validated on load."""
    rows = _parse_csv_rows(path, header)
    return validate_similarity_matrix(np.array(rows, dtype=float))


def load_weights(path: str) -> WeightVector:
    """One probability per line; validated as a weight vector."""
    values = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        tok = line.strip()
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(lineno, 1, f"{tok!r} is not a number") from None
        if not np.isfinite(v):
            raise NonFiniteValueError(lineno)
        if v < 0:
            raise ValidationError(f"line {lineno}: weight {v!r} is negative")
        values.append(v)
    if not values:
        raise ValidationError(f"{path}: no weights")
    return WeightVector(np.array(values))


def load_labels(path: str) -> list[str]:
    """One category label per line; empty labels are not allowed."""
    labels = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        label = line.strip()
        if not label:
            raise EmptyLineError(lineno)
        labels.append(label)
    if not labels:
        raise ValidationError(f"{path}: no labels")
    return labels
