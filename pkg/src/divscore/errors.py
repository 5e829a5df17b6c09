"""Exception hierarchy.

Two families matter to callers: ValidationError for malformed or
contract-violating input (CLI exit code 2) and NumericalError for failures
inside the spectral computation itself (CLI exit code 3).
"""

from __future__ import annotations


class DivscoreError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DivscoreError):
    """Input violates a documented precondition or invariant."""


class NumericalError(DivscoreError):
    """The numerical computation failed or produced an unusable result."""


# --- matrix and weight validation ---------------------------------------


class NonSquareError(ValidationError):
    def __init__(self, rows: int, cols: int):
        super().__init__(f"similarity matrix must be square, got {rows}x{cols}")
        self.rows, self.cols = rows, cols


class NonFiniteEntryError(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"entry ({i}, {j}) is not finite")
        self.i, self.j = i, j


class DiagonalNotUnitError(ValidationError):
    def __init__(self, i: int, value: float):
        super().__init__(f"diagonal entry {i} is {value!r}, must be 1 within tolerance")
        self.i, self.value = i, value


class AsymmetryExceedsToleranceError(ValidationError):
    def __init__(self, i: int, j: int, delta: float):
        super().__init__(
            f"asymmetry at ({i}, {j}): |K[i,j] - K[j,i]| = {delta:.3e} exceeds tolerance"
        )
        self.i, self.j, self.delta = i, j, delta


class ZeroNormRowError(ValidationError):
    def __init__(self, i: int):
        super().__init__(f"feature row {i} has (near-)zero norm and cannot be normalized")
        self.i = i


class ZeroNormVectorError(ValidationError):
    def __init__(self):
        super().__init__("cosine similarity is undefined for a (near-)zero vector")


class DimensionMismatchError(ValidationError):
    def __init__(self, msg: str):
        super().__init__(msg)


class NegativeWeightError(ValidationError):
    def __init__(self, i: int, value: float):
        super().__init__(f"weight {i} is {value!r}, weights must be nonnegative")
        self.i, self.value = i, value


class WeightSumError(ValidationError):
    def __init__(self, total: float):
        super().__init__(f"weights sum to {total!r}, must be 1 within tolerance")
        self.total = total


# --- sample validation ----------------------------------------------------


class EmptyTextError(ValidationError):
    def __init__(self):
        super().__init__("text sample has no tokens")


class EmptyFingerprintError(ValidationError):
    def __init__(self):
        super().__init__("fingerprint has no bits set")


class BitLengthMismatchError(ValidationError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"fingerprint bit lengths differ: expected {expected}, got {got}")
        self.expected, self.got = expected, got


class NonPositiveSigmaError(ValidationError):
    def __init__(self, sigma: float):
        super().__init__(f"rbf bandwidth must be finite and positive, got {sigma!r}")
        self.sigma = sigma


class KindMismatchError(ValidationError):
    def __init__(self, msg: str):
        super().__init__(msg)


class NoNgramsAvailableError(ValidationError):
    def __init__(self, n: int):
        super().__init__(f"no text has {n} or more tokens, {n}-gram diversity is undefined")
        self.n = n


# --- parsing --------------------------------------------------------------


class ParseError(ValidationError):
    def __init__(self, line: int, column: int, detail: str):
        super().__init__(f"line {line}, column {column}: {detail}")
        self.line, self.column = line, column


class RaggedRowsError(ValidationError):
    def __init__(self, line: int, expected: int, got: int):
        super().__init__(f"line {line}: expected {expected} fields, got {got}")
        self.line = line


class NonFiniteValueError(ValidationError):
    def __init__(self, line: int):
        super().__init__(f"line {line}: value is not finite")
        self.line = line


class EmptyLineError(ValidationError):
    def __init__(self, line: int):
        super().__init__(f"line {line}: empty line (pass --allow-empty to skip)")
        self.line = line


class BadHexError(ValidationError):
    def __init__(self, line: int, token: str):
        super().__init__(f"line {line}: {token!r} is not a hex string")
        self.line = line


class HexLengthError(ValidationError):
    def __init__(self, line: int, bits: int):
        super().__init__(f"line {line}: fingerprint does not fit in {bits} bits")
        self.line = line


# --- spectral failures ----------------------------------------------------


class NotPositiveSemidefiniteError(NumericalError):
    def __init__(self, min_eig: float):
        super().__init__(
            f"matrix is not positive semidefinite: min eigenvalue {min_eig:.3e} "
            "of the trace-normalized kernel is below tolerance"
        )
        self.min_eig = min_eig


class EigensolverFailure(NumericalError):
    def __init__(self, detail: str):
        super().__init__(f"eigensolver failed: {detail}")


class SpectrumSumError(NumericalError):
    def __init__(self, total: float):
        super().__init__(
            f"eigenvalues sum to {total!r}; deviation from 1 exceeds spectrum tolerance"
        )
        self.total = total


class RankDeficientBlockError(NumericalError):
    def __init__(self):
        super().__init__("sampled Nystrom block has no eigenvalue above the pseudo-inverse cutoff")
