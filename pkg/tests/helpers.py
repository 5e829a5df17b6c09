"""Shared generators and independent oracles for the test suite.

The oracles deliberately avoid the library's own code paths: entropy goes
through math.log over plain Python floats, kernels are assembled entry by
entry. Expected values in tests come from these, never from the functions
under test.
"""

import math

import numpy as np


def entropy_oracle(lams) -> float:
    """Shannon entropy, natural log, zero eigenvalues skipped."""
    return -sum(l * math.log(l) for l in lams if l > 0.0)


def score_oracle(lams) -> float:
    return math.exp(entropy_oracle(lams))


def random_kernel(rng, n, d=None, identity_blend=0.0) -> np.ndarray:
    """Random PSD unit-diagonal similarity matrix (Gram of random unit rows)."""
    d = d or max(2, n // 2 + 1)
    x = rng.standard_normal((n, d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    k = x @ x.T
    k = (k + k.T) / 2.0
    if identity_blend:
        k = (1.0 - identity_blend) * k + identity_blend * np.eye(n)
    np.fill_diagonal(k, 1.0)
    return k


def block_ones(sizes) -> np.ndarray:
    """Block-diagonal all-ones kernel: groups of duplicates, groups disjoint."""
    n = sum(sizes)
    k = np.zeros((n, n))
    at = 0
    for s in sizes:
        k[at : at + s, at : at + s] = 1.0
        at += s
    return k


def block_diag(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    k = np.zeros((n, n))
    at = 0
    for b in blocks:
        m = b.shape[0]
        k[at : at + m, at : at + m] = b
        at += m
    return k


def attribute_toy_kernel(items) -> np.ndarray:
    """Two-attribute toy similarity: 1 if both attributes match, 0.5 if
    exactly one does, 0 if neither."""
    n = len(items)
    k = np.zeros((n, n))
    for i, (s1, c1) in enumerate(items):
        for j, (s2, c2) in enumerate(items):
            shared = int(s1 == s2) + int(c1 == c2)
            k[i, j] = (0.0, 0.5, 1.0)[shared]
    return k
