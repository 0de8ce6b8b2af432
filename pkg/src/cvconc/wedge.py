"""Wedge product on discretized function spaces and the extended Lagrange identity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Bivector:
    """Antisymmetric grade-2 coefficients over strictly ordered index pairs.

    Only pairs (i, j) with j > i in the linear order are stored; the diagonal
    vanishes identically and swapped pairs follow by sign flip. pair_weights
    holds the product w_i * w_j of the constituent quadrature weights.
    """

    size: int
    coefficients: np.ndarray
    pair_weights: np.ndarray

    def __post_init__(self):
        npairs = self.size * (self.size - 1) // 2
        coeffs = np.asarray(self.coefficients, dtype=np.complex128)
        pw = np.asarray(self.pair_weights, dtype=float)
        if coeffs.shape != (npairs,) or pw.shape != (npairs,):
            raise InputError("coefficient and pair-weight arrays must cover the j > i triangle")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "pair_weights", pw)

    @property
    def pair_indices(self):
        return np.triu_indices(self.size, k=1)


def _as_vectors(f, g, weights):
    f = np.asarray(f, dtype=np.complex128).reshape(-1)
    g = np.asarray(g, dtype=np.complex128).reshape(-1)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if not (f.size == g.size == w.size):
        raise InputError("vectors and weights must have equal length")
    if np.any(w <= 0.0):
        raise InputError("weights must be strictly positive")
    return f, g, w


def wedge(f, g, weights) -> Bivector:
    """Coefficients f_i g_j - f_j g_i over ordered pairs j > i."""
    f, g, w = _as_vectors(f, g, weights)
    i, j = np.triu_indices(f.size, k=1)
    coeffs = f[i] * g[j] - f[j] * g[i]
    return Bivector(size=f.size, coefficients=coeffs, pair_weights=w[i] * w[j])


def bivector_p_norm(b: Bivector, p) -> float:
    """Weighted p-norm over ordered pairs; p = inf is the plain coefficient max."""
    mag = np.abs(b.coefficients)
    if p == 1:
        return float(np.sum(mag * b.pair_weights))
    if p == 2:
        return float(np.sqrt(np.sum(mag**2 * b.pair_weights)))
    if p == np.inf or p == "inf":
        return float(mag.max(initial=0.0))
    raise InputError(f"unsupported p-norm order {p!r}; use 1, 2 or inf")


def lagrange_identity_gap(f, g, weights) -> float:
    """LHS minus RHS of the weighted Lagrange identity (zero in exact arithmetic).

    LHS = ||f||^2 ||g||^2 - |<f, g>|^2, RHS = sum_{j>i} |f_i g_j - f_j g_i|^2 w_i w_j.
    """
    f, g, w = _as_vectors(f, g, weights)
    nf = float(np.sum(np.abs(f) ** 2 * w))
    ng = float(np.sum(np.abs(g) ** 2 * w))
    ip = complex(np.sum(f * np.conj(g) * w))
    lhs = nf * ng - abs(ip) ** 2
    i, j = np.triu_indices(f.size, k=1)
    rhs = float(np.sum(np.abs(f[i] * g[j] - f[j] * g[i]) ** 2 * w[i] * w[j]))
    return lhs - rhs
