"""Product quadrature rules: midpoint summation over grid axes and rescaled
Gauss-Hermite rules for integrands with Gaussian decay."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError


@dataclass(frozen=True)
class ProductRule:
    """Per-axis node and weight lists defining a tensor-product quadrature."""

    nodes: tuple
    weights: tuple

    def __post_init__(self):
        nodes = tuple(np.asarray(n, dtype=float) for n in self.nodes)
        weights = tuple(np.asarray(w, dtype=float) for w in self.weights)
        if len(nodes) != len(weights) or not nodes:
            raise InputError("need matching, nonempty node and weight lists")
        for n, w in zip(nodes, weights):
            if n.shape != w.shape or n.ndim != 1:
                raise InputError("per-axis nodes and weights must be 1-d and equal length")
            if np.any(w <= 0.0):
                raise InputError("quadrature weights must be strictly positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def ndim(self) -> int:
        return len(self.nodes)

    @property
    def total_points(self) -> int:
        count = 1
        for n in self.nodes:
            count *= n.size
        return count


def midpoint_rule(axes) -> ProductRule:
    """Midpoint rule over GridAxis objects; weights per axis sum to max - min."""
    return ProductRule(
        nodes=tuple(ax.nodes for ax in axes),
        weights=tuple(ax.weights for ax in axes),
    )


def gauss_hermite_rule(points_per_axis: int, scale=1.0, ndim: int = None) -> ProductRule:
    """Rescaled Gauss-Hermite rule with total weights w_i * exp(x_i^2).

    The returned weights integrate functions with Gaussian decay directly:
    sum w~_i f(x_i) ~= int f(x) dx, exactly when f(x) = exp(-(x/s)^2) p(x)
    with p a polynomial of degree < 2 * points_per_axis.
    """
    if points_per_axis < 1:
        raise InputError("Gauss-Hermite rule needs at least one node")
    scales = np.atleast_1d(np.asarray(scale, dtype=float))
    if ndim is not None and scales.size == 1:
        scales = np.full(ndim, scales[0])
    if np.any(scales <= 0.0):
        raise InputError("scales must be positive")
    x, w = np.polynomial.hermite.hermgauss(points_per_axis)
    total = w * np.exp(x**2)
    return ProductRule(
        nodes=tuple(s * x for s in scales),
        weights=tuple(s * total for s in scales),
    )


def integrate(rule: ProductRule, f) -> complex:
    """Deterministic weighted sum of f over the product grid.

    f is called with one positional coordinate array per axis (broadcast over
    the full mesh); scalar-only callables are evaluated point by point.
    """
    mesh = np.meshgrid(*rule.nodes, indexing="ij")
    shape = mesh[0].shape if mesh else ()
    try:
        values = np.asarray(f(*mesh), dtype=np.complex128)
        if values.shape != shape:
            raise ValueError
    except Exception:
        flat = np.stack([m.reshape(-1) for m in mesh], axis=-1)
        values = np.array([f(*pt) for pt in flat], dtype=np.complex128).reshape(shape)
    if not np.all(np.isfinite(values.view(float))):
        bad = np.argwhere(~np.isfinite(values))[0]
        node = tuple(float(rule.nodes[k][i]) for k, i in enumerate(bad))
        raise NumericError(f"integrand is not finite at node {node}")
    weight = np.ones(())
    for w in rule.weights:
        weight = np.multiply.outer(weight, w)
    return complex(np.sum(values * weight))
