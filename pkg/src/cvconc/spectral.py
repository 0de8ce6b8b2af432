"""Reduced density matrices, purity, von Neumann entropy, and the
Hilbert-Schmidt identity linking them to the partial-transpose distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .states import Bipartition, GridState, block_matrix
from .transpose import DiscreteOperator, concurrence_route_D

ENTROPY_EIGENVALUE_FLOOR = 1e-14


@dataclass(frozen=True)
class ReducedDensity:
    """Reduced density operator of the member block in sqrt-weight convention."""

    operator: DiscreteOperator
    bipartition: Bipartition

    def __post_init__(self):
        res = self.operator.hermiticity_residual
        if res > 1e-12:
            raise NumericError(f"reduced density not Hermitian: residual {res:.3g}")
        tr = self.operator.trace
        if abs(tr - 1.0) > 1e-10:
            raise NumericError(f"reduced density trace {tr:.12g}, expected 1")

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.matrix


def reduce(state: GridState, bipartition: Bipartition) -> ReducedDensity:
    """Trace out the complement block: kernel sum_k phi(x, k) phi*(x', k) w_k."""
    G, _, _ = block_matrix(state, bipartition)
    return ReducedDensity(DiscreteOperator(G @ G.conj().T), bipartition)


def purity(rd: ReducedDensity) -> float:
    """Tr(rho_M^2), in [0, 1] up to discretization round-off."""
    value = float(np.sum(np.abs(rd.matrix) ** 2))
    if not -1e-9 <= value <= 1.0 + 1e-9:
        raise NumericError(f"purity {value:.12g} outside [0, 1]; discretization pathology")
    return value


def concurrence_route_C(state: GridState, bipartition: Bipartition) -> float:
    """Purity form of the squared concurrence: 2 [1 - Tr(rho_M^2)]."""
    return 2.0 * (1.0 - purity(reduce(state, bipartition)))


def eigenvalues(rd: ReducedDensity) -> np.ndarray:
    """Ascending real spectrum of the hermitized reduced density."""
    eigs = np.linalg.eigvalsh(rd.operator.hermitized())
    if eigs[0] < -1e-8:
        raise NumericError(f"reduced density eigenvalue {eigs[0]:.3g} < -1e-8")
    return eigs


def von_neumann_entropy(rd: ReducedDensity) -> float:
    """S = -sum lambda ln lambda over eigenvalues above the floor (natural log)."""
    eigs = eigenvalues(rd)
    eigs = eigs[eigs > ENTROPY_EIGENVALUE_FLOOR]
    return float(-np.sum(eigs * np.log(eigs)))


def one_minus_rho_moment(rd: ReducedDensity, k: int) -> float:
    """Expectation <(1 - rho)^k> = sum lambda (1 - lambda)^k, the k-th term
    scale of the entropy series around a pure state."""
    eigs = eigenvalues(rd)
    return float(np.sum(eigs * (1.0 - eigs) ** k))


def hs_identity_gap(state: GridState, bipartition: Bipartition) -> float:
    """|route_D + 2 * purity - 2|: the Hilbert-Schmidt identity between the
    partial-transpose distance and the distance of rho_M to maximal mixing,
    read in the infinite-dimensional limit where the latter reduces to purity."""
    d = concurrence_route_D(state, bipartition)
    p = purity(reduce(state, bipartition))
    return abs(d + 2.0 * p - 2.0)
