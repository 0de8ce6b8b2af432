"""Doubled-coordinate block-swap machinery, partial-transpose operators,
the Hilbert-Schmidt and fourth-power concurrence routes, PPT spectra, and
Wigner-function invariance checks for Gaussian states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError
from .quadrature import gauss_hermite_rule
from .states import Bipartition, GaussianPureState, GridState, block_matrix

# Dense operators over the linearized grid are capped at this edge length.
_MAX_OPERATOR_DIM = 4096

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class LambdaPermutation:
    """Involutive swap of the member-block coordinates between the two copies
    of an n-tuple stacked into a 2n-vector."""

    bipartition: Bipartition

    @property
    def n(self) -> int:
        return self.bipartition.n

    @property
    def matrix(self) -> np.ndarray:
        n = self.n
        mask = np.zeros((n, n))
        for i in self.bipartition.members:
            mask[i, i] = 1.0
        eye = np.eye(n)
        return np.block([[eye - mask, mask], [mask, eye - mask]])

    def apply(self, X) -> np.ndarray:
        """Swap member components between the two halves of 2n-vectors
        (vectorized over leading dimensions)."""
        X = np.asarray(X, dtype=float)
        if X.shape[-1] != 2 * self.n:
            raise InputError(f"expected vectors of length {2 * self.n}")
        out = X.copy()
        for i in self.bipartition.members:
            out[..., i] = X[..., self.n + i]
            out[..., self.n + i] = X[..., i]
        return out

    def apply_index_pair(self, idx1, idx2):
        """Same swap on a pair of per-axis integer index tuples."""
        idx1 = tuple(idx1)
        idx2 = tuple(idx2)
        if len(idx1) != self.n or len(idx2) != self.n:
            raise InputError(f"index tuples must have length {self.n}")
        members = set(self.bipartition.members)
        out1 = tuple(idx2[k] if k in members else idx1[k] for k in range(self.n))
        out2 = tuple(idx1[k] if k in members else idx2[k] for k in range(self.n))
        return out1, out2


@dataclass(frozen=True)
class DiscreteOperator:
    """Square matrix over linearized grid indices in the symmetric
    sqrt-weight convention, so plain traces equal weighted kernel traces."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("operator matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    @property
    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) / 2.0

    def hermitized(self) -> np.ndarray:
        return (self.matrix + self.matrix.conj().T) / 2.0


def _check_operator_size(gm: int, gmbar: int):
    if gm * gmbar > _MAX_OPERATOR_DIM:
        raise InputError(
            f"dense operator would have edge {gm * gmbar} > {_MAX_OPERATOR_DIM}; "
            "reduce the grid"
        )


def lambda_invariance_gap(state: GridState, bipartition: Bipartition) -> float:
    """Max-norm of Phi(X) - Phi(Lambda X) over the doubled grid (raw amplitudes)."""
    F, _, _ = block_matrix(state, bipartition, weighted=False)
    gm = F.shape[0]
    gap = 0.0
    for a in range(gm):
        # Phi[(a,b),(c,d)] = F[a,b] F[c,d]; the swap sends it to F[c,b] F[a,d].
        phi = F[a][None, :, None] * F[:, None, :]
        swapped = F[:, :, None] * F[a][None, None, :]
        gap = max(gap, float(np.max(np.abs(phi - swapped))))
    return gap


def _pt_matrix(G: np.ndarray) -> np.ndarray:
    gm, gmbar = G.shape
    _check_operator_size(gm, gmbar)
    R = np.einsum("ad,cb->abcd", G, G.conj())
    return R.reshape(gm * gmbar, gm * gmbar)


def _pt_tilde_matrix(G: np.ndarray) -> np.ndarray:
    gm, gmbar = G.shape
    _check_operator_size(gm, gmbar)
    R = np.einsum("ad,cb->abcd", G, G)
    return R.reshape(gm * gmbar, gm * gmbar)


def build_rho_pt(state: GridState, bipartition: Bipartition) -> DiscreteOperator:
    """Partial transpose of the pure density operator: kernel
    phi(x_M, y_rest) phi*(y_M, x_rest) with symmetric weighting."""
    G, _, _ = block_matrix(state, bipartition)
    return DiscreteOperator(_pt_matrix(G))


def concurrence_route_D(state: GridState, bipartition: Bipartition) -> float:
    """Squared Hilbert-Schmidt distance between rho-tilde and its partial transpose."""
    G, _, _ = block_matrix(state, bipartition)
    gm, gmbar = G.shape
    total = 0.0
    for a in range(gm):
        plain = G[a][:, None, None] * G[None, :, :]       # [b,c,d] = G[a,b] G[c,d]
        swapped = G.T[:, :, None] * G[a][None, None, :]   # [b,c,d] = G[c,b] G[a,d]
        total += float(np.sum(np.abs(plain - swapped) ** 2))
    return total


def pt_square_factorization_gap(state: GridState, bipartition: Bipartition) -> float:
    """Max-norm residual of the partial-transpose square factorization.

    rho_PT^2 equals rho_M (x) conj(rho_rest) and rho~_PT rho~_PT^dag equals
    rho_M (x) rho_rest; the conjugation on the complement factor comes from
    the transposed kernel ordering and is invisible for real wavefunctions.
    """
    G, _, _ = block_matrix(state, bipartition)
    rho_m = G @ G.conj().T
    rho_rest = G.T @ G.conj()
    pt = _pt_matrix(G)
    gap_pt = float(np.max(np.abs(pt @ pt - np.kron(rho_m, rho_rest.conj()))))
    tilde = _pt_tilde_matrix(G)
    gap_tilde = float(np.max(np.abs(tilde @ tilde.conj().T - np.kron(rho_m, rho_rest))))
    return max(gap_pt, gap_tilde)


def concurrence_route_E(state: GridState, bipartition: Bipartition) -> float:
    """Fourth-power form 2 [1 - sqrt(Tr rho_PT^4)]."""
    G, _, _ = block_matrix(state, bipartition)
    pt = _pt_matrix(G)
    sq = pt @ pt
    tr4 = float(np.sum(sq * sq.T).real)
    if tr4 < -1e-12:
        raise NumericError(f"Tr(rho_PT^4) = {tr4:.3g} is negative beyond round-off")
    return 2.0 * (1.0 - np.sqrt(max(tr4, 0.0)))


def ppt_min_eigenvalue(state: GridState, bipartition: Bipartition) -> float:
    """Smallest eigenvalue of the hermitized partial-transpose matrix."""
    op = build_rho_pt(state, bipartition)
    if op.hermiticity_residual > HERMITICITY_TOL:
        raise NumericError(
            f"anti-Hermitian residual {op.hermiticity_residual:.3g} exceeds "
            f"{HERMITICITY_TOL}"
        )
    try:
        eigs = np.linalg.eigvalsh(op.hermitized())
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}")
    return float(eigs[0])


def wigner_gaussian(state: GaussianPureState, x, p):
    """Phase-space distribution of a Gaussian pure state.

    Completing the square in the defining integral gives
    W(x, p) = pi^-n exp(-x^T R x - (p + I x)^T R^-1 (p + I x))
    with R = Re(A) and I = Im(A).
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    scalar = x.ndim == 1
    if x.shape[-1] != state.n or p.shape != x.shape:
        raise InputError(f"x and p must both have trailing length {state.n}")
    R = state.A.real
    I = state.A.imag
    Rinv = np.linalg.inv(R)
    shifted = p + x @ I.T
    quad = np.einsum("...i,ij,...j->...", x, R, x)
    quad = quad + np.einsum("...i,ij,...j->...", shifted, Rinv, shifted)
    val = np.pi ** (-state.n) * np.exp(-quad)
    return float(val) if scalar else val


def wigner_invariance_gap(state: GaussianPureState, bipartition: Bipartition, samples) -> float:
    """Max gap of the doubled Wigner product under the block-swap of both
    position and momentum doubled vectors, over the given (X, P) samples."""
    lam = LambdaPermutation(bipartition)
    n = state.n
    gap = 0.0
    for X, P in samples:
        X = np.asarray(X, dtype=float).reshape(2 * n)
        P = np.asarray(P, dtype=float).reshape(2 * n)
        w = wigner_gaussian(state, X[:n], P[:n]) * wigner_gaussian(state, X[n:], P[n:])
        Xs, Ps = lam.apply(X), lam.apply(P)
        ws = wigner_gaussian(state, Xs[:n], Ps[:n]) * wigner_gaussian(state, Xs[n:], Ps[n:])
        gap = max(gap, abs(w - ws))
    return gap


def _wigner_scales(state: GaussianPureState):
    R = state.A.real
    Rinv = np.linalg.inv(R)
    sx = 1.0 / np.sqrt(np.diag(R))
    sp = 1.0 / np.sqrt(np.diag(Rinv))
    return sx, sp


def wigner_normalization(state: GaussianPureState, points_per_axis: int = 40) -> float:
    """Quadrature of W over the full phase space; 1 for a normalized state."""
    sx, sp = _wigner_scales(state)
    rx = gauss_hermite_rule(points_per_axis, sx)
    rp = gauss_hermite_rule(points_per_axis, sp)
    mesh = np.meshgrid(*rx.nodes, *rp.nodes, indexing="ij")
    n = state.n
    x = np.stack(mesh[:n], axis=-1)
    p = np.stack(mesh[n:], axis=-1)
    vals = wigner_gaussian(state, x, p)
    w = np.ones(())
    for wi in list(rx.weights) + list(rp.weights):
        w = np.multiply.outer(w, wi)
    return float(np.sum(vals * w))


def wigner_pt_fourth_moment_concurrence(
    state: GaussianPureState, bipartition: Bipartition, points_per_axis: int = 48
) -> float:
    """Squared concurrence of a two-mode Gaussian from the partially
    transposed Wigner function by quadrature.

    W_PT(x1, p1, x2, p2) = W(x1, p1, x2, -p2); its square factorizes through
    the reduced-state marginals, and with the phase-space trace rule
    Tr(rho_PT^4) = (2 pi)^2 * int W_M^2 * int W_Mbar^2 for two modes.
    """
    if state.n != 2:
        raise InputError("the momentum-flip form is implemented for two modes only")
    sx, sp = _wigner_scales(state)
    rx = gauss_hermite_rule(points_per_axis, sx)
    rp = gauss_hermite_rule(points_per_axis, sp)
    x1, p1, x2, p2 = np.meshgrid(rx.nodes[0], rp.nodes[0], rx.nodes[1], rp.nodes[1],
                                 indexing="ij")
    x = np.stack([x1, x2], axis=-1)
    p = np.stack([p1, -p2], axis=-1)
    w_pt = wigner_gaussian(state, x, p)
    wx1, wp1 = rx.weights[0], rp.weights[0]
    wx2, wp2 = rx.weights[1], rp.weights[1]
    marg_m = np.einsum("ijkl,k,l->ij", w_pt, wx2, wp2)
    marg_rest = np.einsum("ijkl,i,j->kl", w_pt, wx1, wp1)
    int_m = float(np.einsum("ij,i,j->", marg_m**2, wx1, wp1))
    int_rest = float(np.einsum("kl,k,l->", marg_rest**2, wx2, wp2))
    tr4 = (2.0 * np.pi) ** 2 * int_m * int_rest
    if tr4 < 0.0:
        raise NumericError("negative fourth-moment estimate")
    return 2.0 * (1.0 - np.sqrt(tr4))
