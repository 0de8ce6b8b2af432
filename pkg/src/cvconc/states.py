"""State representations: midpoint-discretized wavefunctions, Gaussian pure states,
bipartitions of the degrees of freedom, and the projection/selector matrices used by
the doubled-coordinate machinery."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, StateValidityError, TruncationWarning

NORM_TOL = 1e-9
MASS_DEFECT_WARN = 1e-3
CONDITION_FLAG = 1e2


@dataclass(frozen=True)
class GridAxis:
    """One coordinate axis discretized by the midpoint rule.

    Nodes sit at min + (i + 0.5) * delta; every node carries weight delta.
    """

    min: float
    max: float
    points: int

    def __post_init__(self):
        if not self.max > self.min:
            raise InputError(f"axis requires max > min, got [{self.min}, {self.max}]")
        if int(self.points) < 2:
            raise InputError("axis requires at least 2 points")
        object.__setattr__(self, "points", int(self.points))

    @property
    def delta(self) -> float:
        return (self.max - self.min) / self.points

    @property
    def nodes(self) -> np.ndarray:
        return self.min + (np.arange(self.points) + 0.5) * self.delta

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.points, self.delta)


@dataclass(frozen=True)
class GridState:
    """A dense complex wavefunction sampled on a product of GridAxis nodes.

    Amplitudes are stored row-major with the last axis fastest. The discrete
    squared norm sum(|amp|^2) * prod(delta_k) must equal 1 within NORM_TOL.
    """

    axes: tuple
    amplitudes: np.ndarray
    diagnostics: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        axes = tuple(self.axes)
        if len(axes) < 1:
            raise InputError("GridState needs at least one axis")
        object.__setattr__(self, "axes", axes)
        shape = tuple(ax.points for ax in axes)
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.size == int(np.prod(shape)):
            amp = np.ascontiguousarray(amp.reshape(shape))
        else:
            raise InputError(
                f"amplitude count {amp.size} does not match grid of {int(np.prod(shape))} nodes"
            )
        object.__setattr__(self, "amplitudes", amp)
        nsq = self.norm_squared
        if abs(nsq - 1.0) > NORM_TOL:
            raise StateValidityError(
                f"discrete norm^2 = {nsq:.12g}, must be 1 within {NORM_TOL}"
            )

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def node_weight(self) -> float:
        """Quadrature weight of a single node (product of the axis deltas)."""
        w = 1.0
        for ax in self.axes:
            w *= ax.delta
        return w

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2)) * self.node_weight

    @classmethod
    def from_amplitudes(cls, axes, amplitudes, diagnostics=None) -> "GridState":
        """Build a GridState, renormalizing the sampled amplitudes."""
        axes = tuple(axes)
        amp = np.asarray(amplitudes, dtype=np.complex128)
        w = 1.0
        for ax in axes:
            w *= ax.delta
        mass = float(np.sum(np.abs(amp) ** 2)) * w
        if mass <= 0.0:
            raise InputError("cannot normalize identically zero amplitudes")
        return cls(axes, amp / np.sqrt(mass), diagnostics or {})


def evaluate_grid(state: GridState, index) -> complex:
    """Amplitude at the node addressed by an integer index tuple."""
    index = tuple(int(i) for i in index)
    if len(index) != state.n:
        raise InputError(f"index has {len(index)} entries for a {state.n}-axis state")
    for k, (i, ax) in enumerate(zip(index, state.axes)):
        if not 0 <= i < ax.points:
            raise InputError(f"index {i} out of range for axis {k} with {ax.points} points")
    return complex(state.amplitudes[index])


@dataclass(frozen=True)
class GaussianPureState:
    """Pure Gaussian wavefunction N * exp(-x^T A x / 2) with complex symmetric
    precision matrix A whose real part is positive-definite."""

    A: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=np.complex128)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InputError("precision matrix must be square")
        if not np.allclose(A, A.T, rtol=0.0, atol=1e-12):
            raise InputError("precision matrix must be symmetric (A = A^T)")
        try:
            np.linalg.cholesky(A.real)
        except np.linalg.LinAlgError:
            raise InputError("Re(A) must be positive-definite (normalizable state)")
        object.__setattr__(self, "A", A)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def normalization(self) -> float:
        """(det Re(A) / pi^n)^(1/4), the real positive normalization constant."""
        sign, logdet = np.linalg.slogdet(self.A.real)
        return float(np.exp(0.25 * (logdet - self.n * np.log(np.pi))))


def evaluate_gaussian(state: GaussianPureState, x) -> complex:
    """Wavefunction value at coordinates x (vectorized over leading dimensions)."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 1
    if x.shape[-1] != state.n:
        raise InputError(f"coordinate vector must have length {state.n}")
    quad = np.einsum("...i,ij,...j->...", x, state.A, x)
    val = state.normalization * np.exp(-0.5 * quad)
    return complex(val) if scalar else val


def discretize(state: GaussianPureState, axes) -> GridState:
    """Sample a Gaussian pure state at midpoint nodes and renormalize.

    The pre-renormalization mass defect is recorded in the diagnostics and a
    TruncationWarning is issued when it exceeds MASS_DEFECT_WARN (domain too small).
    """
    axes = tuple(axes)
    if len(axes) != state.n:
        raise InputError(f"need {state.n} axes, got {len(axes)}")
    mesh = np.meshgrid(*[ax.nodes for ax in axes], indexing="ij")
    pts = np.stack(mesh, axis=-1)
    amp = evaluate_gaussian(state, pts)
    w = 1.0
    for ax in axes:
        w *= ax.delta
    mass = float(np.sum(np.abs(amp) ** 2)) * w
    defect = abs(1.0 - mass)
    cond = float(np.linalg.cond(state.A.real))
    diagnostics = {
        "mass_defect": defect,
        "precision_condition": cond,
        "ill_conditioned": cond > CONDITION_FLAG,
    }
    if defect > MASS_DEFECT_WARN:
        warnings.warn(
            f"discretization loses probability mass {defect:.3g}; enlarge the domain",
            TruncationWarning,
        )
    return GridState.from_amplitudes(axes, amp, diagnostics)


@dataclass(frozen=True)
class Bipartition:
    """A subset M of the axis indices {0..n-1} with 1 <= |M| <= n-1."""

    n: int
    members: tuple

    def __post_init__(self):
        members = tuple(sorted({int(i) for i in self.members}))
        if self.n < 2:
            raise InputError("bipartition requires at least two degrees of freedom")
        if any(i < 0 or i >= self.n for i in members):
            raise InputError(f"members must lie in 0..{self.n - 1}")
        if not 1 <= len(members) <= self.n - 1:
            raise InputError("bipartition needs 1 <= |M| <= n-1")
        object.__setattr__(self, "members", members)

    @property
    def complement(self) -> tuple:
        chosen = set(self.members)
        return tuple(i for i in range(self.n) if i not in chosen)

    @classmethod
    def parse(cls, text: str, n: int) -> "Bipartition":
        try:
            members = tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
        except ValueError:
            raise InputError(f"cannot parse bipartition spec {text!r}")
        return cls(n, members)


@dataclass(frozen=True)
class ProjectionMasks:
    """Diagonal 0/1 mask for the member block plus the two n x 2n copy selectors."""

    M_mask: np.ndarray
    N1: np.ndarray
    N2: np.ndarray


def build_masks(bipartition: Bipartition) -> ProjectionMasks:
    n = bipartition.n
    mask = np.zeros((n, n))
    for i in bipartition.members:
        mask[i, i] = 1.0
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return ProjectionMasks(
        M_mask=mask,
        N1=np.hstack([eye, zero]),
        N2=np.hstack([zero, eye]),
    )


def _flat_weights(axes) -> np.ndarray:
    w = np.ones(1)
    for ax in axes:
        w = np.multiply.outer(w, ax.weights).reshape(-1)
    return w


def block_matrix(state: GridState, bipartition: Bipartition, weighted: bool = True):
    """Amplitudes reshaped to (member block, complement block).

    Returns (F, w_m, w_rest) where rows run over the linearized member-axis
    indices and columns over the complement. With weighted=True each entry is
    scaled by sqrt(w_row * w_col) so plain matrix algebra reproduces the
    weighted integrals.
    """
    if bipartition.n != state.n:
        raise InputError("bipartition size does not match the state")
    order = bipartition.members + bipartition.complement
    arr = np.transpose(state.amplitudes, order)
    wm = _flat_weights([state.axes[k] for k in bipartition.members])
    wrest = _flat_weights([state.axes[k] for k in bipartition.complement])
    F = arr.reshape(wm.size, wrest.size)
    if weighted:
        F = F * np.sqrt(np.outer(wm, wrest))
    return F, wm, wrest
