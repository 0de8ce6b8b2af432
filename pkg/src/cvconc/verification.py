"""Machine-readable verification of every identity the framework guarantees."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import concurrence as conc
from . import spectral, transpose
from .states import Bipartition, GridState, block_matrix

SEPARABLE_E2 = 1e-10
ENTANGLED_E2 = 1e-3


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, name: str, measured: float, tolerance: float, passed=None):
        if passed is None:
            passed = abs(measured) <= tolerance
        self.checks.append(
            {"name": name, "measured": float(measured), "tolerance": float(tolerance),
             "passed": bool(passed)}
        )

    @property
    def overall(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return {"checks": self.checks, "overall": "pass" if self.overall else "fail"}


def run_verification(state: GridState, bipartition: Bipartition) -> VerificationReport:
    report = VerificationReport()

    report.add("normalization", state.norm_squared - 1.0, 1e-9)

    # Lagrange identity on the two largest member-block slices.
    F, _, wrest = block_matrix(state, bipartition, weighted=False)
    norms = (np.abs(F) ** 2) @ wrest
    top = np.argsort(norms)[-2:]
    from .wedge import lagrange_identity_gap

    scale = max(norms[top[0]] * norms[top[1]], 1e-300)
    gap = lagrange_identity_gap(F[top[0]], F[top[1]], wrest) / scale
    report.add("lagrange_identity", gap, 1e-12)

    routes = {
        "A": conc.concurrence_route_A(state, bipartition),
        "B": conc.concurrence_route_B(state, bipartition),
        "C": spectral.concurrence_route_C(state, bipartition),
        "Lambda": conc.concurrence_route_Lambda(state, bipartition),
        "D": transpose.concurrence_route_D(state, bipartition),
        "E": transpose.concurrence_route_E(state, bipartition),
    }
    values = list(routes.values())
    route_gap = max(abs(u - v) for u in values for v in values)
    report.add("route_agreement", route_gap, 1e-9)
    e2 = routes["B"]

    op = transpose.build_rho_pt(state, bipartition)
    report.add("trace_rho_pt", op.trace.real - 1.0, 1e-10)
    tr2 = float(np.sum(op.matrix * op.matrix.T).real)
    report.add("trace_rho_pt_squared", tr2 - 1.0, 1e-10)
    report.add(
        "pt_square_factorization",
        transpose.pt_square_factorization_gap(state, bipartition),
        1e-10,
    )

    report.add("hs_identity", spectral.hs_identity_gap(state, bipartition), 1e-10)

    rd = spectral.reduce(state, bipartition)
    entropy = spectral.von_neumann_entropy(rd)
    report.add("entropy_bound", max(0.0, e2 / 2.0 - entropy), 1e-9)
    if e2 < SEPARABLE_E2:
        report.add("entropy_vanishes_when_separable", entropy, 1e-9)

    min_eig = transpose.ppt_min_eigenvalue(state, bipartition)
    if e2 < SEPARABLE_E2:
        report.add("ppt_positive_for_separable", min_eig, 1e-8, passed=min_eig >= -1e-8)
    elif e2 > ENTANGLED_E2:
        report.add("ppt_negative_for_entangled", min_eig, 1e-6, passed=min_eig < -1e-6)

    lam_gap = transpose.lambda_invariance_gap(state, bipartition)
    if e2 < SEPARABLE_E2:
        report.add("lambda_invariance_for_separable", lam_gap, 1e-9)

    return report
