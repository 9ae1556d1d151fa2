"""Expectation values, dispersions, uncertainty bounds, saturation reports.

For Hermitian A, B with [A, B] = i C the product of dispersions obeys
Delta_A * Delta_B >= |<C>| / 2, with equality exactly when
(A - <A>)|psi> = -i xi (B - <B>)|psi| for some xi > 0; at equality the
dispersions split as Delta_A^2 = (xi/2) <C>, Delta_B^2 = <C> / (2 xi).
Everything here works off mat-vec products, so reports stay cheap even at
the full two-mode dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, NonHermitianOperator
from .fock_core import FockOperator, FockState

HERMITICITY_TOL = 1e-10
SATURATION_REL_TOL = 1e-6


def _check_match(op: FockOperator, psi: FockState):
    if op.dim != psi.dim or op.trunc != psi.trunc:
        raise InvalidDimension(f"operator dim {op.dim} vs state dim {psi.dim}")


def _check_hermitian(op: FockOperator, what: str = "operator"):
    defect = op.hermiticity_defect()
    if defect > HERMITICITY_TOL:
        raise NonHermitianOperator(f"{what} deviates from self-adjoint by {defect:.3e}")


def expectation(op: FockOperator, psi: FockState) -> complex:
    """<psi| op |psi>."""
    _check_match(op, psi)
    return complex(np.vdot(psi.amplitudes, op.entries @ psi.amplitudes))


def dispersion(op: FockOperator, psi: FockState) -> float:
    """sqrt(<op^2> - <op>^2) for Hermitian op.

    Tiny negative round-off of the variance (>= -1e-12) is clamped to zero.
    """
    _check_match(op, psi)
    _check_hermitian(op)
    image = op.entries @ psi.amplitudes
    mean = np.vdot(psi.amplitudes, image).real
    var = float(np.vdot(image, image).real - mean * mean)
    if var < 0.0:
        if var < -1e-12:
            raise ValueError(f"variance {var:.3e} below round-off tolerance")
        var = 0.0
    return math.sqrt(var)


def commutator_mean(a: FockOperator, b: FockOperator, psi: FockState) -> float:
    """<C> where [a, b] = i C; real for Hermitian a, b.

    <psi|[a,b]|psi> = 2i Im <a psi, b psi>, so a single pair of mat-vecs
    suffices.
    """
    _check_match(a, psi)
    _check_match(b, psi)
    _check_hermitian(a, "first operator")
    _check_hermitian(b, "second operator")
    return 2.0 * float(np.vdot(a.entries @ psi.amplitudes, b.entries @ psi.amplitudes).imag)


def heisenberg_bound(a: FockOperator, b: FockOperator, psi: FockState) -> float:
    """|<C>| / 2, the floor of the dispersion product for the pair (a, b)."""
    return 0.5 * abs(commutator_mean(a, b, psi))


def saturation_condition_residual(
    a: FockOperator,
    b: FockOperator,
    xi: float,
    psi: FockState,
    tol: float = 1e-7,
) -> float:
    """Norm of (a - <a>)|psi> + i xi (b - <b>)|psi>.

    Zero (up to tol) exactly on states saturating the (a, b) uncertainty
    relation at ratio xi.  When the residual is below ``tol`` the dispersion
    balance Delta_a^2 + xi^2 Delta_b^2 = xi <C> is verified as an internal
    consistency check.
    """
    if xi <= 0:
        raise ValueError(f"xi must be positive, got {xi}")
    _check_match(a, psi)
    _check_match(b, psi)
    _check_hermitian(a, "first operator")
    _check_hermitian(b, "second operator")
    vec = psi.amplitudes
    a_img = a.entries @ vec
    b_img = b.entries @ vec
    a_mean = np.vdot(vec, a_img).real
    b_mean = np.vdot(vec, b_img).real
    residual_vec = (a_img - a_mean * vec) + 1j * xi * (b_img - b_mean * vec)
    residual = float(np.linalg.norm(residual_vec))
    if residual <= tol:
        var_a = float(np.vdot(a_img, a_img).real - a_mean * a_mean)
        var_b = float(np.vdot(b_img, b_img).real - b_mean * b_mean)
        c_mean = 2.0 * float(np.vdot(a_img, b_img).imag)
        balance = abs(var_a + xi * xi * var_b - xi * c_mean)
        if balance > 1e-7 * max(1.0, abs(xi * c_mean)):
            raise ArithmeticError(
                f"saturated state violates the dispersion balance by {balance:.3e}"
            )
    return residual


@dataclass(frozen=True)
class PairRecord:
    """Dispersion record of one operator pair on one state."""

    pair: str
    delta_a: float
    delta_b: float
    product: float
    bound: float
    residual: float
    xi_estimate: float
    saturated: bool

    def to_json_dict(self) -> dict:
        return {
            "pair": self.pair,
            "delta_a": self.delta_a,
            "delta_b": self.delta_b,
            "product": self.product,
            "bound": self.bound,
            "residual": self.residual,
            "xi_estimate": self.xi_estimate,
            "saturated": self.saturated,
        }


@dataclass(frozen=True)
class SaturationReport:
    """All three deformed-pair records for one state at one time."""

    t: float
    f_t: float
    pairs: tuple[PairRecord, ...]

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "f": self.f_t,
            "pairs": [rec.to_json_dict() for rec in self.pairs],
        }

    def to_csv_rows(self) -> list[list]:
        return [
            [self.t, self.f_t, rec.pair, rec.delta_a, rec.delta_b,
             rec.product, rec.bound, rec.residual, rec.xi_estimate]
            for rec in self.pairs
        ]


CSV_HEADER = ["t", "f", "pair", "delta_a", "delta_b", "product", "bound", "residual", "xi_estimate"]


def pair_record(pair: str, a: FockOperator, b: FockOperator, psi: FockState) -> PairRecord:
    delta_a = dispersion(a, psi)
    delta_b = dispersion(b, psi)
    c_mean = commutator_mean(a, b, psi)
    bound = 0.5 * abs(c_mean)
    product = delta_a * delta_b
    residual = product - bound
    xi_estimate = 2.0 * delta_a * delta_a / c_mean if abs(c_mean) > 1e-300 else math.inf
    return PairRecord(
        pair=pair,
        delta_a=delta_a,
        delta_b=delta_b,
        product=product,
        bound=bound,
        residual=residual,
        xi_estimate=xi_estimate,
        saturated=abs(residual) <= SATURATION_REL_TOL * bound,
    )


def saturation_report(psi: FockState, frame) -> SaturationReport:
    """Records for (xbar_1, xbar_2), (xbar_1, pbar_1), (xbar_2, pbar_2)."""
    pos = frame.positions
    return SaturationReport(
        t=frame.t,
        f_t=frame.f_t,
        pairs=(
            pair_record("x1x2", pos.x1bar, pos.x2bar, psi),
            pair_record("x1p1", pos.x1bar, pos.p1bar, psi),
            pair_record("x2p2", pos.x2bar, pos.p2bar, psi),
        ),
    )
