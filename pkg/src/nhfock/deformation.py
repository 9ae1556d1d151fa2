"""Time-dependent deformation functions f(t) of the noncommuting plane.

Three one-parameter families, each available on the oscillating branch
(circular functions of t/tau), the expanding branch (hyperbolic functions of
t/tau), and in the tau -> infinity flat limit:

    K1:  kappa * C(t/tau)^2             ->  kappa
    K2:  kappa * tau^2 * S(t/tau)^2     ->  kappa * t^2
    K3:  4 kappa * tau^4 * (C(t/tau) - 1)^2  ->  kappa * t^4

with C, S = cosh, sinh on the plus branch and cos, sin on the minus branch.
Every family is a square, so f(t) >= 0 everywhere; downstream frames that
divide by f must guard against its zeros (see ``f_min``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

# Frames dividing by f or sqrt(f) reject times where f(t) < F_MIN_FACTOR * hbar.
F_MIN_FACTOR = 1e-6


class Kind(str, enum.Enum):
    K1 = "k1"
    K2 = "k2"
    K3 = "k3"


class Branch(str, enum.Enum):
    NH_PLUS = "nh+"
    NH_MINUS = "nh-"
    FLAT = "flat"


@dataclass(frozen=True)
class DeformationParams:
    """Deformation family, branch, and scales.

    ``kappa`` carries the dimensions that make f(t) an action (same units as
    ``hbar``); ``tau`` is the time scale of the branch functions and is
    ignored on the flat branch.
    """

    kind: Kind
    branch: Branch
    kappa: float
    tau: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.branch is not Branch.FLAT and self.tau <= 0:
            raise ValueError(f"tau must be positive on branch {self.branch.value}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")

    @property
    def f_min(self) -> float:
        """Guard value below which f(t) counts as vanished."""
        return F_MIN_FACTOR * self.hbar

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "branch": self.branch.value,
            "kappa": self.kappa,
            "tau": self.tau,
            "hbar": self.hbar,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DeformationParams":
        return cls(
            kind=Kind(d["kind"]),
            branch=Branch(d["branch"]),
            kappa=float(d["kappa"]),
            tau=float(d.get("tau", 1.0)),
            hbar=float(d.get("hbar", 1.0)),
        )


def f_value(params: DeformationParams, t: float) -> float:
    """Evaluate f(t) for the selected family and branch.  Total and >= 0."""
    kappa, tau = params.kappa, params.tau
    if params.branch is Branch.FLAT:
        if params.kind is Kind.K1:
            return kappa
        if params.kind is Kind.K2:
            return kappa * t * t
        return kappa * t**4
    u = t / tau
    if params.branch is Branch.NH_PLUS:
        c, s = math.cosh(u), math.sinh(u)
    else:
        c, s = math.cos(u), math.sin(u)
    if params.kind is Kind.K1:
        return kappa * c * c
    if params.kind is Kind.K2:
        return kappa * tau * tau * s * s
    return 4.0 * kappa * tau**4 * (c - 1.0) ** 2


def flat_limit_residual(params: DeformationParams, t: float) -> float:
    """|f_branch(t; tau) - f_flat(t)| at fixed kind and kappa."""
    if params.branch is Branch.FLAT:
        raise ValueError("flat_limit_residual needs a non-flat branch")
    flat = DeformationParams(params.kind, Branch.FLAT, params.kappa, hbar=params.hbar)
    return abs(f_value(params, t) - f_value(flat, t))
