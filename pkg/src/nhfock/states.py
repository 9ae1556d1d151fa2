"""State families: number bases, coherent/squeezed states, and the three
families saturating the deformed uncertainty relations.

Saturating states follow the operator-product form

    (two-mode frame unitary) o (single-mode squeeze) o (displacement)

applied right-to-left to a spectator-excited basis vector, then normalized
numerically (the closed-form exp(-|z|^2/2) prefactor is exact only in
infinite dimension).  Exponentials act directly on amplitude vectors, which
keeps a state build at tens of mat-vec products instead of a dense matrix
exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deformation import DeformationParams
from .errors import DisplacementTooLarge, SqueezeTooLarge, TruncationOverflow
from .fock_core import (
    FockOperator,
    FockState,
    Truncation,
    apply_exp,
    normalize,
    vacuum_state,
)
from .phase_space import (
    DEFAULT_CAPS,
    Caps,
    PhaseFrame,
    build_phase_frame,
    displacement_generator,
    mode_mix_generator,
    squeeze_generator,
    two_mode_squeeze_generator,
    two_mode_squeeze_ratio,
)


@dataclass(frozen=True)
class StateRequest:
    """Parameters of one saturating state.

    ``z`` sets the means of the saturating pair, ``xi`` the dispersion ratio,
    ``spectator`` the excitation of the untouched mode (n_plus, n_2 or n_1
    depending on the family), and (params, t) the frame.
    """

    z: complex
    xi: float
    spectator: int
    t: float
    params: DeformationParams

    def __post_init__(self):
        if self.xi <= 0:
            raise ValueError(f"xi must be positive, got {self.xi}")
        if self.spectator < 0:
            raise ValueError(f"spectator must be >= 0, got {self.spectator}")


def _check_caps(z: complex, xi: float, caps: Caps):
    if abs(z) > caps.z_cap:
        raise DisplacementTooLarge(f"|z| = {abs(z):.3g} exceeds cap {caps.z_cap:.3g}")
    if not caps.xi_min <= xi <= caps.xi_max:
        raise SqueezeTooLarge(f"xi = {xi:.3g} outside [{caps.xi_min:.3g}, {caps.xi_max:.3g}]")


def _raised(raiser: FockOperator, n: int, amplitudes: np.ndarray) -> np.ndarray:
    """(raiser^n / sqrt(n!)) applied to raw amplitudes."""
    out = amplitudes
    for k in range(1, n + 1):
        out = (raiser.entries @ out) / math.sqrt(k)
    return out


def fock_basis_state(frame: PhaseFrame, n1: int, n2: int) -> FockState:
    """Number state built by raising the frame vacuum mode by mode."""
    trunc = frame.trunc
    if n1 < 0 or n2 < 0 or n1 + n2 >= trunc.n_eff:
        raise TruncationOverflow(f"(n1, n2) = ({n1}, {n2}) needs n1 + n2 < n_eff = {trunc.n_eff}")
    amp = _raised(frame.ladders.a1dag, n1, vacuum_state(trunc).amplitudes)
    amp = _raised(frame.ladders.a2dag, n2, amp)
    return normalize(amp, trunc)


def pm_basis_state(frame: PhaseFrame, nplus: int, nminus: int) -> FockState:
    """Number state of the circular modes, |n_+, n_->."""
    trunc = frame.trunc
    if nplus < 0 or nminus < 0 or nplus + nminus >= trunc.n_eff:
        raise TruncationOverflow(
            f"(n+, n-) = ({nplus}, {nminus}) needs n+ + n- < n_eff = {trunc.n_eff}"
        )
    amp = _raised(frame.circular.aplusdag, nplus, vacuum_state(trunc).amplitudes)
    amp = _raised(frame.circular.aminusdag, nminus, amp)
    return normalize(amp, trunc)


def coherent_state(z: complex, a: FockOperator, caps: Caps = DEFAULT_CAPS) -> FockState:
    """Annihilator eigenstate: exp(z a^dag - conj(z) a) |0>."""
    if abs(z) > caps.z_cap:
        raise DisplacementTooLarge(f"|z| = {abs(z):.3g} exceeds cap {caps.z_cap:.3g}")
    vac = vacuum_state(a.trunc, a.n_modes)
    amp = apply_exp(displacement_generator(z, a), vac.amplitudes, caps.norm_cap)
    return normalize(amp, a.trunc)


def squeezed_coherent(
    z: complex, xi: float, a: FockOperator, caps: Caps = DEFAULT_CAPS
) -> FockState:
    """Squeezed coherent state: squeeze(xi) displacement(z) |0>.

    Saturates the quadrature uncertainty product with dispersions
    (Delta x)^2 = xi hbar / 2 and (Delta p)^2 = hbar / (2 xi); the means are
    alpha = sqrt(2 hbar xi) Re z and beta = sqrt(2 hbar / xi) Im z.
    """
    _check_caps(z, xi, caps)
    vac = vacuum_state(a.trunc, a.n_modes)
    amp = apply_exp(displacement_generator(z, a), vac.amplitudes, caps.norm_cap)
    amp = apply_exp(squeeze_generator(xi, a), amp, caps.norm_cap)
    return normalize(amp, a.trunc)


def squeezed_coherent_means(z: complex, xi: float, hbar: float) -> tuple[float, float]:
    """(alpha, beta) = (<x>, <p>) encoded by z at dispersion ratio xi."""
    return (
        math.sqrt(2.0 * hbar * xi) * z.real,
        math.sqrt(2.0 * hbar / xi) * z.imag,
    )


def b_vacuum(frame: PhaseFrame, caps: Caps = DEFAULT_CAPS, c_excitation: int = 0) -> FockState:
    """Vacuum of the Bogoliubov annihilator b, with optional c^dag quanta.

    The defining condition b |0_b> = 0 fixes the state only up to c^dag
    excitations; the default is the minimal representative (a pure two-mode
    squeezed vacuum), and ``c_excitation`` selects the others.
    """
    r = two_mode_squeeze_ratio(frame.circular, frame.params.f_min)
    if abs(r) > caps.r_cap:
        raise SqueezeTooLarge(f"|r| = {abs(r):.3g} exceeds cap {caps.r_cap:.3g}")
    gen = two_mode_squeeze_generator(frame.circular, r)
    amp = apply_exp(gen, vacuum_state(frame.trunc).amplitudes, caps.norm_cap)
    if c_excitation:
        bogo = frame.bogoliubov
        amp = _raised(bogo.cdag, c_excitation, amp)
    return normalize(amp, frame.trunc)


def xx_saturating_state(req: StateRequest, trunc: Truncation, caps: Caps = DEFAULT_CAPS) -> FockState:
    """State saturating Delta xbar_1 * Delta xbar_2 = f(t)/2.

    Two-mode squeeze of a displaced, squeezed circular-basis state
    |n_+, 0>; the spectator index n_+ leaves the saturation untouched.
    """
    _check_caps(req.z, req.xi, caps)
    frame = build_phase_frame(req.params, req.t, trunc)
    r = two_mode_squeeze_ratio(frame.circular, req.params.f_min)
    if abs(r) > caps.r_cap:
        raise SqueezeTooLarge(f"|r| = {abs(r):.3g} exceeds cap {caps.r_cap:.3g}")
    base = pm_basis_state(frame, req.spectator, 0)
    amp = apply_exp(req.z * frame.circular.aminusdag, base.amplitudes, caps.norm_cap)
    amp = apply_exp(squeeze_generator(req.xi, frame.circular.aminus), amp, caps.norm_cap)
    amp = apply_exp(two_mode_squeeze_generator(frame.circular, r), amp, caps.norm_cap)
    return normalize(amp, trunc)


def xx_saturating_state_via_b(
    req: StateRequest, trunc: Truncation, caps: Caps = DEFAULT_CAPS
) -> FockState:
    """Same state family assembled in the (b, c) operators directly.

    Displaces and squeezes the b mode on top of a c-excited b vacuum; agrees
    with :func:`xx_saturating_state` up to a global phase and is kept as an
    independent route for cross-checks.
    """
    _check_caps(req.z, req.xi, caps)
    frame = build_phase_frame(req.params, req.t, trunc)
    base = b_vacuum(frame, caps, c_excitation=req.spectator)
    bogo = frame.bogoliubov
    amp = apply_exp(req.z * bogo.bdag, base.amplitudes, caps.norm_cap)
    amp = apply_exp(squeeze_generator(req.xi, bogo.b), amp, caps.norm_cap)
    return normalize(amp, trunc)


def x1p1_saturating_state(
    req: StateRequest, trunc: Truncation, caps: Caps = DEFAULT_CAPS
) -> FockState:
    """State saturating Delta xbar_1 * Delta pbar_1 = hbar/2.

    Mode-mixing unitary applied to a displaced, squeezed mode-1 state over
    the spectator |0, n_2>.
    """
    _check_caps(req.z, req.xi, caps)
    frame = build_phase_frame(req.params, req.t, trunc)
    base = fock_basis_state(frame, 0, req.spectator)
    amp = apply_exp(req.z * frame.ladders.a1dag, base.amplitudes, caps.norm_cap)
    amp = apply_exp(squeeze_generator(req.xi, frame.ladders.a1), amp, caps.norm_cap)
    amp = apply_exp(mode_mix_generator(frame.ladders), amp, caps.norm_cap)
    return normalize(amp, trunc)


def x2p2_saturating_state(
    req: StateRequest, trunc: Truncation, caps: Caps = DEFAULT_CAPS
) -> FockState:
    """State saturating Delta xbar_2 * Delta pbar_2 = hbar/2.

    Mirror image of the mode-1 family: modes swapped, mixer inverted (the
    inverse mixer is the same unitary with f negated), spectator |n_1, 0>.
    """
    _check_caps(req.z, req.xi, caps)
    frame = build_phase_frame(req.params, req.t, trunc)
    base = fock_basis_state(frame, req.spectator, 0)
    amp = apply_exp(req.z * frame.ladders.a2dag, base.amplitudes, caps.norm_cap)
    amp = apply_exp(squeeze_generator(req.xi, frame.ladders.a2), amp, caps.norm_cap)
    amp = apply_exp(-1.0 * mode_mix_generator(frame.ladders), amp, caps.norm_cap)
    return normalize(amp, trunc)


def state_to_json_dict(state: FockState) -> dict:
    """CLI dump format: levels, indexing convention, norm, amplitudes."""
    return {
        "n_levels": state.trunc.n_levels,
        "indexing": "mode1-major",
        "norm": float(np.linalg.norm(state.amplitudes)),
        "amplitudes": [[float(v.real), float(v.imag)] for v in state.amplitudes],
    }
