"""Operator frames on the truncated two-mode space at a fixed time t.

Builds, from the canonical pair (x_i, p_i):

* deformed positions/momenta  xbar_i = x_i - (f/2hbar) eps_ij p_j, pbar_i = p_i,
  which close the algebra [xbar_1, xbar_2] = i f(t), [xbar_i, pbar_j] = i hbar delta_ij;
* per-mode ladder operators built from (xbar, pbar) (they coincide with the
  canonical annihilators - the deformation cancels);
* circular combinations a_pm = (a_1 -/+ i a_2)/sqrt(2);
* the Bogoliubov pair (b, c) mixing a_- with a_+^dag, equivalently
  b = (xbar_1 + i xbar_2)/sqrt(2 f);
* the mixed pair (d, e) with d = (xbar_1 + i pbar_1)/sqrt(2 hbar);
* the unitaries connecting these frames: displacement, single-mode squeeze,
  the two-mode squeeze mapping a_-/a_+ onto b/c, and the momentum-momentum
  mixer mapping a_1/a_2 onto d/e.

Everything is immutable; frame construction is a pure function of
(params, t, truncation), so frames can be built in parallel over t grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .deformation import DeformationParams, f_value
from .errors import DeformationVanishes, DisplacementTooLarge, SqueezeTooLarge
from .fock_core import (
    DEFAULT_NORM_CAP,
    FockOperator,
    Truncation,
    build_ladder,
    embed_mode,
    matrix_exponential,
)


@dataclass(frozen=True)
class Caps:
    """Parameter caps keeping constructed states inside the truncation.

    Defaults are sized for 32 levels per mode.  The guiding estimate is that
    a squeeze r on top of a displacement z over a spectator level n pushes
    significant population up to about exp(2|r|) * (|z| + sqrt(n+1))^2, which
    must stay well below n_levels; ``for_truncation`` rescales the caps with
    that rule anchored at the 32-level defaults.
    """

    z_cap: float = 3.0
    xi_min: float = 0.25
    xi_max: float = 4.0
    r_cap: float = 1.5
    norm_cap: float = DEFAULT_NORM_CAP

    @classmethod
    def for_truncation(cls, n_levels: int) -> "Caps":
        if n_levels < 8:
            raise ValueError(f"caps rule needs n_levels >= 8, got {n_levels}")
        headroom = math.log(n_levels / 4.0) / math.log(8.0)  # 1 at 32 levels
        r_cap = 1.5 * headroom
        return cls(
            z_cap=3.0 * math.sqrt(n_levels / 32.0),
            xi_min=1.0 / (4.0**headroom),
            xi_max=4.0**headroom,
            r_cap=r_cap,
            norm_cap=DEFAULT_NORM_CAP,
        )


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class CanonicalFrame:
    """Canonical positions/momenta and annihilators embedded on two modes."""

    trunc: Truncation
    hbar: float
    x1: FockOperator
    x2: FockOperator
    p1: FockOperator
    p2: FockOperator
    a1: FockOperator
    a2: FockOperator


@dataclass(frozen=True)
class DeformedPositions:
    x1bar: FockOperator
    x2bar: FockOperator
    p1bar: FockOperator
    p2bar: FockOperator
    f_t: float


@dataclass(frozen=True)
class ModeLadders:
    a1: FockOperator
    a2: FockOperator
    a1dag: FockOperator
    a2dag: FockOperator
    hbar: float
    f_t: float


@dataclass(frozen=True)
class CircularLadders:
    aplus: FockOperator
    aminus: FockOperator
    aplusdag: FockOperator
    aminusdag: FockOperator
    hbar: float
    f_t: float


@dataclass(frozen=True)
class BogoliubovFrame:
    b: FockOperator
    bdag: FockOperator
    c: FockOperator
    cdag: FockOperator
    f_t: float


@dataclass(frozen=True)
class MixedFrame:
    d: FockOperator
    ddag: FockOperator
    e: FockOperator
    edag: FockOperator
    f_t: float


@dataclass(frozen=True)
class PhaseFrame:
    """Bundle of every operator frame at one time, as far as caps allow.

    ``bogoliubov`` is None when f(t) sits below the guard (the (b, c) pair is
    singular there).
    """

    t: float
    params: DeformationParams
    trunc: Truncation
    f_t: float
    positions: DeformedPositions
    ladders: ModeLadders
    circular: CircularLadders
    mixed: MixedFrame
    bogoliubov: BogoliubovFrame | None


@lru_cache(maxsize=8)
def canonical_frame(trunc: Truncation, hbar: float = 1.0) -> CanonicalFrame:
    """x_i = sqrt(hbar/2)(A_i + A_i^dag), p_i = -i sqrt(hbar/2)(A_i - A_i^dag)."""
    a = build_ladder(trunc)
    adag = a.dag()
    s = math.sqrt(hbar / 2.0)
    x = s * (a + adag)
    p = (-1j * s) * (a - adag)
    return CanonicalFrame(
        trunc=trunc,
        hbar=hbar,
        x1=embed_mode(x, 1),
        x2=embed_mode(x, 2),
        p1=embed_mode(p, 1),
        p2=embed_mode(p, 2),
        a1=embed_mode(a, 1),
        a2=embed_mode(a, 2),
    )


def deformed_positions(
    frame: CanonicalFrame,
    params: DeformationParams,
    t: float,
    epsilon_sign: int = 1,
) -> DeformedPositions:
    """xbar_i = x_i - (f/2hbar) eps_ij p_j with eps_12 = +1; pbar_i = p_i.

    ``epsilon_sign`` flips the antisymmetric tensor and exists only so
    verification runs can prove the algebra check catches a wrong sign.
    """
    f_t = f_value(params, t)
    g = epsilon_sign * f_t / (2.0 * params.hbar)
    return DeformedPositions(
        x1bar=frame.x1 - g * frame.p2,
        x2bar=frame.x2 + g * frame.p1,
        p1bar=frame.p1,
        p2bar=frame.p2,
        f_t=f_t,
    )


def mode_ladders(positions: DeformedPositions, hbar: float) -> ModeLadders:
    """Ladder operators assembled from the deformed frame.

    a_i = (xbar_i + i pbar_i + (f/2hbar) eps_ij pbar_j) / sqrt(2 hbar); the
    deformation in xbar_i cancels against the eps term, so these equal the
    canonical annihilators (asserted by tests, not assumed here).
    """
    g = positions.f_t / (2.0 * hbar)
    s = 1.0 / math.sqrt(2.0 * hbar)
    x1b, x2b = positions.x1bar, positions.x2bar
    p1b, p2b = positions.p1bar, positions.p2bar
    return ModeLadders(
        a1=s * (x1b + 1j * p1b + g * p2b),
        a2=s * (x2b + 1j * p2b - g * p1b),
        a1dag=s * (x1b - 1j * p1b + g * p2b),
        a2dag=s * (x2b - 1j * p2b - g * p1b),
        hbar=hbar,
        f_t=positions.f_t,
    )


def circular_ladders(ladders: ModeLadders) -> CircularLadders:
    """a_pm = (a_1 -/+ i a_2)/sqrt(2) and their adjoints."""
    s = 1.0 / math.sqrt(2.0)
    return CircularLadders(
        aplus=s * (ladders.a1 - 1j * ladders.a2),
        aminus=s * (ladders.a1 + 1j * ladders.a2),
        aplusdag=s * (ladders.a1dag + 1j * ladders.a2dag),
        aminusdag=s * (ladders.a1dag - 1j * ladders.a2dag),
        hbar=ladders.hbar,
        f_t=ladders.f_t,
    )


def _require_f(f_t: float, f_min: float):
    if f_t < f_min:
        raise DeformationVanishes(f"f(t) = {f_t:.3e} below guard {f_min:.3e}")


def bogoliubov_frame(
    circ: CircularLadders, f_min: float | None = None
) -> BogoliubovFrame:
    """Independent pair (b, c) built by mixing a_- with a_+^dag.

    b = sqrt(hbar/2f) [(1 + f/2hbar) a_- + (1 - f/2hbar) a_+^dag], and c the
    companion with a_+ and a_-^dag swapped in.  Singular as f -> 0, hence the
    guard.
    """
    hbar, f_t = circ.hbar, circ.f_t
    _require_f(f_t, 1e-6 * hbar if f_min is None else f_min)
    u = math.sqrt(hbar / (2.0 * f_t)) * (1.0 + f_t / (2.0 * hbar))
    v = math.sqrt(hbar / (2.0 * f_t)) * (1.0 - f_t / (2.0 * hbar))
    return BogoliubovFrame(
        b=u * circ.aminus + v * circ.aplusdag,
        bdag=u * circ.aminusdag + v * circ.aplus,
        c=u * circ.aplus + v * circ.aminusdag,
        cdag=u * circ.aplusdag + v * circ.aminus,
        f_t=f_t,
    )


def d_e_frame(ladders: ModeLadders) -> MixedFrame:
    """Pair (d, e) shifting each mode by the other mode's momentum quadrature.

    d = a_1 + (i f / 4 hbar)(a_2 - a_2^dag); e likewise with modes swapped.
    Equivalently d = (xbar_1 + i pbar_1)/sqrt(2 hbar).
    """
    g = 1j * ladders.f_t / (4.0 * ladders.hbar)
    q1 = ladders.a1 - ladders.a1dag
    q2 = ladders.a2 - ladders.a2dag
    return MixedFrame(
        d=ladders.a1 + g * q2,
        ddag=ladders.a1dag + g * q2,
        e=ladders.a2 + g * q1,
        edag=ladders.a2dag + g * q1,
        f_t=ladders.f_t,
    )


# ---------------------------------------------------------------------------
# unitaries and their generators


def displacement_generator(z: complex, a: FockOperator) -> FockOperator:
    """z a^dag - conj(z) a."""
    return z * a.dag() - np.conj(z) * a


def displacement_unitary(z: complex, a: FockOperator, caps: Caps = DEFAULT_CAPS) -> FockOperator:
    """exp(z a^dag - conj(z) a); conjugation shifts a by z on the low block."""
    if abs(z) > caps.z_cap:
        raise DisplacementTooLarge(f"|z| = {abs(z):.3g} exceeds cap {caps.z_cap:.3g}")
    return matrix_exponential(displacement_generator(z, a), caps.norm_cap)


def squeeze_generator(xi: float, a: FockOperator) -> FockOperator:
    """-(ln xi / 4)(a^2 - (a^dag)^2)."""
    adag = a.dag()
    return (-0.25 * math.log(xi)) * (a @ a - adag @ adag)


def squeeze_unitary(xi: float, a: FockOperator, caps: Caps = DEFAULT_CAPS) -> FockOperator:
    """Single-mode squeeze rebalancing the two quadrature dispersions by xi.

    Conjugation maps a onto (x/sqrt(xi) + i sqrt(xi) p)/sqrt(2 hbar) on the
    low block.
    """
    if not caps.xi_min <= xi <= caps.xi_max:
        raise SqueezeTooLarge(f"xi = {xi:.3g} outside [{caps.xi_min:.3g}, {caps.xi_max:.3g}]")
    return matrix_exponential(squeeze_generator(xi, a), caps.norm_cap)


def two_mode_squeeze_ratio(circ: CircularLadders, f_min: float | None = None) -> float:
    """Squeeze magnitude r = ln(2 hbar / f)/2 of the a_pm -> (b, c) map."""
    _require_f(circ.f_t, 1e-6 * circ.hbar if f_min is None else f_min)
    return 0.5 * math.log(2.0 * circ.hbar / circ.f_t)


def two_mode_squeeze_generator(circ: CircularLadders, r: float) -> FockOperator:
    """r (a_+ a_- - a_+^dag a_-^dag)."""
    return r * (circ.aplus @ circ.aminus - circ.aplusdag @ circ.aminusdag)


def two_mode_squeeze_unitary(
    circ: CircularLadders, caps: Caps = DEFAULT_CAPS, f_min: float | None = None
) -> FockOperator:
    """Unitary carrying a_- onto b and a_+ onto c by conjugation.

    exp[r (a_+ a_- - a_+^dag a_-^dag)] with r = ln(2 hbar / f)/2.  Rejected
    when |r| exceeds the cap: past that the truncation cannot hold the
    squeezed tails.
    """
    r = two_mode_squeeze_ratio(circ, f_min)
    if abs(r) > caps.r_cap:
        raise SqueezeTooLarge(f"|r| = {abs(r):.3g} exceeds cap {caps.r_cap:.3g}")
    return matrix_exponential(two_mode_squeeze_generator(circ, r), caps.norm_cap)


def mode_mix_generator(ladders: ModeLadders) -> FockOperator:
    """(i f / 4 hbar)(a_1 - a_1^dag)(a_2 - a_2^dag); anti-Hermitian."""
    g = 1j * ladders.f_t / (4.0 * ladders.hbar)
    return g * ((ladders.a1 - ladders.a1dag) @ (ladders.a2 - ladders.a2dag))


def mode_mix_unitary(ladders: ModeLadders, caps: Caps = DEFAULT_CAPS) -> FockOperator:
    """Unitary carrying a_1 onto d and a_2 onto e by conjugation."""
    return matrix_exponential(mode_mix_generator(ladders), caps.norm_cap)


# ---------------------------------------------------------------------------
# frame assembly


def build_phase_frame(
    params: DeformationParams,
    t: float,
    trunc: Truncation,
    epsilon_sign: int = 1,
) -> PhaseFrame:
    """Assemble every operator frame at time t.

    The Bogoliubov pair is left out (None) when f(t) is under the guard; the
    unitaries are built separately on demand since they are much more
    expensive than the frames themselves.
    """
    canon = canonical_frame(trunc, params.hbar)
    pos = deformed_positions(canon, params, t, epsilon_sign)
    lad = mode_ladders(pos, params.hbar)
    circ = circular_ladders(lad)
    mixed = d_e_frame(lad)
    bogo = None
    if pos.f_t >= params.f_min:
        bogo = bogoliubov_frame(circ, params.f_min)
    return PhaseFrame(
        t=t,
        params=params,
        trunc=trunc,
        f_t=pos.f_t,
        positions=pos,
        ladders=lad,
        circular=circ,
        mixed=mixed,
        bogoliubov=bogo,
    )


def frame_to_json_dict(frame: PhaseFrame) -> dict:
    """Serialize a frame with the fock_core operator encoding."""
    ops = {
        "x1bar": frame.positions.x1bar,
        "x2bar": frame.positions.x2bar,
        "p1bar": frame.positions.p1bar,
        "p2bar": frame.positions.p2bar,
        "a1": frame.ladders.a1,
        "a2": frame.ladders.a2,
        "aplus": frame.circular.aplus,
        "aminus": frame.circular.aminus,
        "d": frame.mixed.d,
        "e": frame.mixed.e,
    }
    if frame.bogoliubov is not None:
        ops["b"] = frame.bogoliubov.b
        ops["c"] = frame.bogoliubov.c
    return {
        "t": frame.t,
        "f": frame.f_t,
        "params": frame.params.to_json_dict(),
        "operators": {name: op.to_json_dict() for name, op in ops.items()},
    }
