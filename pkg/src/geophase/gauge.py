"""Monopole potentials and two-level-system connections.

Two more independent routes to the geometric phase. The first integrates
the classic unit-charge monopole vector potentials (one gauge patch regular
away from the south ray, one away from the north ray) along the clamped
curve of the tilt vector. The second transports the eigenstates of the
two-level Hamiltonian H = [[-cos b, e^{-i th} sin b], [e^{i th} sin b,
cos b]] around the loop and accumulates the phase of successive state
overlaps. Each route carries an internal cross-gauge consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import (AtSingularPole, CurveNotClosed, GaugeInconsistency,
                     OnSingularAxis)
from .motion import MotionPath, topology_report
from .quadrature import adaptive_simpson
from .sphere import DEFAULT_EPSILON, cached_regularize, clamped_affine_pieces
from .phases import eps_extrapolate

TWO_PI = 2.0 * pi
AXIS_CLEARANCE = 1e-9
_QUAD_TOL = 1e-11


@dataclass(frozen=True)
class GaugePatch:
    """One of the two monopole gauge patches, labeled by sign = +-1."""

    sign: int

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError(f"patch sign must be +1 or -1, got {self.sign!r}")

    @property
    def excluded_axis(self) -> str:
        return "south ray z <= -r" if self.sign > 0 else "north ray z >= r"


PLUS_PATCH = GaugePatch(+1)
MINUS_PATCH = GaugePatch(-1)


def monopole_potential(patch: GaugePatch, x) -> np.ndarray:
    """Unit-charge monopole potential of one gauge patch.

    A_sign(x) = sign (-y, x, 0) / (r (r + sign z)); both patches have curl
    e3/r^2, and their difference is twice the azimuth gradient, which is
    what quantizes the holonomy difference to 4 pi n. Finite everywhere
    except the patch's excluded ray; points within 1e-9 angular clearance
    of that ray raise OnSingularAxis.
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise OnSingularAxis("potential undefined at the origin")
    rho = float(np.hypot(x[0], x[1]))
    angle_from_ray = float(np.arctan2(rho, -patch.sign * x[2]))
    if angle_from_ray <= AXIS_CLEARANCE:
        raise OnSingularAxis(
            f"point within {angle_from_ray:.2e} rad of the {patch.excluded_axis}")
    denom = r * (r + patch.sign * x[2])
    return patch.sign * np.array([-x[1], x[0], 0.0]) / denom


def curl_check(patch: GaugePatch, x, h: float) -> np.ndarray:
    """Central-difference curl of the patch potential at x; expect e3/r^2."""
    x = np.asarray(x, dtype=float)
    jac = np.empty((3, 3))
    for i in range(3):
        step = np.zeros(3)
        step[i] = h
        jac[i] = (monopole_potential(patch, x + step)
                  - monopole_potential(patch, x - step)) / (2.0 * h)
    return np.array([jac[1, 2] - jac[2, 1],
                     jac[2, 0] - jac[0, 2],
                     jac[0, 1] - jac[1, 0]])


def _closed_topology(path: MotionPath):
    report = topology_report(path)
    if not report.closed:
        raise CurveNotClosed("holonomy needs a closed motion")
    return report


def _patch_circulation(path: MotionPath, eps: float, sign: int) -> float:
    """Line integral of A_sign along the clamped curve, piece by piece.

    The integrand couples the Cartesian potential to the Cartesian velocity
    of the tilt vector, so this route never touches the cos(beta) d(theta)
    simplification used by the reference method.
    """
    patch = GaugePatch(sign)
    total = 0.0
    for piece in clamped_affine_pieces(path, eps):
        if not piece.moving:
            continue

        def integrand(t, p=piece):
            th, b = p.at(t)
            sb, cb = np.sin(b), np.cos(b)
            st, ct = np.sin(th), np.cos(th)
            g = np.array([sb * ct, sb * st, -cb])
            g_dot = np.array([p.db * cb * ct - p.dth * sb * st,
                              p.db * cb * st + p.dth * sb * ct,
                              p.db * sb])
            return float(monopole_potential(patch, g) @ g_dot)

        total += adaptive_simpson(integrand, piece.t0, piece.t1, _QUAD_TOL)
    return total


def patch_circulation(path: MotionPath, patch: GaugePatch,
                      eps: float = DEFAULT_EPSILON) -> float:
    """Circulation of one patch potential around the clamped closed curve.

    Exposed so callers can probe the raw single-patch integrals, e.g. to
    check that the two patches differ by exactly 4 pi n.
    """
    _closed_topology(path)
    return _patch_circulation(path, eps, patch.sign)


def monopole_holonomy(path: MotionPath, eps: float = DEFAULT_EPSILON,
                      tol: float = 1e-6, extrapolate: bool = True) -> float:
    """Geometric phase from the monopole potentials (r = 1).

    Evaluates the averaged-patch circulation and both single-patch forms
    shifted by the 2 pi n winding term; the three must agree within tol
    (GaugeInconsistency otherwise). Returns the averaged form, carried to
    the eps -> 0 limit unless extrapolate is False.
    """
    report = _closed_topology(path)
    shift = TWO_PI * report.n
    eps_levels = (eps, eps / 2.0) if extrapolate else (eps,)
    values = []
    for e in eps_levels:
        circ_plus = _patch_circulation(path, e, +1)
        circ_minus = _patch_circulation(path, e, -1)
        forms = (0.5 * (circ_plus + circ_minus),
                 circ_plus - shift,
                 circ_minus + shift)
        spread = max(forms) - min(forms)
        if spread > tol:
            raise GaugeInconsistency(
                f"monopole holonomy forms spread {spread:.3e} at eps={e:.4f}")
        values.append(forms[0])
    if extrapolate:
        return eps_extrapolate(eps, values[0], values[1])
    return values[0]


# ---------------------------------------------------------------------------
# two-level system


@dataclass(frozen=True)
class BerryState:
    """Unit eigenstate of the two-level Hamiltonian with eigenvalue +1."""

    sign: int
    components: np.ndarray


def berry_state(sign: int, theta: float, beta: float) -> BerryState:
    """Gauge-fixed eigenstate on the chosen patch.

    The plus gauge is singular where the tilt vanishes (beta = 0), the
    minus gauge where beta = pi; within 1e-9 of the singular pole the state
    phase is meaningless and AtSingularPole is raised.
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if sign > 0 and beta < AXIS_CLEARANCE:
        raise AtSingularPole("plus-gauge state undefined at beta = 0")
    if sign < 0 and beta > pi - AXIS_CLEARANCE:
        raise AtSingularPole("minus-gauge state undefined at beta = pi")
    half = 0.5 * beta
    if sign > 0:
        comps = np.array([np.sin(half), np.exp(1j * theta) * np.cos(half)])
    else:
        comps = np.array([np.exp(-1j * theta) * np.sin(half), np.cos(half)])
    return BerryState(sign=sign, components=comps)


def berry_connection(sign: int, theta: float, beta: float, dtheta: float,
                     check: bool = False, step: float = 1e-6,
                     check_tol: float = 1e-8) -> complex:
    """<psi|d psi> along a theta displacement: (i/2)(sign + cos beta) dtheta.

    With check=True the closed form is compared against the overlap of
    finite-difference displaced states (step 1e-6, agreement 1e-8).
    """
    value = 0.5j * (sign + np.cos(beta)) * dtheta
    if check:
        h = step
        fwd = berry_state(sign, theta + h * dtheta, beta).components
        bwd = berry_state(sign, theta - h * dtheta, beta).components
        here = berry_state(sign, theta, beta).components
        fd = complex(np.vdot(here, (fwd - bwd) / (2.0 * h)))
        if abs(fd - complex(value)) > check_tol:
            raise ArithmeticError(
                f"connection differs from finite differences by {abs(fd - value):.3e}")
    return complex(value)


_OVERLAP_REFINE = 8


def _refined(theta, beta, refine):
    # (theta, beta) are affine between consecutive curve samples, so linear
    # interpolation adds exact intermediate points; the closure pair carrying
    # the 2 pi n jump is never interpolated.
    if refine <= 1 or theta.size < 2:
        return theta, beta
    f = np.linspace(0.0, 1.0, refine, endpoint=False)
    th = (theta[:-1, None] * (1.0 - f) + theta[1:, None] * f).ravel()
    be = (beta[:-1, None] * (1.0 - f) + beta[1:, None] * f).ravel()
    return np.append(th, theta[-1]), np.append(be, beta[-1])


def _overlap_phase_sum(theta, beta, sign: int, refine: int = _OVERLAP_REFINE) -> float:
    """Sum of overlap phases of consecutive gauge-fixed states, loop closed."""
    theta, beta = _refined(theta, beta, refine)
    half = 0.5 * beta
    s, c = np.sin(half), np.cos(half)
    phase = np.exp(1j * sign * theta)
    # <psi_k|psi_{k+1}> for both gauges reduces to s_k s_{k+1} conj(ph_k) ph_{k+1}
    # with ph = e^{i theta} on the component carrying the winding
    if sign > 0:
        amp_wind, amp_flat = c, s
    else:
        amp_wind, amp_flat = s, c
    wrap = np.concatenate([np.arange(1, theta.size), [0]])
    overlaps = (amp_flat * amp_flat[wrap]
                + np.conj(phase) * phase[wrap] * amp_wind * amp_wind[wrap])
    return float(np.sum(np.angle(overlaps)))


def berry_holonomy(path: MotionPath, eps: float = DEFAULT_EPSILON,
                   extrapolate: bool = True, tol: float = 1e-6) -> float:
    """Geometric phase from discrete parallel transport of the eigenstates.

    Works entirely from state overlaps between curve samples (no closed-form
    connection), in both gauges; the combined form gamma_plus + gamma_minus
    and the single-gauge forms 2 gamma_plus - 2 pi n, 2 gamma_minus + 2 pi n
    must agree within tol.
    """
    report = _closed_topology(path)
    shift = TWO_PI * report.n
    eps_levels = (eps, eps / 2.0) if extrapolate else (eps,)
    values = []
    for e in eps_levels:
        curve = cached_regularize(path, e)
        gamma_plus = _overlap_phase_sum(curve.theta, curve.beta_eps, +1)
        gamma_minus = _overlap_phase_sum(curve.theta, curve.beta_eps, -1)
        forms = (gamma_plus + gamma_minus,
                 2.0 * gamma_plus - shift,
                 2.0 * gamma_minus + shift)
        spread = max(forms) - min(forms)
        if spread > tol:
            raise GaugeInconsistency(
                f"transport holonomy forms spread {spread:.3e} at eps={e:.4f}")
        values.append(forms[0])
    if extrapolate:
        return eps_extrapolate(eps, values[0], values[1])
    return values[0]
