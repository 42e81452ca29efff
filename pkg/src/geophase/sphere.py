"""Geometry of the tilt-direction vector on the unit sphere.

The rolling disc's unit normal ("Gauss vector") traces a curve on S^2 as the
motion runs. This module provides the moving orthonormal frame attached to
that vector, the connection one-forms of the frame, the pole-avoiding clamped
curve, and the differential-geometric data computed on it: arc length, tangent
angle, geodesic curvature, cusp angles, and offset-curve lengths.

Orientation conventions (used consistently across the package):

* g(theta, beta) = (sin b cos th, sin b sin th, -cos b); tilt 0 is the south
  pole, tilt pi the north pole.
* e1 = (-sin th, cos th, 0), e2 = (cos b cos th, cos b sin th, sin b),
  e3 = e1 x e2 = g.
* The left normal of a curve with unit tangent T is nu = g x T; signed angles
  in the tangent plane are counterclockwise viewed from outside, along +g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import pi

import numpy as np

from .errors import AtCusp, CurveHasCusps, EpsilonOutOfRange
from .motion import MotionPath, ScalarPath, AffineSegment, ConstantSegment

DEFAULT_EPSILON = pi / 16.0
MAX_SAMPLE_STEP = 1e-3          # cap on the angle subtended by adjacent samples
_KAPPA_REL_TOL = 1e-7           # target relative error of finite-difference kappa
_KAPPA_STEP = (12.0 * _KAPPA_REL_TOL) ** 0.5   # step/sin(beta) achieving it
CUSP_ANGLE_TOL = 1e-8
GEOM_CLOSE_TOL = 1e-9


# ---------------------------------------------------------------------------
# frames and connection forms


def gauss_vector(theta, beta) -> np.ndarray:
    """Unit normal of the rolling disc; shape (..., 3)."""
    theta = np.asarray(theta, dtype=float)
    beta = np.asarray(beta, dtype=float)
    sb = np.sin(beta)
    return np.stack([sb * np.cos(theta), sb * np.sin(theta), -np.cos(beta)], axis=-1)


def frame_vectors(theta, beta):
    """The orthonormal triple (e1, e2, e3) as arrays of shape (..., 3)."""
    theta = np.asarray(theta, dtype=float)
    beta = np.asarray(beta, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    cb, sb = np.cos(beta), np.sin(beta)
    zeros = np.zeros_like(ct)
    e1 = np.stack([-st, ct, zeros], axis=-1)
    e2 = np.stack([cb * ct, cb * st, sb], axis=-1)
    e3 = np.stack([sb * ct, sb * st, -cb], axis=-1)
    return e1, e2, e3


@dataclass(frozen=True)
class Frame:
    """Orthonormal frame at one point; e3 is the Gauss vector."""

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray


def gauss_frame(theta: float, beta: float) -> Frame:
    e1, e2, e3 = frame_vectors(theta, beta)
    return Frame(e1, e2, e3)


@dataclass(frozen=True)
class ConnectionForms:
    """The three independent frame connection coefficients along (dtheta, dbeta)."""

    omega_12: float
    omega_13: float
    omega_23: float


def connection_forms(theta: float, beta: float, dtheta: float, dbeta: float,
                     check: bool = False, step: float = 1e-6,
                     check_tol: float = 1e-8) -> ConnectionForms:
    """Closed-form connection coefficients de_i . e_j along a direction.

    With ``check=True`` the closed forms are verified against central finite
    differences of the frame itself (step 1e-6); disagreement beyond
    ``check_tol`` raises ArithmeticError. Useful as a self-test hook.
    """
    forms = ConnectionForms(omega_12=-np.cos(beta) * dtheta,
                            omega_13=-np.sin(beta) * dtheta,
                            omega_23=-dbeta)
    if check:
        h = step
        fp = frame_vectors(theta + h * dtheta, beta + h * dbeta)
        fm = frame_vectors(theta - h * dtheta, beta - h * dbeta)
        fc = frame_vectors(theta, beta)
        fd = [(p - m) / (2.0 * h) for p, m in zip(fp, fm)]
        got = (float(fd[0] @ fc[1]), float(fd[0] @ fc[2]), float(fd[1] @ fc[2]))
        want = (forms.omega_12, forms.omega_13, forms.omega_23)
        err = max(abs(a - b) for a, b in zip(got, want))
        if err > check_tol:
            raise ArithmeticError(
                f"connection forms disagree with finite differences by {err:.3e}")
    return forms


# ---------------------------------------------------------------------------
# clamping the tilt away from the poles


@dataclass(frozen=True)
class ClampedPiece:
    """One interval where theta and the clamped tilt are both affine."""

    t0: float
    t1: float
    th0: float
    dth: float
    b0: float
    db: float

    @property
    def moving(self) -> bool:
        return self.dth != 0.0 or self.db != 0.0

    def at(self, t):
        """(theta, beta) at time(s) t inside the piece."""
        t = np.asarray(t, dtype=float)
        return self.th0 + self.dth * (t - self.t0), self.b0 + self.db * (t - self.t0)

    def end_values(self):
        return self.at(self.t1)


def _check_epsilon(eps: float):
    if not (0.0 < eps < pi / 8.0):
        raise EpsilonOutOfRange(f"epsilon must lie in (0, pi/8), got {eps!r}")


def clamped_affine_pieces(path: MotionPath, eps: float) -> tuple:
    """Exact piecewise-affine form of the motion with tilt clamped to [eps, pi-eps]."""
    _check_epsilon(eps)
    lo, hi = eps, pi - eps
    pieces = []
    for (t0, t1, th0, dth, b0, db) in path.affine_pieces:
        # split at the times the raw tilt crosses a clamp level
        cuts = [t0, t1]
        if db != 0.0:
            for level in (lo, hi):
                tc = t0 + (level - b0) / db
                if t0 + 1e-14 < tc < t1 - 1e-14:
                    cuts.append(tc)
        cuts.sort()
        for u0, u1 in zip(cuts, cuts[1:]):
            bmid = b0 + db * (0.5 * (u0 + u1) - t0)
            if bmid <= lo:
                bc, dbc = lo, 0.0
            elif bmid >= hi:
                bc, dbc = hi, 0.0
            else:
                bc, dbc = b0 + db * (u0 - t0), db
            pieces.append(ClampedPiece(u0, u1, th0 + dth * (u0 - t0), dth, bc, dbc))
    return tuple(pieces)


def clamp_path(path: MotionPath, eps: float) -> MotionPath:
    """The motion with its tilt schedule clamped, as a new MotionPath."""
    pieces = clamped_affine_pieces(path, eps)

    def seg(t0, t1, v0, dv):
        return ConstantSegment(t0, t1, v0) if dv == 0.0 else AffineSegment(t0, t1, v0, dv)

    theta = ScalarPath.from_segments([seg(p.t0, p.t1, p.th0, p.dth) for p in pieces])
    beta = ScalarPath.from_segments([seg(p.t0, p.t1, p.b0, p.db) for p in pieces])
    return MotionPath(theta, beta, path.radii)


# ---------------------------------------------------------------------------
# the sampled regularized curve


@dataclass(frozen=True)
class Junction:
    """Meeting point of two smooth pieces; alpha is the signed tangent jump."""

    t: float
    alpha: float
    in_index: int
    out_index: int


@dataclass(frozen=True)
class Cusp:
    t: float
    alpha: float


@dataclass(frozen=True)
class CurveSample:
    t: float
    s: float
    g: np.ndarray
    frame: Frame
    phi: float
    kappa_g: float


@dataclass(eq=False)
class RegularizedCurve:
    """Densely sampled pole-avoiding curve of the Gauss vector.

    Treat instances as immutable. Arrays are aligned: sample k has time t[k],
    arc length s[k], position g[k], unwrapped tangent angle phi[k] and
    geodesic curvature kappa_g[k]. ``arcs`` lists half-open index ranges of
    maximal smooth sub-arcs; shared junction points appear once per adjacent
    arc so phi stays continuous within each arc.
    """

    epsilon: float
    t: np.ndarray
    s: np.ndarray
    theta: np.ndarray
    beta_eps: np.ndarray
    g: np.ndarray
    phi: np.ndarray
    kappa_g: np.ndarray
    arcs: tuple
    junctions: tuple
    total_length: float
    closed: bool
    pieces: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def cusps(self) -> tuple:
        return detect_cusps(self, CUSP_ANGLE_TOL)

    def frames(self):
        return frame_vectors(self.theta, self.beta_eps)

    def tangents(self) -> np.ndarray:
        """Unit tangents T(s); within arcs T = cos(phi) e1 + sin(phi) e2."""
        e1, e2, _ = self.frames()
        return (np.cos(self.phi)[:, None] * e1 + np.sin(self.phi)[:, None] * e2)

    def left_normals(self) -> np.ndarray:
        return np.cross(self.g, self.tangents())

    def sample(self, index: int) -> CurveSample:
        e1, e2, e3 = frame_vectors(self.theta[index], self.beta_eps[index])
        return CurveSample(t=float(self.t[index]), s=float(self.s[index]),
                           g=self.g[index], frame=Frame(e1, e2, e3),
                           phi=float(self.phi[index]),
                           kappa_g=float(self.kappa_g[index]))

    def __len__(self):
        return self.t.size

    def _cusp_sample_indices(self) -> frozenset:
        out = self._cache.get("cusp_samples")
        if out is None:
            idx = set()
            for j in self.junctions:
                if abs(j.alpha) > CUSP_ANGLE_TOL:
                    idx.update((j.in_index, j.out_index))
            out = frozenset(idx)
            self._cache["cusp_samples"] = out
        return out


def _tangent_components(piece: ClampedPiece, t):
    """Unnormalized tangent in the (e1, e2) basis at time(s) t."""
    _, b = piece.at(t)
    return np.sin(b) * piece.dth, np.full_like(np.asarray(t, dtype=float) * 1.0, piece.db)


def _junction_angle(p_in: ClampedPiece, p_out: ClampedPiece) -> float:
    """Signed tangent jump where p_in ends and p_out starts (same point)."""
    _, b_in = p_in.end_values()
    u1, v1 = np.sin(b_in) * p_in.dth, p_in.db
    u2, v2 = np.sin(p_out.b0) * p_out.dth, p_out.db
    cross = u1 * v2 - v1 * u2
    dot = u1 * u2 + v1 * v2
    alpha = float(np.arctan2(cross, dot))
    if alpha == -pi:   # reversals count as +pi, keeping alpha in (-pi, pi]
        alpha = pi
    return alpha


def _piece_samples(piece: ClampedPiece, samples_per_segment: int, max_step: float):
    """Sample times for one piece; even step count, density tied to curvature."""
    b_lo = min(piece.b0, piece.b0 + piece.db * (piece.t1 - piece.t0))
    b_hi = max(piece.b0, piece.b0 + piece.db * (piece.t1 - piece.t0))
    sin_min = min(np.sin(b_lo), np.sin(b_hi))
    sin_max = 1.0 if b_lo <= pi / 2.0 <= b_hi else max(np.sin(b_lo), np.sin(b_hi))
    speed_max = float(np.hypot(sin_max * piece.dth, piece.db))
    extent = speed_max * (piece.t1 - piece.t0)
    step = min(max_step, _KAPPA_STEP * sin_min)
    half = max(2, int(np.ceil(0.5 * extent / step)), (samples_per_segment + 1) // 2)
    return np.linspace(piece.t0, piece.t1, 2 * half + 1)


def _arc_geometry(t_arr, theta_arr, beta_arr, u_arr, v_arr, periodic: bool):
    """Arc length (Richardson-corrected chords), phi, kappa for one smooth arc."""
    g = gauss_vector(theta_arr, beta_arr)
    g /= np.linalg.norm(g, axis=1, keepdims=True)   # re-projection to the sphere

    chords = np.linalg.norm(np.diff(g, axis=0), axis=1)
    ds = chords.copy()
    if chords.size >= 2 and chords.size % 2 == 0:
        c1, c2 = chords[0::2], chords[1::2]
        coarse = np.linalg.norm(g[2::2] - g[:-2:2], axis=1)
        pair = c1 + c2 + (c1 + c2 - coarse) / 3.0
        total = c1 + c2
        scale = np.where(total > 0.0, pair / np.where(total > 0.0, total, 1.0), 1.0)
        ds[0::2] = c1 * scale
        ds[1::2] = c2 * scale
    s = np.concatenate([[0.0], np.cumsum(ds)])

    phi = np.unwrap(np.arctan2(v_arr, u_arr))

    # geodesic curvature: second differences of g in s, dotted with the left
    # normal nu = -sin(phi) e1 + cos(phi) e2
    e1, e2, _ = frame_vectors(theta_arr, beta_arr)
    nu = -np.sin(phi)[:, None] * e1 + np.cos(phi)[:, None] * e2
    n = g.shape[0]
    kappa = np.empty(n)
    if periodic and n >= 3:
        gp = np.vstack([g[-2], g, g[1]])
        sp = np.concatenate([[s[0] - ds[-1]], s, [s[-1] + ds[0]]])
        h1 = np.diff(sp)[:-1]
        h2 = np.diff(sp)[1:]
        gpp = 2.0 * ((gp[2:] - gp[1:-1]) / h2[:, None]
                     - (gp[1:-1] - gp[:-2]) / h1[:, None]) / (h1 + h2)[:, None]
        kappa[:] = np.einsum("ij,ij->i", gpp, nu)
    elif n >= 3:
        h1 = np.diff(s)[:-1]
        h2 = np.diff(s)[1:]
        gpp = 2.0 * ((g[2:] - g[1:-1]) / h2[:, None]
                     - (g[1:-1] - g[:-2]) / h1[:, None]) / (h1 + h2)[:, None]
        kappa[1:-1] = np.einsum("ij,ij->i", gpp, nu[1:-1])
        # ends: the 3-point parabola estimate dotted with the end normal
        kappa[0] = float(gpp[0] @ nu[0])
        kappa[-1] = float(gpp[-1] @ nu[-1])
    else:
        kappa[:] = 0.0
    return g, s, phi, kappa


def regularize(path: MotionPath, eps: float = DEFAULT_EPSILON,
               samples_per_segment: int = 16,
               max_step: float = MAX_SAMPLE_STEP) -> RegularizedCurve:
    """Build the sampled pole-avoiding curve of the motion's Gauss vector.

    The tilt is clamped to [eps, pi-eps]; intervals where the clamped point
    does not move collapse to a single shared sample. Adjacent samples subtend
    well under 1e-2 radians (the default cap is 1e-3, further reduced near the
    clamp circles where curvature is large). Arc length comes from chord sums
    with pairwise Richardson correction; phi is unwrapped per smooth arc;
    kappa_g uses symmetric second differences in s.

    Parameters
    ----------
    path : MotionPath
    eps : float
        Clamp margin, in (0, pi/8).
    samples_per_segment : int
        Minimum sample count per smooth piece (floor for coarse motions).
    max_step : float
        Upper bound on the angle between adjacent samples, radians.
    """
    all_pieces = clamped_affine_pieces(path, eps)
    moving = [p for p in all_pieces if p.moving]

    if not moving:
        # the whole motion is stationary after clamping: a one-point curve
        p = all_pieces[0]
        g = gauss_vector(p.th0, p.b0)[None, :]
        return RegularizedCurve(
            epsilon=eps, t=np.array([p.t0]), s=np.array([0.0]),
            theta=np.array([p.th0]), beta_eps=np.array([p.b0]), g=g,
            phi=np.array([0.0]), kappa_g=np.array([0.0]), arcs=((0, 1),),
            junctions=(), total_length=0.0, closed=False, pieces=all_pieces)

    inner_alphas = [_junction_angle(a, b) for a, b in zip(moving, moving[1:])]

    g_first = gauss_vector(*_start_point(moving[0]))
    g_last = gauss_vector(*moving[-1].end_values())
    closed = bool(np.linalg.norm(g_last - g_first) <= GEOM_CLOSE_TOL)
    wrap_alpha = _junction_angle(moving[-1], moving[0]) if closed else None

    # group pieces into smooth arcs, breaking where the tangent jumps
    groups = [[moving[0]]]
    for piece, alpha in zip(moving[1:], inner_alphas):
        if abs(alpha) > CUSP_ANGLE_TOL:
            groups.append([piece])
        else:
            groups[-1].append(piece)
    single_smooth_loop = closed and len(groups) == 1 and (
        wrap_alpha is not None and abs(wrap_alpha) <= CUSP_ANGLE_TOL)

    t_all, th_all, b_all, g_all = [], [], [], []
    s_all, phi_all, kap_all = [], [], []
    arcs = []
    s_off = 0.0
    piece_last_index = {}   # id(piece) -> global index of its final sample
    piece_first_index = {}
    for group in groups:
        ts, ths, bs, us, vs = [], [], [], [], []
        for k, piece in enumerate(group):
            tp = _piece_samples(piece, samples_per_segment, max_step)
            if k > 0:
                tp = tp[1:]   # the junction sample is shared within the arc
            th, b = piece.at(tp)
            u, v = _tangent_components(piece, tp)
            ts.append(tp); ths.append(th); bs.append(b); us.append(u); vs.append(v)
        t_arr = np.concatenate(ts)
        th_arr = np.concatenate(ths)
        b_arr = np.concatenate(bs)
        u_arr = np.concatenate(us)
        v_arr = np.concatenate(vs)
        g_arr, s_arr, phi_arr, kap_arr = _arc_geometry(
            t_arr, th_arr, b_arr, u_arr, v_arr, periodic=single_smooth_loop)

        i0 = sum(a.size for a in t_all)
        arcs.append((i0, i0 + t_arr.size))
        offset = i0
        pos = 0
        for k, piece in enumerate(group):
            n_k = _piece_samples(piece, samples_per_segment, max_step).size
            if k == 0:
                piece_first_index[id(piece)] = offset
                pos = n_k - 1
            else:
                pos += n_k - 1
            piece_last_index[id(piece)] = offset + pos
        for k, piece in enumerate(group):
            if k > 0:
                piece_first_index[id(piece)] = piece_last_index[id(group[k - 1])]

        t_all.append(t_arr); th_all.append(th_arr); b_all.append(b_arr)
        g_all.append(g_arr); phi_all.append(phi_arr); kap_all.append(kap_arr)
        s_all.append(s_arr + s_off)
        s_off += float(s_arr[-1])

    junctions = []
    for (p_in, p_out), alpha in zip(zip(moving, moving[1:]), inner_alphas):
        junctions.append(Junction(t=float(p_in.t1), alpha=alpha,
                                  in_index=piece_last_index[id(p_in)],
                                  out_index=piece_first_index[id(p_out)]))
    if closed:
        junctions.append(Junction(t=float(moving[-1].t1), alpha=float(wrap_alpha),
                                  in_index=piece_last_index[id(moving[-1])],
                                  out_index=0))

    return RegularizedCurve(
        epsilon=eps,
        t=np.concatenate(t_all), s=np.concatenate(s_all),
        theta=np.concatenate(th_all), beta_eps=np.concatenate(b_all),
        g=np.vstack(g_all), phi=np.concatenate(phi_all),
        kappa_g=np.concatenate(kap_all),
        arcs=tuple(arcs), junctions=tuple(junctions),
        total_length=float(s_off), closed=closed, pieces=tuple(all_pieces))


def _start_point(piece: ClampedPiece):
    return piece.th0, piece.b0


@lru_cache(maxsize=8)
def cached_regularize(path: MotionPath, eps: float,
                      samples_per_segment: int = 16) -> RegularizedCurve:
    """Memoized regularize keyed on path identity; shared across phase methods."""
    return regularize(path, eps, samples_per_segment)


# ---------------------------------------------------------------------------
# pointwise curvature, cusps


def geodesic_curvature_at(curve: RegularizedCurve, index: int) -> float:
    """Stored finite-difference curvature at a sample; cusp samples are refused."""
    if not (0 <= index < len(curve)):
        raise IndexError(f"sample index {index} out of range")
    if index in curve._cusp_sample_indices():
        raise AtCusp(f"sample {index} sits at a tangent discontinuity")
    return float(curve.kappa_g[index])


def detect_cusps(curve: RegularizedCurve, angle_tol: float = CUSP_ANGLE_TOL) -> tuple:
    """Junctions whose tangent jump exceeds angle_tol, as (t, alpha) records."""
    return tuple(Cusp(t=j.t, alpha=j.alpha) for j in curve.junctions
                 if abs(j.alpha) > angle_tol)


# ---------------------------------------------------------------------------
# offset curves (parallel curves at signed distance q on the sphere)


def _smooth_or_raise(curve: RegularizedCurve):
    if curve.cusps:
        raise CurveHasCusps(
            f"operation needs a smooth curve; found {len(curve.cusps)} cusp(s)")


def _normal_derivative(curve: RegularizedCurve) -> np.ndarray:
    """d(nu)/ds by central differences, periodic when the curve closes smoothly."""
    nu = curve.left_normals()
    s = curve.s
    n = len(curve)
    out = np.empty_like(nu)
    if curve.closed and n >= 3:
        ds_wrap_lo = s[-1] - s[-2]
        nup = np.vstack([nu[-2], nu, nu[1]])
        sp = np.concatenate([[s[0] - ds_wrap_lo], s, [s[-1] + (s[1] - s[0])]])
        h1 = (sp[1:-1] - sp[:-2])[:, None]
        h2 = (sp[2:] - sp[1:-1])[:, None]
        # non-uniform central first derivative
        out = (nup[2:] * h1 ** 2 - nup[:-2] * h2 ** 2
               + nup[1:-1] * (h2 ** 2 - h1 ** 2)) / (h1 * h2 * (h1 + h2))
    else:
        out[1:-1] = (nu[2:] - nu[:-2]) / (s[2:] - s[:-2])[:, None]
        out[0] = (nu[1] - nu[0]) / (s[1] - s[0])
        out[-1] = (nu[-1] - nu[-2]) / (s[-1] - s[-2])
    return out


def offset_length(curve: RegularizedCurve, q: float) -> float:
    """Length of the parallel curve at signed offset q.

    The offset curve displaces each point by q against the left normal; its
    length is the integral of |g'(s) - q nu'(s)|, evaluated by the composite
    trapezoid rule over the stored samples.
    """
    _smooth_or_raise(curve)
    integrand = np.linalg.norm(curve.tangents() - q * _normal_derivative(curve), axis=1)
    return float(np.trapezoid(integrand, curve.s))


def offset_length_derivative(curve: RegularizedCurve, h: float = 1e-3) -> float:
    """d(L_q)/dq at q=0 via central differences at h and h/2 with Richardson.

    For smooth closed curves this equals the integral of the geodesic
    curvature along the curve.
    """
    _smooth_or_raise(curve)
    d_h = (offset_length(curve, +h) - offset_length(curve, -h)) / (2.0 * h)
    d_h2 = (offset_length(curve, +h / 2) - offset_length(curve, -h / 2)) / h
    return (4.0 * d_h2 - d_h) / 3.0
