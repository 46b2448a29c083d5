"""Surface geometry: immersion, Gauss map, hollow-ball model, meshes, diagnostics.

The immersion is X = F e3 F* read off in the Lorentz frame; its image lies on
the unit quadric of signature (-,+,+,+).  The hollow-ball map sends the quadric
into the spherical shell of radii exp(-pi/2) .. exp(pi/2) for visualization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curve import (
    ARC_LIFT,
    CurveParams,
    CurvePoint,
    PathSpec,
    base_point,
    branch_points,
    log_derivative,
    log_derivative_prime,
)
from .errors import DegeneratePoint, SingularPoint
from .period import PeriodSolution
from .transport import DEFAULT_CONFIG, FrameState, IntegratorConfig, integrate_frame

# Flag threshold on | |g| - 1 | (rendering diagnostics only).
TOL_SING = 1e-3
# Mesh keeps this clear of branch points (slightly above the path minimum).
MESH_CLEARANCE = 0.15
# Innermost mesh ring.
MESH_R_IN = 0.12
# A sample is resolvable when |X| exceeds the evaluation noise |F|^2 * eps of
# the products forming it; unresolvable nodes become holes.
RESOLVE_EPS = 1e-10


@dataclass(frozen=True)
class MinkowskiPoint:
    """A vector in Lorentz 4-space with signature (-,+,+,+)."""

    x0: float
    x1: float
    x2: float
    x3: float

    def lorentz_norm(self) -> float:
        return -self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2

    def quadric_residual(self) -> float:
        """|<X, X> - 1| normalized by the squared Euclidean size.

        Surface points satisfy <X, X> = 1; near the ends the components grow
        without bound and the absolute defect is floored at size^2 * 1e-16,
        hence the normalization.
        """
        scale = self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2
        return abs(self.lorentz_norm() - 1.0) / max(1.0, scale)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class HollowBallPoint:
    y1: float
    y2: float
    y3: float

    def radius_sq(self) -> float:
        return self.y1 ** 2 + self.y2 ** 2 + self.y3 ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.y1, self.y2, self.y3])


@dataclass(frozen=True)
class SurfaceSample:
    param: CurvePoint
    X: MinkowskiPoint
    Y: HollowBallPoint
    g_abs: float
    singular: bool
    # max |F entry| at the sample: the conditioning scale of every quantity
    # formed from the frame (the quadric defect is floored near scale^4 * eps)
    frame_scale: float = 1.0


@dataclass(frozen=True)
class MeshResult:
    samples: list
    triangles: list
    holes: int


def immerse(F: np.ndarray) -> MinkowskiPoint:
    """X = F e3 F* as a Lorentz 4-vector.

    The product is self adjoint with determinant -1 whenever det F = 1, so the
    result lies on the unit quadric.
    """
    f11 = (abs(F[0, 0]) ** 2 - abs(F[0, 1]) ** 2)
    f22 = (abs(F[1, 0]) ** 2 - abs(F[1, 1]) ** 2)
    f12 = F[0, 0] * np.conj(F[1, 0]) - F[0, 1] * np.conj(F[1, 1])
    return MinkowskiPoint(
        x0=0.5 * (f11 + f22),
        x1=float(f12.real),
        x2=float(f12.imag),
        x3=0.5 * (f11 - f22),
    )


def secondary_gauss(F: np.ndarray, p: CurvePoint, c: float) -> complex:
    """The multivalued Gauss map g = -dF12/dF11 evaluated through dF = alpha F.

    Equals -(F12 - w F22) / (F11 - w F21); returns complex infinity when the
    denominator vanishes (infinity is a legitimate value of g).
    The surface is singular exactly where |g| = 1.
    """
    w = p.w
    num = -(F[0, 1] - w * F[1, 1])
    den = F[0, 0] - w * F[1, 0]
    if den == 0:
        return complex(math.inf, 0.0)
    return complex(num / den)


def secondary_gauss_row2(F: np.ndarray, p: CurvePoint, c: float) -> complex:
    """Row-two form -dF22/dF21 of the same map, for consistency checks."""
    w = p.w
    num = -(F[0, 1] / w - F[1, 1])
    den = F[0, 0] / w - F[1, 0]
    if den == 0:
        return complex(math.inf, 0.0)
    return complex(num / den)


def unit_normal(F: np.ndarray, g: complex) -> MinkowskiPoint:
    """Unit timelike normal (1 / (|g|^2 - 1)) (F nu)(F nu)*, nu = [[1, g], [conj g, 1]].

    Future pointing exactly when |g| > 1.  Requires a regular point.
    """
    if not cmath.isfinite(complex(g)):
        # limit of nu nu* / (|g|^2 - 1) as g -> infinity is the identity
        N = F @ F.conj().T
    else:
        if abs(abs(g) - 1.0) < TOL_SING:
            raise SingularPoint(f"|g| = {abs(g)} is within {TOL_SING} of 1")
        nu = np.array([[1.0, g], [np.conj(g), 1.0]], dtype=complex)
        Fn = F @ nu
        N = (Fn @ Fn.conj().T) / (abs(g) ** 2 - 1.0)
    n12 = N[0, 1]
    return MinkowskiPoint(
        x0=0.5 * float((N[0, 0] + N[1, 1]).real),
        x1=float(n12.real),
        x2=float(n12.imag),
        x3=0.5 * float((N[0, 0] - N[1, 1]).real),
    )


def hollow_ball(X: MinkowskiPoint) -> HollowBallPoint:
    """y_k = exp(arctan x0) / sqrt(1 + x0^2) * x_k for k = 1, 2, 3.

    On the quadric the image radius squared equals exp(2 arctan x0), which
    stays strictly inside (exp(-pi), exp(pi)).
    """
    factor = math.exp(math.atan(X.x0)) / math.sqrt(1.0 + X.x0 ** 2)
    return HollowBallPoint(factor * X.x1, factor * X.x2, factor * X.x3)


def frame_at(
    sol: PeriodSolution,
    z: complex,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
    sheet: int = +1,
) -> FrameState:
    """Frame at the point over z reached by the straight segment from the base.

    Initial frame is the solution gauge P on the requested sheet's base point.
    """
    params = CurveParams(sol.a, sol.c)
    start = base_point(sheet)
    path = PathSpec(start, (start.z, complex(z)))
    return integrate_frame(path, params, F0=sol.P, cfg=cfg)


# ---------------------------------------------------------------------------
# meshes


def _allowed_intervals(a: float, r_out: float) -> list:
    iv = [(MESH_R_IN, 1.0 - MESH_CLEARANCE)]
    if a - MESH_CLEARANCE > 1.0 + MESH_CLEARANCE + 0.05:
        iv.append((1.0 + MESH_CLEARANCE, a - MESH_CLEARANCE))
    iv.append((a + MESH_CLEARANCE, r_out))
    return iv


def _ring_radii(a: float, nu: int, r_out: float) -> list:
    """nu radii distributed over the allowed intervals, log spaced within each."""
    intervals = _allowed_intervals(a, r_out)
    weights = [math.log(hi / lo) for lo, hi in intervals]
    total = sum(weights)
    counts = [max(2, int(round(nu * w / total))) for w in weights]
    while sum(counts) > max(nu, 2 * len(intervals)):
        counts[counts.index(max(counts))] -= 1
    radii: list = []
    for (lo, hi), n in zip(intervals, counts):
        for i in range(n):
            radii.append(lo * (hi / lo) ** (i / (n - 1)) if n > 1 else lo)
    return sorted(set(radii))


def _arc_waypoints(start: complex, r: float, u0: float, u1: float) -> tuple:
    """Counterclockwise polyline along |z| = r from angle u0 to u1 > u0.

    The first vertex reuses the exact current point so consecutive chunks
    chain without floating-point mismatch.
    """
    n = max(1, int(math.ceil((u1 - u0) / (math.pi / 48))))
    tail = tuple(r * cmath.exp(1j * (u0 + (u1 - u0) * j / n)) for j in range(1, n + 1))
    return (start,) + tail


def _sheet_root(sol: PeriodSolution, sheet: int, cfg: IntegratorConfig) -> FrameState:
    params = CurveParams(sol.a, sol.c)
    if sheet == +1:
        return FrameState(base_point(+1), sol.P.astype(complex), 0.0)
    z1 = (1.0 + sol.a) / 2.0
    lift = ARC_LIFT * 1j
    flip = PathSpec(
        base_point(+1), (0j, z1 / 2 + lift, complex(z1), z1 / 2 - lift, 0j)
    )
    return integrate_frame(flip, params, F0=sol.P, cfg=cfg)


def _segment_crosses_slit(z1: complex, z2: complex, a: float) -> bool:
    """Does [z1, z2] cross the real axis inside a sheet-change slit?"""
    if z1.imag == 0.0 and z2.imag == 0.0:
        return False
    if (z1.imag > 0) == (z2.imag > 0):
        return False
    t = -z1.imag / (z2.imag - z1.imag)
    x = z1.real + t * (z2.real - z1.real)
    margin = 0.1
    return (1.0 - margin <= x <= a + margin) or (-a - margin <= x <= -1.0 + margin)


def _segment_near_branch(z1: complex, z2: complex, a: float) -> bool:
    d = z2 - z1
    dd = (d * d.conjugate()).real
    for b in branch_points(a):
        if dd == 0.0:
            dist = abs(b - z1)
        else:
            t = min(1.0, max(0.0, ((b - z1) * d.conjugate()).real / dd))
            dist = abs(b - (z1 + t * d))
        if dist < MESH_CLEARANCE:
            return True
    return False


def build_mesh(
    sol: PeriodSolution,
    nu: int,
    nv: int,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> MeshResult:
    """Sample the immersion over both sheets of an annular grid.

    Rings are concentric circles avoiding neighborhoods of the branch points;
    both sheets are covered by rooting the frame at the two points over z = 0
    (the second root frame is carried around one branch point first).  Each
    ring is swept once counterclockwise from the imaginary axis, so every node
    has a fixed integration path and resampling is deterministic.  Triangles
    that would cross a sheet-change slit, pass near a branch point, or
    straddle the singular set |g| = 1 are omitted.
    """
    params = CurveParams(sol.a, sol.c)
    radii = _ring_radii(sol.a, nu, 3.0 * sol.a)
    angles = [2 * math.pi * (k + 0.5) / nv for k in range(nv)]
    order = sorted(range(nv), key=lambda k: (angles[k] - math.pi / 2) % (2 * math.pi))

    samples: list = []
    index: dict = {}
    holes = 0
    for sheet in (+1, -1):
        try:
            root = _sheet_root(sol, sheet, cfg)
        except Exception:
            holes += len(radii) * nv
            continue
        for j, r in enumerate(radii):
            try:
                entry = integrate_frame(
                    PathSpec(root.point, (0j, r * 1j)), params, F0=root.F, cfg=cfg
                )
            except Exception:
                holes += nv
                continue
            state = entry
            prev_u = math.pi / 2
            ring_failed = False
            for k in order:
                if ring_failed:
                    holes += 1
                    continue
                u = math.pi / 2 + (angles[k] - math.pi / 2) % (2 * math.pi)
                try:
                    state = integrate_frame(
                        PathSpec(state.point, _arc_waypoints(state.point.z, r, prev_u, u)),
                        params,
                        F0=state.F,
                        cfg=cfg,
                    )
                except Exception:
                    ring_failed = True
                    holes += 1
                    continue
                prev_u = u
                g = secondary_gauss(state.F, state.point, sol.c)
                g_abs = abs(g)
                X = immerse(state.F)
                frame_scale = float(np.max(np.abs(state.F)))
                norm_x = math.sqrt(float(np.sum(X.as_array() ** 2)))
                if frame_scale ** 2 * RESOLVE_EPS > max(1.0, norm_x):
                    holes += 1
                    continue
                samples.append(
                    SurfaceSample(
                        param=state.point,
                        X=X,
                        Y=hollow_ball(X),
                        g_abs=g_abs,
                        singular=abs(g_abs - 1.0) < TOL_SING,
                        frame_scale=frame_scale,
                    )
                )
                index[(sheet, j, k)] = len(samples) - 1

    triangles: list = []
    for sheet in (+1, -1):
        for j in range(len(radii) - 1):
            for k in range(nv):
                k1 = (k + 1) % nv
                quad = [
                    index.get((sheet, j, k)),
                    index.get((sheet, j + 1, k)),
                    index.get((sheet, j + 1, k1)),
                    index.get((sheet, j, k1)),
                ]
                if any(i is None for i in quad):
                    continue
                for tri in ((quad[0], quad[1], quad[2]), (quad[0], quad[2], quad[3])):
                    if _keep_triangle(tri, samples, sol.a):
                        triangles.append(tri)
    return MeshResult(samples, triangles, holes)


def _keep_triangle(tri: tuple, samples: list, a: float) -> bool:
    pts = [samples[i].param.z for i in tri]
    for p, q in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])):
        if _segment_crosses_slit(p, q, a) or _segment_near_branch(p, q, a):
            return False
    signs = [samples[i].g_abs >= 1.0 for i in tri]
    if len(set(signs)) > 1:
        return False
    return True


def symmetry_curves(
    sol: PeriodSolution,
    samples: int = 400,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
    mesh: MeshResult | None = None,
) -> list:
    """Planar symmetry curves: iso-lines y2 = 0 extracted from a mesh.

    The hollow-ball factor is positive, so y2 = 0 exactly where x2 = 0.
    Interpolation is linear in y2 along triangle edges, which zeroes the y2
    component of every emitted vertex by construction.  Returns a list of
    polylines (lists of HollowBallPoint).
    """
    if mesh is None:
        side = max(6, int(round(math.sqrt(samples))))
        mesh = build_mesh(sol, side, side, cfg)
    segments: list = []
    for tri in mesh.triangles:
        vals = [mesh.samples[i].Y.y2 for i in tri]
        pos = [v > 0.0 for v in vals]
        if all(pos) or not any(pos):
            continue
        crossings = []
        for e in ((0, 1), (1, 2), (2, 0)):
            vi, vj = vals[e[0]], vals[e[1]]
            if (vi > 0.0) == (vj > 0.0):
                continue
            t = vi / (vi - vj)
            yi = mesh.samples[tri[e[0]]].Y.as_array()
            yj = mesh.samples[tri[e[1]]].Y.as_array()
            crossings.append(tuple(yi + t * (yj - yi)))
        if len(crossings) == 2:
            segments.append((crossings[0], crossings[1]))
    return [
        [HollowBallPoint(*p) for p in chain] for chain in _chain_segments(segments)
    ]


def _chain_segments(segments: list) -> list:
    """Join shared-endpoint segments into maximal polylines."""

    def key(p):
        return (round(p[0], 9), round(p[1], 9), round(p[2], 9))

    adj: dict = {}
    for i, (p, q) in enumerate(segments):
        adj.setdefault(key(p), []).append((i, 0))
        adj.setdefault(key(q), []).append((i, 1))
    used = [False] * len(segments)
    chains = []
    for i in range(len(segments)):
        if used[i]:
            continue
        used[i] = True
        chain = [segments[i][0], segments[i][1]]
        for grow_end in (True, False):
            while True:
                tip = chain[-1] if grow_end else chain[0]
                nxt = None
                for idx, end in adj.get(key(tip), []):
                    if not used[idx]:
                        nxt = (idx, end)
                        break
                if nxt is None:
                    break
                idx, end = nxt
                used[idx] = True
                new_pt = segments[idx][1 - end]
                if grow_end:
                    chain.append(new_pt)
                else:
                    chain.insert(0, new_pt)
        chains.append(chain)
    return chains


# ---------------------------------------------------------------------------
# diagnostics


def _analytic_gauss_chain(F: np.ndarray, w: complex, z: complex, a: float, c: float):
    """g, g', g'' at a point from dF = alpha F (no numerical differentiation)."""
    lz = log_derivative(z, a)
    lp = log_derivative_prime(z, a)
    num = -(F[0, 1] - w * F[1, 1])
    den = F[0, 0] - w * F[1, 0]
    if den == 0:
        raise DegeneratePoint("Gauss map has a pole here")
    g = num / den
    dnum = w * lz * F[1, 1]
    dden = -w * lz * F[1, 0]
    gp = (dnum - g * dden) / den
    ddnum = w * (lz * lz + lp) * F[1, 1] + c * lz * F[0, 1] - c * w * lz * F[1, 1]
    ddden = -w * (lz * lz + lp) * F[1, 0] - c * lz * F[0, 0] + c * w * lz * F[1, 0]
    gpp = (ddnum - 2 * gp * dden - g * ddden) / den
    return g, gp, gpp, lz, lp


def small_formula_check(
    sol: PeriodSolution,
    p: CurvePoint,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """Rebuild the frame from (G, g) by the closed reconstruction formula.

    With a = sqrt(dG/dg) and b = -g a, the frame equals
    [[G da/dG - a, G db/dG - b], [da/dG, db/dG]] up to a global sign; the
    returned value is the entrywise distance to the integrated frame,
    minimized over that sign.  All derivatives are taken analytically from
    dF = alpha F.
    """
    state = frame_at(sol, p.z, cfg)
    if abs(state.point.w - p.w) > 1e-6 * (1.0 + abs(p.w)):
        raise DegeneratePoint(
            "requested point lies on the other sheet; probe points are reached "
            "from the base by a straight segment"
        )
    F, w, z = state.F, state.point.w, state.point.z
    a, c = sol.a, sol.c
    g, gp, gpp, lz, lp = _analytic_gauss_chain(F, w, z, a, c)
    wp = w * lz
    if abs(gp) < 1e-8 or abs(wp) < 1e-8:
        raise DegeneratePoint("dg or dG below 1e-8")
    a_ = cmath.sqrt(wp / gp)
    ap = 0.5 * a_ * (lz + lp / lz - gpp / gp)
    b_ = -g * a_
    bp = -(gp * a_ + g * ap)
    F_small = np.array(
        [[ap / lz - a_, bp / lz - b_], [ap / wp, bp / wp]], dtype=complex
    )
    return float(
        min(np.max(np.abs(F_small - F)), np.max(np.abs(F_small + F)))
    )


def schwarzian_check(
    sol: PeriodSolution,
    p: CurvePoint,
    h: float = 1e-3,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """Residual of 2Q = S(g) - S(G) at p, Schwarzians by five-point stencils.

    Q in the z coordinate is c (dw/dz)/w dz^2, so the identity reads
    2 c L(z) = S_z(g) - S_z(w).  Both Schwarzians are formed from function
    values on the stencil z + k h (k = -2..2), independent of the analytic
    derivative chain, so this is a genuine cross-check of the transported
    frame.  Converges at second order in h.
    """
    gs = []
    ws = []
    for k in (-2, -1, 0, 1, 2):
        state = frame_at(sol, p.z + k * h, cfg)
        g = secondary_gauss(state.F, state.point, sol.c)
        if not cmath.isfinite(g):
            raise DegeneratePoint("Gauss map pole inside the stencil")
        gs.append(g)
        ws.append(state.point.w)
    s_g = _schwarzian_fd(gs, h)
    s_w = _schwarzian_fd(ws, h)
    two_q = 2.0 * sol.c * log_derivative(p.z, sol.a)
    return float(abs(two_q - (s_g - s_w)))


def _schwarzian_fd(vals: list, h: float) -> complex:
    vm2, vm1, v0, vp1, vp2 = vals
    d1 = (vm2 - 8 * vm1 + 8 * vp1 - vp2) / (12 * h)
    d2 = (-vm2 + 16 * vm1 - 30 * v0 + 16 * vp1 - vp2) / (12 * h * h)
    d3 = (-vm2 + 2 * vm1 - 2 * vp1 + vp2) / (2 * h ** 3)
    if d1 == 0:
        raise DegeneratePoint("stencil derivative vanished")
    return d3 / d1 - 1.5 * (d2 / d1) ** 2
