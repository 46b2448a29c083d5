"""Monodromy matrices of the three generating loops and the period functions.

The frame is integrated along the two half paths c1 and c2 only; the loop
monodromies Phi1, Phi2, Phi3 are then assembled from the endpoint frames via
the curve symmetries (z, w) -> (conj z, conj w), (-z, 1/w), (-conj z, 1/conj w)
and the associated frame identities.  Direct full-loop holonomy is kept as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import CurveParams, PathSpec, canonical_paths
from .errors import ContinuationError, DegenerateDenominator
from .transport import DEFAULT_CONFIG, IntegratorConfig, integrate_frame

# Structural deviations beyond this indicate path or sheet bugs.
TOL_FORM = 1e-7


@dataclass(frozen=True)
class HalfPathFrames:
    """Endpoint frames along c1 and c2 with identity initial condition."""

    F_c1: np.ndarray
    F_c2: np.ndarray
    params: CurveParams


@dataclass(frozen=True)
class MonodromyTriple:
    Phi1: np.ndarray
    Phi2: np.ndarray
    Phi3: np.ndarray


def half_path_frames(
    params: CurveParams, cfg: IntegratorConfig = DEFAULT_CONFIG
) -> HalfPathFrames:
    paths = canonical_paths(params)
    F1 = integrate_frame(paths.c1, params, cfg=cfg).F
    F2 = integrate_frame(paths.c2, params, cfg=cfg).F
    return HalfPathFrames(F1, F2, params)


def assemble_monodromies(h: HalfPathFrames) -> MonodromyTriple:
    """Monodromies of gamma1, gamma2, gamma3 from the half-path frames.

    With F(c1(1)) = [[A1, B1], [C1, D1]] and F(c2(1)) = [[A2, B2], [C2, D2]]:

      Phi1 = [[cA1, -cC1], [-cB1, cD1]] [[D1, -C1], [-B1, A1]]
             [[cD1, cB1], [cC1, cA1]] [[A1, B1], [C1, D1]]
      Phi2 = [[cD2, -cB2], [-cC2, cA2]] [[A2, B2], [C2, D2]]
      Phi3 = [[cA2, -cC2], [-cB2, cD2]] [[D2, C2], [B2, A2]]

    where c denotes complex conjugation.
    """
    A1, B1 = h.F_c1[0, 0], h.F_c1[0, 1]
    C1, D1 = h.F_c1[1, 0], h.F_c1[1, 1]
    A2, B2 = h.F_c2[0, 0], h.F_c2[0, 1]
    C2, D2 = h.F_c2[1, 0], h.F_c2[1, 1]
    cj = np.conj

    Phi1 = (
        np.array([[cj(A1), -cj(C1)], [-cj(B1), cj(D1)]])
        @ np.array([[D1, -C1], [-B1, A1]])
        @ np.array([[cj(D1), cj(B1)], [cj(C1), cj(A1)]])
        @ np.array([[A1, B1], [C1, D1]])
    )
    Phi2 = np.array([[cj(D2), -cj(B2)], [-cj(C2), cj(A2)]]) @ np.array(
        [[A2, B2], [C2, D2]]
    )
    Phi3 = np.array([[cj(A2), -cj(C2)], [-cj(B2), cj(D2)]]) @ np.array(
        [[D2, C2], [B2, A2]]
    )
    return MonodromyTriple(Phi1, Phi2, Phi3)


def direct_loop_holonomy(
    loop: PathSpec,
    params: CurveParams,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Holonomy of a closed loop: endpoint frame with identity start.

    The lift must close on the curve, so the transported w is required to
    return to its initial value.
    """
    if not loop.closed:
        raise ContinuationError("holonomy requires a closed loop")
    state = integrate_frame(loop, params, cfg=cfg)
    if abs(state.point.w - loop.start.w) > 1e-6 * (1.0 + abs(loop.start.w)):
        raise ContinuationError(
            f"loop did not close on the curve (w drift {abs(state.point.w - loop.start.w):.3e})"
        )
    return state.F


def structure_defect(triple: MonodromyTriple) -> float:
    """Deviation of the triple from its symmetry-forced shape, scale normalized.

    Phi2 must look like [[p, i r], [i s, conj p]] with r, s real, Phi3 is its
    swap image [[conj p, i s], [i r, p]], and Phi1 is [[q, t], [-conj t, q']]
    with q, q' real.
    """
    P1, P2, P3 = triple.Phi1, triple.Phi2, triple.Phi3
    n1 = max(1.0, float(np.max(np.abs(P1))))
    n2 = max(1.0, float(np.max(np.abs(P2))))
    swap = np.array([[np.conj(P2[0, 0]), P2[1, 0]], [P2[0, 1], P2[0, 0]]])
    return max(
        abs(P2[1, 1] - np.conj(P2[0, 0])) / n2,
        abs((P2[0, 1] / 1j).imag) / n2,
        abs((P2[1, 0] / 1j).imag) / n2,
        float(np.max(np.abs(P3 - swap))) / n2,
        abs(P1[0, 0].imag) / n1,
        abs(P1[1, 1].imag) / n1,
        abs(P1[1, 0] + np.conj(P1[0, 1])) / n1,
    )


def period_functions(h: HalfPathFrames) -> tuple:
    """The two real period functions (f1, f2) of the identity-frame entries.

    f1 = -(cA1 C1 + A1 cC1 + cB1 D1 + B1 cD1) / (cA1 D1 + A1 cD1 + cB1 C1 + B1 cC1)
    f2 = -(cA2 C2 - A2 cC2 + cB2 D2 - B2 cD2) / (cA2 D2 - A2 cD2 + cB2 C2 - B2 cC2)

    Both are real by construction; f1 = f2 with common value of modulus
    greater than 1 is the closing condition solved in the period module.
    """
    A1, B1 = h.F_c1[0, 0], h.F_c1[0, 1]
    C1, D1 = h.F_c1[1, 0], h.F_c1[1, 1]
    A2, B2 = h.F_c2[0, 0], h.F_c2[0, 1]
    C2, D2 = h.F_c2[1, 0], h.F_c2[1, 1]
    cj = np.conj

    num1 = cj(A1) * C1 + A1 * cj(C1) + cj(B1) * D1 + B1 * cj(D1)
    den1 = cj(A1) * D1 + A1 * cj(D1) + cj(B1) * C1 + B1 * cj(C1)
    num2 = cj(A2) * C2 - A2 * cj(C2) + cj(B2) * D2 - B2 * cj(D2)
    den2 = cj(A2) * D2 - A2 * cj(D2) + cj(B2) * C2 - B2 * cj(C2)

    f1 = _real_ratio(num1, den1, "f1")
    f2 = _real_ratio(num2, den2, "f2")
    return f1, f2


def _real_ratio(num: complex, den: complex, name: str) -> float:
    if abs(den) <= 1e-12 * (1.0 + abs(num)):
        raise DegenerateDenominator(f"{name} denominator vanished")
    value = -num / den
    if abs(value.imag) > TOL_FORM * max(1.0, abs(value)):
        raise ContinuationError(f"{name} is not real: {value}")
    return float(value.real)
