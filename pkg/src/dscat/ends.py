"""End behaviour at the two punctures: indicial exponent and monodromy type.

The scalar equations satisfied by the frame entries have a regular singular
point at each puncture with exponent gap m = sqrt(1 - 4c(a-1)).  The end
monodromy has eigenvalues -exp(+-i pi m): elliptic (unit circle) for real
non-integer m, hyperbolic (real) for purely imaginary m.  Integer m is the
excluded resonant case with logarithmic solutions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curve import CurveParams, PathSpec, canonical_paths
from .errors import DomainError, EigenvalueMismatch, ResonantExponent
from .linalg2c import ConjugacyKind, ConjugacyType, eigenvalues, sort_eigenvalues
from .monodromy import direct_loop_holonomy
from .transport import DEFAULT_CONFIG, IntegratorConfig, integrate_frame

TOL_RES = 1e-6
# Relative eigenvalue mismatch tolerance (hyperbolic traces grow like exp(pi |m|)).
TOL_EIG = 1e-6


@dataclass(frozen=True)
class EndAnalysis:
    m: complex
    end_type: ConjugacyKind
    predicted_eigenvalues: tuple
    measured_eigenvalues: tuple | None = None
    eigenvalue_mismatch: float | None = None


def indicial_exponent(a: float, c: float) -> complex:
    """m = sqrt(1 - 4c(a-1)), principal branch.

    Real positive for radicand > 0, i times positive real for radicand < 0.
    Raises ResonantExponent within TOL_RES of an integer (including 0).
    """
    CurveParams(a, c)
    rad = 1.0 - 4.0 * c * (a - 1.0)
    if rad >= 0.0:
        m = complex(math.sqrt(rad))
    else:
        m = 1j * math.sqrt(-rad)
    if _integer_distance(m) < TOL_RES:
        raise ResonantExponent(f"indicial exponent m = {m} is within {TOL_RES} of an integer")
    return m


def predicted_end_eigenvalues(m: complex) -> tuple:
    return sort_eigenvalues((-cmath.exp(1j * math.pi * m), -cmath.exp(-1j * math.pi * m)))


def classify_end(a: float, c: float) -> EndAnalysis:
    """End type from the closed-form exponent alone (no integration)."""
    m = indicial_exponent(a, c)
    if abs(m.imag) == 0.0:
        kind = ConjugacyKind.ELLIPTIC
    else:
        kind = ConjugacyKind.HYPERBOLIC
    return EndAnalysis(m, kind, predicted_end_eigenvalues(m))


def end_conjugacy_type(a: float, c: float) -> ConjugacyType:
    """ConjugacyType record of the end monodromy, with its natural parameter."""
    m = indicial_exponent(a, c)
    if abs(m.imag) == 0.0:
        trace = -2.0 * math.cos(math.pi * m.real)
        theta = math.acos(max(-1.0, min(1.0, trace / 2.0)))
        return ConjugacyType(ConjugacyKind.ELLIPTIC, theta)
    return ConjugacyType(ConjugacyKind.HYPERBOLIC, math.pi * abs(m.imag))


def end_loop_check(
    a: float,
    c: float,
    which_end: int = +1,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> EndAnalysis:
    """Integrate the end loop and compare its eigenvalues with the prediction.

    which_end selects the puncture: +1 for the end approached with w -> +1,
    -1 for w -> -1.  The mismatch is relative, max over the sorted pair of
    |measured - predicted| / max(1, |predicted|).  Raises EigenvalueMismatch
    above TOL_EIG.
    """
    base = classify_end(a, c)
    params = CurveParams(a, c)
    paths = canonical_paths(params)
    loop = paths.end_loop_plus if which_end >= 0 else paths.end_loop_minus
    Phi = direct_loop_holonomy(loop, params, cfg=cfg)
    measured = eigenvalues(Phi)
    mismatch = max(
        abs(me - pr) / max(1.0, abs(pr))
        for me, pr in zip(measured, base.predicted_eigenvalues)
    )
    analysis = EndAnalysis(
        base.m, base.end_type, base.predicted_eigenvalues, measured, mismatch
    )
    if mismatch > TOL_EIG:
        raise EigenvalueMismatch(
            f"end-loop eigenvalues deviate by {mismatch:.3e} from -exp(+-i pi m)"
        )
    return analysis


def lift_independence_check(
    params: CurveParams,
    loop: PathSpec,
    B: np.ndarray,
    cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """Eigenvalue discrepancy of the loop monodromy across two null lifts.

    The lift with initial frame B has monodromy B^-1 Phi B, so the spectrum is
    unchanged in exact arithmetic; the returned value measures integration
    error only.  Relative, using the identity-frame eigenvalues as scale.
    """
    det_b = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    if abs(det_b - 1.0) > 1e-9 * max(1.0, float(np.max(np.abs(B))) ** 2):
        raise DomainError("initial frame must have determinant 1")
    Phi_id = direct_loop_holonomy(loop, params, cfg=cfg)
    end_b = integrate_frame(loop, params, F0=B, cfg=cfg).F
    Phi_b = np.linalg.solve(B, end_b)
    lam_id = eigenvalues(Phi_id)
    lam_b = eigenvalues(Phi_b)
    return max(
        abs(x - y) / max(1.0, abs(x)) for x, y in zip(lam_id, lam_b)
    )


def _integer_distance(m: complex) -> float:
    k = round(m.real)
    candidates = (k - 1, k, k + 1)
    return min(abs(m - n) for n in candidates)


def osserman_equality_check(genus: int, n_ends: int, deg_G: int) -> bool:
    """Whether 2 deg(G) equals (2 genus - 2 + n) + n, the equality case of
    the degree bound for the hyperbolic Gauss map."""
    if genus < 0 or n_ends < 0 or deg_G < 0:
        raise DomainError("arguments must be nonnegative")
    return 2 * deg_G == (2 * genus - 2 + n_ends) + n_ends
