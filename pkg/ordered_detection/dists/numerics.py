"""
Numeric plumbing shared by the probability laws and the exact error routines.

Adaptive Gauss-Kronrod quadrature (QUADPACK through scipy.integrate.quad) and
bracketed Brent root finding (scipy.optimize.brentq), wrapped so failures
surface as package errors.
"""
import warnings
from typing import Callable, Iterable, Optional

import numpy as np
from scipy import integrate, optimize

from ..config.settings import QUAD_ACCEPT_FACTOR, QUAD_LIMIT, QUAD_TOL, ROOT_TOL
from ..errors import BracketError, InvalidInputError, NumericFailureError
from ..utilities.logger import get_logger

logger = get_logger(__name__)


def quadrature(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = QUAD_TOL,
    points: Optional[Iterable[float]] = None,
) -> float:
    """
    Integrate f over [lo, hi] to absolute tolerance tol.

    Args:
        f: Integrand, finite on [lo, hi]
        lo: Lower limit (may be -inf)
        hi: Upper limit (may be +inf)
        tol: Absolute error target
        points: Optional interior breakpoints (kinks, peaks); finite limits only

    Returns:
        Integral estimate

    Raises:
        NumericFailureError: Refinement stopped with an error estimate above tol
    """
    if not lo < hi:
        raise InvalidInputError(f"quadrature needs lo < hi, got [{lo}, {hi}]")

    breaks = None
    if points is not None and np.isfinite(lo) and np.isfinite(hi):
        breaks = sorted({float(p) for p in points if lo < p < hi}) or None

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        result = integrate.quad(
            f, lo, hi,
            epsabs=tol, epsrel=tol,
            limit=QUAD_LIMIT, points=breaks,
            full_output=1,
        )

    value, abserr = float(result[0]), float(result[1])
    if len(result) > 3:
        # QUADPACK flagged trouble; keep the value only if its error estimate is close to target
        message = result[3]
        if not np.isfinite(value) or abserr > QUAD_ACCEPT_FACTOR * tol:
            raise NumericFailureError(
                f"quadrature on [{lo:.6g}, {hi:.6g}] did not converge "
                f"(abserr={abserr:.3g}): {message}",
                best_estimate=value,
            )
        logger.warning(f"Quadrature warning accepted (abserr={abserr:.3g}): {message}")

    return value


def find_root(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = ROOT_TOL,
) -> float:
    """
    Find x* in [lo, hi] with g(x*) = 0 by Brent's bracketing method.

    Raises:
        BracketError: g(lo) and g(hi) have the same sign
        NumericFailureError: Brent iteration did not converge
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return float(lo)
    if g_hi == 0.0:
        return float(hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(
            f"no sign change on [{lo:.6g}, {hi:.6g}] (g={g_lo:.3g}, {g_hi:.3g})"
        )

    try:
        root, info = optimize.brentq(g, lo, hi, xtol=tol, full_output=True, disp=False)
    except RuntimeError as e:
        raise NumericFailureError(f"root finding failed: {e}") from e

    if not info.converged:
        raise NumericFailureError(
            f"root finding stopped after {info.iterations} iterations: {info.flag}",
            best_estimate=float(root),
        )
    return float(root)
