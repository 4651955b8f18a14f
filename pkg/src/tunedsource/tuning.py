"""Tuning-constraint roots and selection of the minimal multiplier.

The tuning set is the zero set of a scalar constraint function g(chi) (the
reactive part of the complex power in the physical problem; any caller-
supplied smooth function here).  Roots are located by a sign-change scan on
a uniform grid followed by bisection; the tuned multiplier chi0 is the root
of smallest absolute value, with ties broken toward the positive sign.

The constraint function is injected rather than built in: evaluating the
physical reactive power needs the propagator expansion, which lives outside
this library.  Tabulated constraints can be passed through
``numpy.interp``-style interpolators (the CLI does exactly that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ConstraintEvaluationError, InvalidInputError, NoTunedSolutionError

__all__ = ["ChiSet", "find_constraint_roots", "select_chi0"]


@dataclass(frozen=True)
class ChiSet:
    """Sorted roots of the tuning constraint on the searched interval.

    ``excluded`` lists sign-change locations that were dropped because they
    violate the admissibility bound chi * mu_omega < k^2 (evanescent tuned
    wavenumber); they are reported so a caller can widen its model rather
    than silently lose solutions.
    """

    roots: Tuple[float, ...]
    bracket_tol: float
    excluded: Tuple[float, ...] = ()


def _bisect(g: Callable[[float], float], lo: float, hi: float, g_lo: float, tol: float) -> float:
    """Standard bisection on a sign-change bracket down to width <= tol."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if not math.isfinite(g_mid):
            raise ConstraintEvaluationError(f"constraint returned non-finite value at chi={mid}")
        if g_mid == 0.0:
            return mid
        if (g_lo < 0.0) != (g_mid < 0.0):
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)


def find_constraint_roots(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    grid_n: int,
    tol: float,
    *,
    k: Optional[float] = None,
    mu_omega: Optional[float] = None,
) -> ChiSet:
    """Locate all sign-change roots of g on [lo, hi].

    Parameters
    ----------
    g : callable
        Scalar constraint function; must be finite on the interval.
    lo, hi : float
        Search interval, lo < hi.
    grid_n : int
        Number of scan points (>= 2); sign changes between neighbours are
        bisected.  Roots closer together than the grid spacing can be missed,
        as with any finite scan.
    tol : float
        Bracket width at which bisection stops; each returned root r either
        carries a sign change within [r - tol, r + tol] or satisfies
        |g(r)| = 0 exactly on a grid point.
    k, mu_omega : float, keyword only, optional
        When both are given, roots with chi * mu_omega >= k^2 are dropped
        into ``excluded`` (inadmissible tuning, K^2 <= 0).
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidInputError(f"need finite lo < hi, got [{lo}, {hi}]")
    if grid_n < 2:
        raise InvalidInputError(f"grid_n must be >= 2, got {grid_n}")
    if not (math.isfinite(tol) and tol > 0.0):
        raise InvalidInputError(f"tol must be > 0, got {tol}")

    xs = np.linspace(lo, hi, int(grid_n))
    gs = np.array([float(g(x)) for x in xs])
    if not np.all(np.isfinite(gs)):
        bad = xs[~np.isfinite(gs)][0]
        raise ConstraintEvaluationError(f"constraint returned non-finite value at chi={bad}")

    found = []
    for i, (x, gx) in enumerate(zip(xs, gs)):
        if gx == 0.0:
            found.append(float(x))
        if i + 1 < len(xs) and gx != 0.0 and gs[i + 1] != 0.0 and (gx < 0.0) != (gs[i + 1] < 0.0):
            found.append(_bisect(g, float(x), float(xs[i + 1]), gx, tol))

    # merge duplicates closer than the bracket tolerance
    found.sort()
    merged = []
    for r in found:
        if not merged or r - merged[-1] > tol:
            merged.append(r)

    if k is not None and mu_omega is not None:
        admissible = [r for r in merged if r * mu_omega < k * k]
        excluded = tuple(r for r in merged if r * mu_omega >= k * k)
    else:
        admissible, excluded = merged, ()

    return ChiSet(roots=tuple(admissible), bracket_tol=float(tol), excluded=excluded)


def select_chi0(xi: ChiSet) -> float:
    """The tuning-set element of smallest |chi|; positive sign wins exact ties.

    Raises
    ------
    NoTunedSolutionError
        If the set is empty (constraint infeasible on the searched interval).
    """
    if not xi.roots:
        raise NoTunedSolutionError("tuning set is empty on the searched interval")
    return min(xi.roots, key=lambda c: (abs(c), c < 0.0))
