"""Safeguarded Newton iteration for increasing functions."""

import numpy as np


class MonotonicityError(ArithmeticError):
    """Raised when a function assumed increasing is found to decrease."""


def expand_bracket(fun, target, hi=1.0, max_doublings=200):
    """Double ``hi`` until ``fun(hi) >= target``."""
    for _ in range(max_doublings):
        if fun(hi) >= target:
            return hi
        hi *= 2.0
    raise ArithmeticError(f"could not bracket target {target!r}")


def solve_increasing(fun, dfun, target, lo, hi, tol=1e-10, mono_tol=None, max_iter=500):
    """Solve ``fun(t) = target`` for an increasing ``fun`` on ``[lo, hi]``.

    Newton steps are taken from the midpoint-safe iterate and replaced by
    bisection whenever they leave the bracket. If ``mono_tol`` is given, every
    interior evaluation is checked against the bracket end values and a
    :class:`MonotonicityError` is raised on a violation larger than
    ``mono_tol``.
    """
    f_lo = fun(lo) - target
    f_hi = fun(hi) - target
    if f_lo > 0 or f_hi < 0:
        raise ValueError("target is not bracketed")
    t = 0.5 * (lo + hi)
    for _ in range(max_iter):
        g = fun(t) - target
        if mono_tol is not None and (g < f_lo - mono_tol or g > f_hi + mono_tol):
            raise MonotonicityError(f"function not increasing near t={t!r}")
        if g == 0:
            return t
        if g < 0:
            lo, f_lo = t, g
        else:
            hi, f_hi = t, g
        if hi - lo < tol:
            return 0.5 * (lo + hi)
        d = dfun(t)
        t_new = t - g / d if d > 0 else None
        if t_new is None or not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        elif abs(t_new - t) < 0.25 * tol:
            return t_new
        t = t_new
    raise ArithmeticError("safeguarded Newton did not converge")


def solve_increasing_array(fun, dfun, target, lo, hi, tol=1e-10, mono_tol=None, max_iter=500):
    """Vectorised :func:`solve_increasing`; ``fun``/``dfun`` act elementwise."""
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    f_lo = fun(lo) - target
    f_hi = fun(hi) - target
    if np.any(f_lo > 0) or np.any(f_hi < 0):
        raise ValueError("target is not bracketed")
    t = 0.5 * (lo + hi)
    result = np.full(target.shape, np.nan)
    live = np.ones(target.shape, dtype=bool)
    for _ in range(max_iter):
        g = fun(t) - target
        if mono_tol is not None:
            bad = live & ((g < f_lo - mono_tol) | (g > f_hi + mono_tol))
            if np.any(bad):
                raise MonotonicityError("function not increasing inside the bracket")
        below = g < 0
        lo = np.where(below, t, lo)
        f_lo = np.where(below, g, f_lo)
        hi = np.where(below, hi, t)
        f_hi = np.where(below, f_hi, g)

        exact = live & (g == 0)
        result[exact] = t[exact]
        live &= ~exact
        narrow = live & (hi - lo < tol)
        result[narrow] = 0.5 * (lo[narrow] + hi[narrow])
        live &= ~narrow

        d = dfun(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            t_new = t - g / d
        newton_ok = (d > 0) & (t_new > lo) & (t_new < hi)
        t_new = np.where(newton_ok, t_new, 0.5 * (lo + hi))
        small = live & newton_ok & (np.abs(t_new - t) < 0.25 * tol)
        result[small] = t_new[small]
        live &= ~small
        if not live.any():
            return result
        t = t_new
    raise ArithmeticError("safeguarded Newton did not converge")
