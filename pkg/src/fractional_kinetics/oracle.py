"""Independent checks of the closed-form kinetic solutions.

Three channels that do not share code paths with :mod:`.kinetics`:

* a direct time-stepping solver for the integral equation
  ``N = f - c^nu D^{-nu} N`` using the product-trapezoid weights;
* residuals of a candidate solution plugged back into its equation;
* numerical Laplace transforms compared against closed-form transforms, and
  the term-by-term inversion of the Laplace-domain series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate
from scipy import special as _sp

from .fracops import (
    GridMismatchError,
    SampledFunction,
    StartPolicy,
    TimeGrid,
    frac_integral,
    weights_for,
)
from .kinetics import KineticModel, Variant, forcing
from .specfun import gamma, mittag_leffler, pochhammer, rgamma

__all__ = [
    "ConvergenceConditionError",
    "LaplaceCheck",
    "ResidualReport",
    "TruncationError",
    "equation_residual",
    "laplace_ml_check",
    "laplace_of_candidate",
    "laplace_power_check",
    "laplace_series_solution",
    "residual",
    "solve_volterra",
]

#: Relative size of the neglected tail in the Laplace checks.
TAIL_TOLERANCE = 1e-10
#: Pointwise accuracy requested from the Mittag-Leffler integrand; the
#: transform checks themselves are judged at 1e-6.
INTEGRAND_TOLERANCE = 1e-8
#: Gauss points per panel and number of dyadic panels towards the origin.
QUAD_ORDER = 20
GRADED_PANELS = 40


class ConvergenceConditionError(ValueError):
    """The Laplace integral diverges for the requested ``p``."""


class TruncationError(ValueError):
    """The sampled range is too short for the requested transform."""


@dataclass(frozen=True)
class ResidualReport:
    per_node: np.ndarray
    max_abs: float
    max_rel: float
    nodes_skipped: int


@dataclass(frozen=True)
class LaplaceCheck:
    p: float
    lhs_numeric: float
    rhs_closed: float
    rel_error: float
    truncation_T: float


# {{{ time-domain solver


def solve_volterra(
    source: SampledFunction, c: float, nu: float, grid: TimeGrid | None = None
) -> SampledFunction:
    """Forward-step ``N_n (1 + c^nu w_nn) = f_n - c^nu sum_{j<n} w_nj N_j``."""
    if grid is not None and grid != source.grid:
        raise GridMismatchError("forcing is sampled on a different grid")
    if c < 0:
        raise ValueError(f"c must be >= 0, got {c}")
    grid = source.grid
    if c == 0:
        return source

    w = weights_for(source, nu)
    rate = c**nu
    f = source.values
    N = np.zeros(len(grid))
    first = 1 if source.singular else 0
    N[0] = np.nan if source.singular else f[0]

    for n in range(1, grid.n_steps + 1):
        row = w.row(n)
        history = row[first:n] @ N[first:n]
        N[n] = (f[n] - rate * history) / (1.0 + rate * row[n])

    return SampledFunction(grid, N, source.start_policy, source.exponent)


# }}}


# {{{ residuals


def equation_residual(
    source: SampledFunction, c: float, nu: float, candidate: SampledFunction
) -> ResidualReport:
    """Residual ``N - f + c^nu D^{-nu} N`` of ``candidate`` at every node."""
    if source.grid != candidate.grid:
        raise GridMismatchError("candidate and forcing live on different grids")

    I = frac_integral(candidate, nu)
    r = candidate.values - source.values + c**nu * I.values
    skipped = 1 if (candidate.singular or source.singular) else 0
    if skipped:
        r = r.copy()
        r[0] = np.nan

    body = r[skipped:]
    max_abs = float(np.max(np.abs(body)))
    scale = float(np.max(np.abs(candidate.values[skipped:])))
    max_rel = max_abs / scale if scale > 0 else (0.0 if max_abs == 0 else math.inf)
    return ResidualReport(r, max_abs, max_rel, skipped)


def residual(model: KineticModel, candidate: SampledFunction) -> ResidualReport:
    """Residual of ``candidate`` in the integral equation posed by ``model``."""
    return equation_residual(forcing(model, candidate.grid), model.c, model.nu, candidate)


# }}}


# {{{ Laplace transforms


def _power_tail_bound(rho: float, p: float, T: float) -> float:
    # int_T^inf e^{-pt} t^{rho-1} dt
    if rho <= 1:
        denom = p
    elif p * T <= rho - 1:
        return math.inf
    else:
        denom = p - (rho - 1) / T
    log_value = (rho - 1) * math.log(T) - p * T - math.log(denom)
    return math.exp(min(log_value, 700.0))


def _ml_tail_bound(alpha: float, beta: float, a: float, p: float, T: float) -> float:
    """Bound on ``int_T^inf e^{-pt} t^{beta-1} |E_{alpha,beta}(a t^alpha)| dt``.

    Uses ``|E(a t^alpha)| <= sum_n |a|^n t^{alpha n} / Gamma(alpha n + beta)``
    and bounds each resulting incomplete gamma integral; once those bounds stop
    applying, the remaining terms are bounded by their full integrals, which
    form a geometric series with ratio ``|a| p^-alpha < 1``.
    """
    ratio = abs(a) * p ** (-alpha)
    total = 0.0
    for n in range(10_000):
        s = alpha * n + beta
        if p * T <= s:
            # remaining terms: |a|^n p^{-s}, geometric in n
            total += abs(a) ** n * p ** (-s) / (1.0 - ratio)
            break
        # |a|^n / Gamma(s) * tail, combined in logs
        tail = _power_tail_bound(s, p, T)
        if tail == 0.0 or a == 0:
            term = 0.0 if n else rgamma(s) * tail
        else:
            term = math.exp(min(n * math.log(abs(a)) - math.lgamma(s) + math.log(tail), 700.0))
        total += term
        if term < 1e-18 * max(total, 1e-300) and n > 2:
            break
    return total


def _truncation_point(bound: Callable[[float], float], target: float, T0: float) -> float:
    T = T0
    while bound(T) > target:
        T *= 1.25
        if T > 1e6:
            raise TruncationError("no truncation point meets the tail target")
    return T


def laplace_power_check(rho: float, p: float) -> LaplaceCheck:
    """``int_0^inf e^{-pt} t^{rho-1} dt`` against ``Gamma(rho) / p^rho``."""
    if not (rho > 0 and p > 0):
        raise ValueError("rho and p must be positive")
    rhs = gamma(rho) / p**rho
    T = _truncation_point(
        lambda T: _power_tail_bound(rho, p, T), TAIL_TOLERANCE * rhs, max(1.0, rho / p)
    )
    # algebraic weight t^{rho-1} is integrated by modified Chebyshev moments
    lhs, _ = integrate.quad(
        lambda t: math.exp(-p * t),
        0.0,
        T,
        weight="alg",
        wvar=(rho - 1.0, 0.0),
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    return LaplaceCheck(p, lhs, rhs, abs(lhs - rhs) / max(abs(rhs), 1e-300), T)


def _bounded_integrand(alpha: float, beta: float, a: float) -> bool:
    # E_{alpha,beta}(-x) is completely monotone for 0 < alpha <= 1, beta >= alpha,
    # hence bounded by 1/Gamma(beta) on the negative axis
    return a <= 0 and alpha <= 1 and beta >= alpha


@lru_cache(maxsize=8)
def _gauss_panels(beta: float, T: float, order: int = QUAD_ORDER):
    """Nodes and weights for ``int_0^T g(t) t^{beta-1} dt`` with ``g`` smooth
    apart from ``t^alpha``-type behaviour at the origin."""
    x, w = _sp.roots_legendre(order)
    edges = [2.0**-k for k in range(GRADED_PANELS, -1, -1)]  # 2^-40 .. 1
    edges += list(np.arange(2.0, math.ceil(T) + 1.0))
    edges[-1] = max(edges[-1], T) if len(edges) > 1 else T
    edges = np.array([e for e in edges if e < T] + [T])

    # innermost panel carries the algebraic weight exactly
    yj, wj = _sp.roots_jacobi(order, 0.0, beta - 1.0)
    h0 = edges[0]
    nodes = [0.5 * h0 * (1.0 + yj)]
    weights = [wj * (0.5 * h0) ** beta]
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        t = mid + half * x
        nodes.append(t)
        weights.append(half * w * t ** (beta - 1.0))
    return np.concatenate(nodes), np.concatenate(weights)


def _damped_ml(z, alpha, beta, damping):
    """Evaluate ``E_{alpha,beta}(z)`` where the result is multiplied by
    ``damping``: the relative tolerance is loosened by decades as the damping
    shrinks so that the absolute contribution stays near INTEGRAND_TOLERANCE."""
    decade = np.clip(np.floor(-np.log10(np.maximum(damping, 1e-300))), 0, 5)
    out = np.empty_like(z)
    for k in np.unique(decade):
        sel = decade == k
        out[sel] = mittag_leffler(z[sel], alpha, beta, tol=INTEGRAND_TOLERANCE * 10.0**k)
    return out


def laplace_ml_check(alpha: float, beta: float, a: float, p: float) -> LaplaceCheck:
    """``int_0^inf e^{-pt} t^{beta-1} E_{alpha,beta}(a t^alpha) dt`` against
    ``p^-beta / (1 - a p^-alpha)``.

    Requires ``p > |a|^(1/alpha)``, except for ``a <= 0, alpha <= 1,
    beta >= alpha`` where the integrand is bounded and any ``p > 0`` works.
    """
    if not (alpha > 0 and beta > 0):
        raise ValueError("alpha and beta must be positive")
    if not p > 0:
        raise ConvergenceConditionError(f"need p > 0, got p={p:g}")
    bounded = _bounded_integrand(alpha, beta, a)
    if not bounded and not p > abs(a) ** (1.0 / alpha):
        raise ConvergenceConditionError(
            f"need p > |a|^(1/alpha) = {abs(a) ** (1.0 / alpha):g}, got p={p:g}"
        )
    rhs = p ** (-beta) / (1.0 - a * p ** (-alpha))

    if bounded:
        def bound(T):
            return rgamma(beta) * _power_tail_bound(beta, p, T)
    else:
        def bound(T):
            return _ml_tail_bound(alpha, beta, a, p, T)
    T = _truncation_point(bound, TAIL_TOLERANCE * abs(rhs), max(1.0, beta / p))

    t, w = _gauss_panels(float(beta), T)
    damping = np.exp(-p * t)
    values = _damped_ml(a * t**alpha, alpha, beta, damping)
    lhs = float(math.fsum(w * damping * values))
    return LaplaceCheck(p, lhs, rhs, abs(lhs - rhs) / max(abs(rhs), 1e-300), T)


def _cell_factors(q: float) -> tuple[float, float]:
    """``int_0^1 e^{-qs} (1-s) ds`` and ``int_0^1 e^{-qs} s ds``."""
    if q < 0.1:
        left = right = 0.0
        term = 1.0
        for k in range(12):
            if k:
                term *= -q / k
            left += term / ((k + 1) * (k + 2))
            right += term / (k + 2)
        return left, right
    e = math.exp(-q)
    return (q - 1.0 + e) / q**2, (1.0 - (1.0 + q) * e) / q**2


def laplace_of_candidate(
    f: SampledFunction, p: float, tail: Callable[[float, float], float] | None = None
) -> float:
    """Laplace transform of the piecewise-linear interpolant of ``f``.

    The exponential factor is integrated exactly on every cell, so constant
    and linear data are transformed without discretization error.  Without a
    ``tail`` model the sampled range must satisfy ``p * t_end >= 25`` and the
    estimated tail ``|f(T)| e^{-pT} / p`` must stay below ``1e-6`` of the result.
    """
    if not p > 0:
        raise ValueError("p must be > 0")
    grid = f.grid
    h, T = grid.h, grid.t_end
    t = grid.nodes
    v = f.values
    left, right = _cell_factors(p * h)
    decay = np.exp(-p * t[:-1])

    cells = h * decay * (left * v[:-1] + right * v[1:])
    if f.singular:
        # first cell: f ~ f_1 (t/h)^gamma
        g = f.exponent
        q = p * h
        moment = math.gamma(g + 1) * _sp.gammainc(g + 1, q) / q ** (g + 1)
        cells[0] = h * v[1] * moment
    total = float(math.fsum(cells))

    if tail is not None:
        return total + tail(T, p)
    if p * T < 25:
        raise TruncationError(f"p * t_end = {p * T:g} < 25; supply a tail model")
    est = abs(v[-1]) * math.exp(-p * T) / p
    if est > 1e-6 * abs(total):
        raise TruncationError(f"tail estimate {est:.3e} exceeds 1e-6 of the transform")
    return total


# }}}


# {{{ Laplace-domain series, inverted term by term


def _inverse_power(rho: np.ndarray | float, t: np.ndarray) -> np.ndarray:
    # L^{-1}{p^{-rho}} = t^{rho-1} / Gamma(rho)
    return t ** (rho - 1.0) * rgamma(rho)


def _binomial_inverse(order: int, x: float, shift: float, nu: float, t: np.ndarray, terms: int):
    """``L^{-1}{p^{-shift} (1 + x p^{-nu})^{-order}}`` from the binomial series."""
    out = np.zeros_like(t)
    for r in range(terms):
        coeff = pochhammer(order, r) / math.factorial(r) * (-x) ** r
        out += coeff * _inverse_power(shift + r * nu, t)
    return out


def laplace_series_solution(model: KineticModel, t: np.ndarray, terms: int = 40) -> np.ndarray:
    """Solution rebuilt from the Laplace-domain expansion, ``terms`` terms.

    The transformed solution ``N(p) = F(p) / (1 + c^nu p^-nu)`` is expanded with
    the binomial series and inverted with ``L^{-1}{p^{-rho}}``.  Valid for
    ``t > 0``.
    """
    t = np.asarray(t, dtype=float)
    nu, mu, N0 = model.nu, model.mu, model.N0
    C = model.rate
    v = model.variant
    if v is Variant.STANDARD:
        return N0 * _binomial_inverse(1, C, 1.0, nu, t, terms)
    if v is Variant.POWER_SOURCE:
        return N0 * gamma(mu) * _binomial_inverse(1, C, mu, nu, t, terms)
    if v is Variant.POWER_GAMMA_SOURCE:
        return N0 * _binomial_inverse(1, C, mu, nu, t, terms)
    if v is Variant.ML_SOURCE_RESONANT:
        return N0 * _binomial_inverse(2, C, mu, nu, t, terms)
    # partial fractions of p^{-mu} / ((1 + D p^-nu)(1 + C p^-nu))
    D = model.d**nu
    return (
        N0
        / (C - D)
        * (
            _binomial_inverse(1, D, mu - nu, nu, t, terms)
            - _binomial_inverse(1, C, mu - nu, nu, t, terms)
        )
    )


# }}}
