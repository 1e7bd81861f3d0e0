"""Real-argument special functions.

Gamma, reciprocal gamma, Pochhammer symbol, error functions and the one- and
two-parameter Mittag-Leffler functions

.. math::

    E_{\\alpha,\\beta}(z) = \\sum_{n=0}^\\infty \\frac{z^n}{\\Gamma(\\alpha n + \\beta)}.

The Mittag-Leffler evaluator picks, per argument, the cheaper of two regimes
that meets the requested accuracy:

* ``series``: the Taylor series with Neumaier-compensated summation;
* ``asymptotic``: for ``z < 0`` and ``0 < alpha < 2`` (``alpha != 1``), the
  algebraic expansion ``-sum_k z^{-k} / Gamma(beta - alpha k)`` truncated at
  its smallest term, plus the residue terms that sit on the principal sheet
  when ``alpha > 1``.

When both regimes fail, two fallbacks are tried in turn:

* ``closed-form-reduction``: elementary closed forms (``exp``, ``erfcx``,
  ``cos``/``cosh``), the recurrence ``E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z)``
  from such a base, and a Kummer-transformed series for ``alpha == 1``;
* ``integral-representation``: for ``z < 0`` and ``0 < alpha < 2``, the real
  integral obtained by collapsing the Hankel contour onto the negative axis,
  evaluated with adaptive quadrature.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy import special as _sp

__all__ = [
    "AccuracyError",
    "EvalResult",
    "MLParams",
    "PoleError",
    "Regime",
    "erf",
    "erfc",
    "gamma",
    "mittag_leffler",
    "ml_half_via_erfc",
    "ml_one",
    "ml_two",
    "pochhammer",
    "rgamma",
]

EPS = np.finfo(float).eps

#: Hard cap on the number of series terms.
MAX_SERIES_TERMS = 500
#: Hard cap on the number of asymptotic terms.
MAX_ASYMPTOTIC_TERMS = 50
#: Relative stopping threshold for series terms.
SERIES_STOP = 1e-17
#: Per-term relative rounding allowance used in the error estimates.
ROUNDING_FACTOR = 8.0 * EPS

DEFAULT_TOL = 1e-10


class PoleError(ValueError):
    """Gamma was requested at a nonpositive integer; use :func:`rgamma`."""


class AccuracyError(ArithmeticError):
    """No evaluation regime reached the requested accuracy.

    The best available estimate is kept in :attr:`best`.
    """

    def __init__(self, message: str, best: "EvalResult"):
        super().__init__(message)
        self.best = best


class Regime(str, enum.Enum):
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"
    CLOSED_FORM = "closed-form-reduction"
    INTEGRAL = "integral-representation"


_REGIME_BY_CODE = (Regime.SERIES, Regime.ASYMPTOTIC, Regime.CLOSED_FORM, Regime.INTEGRAL)


@dataclass(frozen=True)
class MLParams:
    """Parameter pair ``(alpha, beta)`` of :math:`E_{\\alpha,\\beta}`.

    ``beta`` may be zero or negative; the series terms that hit a gamma pole
    vanish through :func:`rgamma`.
    """

    alpha: float
    beta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be finite and > 0, got {self.alpha!r}")
        if not math.isfinite(self.beta):
            raise ValueError(f"beta must be finite, got {self.beta!r}")


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_error_estimate: float
    terms_used: int
    regime: Regime

    def __post_init__(self):
        if not self.abs_error_estimate >= 0:
            raise ValueError("abs_error_estimate must be >= 0")
        if self.terms_used < 0:
            raise ValueError("terms_used must be >= 0")


# {{{ elementary pieces


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial ``alpha (alpha + 1) ... (alpha + n - 1)``.

    Evaluated as a left-to-right product, so
    ``pochhammer(a, n + 1) == pochhammer(a, n) * (a + n)`` holds bitwise.
    Overflow gives ``+-inf``.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    result = 1.0
    for k in range(n):
        result *= alpha + k
    return result


def rgamma(x: float) -> float:
    """Reciprocal gamma function, exactly zero at the poles of gamma."""
    x = float(x)
    if math.isnan(x):
        return math.nan
    if _is_pole(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    if x < -170.0:
        # reflection keeps the sign; |Gamma(x)| itself is beyond the range
        sign = math.copysign(1.0, math.sin(math.pi * x))
        try:
            return sign * math.exp(-math.lgamma(x))
        except OverflowError:
            return sign * math.inf
    if abs(x) < 1e-300:
        # Gamma(x) overflows here; 1/Gamma(x) = x + euler_gamma x^2 + ...
        return x * (1.0 + np.euler_gamma * x)
    return 1.0 / math.gamma(x)


def gamma(x: float) -> float:
    """Gamma function; raises :class:`PoleError` at nonpositive integers."""
    x = float(x)
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at {x:g}; use rgamma instead")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


def erf(z: float) -> float:
    return math.erf(z)


def erfc(z: float) -> float:
    return math.erfc(z)


def ml_half_via_erfc(z: float) -> float:
    """Closed form :math:`e^z \\operatorname{erfc}(-\\sqrt{z})` of
    :math:`E_{1/2}(\\sqrt{z})`, for ``z >= 0``.

    This is deliberately independent of the series machinery so that it can
    be used as a cross-check of :func:`ml_one`.
    """
    if z < 0:
        raise ValueError(f"z must be nonnegative, got {z}")
    try:
        scale = math.exp(z)
    except OverflowError:
        return math.inf
    return scale * math.erfc(-math.sqrt(z))


# }}}


# {{{ Mittag-Leffler


@lru_cache(maxsize=256)
def _series_coefficients(alpha: float, beta: float):
    """``1/Gamma(alpha n + beta)`` plus its sign and log-magnitude."""
    x = alpha * np.arange(MAX_SERIES_TERMS) + beta
    coef = np.array([rgamma(xi) for xi in x])
    pole = np.array([_is_pole(xi) for xi in x])
    sign = np.where(pole, 0.0, np.where(x > 0, 1.0, np.sign(np.sin(np.pi * x))))
    with np.errstate(divide="ignore"):
        logcoef = np.where(pole, -np.inf, -_sp.gammaln(x))
    # rgamma underflows long before the log-space product does
    tiny = ~pole & (np.abs(coef) < 1e-280)
    # relative rounding of each term, including the rounding of x itself
    with np.errstate(invalid="ignore"):
        relerr = ROUNDING_FACTOR + EPS * np.abs(x * _sp.digamma(x))
    relerr = np.where(pole, 0.0, relerr)
    # next to a pole Gamma overflows, but 1/Gamma(x) ~ x and x psi(x) ~ -1
    near = ~pole & (np.abs(x) < 1e-300)
    if near.any():
        logcoef = np.where(near, np.log(np.abs(np.where(near, x, 1.0))), logcoef)
        relerr = np.where(near, ROUNDING_FACTOR + EPS, relerr)
    for arr in (coef, sign, logcoef, tiny, relerr):
        arr.setflags(write=False)
    return coef, sign, logcoef, tiny, relerr


def _series(alpha: float, beta: float, z: np.ndarray):
    # overflowing partial sums are expected for large |z|; they surface as an
    # infinite error estimate and lose the regime selection
    if z.size == 1:
        v, e, n = _series_point(alpha, beta, float(z[0]))
        return np.array([v]), np.array([e]), np.array([n])
    with np.errstate(over="ignore", invalid="ignore"):
        value, err, nterms = _series_sum(alpha, beta, z)
    err = np.where(np.isfinite(err) & np.isfinite(value), err, np.inf)
    return value, err, nterms


def _series_point(alpha: float, beta: float, z: float) -> tuple[float, float, int]:
    """Scalar twin of :func:`_series_sum` (same stopping rule and estimate)."""
    coef, sign, logcoef, tiny, relerr = _series_coefficients(alpha, beta)
    peak = abs(z) ** (1.0 / alpha) + 1.0
    if alpha * (MAX_SERIES_TERMS - 1) + beta < peak or (z < 0 and peak > 40.0):
        return math.nan, math.inf, 0
    logabsz = math.log(abs(z)) if z != 0 else -math.inf

    s = comp = abssum = rounding = logerr = 0.0
    term = 0.0
    for n in range(MAX_SERIES_TERMS):
        if n > 0 and z == 0:
            term = 0.0
        else:
            try:
                term = z**n * coef[n]
            except OverflowError:
                term = math.inf
            if (not math.isfinite(term) or tiny[n]) and z != 0:
                try:
                    mag = math.exp(n * logabsz + logcoef[n])
                except OverflowError:
                    return math.nan, math.inf, n
                sgn = -1.0 if (z < 0 and n % 2 == 1) else 1.0
                term = sgn * sign[n] * mag
                logerr += EPS * (abs(n * logabsz) + abs(logcoef[n])) * mag

        absterm = abs(term)
        x = alpha * n + beta
        if x > 1.0 and x >= peak and (
            absterm <= SERIES_STOP * abs(s) or absterm <= 1e-2 * EPS * abssum
        ):
            err = absterm + rounding + EPS * abssum + logerr
            return s + comp, (err if math.isfinite(err) else math.inf), n

        tot = s + term
        comp += (s - tot) + term if abs(s) >= absterm else (term - tot) + s
        s = tot
        abssum += absterm
        rounding += relerr[n] * absterm

    err = abs(term) + rounding + EPS * abssum + logerr
    value = s + comp
    if not (math.isfinite(err) and math.isfinite(value)):
        err = math.inf
    return value, err, MAX_SERIES_TERMS


def _series_sum(alpha: float, beta: float, z: np.ndarray):
    coef, sign, logcoef, tiny, relerr = _series_coefficients(alpha, beta)
    npts = z.size

    s = np.zeros(npts)
    comp = np.zeros(npts)
    abssum = np.zeros(npts)
    rounding = np.zeros(npts)
    err = np.full(npts, np.inf)
    nterms = np.full(npts, MAX_SERIES_TERMS, dtype=int)
    active = np.ones(npts, dtype=bool)
    logerr = np.zeros(npts)

    with np.errstate(divide="ignore"):
        logabsz = np.log(np.abs(z))
    negative = z < 0
    # terms decrease once (alpha n)^alpha exceeds |z|
    peak = np.abs(z) ** (1.0 / alpha) + 1.0
    # skip points the series cannot serve: the terms are still growing at
    # the cap, or (alternating case) the largest term ~ e^peak exceeds 1/eps
    hopeless = (alpha * (MAX_SERIES_TERMS - 1) + beta < peak) | (negative & (peak > 40.0))
    active &= ~hopeless
    nterms[hopeless] = 0

    for n in range(MAX_SERIES_TERMS):
        if not active.any():
            break

        with np.errstate(over="ignore", invalid="ignore"):
            term = np.power(z, n) * coef[n]
        bad = (~np.isfinite(term) | tiny[n]) & active & (z != 0)
        if bad.any():
            with np.errstate(over="ignore"):
                mag = np.exp(n * logabsz[bad] + logcoef[n])
            sgn = np.where(negative[bad] & (n % 2 == 1), -1.0, 1.0)
            term[bad] = sgn * sign[n] * mag
            # exp() amplifies the absolute error of its argument
            logerr[bad] += EPS * (np.abs(n * logabsz[bad]) + abs(logcoef[n])) * mag
        if n > 0:
            term[z == 0] = 0.0

        absterm = np.abs(term)
        x = alpha * n + beta
        done = (
            active
            & (x > 1.0)
            & (x >= peak)
            & (
                (absterm <= SERIES_STOP * np.abs(s))
                | (absterm <= 1e-2 * EPS * abssum)
            )
        )
        if done.any():
            err[done] = absterm[done]
            nterms[done] = n
            active &= ~done

        # Neumaier summation on the still-active points
        t = np.where(active, term, 0.0)
        tot = s + t
        comp += np.where(np.abs(s) >= np.abs(t), (s - tot) + t, (t - tot) + s)
        s = tot
        abssum += np.abs(t)
        rounding += relerr[n] * np.abs(t)

    # cap reached: the last term is the best available truncation proxy
    if active.any():
        err[active] = np.abs(term[active])

    value = s + comp
    err = err + rounding + EPS * abssum + logerr
    return value, err, nterms


def _sheet_amplification(alpha: float) -> float:
    # denominator bound of the wrapped Hankel integral
    c = math.cos(alpha * math.pi)
    if c < 0:
        return 1.0 / math.sin(alpha * math.pi) ** 2
    return 1.0


def _asymptotic(alpha: float, beta: float, z: np.ndarray):
    """Algebraic expansion for negative real ``z`` and ``0 < alpha < 2``."""
    k = np.arange(1, MAX_ASYMPTOTIC_TERMS + 1)
    arg = beta - alpha * k
    coef = np.array([rgamma(a) for a in arg])
    # |1/Gamma(x)| <= Gamma(1 - x)/pi for x <= 0; near-pole coefficients are
    # small by accident and must not drive the truncation point
    envelope = np.where(arg > 0, np.abs(coef), np.exp(_sp.gammaln(1.0 - arg)) / np.pi)
    with np.errstate(invalid="ignore", divide="ignore"):
        sens = np.where(
            arg > 0,
            np.abs(_sp.digamma(np.abs(arg))),
            np.abs(_sp.digamma(1.0 - np.minimum(arg, 0.0))) + np.pi,
        )
    relerr = ROUNDING_FACTOR + EPS * np.abs(arg) * sens

    x = -z  # positive
    with np.errstate(over="ignore", under="ignore"):
        powers = np.power.outer(1.0 / x, k)
        terms = -np.power.outer(1.0 / z, k) * coef
        env_terms = powers * envelope

    kstar = np.argmin(env_terms, axis=1)
    keep = np.arange(MAX_ASYMPTOTIC_TERMS)[None, :] <= kstar[:, None]
    value = np.where(keep, terms, 0.0).sum(axis=1)
    smallest = env_terms[np.arange(z.size), kstar]
    err = 2.0 * smallest * _sheet_amplification(alpha)
    err = err + np.where(keep, env_terms * relerr, 0.0).sum(axis=1)

    if alpha > 1:
        # residues at s = x^{1/alpha} e^{+-i pi/alpha}
        s = x ** (1.0 / alpha) * np.exp(1j * math.pi / alpha)
        residue = 2.0 * np.real(s ** (1.0 - beta) * np.exp(s)) / alpha
        value = value + residue
        err = err + ROUNDING_FACTOR * np.abs(residue)

    return value, err, kstar + 1


#: Term cap for the Kummer-transformed ``alpha = 1`` series.
KUMMER_MAX_TERMS = 3000
#: Shifts ``beta = 1 + m alpha`` reachable through the order-shift recurrence.
_LADDER = range(-3, 7)


def _ladder_base(alpha: float, z: np.ndarray):
    """Elementary ``E_{alpha,1}`` for ``alpha`` in {1/2, 1, 2}, else ``None``."""
    if alpha == 1:
        return np.exp(z)
    if alpha == 0.5:
        return _sp.erfcx(-z)
    if alpha == 2:
        r = np.sqrt(np.abs(z))
        return np.where(z >= 0, np.cosh(r), np.cos(r))
    return None


def _ladder(alpha: float, beta: float, z: np.ndarray):
    """``E_{alpha,beta}`` for ``beta = 1 + m alpha`` via
    ``E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z)`` started from an elementary
    ``E_{alpha,1}``.

    Only points with ``|z| >= 1`` are handled (stepping up divides rounding by
    ``|z|``); the others get an infinite error estimate.
    """
    m = (beta - 1.0) / alpha
    if m != round(m) or int(round(m)) not in _LADDER:
        return None
    base = _ladder_base(alpha, z)
    if base is None:
        return None
    m = int(round(m))
    usable = np.abs(z) >= 1
    zz = np.where(usable, z, 1.0)
    value = np.where(usable, base, 0.0)
    err = 4.0 * EPS * np.abs(value)
    b = 1.0
    for _ in range(abs(m)):
        if m > 0:
            c = rgamma(b)
            value = (value - c) / zz
            err = (err + EPS * (np.abs(value * zz) + abs(c))) / np.abs(zz)
            b += alpha
        else:
            b -= alpha
            c = rgamma(b)
            value = c + zz * value
            err = np.abs(zz) * err + EPS * (np.abs(value) + abs(c))
    return value, np.where(usable, err, np.inf)


def _kummer_alpha_one(beta: float, z: np.ndarray):
    """``E_{1,beta}(z)`` for non-integer ``beta`` and ``z < 0``.

    ``E_{1,beta}(z) = M(1, beta, z) / Gamma(beta)`` and Kummer's transformation
    ``M(1, b, z) = e^z M(b - 1, b, -z)`` give
    ``e^z / Gamma(beta - 1) * sum_n (-z)^n / (n! (beta - 1 + n))``, whose terms
    are positive once ``n > 1 - beta``; no cancellation for large ``|z|``.
    """
    x = -z
    scale = rgamma(beta - 1.0)
    total = np.zeros_like(x)
    abssum = np.zeros_like(x)
    power = np.ones_like(x)  # x^n / n!
    n = 0
    while True:
        term = power / (beta - 1.0 + n)
        total += term
        abssum += np.abs(term)
        n += 1
        if n > x.max() + 10 and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
        if n > KUMMER_MAX_TERMS:
            return None
        power = power * x / n
    with np.errstate(under="ignore", over="ignore"):
        value = scale * np.exp(z) * total
        err = 4.0 * EPS * np.abs(scale) * np.exp(z) * abssum * (1.0 + np.log1p(n))
    return value, err + EPS * np.abs(value)


def _closed_form(alpha: float, beta: float, z: np.ndarray):
    """Elementary reductions as (value, abs_err), or ``None`` when
    ``(alpha, beta)`` has none."""
    with np.errstate(all="ignore"):
        if alpha == 1 and beta == 2:
            value = np.where(z == 0, 1.0, np.expm1(z) / np.where(z == 0, 1.0, z))
            return value, 4.0 * EPS * np.abs(value)
        if alpha == 2 and beta == 2:
            r = np.sqrt(np.abs(z))
            rs = np.where(r == 0, 1.0, r)
            value = np.where(r == 0, 1.0, np.where(z >= 0, np.sinh(r) / rs, np.sin(r) / rs))
            return value, 4.0 * EPS * np.abs(value)
        if alpha == 1 and beta != round(beta) and np.all(z < 0):
            return _kummer_alpha_one(beta, z)
        if beta == 1:
            value = _ladder_base(alpha, z)
            if value is None:
                return None
            return value, 4.0 * EPS * np.abs(value)
        return _ladder(alpha, beta, z)


def _quad(f, a, b, **kw) -> tuple[float, float]:
    """``quad`` whose round-off warning is turned into a larger error estimate."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-12, limit=200, **kw)
    if caught:
        err = max(err, 1e-10 * abs(value))
    return value, err


def _integral_point(alpha: float, beta: float, x: float) -> tuple[float, float]:
    """``E_{alpha,beta}(-x)`` for ``x > 0``, ``0 < alpha < 2``, ``alpha != 1``.

    Collapsing the Hankel contour of the Laplace inversion onto the negative
    axis gives, for ``beta < 1 + alpha``,

        E(-x) = 1/pi int_0^inf e^-r r^(alpha-beta)
                [r^alpha sin(pi beta) - x sin(pi (alpha-beta))]
                / (r^(2 alpha) + 2 x r^alpha cos(pi alpha) + x^2) dr

    plus, for ``alpha > 1``, the two residues at ``x^(1/alpha) e^(+-i pi/alpha)``.
    Larger ``beta`` is reached by ``E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z``.
    """
    b, steps = beta, 0
    while b >= 1.0 + alpha:
        b -= alpha
        steps += 1
    sb = math.sin(math.pi * b)
    sab = math.sin(math.pi * (alpha - b))
    ca = math.cos(math.pi * alpha)

    def f(r):
        ra = r**alpha
        return math.exp(-r) * (ra * sb - x * sab) / (ra * ra + 2.0 * x * ra * ca + x * x)

    # the denominator is smallest near r^alpha = x; split there
    peak = x ** (1.0 / alpha)
    head, e1 = _quad(f, 0.0, peak, weight="alg", wvar=(alpha - b, 0.0))
    tail, e2 = _quad(lambda r: f(r) * r ** (alpha - b), peak, math.inf)
    value = (head + tail) / math.pi
    err = (e1 + e2) / math.pi + 2.0 * ROUNDING_FACTOR * (abs(head) + abs(tail)) / math.pi
    if alpha > 1:
        s = peak * complex(math.cos(math.pi / alpha), math.sin(math.pi / alpha))
        res = 2.0 * (s ** (1.0 - b) * cmath.exp(s)).real / alpha
        value += res
        err += 2.0 * ROUNDING_FACTOR * abs(res)
    for _ in range(steps):
        c = rgamma(b)
        value = (value - c) / -x
        err = (err + EPS * (abs(value) * x + abs(c))) / x
        b += alpha
    return value, err


def _integral(alpha: float, beta: float, z: np.ndarray):
    out = [_integral_point(alpha, beta, -float(v)) for v in z]
    return np.array([v for v, _ in out]), np.array([e for _, e in out])


def _evaluate(alpha: float, beta: float, z: np.ndarray, tol: float):
    """Vectorized core; returns (value, abs_err, terms_used, regime_code, ok)."""
    value, err, nterms = _series(alpha, beta, z)
    regime = np.zeros(z.size, dtype=int)

    neg = z < 0
    if 0 < alpha < 2 and alpha != 1 and neg.any():
        with np.errstate(over="ignore", invalid="ignore"):
            av, ae, an = _asymptotic(alpha, beta, z[neg])
        ae = np.where(np.isfinite(ae) & np.isfinite(av), ae, np.inf)
        better = ae < err[neg]
        idx = np.flatnonzero(neg)[better]
        value[idx] = av[better]
        err[idx] = ae[better]
        nterms[idx] = an[better]
        regime[idx] = 1

    ok = err <= tol * np.maximum(1.0, np.abs(value))
    if not ok.all():
        cf = _closed_form(alpha, beta, z[~ok])
        if cf is not None:
            idx = np.flatnonzero(~ok)
            value[idx], err[idx] = cf
            nterms[idx] = 0
            regime[idx] = 2
            ok[idx] = err[idx] <= tol * np.maximum(1.0, np.abs(value[idx]))

    # last resort: quadrature of the real integral representation
    todo = ~ok & (z < 0)
    if 0 < alpha < 2 and alpha != 1 and todo.any():
        idx = np.flatnonzero(todo)
        iv, ie = _integral(alpha, beta, z[idx])
        better = ie < err[idx]
        idx = idx[better]
        value[idx], err[idx] = iv[better], ie[better]
        nterms[idx] = 0
        regime[idx] = 3
        ok[idx] = err[idx] <= tol * np.maximum(1.0, np.abs(value[idx]))

    return value, err, nterms, regime, ok


def mittag_leffler(z, alpha: float, beta: float = 1.0, *, tol: float = DEFAULT_TOL):
    """Evaluate :math:`E_{\\alpha,\\beta}(z)` elementwise over a real array.

    Raises
    ------
    AccuracyError
        If some point cannot be evaluated to ``tol * max(1, |E|)``; the payload
        describes the worst point.
    """
    params = MLParams(float(alpha), float(beta))
    zarr = np.asarray(z, dtype=float)
    flat = np.ascontiguousarray(zarr).reshape(-1)
    if not np.isfinite(flat).all():
        raise ValueError("z must be finite")

    value, err, nterms, regime, ok = _evaluate(params.alpha, params.beta, flat, tol)
    if not ok.all():
        i = int(np.argmax(np.where(ok, -np.inf, err)))
        best = EvalResult(
            float(value[i]), float(err[i]), int(nterms[i]), _REGIME_BY_CODE[regime[i]]
        )
        raise AccuracyError(
            f"E_{{{params.alpha:g},{params.beta:g}}}({flat[i]:g}): "
            f"error estimate {err[i]:.3e} exceeds tolerance {tol:.1e}",
            best,
        )

    if zarr.ndim == 0:
        return float(value[0])
    return value.reshape(zarr.shape)


def ml_two(params: MLParams, z: float, *, tol: float = DEFAULT_TOL) -> EvalResult:
    """Two-parameter Mittag-Leffler function at a single real point."""
    if not math.isfinite(z):
        raise ValueError("z must be finite")
    value, err, nterms, regime, ok = _evaluate(
        params.alpha, params.beta, np.array([float(z)]), tol
    )
    result = EvalResult(
        float(value[0]), float(err[0]), int(nterms[0]), _REGIME_BY_CODE[regime[0]]
    )
    if not ok[0]:
        raise AccuracyError(
            f"E_{{{params.alpha:g},{params.beta:g}}}({z:g}): error estimate "
            f"{result.abs_error_estimate:.3e} exceeds tolerance {tol:.1e}",
            result,
        )
    return result


def ml_one(alpha: float, z: float, *, tol: float = DEFAULT_TOL) -> EvalResult:
    """One-parameter Mittag-Leffler function :math:`E_\\alpha(z)`."""
    return ml_two(MLParams(alpha, 1.0), z, tol=tol)


# }}}
