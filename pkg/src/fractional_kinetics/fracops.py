"""Discrete Riemann-Liouville fractional integration on uniform grids.

The operator

.. math::

    (D^{-\\nu} f)(t) = \\frac{1}{\\Gamma(\\nu)} \\int_0^t (t - u)^{\\nu - 1} f(u)\\,du

is discretized by product integration: the kernel is integrated exactly
against the piecewise-linear interpolant of ``f``.  On a uniform grid with
``h = t_end / n_steps`` this gives the familiar weights

.. math::

    w_{n,0} = \\frac{h^\\nu}{\\Gamma(\\nu + 2)} \\left[(n - 1)^{\\nu + 1}
              - (n - \\nu - 1) n^\\nu\\right],
    \\qquad
    w_{n,j} = \\frac{h^\\nu}{\\Gamma(\\nu + 2)} a_{n - j},
    \\qquad
    w_{n,n} = \\frac{h^\\nu}{\\Gamma(\\nu + 2)},

with ``a_k = (k+1)^{nu+1} - 2 k^{nu+1} + (k-1)^{nu+1}``.  Only the ``O(n)``
distinct coefficients are stored; rows are materialized on demand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sp

__all__ = [
    "FracWeights",
    "GridMismatchError",
    "SampledFunction",
    "SingularOriginError",
    "StartPolicy",
    "TimeGrid",
    "build_weights",
    "frac_integral",
]

#: Below this index the closed-form differences are accurate enough.
_SERIES_SWITCH = 10
#: Gauss-Jacobi order for the singular first cell.
_JACOBI_POINTS = 32


class SingularOriginError(ValueError):
    """The sampled function is undefined at ``t = 0`` and declares no exponent."""


class GridMismatchError(ValueError):
    pass


class StartPolicy(str, enum.Enum):
    VALUE_AT_ZERO = "value-at-zero"
    LIMIT_UNDEFINED = "limit-undefined-at-zero"


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_j = j h`` on ``[0, t_end]`` with ``n_steps`` cells."""

    t_end: float
    n_steps: int

    def __post_init__(self):
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ValueError(f"t_end must be finite and > 0, got {self.t_end!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def h(self) -> float:
        return self.t_end / self.n_steps

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(self.n_steps + 1)

    def __len__(self) -> int:
        return self.n_steps + 1


@dataclass(frozen=True)
class SampledFunction:
    """Values of a function at the nodes of a :class:`TimeGrid`.

    With ``start_policy = LIMIT_UNDEFINED`` the value at ``t = 0`` is a
    sentinel that no consumer reads.  ``exponent`` then declares the power law
    ``f(t) ~ t^exponent`` near the origin, which the fractional integral uses
    to treat the first cell analytically.
    """

    grid: TimeGrid
    values: np.ndarray
    start_policy: StartPolicy = StartPolicy.VALUE_AT_ZERO
    exponent: float | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (len(self.grid),):
            raise ValueError(
                f"expected {len(self.grid)} values for the grid, got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start_policy", StartPolicy(self.start_policy))
        if self.exponent is not None and not self.exponent > -1:
            raise ValueError(f"declared exponent must be > -1, got {self.exponent}")

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def singular(self) -> bool:
        return self.start_policy is StartPolicy.LIMIT_UNDEFINED

    def evaluated(self) -> slice:
        """Slice of the nodes that carry real values."""
        return slice(1, None) if self.singular else slice(None)


# {{{ weights


def _binomials(s: float, jmax: int) -> np.ndarray:
    c = np.empty(jmax + 1)
    c[0] = 1.0
    for j in range(1, jmax + 1):
        c[j] = c[j - 1] * (s - j + 1) / j
    return c


def _interior_coefficients(nu: float, n: int) -> np.ndarray:
    """``a_k`` for ``k = 0..n`` with ``a_0 = 1`` (the diagonal)."""
    s = nu + 1.0
    a = np.empty(n + 1)
    a[0] = 1.0

    k = np.arange(1, min(n, _SERIES_SWITCH - 1) + 1, dtype=float)
    a[1 : k.size + 1] = (k + 1) ** s - 2 * k**s + (k - 1) ** s

    if n >= _SERIES_SWITCH:
        # k^s [(1 + x)^s + (1 - x)^s - 2] = 2 k^s sum_m C(s, 2m) x^{2m}
        k = np.arange(_SERIES_SWITCH, n + 1, dtype=float)
        x2 = 1.0 / k**2
        c = _binomials(s, 40)
        acc = np.zeros_like(k)
        xp = np.ones_like(k)
        for m in range(1, 21):
            xp = xp * x2
            acc += c[2 * m] * xp
        a[_SERIES_SWITCH:] = 2.0 * k**s * acc
    return a


def _start_coefficients(nu: float, n: int) -> np.ndarray:
    """``b_n = (n - 1)^{nu+1} - (n - nu - 1) n^nu`` for ``n = 0..n`` (``b_0 = 0``)."""
    s = nu + 1.0
    b = np.zeros(n + 1)

    m = np.arange(1, min(n, _SERIES_SWITCH - 1) + 1, dtype=float)
    b[1 : m.size + 1] = (m - 1) ** s - (m - nu - 1) * m**nu

    if n >= _SERIES_SWITCH:
        # n^s [(1 - x)^s - 1 + s x] = n^s sum_{j>=2} C(s, j) (-x)^j
        m = np.arange(_SERIES_SWITCH, n + 1, dtype=float)
        x = 1.0 / m
        c = _binomials(s, 40)
        acc = np.zeros_like(m)
        xp = np.ones_like(m)
        for j in range(1, 41):
            xp = xp * (-x)
            if j >= 2:
                acc += c[j] * xp
        b[_SERIES_SWITCH:] = m**s * acc
    return b


def _power_moments(nu: float, gamma_: float, n: int) -> np.ndarray:
    """``int_0^1 (m - x)^{nu-1} x^gamma dx / Gamma(nu)`` for ``m = 0..n``."""
    out = np.zeros(n + 1)
    if n >= 1:
        out[1] = math.exp(
            math.lgamma(gamma_ + 1) - math.lgamma(gamma_ + 1 + nu)
        )
    if n >= 2:
        y, wy = _sp.roots_jacobi(_JACOBI_POINTS, 0.0, gamma_)
        x = 0.5 * (1.0 + y)
        m = np.arange(2, n + 1, dtype=float)
        kernel = (m[:, None] - x[None, :]) ** (nu - 1.0)
        out[2:] = 2.0 ** (-1.0 - gamma_) * (kernel @ wy) / math.gamma(nu)
    return out


@dataclass(frozen=True, eq=False)
class FracWeights:
    """Product-trapezoid weights for ``D^{-nu}`` on one grid.

    ``exponent`` switches the first cell to the power-law rule for functions
    that blow up like ``t^exponent`` at the origin.
    """

    nu: float
    grid: TimeGrid
    exponent: float | None
    scale: float
    interior: np.ndarray
    start: np.ndarray
    moments: np.ndarray | None

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def n_steps(self) -> int:
        return self.grid.n_steps

    def row(self, n: int) -> np.ndarray:
        """Weights ``w[n][0..n]``."""
        if not 0 <= n <= self.n_steps:
            raise IndexError(n)
        w = np.zeros(n + 1)
        if n == 0:
            return w
        w[1:] = self.scale * self.interior[n - 1 :: -1][:n]
        if self.moments is None:
            w[0] = self.scale * self.start[n]
        else:
            w[0] = 0.0
            extra = self.scale * self.start[n - 1] if n >= 2 else 0.0
            w[1] = extra + self.hnu * self.moments[n]
        return w

    @property
    def hnu(self) -> float:
        return self.h**self.nu

    def diagonal(self, n: int) -> float:
        return float(self.row(n)[-1]) if n else 0.0

    def table(self) -> np.ndarray:
        """Dense lower-triangular table; for inspection and tests only."""
        n = self.n_steps
        out = np.zeros((n + 1, n + 1))
        for i in range(n + 1):
            out[i, : i + 1] = self.row(i)
        return out

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Apply every row to ``values``; entry 0 of the result is 0."""
        f = np.asarray(values, dtype=float)
        n = self.n_steps
        out = np.zeros(n + 1)
        if self.moments is None:
            conv = np.convolve(self.interior, f[1:])[:n]
            out[1:] = self.scale * (self.start[1:] * f[0] + conv)
        else:
            g = f.copy()
            g[:2] = 0.0
            conv = np.convolve(self.interior, g[1:])[:n]
            node1 = self.hnu * self.moments[1:]
            node1[1:] += self.scale * self.start[1:n]
            out[1:] = self.scale * conv + node1 * f[1]
        return out


@lru_cache(maxsize=64)
def _cached_weights(nu: float, grid: TimeGrid, exponent: float | None) -> FracWeights:
    n = grid.n_steps
    interior = _interior_coefficients(nu, n)
    start = _start_coefficients(nu, n)
    moments = None if exponent is None else _power_moments(nu, exponent, n)
    for arr in (interior, start, moments):
        if arr is not None:
            arr.setflags(write=False)
    scale = grid.h**nu / math.gamma(nu + 2.0)
    return FracWeights(nu, grid, exponent, scale, interior, start, moments)


def build_weights(nu: float, grid: TimeGrid, exponent: float | None = None) -> FracWeights:
    if not (math.isfinite(nu) and nu > 0):
        raise ValueError(f"nu must be > 0 for fractional weights, got {nu!r}")
    if exponent is not None and not exponent > -1:
        raise ValueError(f"exponent must be > -1, got {exponent}")
    return _cached_weights(float(nu), grid, None if exponent is None else float(exponent))


def weights_for(f: SampledFunction, nu: float) -> FracWeights:
    """Weights appropriate to the start policy of ``f``."""
    if f.singular:
        if f.exponent is None:
            raise SingularOriginError(
                "function is undefined at t=0 and declares no power exponent"
            )
        return build_weights(nu, f.grid, f.exponent)
    return build_weights(nu, f.grid)


# }}}


def frac_integral(f: SampledFunction, nu: float) -> SampledFunction:
    """Riemann-Liouville integral of order ``nu`` at every node of ``f.grid``.

    ``nu = 0`` returns ``f`` itself.
    """
    if not (math.isfinite(nu) and nu >= 0):
        raise ValueError(f"nu must be >= 0, got {nu!r}")
    if nu == 0:
        return f

    w = weights_for(f, nu)
    values = w.apply(f.values)
    if not f.singular:
        return SampledFunction(f.grid, values)

    order = f.exponent + nu
    if order > 0:
        values[0] = 0.0
        return SampledFunction(f.grid, values)
    values[0] = np.nan
    return SampledFunction(f.grid, values, StartPolicy.LIMIT_UNDEFINED, order)
