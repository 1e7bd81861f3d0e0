"""Closed-form solutions of generalized fractional kinetic equations.

Every model is an integral equation of the form

.. math::

    N(t) - f(t) = -c^\\nu \\, D^{-\\nu} N(t),

and differs only in the source term ``f``:

==================  ===============================================
variant             ``f(t)``
==================  ===============================================
standard            ``N0``
power-source        ``N0 t^(mu-1)``
ml-source           ``N0 t^(mu-1) E_{nu,mu}(-d^nu t^nu)``, ``c != d``
power-gamma-source  ``N0 t^(mu-1) / Gamma(mu)``
ml-source-resonant  ``N0 t^(mu-1) E_{nu,mu}(-c^nu t^nu)``
==================  ===============================================

Solutions with ``mu < 1`` are singular at the origin; their node 0 carries
:attr:`StartPolicy.LIMIT_UNDEFINED` with the exponent ``mu - 1``.  For
``mu >= 1`` some closed forms are written with ``t^(mu-nu-1)`` prefactors; the
value at ``t = 0`` is then filled with the limit ``N(0) = f(0)``, which the
integral equation forces for any bounded solution.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fracops import SampledFunction, StartPolicy, TimeGrid
from .specfun import gamma, mittag_leffler, rgamma

__all__ = [
    "KineticModel",
    "ResonanceError",
    "Variant",
    "forcing",
    "solve",
    "solve_ml_source",
    "solve_ml_source_resonant",
    "solve_power_gamma_source",
    "solve_power_source",
    "solve_standard",
]

#: Relative separation of ``c^nu`` and ``d^nu`` below which the two-rate
#: formula is refused.
RESONANCE_THRESHOLD = 1e-9


class ResonanceError(ValueError):
    """``c`` and ``d`` are too close for the two-rate closed form."""


class Variant(str, enum.Enum):
    STANDARD = "standard"
    POWER_SOURCE = "power-source"
    ML_SOURCE = "ml-source"
    POWER_GAMMA_SOURCE = "power-gamma-source"
    ML_SOURCE_RESONANT = "ml-source-resonant"


@dataclass(frozen=True)
class KineticModel:
    """One of the five kinetic equations together with its parameters.

    If not given, ``mu`` defaults to 1.  ``d`` is only read by
    :attr:`Variant.ML_SOURCE`.
    """

    variant: Variant
    N0: float
    c: float
    nu: float
    mu: float = 1.0
    d: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        for name in ("N0", "c", "nu", "mu", "d"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.N0 <= 0:
            raise ValueError(f"N0 must be > 0, got {self.N0}")
        if self.c <= 0:
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.nu <= 0:
            raise ValueError(f"nu must be > 0, got {self.nu}")
        if self.mu <= 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")

        if self.variant is Variant.STANDARD and self.mu != 1:
            raise ValueError("the standard model requires mu = 1")
        if self.variant is Variant.ML_SOURCE:
            if self.d <= 0:
                raise ValueError(f"ml-source requires d > 0, got {self.d}")
            if self.resonant():
                raise ResonanceError(
                    f"c^nu and d^nu coincide to within {RESONANCE_THRESHOLD:g} "
                    "(relative); use the ml-source-resonant variant"
                )
        elif self.d < 0:
            raise ValueError(f"d must be >= 0, got {self.d}")

    @property
    def rate(self) -> float:
        """``c^nu``, the coefficient of the fractional integral."""
        return self.c**self.nu

    def resonant(self) -> bool:
        cn, dn = self.c**self.nu, self.d**self.nu
        return abs(cn - dn) <= RESONANCE_THRESHOLD * max(cn, dn)

    @property
    def singular(self) -> bool:
        return self.mu < 1

    def describe(self) -> str:
        parts = [f"{self.variant.value}", f"N0={self.N0:g}", f"c={self.c:g}", f"nu={self.nu:g}"]
        if self.variant is not Variant.STANDARD:
            parts.append(f"mu={self.mu:g}")
        if self.variant is Variant.ML_SOURCE:
            parts.append(f"d={self.d:g}")
        return " ".join(parts)


def _require(model: KineticModel, variant: Variant) -> None:
    if model.variant is not variant:
        raise ValueError(f"expected a {variant.value} model, got {model.variant.value}")


def _ml(z: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    return mittag_leffler(z, alpha, beta)


def _package(model: KineticModel, grid: TimeGrid, values: np.ndarray, at_zero: float):
    """Attach the origin convention to freshly computed node values."""
    values = np.array(values, dtype=float)
    if model.singular:
        values[0] = np.nan
        return SampledFunction(grid, values, StartPolicy.LIMIT_UNDEFINED, model.mu - 1.0)
    values[0] = at_zero
    return SampledFunction(grid, values)


def _positive_nodes(grid: TimeGrid) -> np.ndarray:
    t = grid.nodes
    # node 0 is overwritten by _package
    t[0] = grid.h
    return t


def _source_at_zero(model: KineticModel) -> float:
    """``f(0)`` for ``mu >= 1``; the globally shared value ``N(0)``."""
    if model.mu > 1:
        return 0.0
    if model.variant is Variant.POWER_GAMMA_SOURCE:
        return model.N0 * rgamma(model.mu)
    return model.N0


def forcing(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """Source term ``f`` such that ``N - f = -c^nu D^{-nu} N``."""
    t = _positive_nodes(grid)
    nu, mu, N0 = model.nu, model.mu, model.N0
    v = model.variant

    if v is Variant.STANDARD:
        values = np.full(t.shape, N0)
    elif v is Variant.POWER_SOURCE:
        values = N0 * t ** (mu - 1)
    elif v is Variant.POWER_GAMMA_SOURCE:
        values = N0 * t ** (mu - 1) * rgamma(mu)
    elif v is Variant.ML_SOURCE:
        values = N0 * t ** (mu - 1) * _ml(-(model.d**nu) * t**nu, nu, mu)
    else:
        values = N0 * t ** (mu - 1) * _ml(-model.rate * t**nu, nu, mu)

    return _package(model, grid, values, _source_at_zero(model))


def solve_standard(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """``N(t) = N0 E_nu(-c^nu t^nu)``."""
    _require(model, Variant.STANDARD)
    t = grid.nodes
    values = model.N0 * _ml(-model.rate * t**model.nu, model.nu, 1.0)
    return SampledFunction(grid, values)


def solve_power_source(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """``N(t) = N0 Gamma(mu) t^(mu-1) E_{nu,mu}(-c^nu t^nu)``."""
    _require(model, Variant.POWER_SOURCE)
    nu, mu = model.nu, model.mu
    t = _positive_nodes(grid)
    values = model.N0 * gamma(mu) * t ** (mu - 1) * _ml(-model.rate * t**nu, nu, mu)
    return _package(model, grid, values, _source_at_zero(model))


def solve_ml_source(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """Two-rate solution

    ``N(t) = N0 t^(mu-nu-1) / (c^nu - d^nu)
    [E_{nu,mu-nu}(-d^nu t^nu) - E_{nu,mu-nu}(-c^nu t^nu)]``.
    """
    _require(model, Variant.ML_SOURCE)
    nu, mu = model.nu, model.mu
    cn, dn = model.rate, model.d**nu
    t = _positive_nodes(grid)
    tn = t**nu
    bracket = _ml(-dn * tn, nu, mu - nu) - _ml(-cn * tn, nu, mu - nu)
    values = model.N0 * t ** (mu - nu - 1) / (cn - dn) * bracket
    return _package(model, grid, values, _source_at_zero(model))


def solve_power_gamma_source(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """``N(t) = N0 t^(mu-nu-1) / c^nu [1/Gamma(mu-nu) - E_{nu,mu-nu}(-c^nu t^nu)]``."""
    _require(model, Variant.POWER_GAMMA_SOURCE)
    nu, mu = model.nu, model.mu
    cn = model.rate
    t = _positive_nodes(grid)
    bracket = rgamma(mu - nu) - _ml(-cn * t**nu, nu, mu - nu)
    values = model.N0 * t ** (mu - nu - 1) / cn * bracket
    return _package(model, grid, values, _source_at_zero(model))


def solve_ml_source_resonant(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """``c = d`` solution

    ``N(t) = N0/nu t^(mu-1) [E_{nu,mu-1}(-c^nu t^nu) + (1+nu-mu) E_{nu,mu}(-c^nu t^nu)]``.
    """
    _require(model, Variant.ML_SOURCE_RESONANT)
    nu, mu = model.nu, model.mu
    t = _positive_nodes(grid)
    z = -model.rate * t**nu
    bracket = _ml(z, nu, mu - 1) + (1 + nu - mu) * _ml(z, nu, mu)
    values = model.N0 / nu * t ** (mu - 1) * bracket
    return _package(model, grid, values, _source_at_zero(model))


_SOLVERS = {
    Variant.STANDARD: solve_standard,
    Variant.POWER_SOURCE: solve_power_source,
    Variant.ML_SOURCE: solve_ml_source,
    Variant.POWER_GAMMA_SOURCE: solve_power_gamma_source,
    Variant.ML_SOURCE_RESONANT: solve_ml_source_resonant,
}


def solve(model: KineticModel, grid: TimeGrid) -> SampledFunction:
    """Closed-form solution of ``model`` at the nodes of ``grid``."""
    return _SOLVERS[model.variant](model, grid)
