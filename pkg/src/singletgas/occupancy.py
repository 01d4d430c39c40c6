"""Bose-Einstein / Fermi-Dirac occupations, particle numbers, field solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import spectra

EXP_GUARD = 700.0  # double-precision exp() saturation
BOSE_MARGIN = 1e-12  # relative guard against a diverging lowest level

SPIN_UP = 0.5
SPIN_DOWN = -0.5


class DomainError(ValueError):
    """Parameters outside the physical domain (e.g. Bose fugacity too large)."""


class DegenerateInputError(ValueError):
    """Input with no usable information (e.g. zero total particle number)."""


class NoConvergence(RuntimeError):
    """An iterative solver exhausted its iteration budget."""


@dataclass(frozen=True)
class GasParameters:
    """Thermodynamic control knobs of an ideal spin-1/2 gas.

    ``statistics`` is "fermi" or "bose".  Fermi gases carry an explicit
    chemical potential; Bose gases are specified by a fugacity
    z = exp(beta * mu_tilde) with mu_tilde measured from the lowest level,
    resolved to a chemical potential once a spectrum is known.
    """

    statistics: str
    temperature: float
    mu: float | None = None
    fugacity: float | None = None
    field: float = 0.0

    def __post_init__(self):
        if self.statistics not in ("fermi", "bose"):
            raise ValueError(f"unknown statistics {self.statistics!r}")
        if self.temperature <= 0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")
        if self.statistics == "fermi" and self.mu is None:
            raise ValueError("Fermi parameters need a chemical potential")
        if self.statistics == "bose" and self.mu is None and self.fugacity is None:
            raise ValueError("Bose parameters need a fugacity (or explicit mu)")
        if self.fugacity is not None and self.fugacity <= 0:
            raise DomainError(f"fugacity must be positive, got {self.fugacity}")

    @property
    def eta(self):
        return -1.0 if self.statistics == "fermi" else 1.0

    @classmethod
    def fermi(cls, temperature, mu=1.0, field=0.0):
        return cls("fermi", temperature, mu=mu, field=field)

    @classmethod
    def bose(cls, temperature, fugacity, field=0.0):
        return cls("bose", temperature, fugacity=fugacity, field=field)

    def resolved(self, energy_min):
        """Turn a fugacity-specified Bose gas into one with an explicit mu.

        Rejects parameters whose most populated spin branch would reach or
        exceed the lowest level, at a relative margin of 1e-12.
        """
        if self.mu is not None:
            return self
        mu = energy_min + self.temperature * math.log(self.fugacity)
        top = mu + abs(self.field) / 2.0
        if top > energy_min - BOSE_MARGIN * max(1.0, abs(energy_min)) - \
                BOSE_MARGIN * self.temperature:
            raise DomainError(
                f"Bose branch chemical potential {top} reaches lowest level {energy_min}"
            )
        return replace(self, mu=mu)


class NumberSummary(NamedTuple):
    total: float
    up: float
    down: float
    polarization: float


@dataclass(frozen=True)
class OccupationTable:
    """Mean occupations per level and spin over an enumerated spectrum."""

    energies: np.ndarray
    weights: np.ndarray
    n_up: np.ndarray
    n_down: np.ndarray


def occupation(energy, params, sigma=SPIN_UP):
    """Mean occupation 1/(exp(beta(e - sigma H - mu)) - eta) of one level.

    Saturates deterministically outside the double-precision exp range:
    0 above, and (Fermi only) 1 below.  Bose arguments <= 0 are a domain
    error (diverging or negative occupation).
    """
    if params.mu is None:
        raise ValueError("unresolved Bose parameters; call params.resolved(e_min)")
    x = np.asarray(
        (np.asarray(energy, dtype=float) - sigma * params.field - params.mu)
        / params.temperature
    )
    if params.statistics == "bose":
        if np.any(x <= 0):
            raise DomainError("Bose occupation argument <= 0 (diverging occupation)")
        out = np.zeros_like(x)
        ok = x <= EXP_GUARD
        out[ok] = 1.0 / np.expm1(x[ok])
        return out if out.ndim else float(out)
    out = np.empty_like(x)
    lo, hi = x < -EXP_GUARD, x > EXP_GUARD
    mid = ~(lo | hi)
    out[lo] = 1.0
    out[hi] = 0.0
    out[mid] = 1.0 / (np.exp(x[mid]) + 1.0)
    return out if out.ndim else float(out)


def build_occupation_table(model, params):
    """Materialize n_{alpha sigma} over ``spectra.enumerate_levels(model)``.

    Adaptive model pieces (trap shell cutoff, continuum quadrature window)
    are resolved here from the thermodynamic point.
    """
    probe_mu = params.mu if params.mu is not None else 0.0
    concrete = spectra.resolve_model(
        model, params.temperature, mu=probe_mu, field=params.field
    )
    energies, weights = spectra.enumerate_levels(concrete)
    params = params.resolved(float(energies.min()))
    try:
        n_up = occupation(energies, params, SPIN_UP)
        n_down = occupation(energies, params, SPIN_DOWN)
    except DomainError as err:
        bad = int(np.argmin(energies))
        raise DomainError(f"{err} (first offending level index {bad})") from None
    return OccupationTable(energies, weights, n_up, n_down)


def total_number(table):
    """Aggregate (<N>, <N_up>, <N_down>, P) from an occupation table."""
    n_up = float(np.sum(table.weights * table.n_up))
    n_down = float(np.sum(table.weights * table.n_down))
    total = n_up + n_down
    if total <= 0:
        raise DegenerateInputError("zero total particle number, polarization undefined")
    return NumberSummary(total, n_up, n_down, (n_up - n_down) / total)


def polarization_at(model, params, field):
    """P for the given Zeeman field, at fixed (model, T, mu)."""
    table = build_occupation_table(model, replace(params, field=field))
    return total_number(table).polarization


P_TOLERANCE = 1e-8
MAX_ITERATIONS = 200


def solve_field_for_polarization(model, params, p_target):
    """Zeeman field H >= 0 with P(H) = p_target, by bracketed bisection.

    P is monotone in H with P(0) = 0, which anchors the bracket; the upper
    end is found by doubling.  Fermi statistics only.
    """
    if params.statistics != "fermi":
        raise ValueError("polarization sweeps are defined for Fermi gases only")
    if not 0.0 <= p_target < 1.0:
        raise DomainError(f"target polarization must be in [0, 1), got {p_target}")
    if p_target == 0.0:
        return 0.0
    hi = params.temperature
    for _ in range(MAX_ITERATIONS):
        if polarization_at(model, params, hi) >= p_target:
            break
        hi *= 2.0
    else:
        raise NoConvergence(f"bracket expansion failed for P={p_target}")
    lo = 0.0
    mid = hi
    for _ in range(MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        p = polarization_at(model, params, mid)
        if abs(p - p_target) < P_TOLERANCE:
            return mid
        if p < p_target:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(
        f"bisection did not reach |P - {p_target}| < {P_TOLERANCE} "
        f"in {MAX_ITERATIONS} iterations"
    )
