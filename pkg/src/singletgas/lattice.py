"""Spin correlations, structure factor and staggered-QFI witness for the
tight-binding Fermi gas on an L x L periodic square lattice."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

IMAG_TOL = 1e-12
GROUND_STATE_T = 1e-3  # in units of the hopping; see module notes below

# "T -> 0" is taken as T = 1e-3 J: the Fermi function then puts n_k = 1/2
# on the zero-energy shell, which is the correct average over the
# degenerate half-filled ground states without explicit bookkeeping.


@dataclass(frozen=True)
class CorrelationMap:
    """<S^z_0 S^z_r> on the displacement torus of an L x L lattice."""

    size: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.size, self.size):
            raise ValueError("correlation map shape does not match its size")


@dataclass(frozen=True)
class StructureFactor:
    """S(k) over the discrete Brillouin zone k = 2 pi (mx, my) / L."""

    size: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.size, self.size):
            raise ValueError("structure factor shape does not match its size")


class QfiResult(NamedTuple):
    qfi: float
    density: float
    witnessed: bool


def momentum_occupations(size, temperature=GROUND_STATE_T, mu=0.0, hopping=1.0):
    """Fermi occupations n_k per spin on the L x L momentum grid."""
    if size <= 0 or size % 2:
        raise ValueError(f"lattice size must be a positive even integer, got {size}")
    if temperature <= 0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    k = 2.0 * np.pi * np.arange(size) / size
    kx, ky = np.meshgrid(k, k, indexing="ij")
    dispersion = -2.0 * hopping * (np.cos(kx) + np.cos(ky))
    x = np.clip((dispersion - mu) / temperature, -700.0, 700.0)
    return 1.0 / (np.exp(x) + 1.0)


def first_order_correlation(size, temperature=GROUND_STATE_T, mu=0.0, hopping=1.0):
    """One-body correlation G(r) = (1/L^2) sum_k exp(-i k r) n_k, per spin.

    Real by inversion symmetry of the band; the imaginary part is checked
    against 1e-12 and dropped.
    """
    n_k = momentum_occupations(size, temperature, mu, hopping)
    g = np.fft.ifft2(n_k)
    if np.abs(g.imag).max() > IMAG_TOL:
        raise AssertionError("first-order correlation has a nonzero imaginary part")
    return g.real


def spin_correlation_map(size, temperature=GROUND_STATE_T, mu=0.0, hopping=1.0):
    """<S^z_0 S^z_r> for the balanced gas via Wick contractions of G.

    Onsite: (1/4) sum_sigma n(1-n); offsite: -(1/2) G(r)^2.
    """
    g = first_order_correlation(size, temperature, mu, hopping)
    values = -0.5 * g**2
    filling = g[0, 0]
    values[0, 0] = 0.5 * filling * (1.0 - filling)
    if not 0.0 <= values[0, 0] <= 0.125 + IMAG_TOL:
        raise AssertionError(f"onsite correlation {values[0, 0]} outside [0, 1/8]")
    return CorrelationMap(size, values)


def structure_factor(cmap):
    """Discrete Fourier transform of the correlation map over displacements.

    The result is a variance of a collective operator per site, hence real
    and nonnegative; tiny negative round-off is clipped at zero.
    """
    s = np.fft.fft2(cmap.values)
    if np.abs(s.imag).max() > IMAG_TOL:
        raise AssertionError("structure factor has a nonzero imaginary part")
    s = s.real
    if s.min() < -1e-10:
        raise AssertionError(f"structure factor significantly negative: {s.min()}")
    return StructureFactor(cmap.size, np.maximum(s, 0.0))


def qfi_staggered(sf):
    """QFI of the staggered collective spin: 4 L^2 S(pi, pi).

    Its density (QFI per site) exceeding unity would witness multipartite
    entanglement among the lattice sites; the comparison is strict.
    """
    L = sf.size
    s_pipi = float(sf.values[L // 2, L // 2])
    qfi = 4.0 * L**2 * s_pipi
    density = qfi / L**2
    return QfiResult(qfi, density, density > 1.0)
