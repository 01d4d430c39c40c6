"""Collective-spin variances, separability witnesses, singlet fraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import occupancy
from .occupancy import GasParameters, build_occupation_table, total_number


class BracketError(ValueError):
    """Root bracket without a sign change."""


@dataclass(frozen=True)
class SpinMoments:
    """First and second moments of the collective spin of the ensemble."""

    mean_n: float
    mean_jz: float
    var_jx: float
    var_jy: float
    var_jz: float
    polarization: float


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    satisfied: bool
    approximation: str  # "exact" or "mean-N"


@dataclass(frozen=True)
class WitnessReport:
    """The three separability inequalities plus the singlet-formation data.

    Inequality 1 compares the summed variances to <N>/2 and is exact.
    Inequalities 2 and 3 involve nonlinear functions of N; here every
    <f(N) X> is evaluated as f(<N>)<X> and the check carries a "mean-N"
    flag.  Of the inequivalent axis permutations the one with the smallest
    margin is reported, so ``satisfied`` means *all* permutations hold.
    """

    inequality_sum: InequalityCheck
    inequality_single: InequalityCheck
    inequality_pair: InequalityCheck
    xi_squared: float
    singlet_fraction: float
    entanglement_witnessed: bool

    @property
    def checks(self):
        return (self.inequality_sum, self.inequality_single, self.inequality_pair)


def collective_variances(table, eta):
    """Collective-spin moments from an occupation table.

    Var(Jz) = <N>/4 + (eta/4) sum_a w_a (n_up^2 + n_down^2) and
    Var(Jx) = Var(Jy) = <N>/4 + (eta/2) sum_a w_a n_up n_down, the level
    weights multiplying each contribution.
    """
    if eta not in (1, -1, 1.0, -1.0):
        raise ValueError(f"statistics sign must be +-1, got {eta}")
    w = table.weights
    nums = total_number(table)
    var_jz = nums.total / 4.0 + (eta / 4.0) * float(
        np.sum(w * (table.n_up**2 + table.n_down**2))
    )
    var_jxy = nums.total / 4.0 + (eta / 2.0) * float(
        np.sum(w * table.n_up * table.n_down)
    )
    return SpinMoments(
        mean_n=nums.total,
        mean_jz=0.5 * (nums.up - nums.down),
        var_jx=var_jxy,
        var_jy=var_jxy,
        var_jz=var_jz,
        polarization=nums.polarization,
    )


def xi_squared(moments):
    """Singlet-formation parameter 2 sum_mu Var(J^mu) / <N>."""
    return (
        2.0
        * (moments.var_jx + moments.var_jy + moments.var_jz)
        / moments.mean_n
    )


def witness_report(moments):
    """Evaluate the three separability inequalities for one set of moments.

    Requires <N> > 2: the fluctuating-N criteria assume no weight on the
    empty and single-particle sectors, and the mean-N evaluation of the
    nonlinear inequalities needs <N> - 1 well away from zero.
    """
    n = moments.mean_n
    if n <= 2.0:
        raise ValueError(f"witness evaluation needs <N> > 2, got {n}")
    variances = {"x": moments.var_jx, "y": moments.var_jy, "z": moments.var_jz}
    # polarization only along z, so <Jx> = <Jy> = 0
    second = {
        "x": moments.var_jx,
        "y": moments.var_jy,
        "z": moments.var_jz + moments.mean_jz**2,
    }
    total_var = sum(variances.values())
    ineq_sum = InequalityCheck(
        lhs=total_var, rhs=n / 2.0, satisfied=total_var >= n / 2.0,
        approximation="exact",
    )
    denom = n - 1.0
    single = min(
        (
            (variances[a], (second[b] + second[c] - n / 2.0) / denom)
            for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y"))
        ),
        key=lambda lr: lr[0] - lr[1],
    )
    pair = min(
        (
            (
                variances[a] + variances[b],
                second[c] / denom + n * (n - 2.0) / (4.0 * denom),
            )
            for a, b, c in (("x", "y", "z"), ("x", "z", "y"), ("y", "z", "x"))
        ),
        key=lambda lr: lr[0] - lr[1],
    )
    xi2 = xi_squared(moments)
    return WitnessReport(
        inequality_sum=ineq_sum,
        inequality_single=InequalityCheck(*single, single[0] >= single[1], "mean-N"),
        inequality_pair=InequalityCheck(*pair, pair[0] >= pair[1], "mean-N"),
        xi_squared=xi2,
        singlet_fraction=1.0 - xi2,
        entanglement_witnessed=xi2 < 1.0,
    )


@dataclass(frozen=True)
class SweepPoint:
    temperature: float
    p_target: float
    field: float
    moments: SpinMoments
    singlet_fraction: float
    witnessed: bool


def moments_at(model, temperature, p_target=0.0, mu=1.0):
    """Spin moments of a Fermi gas at one (T, P) point, solving the field."""
    params = GasParameters.fermi(temperature, mu=mu)
    field = occupancy.solve_field_for_polarization(model, params, p_target)
    table = build_occupation_table(model, GasParameters.fermi(temperature, mu, field))
    return field, collective_variances(table, eta=-1.0)


def singlet_fraction_sweep(model, t_grid, p_grid, mu=1.0):
    """f_s over a (T, P) product grid, rows ordered T outer / P inner."""
    t_grid, p_grid = list(t_grid), list(p_grid)
    if not t_grid or not p_grid:
        raise ValueError("temperature and polarization grids must be nonempty")
    rows = []
    for t in t_grid:
        for p in p_grid:
            try:
                field, moments = moments_at(model, t, p, mu=mu)
            except (occupancy.DomainError, occupancy.NoConvergence) as err:
                raise type(err)(f"at grid point T={t}, P={p}: {err}") from None
            xi2 = xi_squared(moments)
            rows.append(
                SweepPoint(t, p, field, moments, 1.0 - xi2, xi2 < 1.0)
            )
    return rows


T_TOLERANCE = 1e-6


def find_threshold(model, p_target=0.0, t_bracket=(0.02, 2.0), mu=1.0):
    """Temperature at which f_s(T, P) changes sign, by bisection.

    The bracket must straddle the zero: f_s > 0 at the lower end and
    f_s < 0 at the upper end.
    """

    def f_s(t):
        _, moments = moments_at(model, t, p_target, mu=mu)
        return 1.0 - xi_squared(moments)

    lo, hi = t_bracket
    if not (f_s(lo) > 0.0 > f_s(hi)):
        raise BracketError(
            f"f_s does not change sign on [{lo}, {hi}] at P={p_target}"
        )
    while hi - lo > T_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if f_s(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
