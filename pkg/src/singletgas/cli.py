"""Batch front end: config parsing, workflows, deterministic CSV/JSON output.

Workflows: ``freespace`` and ``trap`` sweep the singlet fraction over a
(T, P) grid; ``threshold`` locates the temperature where f_s vanishes;
``lattice`` emits the spin correlation map and structure factor;
``validate`` cross-checks the closed-form variances against the exact
few-mode enumeration on seeded random ensembles.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import lattice, occupancy, oracle, spectra, spinmoments
from .occupancy import DomainError, NoConvergence, OccupationTable
from .rng import Lcg64

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4
EXIT_IO = 5


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    workflow: str = ""
    spectrum: str = "continuum"  # continuum | grid | trap
    t_grid: list = field(default_factory=lambda: [0.1, 0.2, 0.5, 1.0])
    p_grid: list = field(default_factory=lambda: [0.0])
    p_target: float = 0.0
    t_bracket: list = field(default_factory=lambda: [0.02, 2.0])
    mu_over_homega: float = 30.0
    half_width: int = 15
    lattice_size: int = 64
    t_over_j: float = lattice.GROUND_STATE_T
    samples_fermi: int = 100
    samples_bose: int = 20
    seed: int = 1
    out: str = "out.csv"
    format: str = "csv"

    WORKFLOWS = ("freespace", "trap", "lattice", "validate", "threshold")

    def validate(self):
        if self.workflow not in self.WORKFLOWS:
            raise ConfigError(f"workflow must be one of {self.WORKFLOWS}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.spectrum not in ("continuum", "grid", "trap"):
            raise ConfigError(f"unknown spectrum {self.spectrum!r}")
        for name, grid in (("t_grid", self.t_grid), ("p_grid", self.p_grid)):
            if not grid:
                raise ConfigError(f"{name} must be nonempty")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ConfigError(f"{name} must be strictly increasing")
        if any(t <= 0 for t in self.t_grid):
            raise ConfigError("temperatures must be positive")
        if any(not 0.0 <= p < 1.0 for p in self.p_grid):
            raise ConfigError("polarizations must lie in [0, 1)")
        if self.lattice_size <= 0 or self.lattice_size % 2:
            raise ConfigError("lattice_size must be a positive even integer")

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def parse_config_text(text):
    """Flat ``key = value`` lines, or a JSON object; '#' starts a comment."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"bad JSON config: {err}") from None
        if not isinstance(data, dict):
            raise ConfigError("JSON config must be an object")
        return data
    data = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        data[key] = value
    return data


def build_config(data, overrides=None):
    cfg = RunConfig()
    data = dict(data)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    known = {f.name: f for f in fields(RunConfig)}
    for key, raw in data.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        current = getattr(cfg, key)
        try:
            if isinstance(current, list):
                if isinstance(raw, str):
                    raw = [float(v) for v in raw.split(",") if v.strip()]
                setattr(cfg, key, [float(v) for v in raw])
            elif isinstance(current, int) and not isinstance(current, bool):
                setattr(cfg, key, int(raw))
            elif isinstance(current, float):
                setattr(cfg, key, float(raw))
            else:
                setattr(cfg, key, str(raw))
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {key!r}: {raw!r}") from None
    cfg.validate()
    return cfg


def _fmt(x):
    return format(float(x), ".12g")


def _model_for(cfg):
    if cfg.spectrum == "grid":
        return spectra.FreeSpaceGrid(half_width=cfg.half_width)
    if cfg.spectrum == "trap":
        return spectra.HarmonicTrap(level_spacing=1.0 / cfg.mu_over_homega)
    return spectra.FreeSpaceContinuum()


def _write_table(path, cfg, columns, rows):
    path = Path(path)
    if cfg.format == "json":
        payload = {
            "config": cfg.as_dict(),
            "columns": list(columns),
            "rows": [[float(_fmt(v)) for v in row] for row in rows],
        }
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        return
    lines = [f"# {key} = {value}" for key, value in sorted(cfg.as_dict().items())]
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _write_map(path, cfg, values):
    path = Path(path)
    L = values.shape[0]
    if cfg.format == "json":
        payload = {
            "config": cfg.as_dict(),
            "L": L,
            "values": [[float(_fmt(v)) for v in row] for row in values],
        }
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        return
    lines = [f"# {key} = {value}" for key, value in sorted(cfg.as_dict().items())]
    lines.append(f"L,{L}")
    lines.extend(",".join(_fmt(v) for v in row) for row in values)
    path.write_text("\n".join(lines) + "\n")


SWEEP_COLUMNS = ("T_over_mu", "P", "f_s", "var_Jx", "var_Jz", "mean_N", "witnessed")


def run_sweep(cfg):
    if cfg.workflow == "trap":
        model = spectra.HarmonicTrap(level_spacing=1.0 / cfg.mu_over_homega)
    else:
        model = _model_for(cfg)
    points = spinmoments.singlet_fraction_sweep(model, cfg.t_grid, cfg.p_grid)
    rows = [
        (
            pt.temperature,
            pt.p_target,
            pt.singlet_fraction,
            pt.moments.var_jx,
            pt.moments.var_jz,
            pt.moments.mean_n,
            int(pt.witnessed),
        )
        for pt in points
    ]
    _write_table(cfg.out, cfg, SWEEP_COLUMNS, rows)


def run_threshold(cfg):
    model = _model_for(cfg)
    t_star = spinmoments.find_threshold(
        model, cfg.p_target, t_bracket=tuple(cfg.t_bracket)
    )
    _write_table(cfg.out, cfg, ("P", "T_star_over_mu"), [(cfg.p_target, t_star)])


def run_lattice(cfg):
    cmap = lattice.spin_correlation_map(cfg.lattice_size, temperature=cfg.t_over_j)
    sf = lattice.structure_factor(cmap)
    out = Path(cfg.out)
    corr_path = out.with_name(out.stem + "_correlation" + (out.suffix or ".csv"))
    sf_path = out.with_name(out.stem + "_structure_factor" + (out.suffix or ".csv"))
    _write_map(corr_path, cfg, cmap.values)
    _write_map(sf_path, cfg, sf.values)


def _sample_fermi_ensemble(gen):
    modes = gen.randint(1, 4)
    return oracle.FockEnsemble(
        statistics="fermi",
        energies=tuple(gen.uniform(-1.0, 1.0) for _ in range(modes)),
        beta=gen.uniform(0.2, 5.0),
        mu=gen.uniform(-1.0, 1.0),
        field=gen.uniform(0.0, 1.0),
    )


def _sample_bose_ensemble(gen):
    modes = gen.randint(1, 2)
    energies = tuple(gen.uniform(0.2, 1.5) for _ in range(modes))
    beta = gen.uniform(0.5, 3.0)
    h = gen.uniform(0.0, 0.3)
    # keep the gap to the lowest level at least 0.3/beta so the default
    # occupation cutoff converges quickly
    mu = min(energies) - h / 2.0 - gen.uniform(0.3, 3.0) / beta
    return oracle.FockEnsemble(
        statistics="bose", energies=energies, beta=beta, mu=mu, field=h
    )


def closed_form_moments(ens):
    """Wick-route moments of a few-mode ensemble, for oracle comparison."""
    energies = np.array(ens.energies, dtype=float)
    params = occupancy.GasParameters(
        ens.statistics, 1.0 / ens.beta, mu=ens.mu, field=ens.field
    )
    table = OccupationTable(
        energies,
        np.ones_like(energies),
        occupancy.occupation(energies, params, occupancy.SPIN_UP),
        occupancy.occupation(energies, params, occupancy.SPIN_DOWN),
    )
    return spinmoments.collective_variances(table, params.eta)


def oracle_deviation(ens):
    """Max relative deviation between exact and closed-form moments."""
    exact = oracle.exact_moments(ens).moments
    wick = closed_form_moments(ens)
    dev = 0.0
    for a, b in (
        (exact.mean_n, wick.mean_n),
        (exact.mean_jz, wick.mean_jz),
        (exact.var_jx, wick.var_jx),
        (exact.var_jz, wick.var_jz),
    ):
        dev = max(dev, abs(a - b) / max(1.0, abs(a), abs(b)))
    return dev


FERMI_ORACLE_RTOL = 1e-10
BOSE_ORACLE_RTOL = 1e-6


def run_validate(cfg):
    gen = Lcg64(cfg.seed)
    rows = []
    failures = 0
    for i in range(cfg.samples_fermi):
        ens = _sample_fermi_ensemble(gen)
        dev = oracle_deviation(ens)
        ok = dev < FERMI_ORACLE_RTOL
        failures += not ok
        rows.append((i, 0, len(ens.energies), dev, int(ok)))
    for i in range(cfg.samples_bose):
        ens = _sample_bose_ensemble(gen)
        dev = oracle_deviation(ens)
        ok = dev < BOSE_ORACLE_RTOL
        failures += not ok
        rows.append((cfg.samples_fermi + i, 1, len(ens.energies), dev, int(ok)))
    _write_table(
        cfg.out, cfg, ("index", "is_bose", "modes", "max_rel_err", "ok"), rows
    )
    return failures


def run(cfg):
    """Execute one workflow; returns a process exit status."""
    if cfg.workflow in ("freespace", "trap"):
        run_sweep(cfg)
    elif cfg.workflow == "threshold":
        run_threshold(cfg)
    elif cfg.workflow == "lattice":
        run_lattice(cfg)
    elif cfg.workflow == "validate":
        if run_validate(cfg):
            return 1
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="singletgas",
        description="Collective-spin entanglement witnesses for ideal quantum gases",
    )
    parser.add_argument("--config", help="config file (key = value lines, or JSON)")
    parser.add_argument("--workflow", choices=RunConfig.WORKFLOWS)
    parser.add_argument("--out", help="output path")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    try:
        data = {}
        if args.config:
            data = parse_config_text(Path(args.config).read_text())
        cfg = build_config(
            data,
            overrides={
                "workflow": args.workflow,
                "out": args.out,
                "format": args.format,
                "seed": args.seed,
            },
        )
    except OSError as err:
        print(f"error: cannot read config: {err}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return run(cfg)
    except (DomainError, spinmoments.BracketError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except NoConvergence as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
