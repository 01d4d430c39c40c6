"""Free-space singlet-fraction data: f_s(T) at P=0 and the (T, P) map.

Writes freespace_fs_vs_T.csv and freespace_fs_map.csv into ./data.
"""

import pathlib

import numpy as np

from singletgas.cli import build_config, run

OUT = pathlib.Path("data")
OUT.mkdir(exist_ok=True)

line = build_config(
    {
        "workflow": "freespace",
        "t_grid": np.round(np.linspace(0.02, 1.5, 75), 6).tolist(),
        "p_grid": [0.0],
        "out": str(OUT / "freespace_fs_vs_T.csv"),
    }
)
run(line)

heatmap = build_config(
    {
        "workflow": "freespace",
        "t_grid": np.round(np.linspace(0.05, 1.5, 30), 6).tolist(),
        "p_grid": np.round(np.linspace(0.0, 0.99, 101), 6).tolist(),
        "out": str(OUT / "freespace_fs_map.csv"),
    }
)
run(heatmap)

threshold = build_config(
    {"workflow": "threshold", "out": str(OUT / "freespace_threshold.csv")}
)
run(threshold)
print("wrote", sorted(p.name for p in OUT.glob("freespace*")))
