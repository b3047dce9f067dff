"""Plain decimal text serialization of grid functions.

Layout: a header line ``dim h e_1 .. e_dim o_1 .. o_dim`` followed by one
``index mask value`` row per cell in lexicographic order.
"""

from pathlib import Path

import numpy as np
import pandas as pd

from src.grid_domain.grid import GridFunction, MaskedGrid

FLOAT_FORMAT = "%.17g"


def write_grid_function(f: GridFunction, path: Path) -> None:
    grid = f.grid
    header = [str(grid.dim), FLOAT_FORMAT % grid.h]
    header += [str(e) for e in grid.extents]
    header += [FLOAT_FORMAT % o for o in grid.origin]
    table = pd.DataFrame(
        {
            "index": np.arange(grid.mask.size),
            "mask": grid.mask.reshape(-1).astype(int),
            "value": f.full().reshape(-1),
        }
    )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(" ".join(header) + "\n")
        table.to_csv(fh, sep=" ", header=False, index=False, float_format=FLOAT_FORMAT)


def read_grid_function(path: Path) -> GridFunction:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
    dim = int(header[0])
    h = float(header[1])
    extents = tuple(int(e) for e in header[2 : 2 + dim])
    origin = tuple(float(o) for o in header[2 + dim : 2 + 2 * dim])
    table = pd.read_csv(
        path,
        sep=" ",
        header=None,
        skiprows=1,
        names=["index", "mask", "value"],
        float_precision="round_trip",
    )
    mask = table["mask"].to_numpy(dtype=bool).reshape(extents)
    grid = MaskedGrid(origin, h, mask)
    return GridFunction.from_array(grid, table["value"].to_numpy(dtype=float).reshape(extents))
