"""Five-point Dirichlet Laplacian on a masked grid and a plain conjugate-gradient solve."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from src.common.errors import SolverError
from src.common.log import kv
from src.common.types import FloatArray
from src.grid_domain import GridFunction, MaskedGrid, boundary_fraction

logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-10
MIN_BOUNDARY_FRACTION = 1e-3


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """``A x = b`` with ``A`` sparse symmetric positive definite."""

    matrix: sparse.csr_matrix = field(repr=False)
    rhs: FloatArray = field(repr=False)

    @property
    def dimension(self) -> int:
        return int(self.rhs.size)

    def residual(self, x: FloatArray) -> float:
        return float(np.linalg.norm(self.rhs - self.matrix @ x))


def _cell_numbering(grid: MaskedGrid) -> np.ndarray:
    numbering = np.full(grid.mask.size, -1, dtype=np.int64)
    numbering[grid.active_index] = np.arange(grid.n_active)
    return numbering.reshape(grid.extents)


def assemble_poisson(grid: MaskedGrid, f: GridFunction) -> LinearSystem:
    """Discrete ``-Lap u = f`` with ``u = 0`` on the boundary next to missing neighbours.

    The boundary sits ``theta h`` from the cell center (``boundary_fraction``)
    and the missing neighbour is a ghost holding ``-(1 - theta) / theta u``, the
    linear extrapolation through that zero. Each one adds ``(1/theta - 1) / h^2``
    to the diagonal; on the shared face ``theta = 1/2``. The matrix stays a
    symmetric M-matrix.
    """
    numbering = np.pad(_cell_numbering(grid), 1, constant_values=-1)
    inner = tuple(slice(1, -1) for _ in range(grid.dim))
    own = numbering[inner]
    active = own >= 0
    scale = 1.0 / grid.h**2
    diagonal = np.zeros(grid.n_active)
    rows, cols = [], []
    for axis in range(grid.dim):
        for step in (-1, 1):
            window = tuple(
                slice(1 + step, numbering.shape[k] - 1 + step) if k == axis else slice(1, -1)
                for k in range(grid.dim)
            )
            neighbour = numbering[window]
            linked = active & (neighbour >= 0)
            rows.append(own[linked])
            cols.append(neighbour[linked])
            diagonal += 1.0
            missing = own[active & (neighbour < 0)]
            theta = boundary_fraction(grid, missing, axis, step)
            diagonal[missing] += 1.0 / np.maximum(theta, MIN_BOUNDARY_FRACTION) - 1.0
    rows_all = np.concatenate(rows + [np.arange(grid.n_active)])
    cols_all = np.concatenate(cols + [np.arange(grid.n_active)])
    data = np.concatenate([-np.ones(sum(r.size for r in rows)), diagonal]) * scale
    n = grid.n_active
    matrix = sparse.csr_matrix((data, (rows_all, cols_all)), shape=(n, n))
    return LinearSystem(matrix, np.array(f.values, dtype=float))


def iteration_cap(dimension: int, rtol: float) -> int:
    return int(math.ceil(50 * math.sqrt(dimension) * math.log(1.0 / rtol)))


def conjugate_gradient(
    system: LinearSystem, rtol: float = DEFAULT_RTOL, max_iter: int | None = None
) -> tuple[FloatArray, int, float]:
    """Unpreconditioned CG from ``x = 0`` until ``|r| <= rtol |b|``.

    Returns the solution, the iteration count and the final relative residual.
    """
    A, b = system.matrix, system.rhs
    b_norm = float(np.linalg.norm(b))
    x = np.zeros_like(b)
    if b_norm == 0.0:
        return x, 0, 0.0
    cap = iteration_cap(system.dimension, rtol) if max_iter is None else max_iter
    r = b.copy()
    d = r.copy()
    rr = float(r @ r)
    for k in range(1, cap + 1):
        Ad = A @ d
        alpha = rr / float(d @ Ad)
        x += alpha * d
        r -= alpha * Ad
        rr_next = float(r @ r)
        if math.sqrt(rr_next) <= rtol * b_norm:
            return x, k, math.sqrt(rr_next) / b_norm
        d = r + (rr_next / rr) * d
        rr = rr_next
    relative = math.sqrt(rr) / b_norm
    logger.warning(kv("cg_stalled", unknowns=system.dimension, iterations=cap, residual=relative))
    raise SolverError("solver stalled", f"relative residual {relative:.3e} after {cap} iterations")
