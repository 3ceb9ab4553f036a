"""Empirical sharpness of the constants in the norm inequalities."""
import hashlib
import itertools

import numpy as np

from ..errors import UnknownCheckId
from ..hermitian import DEFAULT_TOL
from ..means import Mean
from ..norms import Norm
from ..sampling import SamplerSeed, generator, stream_label
from .functions import parse_function
from .registry import describe_cell, get_spec

__all__ = ["tightness_scan"]


def _digest(instance):
    h = hashlib.sha256()
    for x in instance:
        if isinstance(x, np.ndarray):
            h.update(np.ascontiguousarray(x).tobytes())
    return h.hexdigest()[:16]


def _coerce(axis, value):
    if not isinstance(value, str):
        return value
    if axis == "norm":
        return Norm.parse(value)
    if axis in ("sigma", "tau"):
        return Mean.parse(value, v=0.5)
    if axis == "f":
        return parse_function(value)
    return value


def _grid_cells(spec, param_grid):
    """One scan cell per combination of the axes in ``param_grid``; axes not
    mentioned are pinned to their first default value."""
    base = {k: v[0] for k, v in spec.axes.items() if len(v)}
    if isinstance(param_grid, dict):
        names = list(param_grid)
        if not names:
            return []
        combos = itertools.product(*(param_grid[k] for k in names))
        param_grid = [dict(zip(names, combo)) for combo in combos]
    return [dict(base, **{k: _coerce(k, v) for k, v in cell.items()}) for cell in param_grid]


def tightness_scan(check_id, param_grid, trials_per_cell, seed, dims=(1, 2, 3), tol=DEFAULT_TOL, force_endpoints=True):
    """Largest observed ``lhs / rhs`` per grid cell for a norm-valued check.

    Parameters
    ----------
    check_id : str
        One of the norm-valued check ids (``gt-classic``, ``thm23-ah`` ...).
    param_grid : dict or list of dict
        Either axes to take the product of (``{"v": [1, 1.5]}``) or explicit
        cells. Axes left unspecified use the first default value.
    trials_per_cell : int
        Random instances per cell and dimension.
    seed : int
        Master seed.

    Returns
    -------
    list of dict
        One row per (cell, part) with ``max_ratio``, the trial and dimension
        at which it was attained, a digest of that instance and a
        ``violation`` flag set when ``max_ratio > 1 + tol``.
    """
    spec = get_spec(check_id)
    if not spec.norm_valued:
        raise UnknownCheckId(f"{check_id!r} is not a norm-valued check")
    rows = []
    for cell_index, cell in enumerate(_grid_cells(spec, param_grid)):
        best = {}
        for n in dims:
            if not _feasible_for(spec, cell, n):
                continue
            for trial in range(trials_per_cell):
                stream = stream_label("scan", check_id, cell_index, n)
                rng = generator(SamplerSeed(seed, trial, stream))
                results, instance = spec.run(n, rng, cell, tol, force_endpoints)
                for res in results:
                    if res.ratio is None:
                        continue
                    cur = best.get(res.part)
                    if cur is None or res.ratio > cur["max_ratio"]:
                        best[res.part] = {
                            "max_ratio": res.ratio,
                            "dim": n,
                            "trial": trial,
                            "digest": _digest(instance),
                        }
        for part, row in best.items():
            rows.append(
                {
                    "check_id": check_id,
                    "part": part,
                    "cell": describe_cell(cell),
                    "max_ratio": row["max_ratio"],
                    "argmax": {"dim": row["dim"], "trial": row["trial"], "digest": row["digest"]},
                    "violation": bool(row["max_ratio"] > 1 + tol.rel_tol),
                }
            )
    return rows


def _feasible_for(spec, cell, n):
    return bool(spec.cells({k: [v] for k, v in cell.items()}, dim=n))
