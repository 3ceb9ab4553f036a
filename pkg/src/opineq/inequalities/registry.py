"""
Check registry: default parameter grids and per-trial instance sampling.

Every check id maps to a :class:`CheckSpec` that knows the parameter axes
of the check (weights, exponents, norms, means, functions, maps, bounds)
and how to draw one random instance for a given dimension.
"""
import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

from ..constants import FourPointBounds, RatioBounds, SandwichBounds
from ..errors import ConfigError, UnknownCheckId
from ..maps import map_from_token
from ..means import Mean
from ..norms import Norm
from ..sampling import bounded_pair, hermitian_with_spectrum, ratio_pair, sandwich_pair
from . import checks
from .functions import DECREASING_DEFAULTS, INCREASING_DEFAULTS, parse_function

__all__ = ["CheckSpec", "CHECKS", "CHECK_IDS", "NORM_CHECKS", "get_spec", "DEFAULT_LIMIT_P"]

V_UNIT = (0.0, 0.25, 0.5, 0.75, 1.0)
V_BEYOND = (1.25, 1.5, 2.0, 3.0)
P_POWER = (1.5, 2.0, 3.0)
P_EXP = (0.5, 1.0, 2.0)
DEFAULT_LIMIT_P = (1.0, 0.5, 0.1, 0.05, 0.01, 0.005, 0.001)

NORMS = tuple(map(Norm.parse, ("schatten:inf", "schatten:1", "schatten:2", "kyfan:2")))
# ||X||^p <= c ||X^p|| style inequalities are operator-norm statements
OPERATOR_NORMS = tuple(map(Norm.parse, ("schatten:inf", "kyfan:1")))
MEANS = tuple(
    Mean.parse(s, v=0.5)
    for s in ("arithmetic", "geometric", "harmonic", "power:r=0.5", "power:r=-0.5")
)
MAPS = ("identity", "pinch", "compress:2", "umix:3")

SANDWICH = (SandwichBounds(0.5, 2.0),)
FOUR_POINT = (FourPointBounds(0.5, 1.0, 2.0, 4.0), FourPointBounds(1.0, 1.2, 1.5, 2.0))
RATIO = (RatioBounds(0.5, 2.0), RatioBounds(0.25, 4.0))
RATIO_A_SPECTRUM = (0.5, 2.0)
GT_SPECTRUM = (-2.0, 2.0)
GT_NORM_SPECTRUM = (-1.0, 1.0)


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    axes: Dict[str, Sequence]
    draw: Callable  # (n, rng, cell, force_endpoints) -> tuple of matrices
    call: Callable  # (instance, cell, tol) -> result or results
    norm_valued: bool = False

    def cells(self, overrides=None, dim=None):
        """Cartesian product of the axes (after ``overrides``), skipping
        cells that make no sense in dimension ``dim``."""
        axes = dict(self.axes)
        for key, values in (overrides or {}).items():
            if key not in axes:
                continue
            axes[key] = tuple(values)
        names = list(axes)
        out = []
        for combo in itertools.product(*(axes[k] for k in names)):
            cell = dict(zip(names, combo))
            if dim is not None and not _feasible(cell, dim):
                continue
            out.append(cell)
        return out

    def run(self, n, rng, cell, tol, force_endpoints=False):
        instance = self.draw(n, rng, cell, force_endpoints)
        res = self.call(instance, cell, tol)
        return (list(res) if isinstance(res, (list, tuple)) else [res]), instance


def _feasible(cell, dim):
    norm = cell.get("norm")
    if norm is not None and not norm.applicable(dim):
        return False
    token = cell.get("map", "")
    if token.startswith("compress:") and int(token.split(":")[1]) > dim:
        return False
    return True


def _spectrum_pair(lo, hi):
    def draw(n, rng, cell, force):
        return (
            hermitian_with_spectrum(n, lo, hi, rng, force),
            hermitian_with_spectrum(n, lo, hi, rng, force),
        )

    return draw


def _sandwich(n, rng, cell, force):
    return bounded_pair(n, cell["bounds"], rng, force)


def _four_point(n, rng, cell, force):
    return sandwich_pair(n, cell["bounds"], rng, force)


def _ratio(n, rng, cell, force):
    return ratio_pair(n, cell["bounds"], RATIO_A_SPECTRUM, rng, force)


def _with_map(n, rng, cell, force):
    a, b = bounded_pair(n, cell["bounds"], rng, force)
    return a, b, map_from_token(cell["map"], n, rng)


_SPECS = [
    CheckSpec(
        "gt-trace",
        {},
        _spectrum_pair(*GT_SPECTRUM),
        lambda x, c, tol: checks.check_gt_trace(x[0], x[1], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "gt-classic",
        {"v": V_UNIT, "p": P_EXP, "norm": NORMS},
        _spectrum_pair(*GT_NORM_SPECTRUM),
        lambda x, c, tol: checks.check_gt_classic(x[0], x[1], c["v"], c["p"], c["norm"], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "ah-classic",
        {"v": V_UNIT, "p": P_POWER, "norm": OPERATOR_NORMS, "bounds": SANDWICH},
        _sandwich,
        lambda x, c, tol: checks.check_andohiai_classic(x[0], x[1], c["v"], c["p"], c["norm"], c["bounds"], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "lemma21",
        {"v": V_BEYOND, "bounds": FOUR_POINT},
        _four_point,
        lambda x, c, tol: checks.check_lemma21(x[0], x[1], c["bounds"], c["v"], tol),
    ),
    CheckSpec(
        "cor22",
        {"v": V_BEYOND, "f": INCREASING_DEFAULTS, "bounds": FOUR_POINT},
        _four_point,
        lambda x, c, tol: checks.check_cor22(x[0], x[1], c["bounds"], c["v"], c["f"], tol),
    ),
    CheckSpec(
        "thm23-ah",
        {"v": V_BEYOND, "p": P_POWER, "norm": NORMS, "bounds": FOUR_POINT[:1]},
        _four_point,
        lambda x, c, tol: checks.check_thm23_ah(x[0], x[1], c["bounds"], c["v"], c["p"], c["norm"], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "thm23-gt",
        {"v": V_BEYOND, "p": P_EXP, "norm": NORMS, "bounds": FOUR_POINT[:1]},
        _four_point,
        lambda x, c, tol: checks.check_thm23_gt(x[0], x[1], c["bounds"], c["v"], c["p"], c["norm"], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "ineq6",
        {"v": V_UNIT, "bounds": RATIO},
        _ratio,
        lambda x, c, tol: checks.check_ineq6(x[0], x[1], c["bounds"], c["v"], tol),
    ),
    CheckSpec(
        "lemma31",
        {"v": V_UNIT, "f": INCREASING_DEFAULTS + DECREASING_DEFAULTS, "bounds": SANDWICH},
        _sandwich,
        lambda x, c, tol: checks.check_lemma31(x[0], x[1], c["v"], c["f"], tol),
    ),
    CheckSpec(
        "lemma32",
        {
            "v": V_UNIT,
            "f": INCREASING_DEFAULTS + DECREASING_DEFAULTS,
            "sigma": MEANS,
            "tau": MEANS,
            "bounds": RATIO[:1],
        },
        _ratio,
        lambda x, c, tol: checks.check_lemma32(
            x[0], x[1], c["bounds"], c["v"], c["f"], c["sigma"], c["tau"], tol
        ),
    ),
    CheckSpec(
        "cor33",
        {"v": V_UNIT, "f": INCREASING_DEFAULTS, "sigma": MEANS, "tau": MEANS, "bounds": SANDWICH},
        _sandwich,
        lambda x, c, tol: checks.check_cor33(
            x[0], x[1], c["bounds"], c["v"], c["f"], c["sigma"], c["tau"], tol
        ),
    ),
    CheckSpec(
        "thm34",
        {"v": V_UNIT, "p": P_POWER, "sigma": MEANS, "tau": MEANS, "norm": OPERATOR_NORMS, "bounds": SANDWICH},
        _sandwich,
        lambda x, c, tol: checks.check_thm34(
            x[0], x[1], c["bounds"], c["v"], c["p"], c["sigma"], c["tau"], c["norm"], tol
        ),
        norm_valued=True,
    ),
    CheckSpec(
        "cor35",
        {"v": V_UNIT, "p": P_EXP, "sigma": MEANS, "norm": NORMS, "bounds": SANDWICH},
        _sandwich,
        lambda x, c, tol: checks.check_cor35(x[0], x[1], c["bounds"], c["v"], c["p"], c["sigma"], c["norm"], tol),
        norm_valued=True,
    ),
    CheckSpec(
        "limit36",
        {"v": V_UNIT, "sigma": MEANS, "norm": NORMS, "p_list": (DEFAULT_LIMIT_P,)},
        _spectrum_pair(*GT_NORM_SPECTRUM),
        lambda x, c, tol: checks.check_limit(x[0], x[1], c["v"], c["sigma"], c["norm"], c["p_list"], tol),
    ),
    CheckSpec(
        "polya-e",
        {"v": V_UNIT, "f": INCREASING_DEFAULTS, "sigma": MEANS, "tau": MEANS, "map": MAPS, "bounds": SANDWICH},
        _with_map,
        lambda x, c, tol: checks.check_polya(
            x[0], x[1], c["bounds"], c["v"], c["f"], c["sigma"], c["tau"], x[2], tol
        ),
    ),
    CheckSpec(
        "prop37",
        {
            "v": V_UNIT,
            "f_pair": tuple(zip(DECREASING_DEFAULTS, INCREASING_DEFAULTS)),
            "sigma": MEANS,
            "tau": MEANS,
            "map": MAPS,
            "bounds": SANDWICH,
        },
        _with_map,
        lambda x, c, tol: checks.check_prop37(
            x[0], x[1], c["bounds"], c["v"], c["f_pair"][0], c["f_pair"][1], c["sigma"], c["tau"], x[2], tol
        ),
    ),
]

CHECKS = {spec.check_id: spec for spec in _SPECS}
CHECK_IDS = tuple(CHECKS)
NORM_CHECKS = tuple(s.check_id for s in _SPECS if s.norm_valued)


def get_spec(check_id) -> CheckSpec:
    try:
        return CHECKS[check_id]
    except KeyError:
        raise UnknownCheckId(f"unknown check id {check_id!r}; known: {', '.join(CHECK_IDS)}") from None


def plan_overrides(check_id, v=None, p=None, norms=None, means=None, functions=None, limit_p=None, strict=True):
    """Axis overrides for one check from plan-level lists.

    Weights and exponents are filtered to the range the check accepts. When
    ``strict`` (a single-check plan), an override that leaves an axis empty is
    a configuration error; otherwise that axis keeps its defaults.
    """
    spec = get_spec(check_id)
    out = {}
    if v is not None and "v" in spec.axes:
        if check_id == "lemma21":
            keep = [x for x in v if not 0 <= x <= 1]
        elif spec.axes["v"] is V_BEYOND:
            keep = [x for x in v if x >= 1]
        else:
            keep = [x for x in v if 0 <= x <= 1]
        out["v"] = keep
    if p is not None and "p" in spec.axes:
        floor = 1.0 if spec.axes["p"] is P_POWER else 0.0
        out["p"] = [x for x in p if x > floor]
    if norms is not None and "norm" in spec.axes:
        out["norm"] = [Norm.parse(n) if isinstance(n, str) else n for n in norms]
    if means is not None:
        parsed = [Mean.parse(m, v=0.5) if isinstance(m, str) else m for m in means]
        for axis in ("sigma", "tau"):
            if axis in spec.axes:
                out[axis] = parsed
    if functions is not None and "f" in spec.axes:
        parsed = [parse_function(f) if isinstance(f, str) else f for f in functions]
        if check_id in ("cor22", "cor33", "polya-e"):
            parsed = [f for f in parsed if f.increasing]
        out["f"] = parsed
    if limit_p is not None and "p_list" in spec.axes:
        lst = tuple(float(x) for x in limit_p)
        if any(a <= b for a, b in zip(lst, lst[1:])):
            raise ConfigError(f"limit p list must be strictly descending, got {list(lst)}")
        out["p_list"] = (lst,)
    for axis, values in list(out.items()):
        if not len(values):
            if strict:
                raise ConfigError(f"{check_id}: no admissible values left for axis {axis!r}")
            del out[axis]
    return out


def describe_cell(cell) -> Dict[str, object]:
    """JSON-friendly rendering of a grid cell."""
    out = {}
    for key, value in cell.items():
        if key == "bounds":
            out[key] = value.as_dict()
        elif key == "f_pair":
            out[key] = [str(value[0]), str(value[1])]
        elif key in ("sigma", "tau"):
            out[key] = value.family
        elif key == "p_list":
            out[key] = list(value)
        elif isinstance(value, (int, float, str)):
            out[key] = value
        else:
            out[key] = str(value)
    return out


def axis_values(check_id) -> Dict[str, List]:
    return {k: list(v) for k, v in get_spec(check_id).axes.items()}
