"""
Verification suites: plans, the trial runner and report files.

A plan lists check ids, dimensions, a trial count and a master seed. For
every (check, dimension) pair the runner executes ``trials`` trials; trial
``i`` draws its matrices from the stream keyed by ``(seed, i)`` and labelled
by the check id and dimension, and uses the grid cell
``cells[(i + k * trials) % len(cells)]`` where ``k`` is the position of the
dimension in the plan. Results are sorted by (check, dimension, trial)
before reporting, so serial and parallel runs produce identical reports.
"""
import csv
import datetime as _dt
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

from . import __version__
from .errors import ConfigError
from .hermitian import TolerancePolicy
from .inequalities.registry import CHECK_IDS, DEFAULT_LIMIT_P, get_spec, plan_overrides
from .means import Mean
from .norms import Norm
from .results import Status
from .sampling import SamplerSeed, generator, stream_label

__all__ = ["SuitePlan", "run_verify", "emit_report", "report_to_json", "report_to_csv", "SUITES"]

SUITES = {
    "standard": {"checks": list(CHECK_IDS), "dims": [1, 2, 3, 5, 8], "trials": 500},
    "quick": {"checks": list(CHECK_IDS), "dims": [1, 2, 3], "trials": 20},
}


@dataclass
class SuitePlan:
    checks: List[str] = field(default_factory=lambda: list(CHECK_IDS))
    dims: List[int] = field(default_factory=lambda: [1, 2, 3, 5, 8])
    trials: int = 500
    seed: int = 0
    v: Optional[List[float]] = None
    p: Optional[List[float]] = None
    norms: Optional[List[str]] = None
    means: Optional[List[str]] = None
    functions: Optional[List[str]] = None
    limit_p: List[float] = field(default_factory=lambda: list(DEFAULT_LIMIT_P))
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def validate(self):
        if not self.checks:
            raise ConfigError("plan lists no checks")
        for check_id in self.checks:
            get_spec(check_id)
        if not self.dims or any(int(d) != d or d < 1 for d in self.dims):
            raise ConfigError(f"dims must be a non-empty list of positive integers, got {self.dims}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        for name in ("v", "p", "norms", "means", "functions", "limit_p"):
            value = getattr(self, name)
            if value is not None and not len(value):
                raise ConfigError(f"{name} must not be empty")
        try:
            self.tolerance()
            for n in self.norms or ():
                Norm.parse(n)
            for m in self.means or ():
                Mean.parse(m, v=0.5)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for check_id in self.checks:
            self.overrides(check_id)
        return self

    def tolerance(self):
        return TolerancePolicy(self.abs_tol, self.rel_tol)

    def overrides(self, check_id):
        try:
            return plan_overrides(
                check_id,
                v=self.v,
                p=self.p,
                norms=self.norms,
                means=self.means,
                functions=self.functions,
                limit_p=self.limit_p,
                strict=len(self.checks) == 1,
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown plan keys: {sorted(unknown)}")
        return cls(**data)


def _run_task(plan, check_id, dim_pos, trial_range):
    spec = get_spec(check_id)
    dim = plan.dims[dim_pos]
    cells = spec.cells(plan.overrides(check_id), dim=dim)
    if not cells:
        return []
    tol = plan.tolerance()
    stream = stream_label(check_id, dim)
    out = []
    for trial in trial_range:
        cell = cells[(trial + dim_pos * plan.trials) % len(cells)]
        rng = generator(SamplerSeed(plan.seed, trial, stream))
        results, _ = spec.run(dim, rng, cell, tol)
        for res in results:
            res.params["seed"] = plan.seed
            res.params["trial"] = trial
            out.append(res)
    return out


def _tasks(plan, chunk):
    for check_id in plan.checks:
        for dim_pos in range(len(plan.dims)):
            for start in range(0, plan.trials, chunk):
                yield check_id, dim_pos, range(start, min(start + chunk, plan.trials))


def _summary(plan, results):
    summary = {c: {"pass": 0, "fail": 0, "not_applicable": 0} for c in plan.checks}
    key = {Status.PASS: "pass", Status.FAIL: "fail", Status.NOT_APPLICABLE: "not_applicable"}
    for res in results:
        summary[res.check_id][key[res.status]] += 1
    return summary


def run_verify(plan: SuitePlan, workers=1, chunk=50):
    """Run every (check, dimension, trial) of ``plan``.

    Returns
    -------
    report : dict
        ``tool_version``, ``timestamp``, ``plan``, ``results`` (dicts in
        (check, dimension, trial) order) and per-check ``summary`` counts.
    exit_code : int
        0 when no result failed, 1 otherwise.

    Raises
    ------
    ConfigError, UnknownCheckId
    """
    plan.validate()
    tasks = list(_tasks(plan, chunk))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, *zip(*((plan, *t) for t in tasks))))
    else:
        chunks = [_run_task(plan, *t) for t in tasks]
    order = {c: i for i, c in enumerate(plan.checks)}
    indexed = [
        (order[t[0]], t[1], res.params["trial"], j, res)
        for t, chunk_results in zip(tasks, chunks)
        for j, res in enumerate(chunk_results)
    ]
    indexed.sort(key=lambda x: x[:4])
    results = [x[-1] for x in indexed]
    summary = _summary(plan, results)
    report = {
        "tool_version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "plan": plan.to_dict(),
        "results": [res.to_dict() for res in results],
        "summary": summary,
    }
    failed = any(s["fail"] for s in summary.values())
    return report, int(failed)


def _finite(x):
    # JSON has no inf/nan; they never occur in margins but may in details
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, dict):
        return {k: _finite(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_finite(v) for v in x]
    return x


def report_to_json(report):
    return json.dumps(_finite(report), indent=1, sort_keys=True) + "\n"


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value)
    elif isinstance(value, float):
        out[prefix] = repr(value)
    elif value is None:
        out[prefix] = ""
    else:
        out[prefix] = str(value)


def report_to_csv(report):
    """One row per result, nested keys flattened with dots (``params.v``)."""
    rows = []
    for res in report["results"]:
        flat = {}
        _flatten("", res, flat)
        rows.append(flat)
    columns = sorted({k for row in rows for k in row})
    front = [c for c in ("check_id", "part", "status", "margin", "lhs", "rhs", "ratio") if c in columns]
    columns = front + [c for c in columns if c not in front]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit_report(report, fmt="json", path=None):
    """Serialize ``report`` as JSON or CSV; write it to ``path`` if given.

    Floats are written with ``repr`` (shortest round-trip form), so margins
    survive a write/read cycle exactly.
    """
    if fmt == "json":
        text = report_to_json(report)
    elif fmt == "csv":
        text = report_to_csv(report)
    else:
        raise ConfigError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
