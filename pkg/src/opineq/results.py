"""The record every inequality check returns."""
import enum
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np

from .hermitian import DEFAULT_TOL, loewner_compare

__all__ = ["Status", "CheckResult", "loewner_result", "norm_result", "not_applicable", "OPERATOR"]

OPERATOR = "operator"


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class CheckResult:
    """Outcome of one inequality verification.

    For norm inequalities ``margin = rhs - lhs`` and ``ratio = lhs / rhs``.
    For Loewner inequalities ``X <= Y`` the margin is ``lambda_min(Y - X)``;
    ``lhs``/``rhs`` are the scalars themselves when the matrices are 1x1 and
    the tag ``"operator"`` otherwise.
    """

    check_id: str
    part: str
    params: Dict[str, Any]
    lhs: Union[float, str, None]
    rhs: Union[float, str, None]
    margin: Optional[float]
    holds: Optional[bool]
    status: Status
    scale: Optional[float] = None
    ratio: Optional[float] = None
    witness: Optional[float] = None
    notes: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self):
        return self.status is Status.PASS

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "part": self.part,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "ratio": self.ratio,
            "scale": self.scale,
            "holds": self.holds,
            "status": self.status.value,
            "witness": self.witness,
            "notes": self.notes,
            "details": self.details,
        }


def _scalar_or_tag(x):
    x = np.asarray(x)
    if x.shape == (1, 1):
        return float(np.real(x[0, 0]))
    return OPERATOR


def loewner_result(check_id, part, params, lhs, rhs, tol=DEFAULT_TOL, notes=""):
    """Result for the operator inequality ``lhs <= rhs``."""
    cmp = loewner_compare(lhs, rhs, tol)
    return CheckResult(
        check_id,
        part,
        dict(params),
        _scalar_or_tag(lhs),
        _scalar_or_tag(rhs),
        cmp.margin,
        cmp.holds,
        Status.PASS if cmp.holds else Status.FAIL,
        scale=cmp.scale,
        notes=notes,
    )


def norm_result(check_id, part, params, lhs, rhs, tol=DEFAULT_TOL, notes="", details=None):
    """Result for the scalar inequality ``lhs <= rhs``."""
    lhs, rhs = float(lhs), float(rhs)
    margin = rhs - lhs
    scale = max(abs(lhs), abs(rhs))
    holds = bool(margin >= -tol.threshold(scale))
    return CheckResult(
        check_id,
        part,
        dict(params),
        lhs,
        rhs,
        margin,
        holds,
        Status.PASS if holds else Status.FAIL,
        scale=scale,
        ratio=lhs / rhs if rhs != 0 else None,
        notes=notes,
        details=dict(details or {}),
    )


def not_applicable(check_id, part, params, witness, notes):
    if witness is None:
        raise ValueError("NotApplicable results need a domain-violation witness")
    return CheckResult(
        check_id,
        part,
        dict(params),
        None,
        None,
        None,
        None,
        Status.NOT_APPLICABLE,
        witness=float(witness),
        notes=notes,
    )
