import math

import numpy as np
import pytest

from opineq.constants import FourPointBounds, RatioBounds, SandwichBounds, ratio_C
from opineq.errors import OverflowGuard, UnknownCheckId
from opineq.hermitian import DEFAULT_TOL, hexp
from opineq.inequalities import checks
from opineq.inequalities.functions import parse_function
from opineq.inequalities.registry import CHECK_IDS, DEFAULT_LIMIT_P, MEANS, get_spec
from opineq.inequalities.scan import tightness_scan
from opineq.maps import Identity, map_from_token
from opineq.means import arithmetic, geometric, harmonic, power
from opineq.norms import kyfan, schatten
from opineq.results import Status
from opineq.sampling import (
    SamplerSeed,
    bounded_pair,
    generator,
    hermitian_with_spectrum,
    ratio_pair,
    sandwich_pair,
    stream_label,
)

from property_runs import scalar_equivalence

INF = schatten(np.inf)
SB = SandwichBounds(0.5, 2.0)
FP = FourPointBounds(0.5, 1.0, 2.0, 4.0)


def _rng(name, i=0):
    return generator(SamplerSeed(21, i, stream_label(name)))


def _one(x):
    return np.array([[float(x)]])


def _herm_pair(n, lo, hi, rng):
    return hermitian_with_spectrum(n, lo, hi, rng), hermitian_with_spectrum(n, lo, hi, rng)


# -- Golden-Thompson --------------------------------------------------------


def test_gt_trace_examples():
    res = checks.check_gt_trace(np.diag([0.3, -1.0]), np.diag([1.2, 0.4]))
    assert abs(res.margin) <= 1e-10 and res.passed
    res = checks.check_gt_trace(np.array([[0.0, 1.0], [1.0, 0.0]]), np.diag([1.0, -1.0]))
    assert res.margin > 1e-3 and res.passed
    a = hermitian_with_spectrum(3, -1, 1, _rng("gt"))
    assert abs(checks.check_gt_trace(a, a).margin) <= 1e-12


def test_gt_trace_guard():
    with pytest.raises(OverflowGuard):
        checks.check_gt_trace(np.diag([60.0]), np.diag([-50.0]))


def test_gt_classic_endpoints_and_commuting():
    a, b = _herm_pair(3, -1, 1, _rng("gtc"))
    for v, side in ((0.0, a), (1.0, b)):
        res = checks.check_gt_classic(a, b, v, 2.0, INF)
        assert res.lhs == pytest.approx(np.linalg.eigvalsh(hexp(side))[-1], rel=1e-12)
        assert abs(res.margin) <= 1e-10 * res.rhs
    da, db = np.diag([0.2, -0.7, 1.0]), np.diag([0.5, 0.1, -0.3])
    for p in (0.5, 1.0, 3.0):
        for v in (0.25, 0.6):
            assert abs(checks.check_gt_classic(da, db, v, p, schatten(2)).margin) <= 1e-12


def test_gt_classic_random():
    for i in range(20):
        a, b = _herm_pair(3, -1, 1, _rng("gtc", i))
        assert checks.check_gt_classic(a, b, 0.5, 2.0, schatten(2)).passed


# -- Ando-Hiai ---------------------------------------------------------------


def test_ando_hiai_equal_operands():
    a = hermitian_with_spectrum(3, 0.5, 2, _rng("ah"))
    forward, reverse = checks.check_andohiai_classic(a, a, 0.5, 2.0, INF, SB)
    assert abs(forward.margin) <= 1e-12 and reverse.passed
    forward, _ = checks.check_andohiai_classic(_one(1.5), _one(1.5), 0.3, 3.0, INF, SB)
    assert forward.lhs == pytest.approx(1.5**3, rel=1e-14) and abs(forward.margin) <= 1e-12


def test_ando_hiai_random_pairs():
    for i in range(20):
        a, b = bounded_pair(2, SB, _rng("ah", i))
        assert all(r.passed for r in checks.check_andohiai_classic(a, b, 0.5, 2.0, INF, SB))


def test_ando_hiai_rejects_out_of_bounds():
    with pytest.raises(ValueError):
        checks.check_andohiai_classic(_one(3), _one(1), 0.5, 2.0, INF, SB)
    with pytest.raises(ValueError):
        checks.check_andohiai_classic(_one(1), _one(1), 0.5, 1.0, INF, SB)


def test_reverse_ando_hiai_needs_operator_norm():
    # the reverse bound is sharp for the operator norm only: the trace norm breaks it
    cell = dict(v=0.5, p=3.0, norm=schatten(1), bounds=SB)
    rng = generator(SamplerSeed(0, 0, stream_label("opnorm", 3)))
    results, _ = get_spec("ah-classic").run(3, rng, cell, DEFAULT_TOL, True)
    parts = {r.part: r for r in results}
    assert parts["forward"].passed
    assert parts["reverse"].status is Status.FAIL and parts["reverse"].ratio > 1.5


def test_thm34_eq10_needs_operator_norm():
    cell = dict(v=0.5, p=3.0, sigma=arithmetic(0.5), tau=arithmetic(0.5), norm=schatten(1), bounds=SB)
    rng = generator(SamplerSeed(0, 0, stream_label("opnorm", 5)))
    results, _ = get_spec("thm34").run(5, rng, cell, DEFAULT_TOL, True)
    parts = {r.part: r for r in results}
    assert parts["eq10"].status is Status.FAIL
    assert parts["eq12"].passed


# -- reversed inequalities for weights beyond [0, 1] -------------------------


def test_lemma21_scalar_equality():
    res = {r.part: r for r in checks.check_lemma21(_one(1), _one(4), FourPointBounds(1, 1, 4, 4), 2.0)}
    for part in ("geometric-lower", "geometric-upper"):
        assert res[part].passed and abs(res[part].margin) <= 1e-12
    assert res["geometric-lower"].rhs == pytest.approx(16.0)


def test_lemma21_harmonic_not_applicable_with_witness():
    res = {r.part: r for r in checks.check_lemma21(_one(1), _one(3), FourPointBounds(1, 1, 3, 3), 2.0)}
    for part in ("harmonic-lower", "harmonic-upper"):
        assert res[part].status is Status.NOT_APPLICABLE
        assert res[part].witness == pytest.approx(1 - 2 + 2 / 3)


def test_lemma21_random_geometric_chain():
    for i in range(20):
        a, b = sandwich_pair(3, FP, _rng("l21", i))
        res = {r.part: r for r in checks.check_lemma21(a, b, FP, 1.5)}
        assert res["geometric-lower"].passed and res["geometric-upper"].passed
    with pytest.raises(ValueError):
        checks.check_lemma21(a, b, FP, 0.5)


def test_cor22_examples():
    res = checks.check_cor22(_one(1), _one(4), FourPointBounds(1, 1, 4, 4), 2.0, parse_function("pow:0.5"))
    assert res.lhs == pytest.approx(4.0, rel=1e-14)
    assert res.rhs == pytest.approx(16 / math.sqrt(7), rel=1e-14)
    assert res.passed
    a, b = sandwich_pair(2, FP, _rng("c22"))
    assert abs(checks.check_cor22(a, b, FP, 1.0, parse_function("log1p")).margin) <= 1e-12
    for i in range(10):
        a, b = sandwich_pair(3, FP, _rng("c22", i))
        assert checks.check_cor22(a, b, FP, 1.5, parse_function("moebius:1")).passed


def test_thm23_examples():
    res = checks.check_thm23_ah(_one(1), _one(4), FourPointBounds(1, 1, 4, 4), 2.0, 2.0, INF)
    assert res.lhs == pytest.approx(256.0, rel=1e-13)
    assert res.details["C_p"] == pytest.approx(ratio_C(1, 16, 2), rel=1e-14) == pytest.approx(256 / 31)
    assert res.rhs == pytest.approx(256 / 31 * 256, rel=1e-13)
    a, b = sandwich_pair(3, FP, _rng("t23"))
    res = checks.check_thm23_ah(a, b, FP, 1.0, 2.0, INF)
    assert res.details["C_p"] == 1.0 and abs(res.margin) <= 1e-10 * res.rhs
    for i in range(10):
        a, b = sandwich_pair(2, FP, _rng("t23", i))
        assert checks.check_thm23_ah(a, b, FP, 1.5, 3.0, kyfan(1)).passed
        assert checks.check_thm23_gt(a, b, FP, 1.5, 3.0, kyfan(1)).passed


# -- ratio-bounded pairs -----------------------------------------------------


def test_ineq6_examples():
    a = hermitian_with_spectrum(3, 0.5, 2, _rng("i6"))
    for r in checks.check_ineq6(a, a, RatioBounds(1, 1), 0.4):
        assert abs(r.margin) <= 1e-12
    lower, upper = checks.check_ineq6(_one(1), _one(2), RatioBounds(2, 2), 0.5)
    assert upper.lhs == pytest.approx(math.sqrt(2), rel=1e-15)
    assert abs(lower.margin) <= 1e-14 and abs(upper.margin) <= 1e-14
    rb = RatioBounds(0.5, 2)
    for i in range(20):
        a, b = ratio_pair(3, rb, (0.5, 2), _rng("i6", i))
        assert all(r.passed for r in checks.check_ineq6(a, b, rb, 0.3))


def test_lemma31_examples():
    a, b = bounded_pair(2, SB, _rng("l31"))
    f = parse_function("pow:0.5")
    assert abs(checks.check_lemma31(a, a, 0.5, f).margin) <= 1e-12
    assert abs(checks.check_lemma31(a, b, 0.0, f).margin) <= 1e-12
    dec = checks.check_lemma31(a, b, 0.5, parse_function("invpow:1"))
    assert dec.part == "decreasing" and dec.passed
    for i in range(20):
        a, b = bounded_pair(2, SB, _rng("l31", i))
        assert checks.check_lemma31(a, b, 0.5, f).passed


def test_lemma32_examples():
    a = hermitian_with_spectrum(3, 0.5, 2, _rng("l32"))
    f = parse_function("pow:0.5")
    for r in checks.check_lemma32(a, a, RatioBounds(1, 1), 0.3, f, geometric(0.5), geometric(0.5)):
        assert abs(r.margin) <= 1e-12
    rb = RatioBounds(0.5, 2)
    for i in range(20):
        a, b = ratio_pair(3, rb, (0.5, 2), _rng("l32", i))
        res = checks.check_lemma32(a, b, rb, 0.25, parse_function("log1p"), power(0.5, 0.5), harmonic(0.5))
        assert all(r.passed for r in res)


def test_lemma32_rejects_means_outside_band():
    with pytest.raises(ValueError):
        checks.check_lemma32(_one(1), _one(1), RatioBounds(1, 1), 0.5, parse_function("pow:0.5"), power(2, 0.5), geometric(0.5))


# -- sandwich-bounded pairs --------------------------------------------------


def test_cor33_examples():
    f = parse_function("pow:0.5")
    a, b = bounded_pair(3, SB, _rng("c33"))
    for r in checks.check_cor33(a, b, SB, 0.0, f, geometric(0.5), harmonic(0.5)):
        assert abs(r.margin) <= 1e-12
    for r in checks.check_cor33(_one(1), _one(4), SandwichBounds(1, 4), 0.5, f, geometric(0.5), geometric(0.5)):
        assert r.passed and r.margin > 0
    for i in range(10):
        a, b = bounded_pair(5, SB, _rng("c33", i))
        assert all(r.passed for r in checks.check_cor33(a, b, SB, 0.5, f, arithmetic(0.5), harmonic(0.5)))


def test_thm34_examples():
    eq10, eq12 = checks.check_thm34(_one(1), _one(4), SandwichBounds(1, 4), 0.5, 2.0, geometric(0.5), geometric(0.5), INF)
    assert eq10.lhs == pytest.approx(4.0, rel=1e-14)
    assert eq10.details["L"] == pytest.approx(289 / 64, rel=1e-12)
    assert eq10.rhs == pytest.approx(289 / 64 * 4, rel=1e-12)
    assert eq10.passed and eq12.passed
    m = np.eye(2) * 0.5
    for r in checks.check_thm34(m, m, SB, 0.5, 2.0, arithmetic(0.5), harmonic(0.5), INF):
        assert r.passed and r.ratio <= 1
    for i in range(10):
        a, b = bounded_pair(3, SB, _rng("t34", i))
        assert all(r.passed for r in checks.check_thm34(a, b, SB, 0.5, 2.0, arithmetic(0.5), harmonic(0.5), INF))


def test_cor35_examples():
    da, db = np.diag([0.6, 1.5]), np.diag([1.9, 0.7])
    for r in checks.check_cor35(da, db, SB, 0.5, 1.0, geometric(0.5), INF):
        assert r.passed and r.ratio <= 1 + 1e-12
    a, b = bounded_pair(2, SB, _rng("c35"))
    upper, lower = checks.check_cor35(a, b, SB, 0.0, 1.5, harmonic(0.5), INF)
    assert upper.lhs == pytest.approx(lower.lhs, rel=1e-12)
    for i in range(10):
        a, b = bounded_pair(2, SB, _rng("c35", i))
        assert all(r.passed for r in checks.check_cor35(a, b, SB, 0.4, 1.5, power(-0.5, 0.5), INF))


# -- the p -> 0 limit --------------------------------------------------------


def test_limit_commuting_and_equal_operands():
    da, db = np.diag([0.3, -0.8]), np.diag([0.5, 0.9])
    res = checks.check_limit(da, db, 0.5, geometric(0.5), INF, DEFAULT_LIMIT_P)
    assert res.passed and max(res.details["errors"]) <= 1e-12
    a = hermitian_with_spectrum(3, -1, 1, _rng("lim"))
    for sigma in MEANS:
        res = checks.check_limit(a, a, 0.4, sigma, INF, DEFAULT_LIMIT_P)
        assert max(res.details["errors"]) <= 1e-10


def test_limit_harmonic_error_decreases():
    for i in range(10):
        a, b = _herm_pair(2, -1, 1, _rng("lim", i))
        res = checks.check_limit(a, b, 0.5, harmonic(0.5), INF, DEFAULT_LIMIT_P)
        assert res.passed and res.details["monotone"]
        assert res.details["errors"][-1] <= 0.01 * res.details["target"]


def test_limit_argument_errors():
    a = np.eye(2)
    with pytest.raises(ValueError):
        checks.check_limit(a, a, 0.5, geometric(0.5), INF, [0.1, 0.5])
    with pytest.raises(OverflowGuard):
        checks.check_limit(a, a, 0.5, geometric(0.5), INF, [1.0, 1e-5])


def test_limit_error_can_rise_before_it_falls():
    # A genuine instance where err(p) grows from p = 1 to p = 0.5 for a mean
    # above the geometric one; the limit itself still converges.
    cell = dict(v=0.25, sigma=power(0.5, 0.5), norm=INF, p_list=DEFAULT_LIMIT_P)
    rng = generator(SamplerSeed(0, 132, stream_label("limit36", 3)))
    (res,), _ = get_spec("limit36").run(3, rng, cell, DEFAULT_TOL)
    errs = res.details["errors"]
    assert res.status is Status.FAIL and not res.details["monotone"]
    assert errs[1] - errs[0] > 5e-4
    assert errs[-1] <= 1e-4 * res.details["target"]


# -- Polya-type --------------------------------------------------------------


def test_polya_examples():
    a = hermitian_with_spectrum(3, 0.5, 2, _rng("pol"))
    res = checks.check_polya(a, a, SB, 0.5, parse_function("pow:0.5"), geometric(0.5), geometric(0.5), Identity())
    assert res.passed and res.margin >= 0
    for i in range(10):
        rng = _rng("pol", i)
        a, b = bounded_pair(4, SB, rng)
        phi = map_from_token("pinch", 4, rng)
        assert checks.check_polya(a, b, SB, 0.5, parse_function("log1p"), arithmetic(0.5), harmonic(0.5), phi).passed


def test_prop37_examples():
    sb = SandwichBounds(1, 4)
    eee, eq3 = checks.check_prop37(
        _one(2), _one(2), sb, 0.5, parse_function("invpow:1"), parse_function("pow:0.5"), geometric(0.5), geometric(0.5), Identity()
    )
    assert eee.params["K"] == pytest.approx(25 / 16, rel=1e-10)
    assert eee.margin == pytest.approx((25 / 16 - 1) * 0.5, rel=1e-9)
    assert eq3.passed
    for i in range(10):
        rng = _rng("p37", i)
        a, b = bounded_pair(3, SB, rng)
        phi = map_from_token("compress:2", 3, rng)
        res = checks.check_prop37(a, b, SB, 0.5, parse_function("invpow:0.5"), parse_function("pow:0.5"), geometric(0.5), power(0.5, 0.5), phi)
        assert all(r.passed for r in res)


# -- cross-cutting properties --------------------------------------------------


@pytest.mark.parametrize("check_id", CHECK_IDS)
def test_scalar_oracle_agreement(check_id):
    worst, compared, _ = scalar_equivalence(check_id, draws=60)
    assert compared > 0
    assert worst <= 1e-12


@pytest.mark.parametrize("check_id", CHECK_IDS)
def test_reruns_are_bit_identical(check_id):
    spec = get_spec(check_id)
    cell = spec.cells(dim=3)[0]
    runs = []
    for _ in range(2):
        rng = generator(SamplerSeed(99, 4, stream_label(check_id, 3)))
        results, _ = spec.run(3, rng, cell, DEFAULT_TOL)
        runs.append([r.to_dict() for r in results])
    assert runs[0] == runs[1]


def test_not_applicable_always_has_witness():
    for check_id in CHECK_IDS:
        spec = get_spec(check_id)
        for i, cell in enumerate(spec.cells(dim=2)[:40]):
            results, _ = spec.run(2, generator(SamplerSeed(3, i, stream_label(check_id))), cell, DEFAULT_TOL)
            for r in results:
                if r.status is Status.NOT_APPLICABLE:
                    assert r.witness is not None and math.isfinite(r.witness)


# -- tightness -----------------------------------------------------------------


def test_tightness_thm23_weight_one_is_sharp():
    rows = tightness_scan("thm23-ah", {"v": [1.0, 1.5, 2.0]}, 10, seed=0)
    assert rows and not any(r["violation"] for r in rows)
    at_one = [r for r in rows if r["cell"]["v"] == 1.0]
    assert at_one and abs(max(r["max_ratio"] for r in at_one) - 1) <= 1e-9


def test_tightness_cor35_over_p():
    rows = tightness_scan("cor35", {"p": [0.5, 1.0, 2.0]}, 10, seed=1)
    assert {r["cell"]["p"] for r in rows} == {0.5, 1.0, 2.0}
    assert all(r["max_ratio"] <= 1 + 1e-12 and not r["violation"] for r in rows)


def test_tightness_edge_cases():
    assert tightness_scan("gt-classic", {}, 5, seed=0) == []
    with pytest.raises(UnknownCheckId):
        tightness_scan("ineq6", {"v": [0.5]}, 5, seed=0)
    with pytest.raises(UnknownCheckId):
        tightness_scan("nope", {"v": [0.5]}, 5, seed=0)


def test_tightness_row_points_at_instance():
    row = tightness_scan("gt-classic", {"norm": ["schatten:2"]}, 4, seed=2)[0]
    assert set(row["argmax"]) == {"dim", "trial", "digest"} and len(row["argmax"]["digest"]) == 16
    assert 0 < row["max_ratio"] <= 1 + 1e-12
