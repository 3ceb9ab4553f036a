"""
Numerical checks of Golden-Thompson and Ando-Hiai type inequalities.

Each ``check_*`` function takes concrete matrices and parameters, evaluates
both sides of one inequality and returns :class:`~opineq.results.CheckResult`
records (one per displayed inequality). Domain problems that make a side
undefined yield ``NotApplicable`` results carrying the offending value;
violated hypotheses (matrices outside the stated bounds, bad weights) raise
``ValueError`` because they are caller errors.
"""
import functools
import math

import numpy as np

from ..constants import (
    L_from_ratio,
    K_mond_pecaric,
    RatioBounds,
    SandwichBounds,
    gamma_p,
    kantorovich_K,
    ratio_C,
    xi_psi,
)
from ..errors import DomainViolation, OverflowGuard
from ..hermitian import DEFAULT_TOL, apply_scalar_function, hexp, hpow, spectral_norm, spectrum_bounds
from ..maps import apply_map
from ..means import evaluate_mean, geometric, harmonic, verify_betweenness
from ..norms import trace_of
from ..results import Status, loewner_result, norm_result, not_applicable

__all__ = [
    "check_gt_trace",
    "check_gt_classic",
    "check_andohiai_classic",
    "check_lemma21",
    "check_cor22",
    "check_thm23_ah",
    "check_thm23_gt",
    "check_ineq6",
    "check_lemma31",
    "check_lemma32",
    "check_cor33",
    "check_thm34",
    "check_cor35",
    "check_limit",
    "check_polya",
    "check_prop37",
]

EXP_GUARD = 100.0
MIN_LIMIT_P = 1e-4
# relative roundoff of the mean before the 1/p-th root is taken
ROOT_ROUNDOFF = 1e-13


def _fn(f, x):
    return apply_scalar_function(x, f, (0.0, np.inf))


def _scaled(c, x):
    out = c * np.asarray(x)
    out.setflags(write=False)
    return out


def _arith(a, b, v):
    out = (1 - v) * np.asarray(a) + v * np.asarray(b)
    out = (out + out.conj().T) / 2
    out.setflags(write=False)
    return out


def _require_spectrum(x, lo, hi, name):
    wmin, wmax = spectrum_bounds(x)
    slack = 1e-9 * max(1.0, abs(lo), abs(hi))
    if wmin < lo - slack or wmax > hi + slack:
        raise ValueError(f"{name} has spectrum [{wmin}, {wmax}], outside [{lo}, {hi}]")


def _require_unit_weight(v):
    if not 0 <= v <= 1:
        raise ValueError(f"weight must lie in [0, 1], got {v}")


def _require_between(*means):
    for mean in means:
        if not verify_betweenness(mean):
            raise ValueError(f"{mean} is not between the harmonic and arithmetic means")


def _dim(a):
    return int(np.shape(a)[0])


@functools.lru_cache(maxsize=256)
def _mond_pecaric(f, reciprocal, m, M):
    g = f.reciprocal if reciprocal else f
    return K_mond_pecaric(g, SandwichBounds(m, M))


def check_gt_trace(a, b, tol=DEFAULT_TOL):
    """``tr exp(A + B) <= tr(exp(A) exp(B))`` for Hermitian ``A, B``."""
    size = spectral_norm(a) + spectral_norm(b)
    if size > EXP_GUARD:
        raise OverflowGuard(f"||A|| + ||B|| = {size} exceeds {EXP_GUARD}")
    lhs = trace_of(hexp(np.asarray(a) + np.asarray(b)))
    rhs = trace_of(hexp(a) @ hexp(b), imag_tol=1e-10)
    return norm_result("gt-trace", "", {"dim": _dim(a)}, lhs, rhs, tol)


def check_gt_classic(a, b, v, p, norm, tol=DEFAULT_TOL):
    """``||(e^{pA} #_v e^{pB})^{1/p}|| <= ||e^{A nabla_v B}||``, ``v`` in [0, 1]."""
    _require_unit_weight(v)
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    size = p * max(spectral_norm(a), spectral_norm(b))
    if size > EXP_GUARD:
        raise OverflowGuard(f"p * ||.|| = {size} exceeds {EXP_GUARD}")
    mixed = evaluate_mean(hexp(_scaled(p, a)), hexp(_scaled(p, b)), geometric(v), tol)
    lhs = norm(hpow(mixed, 1.0 / p))
    rhs = norm(hexp(_arith(a, b, v)))
    params = {"v": v, "p": p, "norm": str(norm), "dim": _dim(a)}
    return norm_result("gt-classic", "", params, lhs, rhs, tol)


def check_andohiai_classic(a, b, v, p, norm, bounds: SandwichBounds, tol=DEFAULT_TOL):
    """The Ando-Hiai inequality and its Nakamoto-Seo reverse.

    Returns ``(forward, reverse)``:

    * ``||A^p #_v B^p|| <= ||A #_v B||^p``
    * ``||A #_v B||^p <= ||A^p #_v B^p|| / K(h^{2p}, v)`` with ``h = M/m``
    """
    _require_unit_weight(v)
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    mean = geometric(v)
    powered = norm(evaluate_mean(hpow(a, p), hpow(b, p), mean, tol))
    plain = norm(evaluate_mean(a, b, mean, tol)) ** p
    h = bounds.M / bounds.m
    k = kantorovich_K(h ** (2 * p), v)
    params = {"v": v, "p": p, "norm": str(norm), "bounds": bounds.as_dict(), "dim": _dim(a)}
    forward = norm_result("ah-classic", "forward", params, powered, plain, tol)
    reverse = norm_result("ah-classic", "reverse", params, plain, powered / k, tol, details={"K": k})
    return forward, reverse


def check_lemma21(a, b, bounds, v, tol=DEFAULT_TOL):
    """Ratio bounds between the arithmetic, geometric and harmonic means for
    ``v`` outside [0, 1] under the four-point hypothesis.

    Returns four results, parts ``geometric-lower``, ``geometric-upper``,
    ``harmonic-lower`` and ``harmonic-upper``.
    """
    if 0 <= v <= 1:
        raise ValueError(f"this check is for v outside [0, 1], got {v}")
    _require_spectrum(a, bounds.m2, bounds.m1, "A")
    _require_spectrum(b, bounds.M1, bounds.M2, "B")
    params = {"v": v, "bounds": bounds.as_dict(), "dim": _dim(a)}
    results = []

    def scalar_means(m, M):
        # returns (arith, geo, harm-pre) where harm-pre must be positive
        return (1 - v) * m + v * M, m ** (1 - v) * M**v, (1 - v) / m + v / M

    ar1, ge1, hp1 = scalar_means(bounds.m1, bounds.M1)
    ar2, ge2, hp2 = scalar_means(bounds.m2, bounds.M2)

    bad_ar = [x for x in (ar1, ar2) if not x > 0]
    if bad_ar:
        for part in ("geometric-lower", "geometric-upper"):
            results.append(not_applicable("lemma21", part, params, bad_ar[0], "weighted arithmetic mean of the bounds is not positive"))
    else:
        geo = evaluate_mean(a, b, geometric(v), tol)
        ari = _arith(a, b, v)
        results.append(loewner_result("lemma21", "geometric-lower", params, _scaled(ge1 / ar1, ari), geo, tol))
        results.append(loewner_result("lemma21", "geometric-upper", params, geo, _scaled(ge2 / ar2, ari), tol))

    bad_h = [x for x in (hp1, hp2) if not x > 0]
    if bad_h:
        witness = bad_h[0]
        for part in ("harmonic-lower", "harmonic-upper"):
            results.append(not_applicable("lemma21", part, params, witness, "weighted harmonic mean of the bounds is undefined"))
        return results
    try:
        har = evaluate_mean(a, b, harmonic(v), tol)
    except DomainViolation as exc:
        for part in ("harmonic-lower", "harmonic-upper"):
            results.append(not_applicable("lemma21", part, params, exc.value, str(exc)))
        return results
    geo = evaluate_mean(a, b, geometric(v), tol)
    d1 = (1 / hp1) / ge1
    d2 = (1 / hp2) / ge2
    results.append(loewner_result("lemma21", "harmonic-lower", params, _scaled(d1, geo), har, tol))
    results.append(loewner_result("lemma21", "harmonic-upper", params, har, _scaled(d2, geo), tol))
    return results


def check_cor22(a, b, bounds, v, f, tol=DEFAULT_TOL):
    """``f(A #_v B) <= f(CA) #_v f(CB)`` with ``C = ratio_C(m2, M2, v)``."""
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if not f.increasing:
        raise ValueError(f"{f} is not in the increasing catalog")
    _require_spectrum(a, bounds.m2, bounds.m1, "A")
    _require_spectrum(b, bounds.M1, bounds.M2, "B")
    c = ratio_C(bounds.m2, bounds.M2, v)
    params = {"v": v, "f": str(f), "bounds": bounds.as_dict(), "dim": _dim(a)}
    mean = geometric(v)
    try:
        lhs = _fn(f, evaluate_mean(a, b, mean, tol))
        rhs = evaluate_mean(_fn(f, _scaled(c, a)), _fn(f, _scaled(c, b)), mean, tol)
    except DomainViolation as exc:
        return not_applicable("cor22", "", params, exc.value, str(exc))
    return loewner_result("cor22", "", params, lhs, rhs, tol)


def check_thm23_ah(a, b, bounds, v, p, norm, tol=DEFAULT_TOL):
    """``||A^p #_v B^p|| <= C_p ||A #_v B||^p`` for ``v >= 1``, ``p > 1``."""
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    _require_spectrum(a, bounds.m2, bounds.m1, "A")
    _require_spectrum(b, bounds.M1, bounds.M2, "B")
    c_p = ratio_C(bounds.m2**p, bounds.M2**p, v)
    mean = geometric(v)
    lhs = norm(evaluate_mean(hpow(a, p), hpow(b, p), mean, tol))
    rhs = c_p * norm(evaluate_mean(a, b, mean, tol)) ** p
    params = {"v": v, "p": p, "norm": str(norm), "bounds": bounds.as_dict(), "dim": _dim(a)}
    return norm_result("thm23-ah", "", params, lhs, rhs, tol, details={"C_p": c_p})


def check_thm23_gt(a, b, bounds, v, p, norm, tol=DEFAULT_TOL):
    """``||(e^{pA} #_v e^{pB})^{1/p}|| <= gamma_p^{1/p} ||e^{A nabla_v B}||``.

    ``A`` and ``B`` are Hermitian with spectra in ``[m2, m1]`` and
    ``[M1, M2]``, so the exponentials satisfy the four-point hypothesis at
    the ``exp(p .)`` scale.
    """
    if v < 1:
        raise ValueError(f"v must be >= 1, got {v}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    _require_spectrum(a, bounds.m2, bounds.m1, "A")
    _require_spectrum(b, bounds.M1, bounds.M2, "B")
    gamma = gamma_p(bounds, p, v)
    mixed = evaluate_mean(hexp(_scaled(p, a)), hexp(_scaled(p, b)), geometric(v), tol)
    lhs = norm(hpow(mixed, 1.0 / p))
    rhs = gamma ** (1.0 / p) * norm(hexp(_arith(a, b, v)))
    params = {"v": v, "p": p, "norm": str(norm), "bounds": bounds.as_dict(), "dim": _dim(a)}
    return norm_result("thm23-gt", "", params, lhs, rhs, tol, details={"gamma_p": gamma})


def check_ineq6(a, b, bounds: RatioBounds, v, tol=DEFAULT_TOL):
    """``(1/xi) A nabla_v B <= A #_v B <= psi A !_v B`` when ``sA <= B <= tA``."""
    _require_unit_weight(v)
    xi, psi = xi_psi(bounds, v)
    geo = evaluate_mean(a, b, geometric(v), tol)
    params = {"v": v, "bounds": bounds.as_dict(), "dim": _dim(a)}
    lower = loewner_result("ineq6", "lower", params, _scaled(1 / xi, _arith(a, b, v)), geo, tol)
    upper = loewner_result("ineq6", "upper", params, geo, _scaled(psi, evaluate_mean(a, b, harmonic(v), tol)), tol)
    return lower, upper


def check_lemma31(a, b, v, f, tol=DEFAULT_TOL):
    """``f(A !_v B) <= f(A) !_v f(B)`` (reversed for decreasing ``f``)."""
    _require_unit_weight(v)
    mean = harmonic(v)
    params = {"v": v, "f": str(f), "dim": _dim(a)}
    try:
        inner = _fn(f, evaluate_mean(a, b, mean, tol))
        outer = evaluate_mean(_fn(f, a), _fn(f, b), mean, tol)
    except DomainViolation as exc:
        return not_applicable("lemma31", "", params, exc.value, str(exc))
    if f.increasing:
        return loewner_result("lemma31", "increasing", params, inner, outer, tol)
    return loewner_result("lemma31", "decreasing", params, outer, inner, tol)


def _two_sided(check_id, parts, params, f, c, a, b, sigma, tau, tol):
    """The pair ``f(A) sigma f(B) <= f(c (A tau B))`` and
    ``f((A sigma B)/c) <= f(A) tau f(B)``; both reversed for decreasing f."""
    try:
        fa, fb = _fn(f, a), _fn(f, b)
        first_l = evaluate_mean(fa, fb, sigma, tol)
        first_r = _fn(f, _scaled(c, evaluate_mean(a, b, tau, tol)))
        second_l = _fn(f, _scaled(1 / c, evaluate_mean(a, b, sigma, tol)))
        second_r = evaluate_mean(fa, fb, tau, tol)
    except DomainViolation as exc:
        return tuple(not_applicable(check_id, part, params, exc.value, str(exc)) for part in parts)
    if not f.increasing:
        first_l, first_r = first_r, first_l
        second_l, second_r = second_r, second_l
    return (
        loewner_result(check_id, parts[0], params, first_l, first_r, tol),
        loewner_result(check_id, parts[1], params, second_l, second_r, tol),
    )


def check_lemma32(a, b, bounds: RatioBounds, v, f, sigma, tau, tol=DEFAULT_TOL):
    """Both inequalities with the constant ``xi * psi`` for ``sA <= B <= tA``.

    ``sigma`` and ``tau`` are mean descriptors; their weight is replaced by
    ``v``. Decreasing ``f`` checks the reversed inequalities.
    """
    _require_unit_weight(v)
    sigma, tau = sigma.with_weight(v), tau.with_weight(v)
    _require_between(sigma, tau)
    xi, psi = xi_psi(bounds, v)
    params = {
        "v": v,
        "f": str(f),
        "sigma": sigma.family,
        "tau": tau.family,
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    return _two_sided("lemma32", ("eq01", "eq001"), params, f, xi * psi, a, b, sigma, tau, tol)


def check_cor33(a, b, bounds: SandwichBounds, v, f, sigma, tau, tol=DEFAULT_TOL):
    """Same pair as :func:`check_lemma32` with the constant ``L(m, M)`` under
    ``mI <= A, B <= MI``; ``f`` must be increasing."""
    _require_unit_weight(v)
    if not f.increasing:
        raise ValueError(f"{f} is not in the increasing catalog")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    sigma, tau = sigma.with_weight(v), tau.with_weight(v)
    _require_between(sigma, tau)
    L = L_from_ratio(bounds.M / bounds.m, v)
    params = {
        "v": v,
        "f": str(f),
        "sigma": sigma.family,
        "tau": tau.family,
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    return _two_sided("cor33", ("eq02", "eq002"), params, f, L, a, b, sigma, tau, tol)


def check_thm34(a, b, bounds: SandwichBounds, v, p, sigma, tau, norm, tol=DEFAULT_TOL):
    """Ando-Hiai for means between harmonic and arithmetic.

    Returns ``(eq10, eq12)``:

    * ``||A sigma B||^p <= L(m^p, M^p) ||A^p tau B^p||``
    * ``||A^p sigma B^p|| <= L(m^p, M^p) ||A tau B||^p``
    """
    _require_unit_weight(v)
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    sigma, tau = sigma.with_weight(v), tau.with_weight(v)
    _require_between(sigma, tau)
    L = L_from_ratio((bounds.M / bounds.m) ** p, v)
    ap, bp = hpow(a, p), hpow(b, p)
    params = {
        "v": v,
        "p": p,
        "sigma": sigma.family,
        "tau": tau.family,
        "norm": str(norm),
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    eq10 = norm_result(
        "thm34", "eq10", params, norm(evaluate_mean(a, b, sigma, tol)) ** p,
        L * norm(evaluate_mean(ap, bp, tau, tol)), tol, details={"L": L},
    )
    eq12 = norm_result(
        "thm34", "eq12", params, norm(evaluate_mean(ap, bp, sigma, tol)),
        L * norm(evaluate_mean(a, b, tau, tol)) ** p, tol, details={"L": L},
    )
    return eq10, eq12


def _exp_mean_root(a, b, sigma, p, tol):
    return hpow(evaluate_mean(hexp(_scaled(p, a)), hexp(_scaled(p, b)), sigma, tol), 1.0 / p)


def check_cor35(a, b, bounds: SandwichBounds, v, p, sigma, norm, tol=DEFAULT_TOL):
    """Two-sided Golden-Thompson bound for a mean between harmonic and
    arithmetic, with ``L = L(e^{pm}, e^{pM})``.

    Returns ``(upper, lower)``:

    * ``||(e^{pA} sigma e^{pB})^{1/p}|| <= L^{1/p} ||e^{A nabla_v B}||``
    * ``||e^{A nabla_v B}|| <= L^{1/p} ||(e^{pA} sigma e^{pB})^{1/p}||``
    """
    _require_unit_weight(v)
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    if p * bounds.M > EXP_GUARD:
        raise OverflowGuard(f"p * M = {p * bounds.M} exceeds {EXP_GUARD}")
    sigma = sigma.with_weight(v)
    _require_between(sigma)
    L = L_from_ratio(math.exp(p * (bounds.M - bounds.m)), v)
    root = norm(_exp_mean_root(a, b, sigma, p, tol))
    gt = norm(hexp(_arith(a, b, v)))
    factor = L ** (1.0 / p)
    params = {
        "v": v,
        "p": p,
        "sigma": sigma.family,
        "norm": str(norm),
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    details = {"L": L}
    return (
        norm_result("cor35", "upper", params, root, factor * gt, tol, details=details),
        norm_result("cor35", "lower", params, gt, factor * root, tol, details=details),
    )


def check_limit(a, b, v, sigma, norm, p_list, tol=DEFAULT_TOL, jitter=1e-12, threshold=0.01):
    """Convergence of ``||(e^{pA} sigma e^{pB})^{1/p}||`` to
    ``||e^{A nabla_v B}||`` as ``p`` decreases.

    Holds when ``err(p)`` is non-increasing along the (descending) ``p_list``
    up to roundoff and the last error is at most
    ``threshold * ||e^{A nabla_v B}||``. The roundoff allowance at step
    ``p`` is ``(jitter + ROOT_ROUNDOFF / p) * max(1, ||e^{A nabla_v B}||)``
    since the ``1/p``-th root amplifies relative error by ``1/p``.
    """
    _require_unit_weight(v)
    p_list = [float(p) for p in p_list]
    if not p_list or any(q <= r for q, r in zip(p_list, p_list[1:])):
        raise ValueError(f"p_list must be strictly descending, got {p_list}")
    if p_list[-1] < MIN_LIMIT_P:
        raise OverflowGuard(f"p = {p_list[-1]} is below the precision floor {MIN_LIMIT_P}")
    if p_list[0] * max(spectral_norm(a), spectral_norm(b)) > EXP_GUARD:
        raise OverflowGuard("p * ||.|| exceeds the exponential guard")
    sigma = sigma.with_weight(v)
    target = norm(hexp(_arith(a, b, v)))
    errs = [abs(norm(_exp_mean_root(a, b, sigma, p, tol)) - target) for p in p_list]
    scale = max(1.0, target)
    monotone = all(
        e2 <= e1 + (jitter + ROOT_ROUNDOFF / p2) * scale for e1, e2, p2 in zip(errs, errs[1:], p_list[1:])
    )
    params = {"v": v, "sigma": sigma.family, "norm": str(norm), "p_list": p_list, "dim": _dim(a)}
    res = norm_result(
        "limit36", "", params, errs[-1], threshold * target, tol,
        details={"errors": errs, "monotone": monotone, "target": target},
    )
    if not monotone:
        res.holds = False
        res.status = Status.FAIL
        res.notes = "error is not non-increasing along p_list"
    return res


def check_polya(a, b, bounds: SandwichBounds, v, f, sigma, tau, phi, tol=DEFAULT_TOL):
    """``f(Phi(A sigma B)) <= xi psi (f(Phi(A)) tau f(Phi(B)))`` with
    ``(xi, psi)`` taken at ``s = m/M``, ``t = M/m``."""
    _require_unit_weight(v)
    if not f.increasing:
        raise ValueError(f"{f} is not in the increasing catalog")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    sigma, tau = sigma.with_weight(v), tau.with_weight(v)
    _require_between(sigma, tau)
    xi, psi = xi_psi(RatioBounds(bounds.m / bounds.M, bounds.M / bounds.m), v)
    params = {
        "v": v,
        "f": str(f),
        "sigma": sigma.family,
        "tau": tau.family,
        "map": phi.token,
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    try:
        lhs = _fn(f, apply_map(phi, evaluate_mean(a, b, sigma, tol)))
        rhs = _scaled(xi * psi, evaluate_mean(_fn(f, apply_map(phi, a)), _fn(f, apply_map(phi, b)), tau, tol))
    except DomainViolation as exc:
        return not_applicable("polya-e", "", params, exc.value, str(exc))
    return loewner_result("polya-e", "", params, lhs, rhs, tol)


def check_prop37(a, b, bounds: SandwichBounds, v, f_dec, f_inc, sigma, tau, phi, tol=DEFAULT_TOL):
    """Polya-type inequalities with Mond-Pecaric constants.

    Returns ``(eee, eq3)``:

    * ``g(Phi A) tau g(Phi B) <= K(m, M, g) g(Phi(A sigma B))`` for decreasing ``g``
    * ``f(Phi(A sigma B)) <= K(m, M, 1/f) (f(Phi A) tau f(Phi B))`` for increasing ``f``
    """
    _require_unit_weight(v)
    if f_dec.increasing or not f_inc.increasing:
        raise ValueError("f_dec must be decreasing and f_inc increasing")
    _require_spectrum(a, bounds.m, bounds.M, "A")
    _require_spectrum(b, bounds.m, bounds.M, "B")
    sigma, tau = sigma.with_weight(v), tau.with_weight(v)
    _require_between(sigma, tau)
    k_dec = _mond_pecaric(f_dec, False, bounds.m, bounds.M)
    k_inc = _mond_pecaric(f_inc, True, bounds.m, bounds.M)
    params = {
        "v": v,
        "f_dec": str(f_dec),
        "f_inc": str(f_inc),
        "sigma": sigma.family,
        "tau": tau.family,
        "map": phi.token,
        "bounds": bounds.as_dict(),
        "dim": _dim(a),
    }
    try:
        pa, pb = apply_map(phi, a), apply_map(phi, b)
        p_mean = apply_map(phi, evaluate_mean(a, b, sigma, tol))
        eee_l = evaluate_mean(_fn(f_dec, pa), _fn(f_dec, pb), tau, tol)
        eee_r = _scaled(k_dec, _fn(f_dec, p_mean))
        eq3_l = _fn(f_inc, p_mean)
        eq3_r = _scaled(k_inc, evaluate_mean(_fn(f_inc, pa), _fn(f_inc, pb), tau, tol))
    except DomainViolation as exc:
        return tuple(not_applicable("prop37", part, params, exc.value, str(exc)) for part in ("eee", "eq3"))
    return (
        loewner_result("prop37", "eee", dict(params, K=k_dec), eee_l, eee_r, tol),
        loewner_result("prop37", "eq3", dict(params, K=k_inc), eq3_l, eq3_r, tol),
    )
