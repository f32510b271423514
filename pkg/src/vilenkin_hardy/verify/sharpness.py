"""Rayleigh quotients along extremal families, compared with the closed-form norms."""

import time

from gmpy2 import mpq

from .. import constants as K
from .. import params as P
from .._numeric import rel_err, to_real
from ..errors import DivergentNorm, InvalidParams
from ..radial import (adjoint_hardy, ball_indicator, extremal_hardy_sequence, hardy, hlp, lr_norm, shell_indicator,
                      weak_norm)
from .report import ATTAINED, BOUNDED, CONVERGING, VIOLATED, VerificationReport, geometry_dict, is_monotone, slack

OPS = ("hardy", "adjoint", "hlp")
WEAK_RTOL = mpq(1, 10 ** 25)


def apply_op(op, f, delta=0):
    if op == "hardy":
        return hardy(f, delta)
    if op == "adjoint":
        return adjoint_hardy(f, delta)
    if op == "hlp":
        return hlp(f)
    raise InvalidParams(f"unknown operator {op!r}; choose from {', '.join(OPS)}")


def _out_norm(g, norm_out):
    if norm_out[0] == "weak":
        _, s, gamma = norm_out
        return weak_norm(g, s, gamma)
    r, alpha = norm_out
    return lr_norm(g, r, alpha)


def rayleigh_quotient(op, f, norm_in, norm_out, delta=0):
    """||op f||_out / ||f||_in.

    ``norm_in`` is (r, alpha); ``norm_out`` is (r, alpha) for a strong norm or
    ("weak", s, gamma) for the weak norm.  The zero function has no quotient.
    """
    r_in, a_in = norm_in
    den = lr_norm(f, r_in, a_in)
    if den == 0:
        raise DivergentNorm("the Rayleigh quotient of the zero function is 0/0")
    return _out_norm(apply_op(op, f, delta), norm_out) / den


def _params_dict(params):
    if isinstance(params, P.InequalityParams):
        return {k: v for k, v in params.as_dict().items() if v is not None}
    return {k: to_real(v) for k, v in dict(params).items() if v is not None}


def _strong_study(theorem, geom, prm, n_max, variant, op):
    delta = prm.get("delta", mpq(0))
    if theorem == K.HLP:
        target = K.hlp_constant(geom, prm["r"], prm["alpha"]).value
        delta = mpq(0)
    else:
        target = K.evaluate(theorem, geom, prm).value
    r, alpha = prm["r"], prm["alpha"]
    ratios = []
    for n in range(n_max + 1):
        f = extremal_hardy_sequence(geom, prm, n, variant)
        ratios.append(rayleigh_quotient(op, f, (r, alpha + delta * r), (r, alpha), delta))
    tol = slack()
    if any(x > target + tol for x in ratios):
        verdict = VIOLATED
    elif is_monotone(ratios):
        verdict = CONVERGING
    else:
        verdict = BOUNDED
    return target, ratios, verdict, {}


def _weak_study(theorem, geom, prm):
    delta = prm.get("delta", mpq(0))
    res = K.evaluate(theorem, geom, prm)
    target, gamma = res.value, res.gamma
    details = {"gamma": gamma}
    if theorem == K.HARDY_WEAK:
        f = extremal_hardy_sequence(geom, prm, 0, "weak_f0")
        ratio = rayleigh_quotient("hardy", f, (prm["r"], prm["beta"]), ("weak", prm["s"], gamma), delta)
        # f_0 attains only when its level sets are nested the same way as H f_0's
        exact_regime = prm["beta"] / (prm["r"] - 1) >= delta
        details["extremal"] = "weak_f0"
    elif theorem == K.ADJOINT_WEAK:
        f = extremal_hardy_sequence(geom, prm, 0, "adjoint_weak_f0")
        ratio = rayleigh_quotient("adjoint", f, (prm["r"], prm["beta"]), ("weak", prm["s"], gamma), delta)
        exact_regime = True
        details["extremal"] = "adjoint_weak_f0"
    elif theorem == K.HARDY_WEAK_L1:
        f = ball_indicator(geom, 0)
        ratio = rayleigh_quotient("hardy", f, (1, -prm["beta"]), ("weak", prm["s"], gamma), delta)
        exact_regime = prm["beta"] == 0
        details["extremal"] = "indicator of G_0"
    else:
        f = shell_indicator(geom, -1)
        ratio = rayleigh_quotient("adjoint", f, (1, prm["beta"]), ("weak", prm["s"], gamma), delta)
        exact_regime = False
        details["extremal"] = "indicator of shell -1 (bound only)"
    err = rel_err(ratio, target)
    if ratio > target * (1 + WEAK_RTOL) + slack():
        verdict = VIOLATED
    elif res.is_sharp and exact_regime and err <= WEAK_RTOL:
        verdict = ATTAINED
    else:
        verdict = BOUNDED
    if res.is_sharp and not exact_regime:
        details["note"] = "f_0 is not extremal when beta/(r-1) < delta; only the bound is checked"
    return target, [ratio], verdict, details


def sharpness_study(theorem, geom, params, n_max=20):
    """Run the extremal family of ``theorem`` and compare its ratios with the constant."""
    if theorem not in K.THEOREMS:
        raise InvalidParams(f"unknown theorem {theorem!r}; choose from {', '.join(K.THEOREMS)}")
    t0 = time.perf_counter()
    prm = _params_dict(params)
    if theorem == K.HARDY_STRONG:
        out = _strong_study(theorem, geom, prm, n_max, "hardy", "hardy")
    elif theorem == K.ADJOINT_STRONG:
        out = _strong_study(theorem, geom, prm, n_max, "adjoint", "adjoint")
    elif theorem == K.HLP:
        out = _strong_study(theorem, geom, prm, n_max, "hlp", "hlp")
    else:
        out = _weak_study(theorem, geom, prm)
    target, ratios, verdict, details = out
    return VerificationReport(
        theorem=theorem, geometry=geometry_dict(geom), params=prm, target=target, ratios=ratios,
        gap=target - ratios[-1], verdict=verdict, runtime=time.perf_counter() - t0, details=details)
