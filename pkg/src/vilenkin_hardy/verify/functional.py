"""Sobolev-type inequalities as boundedness properties on radial families.

None of these inequalities comes with a known constant, so nothing is
compared with a number.  A check evaluates the ratio LHS / RHS on every member
of a family and on the family's 2x wider extension; the verdict is
``bounded`` when the supremum grows by at most 1% under the extension.

On radial functions the Vladimirov-Taibleson operator D^a stands in for the
Vladimirov Laplacian.  The Laplacian itself is only exercised at desk scale on
locally constant grids (:func:`laplacian_desk_check`).
"""

import time

import numpy as np
from gmpy2 import mpq

from .._numeric import power, rel_err, to_real
from ..errors import DivergentNorm, DivergentOperator, HypothesisViolation, InvalidParams
from ..groups.lcf import LocallyConstantFunction, vladimirov_laplacian
from ..groups.padic import is_prime
from ..params import conjugate
from ..radial import constant, lr_norm, lr_norm_pow, riesz_potential, scale, shift, vt_apply
from .families import TestFamily, generate
from .report import BOUNDED, VIOLATED, VerificationReport, geometry_dict

KINDS = ("hardy_sobolev", "hls", "stein_weiss", "uncertainty", "gagliardo_nirenberg")
GROWTH_TOL = mpq(1, 100)


def _p(params, name, default=None):
    v = params.get(name, default)
    if v is None:
        raise InvalidParams(f"missing parameter {name!r}")
    return to_real(v)


# ------------------------------------------------------------ hypotheses


def _hardy_sobolev_params(geom, params):
    Q = geom.Q
    a, b, r, s = (_p(params, k) for k in ("a", "b", "r", "s"))
    form = params.get("form", "riesz")
    if not 1 < r <= s:
        raise HypothesisViolation("1 < r <= s", f"r={r}, s={s}")
    upper = Q / r if form == "riesz" else Q
    if not 0 < a < upper:
        raise HypothesisViolation("0 < a < Q/r" if form == "riesz" else "0 < a < Q", f"a={a}")
    if not 0 <= b < Q:
        raise HypothesisViolation("0 <= b < Q", f"b={b}")
    if a / Q != 1 / r - 1 / s + b / (s * Q):
        raise HypothesisViolation("a/Q = 1/r - 1/s + b/(sQ)")
    return {"a": a, "b": b, "r": r, "s": s, "form": form}


def _hls_params(geom, params):
    Q = geom.Q
    lam, r = _p(params, "lam"), _p(params, "r")
    if not 0 < lam < Q:
        raise HypothesisViolation("0 < lambda < Q", f"lambda={lam}")
    inv_s = 1 / r + lam / Q - 1
    s = _p(params, "s", 1 / inv_s if inv_s > 0 else None) if inv_s > 0 else None
    if s is None or not 1 < r < s:
        raise HypothesisViolation("1 < r < s < oo", f"r={r}")
    if 1 / s != inv_s:
        raise HypothesisViolation("1/s = 1/r + lambda/Q - 1")
    return {"lam": lam, "r": r, "s": s}


def _stein_weiss_params(geom, params):
    Q = geom.Q
    if not (is_exact_int(geom.base) and is_prime(int(geom.base))):
        raise HypothesisViolation("q = p prime", f"base={geom.base}")
    lam, alpha, beta, r = (_p(params, k) for k in ("lam", "alpha", "beta", "r"))
    inv_s = 1 / r + (alpha + beta + lam) / Q - 1
    if not inv_s > 0:
        raise HypothesisViolation("1/s = 1/r + (alpha+beta+lambda)/Q - 1 > 0")
    s = 1 / inv_s
    if "s" in params and _p(params, "s") != s:
        raise HypothesisViolation("1/s = 1/r + (alpha+beta+lambda)/Q - 1")
    if not 0 < lam < Q:
        raise HypothesisViolation("0 < lambda < Q", f"lambda={lam}")
    if not 1 < r <= s:
        raise HypothesisViolation("1 < r <= s", f"r={r}, s={s}")
    if not beta < Q / conjugate(r):
        raise HypothesisViolation("beta < Q/r'", f"beta={beta}")
    if not alpha < Q / s:
        raise HypothesisViolation("alpha < Q/s", f"alpha={alpha}")
    if not alpha + beta >= 0:
        raise HypothesisViolation("alpha + beta >= 0")
    return {"lam": lam, "alpha": alpha, "beta": beta, "r": r, "s": s}


def is_exact_int(x):
    try:
        return x == int(x)
    except (TypeError, ValueError):
        return False


def _uncertainty_params(geom, params):
    a, r = _p(params, "a"), _p(params, "r")
    if not (a > 0 and r > 1):
        raise HypothesisViolation("a > 0, r > 1")
    if not geom.Q > a * r:
        raise HypothesisViolation("Q > a r", f"a r = {a * r}")
    return {"a": a, "r": r}


def _gn_params(geom, params):
    Q = geom.Q
    a, r, tau, theta = (_p(params, k) for k in ("a", "r", "tau", "theta"))
    if not (a > 0 and r > 1 and Q > a * r):
        raise HypothesisViolation("a > 0, r > 1, Q > a r")
    if not tau >= 1:
        raise HypothesisViolation("tau >= 1", f"tau={tau}")
    if not 0 < theta < 1:
        raise HypothesisViolation("0 < theta < 1", f"theta={theta}")
    inv_s = theta * (1 / r - a / Q) + (1 - theta) / tau
    if not inv_s > 0:
        raise HypothesisViolation("1/s = theta(1/r - a/Q) + (1-theta)/tau > 0")
    s = 1 / inv_s
    if "s" in params and _p(params, "s") != s:
        raise HypothesisViolation("1/s = theta(1/r - a/Q) + (1-theta)/tau")
    if s < 1:
        raise InvalidParams(f"s = {s} < 1 is outside the normed range evaluated here")
    return {"a": a, "r": r, "tau": tau, "theta": theta, "s": s}


VALIDATORS = {"hardy_sobolev": _hardy_sobolev_params, "hls": _hls_params, "stein_weiss": _stein_weiss_params,
              "uncertainty": _uncertainty_params, "gagliardo_nirenberg": _gn_params}


def validate(kind, geom, params):
    if kind not in KINDS:
        raise InvalidParams(f"unknown inequality {kind!r}; choose from {', '.join(KINDS)}")
    return VALIDATORS[kind](geom, dict(params))


# ------------------------------------------------------------ both sides


def holder_sides(f, a, r):
    """(||f||_2^2, || |x|^-a f ||_r || |x|^a f ||_r'), the Hoelder step of the uncertainty bound."""
    rc = conjugate(r)
    return lr_norm_pow(f, 2), lr_norm(f, r, -a * r) * lr_norm(f, rc, a * rc)


def sides(kind, f, prm):
    """(LHS, RHS) of the inequality on one function."""
    Q = f.geom.Q
    if kind == "hardy_sobolev":
        if prm["form"] == "vt":
            return lr_norm(f, prm["s"], -prm["b"]), lr_norm(vt_apply(f, prm["a"]), prm["r"])
        return lr_norm(riesz_potential(f, Q - prm["a"]), prm["s"], -prm["b"]), lr_norm(f, prm["r"])
    if kind == "hls":
        return lr_norm(riesz_potential(f, prm["lam"]), prm["s"]), lr_norm(f, prm["r"])
    if kind == "stein_weiss":
        s, r = prm["s"], prm["r"]
        return lr_norm(riesz_potential(f, prm["lam"]), s, -prm["alpha"] * s), lr_norm(f, r, prm["beta"] * r)
    if kind == "uncertainty":
        a, r = prm["a"], prm["r"]
        rc = conjugate(r)
        # squared form: both sides scale like |lambda|^-Q under dilation
        return lr_norm_pow(f, 2), lr_norm(vt_apply(f, a), r) * lr_norm(f, rc, a * rc)
    theta = prm["theta"]
    rhs = power(lr_norm(vt_apply(f, prm["a"]), prm["r"]), theta) * power(lr_norm(f, prm["tau"]), 1 - theta)
    return lr_norm(f, prm["s"]), rhs


def default_family():
    return [TestFamily("indicators", -2, 2), TestFamily("random-locally-constant", -2, 2, seed=11)]


def _sup(kind, geom, families, prm):
    ratios, labels, skipped, holder_ok = [], [], [], True
    for fam in families:
        for label, f in generate(fam, geom):
            try:
                lhs, rhs = sides(kind, f, prm)
            except (DivergentNorm, DivergentOperator):
                skipped.append(label)
                continue
            if kind == "uncertainty":
                hl, hr = holder_sides(f, prm["a"], prm["r"])
                holder_ok = holder_ok and hl <= hr * (1 + mpq(1, 10 ** 40))
            if rhs == 0:
                if lhs != 0:
                    raise ArithmeticError(f"{label}: right side vanishes, left side does not")
                ratios.append(mpq(0))
            else:
                ratios.append(lhs / rhs)
            labels.append(label)
    return ratios, labels, skipped, holder_ok


def functional_inequality_check(kind, geom, params, family=None, factor=2):
    """Sup ratio over ``family`` and over its ``factor``-times wider extension."""
    t0 = time.perf_counter()
    prm = validate(kind, geom, params)
    fams = family if isinstance(family, (list, tuple)) else ([family] if family else default_family())
    base_r, labels, skipped, holder_a = _sup(kind, geom, fams, prm)
    wide = [fam.widened(factor) for fam in fams]
    wide_r, _, _, holder_b = _sup(kind, geom, wide, prm)
    if not base_r:
        raise DivergentNorm("no family member has finite norms on both sides")
    sup0, sup1 = max(base_r), max(wide_r)
    growth = (sup1 - sup0) / sup0 if sup0 else mpq(0)
    verdict = BOUNDED if growth <= GROWTH_TOL else VIOLATED
    details = {"sup": sup0, "sup_extended": sup1, "growth": growth, "members": labels,
               "skipped_divergent": skipped}
    if kind == "uncertainty":
        details["holder_step"] = holder_a and holder_b
        details["form"] = "||f||_2^2 <= C ||D^a f||_r || |x|^a f ||_r'"
        if not details["holder_step"]:
            verdict = VIOLATED
    return VerificationReport(
        theorem=kind, geometry=geometry_dict(geom), params=prm, target=None, ratios=base_r,
        gap=growth, verdict=verdict, runtime=time.perf_counter() - t0, details=details)


# ------------------------------------------------------------ exact identities


def vt_homogeneity(f, a, m):
    """(D^a(f o D_{p^m}), p^-ma (D^a f) o D_{p^m}) as radial functions."""
    a = to_real(a)
    return vt_apply(shift(f, m), a), scale(shift(vt_apply(f, a), m), f.geom.pow(-m * a))


def vt_of_constant(geom, a, c=1):
    return vt_apply(constant(geom, c), a)


# ------------------------------------------------------------ desk-scale Laplacian


def laplacian_desk_check(model, a, b, r, s, members=4, seed=0, M=1, N=1):
    """Hardy-Sobolev with the Vladimirov Laplacian on random grid functions.

    The LHS is the full weighted norm of f; the Laplacian is known on the
    grid cells only, so its L^r norm is taken over G_{-M}, which makes the
    ratio an upper estimate of the true one.  The extension adds the dilates
    f o D_p^{+-1}; by homogeneity they reproduce the ratios exactly.
    """
    t0 = time.perf_counter()
    geom = model.geometry()
    prm = _hardy_sobolev_params(geom, {"a": a, "b": b, "r": r, "s": s, "form": "vt"})
    rng = np.random.default_rng(seed)
    fs = [LocallyConstantFunction.random(model, M, N, rng, 0, 8) for _ in range(members)]

    def ratio(f):
        lhs = f.lr_norm(prm["s"], -prm["b"])
        rhs = vladimirov_laplacian(f, prm["a"]).lr_norm(prm["r"])
        return lhs / rhs if rhs else mpq(0)

    base_r = [ratio(f) for f in fs]
    dilate_r = [[ratio(f.dilated(m)) for m in (-M, N) if m] for f in fs]
    wide_r = base_r + [x for row in dilate_r for x in row]
    sup0, sup1 = max(base_r), max(wide_r)
    growth = (sup1 - sup0) / sup0 if sup0 else mpq(0)
    match = all(rel_err(x, y) < mpq(1, 10 ** 30) for y, row in zip(base_r, dilate_r) for x in row)
    return VerificationReport(
        theorem="hardy_sobolev_laplacian_desk", geometry={"model": model.label(), **geometry_dict(geom)},
        params=prm, ratios=base_r, gap=growth, verdict=BOUNDED if growth <= GROWTH_TOL else VIOLATED,
        runtime=time.perf_counter() - t0, seed=seed,
        details={"sup": sup0, "sup_extended": sup1, "grid": {"M": M, "N": N}, "dilate_ratios_match": match})
