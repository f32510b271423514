"""Monte-Carlo cross-checks of shell quantities on concrete group models.

Each quantity has an analytic value from the radial calculus and an empirical
one from Haar samples in integer coordinates.  The verdict is ``bounded``
when every analytic value lies within three standard errors of its estimate.
"""

import math
import time

from gmpy2 import mpq

from .._numeric import to_float
from ..errors import InvalidParams
from ..groups import sampling
from ..radial import ball_indicator, power_function, radial_convolve, restrict, riesz_potential
from .report import BOUNDED, VIOLATED, VerificationReport, geometry_dict

QUANTITIES = ("equal_shell_kernel", "radial_convolution_value", "riesz_value")
MIN_SAMPLES = 1000
SIGMAS = 3
KERNEL_SHELLS = 5


def _model_info(model):
    return {"model": model.label(), **geometry_dict(model.geometry())}


def _kernel(model, k, samples, seed):
    counts = sampling.equal_shell_kernel(model, samples, seed, k)
    masses = sampling.kernel_masses(model, k, KERNEL_SHELLS)
    rows, ok = [], True
    for l, p in masses.items():
        c = counts.get(l, 0)
        emp = c / samples
        pf = to_float(p)
        se = math.sqrt(max(pf * (1 - pf), 0.0) / samples)
        if p == 0:
            good = c == 0
        else:
            good = abs(emp - pf) <= SIGMAS * se
        ok = ok and good
        rows.append({"shell": l, "analytic": p, "count": c, "empirical": emp, "se": se, "within": good})
    details = {"shells": rows, "counts": counts, "same_shell_zero": masses[k] == 0}
    return masses[k], [r["empirical"] for r in rows], ok, details


def _expectation(model, k, samples, seed, g, analytic):
    geom = model.geometry()

    def g_of_shell(j):
        return g.evaluate(j)

    mean, se, counts = sampling.shell_expectation(model, g_of_shell, samples, seed, k)
    target = analytic.evaluate(k)
    ok = abs(mean - to_float(target)) <= SIGMAS * se
    details = {"mean": mean, "se": se, "analytic": target, "counts": counts, "base": geom.base}
    return target, [mean], ok, details


def mc_cross_check(model, quantity, k=0, samples=100_000, seed=0):
    """Compare a Monte-Carlo estimate with its closed form on ``model``.

    * ``equal_shell_kernel``: law of the shell of y^-1 x for x fixed and y
      uniform on shell k (shells k..k+4).
    * ``radial_convolution_value``: (1_{G_0} * |.|^(1/2) 1_{G_0})(x) for x on shell k.
    * ``riesz_value``: I_{Q/3} 1_{G_0}(x) for x on shell k; the exponent keeps
      the estimator's variance finite.
    """
    if quantity not in QUANTITIES:
        raise InvalidParams(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")
    if samples < MIN_SAMPLES:
        raise InvalidParams(f"samples must be >= {MIN_SAMPLES}")
    k = int(k)
    if k < 0:
        raise InvalidParams("shell index k must be >= 0 (samples are drawn inside G_0)")
    t0 = time.perf_counter()
    geom = model.geometry()
    if quantity == "equal_shell_kernel":
        target, ratios, ok, details = _kernel(model, k, samples, seed)
    elif quantity == "radial_convolution_value":
        f = ball_indicator(geom, 0)
        g = restrict(power_function(geom, mpq(1, 2)), lo=0)
        target, ratios, ok, details = _expectation(model, k, samples, seed, g, radial_convolve(f, g))
    else:
        lam = mpq(geom.Q, 3)
        g = power_function(geom, -lam)
        target, ratios, ok, details = _expectation(model, k, samples, seed, g,
                                                   riesz_potential(ball_indicator(geom, 0), lam))
        details["lambda"] = lam
    gap = abs(to_float(target) - ratios[0]) if quantity != "equal_shell_kernel" else None
    details["samples"] = samples
    return VerificationReport(
        theorem=f"mc-{quantity}", geometry=_model_info(model), params={"k": k, "samples": samples},
        target=target, ratios=ratios, gap=gap, verdict=BOUNDED if ok else VIOLATED,
        runtime=time.perf_counter() - t0, seed=seed, details=details)


def derived_seeds(root_seed, n):
    """Per-worker seeds for repeated independent runs."""
    return sampling.derive_seeds(root_seed, n)


def replicate(model, quantity, k=0, samples=100_000, seed=0, workers=1):
    """Independent runs with seeds derived from ``seed``; order follows the seed list."""
    seeds = derived_seeds(seed, workers)
    if workers == 1:
        return [mc_cross_check(model, quantity, k, samples, seeds[0])]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda s: mc_cross_check(model, quantity, k, samples, s), seeds))

