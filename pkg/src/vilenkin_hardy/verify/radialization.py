"""Sphere averaging against the strong Hardy quotient on grid functions.

The Hardy operator only sees ball integrals, so a function and its sphere
average have the same image, while the average has the smaller weighted
L^r norm.  The quotient of the average is therefore at least the quotient of
the original; this is what lets the radial sharpness results speak for all
functions.
"""

import time

import numpy as np

from .. import constants as K
from .. import params as P
from .._numeric import to_real
from ..groups.lcf import LocallyConstantFunction
from ..radial import hardy, lr_norm
from .report import BOUNDED, VIOLATED, VerificationReport, geometry_dict, slack


def quotients(f, r, alpha, delta):
    """(quotient of f, quotient of its radialization, H f == H g)."""
    g = f.radialize()
    Hf = f.hardy(delta)
    Hg = hardy(g, delta)
    num = lr_norm(Hf, r, alpha)
    qf = num / f.lr_norm(r, alpha + delta * r)
    qg = lr_norm(Hg, r, alpha) / lr_norm(g, r, alpha + delta * r)
    return qf, qg, Hf.equals(Hg)


def radialization_check(model, r=2, alpha=0, delta=0, members=100, seed=0, M=1, N=1):
    """Random nonnegative grid functions: H f = H g and quotient(g) >= quotient(f)."""
    t0 = time.perf_counter()
    geom = model.geometry()
    r, alpha, delta = P.hardy_strong(geom, r, alpha, delta)
    rng = np.random.default_rng(seed)
    ratios, gaps, same, nonradial = [], [], True, 0
    for _ in range(members):
        f = LocallyConstantFunction.random(model, M, N, rng, 0, 10)
        if all(v == 0 for v in f.values):
            continue
        qf, qg, eq = quotients(f, r, alpha, delta)
        same = same and eq
        ratios.append(qf)
        gaps.append(qg - qf)
        if not LocallyConstantFunction.from_radial(model, M, N, f.radialize()).equals(f):
            nonradial += 1
    target = K.hardy_strong_constant(geom, r, alpha, delta).value
    ok = same and all(d >= -slack() for d in gaps) and all(q <= target + slack() for q in ratios)
    return VerificationReport(
        theorem="radialization", geometry={"model": model.label(), **geometry_dict(geom)},
        params={"r": to_real(r), "alpha": alpha, "delta": delta}, target=target, ratios=ratios,
        gap=min(gaps) if gaps else None, verdict=BOUNDED if ok else VIOLATED,
        runtime=time.perf_counter() - t0, seed=seed,
        details={"hardy_images_equal": same, "min_quotient_gain": min(gaps) if gaps else None,
                 "nonradial_members": nonradial, "grid": {"M": M, "N": N}})
