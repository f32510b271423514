"""Closed-form operator norms and bounds for the Hardy-type operators.

Every value is computed in the unified (base, Q) geometry.  ``is_sharp`` is true
where an extremal family attains or approaches the value, false where only the
upper bound is established.
"""

from dataclasses import dataclass, field

from . import params as P
from ._numeric import root, to_real
from .errors import InvalidParams, PoleAtUnitRatio
from .radial.series import one_minus_pow

HARDY_STRONG = "HardyStrong"
ADJOINT_STRONG = "AdjointStrong"
HARDY_WEAK = "HardyWeak"
HARDY_WEAK_L1 = "HardyWeakL1"
ADJOINT_WEAK = "AdjointWeak"
ADJOINT_WEAK_L1 = "AdjointWeakL1"
HLP = "HLP"

THEOREMS = (HARDY_STRONG, ADJOINT_STRONG, HARDY_WEAK, HARDY_WEAK_L1, ADJOINT_WEAK, ADJOINT_WEAK_L1, HLP)


@dataclass(frozen=True)
class ConstantResult:
    value: object
    is_sharp: bool
    formula_id: str
    theorem: str
    gamma: object = None
    hypotheses: tuple = field(default=())


def _om(geom, e):
    """1 - base**e, refusing the removable-looking pole at e = 0."""
    if e == 0:
        raise PoleAtUnitRatio("denominator exponent is zero")
    return one_minus_pow(geom.base, e)


def _pm(geom, e):
    """base**e - 1."""
    return -_om(geom, e)


def hardy_strong_constant(geom, r, alpha, delta=0):
    r, alpha, delta = P.hardy_strong(geom, r, alpha, delta)
    Q = geom.hom_dim
    rc = P.conjugate(r)
    value = geom.shell_factor / _om(geom, alpha / r - Q / rc + delta)
    return ConstantResult(value, True, "(1-b^-Q)/(1-b^(alpha/r-Q/r'+delta))", HARDY_STRONG,
                          hypotheses=("1 < r < inf", "0 <= delta < Q", "alpha < (r-1)Q - delta*r"))


def adjoint_strong_constant(geom, r, alpha, delta=0):
    r, alpha, delta = P.adjoint_strong(geom, r, alpha, delta)
    Q = geom.hom_dim
    value = geom.shell_factor / _pm(geom, (alpha + Q) / r)
    return ConstantResult(value, True, "(1-b^-Q)/(b^((alpha+Q)/r)-1)", ADJOINT_STRONG,
                          hypotheses=("1 < r < inf", "0 <= delta < Q", "-Q < alpha"))


def hardy_weak_constant(geom, r, s, beta, delta=0):
    r, s, beta, delta = P.hardy_weak(geom, r, s, beta, delta)
    Q = geom.hom_dim
    gamma = P.weak_gamma(geom, r, s, beta, delta)
    rc = P.conjugate(r)
    first = root(geom.shell_factor / _om(geom, -(gamma + Q)), s)
    second = root(geom.shell_factor / _om(geom, beta / (r - 1) - Q), rc)
    return ConstantResult(first * second, True,
                          "[(1-b^-Q)/(1-b^-(gamma+Q))]^(1/s) [(1-b^-Q)/(1-b^(beta/(r-1)-Q))]^(1/r')",
                          HARDY_WEAK, gamma=gamma,
                          hypotheses=("1 < r < inf", "1 <= s < inf", "beta < (r-1)Q", "0 <= delta < (beta+Q)/r"))


def hardy_weak_L1_bound(geom, s, beta, delta=0):
    s, beta, delta = P.hardy_weak_l1(geom, s, beta, delta)
    Q = geom.hom_dim
    gamma = P.weak_l1_gamma(geom, s, beta, delta)
    value = root(geom.shell_factor / _om(geom, -s * (Q - delta - beta)), s)
    return ConstantResult(value, beta == 0, "[(1-b^-Q)/(1-b^(-s(Q-delta-beta)))]^(1/s)", HARDY_WEAK_L1,
                          gamma=gamma, hypotheses=("1 <= s < inf", "0 <= delta < Q", "beta < Q-delta"))


def adjoint_weak_constant(geom, r, s, beta, delta=0):
    r, s, beta, delta = P.adjoint_weak(geom, r, s, beta, delta)
    Q = geom.hom_dim
    gamma = P.weak_gamma(geom, r, s, beta, delta)
    rc = P.conjugate(r)
    first = root(geom.shell_factor / _om(geom, -(gamma + Q)), s)
    second = root(geom.shell_factor / _pm(geom, ((beta + Q) / r - delta) * rc), rc)
    return ConstantResult(first * second, True,
                          "[(1-b^-Q)/(1-b^-(gamma+Q))]^(1/s) [(1-b^-Q)/(b^(((beta+Q)/r-delta)r')-1)]^(1/r')",
                          ADJOINT_WEAK, gamma=gamma,
                          hypotheses=("1 < r < inf", "1 <= s < inf", "delta < Q", "delta*r-Q < beta"))


def adjoint_weak_L1_bound(geom, s, beta, delta=0):
    s, beta, delta = P.adjoint_weak_l1(geom, s, beta, delta)
    Q = geom.hom_dim
    gamma = P.adjoint_weak_l1_gamma(geom, s, beta, delta)
    value = root(geom.shell_factor / _om(geom, -(gamma + Q)), s)
    return ConstantResult(value, False, "[(1-b^-Q)/(1-b^(-s(Q-delta+beta)))]^(1/s)", ADJOINT_WEAK_L1,
                          gamma=gamma, hypotheses=("1 <= s < inf", "delta < Q", "-(Q-delta) < beta"))


def hlp_constant(geom, r, alpha):
    r, alpha = P.hlp(geom, r, alpha)
    Q = geom.hom_dim
    rc = P.conjugate(r)
    t = (alpha + Q) / r
    value = geom.shell_factor * (1 / _om(geom, alpha / r - Q / rc) + geom.pow(-t) / _om(geom, -t))
    return ConstantResult(value, True,
                          "(1-b^-Q)[1/(1-b^(alpha/r-Q/r')) + b^(-(alpha+Q)/r)/(1-b^(-(alpha+Q)/r))]", HLP,
                          hypotheses=("1 < r < inf", "-Q < alpha < (r-1)Q"))


_DISPATCH = {
    HARDY_STRONG: (hardy_strong_constant, ("r", "alpha", "delta")),
    ADJOINT_STRONG: (adjoint_strong_constant, ("r", "alpha", "delta")),
    HARDY_WEAK: (hardy_weak_constant, ("r", "s", "beta", "delta")),
    HARDY_WEAK_L1: (hardy_weak_L1_bound, ("s", "beta", "delta")),
    ADJOINT_WEAK: (adjoint_weak_constant, ("r", "s", "beta", "delta")),
    ADJOINT_WEAK_L1: (adjoint_weak_L1_bound, ("s", "beta", "delta")),
    HLP: (hlp_constant, ("r", "alpha")),
}


def parameter_names(theorem):
    return _DISPATCH[theorem][1]


def evaluate(theorem, geom, params):
    """Evaluate a catalog entry; ``params`` is an InequalityParams or a mapping."""
    if theorem not in _DISPATCH:
        raise InvalidParams(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    fn, names = _DISPATCH[theorem]
    if isinstance(params, P.InequalityParams):
        params = params.as_dict()
    args = {}
    for n in names:
        v = params.get(n)
        if v is None:
            if n == "delta":
                v = 0
            else:
                raise InvalidParams(f"{theorem} needs parameter {n}")
        args[n] = to_real(v)
    return fn(geom, **args)


def graded_to_vilenkin(theorem, q, Q, params):
    """The same catalog entry under base = q**Q, Q = 1 with every exponent divided by Q.

    Exponent parameters (alpha, beta, delta) scale by 1/Q; r and s are unchanged.
    """
    from .geometry import ShellGeometry, vilenkin_graded_reparam

    if isinstance(params, P.InequalityParams):
        params = params.as_dict()
    kappa, _, _ = vilenkin_graded_reparam(q, Q, 0, 0)
    scaled = dict(params)
    for n in ("alpha", "beta", "delta"):
        if scaled.get(n) is not None:
            scaled[n] = to_real(scaled[n]) / Q
    return ShellGeometry(kappa, 1), scaled
