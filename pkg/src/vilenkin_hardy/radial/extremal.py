"""Extremal and near-extremal radial functions, and the radial change of variable."""

from gmpy2 import mpq

from .. import params as P
from .._numeric import to_real
from ..errors import InvalidParams
from .function import RadialFunction, TailTerm, restrict, shift
from .norms import integrate
from .operators import adjoint_hardy, hardy

VARIANTS = ("hardy", "adjoint", "hlp", "weak_f0", "adjoint_weak_f0")


def epsilon(geom, n):
    """eps_n = base**-n."""
    if int(n) != n or n < 0:
        raise InvalidParams("n must be a nonnegative integer")
    return geom.pow(-int(n))


def extremal_hardy_sequence(geom, params, n=0, variant="hardy"):
    """The n-th member of the extremal family for ``variant``.

    * hardy:   |x|^(-(alpha+delta r+Q)/r - eps_n) on |x| >= 1, zero inside
    * adjoint: |x|^(-(alpha+delta r+Q)/r + eps_n) on |x| < 1, zero outside
    * hlp:     the hardy family at delta = 0
    * weak_f0: |x|^(-beta/(r-1)) on G_0
    * adjoint_weak_f0: |x|^((delta-Q-beta)/(r-1)) off G_0
    """
    if isinstance(params, dict):
        params = P.InequalityParams(**params)
    Q = geom.hom_dim
    if variant in ("hardy", "hlp", "adjoint"):
        eps = epsilon(geom, n)
        if variant == "hardy":
            r, alpha, delta = P.hardy_strong(geom, params.r, params.alpha, params.get("delta", 0))
        elif variant == "hlp":
            r, alpha = P.hlp(geom, params.r, params.alpha)
            delta = mpq(0)
        else:
            r, alpha, delta = P.adjoint_strong(geom, params.r, params.alpha, params.get("delta", 0))
        base_exp = -(alpha + delta * r + Q) / r
        if variant == "adjoint":
            return RadialFunction(geom, 0, [0], inner=[TailTerm(1, base_exp + eps, 0)])
        return RadialFunction(geom, 0, [1], outer=[TailTerm(1, base_exp - eps, 0)])
    if variant == "weak_f0":
        r = P.check_r(params.r)
        beta = to_real(params.beta)
        delta = params.get("delta", 0)
        P.hardy_weak(geom, r, params.s if params.s is not None else 1, beta, delta)
        return RadialFunction(geom, 0, [1], inner=[TailTerm(1, -beta / (r - 1), 0)])
    if variant == "adjoint_weak_f0":
        r = P.check_r(params.r)
        beta = to_real(params.beta)
        delta = params.get("delta", 0)
        P.adjoint_weak(geom, r, params.s if params.s is not None else 1, beta, delta)
        return RadialFunction(geom, 0, [0], outer=[TailTerm(1, (delta - Q - beta) / (r - 1), 0)])
    raise InvalidParams(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")


def radialize_change_of_variable_check(geom, f, k, direction="ball"):
    """Both sides of the radial change of variable at shell k.

    ball:       |x|^-Q int_{B(e,|x|)} f(|t|) dt   vs   int_{B(e,1)} f(|x||t|) dt
    complement: |x|^-Q int_{|y|>|x|} f(|y|) dy    vs   int_{|y|>1} f(|x||y|) dy

    The left side goes through the Hardy operators, the right side through a
    shifted function integrated over the unit ball or its complement.
    """
    k = int(k)
    Q = geom.hom_dim
    scaled = shift(f, k)  # t on shell i -> f on shell k + i, i.e. f(|x||t|)
    if direction == "ball":
        lhs = hardy(f, 0).evaluate(k)
        rhs = integrate(restrict(scaled, lo=0))
    elif direction == "complement":
        # H*_Q f(k) = sum_{j<k} f(j) mu(j), then divide by |x|^Q
        lhs = adjoint_hardy(f, Q).evaluate(k) * geom.pow(k * Q)
        rhs = integrate(restrict(scaled, hi=-1))
    else:
        raise InvalidParams("direction must be 'ball' or 'complement'")
    return lhs, rhs
