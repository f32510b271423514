"""Exponent tuples and the hypotheses each inequality places on them.

Hypotheses are written in the unified (base, Q) form.  When Q = 1 the message
uses the plain Vilenkin spelling, e.g. ``alpha < r(1-delta)-1``.
"""

from dataclasses import dataclass, fields

from ._numeric import to_real
from .errors import HypothesisViolation, InvalidParams


@dataclass(frozen=True)
class InequalityParams:
    r: object = None
    s: object = None
    alpha: object = None
    beta: object = None
    gamma: object = None
    delta: object = None
    lam: object = None
    a: object = None
    b_weight: object = None

    def __post_init__(self):
        for fd in fields(self):
            v = getattr(self, fd.name)
            if v is not None:
                object.__setattr__(self, fd.name, to_real(v))

    @property
    def r_conj(self):
        return conjugate(self.r)

    def get(self, name, default=None):
        v = getattr(self, name)
        return default if v is None else to_real(v)

    def replace(self, **kw):
        d = {fd.name: getattr(self, fd.name) for fd in fields(self)}
        d.update(kw)
        return InequalityParams(**d)

    def as_dict(self):
        return {fd.name: getattr(self, fd.name) for fd in fields(self) if getattr(self, fd.name) is not None}


def conjugate(r):
    """r' with 1/r + 1/r' = 1."""
    r = to_real(r)
    if r == 1:
        raise InvalidParams("r = 1 has no finite conjugate exponent")
    return r / (r - 1)


def _need(value, name):
    if value is None:
        raise InvalidParams(f"missing parameter {name}")
    return to_real(value)


def _label(Q, unified, vilenkin):
    return vilenkin if Q == 1 else unified


def check_r(r):
    r = _need(r, "r")
    if not r > 1:
        raise HypothesisViolation("1 < r < inf", f"r={r}")
    return r


def check_s(s):
    s = _need(s, "s")
    if not s >= 1:
        raise HypothesisViolation("1 <= s < inf", f"s={s}")
    return s


def _delta_range(Q, delta):
    if not 0 <= delta < Q:
        raise HypothesisViolation(_label(Q, "0 <= delta < Q", "0 <= delta < 1"), f"delta={delta}")


def hardy_strong(geom, r, alpha, delta=0):
    Q = geom.hom_dim
    r = check_r(r)
    alpha = _need(alpha, "alpha")
    delta = _need(delta, "delta")
    _delta_range(Q, delta)
    if not alpha < (r - 1) * Q - delta * r:
        raise HypothesisViolation(_label(Q, "alpha < (r-1)Q - delta*r", "alpha < r(1-delta)-1"),
                                  f"alpha={alpha}, r={r}, delta={delta}")
    return r, alpha, delta


def adjoint_strong(geom, r, alpha, delta=0):
    Q = geom.hom_dim
    r = check_r(r)
    alpha = _need(alpha, "alpha")
    delta = _need(delta, "delta")
    _delta_range(Q, delta)
    if not alpha > -Q:
        raise HypothesisViolation(_label(Q, "-Q < alpha", "-1 < alpha"), f"alpha={alpha}")
    return r, alpha, delta


def hardy_weak(geom, r, s, beta, delta=0):
    Q = geom.hom_dim
    r = check_r(r)
    s = check_s(s)
    beta = _need(beta, "beta")
    delta = _need(delta, "delta")
    if not beta < (r - 1) * Q:
        raise HypothesisViolation(_label(Q, "beta < (r-1)Q", "beta < r-1"), f"beta={beta}, r={r}")
    if not 0 <= delta < (beta + Q) / r:
        raise HypothesisViolation(_label(Q, "0 <= delta < (beta+Q)/r", "0 <= delta < (beta+1)/r"),
                                  f"delta={delta}, beta={beta}, r={r}")
    return r, s, beta, delta


def hardy_weak_l1(geom, s, beta, delta=0):
    Q = geom.hom_dim
    s = check_s(s)
    beta = _need(beta, "beta")
    delta = _need(delta, "delta")
    _delta_range(Q, delta)
    if not beta < Q - delta:
        raise HypothesisViolation(_label(Q, "beta < Q-delta", "beta < 1-delta"), f"beta={beta}, delta={delta}")
    return s, beta, delta


def adjoint_weak(geom, r, s, beta, delta=0):
    Q = geom.hom_dim
    r = check_r(r)
    s = check_s(s)
    beta = _need(beta, "beta")
    delta = _need(delta, "delta")
    if not delta < Q:
        raise HypothesisViolation(_label(Q, "delta < Q", "delta < 1"), f"delta={delta}")
    if not delta * r - Q < beta:
        raise HypothesisViolation(_label(Q, "delta*r-Q < beta", "delta*r-1 < beta"),
                                  f"beta={beta}, delta={delta}, r={r}")
    return r, s, beta, delta


def adjoint_weak_l1(geom, s, beta, delta=0):
    Q = geom.hom_dim
    s = check_s(s)
    beta = _need(beta, "beta")
    delta = _need(delta, "delta")
    if not delta < Q:
        raise HypothesisViolation(_label(Q, "delta < Q", "delta < 1"), f"delta={delta}")
    if not -(Q - delta) < beta:
        raise HypothesisViolation(_label(Q, "-(Q-delta) < beta", "-(1-delta) < beta"),
                                  f"beta={beta}, delta={delta}")
    return s, beta, delta


def hlp(geom, r, alpha):
    Q = geom.hom_dim
    r = check_r(r)
    alpha = _need(alpha, "alpha")
    if not alpha < (r - 1) * Q:
        raise HypothesisViolation(_label(Q, "alpha < (r-1)Q", "alpha < r-1"), f"alpha={alpha}, r={r}")
    if not alpha > -Q:
        raise HypothesisViolation(_label(Q, "-Q < alpha", "-1 < alpha"), f"alpha={alpha}")
    return r, alpha


def weak_gamma(geom, r, s, beta, delta):
    """gamma with (beta+Q)/r - delta = (gamma+Q)/s."""
    Q = geom.hom_dim
    return to_real(s) * ((to_real(beta) + Q) / to_real(r) - to_real(delta)) - Q


def weak_l1_gamma(geom, s, beta, delta):
    """gamma with Q - delta - beta = (gamma+Q)/s."""
    Q = geom.hom_dim
    return to_real(s) * (Q - to_real(delta) - to_real(beta)) - Q


def adjoint_weak_l1_gamma(geom, s, beta, delta):
    """gamma with Q - delta + beta = (gamma+Q)/s."""
    Q = geom.hom_dim
    return to_real(s) * (Q - to_real(delta) + to_real(beta)) - Q
