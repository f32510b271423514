"""Shell structure of a constant-order filtration.

Shell ``k`` is ``G_k \\ G_{k+1}``; every point on it has norm ``base**-k``.
Haar measure is normalized by ``|G_0| = 1``.
"""

from dataclasses import dataclass

from gmpy2 import mpq

from ._numeric import power, to_real
from .errors import InvalidGeometry


@dataclass(frozen=True)
class ShellGeometry:
    base: object
    hom_dim: int = 1

    def __post_init__(self):
        base = to_real(self.base)
        if not base > 1:
            raise InvalidGeometry(f"base must be > 1, got {self.base}")
        if isinstance(self.hom_dim, bool) or int(self.hom_dim) != self.hom_dim or self.hom_dim < 1:
            raise InvalidGeometry(f"hom_dim must be an integer >= 1, got {self.hom_dim}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "hom_dim", int(self.hom_dim))

    @property
    def Q(self):
        return self.hom_dim

    def pow(self, e):
        """base**e."""
        return power(self.base, to_real(e))

    def radius(self, k):
        return self.pow(-k)

    def ball_measure(self, k):
        return self.pow(-k * self.hom_dim)

    def shell_measure(self, k):
        return self.ball_measure(k) * self.shell_factor

    def weighted_shell_measure(self, k, gamma):
        gamma = to_real(gamma)
        return self.pow(-k * (gamma + self.hom_dim)) * self.shell_factor

    @property
    def shell_factor(self):
        # 1 - base^-Q, the shell-0 mass
        return 1 - self.pow(-self.hom_dim)

    @property
    def order(self):
        return self.pow(self.hom_dim)

    def __str__(self):
        return f"ShellGeometry(base={self.base}, Q={self.hom_dim})"


def shell_measure(geom, k):
    return geom.shell_measure(k)


def ball_measure(geom, k):
    return geom.ball_measure(k)


def weighted_shell_measure(geom, k, gamma):
    return geom.weighted_shell_measure(k, gamma)


def vilenkin_graded_reparam(q, Q, alpha, delta):
    """Map graded data (q, Q, alpha, delta) to plain-Vilenkin (kappa, alpha_v, delta_v).

    Under kappa = q**Q every graded constant equals the Vilenkin one with
    alpha_v = alpha/Q and delta_v = delta/Q.
    """
    if isinstance(Q, bool) or int(Q) != Q or Q < 1:
        raise InvalidGeometry(f"Q must be an integer >= 1, got {Q}")
    q = to_real(q)
    Q = int(Q)
    return power(q, mpq(Q)), to_real(alpha) / Q, to_real(delta) / Q


def reparam_geometry(geom):
    """The Q=1 geometry with base**Q as its base."""
    return ShellGeometry(geom.order, 1)
