"""Concrete graded p-adic groups in coordinates.

* ``QpVector(d)``: Q_p^d, all weights 1.
* ``Heisenberg(d)``: matrix coordinates (x, y, z), x, y in Q_p^d; weights 1 on
  x, y and 2 on z; law (x+x', y+y', z+z'+x.y').
* ``Engel``: exponential coordinates (x, y1, y2, y3), weights (1, 1, 2, 3);
  law (x+x', y1+y1', y2+y2'-x y1', y3+y3'+x^2 y1'/2-x y2').  Needs p != 2.
* ``UniTriangular(m)``: entries M_ij, i < j, of a unipotent upper triangular
  matrix, ordered by (j-i, i); weight j-i; matrix multiplication.

The filtration is G_n = {ord(c_i) >= n nu_i for every i}, so the shell of an
element is min_i floor(ord(c_i)/nu_i).  The batch kernels carry their own
integer versions of these laws; tests hold the two against each other.
"""

import random as _random
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidParams, PrecisionIndeterminate, UnsupportedModel
from .padic import INF, PAdicScalar, is_prime

KINDS = ("qp", "heisenberg", "engel", "unitriangular")


@dataclass(frozen=True)
class GroupModel:
    kind: str
    p: int
    dim_param: int = 1
    names: tuple = field(init=False, compare=False)
    weights: tuple = field(init=False, compare=False)
    pairs: tuple = field(init=False, compare=False, default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedModel(f"unknown model kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if not is_prime(self.p):
            raise InvalidParams(f"p must be prime, got {self.p}")
        d = int(self.dim_param)
        if self.kind == "qp":
            if d < 1:
                raise InvalidParams("d must be >= 1")
            names = tuple(f"c{i + 1}" for i in range(d))
            weights = (1,) * d
            pairs = ()
        elif self.kind == "heisenberg":
            if d < 1:
                raise InvalidParams("d must be >= 1")
            names = tuple(f"x{i + 1}" for i in range(d)) + tuple(f"y{i + 1}" for i in range(d)) + ("z",)
            weights = (1,) * (2 * d) + (2,)
            pairs = ()
        elif self.kind == "engel":
            if self.p == 2:
                raise UnsupportedModel("the Engel law divides by 2; p = 2 is not supported")
            names = ("x", "y1", "y2", "y3")
            weights = (1, 1, 2, 3)
            pairs = ()
        else:
            if d < 2:
                raise InvalidParams("m must be >= 2")
            pairs = tuple(sorted(((i, j) for i in range(d) for j in range(i + 1, d)),
                                 key=lambda ij: (ij[1] - ij[0], ij[0])))
            names = tuple(f"m{i + 1}{j + 1}" for i, j in pairs)
            weights = tuple(j - i for i, j in pairs)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "pairs", pairs)

    @property
    def dim(self):
        return len(self.weights)

    @property
    def hom_dim(self):
        return sum(self.weights)

    @property
    def gradation(self):
        """[(weight, dimension)] in increasing weight."""
        out = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return sorted(out.items())

    def label(self):
        if self.kind == "qp":
            return f"Q_{self.p}^{self.dim_param}"
        if self.kind == "heisenberg":
            return f"H_{self.dim_param}(Q_{self.p})"
        if self.kind == "engel":
            return f"E_4(Q_{self.p})"
        return f"T_{self.dim_param}(Q_{self.p})"

    def geometry(self):
        from ..geometry import ShellGeometry

        return ShellGeometry(self.p, self.hom_dim)

    # ------------------------------------------------------------ generic laws
    def law(self, a, b, R):
        """Coordinates of a*b; ``R`` supplies add, sub, mul, half."""
        k = self.kind
        if k == "qp":
            return [R.add(s, t) for s, t in zip(a, b)]
        if k == "heisenberg":
            d = self.dim_param
            out = [R.add(a[i], b[i]) for i in range(2 * d)]
            z = R.add(a[-1], b[-1])
            for i in range(d):
                z = R.add(z, R.mul(a[i], b[d + i]))
            out.append(z)
            return out
        if k == "engel":
            x, y1, y2, y3 = a
            u, v1, v2, v3 = b
            return [
                R.add(x, u),
                R.add(y1, v1),
                R.sub(R.add(y2, v2), R.mul(x, v1)),
                R.sub(R.add(R.add(y3, v3), R.half(R.mul(R.mul(x, x), v1))), R.mul(x, v2)),
            ]
        idx = {ij: n for n, ij in enumerate(self.pairs)}
        out = []
        for n, (i, j) in enumerate(self.pairs):
            c = R.add(a[n], b[n])
            for l in range(i + 1, j):
                c = R.add(c, R.mul(a[idx[(i, l)]], b[idx[(l, j)]]))
            out.append(c)
        return out

    def inverse_law(self, a, R):
        k = self.kind
        if k == "qp":
            return [R.neg(s) for s in a]
        if k == "heisenberg":
            d = self.dim_param
            out = [R.neg(a[i]) for i in range(2 * d)]
            z = R.neg(a[-1])
            for i in range(d):
                z = R.add(z, R.mul(a[i], a[d + i]))
            out.append(z)
            return out
        if k == "engel":
            x, y1, y2, y3 = a
            return [
                R.neg(x),
                R.neg(y1),
                R.sub(R.neg(y2), R.mul(x, y1)),
                R.sub(R.sub(R.neg(y3), R.half(R.mul(R.mul(x, x), y1))), R.mul(x, y2)),
            ]
        idx = {ij: n for n, ij in enumerate(self.pairs)}
        out = [None] * len(self.pairs)
        for n, (i, j) in enumerate(self.pairs):
            c = R.neg(a[n])
            for l in range(i + 1, j):
                c = R.sub(c, R.mul(a[idx[(i, l)]], out[idx[(l, j)]]))
            out[n] = c
        return out

    # ------------------------------------------------------------ elements
    def element(self, coords, N=20):
        """Build an element from integers, Fractions or PAdicScalars."""
        if len(coords) != self.dim:
            raise InvalidParams(f"{self.label()} needs {self.dim} coordinates, got {len(coords)}")
        cs = []
        for c in coords:
            if isinstance(c, PAdicScalar):
                if c.p != self.p:
                    raise InvalidParams("coordinate prime differs from the model's")
                cs.append(c)
            else:
                cs.append(PAdicScalar.from_rational(self.p, c, N))
        return GroupElement(self, tuple(cs))

    def identity(self, N=20):
        return GroupElement(self, tuple(PAdicScalar.zero(self.p, N) for _ in self.weights))

    def exp_basis(self, i, t, N=20):
        """exp(t X_i): the element whose only nonzero coordinate is the i-th, equal to t."""
        if not 0 <= i < self.dim:
            raise UnsupportedModel(f"basis index {i} out of range for {self.label()}")
        t = t if isinstance(t, PAdicScalar) else PAdicScalar.from_rational(self.p, t, N)
        cs = [PAdicScalar.zero(self.p, N) for _ in self.weights]
        cs[i] = t
        return GroupElement(self, tuple(cs))


class _PadicRing:
    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def half(a):
        return a * PAdicScalar.from_rational(a.p, Fraction(1, 2), a.N)


class GroupElement:
    __slots__ = ("model", "coords")

    def __init__(self, model, coords):
        self.model = model
        self.coords = tuple(coords)

    def __mul__(self, other):
        return multiply(self, other)

    def inverse(self):
        return inverse(self)

    def quasi_norm(self):
        return quasi_norm(self)

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self.model == other.model
                and all(a == b for a, b in zip(self.coords, other.coords)))

    __hash__ = None

    def __repr__(self):
        return f"GroupElement({self.model.label()}, {list(self.coords)})"


def _same(g, h):
    if g.model != h.model:
        raise InvalidParams("elements belong to different models")


def multiply(g, h):
    _same(g, h)
    return GroupElement(g.model, g.model.law(g.coords, h.coords, _PadicRing))


def inverse(g):
    return GroupElement(g.model, g.model.inverse_law(g.coords, _PadicRing))


def commutator(g, h):
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h))


def shell_index(g):
    """min_i floor(ord(c_i)/nu_i); +inf for the identity."""
    best = INF
    bounds = []
    for c, w in zip(g.coords, g.model.weights):
        if c.is_exact_zero():
            continue
        if c.is_inexact_zero():
            bounds.append(c.val // w)
            continue
        best = min(best, c.val // w)
    if any(b < best for b in bounds) or (bounds and best == INF):
        raise PrecisionIndeterminate("a coordinate that is zero to precision could decide the shell")
    return best


def quasi_norm(g):
    """(shell k, |g|_G = p**-k); the identity gives (+inf, 0)."""
    k = shell_index(g)
    if k == INF:
        return k, Fraction(0)
    p = g.model.p
    return k, Fraction(1, p ** k) if k >= 0 else Fraction(p ** (-k))


def dilate(gamma, g):
    """D_gamma: coordinate i times gamma**nu_i."""
    p = g.model.p
    if not isinstance(gamma, PAdicScalar):
        gamma = PAdicScalar.from_rational(p, gamma, max(c.N for c in g.coords))
    if gamma.is_zero():
        raise InvalidParams("dilation by zero")
    return GroupElement(g.model, tuple(c * gamma ** w for c, w in zip(g.coords, g.model.weights)))


def sample_uniform(model, region="ball", k=0, seed=None, rng=None, N=20):
    """Haar-uniform element of G_k (``ball``) or G_k minus G_{k+1} (``shell``).

    Coordinate i is p**(nu_i k) times a uniform residue modulo p**N.  Shells use
    rejection of the sub-ball, which is accepted with probability 1 - p**-Q.
    """
    if rng is None:
        rng = _random.Random(seed)
    p = model.p
    if region not in ("ball", "shell"):
        raise InvalidParams("region must be 'ball' or 'shell'")
    while True:
        cs = tuple(PAdicScalar.from_digits(p, N, rng.randrange(p ** N), w * k, N) for w in model.weights)
        g = GroupElement(model, cs)
        if region == "ball":
            return g
        try:
            if shell_index(g) == k:
                return g
        except PrecisionIndeterminate:
            continue


def qp(p, d=1):
    return GroupModel("qp", p, d)


def heisenberg(p, d=1):
    return GroupModel("heisenberg", p, d)


def engel(p):
    return GroupModel("engel", p, 1)


def unitriangular(p, m=3):
    return GroupModel("unitriangular", p, m)


def make_model(kind, p, d=None):
    kind = kind.lower().replace("-", "").replace("_", "")
    aliases = {"qp": "qp", "qpvector": "qp", "vector": "qp", "heisenberg": "heisenberg", "engel": "engel",
               "unitriangular": "unitriangular", "triangular": "unitriangular"}
    if kind not in aliases:
        raise UnsupportedModel(f"unknown model {kind!r}")
    kind = aliases[kind]
    if d is None:
        d = 3 if kind == "unitriangular" else 1
    return GroupModel(kind, int(p), int(d))
