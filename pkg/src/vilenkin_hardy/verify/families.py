"""Generators of radial test functions."""

from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .._numeric import to_real
from ..errors import InvalidParams
from ..radial import (RadialFunction, TailTerm, ball_indicator, complement_indicator, extremal_hardy_sequence,
                      shell_indicator)

GENERATORS = ("extremal", "powers", "indicators", "random-locally-constant")


@dataclass(frozen=True)
class TestFamily:
    """A generator id, an index window [lo, hi] and generator parameters.

    * indicators: 1_{G_n} and 1_{shell n} for n in the window
    * powers: |x|^sigma on G_n and off G_n for each sigma in ``params['sigmas']``
    * random-locally-constant: a few random nonnegative step profiles (``shapes``,
      ``width`` shells each) started at every n in the window
    * extremal: members n = lo..hi of an extremal sequence (``params['variant']``, ``params['inequality']``)
    """

    __test__ = False  # not a pytest class

    generator: str
    lo: int = -2
    hi: int = 2
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise InvalidParams(f"unknown family {self.generator!r}; choose from {', '.join(GENERATORS)}")
        if self.hi < self.lo:
            raise InvalidParams("empty index window")

    def widened(self, factor=2):
        """The nested extension: the same generator on a window ``factor`` times wider."""
        return TestFamily(self.generator, self.lo * factor, self.hi * factor, self.params, self.seed)

    def members(self, geom):
        return list(generate(self, geom))


def _powers(geom, lo, hi, sigmas):
    for sigma in sigmas:
        sigma = to_real(sigma)
        for n in range(lo, hi + 1):
            yield f"pow{sigma}_in{n}", RadialFunction(geom, n, [geom.pow(-n * sigma)],
                                                      inner=[TailTerm(1, sigma, 0)])
            yield f"pow{sigma}_out{n}", RadialFunction(geom, n - 1, [geom.pow(-(n - 1) * sigma)],
                                                       outer=[TailTerm(1, sigma, 0)])


def _random(geom, lo, hi, seed, shapes, width):
    # the shapes are drawn once and placed at every offset, so a wider window
    # contains every member of a narrower one
    rng = np.random.default_rng(seed)
    table = []
    for j in range(shapes):
        vals = [mpq(int(v)) for v in rng.integers(0, 8, size=width)]
        if not any(vals):
            vals[j % width] = mpq(1)
        table.append(vals)
    for j, vals in enumerate(table):
        for n in range(lo, hi + 1):
            yield f"rand{j}@{n}", RadialFunction(geom, n, vals)


def generate(family, geom):
    """Yield (label, RadialFunction) pairs."""
    lo, hi = family.lo, family.hi
    g = family.generator
    if g == "indicators":
        for n in range(lo, hi + 1):
            yield f"ball{n}", ball_indicator(geom, n)
        for n in range(lo, hi + 1):
            yield f"shell{n}", shell_indicator(geom, n)
        if family.params.get("complements"):
            for n in range(lo, hi + 1):
                yield f"compl{n}", complement_indicator(geom, n)
    elif g == "powers":
        yield from _powers(geom, lo, hi, family.params.get("sigmas", (mpq(1, 2), mpq(-1, 2))))
    elif g == "random-locally-constant":
        yield from _random(geom, lo, hi, family.seed, family.params.get("shapes", 4), family.params.get("width", 4))
    else:
        variant = family.params.get("variant", "hardy")
        ineq = family.params.get("inequality", {})
        for n in range(max(lo, 0), hi + 1):
            yield f"{variant}{n}", extremal_hardy_sequence(geom, ineq, n, variant)


def union(geom, families):
    out = []
    for fam in families:
        out.extend(generate(fam, geom))
    return out
