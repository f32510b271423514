"""Outcome of a theorem check."""

from dataclasses import dataclass, field

from .._numeric import to_real

ATTAINED = "attained"
CONVERGING = "converging"
BOUNDED = "bounded"
VIOLATED = "violated"
VERDICTS = (ATTAINED, CONVERGING, BOUNDED, VIOLATED)



@dataclass
class VerificationReport:
    """Ratios observed by a check, the target they are compared with, and the verdict.

    ``expected_violation`` marks necessity runs, where ``violated`` is the
    outcome the theorem predicts.  ``runtime`` is informational and is left
    out of the reproducible payload.
    """

    theorem: str
    geometry: dict
    params: dict
    target: object = None
    ratios: list = field(default_factory=list)
    gap: object = None
    verdict: str = BOUNDED
    expected_violation: bool = False
    runtime: float = 0.0
    seed: object = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def passed(self):
        if self.expected_violation:
            return self.verdict == VIOLATED
        return self.verdict in (ATTAINED, CONVERGING, BOUNDED)

    def summary(self):
        tag = "ok" if self.passed else "FAIL"
        gap = "" if self.gap is None else f" gap={float(self.gap):.3e}"
        return f"[{tag}] {self.theorem}: {self.verdict}{gap} ({len(self.ratios)} ratios)"


def geometry_dict(geom):
    return {"base": geom.base, "Q": geom.hom_dim}


def is_monotone(values, strict=False):
    pairs = list(zip(values, values[1:]))
    if strict:
        return all(b > a for a, b in pairs)
    return all(b >= a for a, b in pairs)


def slack():
    """Absolute slack allowed above a target: 1e-12."""
    return to_real("1e-12")
