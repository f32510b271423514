"""Weighted and functional checks, families, Monte Carlo and grid-level checks."""

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from vilenkin_hardy import ShellGeometry
from vilenkin_hardy._numeric import power, rel_err
from vilenkin_hardy.errors import HypothesisViolation, InvalidParams
from vilenkin_hardy.groups import heisenberg, qp
from vilenkin_hardy.radial import RadialFunction, ball_indicator, scale, shell_indicator, shift
from vilenkin_hardy.verify import (BOUNDED, VIOLATED, TestFamily, VerificationReport, balance_defect,
                                   functional_inequality_check, generate, laplacian_desk_check, mc_cross_check,
                                   radialization_check, replicate, vt_homogeneity, vt_of_constant,
                                   weighted_constants, weighted_inequality_check)
from vilenkin_hardy.verify.functional import validate
from vilenkin_hardy.verify.weighted import normalized_ratio, sides

mpmath.mp.dps = 50
SPAN = 400
G = ShellGeometry(2, 1)
# balanced configurations on (base 2, Q 1), solved by hand from the balance relation
BALL = dict(direction="ball", alpha=2, beta=0, r=2, s=2)
COMPLEMENT = dict(direction="complement", alpha=mpq(1, 2), beta=mpq(3, 2), r=2, s=2)
COMPACT = dict(direction="compact", alpha=mpq(5, 2), beta=mpq(-1, 2), r=2, s=2)


def brute_sides(f, direction, alpha, beta, r, s):
    b = mpmath.mpf(int(f.geom.base))
    Q = int(f.geom.Q)
    S0 = 1 - b ** -Q
    ks = range(-SPAN, SPAN)
    vals = {k: mpmath.mpf(str(f.evaluate(k))) for k in ks}
    mu = {k: b ** (-k * Q) * S0 for k in ks}
    acc, inner = mpmath.mpf(0), {}
    if direction == "complement":
        for k in ks:
            inner[k] = acc
            acc += vals[k] * mu[k]
    else:
        for k in reversed(ks):
            acc += vals[k] * mu[k] if (direction != "compact" or k >= 0) else 0
            inner[k] = acc if (direction != "compact" or k >= 0) else 0
    a, be, r, s = (mpmath.mpf(str(x)) for x in (alpha, beta, r, s))
    lhs = sum(b ** (k * a) * inner[k] ** s * mu[k] for k in ks if inner[k])
    rhs = sum(abs(vals[k]) ** r * b ** (-k * be) * mu[k] for k in ks if vals[k])
    return lhs, rhs


def mp(x):
    return mpmath.mpf(str(x))


class TestWeightedSides:
    @pytest.mark.parametrize("cfg", [BALL, COMPLEMENT, COMPACT], ids=lambda c: c["direction"])
    @pytest.mark.parametrize("n", [-2, 0, 1])
    def test_against_shell_sums(self, cfg, n):
        c = dict(cfg)
        d = c.pop("direction")
        for f in (ball_indicator(G, n), shell_indicator(G, n),
                  RadialFunction(G, n, [mpq(1), mpq(3), 0, mpq(1, 2)])):
            lhs, rhs = sides(f, d, **c)
            bl, br = brute_sides(f, d, **c)
            assert abs(mp(lhs) - bl) <= abs(bl) * mpmath.mpf(10) ** -35
            assert abs(mp(rhs) - br) <= abs(br) * mpmath.mpf(10) ** -35

    @pytest.mark.parametrize("cfg", [BALL, COMPLEMENT], ids=lambda c: c["direction"])
    @given(st.integers(-8, 8), st.lists(st.integers(0, 9), min_size=1, max_size=6).filter(any),
           st.integers(1, 50))
    def test_balanced_ratio_is_dilation_and_scale_invariant(self, cfg, m, vals, c):
        c_ = dict(cfg)
        d = c_.pop("direction")
        f = RadialFunction(G, -2, [mpq(v) for v in vals])
        base = normalized_ratio(*sides(f, d, **c_), c_["r"], c_["s"])
        moved = normalized_ratio(*sides(scale(shift(f, m), c), d, **c_), c_["r"], c_["s"])
        assert rel_err(base, moved) <= mpq(1, 10 ** 40)

    def test_defect_zero_at_balance(self):
        for cfg in (BALL, COMPLEMENT, COMPACT):
            assert balance_defect(G, cfg["alpha"], cfg["beta"], cfg["r"], cfg["s"]) == 0


class TestWeightedChecks:
    @pytest.mark.parametrize("cfg", [BALL, COMPLEMENT, COMPACT], ids=lambda c: c["direction"])
    def test_sufficiency(self, cfg):
        rep = weighted_inequality_check(geom=G, **cfg)
        assert rep.verdict == BOUNDED and rep.passed
        assert rep.details["derived_bound"] == rep.target
        assert max(rep.ratios) <= rep.target
        assert len(rep.ratios) == 20

    def test_derived_is_at_least_printed_when_r_le_s(self):
        c = weighted_constants(G, "ball", 2, 0, 2, 2)
        # C1 >= 1 here, so C1^s >= C1^(s/r)
        assert c["C1"] >= 1 and c["derived"] >= c["printed"]

    def test_necessity_growth(self):
        rep = weighted_inequality_check("ball", G, mpq(5, 2), 0, 2, 2, mode="necessity")
        assert rep.verdict == VIOLATED and rep.expected_violation and rep.passed
        assert rep.details["n"] == list(range(1, 11))
        r = rep.ratios
        # the ratio grows geometrically with the defect
        d = balance_defect(G, mpq(5, 2), 0, 2, 2)
        assert d == mpq(1, 4)
        assert rel_err(r[-1] / r[-2], power(mpq(2), d)) < mpq(1, 10 ** 20)

    def test_negative_defect_walks_the_other_way(self):
        rep = weighted_inequality_check("ball", G, mpq(3, 2), 0, 2, 2, mode="necessity")
        assert rep.details["n"] == list(range(-1, -11, -1))
        assert rep.verdict == VIOLATED

    def test_compact_negative_defect_only_bounded(self):
        rep = weighted_inequality_check("compact", G, mpq(3, 2), 0, 2, 2, mode="necessity")
        assert rep.verdict == BOUNDED and "note" in rep.details

    @pytest.mark.parametrize("kw,exc", [
        (dict(direction="sideways", alpha=2, beta=0, r=2, s=2), InvalidParams),
        (dict(direction="ball", alpha=2, beta=0, r=2, s=2, mode="both"), InvalidParams),
        (dict(direction="ball", alpha=mpq(5, 2), beta=0, r=2, s=2), HypothesisViolation),
        (dict(direction="ball", alpha=2, beta=0, r=2, s=2, mode="necessity"), HypothesisViolation),
        (dict(direction="ball", alpha=1, beta=0, r=2, s=2), HypothesisViolation),
        (dict(direction="ball", alpha=2, beta=0, r=3, s=2), HypothesisViolation),
        (dict(direction="complement", alpha=mpq(1, 2), beta=mpq(1, 2), r=2, s=2), HypothesisViolation),
    ])
    def test_rejections(self, kw, exc):
        with pytest.raises(exc):
            weighted_inequality_check(geom=G, **kw)


class TestFamilies:
    def test_widened_contains_original(self):
        for gen in ("indicators", "powers", "random-locally-constant"):
            fam = TestFamily(gen, -2, 2, seed=3)
            small = {lab for lab, _ in generate(fam, G)}
            big = {lab for lab, _ in generate(fam.widened(), G)}
            assert small < big

    def test_extremal_family(self):
        fam = TestFamily("extremal", -3, 4, {"variant": "hardy", "inequality": {"r": 2, "alpha": 0}})
        assert [lab for lab, _ in generate(fam, G)] == [f"hardy{n}" for n in range(5)]

    def test_errors(self):
        with pytest.raises(InvalidParams):
            TestFamily("gaussians")
        with pytest.raises(InvalidParams):
            TestFamily("powers", 3, 1)

    def test_report_rejects_unknown_verdict(self):
        with pytest.raises(ValueError):
            VerificationReport("x", {}, {}, verdict="maybe")


G3 = ShellGeometry(3, 1)


class TestFunctional:
    def test_hardy_sobolev_bounded(self):
        rep = functional_inequality_check("hardy_sobolev", G3, {"a": mpq(1, 4), "b": 0, "r": 2, "s": 4})
        assert rep.verdict == BOUNDED and rep.details["growth"] <= mpq(1, 100)

    def test_uncertainty_records_holder_step(self):
        rep = functional_inequality_check("uncertainty", ShellGeometry(3, 2), {"a": mpq(1, 2), "r": 2})
        assert rep.details["holder_step"] and rep.verdict == BOUNDED

    def test_hls_derives_s(self):
        assert validate("hls", G3, {"lam": mpq(1, 2), "r": mpq(3, 2)})["s"] == 6

    @pytest.mark.parametrize("kind,params", [
        ("hardy_sobolev", {"a": mpq(1, 3), "b": 0, "r": 2, "s": 4}),
        ("hardy_sobolev", {"a": mpq(3, 4), "b": 0, "r": 2, "s": 4}),
        ("hls", {"lam": 2, "r": 2}),
        ("hls", {"lam": mpq(1, 2), "r": 3}),
        ("stein_weiss", {"lam": mpq(1, 2), "alpha": mpq(-1, 10), "beta": 0, "r": mpq(3, 2)}),
        ("uncertainty", {"a": 1, "r": 2}),
        ("gagliardo_nirenberg", {"a": mpq(1, 4), "r": 2, "tau": mpq(1, 2), "theta": mpq(1, 2)}),
        ("gagliardo_nirenberg", {"a": mpq(1, 4), "r": 2, "tau": 2, "theta": 1}),
    ])
    def test_hypotheses(self, kind, params):
        with pytest.raises(HypothesisViolation):
            validate(kind, G3, params)

    def test_stein_weiss_needs_prime_base(self):
        with pytest.raises(HypothesisViolation, match="prime"):
            validate("stein_weiss", ShellGeometry(4, 1), {"lam": mpq(1, 2), "alpha": 0, "beta": 0, "r": mpq(3, 2)})

    def test_unknown_and_missing(self):
        with pytest.raises(InvalidParams):
            validate("poincare", G3, {})
        with pytest.raises(InvalidParams):
            validate("uncertainty", G3, {"a": 1})

    @given(st.integers(-5, 5), st.lists(st.integers(-9, 9), min_size=1, max_size=5))
    def test_vt_homogeneity(self, m, vals):
        f = RadialFunction(G3, -1, [mpq(v) for v in vals])
        lhs, rhs = vt_homogeneity(f, mpq(1, 2), m)
        assert lhs.equals(rhs, rtol=mpq(1, 10 ** 40))

    def test_vt_of_constant(self):
        assert vt_of_constant(G3, mpq(1, 2), 7).is_zero()


class TestMonteCarlo:
    def test_deterministic_by_seed(self):
        a = mc_cross_check(qp(3), "riesz_value", samples=5000, seed=4)
        b = mc_cross_check(qp(3), "riesz_value", samples=5000, seed=4)
        c = mc_cross_check(qp(3), "riesz_value", samples=5000, seed=5)
        assert a.ratios == b.ratios != c.ratios

    @pytest.mark.parametrize("quantity", ["equal_shell_kernel", "radial_convolution_value", "riesz_value"])
    def test_bounded(self, quantity):
        assert mc_cross_check(heisenberg(3), quantity, k=1, samples=20000, seed=2).verdict == BOUNDED

    def test_rejections(self):
        with pytest.raises(InvalidParams):
            mc_cross_check(qp(3), "riesz_value", samples=10)
        with pytest.raises(InvalidParams):
            mc_cross_check(qp(3), "variance")
        with pytest.raises(InvalidParams):
            mc_cross_check(qp(3), "riesz_value", k=-1, samples=2000)

    def test_replicate(self):
        runs = replicate(qp(5), "riesz_value", samples=2000, seed=1, workers=3)
        assert len({r.seed for r in runs}) == 3
        assert [r.ratios for r in runs] == [r.ratios for r in replicate(qp(5), "riesz_value", samples=2000,
                                                                         seed=1, workers=3)]


class TestGridChecks:
    def test_radialization(self):
        rep = radialization_check(qp(3, 2), members=15, seed=1)
        assert rep.verdict == BOUNDED
        assert rep.details["hardy_images_equal"]
        assert rep.details["min_quotient_gain"] >= 0
        assert rep.details["nonradial_members"] > 0

    def test_laplacian_desk(self):
        rep = laplacian_desk_check(qp(3, 1), mpq(1, 4), 0, 2, 4, members=3, seed=0)
        assert rep.details["dilate_ratios_match"]
        assert rep.verdict == BOUNDED
