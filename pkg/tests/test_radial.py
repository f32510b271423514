"""Radial functions, norms and operators against brute-force shell sums."""

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import assume, given
from hypothesis import strategies as st

from vilenkin_hardy import ShellGeometry
from vilenkin_hardy._numeric import close, is_exact
from vilenkin_hardy.errors import DivergentNorm, DivergentOperator, InvalidGeometry, UnrepresentableResult
from vilenkin_hardy.radial import (RadialFunction, TailTerm, add, adjoint_hardy, ball_indicator, complement_indicator,
                                   constant, hardy, hlp, integrate, lr_norm, lr_norm_pow, mul, mul_power,
                                   power_function, radial_convolve, restrict, riesz_potential, scale, shell_indicator,
                                   shift, vt_apply, vt_constant, weak_norm, zero)

mpmath.mp.dps = 50
TOL = mpmath.mpf(10) ** -35
SPAN = 700


def mp(x):
    return mpmath.mpf(str(x)) if not isinstance(x, mpmath.mpf) else x


def mpbase(geom):
    b = geom.base
    return mpmath.mpf(int(b.numerator)) / int(b.denominator)


def agree(got, want, tol=TOL):
    got, want = mp(got), mpmath.mpf(want)
    return abs(got - want) <= tol * max(1, abs(want))


geoms = st.builds(ShellGeometry, st.sampled_from([2, 3, 4, 5, mpq(5, 2)]), st.integers(1, 3))
small_q = st.integers(-6, 6).map(lambda n: mpq(n, 2))


@st.composite
def finite_functions(draw, nonneg=False, geom=None):
    geom = geom or draw(geoms)
    lo = 0 if nonneg else -6
    vals = draw(st.lists(st.integers(lo, 6).map(mpq), min_size=1, max_size=6))
    assume(any(vals))
    return RadialFunction(geom, draw(st.integers(-4, 4)), vals)


@st.composite
def pairs(draw, nonneg=False):
    """Two finite functions on one geometry."""
    geom = draw(geoms)
    return draw(finite_functions(nonneg, geom)), draw(finite_functions(nonneg, geom))


@st.composite
def tailed_functions(draw):
    """Finite window plus an inner tail decaying towards the identity side (sigma >= 0 keeps it bounded)."""
    f = draw(finite_functions())
    sigma = draw(st.sampled_from([0, mpq(1, 2), 1, 2]))
    coeff = draw(st.integers(1, 4))
    return RadialFunction(f.geom, f.kmin, f.values, inner=[TailTerm(coeff, sigma)])


def brute_values(f, lo, hi):
    return {k: mp(f.evaluate(k)) for k in range(lo, hi + 1)}


def brute_norm_pow(f, r, alpha, lo=-SPAN, hi=SPAN):
    b = mpbase(f.geom)
    Q = f.geom.Q
    S0 = 1 - b ** -Q
    r = mp(r)
    return sum(abs(v) ** r * b ** (-k * (mp(alpha) + Q)) * S0
               for k, v in brute_values(f, lo, hi).items() if v != 0)


class TestConstruction:
    def test_evaluate_tails(self):
        g = ShellGeometry(2, 1)
        f = RadialFunction(g, 0, [5, 6], inner=[TailTerm(1, 1)], outer=[TailTerm(3, 0)])
        assert f.evaluate(-4) == 3
        assert f.evaluate(1) == 6
        assert f.evaluate(3) == mpq(1, 8)

    def test_degree_cap(self):
        with pytest.raises(UnrepresentableResult):
            TailTerm(1, 0, 3)
        g = ShellGeometry(2, 1)
        f = RadialFunction(g, 0, [1], inner=[TailTerm(1, 1, 2)])
        with pytest.raises(UnrepresentableResult):
            mul(f, f)

    def test_geometry_mismatch(self):
        with pytest.raises(InvalidGeometry):
            add(constant(ShellGeometry(2, 1), 1), constant(ShellGeometry(3, 1), 1))

    def test_indicators(self):
        g = ShellGeometry(3, 2)
        assert [ball_indicator(g, 1).evaluate(k) for k in (-1, 0, 1, 9)] == [0, 0, 1, 1]
        assert [complement_indicator(g, 1).evaluate(k) for k in (-9, 0, 1, 2)] == [1, 1, 0, 0]
        assert [shell_indicator(g, 1).evaluate(k) for k in (0, 1, 2)] == [0, 1, 0]

    @given(pairs(), st.integers(-8, 8))
    def test_pointwise_algebra(self, fg, k):
        f, g = fg
        assert add(f, g).evaluate(k) == f.evaluate(k) + g.evaluate(k)
        assert mul(f, g).evaluate(k) == f.evaluate(k) * g.evaluate(k)
        assert scale(f, mpq(3, 7)).evaluate(k) == mpq(3, 7) * f.evaluate(k)

    @given(tailed_functions(), st.integers(-5, 5), st.integers(-10, 10))
    def test_shift(self, f, m, k):
        assert close(shift(f, m).evaluate(k), f.evaluate(k + m))

    @given(tailed_functions(), st.integers(-10, 10), small_q)
    def test_mul_power(self, f, k, tau):
        assert close(mul_power(f, tau).evaluate(k), f.evaluate(k) * f.geom.pow(k * tau))

    @given(tailed_functions(), st.integers(-6, 2), st.integers(0, 6), st.integers(-10, 10))
    def test_restrict(self, f, lo, width, k):
        hi = lo + width
        want = f.evaluate(k) if lo <= k <= hi else 0
        assert restrict(f, lo, hi).evaluate(k) == want
        assert restrict(f, lo=lo).evaluate(k) == (f.evaluate(k) if k >= lo else 0)


class TestNorms:
    def test_frozen_indicator_norm(self):
        # ||1_{G_0}||_2^2 = 1 and the weighted one is a geometric series
        g = ShellGeometry(2, 1)
        assert lr_norm_pow(ball_indicator(g), 2) == 1
        assert lr_norm_pow(ball_indicator(g), 2, 1) == mpq(1, 2) / (1 - mpq(1, 4))

    @given(finite_functions(), st.sampled_from([1, mpq(3, 2), 2, 3]), small_q)
    def test_finite_against_brute(self, f, r, alpha):
        assert agree(lr_norm_pow(f, r, alpha), brute_norm_pow(f, r, alpha, f.kmin, f.kmax))

    @given(tailed_functions(), st.sampled_from([1, 2, mpq(5, 2)]), st.sampled_from([-mpq(1, 2), 0, 1]))
    def test_tailed_against_brute(self, f, r, alpha):
        # inner tail |x|^sigma is integrable near e when r sigma + alpha + Q > 0
        sigma = f.inner[0].sigma
        assume(r * sigma + alpha + f.geom.Q > mpq(1, 4))
        assert agree(lr_norm_pow(f, r, alpha), brute_norm_pow(f, r, alpha, f.kmin, SPAN))

    def test_two_term_tail_against_brute(self):
        g = ShellGeometry(3, 1)
        f = RadialFunction(g, 0, [1], inner=[TailTerm(2, mpq(1, 2)), TailTerm(-1, 1), TailTerm(1, 1, 1)])
        assert agree(lr_norm_pow(f, mpq(3, 2), 0), brute_norm_pow(f, mpq(3, 2), 0, 0, SPAN))

    def test_divergent(self):
        g = ShellGeometry(2, 1)
        with pytest.raises(DivergentNorm):
            lr_norm(constant(g, 1), 2)
        with pytest.raises(DivergentNorm):
            lr_norm(power_function(g, -1), 1)

    @given(finite_functions(), small_q)
    def test_integrate_against_brute(self, f, gamma):
        b = mpbase(f.geom)
        Q = f.geom.Q
        want = sum(mp(v) * b ** (-k * (mp(gamma) + Q)) * (1 - b ** -Q)
                   for k, v in zip(range(f.kmin, f.kmax + 1), f.values))
        assert agree(integrate(f, gamma), want)

    @given(finite_functions(), st.sampled_from([1, 2, 3]), small_q)
    def test_weak_norm_against_level_sets(self, f, s, gamma):
        b = mpbase(f.geom)
        Q = f.geom.Q
        vals = {k: abs(mp(v)) for k, v in zip(range(f.kmin, f.kmax + 1), f.values)}
        w = {k: b ** (-k * (mp(gamma) + Q)) * (1 - b ** -Q) for k in vals}
        want = max(v * sum(w[j] for j, u in vals.items() if u >= v) ** (mpmath.mpf(1) / s)
                   for v in vals.values() if v > 0)
        assert agree(weak_norm(f, s, gamma), want)

    @given(finite_functions(), st.sampled_from([1, 2, 3]))
    def test_weak_below_strong(self, f, s):
        # Chebyshev: the weak norm never exceeds the strong one
        assert weak_norm(f, s) <= lr_norm(f, s) * (1 + mpq(1, 10 ** 40))

    def test_weak_norm_power_tail(self):
        # f = |x|^-1 on G_0: {f >= 2^k} = G_k, so lambda w(f >= lambda) = 1 on every level
        g = ShellGeometry(2, 1)
        f = RadialFunction(g, 0, [1], inner=[TailTerm(1, -1)])
        want = max(mp(f.evaluate(k)) * (mpmath.mpf(2) ** -k) for k in range(0, 40))
        assert agree(weak_norm(f, 1), want)


def brute_hardy(f, delta, k):
    b = mpbase(f.geom)
    Q = f.geom.Q
    S0 = 1 - b ** -Q
    tot = sum(mp(f.evaluate(j)) * b ** (-j * Q) * S0 for j in range(k, SPAN))
    return b ** (k * (Q - mp(delta))) * tot


def brute_adjoint(f, delta, k):
    b = mpbase(f.geom)
    Q = f.geom.Q
    S0 = 1 - b ** -Q
    return sum(mp(f.evaluate(j)) * b ** (-j * mp(delta)) * S0 for j in range(-SPAN, k))


class TestHardyOperators:
    @given(tailed_functions(), st.sampled_from([0, mpq(1, 2)]), st.integers(-8, 8))
    def test_hardy_against_brute(self, f, delta, k):
        sigma = f.inner[0].sigma
        assume(sigma + f.geom.Q > mpq(1, 4))
        assert agree(hardy(f, delta).evaluate(k), brute_hardy(f, delta, k))

    @given(finite_functions(), st.sampled_from([0, mpq(1, 2)]), st.integers(-8, 8))
    def test_adjoint_against_brute(self, f, delta, k):
        assert agree(adjoint_hardy(f, delta).evaluate(k), brute_adjoint(f, delta, k))

    @given(finite_functions(), st.integers(-8, 8))
    def test_hlp_is_sum(self, f, k):
        assert agree(hlp(f).evaluate(k), brute_hardy(f, 0, k) + brute_adjoint(f, 0, k))

    @given(pairs(nonneg=True))
    def test_duality(self, fg):
        # <H_delta f, g> = <f, H*_delta g> with the adjoint's kernel
        f, g = fg
        delta = mpq(1, 3)
        lhs = integrate(mul(hardy(f, delta), g))
        # H_delta f(x) = |x|^-(Q-delta) int_{|y|<=|x|} f; its adjoint integrates |y|^-(Q-delta) over |y| >= |x|
        Hs = add(adjoint_hardy(g, delta), scale(mul_power(g, -delta), f.geom.shell_factor))
        rhs = integrate(mul(f, Hs))
        assert close(lhs, rhs, rtol=mpq(1, 10 ** 40))

    def test_exact_in_rational_mode(self):
        g = ShellGeometry(3, 2)
        f = RadialFunction(g, -1, [1, 2, 3])
        assert all(is_exact(v) for v in hardy(f, 1).values)

    def test_divergent_hardy(self):
        g = ShellGeometry(2, 1)
        with pytest.raises(DivergentOperator):
            hardy(power_function(g, -2))


def brute_convolve(f, g, k):
    """(f*g)(x), x on shell k, from the law of |y^-1 x| for y on each shell."""
    geom = f.geom
    b = mpbase(geom)
    Q = geom.Q
    u = b ** -Q
    S0 = 1 - u
    total = mpmath.mpf(0)
    for j in range(k - 60, k + 60):
        fj = mp(f.evaluate(j))
        if fj == 0:
            continue
        mass = b ** (-j * Q) * S0
        if j > k:
            total += fj * mp(g.evaluate(k)) * mass
        elif j < k:
            total += fj * mp(g.evaluate(j)) * mass
        else:
            law = [(k, (1 - 2 * u) / (1 - u))] + [(l, u ** (l - k)) for l in range(k + 1, k + 80)]
            total += fj * mass * sum(mp(g.evaluate(l)) * pl for l, pl in law)
    return total


class TestConvolution:
    @given(pairs(), st.integers(-6, 6))
    def test_against_shell_law(self, fg, k):
        f, g = fg
        assert agree(radial_convolve(f, g).evaluate(k), brute_convolve(f, g, k))

    @given(pairs(), st.integers(-6, 6))
    def test_commutative(self, fg, k):
        # radial functions commute under convolution even on nonabelian groups
        f, g = fg
        assert close(radial_convolve(f, g).evaluate(k), radial_convolve(g, f).evaluate(k))

    def test_ball_is_idempotent(self):
        # 1_{G_0} * 1_{G_0} = 1_{G_0} since G_0 is a subgroup of measure 1
        g = ShellGeometry(3, 2)
        h = radial_convolve(ball_indicator(g), ball_indicator(g))
        assert h.equals(ball_indicator(g)) or all(h.evaluate(k) == (1 if k >= 0 else 0) for k in range(-6, 6))

    def test_riesz_range(self):
        g = ShellGeometry(2, 1)
        with pytest.raises(DivergentOperator):
            riesz_potential(ball_indicator(g), 1)

    def test_riesz_against_brute(self):
        g = ShellGeometry(3, 1)
        f = ball_indicator(g)
        lam = mpq(1, 3)
        I = riesz_potential(f, lam)
        for k in range(-4, 4):
            assert agree(I.evaluate(k), brute_convolve(f, power_function(g, -lam), k), tol=mpmath.mpf(10) ** -25)


def brute_vt(f, a, k):
    """D^a f(x), x on shell k, from the difference kernel and the law of |x y^-1|."""
    geom = f.geom
    b = mpbase(geom)
    Q = geom.Q
    a = mp(a)
    u = b ** -Q
    c = (1 - b ** a) / (1 - b ** -(a + Q))
    fk = mp(f.evaluate(k))
    tot = mpmath.mpf(0)
    for j in range(k - SPAN, k):
        tot += (mp(f.evaluate(j)) - fk) * b ** (j * (a + Q)) * b ** (-j * Q) * (1 - u)
    same = sum((mp(f.evaluate(l)) - fk) * u ** (l - k) for l in range(k + 1, k + 120))
    tot += b ** (k * (a + Q)) * b ** (-k * Q) * (1 - u) * same
    return c * tot


class TestVT:
    def test_unit_ball_closed_form(self):
        # D^a 1_{G_0} = (1-b^-Q)/(1-b^-(a+Q)) inside, c_a |x|^-(a+Q) outside
        g = ShellGeometry(3, 1)
        a = mpq(1, 2)
        v = vt_apply(ball_indicator(g), a)
        inside = (1 - mpmath.mpf(1) / 3) / (1 - mpmath.mpf(3) ** -1.5)
        assert agree(v.evaluate(0), inside) and agree(v.evaluate(5), inside)
        c = (1 - mpmath.sqrt(3)) / (1 - mpmath.mpf(3) ** -1.5)
        assert agree(v.evaluate(-2), c * mpmath.mpf(3) ** (-2 * 1.5))

    @given(finite_functions(), st.sampled_from([mpq(1, 2), 1, mpq(3, 2)]), st.integers(-6, 6))
    def test_against_difference_kernel(self, f, a, k):
        assert agree(vt_apply(f, a).evaluate(k), brute_vt(f, a, k))

    @given(finite_functions(), st.sampled_from([mpq(1, 2), 1]))
    def test_mean_zero(self, f, a):
        # the symbol |xi|^a vanishes at 0, so the integral of D^a f is 0
        assert abs(integrate(vt_apply(f, a))) <= mpq(1, 10 ** 40)

    @given(geoms, st.integers(1, 3), st.integers(-5, 5))
    def test_constant_is_annihilated_exactly(self, geom, a, c):
        assert vt_apply(constant(geom, c), a).is_zero() or c == 0

    def test_constant_value(self):
        assert vt_constant(ShellGeometry(2, 1), 1) == (1 - 2) / (1 - mpq(1, 4))

    @given(finite_functions(), st.integers(1, 2), st.integers(-3, 3))
    def test_homogeneity(self, f, a, m):
        lhs = vt_apply(shift(f, m), a)
        rhs = scale(shift(vt_apply(f, a), m), f.geom.pow(-m * a))
        assert lhs.equals(rhs)

    def test_zero(self):
        g = ShellGeometry(2, 1)
        assert vt_apply(zero(g), 1).is_zero()
