from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpfr, mpq
from hypothesis import given
from hypothesis import strategies as st

from vilenkin_hardy import ShellGeometry, ball_measure, shell_measure, vilenkin_graded_reparam, weighted_shell_measure
from vilenkin_hardy._numeric import close, fmt, is_exact, power, precision, rel_err, root, to_real
from vilenkin_hardy.errors import InvalidGeometry
from vilenkin_hardy.geometry import reparam_geometry

mpmath.mp.dps = 60
bases = st.sampled_from([2, 3, 5, 7, mpq(5, 2), mpq(9, 4)])
dims = st.integers(1, 5)
ks = st.integers(-30, 30)


class TestToReal:
    def test_decimal_strings_are_exact(self):
        assert to_real("0.3") == mpq(3, 10)
        assert to_real(0.3) == mpq(3, 10)
        assert to_real("-3/4") == mpq(-3, 4)
        assert to_real(Fraction(2, 7)) == mpq(2, 7)

    def test_bool_rejected(self):
        with pytest.raises(TypeError):
            to_real(True)

    def test_garbage_rejected(self):
        with pytest.raises(TypeError):
            to_real([1])


class TestPowerAndRoot:
    def test_integer_exponent_stays_rational(self):
        assert power(mpq(3), mpq(-2)) == mpq(1, 9)
        assert is_exact(power(mpq(3), mpq(-2)))

    def test_fractional_exponent_matches_mpmath(self):
        got = power(mpq(2), mpq(1, 3))
        assert abs(mpmath.mpf(str(got)) - mpmath.cbrt(2)) < mpmath.mpf(10) ** -55

    def test_perfect_roots_are_exact(self):
        assert root(mpq(27, 8), 3) == mpq(3, 2)
        assert is_exact(root(mpq(27, 8), 3))

    def test_zero_to_negative_power(self):
        with pytest.raises(ZeroDivisionError):
            power(mpq(0), mpq(-1))

    @given(st.fractions(min_value=Fraction(1, 100), max_value=100), st.integers(1, 6))
    def test_root_inverts_power(self, x, n):
        x = to_real(x)
        assert close(power(root(x, n), mpq(n)), x, rtol=mpq(1, 10 ** 50))


class TestFormatting:
    def test_terminating_rationals_print_exactly(self):
        assert fmt(mpq(11, 20)) == "0.55"
        assert fmt(mpq(-1, 8)) == "-0.125"
        assert fmt(mpq(7)) == "7"

    def test_repeating_rational_prints_at_working_precision(self):
        with precision(200):
            s = fmt(mpq(1, 3))
        assert s.startswith("0.333333333333333333333333333333")
        assert len(s) > 55

    def test_infinity(self):
        assert fmt(mpfr("inf")) == "inf"

    @given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 6), st.integers(0, 6))
    def test_terminating_round_trip(self, n, i, j):
        x = mpq(n, 2 ** i * 5 ** j)
        assert mpq(fmt(x)) == x


def test_rel_err_and_close():
    assert rel_err(mpq(1), mpq(1)) == 0
    # rationals compare exactly, reals within the default 1e-30
    assert not close(mpq(1), mpq(1) + mpq(1, 10 ** 40))
    assert close(mpfr(1), mpq(1) + mpq(1, 10 ** 40))
    assert close(mpq(1), mpq(1) + mpq(1, 10 ** 40), rtol=mpq(1, 10 ** 30))


class TestShellGeometry:
    def test_invalid(self):
        with pytest.raises(InvalidGeometry):
            ShellGeometry(1, 1)
        with pytest.raises(InvalidGeometry):
            ShellGeometry(2, 0)
        with pytest.raises(InvalidGeometry):
            ShellGeometry(2, mpq(3, 2))

    def test_frozen_values(self):
        g = ShellGeometry(3, 2)
        assert g.shell_factor == mpq(8, 9)
        assert shell_measure(g, 1) == mpq(8, 81)
        assert ball_measure(g, -1) == 9
        assert g.radius(2) == mpq(1, 9)
        assert weighted_shell_measure(g, 1, 1) == mpq(8, 9) * mpq(1, 27)

    @given(bases, dims, ks)
    def test_ball_is_disjoint_union_of_shells(self, b, Q, k):
        g = ShellGeometry(b, Q)
        # G_k = shell k  u  G_{k+1}
        assert close(g.ball_measure(k), g.shell_measure(k) + g.ball_measure(k + 1))

    @given(bases, dims, ks)
    def test_shell_measure_against_mpmath(self, b, Q, k):
        g = ShellGeometry(b, Q)
        ref = mpmath.mpf(b.numerator if hasattr(b, "numerator") else b) / mpmath.mpf(getattr(b, "denominator", 1))
        want = ref ** (-k * Q) * (1 - ref ** -Q)
        got = mpmath.mpf(str(g.shell_measure(k)))
        assert abs(got - want) <= abs(want) * mpmath.mpf(10) ** -50

    @given(bases, dims, ks, st.integers(-3, 3))
    def test_dilation_scaling(self, b, Q, k, m):
        # |D_gamma S| = |gamma|^Q |S| with |gamma| = b^-m maps shell k to shell k+m
        g = ShellGeometry(b, Q)
        assert close(g.shell_measure(k + m), g.pow(-m * Q) * g.shell_measure(k))


class TestReparam:
    def test_values(self):
        kappa, a, d = vilenkin_graded_reparam(3, 2, 1, mpq(1, 2))
        assert (kappa, a, d) == (9, mpq(1, 2), mpq(1, 4))

    def test_bad_Q(self):
        with pytest.raises(InvalidGeometry):
            vilenkin_graded_reparam(3, 0, 0, 0)

    @given(st.sampled_from([2, 3, 5]), dims, ks)
    def test_shells_agree_under_reparam(self, q, Q, k):
        g = ShellGeometry(q, Q)
        v = reparam_geometry(g)
        assert v.Q == 1 and v.base == q ** Q
        assert g.shell_measure(k) == v.shell_measure(k)
