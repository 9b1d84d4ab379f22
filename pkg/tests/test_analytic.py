import math

import pytest
from scipy import integrate

from ppcount import analytic
from ppcount.errors import DomainError


class TestLi:
    def test_spot_values(self):
        # li(2) = 1.04516378..., li(10) = 6.16559898... (quadrature oracle)
        assert analytic.li(2.0) == pytest.approx(1.0451637801174927, rel=1e-12)
        assert analytic.li(10.0) == pytest.approx(6.1655995047872979, rel=1e-12)

    def test_against_quadrature(self):
        # li(x2) - li(x1) must equal the direct integral of dt/log t
        for x1, x2 in ((2.0, 10.0), (10.0, 1e4), (1e4, 1e6), (1e6, 1e8)):
            want, err = integrate.quad(lambda t: 1.0 / math.log(t), x1, x2,
                                       limit=200)
            got = analytic.li_interval(x1, x2)
            assert got == pytest.approx(want, rel=1e-9)

    def test_strictly_increasing(self):
        vals = [analytic.li(x) for x in (1.5, 2, 5, 10, 1e3, 1e6, 1e12, 1e15)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            analytic.li(1.0)
        with pytest.raises(DomainError):
            analytic.li(0.5)
        with pytest.raises(DomainError):
            analytic.li_interval(10.0, 2.0)


class TestZetaInt:
    def test_known_closed_forms(self):
        assert analytic.zeta_int(2) == pytest.approx(math.pi ** 2 / 6,
                                                     abs=1e-12)
        assert analytic.zeta_int(4) == pytest.approx(math.pi ** 4 / 90,
                                                     abs=1e-12)
        assert analytic.zeta_int(3) == pytest.approx(1.2020569031595943,
                                                     abs=1e-12)

    def test_series_bracketing(self):
        # partial sum < zeta(k) < partial sum + integral tail bound
        for k in (2, 3, 5, 10):
            M = 1000
            partial = sum(m ** -k for m in range(1, M + 1))
            tail = M ** (1 - k) / (k - 1)
            # epsilon absorbs the final-ulp rounding of the partial sum
            eps = 1e-14
            assert partial - eps < analytic.zeta_int(k) < partial + tail + eps

    def test_monotone_to_one(self):
        vals = [analytic.zeta_int(k) for k in range(2, 30)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert analytic.zeta_int(64) - 1.0 < 1e-18
        assert analytic.zeta_int(100) == 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            analytic.zeta_int(1)


class TestExponents:
    def test_table(self):
        assert analytic.exponents(2).A == 2
        assert analytic.exponents(3).A == 1
        assert analytic.exponents(7).A == 1

    def test_g_of_h(self):
        assert analytic.exponents(2).g_of_h(100.0) == pytest.approx(
            math.log(100.0))
        assert analytic.exponents(3).g_of_h(100.0) == 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            analytic.exponents(1)


class TestDeltaEnvelope:
    def test_formula(self):
        x = math.exp(math.exp(2.0))  # log log x = 2 exactly
        want = 0.2 * math.exp(2.0 * 0.6) * 2.0 ** -0.2
        assert analytic.delta_envelope(x) == pytest.approx(want, rel=1e-12)

    def test_monotone(self):
        vals = [analytic.delta_envelope(x)
                for x in (16, 100, 1e4, 1e8, 1e16, 1e32)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_constant_scales(self):
        env = analytic.ErrorEnvelope(c=1.0)
        assert analytic.delta_envelope(1e6, env) == pytest.approx(
            5 * analytic.delta_envelope(1e6), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            analytic.delta_envelope(15.9)
        with pytest.raises(DomainError):
            analytic.ErrorEnvelope(c=0.0)
