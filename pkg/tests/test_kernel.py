import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from fracsemi import (DimensionError, DomainError, FractionalOrder, KernelQuery, heat_kernel_fourier,
                      heat_kernel_subordinated, poisson_kernel_closed, self_similar_rescale)
from fracsemi.kernel import cell_averaged_profile, fourier_profile, subordinated_profile, tail_mass


def poisson(t, r, n=1):
    p = 0.5 * (n + 1)
    return math.gamma(p) * math.pi**-p * t / (t * t + r * r) ** p


def fourier_oracle(t, r, s):
    """(1/pi) int_0^inf exp(-t rho^2s) cos(r rho) d rho by scipy's QUADPACK."""
    if r == 0.0:
        return math.gamma(1.0 + 1.0 / (2.0 * s)) * t ** (-1.0 / (2.0 * s)) / math.pi
    top = (60.0 / t) ** (1.0 / (2.0 * s))
    val, _ = integrate.quad(lambda x: math.exp(-t * x ** (2.0 * s)), 0.0, top, weight="cos", wvar=r,
                            limit=2000, epsabs=1e-15, epsrel=1e-12)
    return val / math.pi


def q(z, r, s, n=1):
    return KernelQuery(z=z, r=r, order=FractionalOrder(s, n))


class TestKernelQuery:
    @pytest.mark.parametrize("z", [0.0, -1.0, 1j, -0.5 + 2j])
    def test_requires_positive_real_part(self, z):
        with pytest.raises(DomainError):
            KernelQuery(z=z, r=1.0, order=FractionalOrder(0.5))

    def test_negative_distance(self):
        with pytest.raises(DomainError):
            KernelQuery(z=1.0, r=-0.1, order=FractionalOrder(0.5))

    def test_real_time(self):
        assert q(2.0, 0.0, 0.5).t == 2.0
        with pytest.raises(DomainError):
            _ = q(1 + 1j, 0.0, 0.5).t


class TestPoissonClosed:
    @pytest.mark.parametrize("t,r,n,expected", [(1, 0, 1, 0.3183099), (1, 0, 2, 0.1591549), (2, 0, 1, 0.1591549),
                                                (1, 1, 1, 0.1591549)])
    def test_values(self, t, r, n, expected):
        assert poisson_kernel_closed(t, r, n) == pytest.approx(expected, abs=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            poisson_kernel_closed(0.0, 1.0)

    def test_vectorised(self):
        r = np.linspace(0.0, 3.0, 7)
        assert np.allclose(poisson_kernel_closed(1.5, r), [poisson(1.5, x) for x in r], rtol=1e-15)


class TestSubordinated:
    @pytest.mark.parametrize("t,r", [(1.0, 0.0), (1.0, 1.0), (0.1, 0.3), (10.0, 5.0), (0.01, 2.0)])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_poisson_oracle(self, t, r, n):
        assert heat_kernel_subordinated(q(t, r, 0.5, n)) == pytest.approx(poisson(t, r, n), rel=1e-6)

    def test_spec_examples(self):
        assert heat_kernel_subordinated(q(1.0, 0.0, 0.5)) == pytest.approx(1.0 / math.pi, abs=1e-7)
        assert heat_kernel_subordinated(q(1.0, 1.0, 0.5)) == pytest.approx(0.5 / math.pi, abs=1e-7)

    @pytest.mark.parametrize("s", [0.2, 0.3, 0.7, 0.9])
    @pytest.mark.parametrize("t,r", [(0.5, 0.0), (1.0, 0.7), (2.0, 3.0)])
    def test_against_quadpack_fourier(self, s, t, r):
        assert heat_kernel_subordinated(q(t, r, s)) == pytest.approx(fourier_oracle(t, r, s), rel=1e-7)

    def test_origin_value_closed_form(self):
        for s in (0.25, 0.6, 0.95):
            want = math.gamma(1.0 + 1.0 / (2.0 * s)) / math.pi
            assert heat_kernel_subordinated(q(1.0, 0.0, s)) == pytest.approx(want, rel=1e-7)

    @pytest.mark.parametrize("s", [0.3, 0.5, 0.8])
    def test_unit_mass(self, s):
        # 2 * (mass of [0, inf)) from the tail of the zero point
        assert 2.0 * tail_mass(1.0, np.array([0.0]), FractionalOrder(s))[0] == pytest.approx(1.0, abs=1e-6)

    def test_unit_mass_by_direct_quadrature(self):
        order = FractionalOrder(0.5)
        r = np.linspace(0.0, 200.0, 40001)
        p = subordinated_profile(1.0, r, order)
        body = integrate.simpson(p, x=r)
        tail = 0.5 - math.atan(200.0) / math.pi
        assert 2.0 * (body + tail) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("s", [0.2, 0.5, 0.9])
    def test_positive_and_decreasing(self, s):
        r = np.concatenate([[0.0], np.geomspace(1e-3, 1e3, 80)])
        p = subordinated_profile(0.7, r, FractionalOrder(s))
        assert np.all(p > 0.0)
        assert np.all(np.diff(p) < 0.0)

    def test_tail_mass_matches_cauchy(self):
        y = np.array([0.0, 0.5, 2.0, 10.0])
        want = 0.5 - np.arctan(y / 1.3) / math.pi
        assert np.allclose(tail_mass(1.3, y, FractionalOrder(0.5)), want, rtol=1e-9, atol=1e-15)

    def test_cell_average(self):
        h, count = 0.1, 6
        pbar = cell_averaged_profile(1.0, h, count, FractionalOrder(0.5))
        edges = (np.arange(count + 1) - 0.5) * h
        cdf = np.arctan(edges) / math.pi
        want = np.diff(cdf) / h
        want[0] = 2.0 * cdf[1] / h
        assert np.allclose(pbar, want, rtol=1e-9)

    def test_requires_real_time(self):
        with pytest.raises(DomainError):
            heat_kernel_subordinated(q(1 + 1j, 0.0, 0.5))

    def test_domain(self):
        with pytest.raises(DomainError):
            subordinated_profile(-1.0, np.array([0.0]), FractionalOrder(0.5))
        with pytest.raises(DomainError):
            subordinated_profile(1.0, np.array([-1.0]), FractionalOrder(0.5))


class TestFourier:
    def test_real_half(self):
        v = heat_kernel_fourier(q(1.0, 0.0, 0.5))
        assert v.real == pytest.approx(1.0 / math.pi, abs=1e-12)
        assert abs(v.imag) <= 1e-10

    def test_complex_elementary(self):
        z = cmath.exp(0.25j * math.pi)
        assert heat_kernel_fourier(q(z, 0.0, 0.5)) == pytest.approx(cmath.exp(-0.25j * math.pi) / math.pi,
                                                                    abs=1e-10)

    @pytest.mark.parametrize("z", [1 + 1j, 0.3 - 2j, 2 + 0.5j])
    @pytest.mark.parametrize("r", [0.0, 0.5, 3.0])
    def test_complex_poisson(self, z, r):
        # the Poisson formula continues analytically to Re z > 0
        want = z / (math.pi * (z * z + r * r))
        assert heat_kernel_fourier(q(z, r, 0.5)) == pytest.approx(want, rel=1e-9)

    @pytest.mark.parametrize("s", [0.3, 0.7])
    def test_complex_origin_closed_form(self, s):
        z = 0.8 + 1.1j
        want = math.gamma(1.0 + 1.0 / (2.0 * s)) * z ** (-1.0 / (2.0 * s)) / math.pi
        assert heat_kernel_fourier(q(z, 0.0, s)) == pytest.approx(want, rel=1e-9)

    def test_dimension(self):
        with pytest.raises(DimensionError):
            heat_kernel_fourier(q(1.0, 0.0, 0.5, 2))

    @given(st.floats(0.05, 3.0), st.floats(-3.0, 3.0), st.floats(0.0, 5.0), st.sampled_from([0.3, 0.5, 0.8]))
    def test_conjugate_symmetry(self, x, y, r, s):
        a = fourier_profile(complex(x, y), np.array([r]), s)[0]
        b = fourier_profile(complex(x, -y), np.array([r]), s)[0]
        assert abs(b - a.conjugate()) <= 1e-14 * max(1.0, abs(a))


class TestThreeWayAgreement:
    @pytest.mark.parametrize("s", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    @pytest.mark.parametrize("r", [0.0, 1.0, 5.0])
    def test_routes(self, s, t, r):
        sub = heat_kernel_subordinated(q(t, r, s))
        four = heat_kernel_fourier(q(t, r, s))
        assert abs(four.imag) <= 1e-10
        assert abs(sub - four.real) <= 1e-5 * abs(four.real)
        if s == 0.5:
            closed = poisson_kernel_closed(t, r)
            assert sub == pytest.approx(closed, rel=1e-6)
            assert four.real == pytest.approx(closed, rel=1e-6)


class TestSelfSimilarity:
    def test_example(self):
        base = q(1.0, 1.0, 0.5)
        new, factor = self_similar_rescale(base, 4.0)
        assert (new.t, new.r, factor) == (4.0, 4.0, 0.25)
        assert heat_kernel_subordinated(new) == pytest.approx(0.0397887, abs=1e-7)
        assert factor * heat_kernel_subordinated(base) == pytest.approx(0.0397887, abs=1e-7)

    def test_identity(self):
        base = q(1.3, 0.4, 0.7)
        new, factor = self_similar_rescale(base, 1.0)
        assert (new.t, new.r, factor) == (1.3, 0.4, 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            self_similar_rescale(q(1.0, 0.0, 0.5), 0.0)

    @given(st.floats(0.05, 5.0), st.floats(0.0, 4.0), st.floats(0.1, 10.0), st.sampled_from([0.25, 0.5, 0.75]),
           st.sampled_from([1, 2, 3]))
    def test_identity_holds(self, t, r, sigma, s, n):
        base = q(t, r, s, n)
        new, factor = self_similar_rescale(base, sigma)
        lhs = heat_kernel_subordinated(new)
        rhs = factor * heat_kernel_subordinated(base)
        assert lhs == pytest.approx(rhs, rel=1e-9)
