import math

import numpy as np
import pytest
from scipy.integrate import quad

from dblab.errors import NonConvergentTail
from dblab.expressions import csinc
from dblab.quadrature import integrate_interval, integrate_real_line


def test_gaussian():
    res = integrate_real_line(lambda t: np.exp(-t * t))
    assert abs(res.value - math.sqrt(math.pi)) < 1e-10


def test_poisson_weight():
    res = integrate_real_line(lambda t: 1.0 / (1.0 + t * t), rel_tol=1e-8)
    assert abs(res.value - math.pi) < 1e-6 * math.pi
    assert abs(res.value - math.pi) < 4 * res.error + 1e-12


def test_squared_sinc():
    res = integrate_real_line(lambda t: np.abs(csinc(t + 0j)) ** 2, rel_tol=1e-7)
    assert abs(res.value - math.pi) / math.pi < 1e-6


def test_slow_power_law_against_quad():
    # exponent -1.2 converges but needs the extrapolated tail
    f = lambda t: (1.0 + t * t) ** -0.6
    oracle = 2.0 * quad(lambda t: (1.0 + t * t) ** -0.6, 0, np.inf)[0]
    res = integrate_real_line(f, rel_tol=1e-6)
    assert abs(res.value - oracle) / oracle < 1e-4


@pytest.mark.parametrize("p", [0.5, 1.0, 1.02])
def test_divergent_envelope_raises(p):
    with pytest.raises(NonConvergentTail):
        integrate_real_line(lambda t: (1.0 + t * t) ** (-p / 2.0))


def test_oscillatory_growth_raises():
    with pytest.raises(NonConvergentTail):
        integrate_real_line(lambda t: np.cos(t) ** 2)


def test_zero_integrand():
    res = integrate_real_line(lambda t: np.zeros_like(t))
    assert res.value == 0.0 and res.error == 0.0


def test_interval_polynomial_exact():
    v, e = integrate_interval(lambda t: t ** 3 - 2 * t + 1, -1.0, 2.0, 1e-12)
    # antiderivative t^4/4 - t^2 + t on [-1, 2]
    assert abs(v - 3.75) < 1e-12


def test_interval_resolves_narrow_spike():
    eps = 1e-3
    f = lambda t: eps / (eps * eps + (t - 3.0) ** 2)
    v, e = integrate_interval(f, 0.0, 8.0, 1e-9)
    oracle = math.atan(5.0 / eps) + math.atan(3.0 / eps)
    assert abs(v - oracle) < 1e-7 * oracle


def test_complex_integrand_tail_direction():
    f = lambda t: 1.0 / (t - (0.5 + 1.0j)) ** 2
    res = integrate_real_line(f, rel_tol=1e-9)
    # exact: residue calculation gives 0 for a double pole off the axis
    assert abs(res.value) < 1e-8
