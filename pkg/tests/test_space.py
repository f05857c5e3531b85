import math

import numpy as np
import pytest

from dblab.errors import ConfigError, MissingZeroData, ZeroOnAxis
from dblab.examples import (a45_truncated_space, pw_kernel_closed,
                            pw_kernel_expr, pw_space)
from dblab.expressions import (Affine, Const, Cos, ExpCZ, Poly, Product,
                               Quotient, Sinc, ZeroSequence)
from dblab.space import (DbSpace, default_hb_grid, hb_check, inner_product,
                         kernel, kernel_diagonal, mean_type, membership,
                         nabla, nabla_values, norm_squared, phase_derivative)

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# Hermite-Biehler check
# ---------------------------------------------------------------------------

def test_hb_exponential(pw1):
    ok, margin = hb_check(pw1, default_hb_grid())
    assert ok and margin > 0


def test_hb_z_plus_i(zpi):
    # |z - i| < |z + i| in the upper half-plane
    ok, margin = hb_check(zpi)
    assert ok and margin > 0


def test_hb_reversed_exponential_fails():
    bad = DbSpace(ExpCZ(1j), None, 1.0, 1.0, "anti")
    ok, margin = hb_check(bad)
    assert not ok and margin < 0


def test_hb_grid_validation(pw1):
    with pytest.raises(ConfigError):
        hb_check(pw1, np.array([1.0 - 1j]))


def test_even_odd_parts_are_real_on_axis(pw1, rng):
    from dblab.examples import build_a20
    t = rng.uniform(-30, 30, 60) + 0j
    for sp in (pw1, build_a20().spaces["H"]):
        av, bv = sp.a.values(t), sp.b.values(t)
        scale = 1.0 + np.abs(av) + np.abs(bv)
        assert np.all(np.abs(av.imag) <= 1e-10 * scale)
        assert np.all(np.abs(bv.imag) <= 1e-10 * scale)


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

def test_pw_kernel_at_origin(pw1):
    assert abs(kernel(pw1, 0.0, 0.0) - 1.0 / math.pi) < 1e-12


def test_pw_kernel_matches_closed_form(pw1, rng):
    w = rng.uniform(-3, 3, 25) + 1j * rng.uniform(-2, 2, 25)
    z = rng.uniform(-3, 3, 25) + 1j * rng.uniform(-2, 2, 25)
    for wi, zi in zip(w, z):
        expect = pw_kernel_closed(1.0, wi, zi)
        assert abs(kernel(pw1, wi, zi) - expect) <= 1e-10 * (1 + abs(expect))


def test_zpi_kernel_is_constant(zpi, rng):
    w = rng.uniform(-5, 5, 20) + 1j * rng.uniform(0, 3, 20)
    z = rng.uniform(-5, 5, 20) + 1j * rng.uniform(0, 3, 20)
    vals = [kernel(zpi, wi, zi) for wi, zi in zip(w, z)]
    assert np.allclose(vals, 1.0 / math.pi, rtol=1e-10, atol=1e-12)


def test_kernel_hermitian_symmetry(pw1, rng):
    w = rng.uniform(-4, 4, 100) + 1j * rng.uniform(-1, 2, 100)
    z = rng.uniform(-4, 4, 100) + 1j * rng.uniform(-1, 2, 100)
    for wi, zi in zip(w, z):
        a = kernel(pw1, wi, zi)
        b = kernel(pw1, zi, wi)
        assert abs(a - np.conj(b)) <= 1e-12 * (1 + abs(a))


def test_kernel_continuous_across_diagonal_switch(pw1):
    # the switch kicks in at |wbar - z| = 1e-6 (1 + |z|)
    w = 0.7 + 0.4j
    delta = 1e-6 * (1 + abs(w))
    for off in (0.98, 1.02):
        z = np.conj(w) + off * delta
        expect = pw_kernel_closed(1.0, w, z)
        assert abs(kernel(pw1, w, z) - expect) < 1e-8


def test_kernel_diagonal_positive_when_hb(pw1, zpi, rng):
    pts = rng.uniform(-5, 5, 50) + 1j * rng.uniform(0.0, 3.0, 50)
    for sp in (pw1, zpi):
        for z in pts:
            assert kernel_diagonal(sp, z).real > 0


# ---------------------------------------------------------------------------
# nabla
# ---------------------------------------------------------------------------

def test_pw_nabla_on_horizontal_lines(pw1, rng):
    for h in (0.1, 0.5, 1.0, 2.0):
        expect = math.sqrt(math.sinh(2 * h) / (2 * math.pi * h))
        for x in rng.uniform(-20, 20, 10):
            assert abs(nabla(pw1, x + 1j * h) - expect) < 1e-12 * expect


def test_pw_nabla_on_axis(pw1):
    assert abs(nabla(pw1, 3.0) - 1.0 / SQRT_PI) < 1e-10


def test_zpi_nabla_constant(zpi, rng):
    zs = np.concatenate([rng.uniform(-5, 5, 10) + 1j * rng.uniform(0.01, 4, 10),
                         rng.uniform(-5, 5, 5) + 0j])
    vals = nabla_values(zpi, zs)
    assert np.allclose(vals, 1.0 / SQRT_PI, rtol=1e-9)


def test_nabla_continuity_toward_axis(pw1):
    for x in (0.0, 1.7, -4.2):
        low = nabla(pw1, x + 1e-6j)
        on = nabla(pw1, complex(x))
        assert abs(low - on) / on < 1e-4


def test_nabla_rejects_lower_half_plane(pw1):
    with pytest.raises(ConfigError):
        nabla(pw1, -1j)


# ---------------------------------------------------------------------------
# phase derivative
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a", [1.0, 2.0])
def test_pw_phase_derivative_is_type(a):
    sp = pw_space(a)
    for t in (0.0, 0.7, -3.3):
        assert abs(phase_derivative(sp, t, "kernel") - a) < 1e-10 * a


def test_pw_phase_zero_sum_reconciles_with_kernel():
    sp = DbSpace(ExpCZ(-2j), ZeroSequence("none", np.array([], dtype=complex)),
                 1.0, 2.0, "pw2")
    assert abs(phase_derivative(sp, 1.234, "zero-sum") - 2.0) < 1e-8


def test_zpi_phase_derivative(zpi):
    for t in (0.0, 2.0, -5.0):
        expect = 1.0 / (t * t + 1.0)
        assert abs(phase_derivative(zpi, t, "kernel") - expect) < 1e-10 * expect
        assert abs(phase_derivative(zpi, t, "zero-sum") - expect) < 1e-6 * expect


def test_phase_routes_agree_on_finite_truncation():
    sp = a45_truncated_space(200)
    for t in (0.0, 0.7, 1.5, 3.0):
        k = phase_derivative(sp, t, "kernel")
        z = phase_derivative(sp, t, "zero-sum")
        assert abs(k - z) / k < 1e-6


def test_phase_zero_sum_requires_zero_data(pw1):
    with pytest.raises(MissingZeroData):
        phase_derivative(pw1, 0.0, "zero-sum")


def test_phase_kernel_flags_underflowed_modulus():
    # between the densely packed zeros |E| drops below double range
    sp = a45_truncated_space(200)
    with pytest.raises(ZeroOnAxis):
        phase_derivative(sp, 5.0, "kernel")


# ---------------------------------------------------------------------------
# inner product and the space axioms
# ---------------------------------------------------------------------------

SINC = pw_kernel_expr(1.0, 0.0)


def test_pw_norm_of_sinc(pw1):
    ip = inner_product(pw1, SINC, SINC)
    assert abs(ip.value - 1.0 / math.pi) < 1e-6 / math.pi
    assert abs(ip.value - 1.0 / math.pi) < 10 * ip.abs_error + 1e-12


def test_pw_orthogonality_of_integer_shifts(pw1):
    k_pi = pw_kernel_expr(1.0, math.pi)
    ip = inner_product(pw1, SINC, k_pi)
    assert abs(ip.value) < 1e-8


def test_zero_function_has_zero_norm(pw1):
    ip = inner_product(pw1, Const(0.0), Const(0.0))
    assert ip.value == 0.0


def test_reproducing_property(pw1, zpi, rng):
    w = rng.uniform(-2, 2, 20) + 1j * rng.uniform(-1, 1.5, 20)
    for sp, kfun in ((pw1, lambda w0: _pw_kernel_at(w0)),
                     (zpi, lambda w0: Const(1.0 / math.pi))):
        for i in range(0, 20, 2):
            w0, w1 = w[i], w[i + 1]
            f = kfun(w0)
            kw1 = kfun(w1)
            got = inner_product(sp, f, kw1).value
            expect = f.at(w1)
            scale = math.sqrt(kernel_diagonal(sp, w0).real
                              * kernel_diagonal(sp, w1).real)
            assert abs(got - expect) <= 1e-6 * (abs(expect) + scale)


def _pw_kernel_at(w0: complex):
    """K(w0, .) for PW_1 as an entire expression."""
    return Product([Const(1.0 / math.pi), Affine(Sinc(), 1.0, -np.conj(w0))])


def test_sharp_is_isometric(pw1):
    f = _pw_kernel_at(0.4 + 0.9j)
    n1 = norm_squared(pw1, f)
    n2 = norm_squared(pw1, f.sharp())
    assert abs(n1 - n2) < 1e-7 * n1


def test_blaschke_division_is_isometric(pw1):
    # a member vanishing at z0, divided by its Blaschke factor, keeps its norm
    z0 = 0.8j
    k0, k1 = _pw_kernel_at(0.0), _pw_kernel_at(1.0)
    c0, c1 = k1.at(z0), -k0.at(z0)
    f = Const(c0) * k0 + Const(c1) * k1
    assert abs(f.at(z0)) < 1e-14
    g = Product([Quotient(Poly([np.conj(z0), 1.0]), Poly([-z0, 1.0])), f])
    nf, ng = norm_squared(pw1, f), norm_squared(pw1, g)
    assert abs(nf - ng) < 1e-6 * nf
    assert membership(pw1, g).verdict == "in"


def test_schwarz_bound_on_members(pw1, rng):
    zs = rng.uniform(-20, 20, 200) + 1j * np.abs(rng.uniform(-3, 3, 200))
    for f in (SINC, _pw_kernel_at(1.3)):
        nrm = math.sqrt(norm_squared(pw1, f))
        fv = np.abs(f.values(zs))
        nv = nabla_values(pw1, zs)
        assert np.all(fv <= (1 + 1e-6) * nrm * nv)


def test_kernel_norm_upper_sandwich(pw1, zpi, rng):
    # nabla(z)/|E(z)| <= (2 sqrt(pi Im z))^{-1} in the open upper half-plane
    zs = rng.uniform(-20, 20, 200) + 1j * rng.uniform(0.01, 5.0, 200)
    for sp in (pw1, zpi):
        nv = nabla_values(sp, zs)
        ev = np.abs(sp.e.values(zs))
        bound = 1.0 / (2.0 * np.sqrt(math.pi * zs.imag))
        assert np.all(nv / ev <= (1 + 1e-9) * bound)


# ---------------------------------------------------------------------------
# mean type
# ---------------------------------------------------------------------------

def test_mean_type_exponential_exact():
    for a in (0.5, 1.0, 3.0):
        est = mean_type(ExpCZ(1j * a), math.pi / 2)
        assert abs(est.value - (-a)) < 1e-6
        assert est.residual < 1e-9


def test_mean_type_ray_normalization():
    # the 1/sin(theta) normalization makes every ray report the same type
    est = mean_type(ExpCZ(2j), math.pi / 3)
    assert abs(est.value - (-2.0)) < 1e-6


def test_mean_type_cos_times_exp_is_zero():
    f = Product([Cos(), ExpCZ(1j)])
    est = mean_type(f, math.pi / 2)
    assert abs(est.value) < 1e-3


def test_mean_type_of_order_half_function_decays_with_radius():
    # an order-1/2 product has zero exponential type; the slope estimate
    # shrinks like 1/sqrt(rmax) (about 0.02 at rmax = 1e4)
    from dblab.examples import a38_gtilde_sequence
    from dblab.expressions import CanonicalProduct
    gt = CanonicalProduct(a38_gtilde_sequence(100_000))
    s_mid = mean_type(gt, math.pi / 2, np.geomspace(1.0, 1e3, 48)).value
    s_top = mean_type(gt, math.pi / 2, np.geomspace(1.0, 1e4, 48)).value
    assert 0 < s_top < 0.03
    assert s_top < s_mid


def test_mean_type_discards_dead_samples():
    from dblab.errors import AllPointsDiscarded
    with pytest.raises(AllPointsDiscarded):
        mean_type(Const(0.0), math.pi / 2)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def test_membership_sinc_in_pw1(pw1):
    res = membership(pw1, SINC)
    assert res.verdict == "in"
    assert abs(res.diagnostics["norm_squared"] - 1.0 / math.pi) < 1e-3


def test_membership_cos_out_of_pw1(pw1):
    res = membership(pw1, Cos())
    assert res.verdict == "out"
    assert "quadrature" in res.diagnostics


def test_membership_doubled_type_out_of_pw1(pw1):
    f = Product([Const(1.0 / math.pi), Affine(Sinc(), 2.0)])
    res = membership(pw1, f)
    assert res.verdict == "out"
    assert res.diagnostics["mt_f_over_e"]["slope"] > 0.5


def test_membership_pw2_kernel_in_pw2():
    sp = pw_space(2.0)
    f = Product([Const(1.0 / math.pi), Affine(Sinc(), 2.0)])
    assert membership(sp, f).verdict == "in"
