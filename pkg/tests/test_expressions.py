import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dblab.errors import ConfigError, PoleHit, RadiusTooLarge, TruncationBudgetExceeded
from dblab.examples import a38_g_sequence, a38_gtilde_sequence, a38_g_closed
from dblab.expressions import (Affine, CanonicalProduct, Const, Cos, ExpCZ,
                               Poly, Power, Product, Quotient, Sin, Sinc, Sum,
                               Z, ZeroSequence, csinc, derivative, evaluate,
                               expr_from_json, expr_to_json, sharp)


def test_eval_exp_closed_form():
    r = evaluate(ExpCZ(-1j), 1j)
    assert abs(r.value - math.e) < 1e-12
    assert r.abs_error >= 0


def test_canonical_product_at_zero_is_one():
    g = CanonicalProduct(a38_g_sequence(1000))
    r = evaluate(g, 0.0)
    assert r.value == 1.0 + 0.0j


def test_g_matches_closed_form_at_4():
    # closed-form oracle, full shipped truncation
    g = CanonicalProduct(a38_g_sequence(1_000_000))
    r = evaluate(g, 4.0)
    oracle = complex(a38_g_closed(4.0))
    assert abs(r.value - oracle) / abs(oracle) <= 1e-8


def test_sharp_examples():
    assert abs(ExpCZ(-1j).sharp().at(1j) - math.exp(-1)) < 1e-14
    z = 0.3 + 0.2j
    assert Cos().sharp().at(z) == Cos().at(z)
    p = Poly([-(1 + 1j), 1.0]).sharp()
    assert np.allclose(p.coeffs, [-(1 - 1j), 1.0])


SHIPPED = [
    ExpCZ(-1j),
    Cos(),
    Sinc(),
    Poly([1j, 0.5, -2.0]),
    Sum([Cos(), Product([Const(-1j), Sum([Product([Z(), Cos()]), Sin()])])]),
    Quotient(Sin(), ExpCZ(0.3 - 0.1j)),
    Affine(Sinc(), 2.0, -1.3 + 0.2j),
    Power(Sum([Z(), Const(1j)]), 3),
]


def test_double_sharp_is_identity_on_500_points(rng):
    z = rng.uniform(-10, 10, 500) + 1j * rng.uniform(-10, 10, 500)
    for f in SHIPPED:
        v0 = f.values(z)
        v2 = f.sharp().sharp().values(z)
        assert np.all(np.abs(v2 - v0) <= 1e-12 * (1.0 + np.abs(v0)))


@st.composite
def exprs(draw, depth=2):
    c = st.complex_numbers(min_magnitude=0.0, max_magnitude=3.0,
                           allow_nan=False, allow_infinity=False)
    atoms = st.one_of(
        st.builds(Const, c),
        st.just(Z()),
        st.builds(ExpCZ, st.complex_numbers(min_magnitude=0.0, max_magnitude=0.5,
                                            allow_nan=False, allow_infinity=False)),
        st.just(Sin()), st.just(Cos()), st.just(Sinc()),
        st.builds(lambda a, b: Poly([a, b]), c, c),
    )
    if depth == 0:
        return draw(atoms)
    sub = exprs(depth=depth - 1)
    node = st.one_of(
        atoms,
        st.builds(lambda a, b: Sum([a, b]), sub, sub),
        st.builds(lambda a, b: Product([a, b]), sub, sub),
        st.builds(lambda a: Affine(a, 0.7, 0.3 - 0.1j), sub),
        st.builds(lambda a: Power(a, 2), sub),
        st.builds(lambda a: Quotient(a, ExpCZ(0.2j)), sub),
    )
    return draw(node)


@settings(max_examples=60, deadline=None)
@given(exprs(), st.complex_numbers(min_magnitude=0.0, max_magnitude=10.0,
                                   allow_nan=False, allow_infinity=False))
def test_double_sharp_property(f, z):
    v0, e0 = f.eval_array(z)
    v2, _ = f.sharp().sharp().eval_array(z)
    assert abs(v2 - v0) <= 1e-12 * (1.0 + abs(v0))
    assert e0 >= 0.0 and math.isfinite(e0)


def test_derivative_examples():
    assert abs(derivative(ExpCZ(-1j), 0.0, 1).value - (-1j)) < 1e-12
    assert abs(derivative(Poly([0, 0, 1]), 3.0, 2).value - 2.0) < 1e-10


def test_derivative_matches_central_difference_on_gtilde():
    gt = CanonicalProduct(a38_gtilde_sequence(100_000))
    d = derivative(gt, 1.0, 1).value
    h = 1e-4
    fd = (gt.at(1.0 + h) - gt.at(1.0 - h)) / (2 * h)
    assert abs(d - fd) / abs(fd) <= 1e-5


def test_derivative_order_validation():
    with pytest.raises(ConfigError):
        derivative(Cos(), 0.0, 3)


def test_truncation_error_monotonicity():
    # truncation-dominated regime: the estimate halves as n doubles
    errs = []
    for n in (1000, 2000, 4000, 8000, 16000):
        _, e = CanonicalProduct(a38_gtilde_sequence(n)).eval_array(2.0 + 0.5j)
        errs.append(e)
    assert all(e2 <= e1 for e1, e2 in zip(errs, errs[1:]))


def test_tail_bound_nonincreasing_in_truncation():
    bounds = [a38_g_sequence(n).tail_bound_at(2.0) for n in (1000, 2000, 4000, 8000)]
    assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_genus0_inverse_modulus_sums_stabilize():
    sums = a38_g_sequence(100_000).genus0_partial_sums(8)
    diffs = np.diff(sums)
    assert np.all(diffs >= 0)
    assert diffs[-1] < 1e-4 * sums[-1]


def test_genus1_product_stabilizes_under_truncation():
    # zeros -i k have divergent inverse-modulus sum; the genus-1 factors fix it
    def seq(n):
        return ZeroSequence("lin", -1j * np.arange(1, n + 1, dtype=float), 1)

    v1 = CanonicalProduct(seq(4000)).at(1.0 + 0.5j)
    v2 = CanonicalProduct(seq(8000)).at(1.0 + 0.5j)
    assert abs(v1 - v2) < 1e-3 * abs(v2)


def test_truncation_budget():
    g = CanonicalProduct(a38_g_sequence(2000))
    with pytest.raises(TruncationBudgetExceeded):
        evaluate(g, 1.0, max_terms=1000)


def test_pole_exclusion_radius():
    f = Quotient(Const(1.0), Poly([0.0, 1.0]))
    with pytest.raises(PoleHit):
        evaluate(f, 1e-12)
    assert abs(evaluate(f, 1e-3).value - 1e3) < 1e-6


def test_derivative_circle_through_pole():
    f = Quotient(Const(1.0), Poly([0.0, 1.0]))
    with pytest.raises(RadiusTooLarge):
        derivative(f, 0.1, 1, radius=0.1)


def test_json_round_trip_preserves_values(rng):
    z = rng.uniform(-5, 5, 64) + 1j * rng.uniform(-5, 5, 64)
    for f in SHIPPED:
        g = expr_from_json(json.loads(json.dumps(expr_to_json(f))))
        assert np.allclose(g.values(z), f.values(z), rtol=1e-13, atol=1e-13)


def test_json_sharp_node_applies_conjugation():
    d = {"kind": "sharp", "child": {"kind": "exp", "coeff": [0.0, -1.0]}}
    f = expr_from_json(d)
    assert abs(f.at(1j) - math.exp(-1)) < 1e-14


def test_json_named_sequence_round_trip():
    g = CanonicalProduct(a38_g_sequence(1000))
    g2 = expr_from_json(expr_to_json(g))
    assert g2.at(2.5) == g.at(2.5)


def test_json_unknown_kind_rejected():
    with pytest.raises(ConfigError):
        expr_from_json({"kind": "nope"})


def test_csinc_series_patch_is_continuous():
    for w in (9e-5, 1.1e-4, 1e-4 + 1e-4j):
        direct = np.sin(complex(w)) / complex(w)
        assert abs(complex(csinc(w)) - direct) < 1e-13
