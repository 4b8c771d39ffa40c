import math
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from affinecs.actions import (AffineLabel, act_affine, act_chirp, act_dilation_exact,
                              act_dilation_series, act_symmetric_generator, act_translation,
                              check_noncommutation)
from affinecs.testfn import GaussPoly, Sampled, gauss_poly, l2_norm, phi_odd
from oracles import quad_complex

x = np.linspace(-3, 3, 25)
FAMILY = [gauss_poly([1]), gauss_poly([0, 1]), gauss_poly([0, 0, 1])]


def test_dilation_exact():
    f = phi_odd()
    assert np.allclose(act_dilation_exact(0.3, f)(x), f(math.exp(0.3) * x))
    assert np.allclose(act_dilation_exact(0.3, lambda t: t ** 2)(x), (math.exp(0.3) * x) ** 2)


@pytest.mark.parametrize("m", [-0.5, -0.2, 0.2, 0.5])
@pytest.mark.parametrize("f", FAMILY, ids=["g0", "g1", "g2"])
def test_dilation_series_converges(m, f):
    got = act_dilation_series(m, f, x, 30)
    assert np.max(np.abs(got - f(math.exp(m) * x))) <= 1e-8


def test_dilation_series_degree_four():
    f = gauss_poly([1, -1, 0.5, 0.2, 0.1])
    for m in (-0.5, 0.5):
        got = act_dilation_series(m, f, x, 30)
        assert np.max(np.abs(got - f(math.exp(m) * x))) <= 1e-8


def test_dilation_series_short_and_trivial():
    f = phi_odd()
    # first-order term: f + m x f'
    got = act_dilation_series(0.1, f, x, 1)
    assert np.allclose(got, f(x) + 0.1 * x * f.derivative()(x))
    assert np.allclose(act_dilation_series(0.0, f, x, 5), f(x))
    with pytest.raises(ValueError):
        act_dilation_series(0.1, f, x, 0)


def test_translation_and_chirp():
    f = gauss_poly([1, 1])
    assert np.allclose(act_translation(0.5, f)(x), f(x + 0.5))
    c = act_chirp(0.7, f)
    # modulus unchanged up to rounding in exp(i m x^2)
    assert np.allclose(np.abs(c(x)), np.abs(f(x)), rtol=1e-15, atol=0)
    assert np.allclose(c(x), np.exp(0.7j * x ** 2) * f(x))


def test_noncommutation():
    f = phi_odd()
    a, b = check_noncommutation(0.3, 0.8, f, 0.4)
    assert a == pytest.approx(np.exp(0.8j * 0.7) * f(0.7))
    assert b == pytest.approx(np.exp(0.3j * 0.4) * f(1.2))
    assert abs(a - b) > 1e-3


def test_affine_identity_and_formula():
    f = gauss_poly([0.5, 1, -0.3])
    assert np.allclose(act_affine(AffineLabel(1.0, 0.0), f)(x), f(x))
    p, q = 2.3, -0.8
    want = p ** 0.25 * np.exp(-0.5j * q * x ** 2) * f(math.sqrt(p) * x)
    assert np.allclose(act_affine((p, q), f)(x), want)
    with pytest.raises(ValueError):
        AffineLabel(0.0, 1.0)


@given(st.floats(0.1, 10), st.floats(-5, 5))
def test_affine_is_unitary(p, q):
    f = gauss_poly([0.2, 1, 0, -0.4])
    n0 = l2_norm(f)
    assert abs(l2_norm(act_affine(AffineLabel(p, q), f)) - n0) <= 1e-10 * n0


def test_affine_unitary_by_independent_quadrature():
    f = gauss_poly([0, 1, 1])
    g = act_affine(AffineLabel(3.0, 1.5), f)
    n_in = quad_complex(lambda t: abs(f(t)) ** 2, -np.inf, np.inf).real
    n_out = quad_complex(lambda t: abs(g(t)) ** 2, -np.inf, np.inf).real
    assert abs(n_in - n_out) <= 1e-9


def test_dilations_compose():
    f = phi_odd()
    a = act_affine(AffineLabel(2.0), act_affine(AffineLabel(3.0), f))
    b = act_affine(AffineLabel(6.0), f)
    assert np.allclose(a(x), b(x))


def test_affine_on_samples_and_callables():
    grid = np.linspace(-4, 4, 401)
    f = phi_odd()
    s = act_affine(AffineLabel(1.0, 2.0), Sampled.from_function(f, grid))
    assert np.allclose(np.abs(s.values), np.abs(f(grid)))
    h = act_affine(AffineLabel(4.0, 0.0), lambda t: t)
    assert np.allclose(h(x), math.sqrt(2) * 2 * x)


def test_symmetric_generator():
    f = gauss_poly([0, 1])
    s = 0.3j  # exp(s (PQ + QP)) with imaginary s is the unitary dilation by e^{2|s|}
    g = act_symmetric_generator(s, f)
    lam = math.exp(0.6)
    assert np.allclose(g(x), math.sqrt(lam) * f(lam * x))
    assert abs(l2_norm(g) - l2_norm(f)) <= 1e-12


def test_series_runtime():
    t0 = time.perf_counter()
    for f in FAMILY:
        for m in (-0.5, -0.2, 0.2, 0.5):
            act_dilation_series(m, f, x, 30)
    assert time.perf_counter() - t0 < 1.0
