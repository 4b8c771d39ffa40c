import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import hyp2f1

from affinecs.quad import disk_rule
from affinecs.spaces import (DomainError, SpaceTag, basis_disk, basis_halfplane, cayley_to_disk,
                             cayley_to_halfplane, gram_disk, kernel_constant, kernel_disk,
                             kernel_disk_series, kernel_halfplane, reproduce_check)

rng = np.random.default_rng(11)


def disk_points(n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def hp_points(n):
    return rng.uniform(-3, 3, n) + 1j * rng.uniform(0.1, 3, n)


def test_kernel_constants():
    assert kernel_constant(0.5) == pytest.approx(3 / (8 * math.pi))
    assert kernel_constant(-0.5) == pytest.approx(1 / (8 * math.pi))
    assert SpaceTag(0.5, "disk").name == "D_+1/2"
    assert SpaceTag(-0.5, "half_plane").name == "H_-1/2"
    with pytest.raises(ValueError):
        SpaceTag(0.5, "annulus")


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_disk_kernel_is_hypergeometric(alpha):
    # k(w, w') = C 2^(alpha+2) 2F1(alpha+2, 1; 1; w conj(w'))
    w, w2 = disk_points(10, 0.9), disk_points(10, 0.9)
    x = w * np.conj(w2)
    ref = kernel_constant(alpha) * 2 ** (alpha + 2) * hyp2f1(alpha + 2, 1, 1, x)
    assert np.allclose(kernel_disk(alpha, w, w2), ref, rtol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_disk_kernel_series(alpha):
    w, w2 = disk_points(50, math.sqrt(0.5)), disk_points(50, math.sqrt(0.5))
    err = np.abs(kernel_disk_series(alpha, w, w2, 200) - kernel_disk(alpha, w, w2))
    assert np.max(err) <= 1e-8


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_halfplane_kernel_covariance(alpha):
    # rho(z, z') = 2^beta (z+i)^-beta conj((z'+i)^-beta) k(C z, C z')
    beta = alpha + 2
    z, z2 = hp_points(10), hp_points(10)
    C = lambda t: (t - 1j) / (t + 1j)
    ref = 2 ** beta * (z + 1j) ** -beta * np.conj((z2 + 1j) ** -beta) * kernel_disk(alpha, C(z), C(z2))
    assert np.allclose(kernel_halfplane(alpha, z, z2), ref, rtol=1e-12)


def test_kernel_hermitian_symmetry():
    z, z2 = hp_points(5), hp_points(5)
    for alpha in (0.5, -0.5):
        assert np.allclose(kernel_halfplane(alpha, z, z2), np.conj(kernel_halfplane(alpha, z2, z)))
        w, w2 = disk_points(5, 0.9), disk_points(5, 0.9)
        assert np.allclose(kernel_disk(alpha, w, w2), np.conj(kernel_disk(alpha, w2, w)))


def test_domain_errors():
    with pytest.raises(DomainError):
        kernel_disk(0.5, 1.0, 0.0)
    with pytest.raises(DomainError):
        kernel_halfplane(0.5, 1.0 + 0j, 1j)
    with pytest.raises(DomainError):
        cayley_to_disk(0.5, lambda z: z)(1.0)
    with pytest.raises(DomainError):
        cayley_to_halfplane(0.5, lambda w: w)(-1j)


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_disk_basis_is_orthonormal_by_scipy(alpha):
    # independent radial integral: <e_n, e_n> = c_n^2 2 pi int r^{2n+1} ((1-r^2)/2)^alpha dr
    for n in range(4):
        e = basis_disk(alpha, n)
        c2 = abs(e(1.0 - 1e-16)) ** 2
        radial = integrate.quad(lambda r: r ** (2 * n + 1) * ((1 - r * r) / 2) ** alpha, 0, 1)[0]
        assert abs(c2 * 2 * math.pi * radial - 1.0) <= 1e-8


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_gram_disk(alpha):
    G = gram_disk(alpha, 10)
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) <= 1e-8
    assert np.allclose(np.diag(G), 1.0, atol=1e-10)


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_cayley_roundtrips(alpha):
    z = hp_points(100)
    f = lambda t: kernel_halfplane(alpha, t, 0.3 + 0.8j) + 1 / (t + 2j) ** 3
    back = cayley_to_halfplane(alpha, cayley_to_disk(alpha, f))
    assert np.max(np.abs(back(z) - f(z)) / (1 + np.abs(f(z)))) <= 1e-12
    w = disk_points(100, 0.95)
    g = lambda v: v ** 3 - 2 * v + 1
    back = cayley_to_disk(alpha, cayley_to_halfplane(alpha, g))
    assert np.max(np.abs(back(w) - g(w))) <= 1e-12


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_halfplane_basis_maps_to_disk_basis(alpha):
    w = disk_points(20, 0.9)
    for n in range(5):
        Bl = cayley_to_disk(alpha, basis_halfplane(alpha, n))
        ratio = Bl(w) / basis_disk(alpha, n)(w)
        assert np.allclose(np.abs(ratio), 1.0, rtol=1e-12)
        assert np.allclose(ratio, ratio[0], rtol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_reproducing_disk(alpha):
    rule = disk_rule()
    for p in disk_points(20, 0.7):
        for deg in range(9):
            lhs, rhs = reproduce_check(alpha, "disk", lambda v, d=deg: np.asarray(v) ** d, p, rule)
            assert abs(lhs - rhs) <= 1e-6


@pytest.mark.parametrize("alpha", [0.5, -0.5])
def test_reproducing_halfplane(alpha):
    # points near the real axis pull the kernel towards the disk boundary
    for p in rng.uniform(-3, 3, 5) + 1j * rng.uniform(0.3, 3, 5):
        lhs, rhs = reproduce_check(alpha, "half_plane", basis_halfplane(alpha, 2), p)
        assert abs(lhs - rhs) <= 1e-6
    with pytest.raises(ValueError):
        reproduce_check(alpha, "sphere", lambda v: v, 0.1)
