"""Hot numeric loops, each available as a numba kernel and a numpy expression.

The public functions dispatch on :data:`affinecs._accel.USE_NUMBA`; the
``*_numpy`` and ``*_numba`` variants stay importable so tests and the
benchmark can compare them directly.
"""
import numpy as np

from affinecs import _accel
from affinecs._accel import njit


# --- Gaussian moment sums -------------------------------------------------
#
# I(c) = int_R P(p) exp(-c p^2 / 2) dp  for complex c with Re c > 0, where
# P(p) = sum_k coeffs[k] p^(first_power + k).  Substituting p = y sqrt(2/c)
# rotates the contour onto the Gauss-Hermite line; the rotation is legal
# because the integrand is entire and decays inside the sector |arg| < pi/4.


@njit(cache=True)
def _neumaier_add(acc, comp, term):
    t = acc + term
    if abs(acc) >= abs(term):
        comp += (acc - t) + term
    else:
        comp += (term - t) + acc
    return t, comp


@njit(cache=True)
def _gauss_sum_numba(coeffs, first_power, c, nodes, weights):
    out = np.empty(c.shape[0], dtype=np.complex128)
    ncoef = coeffs.shape[0]
    for j in range(c.shape[0]):
        s = np.sqrt(2.0 / c[j])
        # Neumaier summation on each component keeps the result independent of node count
        re = 0.0
        re_c = 0.0
        im = 0.0
        im_c = 0.0
        for i in range(nodes.shape[0]):
            p = nodes[i] * s
            val = coeffs[ncoef - 1]
            for k in range(ncoef - 2, -1, -1):
                val = val * p + coeffs[k]
            for _ in range(first_power):
                val = val * p
            term = weights[i] * val
            re, re_c = _neumaier_add(re, re_c, term.real)
            im, im_c = _neumaier_add(im, im_c, term.imag)
        out[j] = s * complex(re + re_c, im + im_c)
    return out


def _gauss_sum_numpy(coeffs, first_power, c, nodes, weights):
    s = np.sqrt(2.0 / c)
    p = nodes[None, :] * s[:, None]
    val = np.full(p.shape, coeffs[-1], dtype=np.complex128)
    for ck in coeffs[-2::-1]:
        val = val * p + ck
    if first_power > 0:
        val = val * p ** first_power
    return s * np.sum(val * weights[None, :], axis=1)


def gauss_sum(coeffs, first_power, c, nodes, weights):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    c = np.ascontiguousarray(np.atleast_1d(c), dtype=np.complex128)
    if coeffs.size == 0:
        return np.zeros(c.shape, dtype=np.complex128)
    nodes = np.ascontiguousarray(nodes, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if _accel.USE_NUMBA:
        return _gauss_sum_numba(coeffs, int(first_power), c, nodes, weights)
    return _gauss_sum_numpy(coeffs, int(first_power), c, nodes, weights)


# --- Inverse-transform sums over half-plane nodes -------------------------
#
# out[i] = sum_j w[j] * p[i]^power * exp(-i conj(z_j) p[i]^2 / 2) * f[j]


@njit(cache=True)
def _inverse_sum_numba(p, z, fz, w, power):
    out = np.empty(p.shape[0], dtype=np.complex128)
    for i in range(p.shape[0]):
        h = 0.5 * p[i] * p[i]
        acc = 0.0 + 0.0j
        for j in range(z.shape[0]):
            e = np.exp((-z[j].imag - 1j * z[j].real) * h)
            acc += w[j] * e * fz[j]
        out[i] = acc * p[i] ** power
    return out


def _inverse_sum_numpy(p, z, fz, w, power):
    h = 0.5 * p * p
    phase = np.exp(np.outer(h, -z.imag - 1j * z.real))
    return (phase @ (w * fz)) * p ** power


def inverse_sum(p, z, fz, w, power):
    p = np.ascontiguousarray(np.atleast_1d(p), dtype=np.float64)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    fz = np.ascontiguousarray(fz, dtype=np.complex128)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if _accel.USE_NUMBA:
        return _inverse_sum_numba(p, z, fz, w, int(power))
    return _inverse_sum_numpy(p, z, fz, w, int(power))


# --- Weighted sesquilinear sums -------------------------------------------


@njit(cache=True)
def _weighted_inner_numba(f, g, w):
    re = 0.0
    re_c = 0.0
    im = 0.0
    im_c = 0.0
    for i in range(f.shape[0]):
        term = w[i] * f[i] * np.conj(g[i])
        re, re_c = _neumaier_add(re, re_c, term.real)
        im, im_c = _neumaier_add(im, im_c, term.imag)
    return complex(re + re_c, im + im_c)


def _weighted_inner_numpy(f, g, w):
    return np.sum(w * f * np.conj(g))


def weighted_inner(f, g, w):
    """sum_i w_i f_i conj(g_i) with a deterministic summation order."""
    f = np.ascontiguousarray(np.ravel(f), dtype=np.complex128)
    g = np.ascontiguousarray(np.ravel(g), dtype=np.complex128)
    w = np.ascontiguousarray(np.ravel(w), dtype=np.float64)
    if _accel.USE_NUMBA:
        return complex(_weighted_inner_numba(f, g, w))
    return complex(_weighted_inner_numpy(f, g, w))


# --- Hypergeometric-type power series -------------------------------------
#
# sum_{n<N} t_n x^n with t_0 = 1, t_{n+1}/t_n = (n + a)/(n + 1), i.e. the
# partial sums of (1 - x)^(-a).


@njit(cache=True)
def _pochhammer_series_numba(x, a, nterms):
    out = np.empty(x.shape[0], dtype=np.complex128)
    for j in range(x.shape[0]):
        term = 1.0 + 0.0j
        acc = 0.0 + 0.0j
        for n in range(nterms):
            acc += term
            term = term * (x[j] * ((n + a) / (n + 1.0)))
        out[j] = acc
    return out


def _pochhammer_series_numpy(x, a, nterms):
    n = np.arange(nterms - 1, dtype=np.float64)
    coef = np.concatenate(([1.0], np.cumprod((n + a) / (n + 1.0))))
    # Horner from the top keeps the numpy path a single pass over x
    acc = np.zeros(x.shape, dtype=np.complex128)
    for ck in coef[::-1]:
        acc = acc * x + ck
    return acc


def pochhammer_series(x, a, nterms):
    x = np.ascontiguousarray(np.atleast_1d(x), dtype=np.complex128)
    if _accel.USE_NUMBA:
        return _pochhammer_series_numba(x, float(a), int(nterms))
    return _pochhammer_series_numpy(x, float(a), int(nterms))
