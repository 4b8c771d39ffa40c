"""Test functions on the real line.

:class:`GaussPoly` is the closed family

    x -> (sum_k c_k x^(k + low)) * exp(-scale x^2 / 2 + lin x)

with complex ``scale`` (``Re scale > 0`` for decay) and ``low`` possibly
negative.  It is stable under Q, D, Q^-1, dilations, translations, chirps and
the affine family, so all of those act exactly.  :class:`Sampled` is a plain
grid of values with linear interpolation.
"""
from __future__ import annotations

import math

import numpy as np

from affinecs import kernels
from affinecs.quad import gauss_hermite_nodes

__all__ = ["GaussPoly", "Sampled", "SingularityError", "gauss_poly", "phi_odd", "phi_even",
           "l2_inner", "l2_norm"]

_ZERO_TOL = 0.0  # coefficients are trimmed only when exactly zero


class SingularityError(ValueError):
    """An operation needs more vanishing at x = 0 than the function has."""


def _trim(coeffs, low):
    coeffs = np.asarray(coeffs, dtype=np.complex128).ravel()
    nz = np.flatnonzero(np.abs(coeffs) > _ZERO_TOL)
    if nz.size == 0:
        return np.zeros(0, dtype=np.complex128), 0
    return coeffs[nz[0]: nz[-1] + 1].copy(), low + int(nz[0])


class GaussPoly:
    __slots__ = ("coeffs", "low", "scale", "lin")

    def __init__(self, coeffs, scale=1.0, lin=0.0, low=0):
        self.coeffs, self.low = _trim(coeffs, int(low))
        self.scale = complex(scale)
        self.lin = complex(lin)

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self):
        return self.coeffs.size == 0

    @property
    def powers(self):
        return np.arange(self.coeffs.size) + self.low

    @property
    def degree(self):
        return self.low + self.coeffs.size - 1 if self.coeffs.size else -1

    def parity(self):
        """'even', 'odd', 'zero' or None (mixed / not centred)."""
        if self.is_zero:
            return "zero"
        if self.lin != 0:
            return None
        odd = (self.powers % 2 != 0)
        live = self.coeffs != 0
        if not np.any(live & odd):
            return "even"
        if not np.any(live & ~odd):
            return "odd"
        return None

    def split_parity(self):
        """(even part, odd part) as GaussPolys; requires ``lin == 0``."""
        if self.lin != 0:
            raise ValueError("parity split needs a centred Gaussian (lin == 0)")
        odd = (self.powers % 2 != 0)
        ev = np.where(odd, 0, self.coeffs)
        od = np.where(odd, self.coeffs, 0)
        return (GaussPoly(ev, self.scale, 0.0, self.low),
                GaussPoly(od, self.scale, 0.0, self.low))

    def _like(self, coeffs, low=None, scale=None, lin=None):
        return GaussPoly(coeffs, self.scale if scale is None else scale,
                         self.lin if lin is None else lin,
                         self.low if low is None else low)

    # -- evaluation ----------------------------------------------------------

    def poly(self, x):
        x = np.asarray(x, dtype=np.complex128)
        if self.is_zero:
            return np.zeros(x.shape, dtype=np.complex128)
        acc = np.full(x.shape, self.coeffs[-1], dtype=np.complex128)
        for c in self.coeffs[-2::-1]:
            acc = acc * x + c
        if self.low:
            acc = acc * x ** float(self.low) if self.low < 0 else acc * x ** self.low
        return acc

    def __call__(self, x):
        x = np.asarray(x)
        out = self.poly(x) * np.exp(-0.5 * self.scale * x * x + self.lin * x)
        return out if out.ndim else complex(out)

    # -- algebra -------------------------------------------------------------

    def _aligned(self, other):
        if self.scale != other.scale or self.lin != other.lin:
            raise ValueError("sum of GaussPolys with different Gaussian envelopes")
        if self.is_zero:
            return np.zeros(0), other.coeffs, other.low
        if other.is_zero:
            return self.coeffs, np.zeros(0), self.low
        low = min(self.low, other.low)
        hi = max(self.degree, other.degree)
        a = np.zeros(hi - low + 1, dtype=np.complex128)
        b = np.zeros_like(a)
        a[self.low - low: self.low - low + self.coeffs.size] = self.coeffs
        b[other.low - low: other.low - low + other.coeffs.size] = other.coeffs
        return a, b, low

    def __add__(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b, low = self._aligned(other)
        return self._like(a + b, low=low)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, alpha):
        return self._like(self.coeffs * complex(alpha))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def times_power(self, k):
        """Q^k f for integer k (negative k divides by x^|k|)."""
        return self._like(self.coeffs, low=self.low + int(k))

    def derivative(self):
        """d/dx, exact within the family."""
        if self.is_zero:
            return self
        n = self.coeffs.size
        low = self.low
        # d/dx [x^j e^{...}] = (j x^(j-1) - scale x^(j+1) + lin x^j) e^{...}
        out = np.zeros(n + 2, dtype=np.complex128)  # powers low-1 .. low+n
        j = self.powers.astype(np.float64)
        out[0:n] += j * self.coeffs
        out[1:n + 1] += self.lin * self.coeffs
        out[2:n + 2] += -self.scale * self.coeffs
        return self._like(out, low=low - 1)

    def derivatives(self, count):
        """[f, f', ..., f^(count)]"""
        out = [self]
        for _ in range(count):
            out.append(out[-1].derivative())
        return out

    def conj_real(self):
        """Complex conjugate as a function of a real variable."""
        return GaussPoly(np.conj(self.coeffs), np.conj(self.scale), np.conj(self.lin), self.low)

    def multiply(self, other):
        """Pointwise product of two GaussPolys."""
        if self.is_zero or other.is_zero:
            return GaussPoly([])
        return GaussPoly(np.convolve(self.coeffs, other.coeffs),
                         self.scale + other.scale, self.lin + other.lin,
                         self.low + other.low)

    # -- exact group actions ------------------------------------------------

    def dilate(self, lam):
        """x -> f(lam x) for complex lam != 0."""
        lam = complex(lam)
        return GaussPoly(self.coeffs * lam ** self.powers.astype(np.complex128),
                         self.scale * lam * lam, self.lin * lam, self.low)

    def chirp(self, m):
        """x -> exp(i m x^2) f(x)."""
        return self._like(self.coeffs, scale=self.scale - 2j * complex(m))

    def translate(self, m):
        """x -> f(x + m)."""
        if self.is_zero or m == 0:
            return self
        if self.low < 0:
            raise SingularityError("translation of a Laurent term is not in the family")
        m = complex(m)
        deg = self.degree
        new = np.zeros(deg + 1, dtype=np.complex128)
        for j, c in zip(self.powers, self.coeffs):
            for k in range(j + 1):
                new[k] += c * math.comb(int(j), k) * m ** (j - k)
        const = np.exp(-0.5 * self.scale * m * m + self.lin * m)
        return GaussPoly(new * const, self.scale, self.lin - self.scale * m, 0)

    def __repr__(self):
        return (f"GaussPoly(coeffs={np.array2string(self.coeffs, precision=6)}, "
                f"low={self.low}, scale={self.scale}, lin={self.lin})")


def gauss_poly(coeffs, scale=1.0):
    """(c0 + c1 x + c2 x^2 + ...) exp(-scale x^2 / 2)."""
    return GaussPoly(coeffs, scale=scale)


def phi_odd():
    """x e^{-x^2/2}"""
    return GaussPoly([0, 1])


def phi_even():
    """x^2 e^{-x^2/2}"""
    return GaussPoly([0, 0, 1])


# --- Gaussian integrals ------------------------------------------------------

_GH_ORDER = 64


def gauss_integral(f, order=_GH_ORDER):
    """Exact (to rounding) integral over R of a GaussPoly.

    Completing the square moves the linear term into a complex shift; the
    remaining ``exp(-scale y^2/2)`` integral is a Gauss-Hermite sum along the
    rotated line ``y = t sqrt(2/scale)``.  Exact for degree < 2*order.
    """
    if f.is_zero:
        return 0j
    if f.scale.real <= 0:
        raise ValueError(f"integral diverges: Re(scale) = {f.scale.real} <= 0")
    if f.low < 0:
        raise SingularityError(f"integrand has a pole of order {-f.low} at 0")
    if f.degree >= 2 * order:
        order = f.degree // 2 + 1
    t, w = gauss_hermite_nodes(order)
    if f.lin == 0:
        return complex(kernels.gauss_sum(f.coeffs, f.low, np.array([f.scale]), t, w)[0])
    shift = f.lin / f.scale
    shifted = f.translate(shift)  # exp(lin x) absorbed; constant picked up inside
    return complex(kernels.gauss_sum(shifted.coeffs, shifted.low,
                                     np.array([shifted.scale]), t, w)[0]
                   * _lin_residual(shifted))


def _lin_residual(f):
    # after translating by lin/scale the linear coefficient is zero up to rounding
    if abs(f.lin) > 1e-12 * max(1.0, abs(f.scale)):
        raise ArithmeticError("linear term did not cancel")
    return 1.0


def l2_inner(f, g):
    """<f, g> = int f conj(g) dx for GaussPolys (exact) or callables (quadrature)."""
    if isinstance(f, GaussPoly) and isinstance(g, GaussPoly):
        return gauss_integral(f.multiply(g.conj_real()))
    from affinecs.quad import integrate_line, line_rule

    rule = line_rule("gauss_legendre", 400, interval=(-20.0, 20.0))
    return integrate_line(rule, lambda x: np.asarray(f(x)) * np.conj(np.asarray(g(x))))


def l2_norm(f):
    return math.sqrt(max(l2_inner(f, f).real, 0.0))


class Sampled:
    """Values on a strictly increasing real grid, linearly interpolated."""

    def __init__(self, grid, values):
        grid = np.asarray(grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
            raise ValueError("sample grid must be 1-D and strictly increasing")
        self.grid = grid
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.shape != grid.shape:
            raise ValueError("values and grid differ in shape")

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        re = np.interp(x, self.grid, self.values.real, left=0.0, right=0.0)
        im = np.interp(x, self.grid, self.values.imag, left=0.0, right=0.0)
        out = re + 1j * im
        return out if out.ndim else complex(out)

    @classmethod
    def from_function(cls, f, grid):
        grid = np.asarray(grid, dtype=np.float64)
        return cls(grid, np.asarray(f(grid), dtype=np.complex128))
