"""One-parameter group actions and the affine family on test functions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from affinecs.opcore import stirling_table
from affinecs.testfn import GaussPoly, Sampled

__all__ = [
    "AffineLabel",
    "act_dilation_exact",
    "act_dilation_series",
    "act_translation",
    "act_chirp",
    "act_affine",
    "act_symmetric_generator",
    "check_noncommutation",
]


@dataclass(frozen=True)
class AffineLabel:
    p: float
    q: float = 0.0

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"affine label needs p > 0, got p={self.p}")


def _apply(f, fn_gauss, fn_other):
    if isinstance(f, GaussPoly):
        return fn_gauss(f)
    return fn_other(f)


def act_dilation_exact(m, f):
    """exp(m QD): f -> f(e^m x)."""
    lam = math.exp(m)
    return _apply(f, lambda g: g.dilate(lam), lambda g: (lambda x: g(lam * np.asarray(x))))


def act_dilation_series(m, f, x, N):
    """Truncated series sum_{n<=N} m^n/n! [(QD)^n f](x).

    (QD)^n is expanded as sum_r a(n, r) x^r f^(r)(x), so only N derivatives
    of f are formed and reused across n.
    """
    if not isinstance(f, GaussPoly):
        raise TypeError("series evaluation needs exact derivatives (GaussPoly input)")
    if N < 1:
        raise ValueError("N must be at least 1")
    x = np.asarray(x, dtype=np.float64)
    derivs = [d(x) for d in f.derivatives(N)]
    if m == 0:
        return derivs[0]
    table = stirling_table(N)
    # xr_fr[r] = x^r f^(r)(x)
    xr_fr = [x ** r * derivs[r] for r in range(N + 1)]
    total = np.array(derivs[0], dtype=np.complex128)
    coef = 1.0
    for n in range(1, N + 1):
        coef *= m / n
        qdn = sum(float(table[n, r]) * xr_fr[r] for r in range(1, n + 1))
        total = total + coef * qdn
    return total if total.ndim else complex(total)


def act_translation(m, f):
    """exp(imP): f -> f(x + m)."""
    return _apply(f, lambda g: g.translate(m), lambda g: (lambda x: g(np.asarray(x) + m)))


def act_chirp(m, f):
    """exp(imQ^2): f -> exp(i m x^2) f(x)."""
    return _apply(f, lambda g: g.chirp(m),
                  lambda g: (lambda x: np.exp(1j * m * np.asarray(x) ** 2) * g(x)))


def act_affine(label, f):
    """U[p, q] f = p^(1/4) exp(-i q x^2 / 2) f(sqrt(p) x)."""
    if not isinstance(label, AffineLabel):
        label = AffineLabel(*label)
    s = math.sqrt(label.p)
    amp = label.p ** 0.25
    if isinstance(f, GaussPoly):
        return f.dilate(s).chirp(-0.5 * label.q) * amp
    if isinstance(f, Sampled):
        grid = f.grid
        vals = amp * np.exp(-0.5j * label.q * grid ** 2) * f(s * grid)
        return Sampled(grid, vals)
    return lambda x: amp * np.exp(-0.5j * label.q * np.asarray(x) ** 2) * f(s * np.asarray(x))


def act_symmetric_generator(s, f):
    """exp(s (PQ + QP)) on a GaussPoly, for complex s.

    PQ + QP = -i(2QD + 1), so this is e^{-is} times a dilation by
    e^{-2is}.  Purely imaginary s gives the unitary one-parameter group; for
    other s the result may fail to decay.
    """
    if not isinstance(f, GaussPoly):
        raise TypeError("complex dilations are only exact on GaussPoly inputs")
    s = complex(s)
    return f.dilate(np.exp(-2j * s)) * np.exp(-1j * s)


def check_noncommutation(m, n, f, x):
    """Values of exp(imP)exp(inQ) f and exp(imQ)exp(inP) f at x.

    Returns (e^{in(x+m)} f(x+m), e^{imx} f(x+n)).
    """
    first = np.exp(1j * n * (x + m)) * f(x + m)
    second = np.exp(1j * m * x) * f(x + n)
    return complex(first), complex(second)
