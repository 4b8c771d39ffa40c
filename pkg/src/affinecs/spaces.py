"""Weighted Bergman spaces with weight exponent alpha = +1/2 or -1/2.

Half-plane spaces H_alpha carry d mu_alpha = a^alpha da db (z = b + ia);
disk spaces D_alpha carry d nu_alpha = ((1 - |w|^2)/2)^alpha dx dy.  In both
cases the reproducing kernel is (alpha + 1)/(4 pi) times the power
-(alpha + 2) of the "distance" (1 - w conj(w'))/2 or (z - conj(z'))/(2i).
Half-integer powers use the principal branch; on valid inputs the base has
positive real part, so no cut is crossed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from affinecs import kernels
from affinecs.quad import check_alpha, disk_inner, disk_rule, integrate_disk

__all__ = [
    "SpaceTag",
    "DomainError",
    "kernel_constant",
    "kernel_disk",
    "kernel_disk_series",
    "kernel_halfplane",
    "basis_disk",
    "basis_halfplane",
    "cayley_to_disk",
    "cayley_to_halfplane",
    "reproduce_check",
    "gram_disk",
]


class DomainError(ValueError):
    """Argument outside the open disk / open upper half-plane."""


@dataclass(frozen=True)
class SpaceTag:
    alpha: float
    domain: str  # "half_plane" or "disk"

    def __post_init__(self):
        check_alpha(self.alpha)
        if self.domain not in ("half_plane", "disk"):
            raise ValueError(f"unknown domain {self.domain!r}")

    @property
    def name(self):
        letter = "H" if self.domain == "half_plane" else "D"
        return f"{letter}_{'+' if self.alpha > 0 else '-'}1/2"


def kernel_constant(alpha):
    """3/(8 pi) for alpha = 1/2 and 1/(8 pi) for alpha = -1/2."""
    return (check_alpha(alpha) + 1.0) / (4.0 * math.pi)


def _disk_arg(w, name):
    w = np.asarray(w, dtype=np.complex128)
    if np.any(np.abs(w) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disk")
    return w


def _hp_arg(z, name):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z.imag <= 0.0):
        raise DomainError(f"{name} must lie in the open upper half-plane")
    return z


def _out(v):
    return v if np.ndim(v) else complex(v)


def kernel_disk(alpha, w, w2):
    """Closed-form reproducing kernel k_alpha(w, w2) of D_alpha."""
    alpha = check_alpha(alpha)
    w = _disk_arg(w, "w")
    w2 = _disk_arg(w2, "w'")
    base = 0.5 * (1.0 - w * np.conj(w2))
    return _out(kernel_constant(alpha) * base ** (-(alpha + 2.0)))


def kernel_disk_series(alpha, w, w2, nterms=200):
    """Partial sum of sum_n e_n(w) conj(e_n(w2)) over the monomial basis."""
    alpha = check_alpha(alpha)
    x = np.asarray(w, dtype=np.complex128) * np.conj(np.asarray(w2, dtype=np.complex128))
    # n = 0 coefficient 2^alpha Gamma(alpha+2) / (pi Gamma(alpha+1)); ratio (n+alpha+2)/(n+1)
    lead = 2.0 ** alpha * (alpha + 1.0) / math.pi
    vals = lead * kernels.pochhammer_series(np.ravel(x), alpha + 2.0, nterms)
    return _out(vals.reshape(np.shape(x)))


def kernel_halfplane(alpha, z, z2):
    """Closed-form reproducing kernel rho_alpha(z, z2) of H_alpha."""
    alpha = check_alpha(alpha)
    z = _hp_arg(z, "z")
    z2 = _hp_arg(z2, "z'")
    base = (z - np.conj(z2)) / 2j
    return _out(kernel_constant(alpha) * base ** (-(alpha + 2.0)))


def basis_norm_disk(alpha, n):
    alpha = check_alpha(alpha)
    lg = math.lgamma(n + alpha + 2.0) - math.lgamma(n + 1.0) - math.lgamma(alpha + 1.0)
    return 2.0 ** (alpha / 2.0) / math.sqrt(math.pi) * math.exp(0.5 * lg)


def basis_disk(alpha, n):
    """u_n (alpha = 1/2) or v_n (alpha = -1/2): a normalised multiple of w^n."""
    if n < 0:
        raise ValueError("basis index must be non-negative")
    c = basis_norm_disk(alpha, n)

    def e_n(w):
        return _out(c * np.asarray(w, dtype=np.complex128) ** n)

    e_n.__name__ = f"{'u' if alpha > 0 else 'v'}_{n}"
    return e_n


def basis_norm_halfplane(alpha, n):
    alpha = check_alpha(alpha)
    lg = math.lgamma(n + alpha + 2.0) - math.lgamma(n + 1.0)
    if alpha > 0:
        return 4.0 * math.exp(0.5 * lg) / math.pi ** 0.75
    return math.sqrt(2.0) * math.exp(0.5 * lg) / math.pi ** 0.75


def basis_halfplane(alpha, n):
    """l_n^alpha(z) = c_n ((z - i)/(z + i))^n (z + i)^-(alpha + 2)."""
    if n < 0:
        raise ValueError("basis index must be non-negative")
    alpha = check_alpha(alpha)
    c = basis_norm_halfplane(alpha, n)

    def ell(z):
        z = np.asarray(z, dtype=np.complex128)
        return _out(c * ((z - 1j) / (z + 1j)) ** n * (z + 1j) ** (-(alpha + 2.0)))

    ell.__name__ = f"l_{n}^{alpha:+g}"
    return ell


def cayley_to_disk(alpha, f):
    """B^alpha: (B f)(w) = 2^((alpha+2)/2) ((1 - w)/i)^-(alpha+2) f(i (1 + w)/(1 - w))."""
    alpha = check_alpha(alpha)
    beta = alpha + 2.0
    amp = 2.0 ** (beta / 2.0)

    def g(w):
        w = np.asarray(w, dtype=np.complex128)
        if np.any(w == 1.0):
            raise DomainError("w = 1 maps to the point at infinity")
        z = 1j * (1.0 + w) / (1.0 - w)
        return _out(amp * ((1.0 - w) / 1j) ** (-beta) * np.asarray(f(z)))

    return g


def cayley_to_halfplane(alpha, g):
    """S^alpha: (S g)(z) = 2^((alpha+2)/2) (z + i)^-(alpha+2) g((z - i)/(z + i))."""
    alpha = check_alpha(alpha)
    beta = alpha + 2.0
    amp = 2.0 ** (beta / 2.0)

    def f(z):
        z = np.asarray(z, dtype=np.complex128)
        if np.any(z == -1j):
            raise DomainError("z = -i is a pole of the Cayley map")
        return _out(amp * (z + 1j) ** (-beta) * np.asarray(g((z - 1j) / (z + 1j))))

    return f


def reproduce_check(alpha, domain, g, eval_point, rule=None):
    """Both sides of the reproducing identity at ``eval_point``.

    Returns (int k(p, .) g d measure, g(p)).  On the disk the integral uses
    ``rule`` (a DiskRule).  On the half-plane the integral is carried to the
    disk by the unitary Cayley map, i.e. <g, rho(., p)>_H = <B g, B rho(., p)>_D,
    so no truncation of the half-plane is involved.
    """
    alpha = check_alpha(alpha)
    rule = rule or disk_rule()
    if domain == "disk":
        p = complex(_disk_arg(eval_point, "eval_point"))
        vals = np.asarray(g(rule.nodes), dtype=np.complex128)
        kern = kernel_constant(alpha) * (0.5 * (1.0 - p * np.conj(rule.nodes))) ** (-(alpha + 2.0))
        lhs = integrate_disk(rule, alpha, lambda _nodes: kern * vals)
        return lhs, complex(g(p))
    if domain == "half_plane":
        p = complex(_hp_arg(eval_point, "eval_point"))
        bg = cayley_to_disk(alpha, g)
        bk = cayley_to_disk(alpha, lambda z: kernel_halfplane(alpha, z, p))
        lhs = disk_inner(rule, alpha, np.asarray(bg(rule.nodes)), np.asarray(bk(rule.nodes)))
        return lhs, complex(g(p))
    raise ValueError(f"unknown domain {domain!r}")


def gram_disk(alpha, nmax, rule=None):
    """G[m, n] = <e_m, e_n> in D_alpha for the monomial basis, by quadrature."""
    rule = rule or disk_rule()
    vals = np.array([basis_disk(alpha, n)(rule.nodes) for n in range(nmax + 1)])
    w = rule.weights(alpha)
    return (vals * w) @ np.conj(vals).T
