"""Coherent-state transforms from odd/even Schwartz functions to H_-1/2 / H_1/2.

    (A_o psi)(z) = 1/(2 pi^(3/4))      int p   e^{i z p^2/2} psi(p) dp   -> H_-1/2
    (A_e psi)(z) = 1/(sqrt2 pi^(3/4))  int p^2 e^{i z p^2/2} psi(p) dp   -> H_1/2

For GaussPoly inputs the p-integral is a rotated-contour Gauss-Hermite sum
and exact up to rounding.  Other callables are integrated on the real line
with a Hermite rule whose width follows the e^{-Im(z) p^2/2} envelope.

The inverses integrate over the truncated region R(sigma, gamma) and are
therefore only approximations; :func:`inverse_with_defect` reports how much
the answer moves between two truncation levels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from affinecs import kernels
from affinecs.quad import (DEFAULT_ORDERS, disk_inner, disk_rule, gauss_hermite_nodes,
                           halfplane_inner, halfplane_rule, integrate_line, line_rule)
from affinecs.spaces import cayley_to_disk
from affinecs.testfn import GaussPoly, SingularityError, l2_inner

__all__ = [
    "ParityError",
    "ParitySplit",
    "AdmissibilityConstants",
    "ADMISSIBILITY",
    "PREFACTOR",
    "transform",
    "transform_odd",
    "transform_even",
    "coherent_state",
    "inverse",
    "inverse_odd",
    "inverse_even",
    "inverse_with_defect",
    "isometry_check",
    "isometry_check_full",
    "direct_sum_transform",
]

PI34 = math.pi ** 0.75

PREFACTOR = {"odd": 1.0 / (2.0 * PI34), "even": 1.0 / (math.sqrt(2.0) * PI34)}
WEIGHT_POWER = {"odd": 1, "even": 2}
# target space exponent: A_o lands in H_-1/2, A_e in H_1/2
ALPHA = {"odd": -0.5, "even": 0.5}


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class AdmissibilityConstants:
    C_phi_o: float
    C_phi_e: float

    @classmethod
    def from_prefactors(cls):
        # 1/sqrt(C) equals the transform prefactor
        return cls(PREFACTOR["odd"] ** -2, PREFACTOR["even"] ** -2)


ADMISSIBILITY = AdmissibilityConstants.from_prefactors()


@dataclass(frozen=True)
class ParitySplit:
    even: object
    odd: object

    @classmethod
    def of(cls, psi):
        if isinstance(psi, GaussPoly):
            ev, od = psi.split_parity()
            return cls(ev, od)
        return cls(lambda x: 0.5 * (psi(x) + psi(-np.asarray(x))),
                   lambda x: 0.5 * (psi(x) - psi(-np.asarray(x))))


def _check_parity(psi, parity):
    if parity not in PREFACTOR:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    if isinstance(psi, GaussPoly):
        got = psi.parity()
        if got not in (parity, "zero"):
            raise ParityError(f"{parity} transform applied to a function of parity {got}")


def _upper(z):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z.imag <= 0):
        raise ValueError("transform needs Im z > 0")
    return z


def transform(psi, z, parity, hermite_order=None):
    """A_parity psi evaluated at z (scalar or array)."""
    _check_parity(psi, parity)
    z = _upper(z)
    k = WEIGHT_POWER[parity]
    pref = PREFACTOR[parity]
    zf = np.ravel(z)
    if isinstance(psi, GaussPoly):
        if psi.is_zero:
            out = np.zeros(zf.shape, dtype=np.complex128)
        else:
            if psi.lin != 0:
                raise ValueError("transform of an uncentred GaussPoly is not supported")
            if psi.low + k < 0:
                raise SingularityError(
                    f"p^{k} psi(p) has a pole of order {-(psi.low + k)} at p = 0")
            c = psi.scale - 1j * zf
            if np.any(c.real <= 0):
                raise ValueError("integrand does not decay (Re(scale) + Im z <= 0)")
            order = max(DEFAULT_ORDERS["hermite"] // 2, psi.degree // 2 + 2)
            t, w = gauss_hermite_nodes(order)
            out = pref * kernels.gauss_sum(psi.coeffs, psi.low + k, c, t, w)
    else:
        order = hermite_order or DEFAULT_ORDERS["hermite"]
        out = np.empty(zf.shape, dtype=np.complex128)
        for j, zj in enumerate(zf):
            rule = line_rule("gauss_hermite", order, width=math.sqrt(2.0 / zj.imag))
            out[j] = pref * integrate_line(
                rule, lambda p, zj=zj: p ** k * np.exp(0.5j * zj.real * p * p) * psi(p))
    out = out.reshape(z.shape)
    return out if out.ndim else complex(out)


def transform_odd(psi, z):
    return transform(psi, z, "odd")


def transform_even(psi, z):
    return transform(psi, z, "even")


def coherent_state(parity, w):
    """phi^w with A psi (w) = <psi, phi^w>: prefactor * p^k e^{-i conj(w) p^2/2}."""
    w = complex(w)
    if w.imag <= 0:
        raise ValueError("coherent-state label must lie in the upper half-plane")
    coeffs = np.zeros(WEIGHT_POWER[parity] + 1, dtype=np.complex128)
    coeffs[-1] = PREFACTOR[parity]
    return GaussPoly(coeffs, scale=1j * np.conj(w))


def _eval_on_nodes(f, nodes):
    return np.asarray(f(nodes), dtype=np.complex128)


def inverse(f, p, parity, rule=None, f_nodes=None):
    """Truncated inverse transform at real p (scalar or array).

    ``f`` is a callable on arrays of z; ``f_nodes`` may carry its values on
    ``rule.nodes`` to avoid re-evaluation.
    """
    rule = rule or halfplane_rule()
    vals = _eval_on_nodes(f, rule.nodes) if f_nodes is None else f_nodes
    p_arr = np.asarray(p, dtype=np.float64)
    out = PREFACTOR[parity] * kernels.inverse_sum(
        np.ravel(p_arr), rule.nodes, vals, rule.weights(ALPHA[parity]), WEIGHT_POWER[parity])
    out = out.reshape(p_arr.shape)
    return out if out.ndim else complex(out)


def inverse_odd(f, p, rule=None):
    return inverse(f, p, "odd", rule)


def inverse_even(f, p, rule=None):
    return inverse(f, p, "even", rule)


@dataclass(frozen=True)
class InverseResult:
    values: np.ndarray
    defect: np.ndarray          # |fine - coarse|
    sigma: float
    gamma: float


def inverse_with_defect(f, p, parity, rule=None, coarse_rule=None):
    """Inverse at ``rule`` plus the change relative to ``coarse_rule``.

    The default coarse level halves sigma and takes sqrt(gamma).
    """
    rule = rule or halfplane_rule()
    if coarse_rule is None:
        coarse_rule = halfplane_rule(rule.sigma / 2.0, math.sqrt(rule.gamma),
                                     rule.b_rule.order, rule.a_rule.order)
    fine = np.asarray(inverse(f, p, parity, rule))
    coarse = np.asarray(inverse(f, p, parity, coarse_rule))
    return InverseResult(fine, np.abs(fine - coarse), rule.sigma, rule.gamma)


def isometry_check(phi, psi, parity, rule=None):
    """(<A phi, A psi> over the truncated region, <phi, psi> on L^2(R))."""
    _check_parity(phi, parity)
    _check_parity(psi, parity)
    rule = rule or halfplane_rule()
    fa = np.asarray(transform(phi, rule.nodes, parity))
    fb = fa if psi is phi else np.asarray(transform(psi, rule.nodes, parity))
    lhs = halfplane_inner(rule, ALPHA[parity], fa, fb)
    rhs = l2_inner(phi, psi)
    return lhs, rhs


def isometry_check_full(phi, psi, parity, rule=None):
    """(<A phi, A psi> over the whole half-plane, <phi, psi> on L^2(R)).

    The half-plane inner product is carried to the disk by the unitary
    Cayley map B.  For GaussPoly inputs with Gaussian scale 1, B(A psi) is a
    polynomial in w, so the disk rule is exact and no truncation enters.
    """
    _check_parity(phi, parity)
    _check_parity(psi, parity)
    rule = rule or disk_rule()
    alpha = ALPHA[parity]
    fa = np.asarray(cayley_to_disk(alpha, lambda z: transform(phi, z, parity))(rule.nodes))
    fb = np.asarray(cayley_to_disk(alpha, lambda z: transform(psi, z, parity))(rule.nodes))
    return disk_inner(rule, alpha, fa, fb), l2_inner(phi, psi)


def direct_sum_transform(psi, z):
    """(A_e psi_e (z), A_o psi_o (z))"""
    split = ParitySplit.of(psi)
    return transform(split.even, z, "even"), transform(split.odd, z, "odd")
