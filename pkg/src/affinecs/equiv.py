"""Operators on H_1/2 (+) H_-1/2 that are unitarily equivalent to L^2 operators.

Sign conventions here were fixed by two-sided numerical checks rather than
copied from the published statements:

* ``A QP A^-1`` acts on each channel as ``+i (2 z d/dz + c)`` with c = 3
  (even) or 2 (odd).  The published form carries ``-i``; it is kept as
  ``convention="published"`` so the discrepancy stays testable.
* Multiplication by z corresponds to ``-T*`` where
  ``T = (Q^-1 P + P Q^-1)/2 + c i Q^-2 / 2`` (c = 3 even, 1 odd), i.e.
  ``zeta A = A (-(Q^-1 P + P Q^-1)/2 + c i Q^-2/2)``.  The other candidate
  readings (``+T``, ``-T``) are selectable and fail the check.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from affinecs._fd import complex_derivative, default_step
from affinecs.testfn import GaussPoly, l2_inner
from affinecs.xform import ALPHA, coherent_state, transform

__all__ = [
    "AccuracyWarning",
    "BlockShapeError",
    "BlockOperator",
    "OperatorKernel",
    "qp", "pq", "identity",
    "qp_tilde_apply",
    "qp_tilde_operator",
    "zeta_apply",
    "zeta_operator",
    "zeta_operator_side",
    "ZETA_CONVENTIONS",
    "scan_zeta_conventions",
    "operator_kernel",
    "block_apply",
]

QP_CONSTANT = {"even": 3, "odd": 2}
ZETA_CONSTANT = {"even": 3, "odd": 1}
QP_SIGN = {"derived": 1j, "published": -1j}


class AccuracyWarning(UserWarning):
    pass


class BlockShapeError(ValueError):
    pass


# --- L^2-side operators on GaussPoly ----------------------------------------


def identity(psi):
    return psi


def qp(psi):
    """QP psi = -i x psi'"""
    return psi.derivative().times_power(1) * -1j


def pq(psi):
    """PQ psi = -i (x psi)'"""
    return psi.times_power(1).derivative() * -1j


def _sym_inverse(psi):
    """(Q^-1 P + P Q^-1)/2"""
    a = psi.derivative().times_power(-1) * -1j
    b = psi.times_power(-1).derivative() * -1j
    return (a + b) * 0.5


def zeta_operator(parity, convention="negated_adjoint"):
    """L^2-side operator paired with multiplication by z on one channel."""
    c = ZETA_CONSTANT[parity]

    def t_plus(psi):
        return _sym_inverse(psi) + psi.times_power(-2) * (0.5j * c)

    def t_adj(psi):
        return _sym_inverse(psi) + psi.times_power(-2) * (-0.5j * c)

    ops = {
        "published": t_plus,
        "negated": lambda psi: t_plus(psi) * -1,
        "negated_adjoint": lambda psi: t_adj(psi) * -1,
    }
    try:
        return ops[convention]
    except KeyError:
        raise ValueError(f"unknown zeta convention {convention!r}") from None


ZETA_CONVENTIONS = ("published", "negated", "negated_adjoint")


# --- transform-side operators ------------------------------------------------


def qp_tilde_apply(parity, f, z, convention="derived", h=None):
    """(2z d/dz + c) f scaled by +-i, at z; f' by real-direction differences."""
    if parity not in QP_CONSTANT:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    z = np.asarray(z, dtype=np.complex128)
    step = default_step(z) if h is None else h
    if np.any(z.imag < 10 * np.max(step)):
        warnings.warn("z close to the real axis; finite-difference derivative may be inaccurate",
                      AccuracyWarning, stacklevel=2)
    fz = np.asarray(f(z), dtype=np.complex128)
    dfz = complex_derivative(f, z, step)
    out = QP_SIGN[convention] * (2.0 * z * dfz + QP_CONSTANT[parity] * fz)
    return out if out.ndim else complex(out)


def qp_tilde_operator(parity, convention="derived"):
    """Function-to-function form of :func:`qp_tilde_apply`."""
    return lambda f: (lambda z: qp_tilde_apply(parity, f, z, convention))


def zeta_apply(split, z):
    """(z f_e(z), z f_o(z))"""
    f_e, f_o = split
    z = np.asarray(z, dtype=np.complex128)
    a = z * np.asarray(f_e(z))
    b = z * np.asarray(f_o(z))
    if a.ndim == 0:
        return complex(a), complex(b)
    return a, b


def zeta_operator_side(parity, psi, z, convention="negated_adjoint"):
    """(A_parity  T psi)(z) for the chosen reading T of the multiplication operator."""
    if not isinstance(psi, GaussPoly):
        raise TypeError("Q^-1 and Q^-2 are only applied exactly on GaussPoly inputs")
    t_psi = zeta_operator(parity, convention)(psi)
    return transform(t_psi, z, parity)


def scan_zeta_conventions(parity, psis, zs):
    """Max relative residual |z A psi - A T psi| / (1 + |z A psi|) per convention."""
    zs = np.asarray(zs, dtype=np.complex128)
    out = {}
    for conv in ZETA_CONVENTIONS:
        worst = 0.0
        for psi in psis:
            lhs = zs * np.asarray(transform(psi, zs, parity))
            rhs = np.asarray(zeta_operator_side(parity, psi, zs, conv))
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(lhs)))))
        out[conv] = worst
    return out


# --- kernels ----------------------------------------------------------------


@dataclass(frozen=True)
class OperatorKernel:
    """h(z, conj(z')) = <H phi^{z'}, phi^z>_{L^2} for one channel."""

    H: object
    alpha: float

    @property
    def parity(self):
        return "odd" if self.alpha < 0 else "even"

    def __call__(self, z, z2):
        return operator_kernel(self.H, self.alpha, z, z2)


def operator_kernel(H, alpha, z, z2):
    """Kernel of A H A^-1 on H_alpha at (z, conj(z2)).

    With phi^w the coherent states (A phi^w is the reproducing kernel at w),
    h(z, conj(z2)) = <H phi^{z2}, phi^z>; H = identity returns rho_alpha(z, z2).
    """
    parity = "odd" if float(alpha) < 0 else "even"
    if ALPHA[parity] != float(alpha):
        raise ValueError(f"alpha must be +-1/2, got {alpha}")
    src = H(coherent_state(parity, z2))
    return l2_inner(src, coherent_state(parity, z))


# --- block operators --------------------------------------------------------


@dataclass(frozen=True)
class BlockOperator:
    """2x2 operator matrix on (even channel, odd channel).

    Entries are maps from functions to functions, or None for a zero block.
    Either the off-diagonal or the diagonal pair must be empty.
    """

    ee: object = None
    eo: object = None
    oe: object = None
    oo: object = None

    def __post_init__(self):
        diag = self.ee is not None or self.oo is not None
        anti = self.eo is not None or self.oe is not None
        if diag and anti:
            raise BlockShapeError("block operator must be diagonal or antidiagonal")

    @property
    def preserves_parity(self):
        return self.eo is None and self.oe is None


def _zero(_z):
    return 0j


def _sum(f, g):
    if f is None:
        return g or _zero
    if g is None:
        return f
    return lambda z: np.asarray(f(z)) + np.asarray(g(z))


def block_apply(B, pair):
    """(f_e, f_o) -> (B_ee f_e + B_eo f_o, B_oe f_e + B_oo f_o)."""
    if not isinstance(B, BlockOperator):
        raise BlockShapeError(f"expected a BlockOperator, got {type(B).__name__}")
    f_e, f_o = pair
    out_e = _sum(B.ee(f_e) if B.ee else None, B.eo(f_o) if B.eo else None)
    out_o = _sum(B.oe(f_e) if B.oe else None, B.oo(f_o) if B.oo else None)
    return out_e, out_o
