"""Quadrature on the real line, the unit disk and a truncated upper half-plane.

Node generation is numpy's (``leggauss`` / ``hermgauss``); everything else
here is the mapping of those nodes onto the three integration domains.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from affinecs import kernels

__all__ = [
    "DEFAULT_ORDERS",
    "LineRule", "DiskRule", "HalfPlaneRule",
    "line_rule", "disk_rule", "halfplane_rule",
    "integrate_line", "integrate_disk", "integrate_halfplane",
    "gauss_hermite_nodes", "check_alpha",
]

DEFAULT_ORDERS = {
    "hermite": 120,
    "radial": 80,
    "angular": 64,
    "b": 96,
    "t": 96,
}

ALPHAS = (0.5, -0.5)


def check_alpha(alpha):
    alpha = float(alpha)
    if alpha not in ALPHAS:
        raise ValueError(f"weight exponent must be +1/2 or -1/2, got {alpha}")
    return alpha


@lru_cache(maxsize=32)
def gauss_hermite_nodes(order):
    t, w = hermgauss(int(order))
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


@lru_cache(maxsize=64)
def _gauss_legendre_nodes(order):
    x, w = leggauss(int(order))
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class LineRule:
    """Nodes and positive weights on the real line.

    For ``gauss_hermite`` the Gaussian weight is *embedded*: the rule
    approximates ``int f(x) exp(-((x - center)/width)^2) dx`` and callers
    pass ``f`` without the Gaussian factor.  ``gauss_legendre`` approximates
    the plain integral of ``f`` over ``interval``.
    """

    kind: str
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    interval: tuple = None
    center: float = 0.0
    width: float = 1.0


def line_rule(kind, order, interval=None, center=0.0, width=1.0):
    if order < 1:
        raise ValueError("quadrature order must be positive")
    if kind == "gauss_hermite":
        t, w = gauss_hermite_nodes(order)
        return LineRule(kind, int(order), center + width * t, width * w,
                        None, float(center), float(width))
    if kind == "gauss_legendre":
        if interval is None:
            raise ValueError("gauss_legendre needs an interval")
        lo, hi = map(float, interval)
        if not hi > lo:
            raise ValueError(f"empty interval {interval}")
        x, w = _gauss_legendre_nodes(order)
        half = 0.5 * (hi - lo)
        return LineRule(kind, int(order), lo + half * (x + 1.0), half * w, (lo, hi))
    raise ValueError(f"unknown line rule kind {kind!r}")


def integrate_line(rule, f):
    """sum_k w_k f(x_k); see :class:`LineRule` for the Hermite weight."""
    vals = np.asarray(f(rule.nodes), dtype=np.complex128)
    return kernels.weighted_inner(vals, np.ones_like(vals), rule.weights)


# --- unit disk ---------------------------------------------------------------


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule on the unit disk.

    Radial Gauss-Legendre nodes live in u = sqrt(1 - r^2) on (0, 1); with
    r dr = u du the boundary factor (1 - r^2)^(+-1/2) becomes u^(+-1), so
    both weights turn into polynomials in u.  The angle uses an M-point
    trapezoid rule, exact for e^{ik theta} with |k| < M.
    """

    radial: LineRule
    angular: int
    nodes: np.ndarray = field(repr=False)   # complex, shape (n_r * M,)
    _u: np.ndarray = field(repr=False)
    _w: np.ndarray = field(repr=False)      # du dtheta weights, without the measure

    def weights(self, alpha):
        """Weights for int f d nu_alpha, d nu_alpha = ((1 - |w|^2)/2)^alpha dx dy."""
        alpha = check_alpha(alpha)
        return self._w * 2.0 ** (-alpha) * self._u ** (2 * alpha + 1)


def disk_rule(radial_order=None, angular=None):
    radial_order = radial_order or DEFAULT_ORDERS["radial"]
    angular = angular or DEFAULT_ORDERS["angular"]
    rad = line_rule("gauss_legendre", radial_order, interval=(0.0, 1.0))
    u = rad.nodes
    r = np.sqrt(1.0 - u * u)
    theta = 2.0 * np.pi * np.arange(angular) / angular
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    uu, _ = np.meshgrid(u, theta, indexing="ij")
    ww, _ = np.meshgrid(rad.weights, theta, indexing="ij")
    nodes = (rr * np.exp(1j * tt)).ravel()
    return DiskRule(rad, int(angular), nodes, uu.ravel(), (ww * (2.0 * np.pi / angular)).ravel())


def integrate_disk(rule, alpha, f):
    vals = np.asarray(f(rule.nodes), dtype=np.complex128)
    return kernels.weighted_inner(vals, np.ones_like(vals), rule.weights(alpha))


def disk_inner(rule, alpha, f_vals, g_vals):
    """<f, g> in L^2(nu_alpha) from values already sampled on ``rule.nodes``."""
    return kernels.weighted_inner(f_vals, g_vals, rule.weights(alpha))


# --- truncated upper half-plane ----------------------------------------------


@dataclass(frozen=True)
class HalfPlaneRule:
    """Tensor rule on R = {|Re z| < sigma, 1/gamma < Im z < gamma}.

    b = Re z uses Gauss-Legendre on (-sigma, sigma); a = Im z is sampled as
    a = e^t with Gauss-Legendre in t on (-ln gamma, ln gamma), so da = a dt.
    """

    sigma: float
    gamma: float
    b_rule: LineRule = field(repr=False)
    a_rule: LineRule = field(repr=False)   # rule in t = log a
    nodes: np.ndarray = field(repr=False)
    _a: np.ndarray = field(repr=False)
    _w: np.ndarray = field(repr=False)     # da db weights

    def weights(self, alpha):
        """Weights for int_R f(z) a^alpha da db."""
        alpha = check_alpha(alpha)
        return self._w * self._a ** alpha

    @property
    def size(self):
        return self.nodes.size


def halfplane_rule(sigma=8.0, gamma=32.0, b_order=None, t_order=None):
    sigma = float(sigma)
    gamma = float(gamma)
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not gamma > 1:
        raise ValueError(f"gamma must exceed 1, got {gamma}")
    b_order = b_order or DEFAULT_ORDERS["b"]
    t_order = t_order or DEFAULT_ORDERS["t"]
    brule = line_rule("gauss_legendre", b_order, interval=(-sigma, sigma))
    lg = math.log(gamma)
    trule = line_rule("gauss_legendre", t_order, interval=(-lg, lg))
    a = np.exp(trule.nodes)
    bb, aa = np.meshgrid(brule.nodes, a, indexing="ij")
    wb, wt = np.meshgrid(brule.weights, trule.weights * a, indexing="ij")
    return HalfPlaneRule(sigma, gamma, brule, trule,
                         (bb + 1j * aa).ravel(), aa.ravel(), (wb * wt).ravel())


def integrate_halfplane(rule, alpha, f):
    vals = np.asarray(f(rule.nodes), dtype=np.complex128)
    return kernels.weighted_inner(vals, np.ones_like(vals), rule.weights(alpha))


def halfplane_inner(rule, alpha, f_vals, g_vals):
    return kernels.weighted_inner(f_vals, g_vals, rule.weights(alpha))
