"""Invariant suites behind ``affinecs verify``.

Each check yields a :class:`Record` with the identity it tests (in words),
the measured defect, the tolerance it was held to and, where the expected
value overrides a printed one, the erratum id from :mod:`affinecs.errata`.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from affinecs import actions, equiv, opcore, spaces, xform
from affinecs.config import RunConfig
from affinecs.quad import disk_rule, halfplane_rule
from affinecs.testfn import GaussPoly, gauss_poly, l2_norm

SUITES = ("coeffs", "series", "kernels", "bases", "isometry", "roundtrip", "equivalence")
TRUNCATION_LEVELS = ((4.0, 8.0), (6.0, 16.0))


@dataclass
class Record:
    suite: str
    check: str          # tolerance key
    identity: str
    measured: float
    tolerance: float
    passed: bool = field(init=False)
    erratum: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.measured = float(self.measured)
        self.passed = bool(self.measured <= self.tolerance)

    def as_dict(self):
        return asdict(self)


def _rec(cfg, suite, check, identity, measured, erratum=None, **params):
    return Record(suite, check, identity, measured, cfg.tolerances[check], erratum, params)


# --- batteries ----------------------------------------------------------------

def odd_battery():
    return [
        gauss_poly([0, 1]),
        gauss_poly([0, 0, 0, 1]),
        gauss_poly([0, 1, 0, 0.5j]),
        GaussPoly([0, 1], scale=2.0),
        GaussPoly([0, 0.3, 0, -1], scale=0.75),
        actions.act_affine(actions.AffineLabel(2.0, 0.5), gauss_poly([0, 1])),
    ]


def even_battery():
    return [
        gauss_poly([0, 0, 1]),
        gauss_poly([0, 0, 0, 0, 1]),
        gauss_poly([0, 0, 1, 0, -0.25j]),
        GaussPoly([0, 0, 1], scale=2.0),
        GaussPoly([0, 0, 0.5, 0, 1], scale=0.75),
        actions.act_affine(actions.AffineLabel(0.5, -1.0), gauss_poly([0, 0, 1])),
    ]


BATTERY = {"odd": odd_battery, "even": even_battery}


def battery_pairs(parity):
    fns = BATTERY[parity]()
    # diagonal pairs plus neighbours: 2 * len(fns) - 1 pairs
    return [(f, f) for f in fns] + list(zip(fns[:-1], fns[1:]))


def _rel(lhs, rhs, phi, psi):
    return abs(lhs - rhs) / max(abs(rhs), l2_norm(phi) * l2_norm(psi))


def isometry_defect(parity, rule):
    """Worst relative isometry defect over the battery on a truncated region."""
    return max(_rel(*xform.isometry_check(a, b, parity, rule), a, b)
               for a, b in battery_pairs(parity))


ROUNDTRIP_FNS = {
    "odd": lambda: [gauss_poly([0, 1]), gauss_poly([0, 0, 0, 1])],
    "even": lambda: [gauss_poly([0, 0, 1]), gauss_poly([0, 0, 0, 0, 1])],
}


def roundtrip_defect(parity, rule, grid=None):
    p = np.linspace(-3.0, 3.0, 61) if grid is None else grid
    worst = 0.0
    for psi in ROUNDTRIP_FNS[parity]():
        fvals = np.asarray(xform.transform(psi, rule.nodes, parity))
        back = xform.inverse(None, p, parity, rule, f_nodes=fvals)
        worst = max(worst, float(np.max(np.abs(back - psi(p)))))
    return worst


def z_grid():
    b, a = np.meshgrid(np.linspace(-2.0, 2.0, 5), np.linspace(0.5, 4.0, 5), indexing="ij")
    return (b + 1j * a).ravel()


INTERTWINE_FNS = ROUNDTRIP_FNS


def intertwining_residual(parity, convention="derived"):
    zs = z_grid()
    worst = 0.0
    for psi in INTERTWINE_FNS[parity]():
        lhs = np.asarray(xform.transform(equiv.qp(psi), zs, parity))
        f = lambda z, psi=psi: xform.transform(psi, z, parity)
        rhs = np.asarray(equiv.qp_tilde_apply(parity, f, zs, convention))
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(f(zs))))))
    return worst


def zeta_residual(parity, convention="negated_adjoint"):
    return equiv.scan_zeta_conventions(parity, ROUNDTRIP_FNS[parity](), z_grid())[convention]


ADJOINT_POINTS = [(1j, 2j), (0.5 + 1j, -1 + 0.7j), (1.5 + 2j, 0.3 + 0.5j), (-2 + 3j, 1 + 1j)]


def adjoint_residual(H, H_adj, alpha):
    worst = 0.0
    for z, z2 in ADJOINT_POINTS:
        a = equiv.operator_kernel(H_adj, alpha, z, z2)
        b = np.conj(equiv.operator_kernel(H, alpha, z2, z))
        worst = max(worst, abs(a - b) / (1.0 + abs(b)))
    return worst


# --- suites -------------------------------------------------------------------

def suite_coeffs(cfg):
    mism = 0
    for n in range(1, 13):
        nf = opcore.normal_order("QD" * n)
        for r in range(1, n + 1):
            if nf.coeff(r, r) != opcore.stirling_coeff(n, r):
                mism += 1
    table = opcore.stirling_table(12)
    table_mism = sum(table[n, r] != opcore.stirling_coeff(n, r)
                     for n in range(1, 13) for r in range(1, n + 1))
    return [
        _rec(cfg, "coeffs", "coeffs", "normal ordering of (QD)^n equals the closed-form coefficients, n <= 12",
             mism, n_max=12),
        _rec(cfg, "coeffs", "coeffs", "row recursion a(m+1,r) = a(m,r-1) + r a(m,r) equals the closed form",
             table_mism, n_max=12),
        _rec(cfg, "coeffs", "coeffs", "a(6,4) = 65", abs(opcore.stirling_coeff(6, 4) - 65), "E1"),
    ]


def suite_series(cfg):
    egf = 0.0
    for r in range(1, 7):
        for m in (-0.5, -0.3, -0.1, 0.1, 0.3, 0.5):
            exact = math.expm1(m) ** r / math.factorial(r)
            egf = max(egf, abs(opcore.egf_partial_sum(r, m, 40) - exact) / abs(exact))
    x = np.linspace(-3.0, 3.0, 25)
    dil = 0.0
    for f in (gauss_poly([1]), gauss_poly([0, 1]), gauss_poly([0, 0, 1])):
        for m in (-0.5, -0.2, 0.2, 0.5):
            series = actions.act_dilation_series(m, f, x, 30)
            dil = max(dil, float(np.max(np.abs(series - f(math.exp(m) * x)))))
    return [
        _rec(cfg, "series", "egf", "sum_n a(n,r) m^n/n! = (e^m - 1)^r / r!", egf, N=40),
        _rec(cfg, "series", "dilation", "sum_n m^n/n! (QD)^n f = f(e^m x)", dil, N=30),
    ]


def _disk_points(n, radius, seed):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))


def suite_kernels(cfg):
    drule = disk_rule(cfg.orders["radial"], cfg.orders["angular"])
    out = []
    w = _disk_points(40, math.sqrt(0.5), 1)
    w2 = _disk_points(40, math.sqrt(0.5), 2)
    for alpha in (0.5, -0.5):
        err = np.max(np.abs(spaces.kernel_disk_series(alpha, w, w2, 200) - spaces.kernel_disk(alpha, w, w2)))
        out.append(_rec(cfg, "kernels", "kernel_series",
                        f"monomial-basis series equals the closed-form disk kernel, alpha={alpha:+g}",
                        err, "E3" if alpha < 0 else None, nterms=200))
    pts = _disk_points(20, 0.7, 3)
    for alpha in (0.5, -0.5):
        worst = 0.0
        for deg in range(9):
            g = lambda v, deg=deg: np.asarray(v) ** deg
            for p in pts:
                lhs, rhs = spaces.reproduce_check(alpha, "disk", g, p, drule)
                worst = max(worst, abs(lhs - rhs))
        out.append(_rec(cfg, "kernels", "reproduce",
                        f"disk kernel reproduces monomials of degree <= 8, alpha={alpha:+g}",
                        worst, "E7" if alpha < 0 else None))
    hp = [0.3 + 1.2j, -1 + 0.5j, 2 + 3j]
    for alpha in (0.5, -0.5):
        worst = 0.0
        for n in range(4):
            g = spaces.basis_halfplane(alpha, n)
            for p in hp:
                lhs, rhs = spaces.reproduce_check(alpha, "half_plane", g, p, drule)
                worst = max(worst, abs(lhs - rhs))
        out.append(_rec(cfg, "kernels", "reproduce",
                        f"half-plane kernel reproduces l_n, n <= 3, alpha={alpha:+g}", worst))
    rng = np.random.default_rng(4)
    zs = rng.uniform(-3, 3, 100) + 1j * rng.uniform(0.05, 3, 100)
    for alpha in (0.5, -0.5):
        f = lambda z, alpha=alpha: spaces.kernel_halfplane(alpha, z, 0.4 + 1.1j)
        back = spaces.cayley_to_halfplane(alpha, spaces.cayley_to_disk(alpha, f))
        err = np.max(np.abs(back(zs) - f(zs)) / (1.0 + np.abs(f(zs))))
        out.append(_rec(cfg, "kernels", "cayley", f"S(B f) = f pointwise, alpha={alpha:+g}",
                        err, "E2" if alpha < 0 else None))
    return out


def suite_bases(cfg):
    drule = disk_rule(cfg.orders["radial"], cfg.orders["angular"])
    out = []
    for alpha in (0.5, -0.5):
        G = spaces.gram_disk(alpha, 10, drule)
        off = np.max(np.abs(G - np.diag(np.diag(G))))
        out.append(_rec(cfg, "bases", "gram",
                        f"monomial basis is orthogonal in D_{alpha:+g}, n <= 10", off,
                        diagonal=[round(float(d.real), 12) for d in np.diag(G)]))
    return out


def suite_isometry(cfg):
    rule = halfplane_rule(cfg.sigma, cfg.gamma, cfg.orders["b"], cfg.orders["t"])
    drule = disk_rule(cfg.orders["radial"], cfg.orders["angular"])
    out = []
    for parity in ("odd", "even"):
        sign = "-" if parity == "odd" else "+"
        d = isometry_defect(parity, rule)
        out.append(_rec(cfg, "isometry", "isometry",
                        f"<A_{parity[0]} phi, A_{parity[0]} psi> over R(sigma, gamma) in H_{sign}1/2 "
                        "equals <phi, psi> in L^2", d, sigma=cfg.sigma, gamma=cfg.gamma,
                        pairs=len(battery_pairs(parity))))
        levels = [halfplane_rule(s, g, cfg.orders["b"], cfg.orders["t"]) for s, g in TRUNCATION_LEVELS]
        defects = [isometry_defect(parity, r) for r in levels] + [d]
        rise = max(max(b - a for a, b in zip(defects, defects[1:])), 0.0)
        out.append(_rec(cfg, "isometry", "isometry",
                        f"{parity} isometry defect decreases with the truncation level",
                        rise if rise > 0 else 0.0, defects=defects))
        full = max(_rel(*xform.isometry_check_full(a, b, parity, drule), a, b)
                   for a, b in battery_pairs(parity))
        out.append(_rec(cfg, "isometry", "isometry_full",
                        f"{parity} isometry over the whole half-plane (Cayley pullback to the disk)", full))
    return out


def suite_roundtrip(cfg):
    rule = halfplane_rule(cfg.sigma, cfg.gamma, cfg.orders["b"], cfg.orders["t"])
    return [_rec(cfg, "roundtrip", "roundtrip",
                 f"inverse of A_{parity[0]} recovers psi on [-3, 3] (sup norm)",
                 roundtrip_defect(parity, rule), sigma=cfg.sigma, gamma=cfg.gamma)
            for parity in ("odd", "even")]


def suite_equivalence(cfg):
    out = []
    for parity in ("odd", "even"):
        out.append(_rec(cfg, "equivalence", "intertwining",
                        f"A(QP psi) = +i (2z d/dz + {equiv.QP_CONSTANT[parity]}) A psi, {parity} channel",
                        intertwining_residual(parity), "E5" if parity == "even" else "E4"))
    for parity in ("odd", "even"):
        out.append(_rec(cfg, "equivalence", "zeta",
                        f"z (A psi)(z) = A(-(Q^-1 P + P Q^-1)/2 + {equiv.ZETA_CONSTANT[parity]} i Q^-2/2) psi, "
                        f"{parity} channel", zeta_residual(parity), "E6"))
    for alpha in (-0.5, 0.5):
        worst = max(adjoint_residual(equiv.identity, equiv.identity, alpha),
                    adjoint_residual(equiv.qp, equiv.pq, alpha))
        out.append(_rec(cfg, "equivalence", "adjoint",
                        f"kernel of H* is conj(h(z', conj z)) for H in (identity, QP), alpha={alpha:+g}", worst))
    return out


SUITE_FUNCS = {
    "coeffs": suite_coeffs,
    "series": suite_series,
    "kernels": suite_kernels,
    "bases": suite_bases,
    "isometry": suite_isometry,
    "roundtrip": suite_roundtrip,
    "equivalence": suite_equivalence,
}


def run(suite, cfg=None, jobs=1):
    """Run one suite or ``"all"``; records come back in suite order."""
    cfg = (cfg or RunConfig()).validate()
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITE_FUNCS:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda n: SUITE_FUNCS[n](cfg), names))
    else:
        results = [SUITE_FUNCS[n](cfg) for n in names]
    return [r for chunk in results for r in chunk]
