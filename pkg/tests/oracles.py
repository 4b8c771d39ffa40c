"""Reference computations that share no code with the package."""
import math
from collections import defaultdict
from fractions import Fraction

from scipy import integrate


def rewrite_normal_order(word):
    """Normal-order a word over {Q, D} by repeated DQ -> QD + 1 rewriting.

    Returns {(a, b): count}.  Words are kept as strings, so this shares no
    code with the package's term-map reduction.
    """
    level = {word: 1}
    done = defaultdict(int)
    while level:
        nxt = defaultdict(int)
        for w, c in level.items():
            k = w.find("DQ")
            if k < 0:
                done[(w.count("Q"), w.count("D"))] += c
                continue
            nxt[w[:k] + "QD" + w[k + 2:]] += c
            nxt[w[:k] + w[k + 2:]] += c
        level = nxt
    return dict(done)


def gaussian_moment(k, c):
    """int x^k exp(-c x^2 / 2) dx for Re c > 0 (principal branch)."""
    if k % 2:
        return 0.0
    j = k // 2
    dfact = math.prod(range(2 * j - 1, 0, -2)) if j else 1
    return math.sqrt(2 * math.pi) * dfact * complex(c) ** (-(2 * j + 1) / 2)


def quad_complex(f, a, b, **kw):
    re = integrate.quad(lambda x: f(x).real, a, b, limit=400, **kw)[0]
    im = integrate.quad(lambda x: f(x).imag, a, b, limit=400, **kw)[0]
    return re + 1j * im


def harmonic_rational(n):
    return sum(Fraction(1, k) for k in range(1, n + 1))
