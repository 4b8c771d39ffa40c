"""Exact normal ordering in the one-variable Weyl algebra.

Generators are ``Q`` (multiplication by x) and ``D`` (d/dx) with
``DQ = QD + 1``.  Momentum enters only through the substitution ``P = -iD``,
which is why coefficients live in the Gaussian rationals.

The coefficients a(n, r) of ``(QD)^n = sum_r a(n, r) Q^r D^r`` are the
Stirling numbers of the second kind; they are computed here three ways
(closed form, row recursion, normal ordering) so each can check the others.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "OperatorPolynomial",
    "NormalForm",
    "CoeffTable",
    "stirling_coeff",
    "stirling_table",
    "qd_step",
    "normal_order",
    "egf_partial_sum",
]


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    I = None  # set below

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self):
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}i)"


GaussianRational.I = GaussianRational(0, 1)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def _check_word(word):
    if not isinstance(word, str) or any(ch not in "QD" for ch in word):
        raise ValueError(f"operator word must be a string over {{Q, D}}, got {word!r}")
    return word


def _accumulate(terms, key, coeff):
    new = terms.get(key, _ZERO) + coeff
    if new:
        terms[key] = new
    else:
        terms.pop(key, None)


@dataclass(eq=False)
class OperatorPolynomial:
    """Finite sum of words over {Q, D}; the empty word is the identity."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for word, c in self.terms.items():
            _accumulate(clean, _check_word(word), GaussianRational.coerce(c))
        self.terms = clean

    @classmethod
    def word(cls, word, coeff=1):
        return cls({word: coeff})

    @classmethod
    def identity(cls):
        return cls({"": 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return OperatorPolynomial(out)

    def __neg__(self):
        return OperatorPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, alpha):
        alpha = GaussianRational.coerce(alpha)
        return OperatorPolynomial({w: alpha * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, OperatorPolynomial):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _accumulate(out, w1 + w2, c1 * c2)
        return OperatorPolynomial(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not in the algebra")
        out = OperatorPolynomial.identity()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, OperatorPolynomial) and self.terms == other.terms

    def __repr__(self):
        body = ", ".join(f"{w or 'I'}: {c}" for w, c in sorted(self.terms.items()))
        return f"OperatorPolynomial({{{body}}})"


@dataclass(eq=False)
class NormalForm:
    """``sum c[a, b] Q^a D^b`` with no stored zero coefficients."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.terms.items():
            a, b = key
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in normal-form key {key!r}")
            _accumulate(clean, (int(a), int(b)), GaussianRational.coerce(c))
        self.terms = clean

    @classmethod
    def identity(cls):
        return cls({(0, 0): 1})

    def __eq__(self, other):
        return isinstance(other, NormalForm) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return NormalForm(out)

    def scale(self, alpha):
        alpha = GaussianRational.coerce(alpha)
        return NormalForm({k: alpha * c for k, c in self.terms.items()})

    def to_polynomial(self):
        return OperatorPolynomial({"Q" * a + "D" * b: c for (a, b), c in self.terms.items()})

    def diagonal(self):
        """Coefficients of ``Q^r D^r`` as a dict r -> coefficient."""
        return {a: c for (a, b), c in self.terms.items() if a == b}

    def items(self):
        return sorted(self.terms.items())

    def coeff(self, a, b):
        """Coefficient of Q^a D^b (zero if absent)."""
        return self.terms.get((a, b), GaussianRational.coerce(0))

    def __repr__(self):
        body = ", ".join(f"{k}: {c}" for k, c in self.items())
        return f"NormalForm({{{body}}})"


def _right_multiply(terms, letter):
    """Normal form of (sum c Q^a D^b) * letter."""
    out = {}
    for (a, b), c in terms.items():
        if letter == "D":
            _accumulate(out, (a, b + 1), c)
        else:
            # D^b Q = Q D^b + b D^(b-1)
            _accumulate(out, (a + 1, b), c)
            if b:
                _accumulate(out, (a, b - 1), c * b)
    return out


def normal_order(p):
    """Reduce an operator polynomial to the basis ``Q^a D^b``.

    Accepts an :class:`OperatorPolynomial`, a bare word string, or a
    :class:`NormalForm` (returned unchanged up to copying).
    """
    if isinstance(p, NormalForm):
        return NormalForm(dict(p.terms))
    if isinstance(p, str):
        p = OperatorPolynomial.word(p)
    total = {}
    for word, coeff in p.terms.items():
        terms = {(0, 0): coeff}
        for letter in word:
            terms = _right_multiply(terms, letter)
        for k, c in terms.items():
            _accumulate(total, k, c)
    return NormalForm(total)


def qd_step(nf):
    """Normal form of ``QD * nf``.

    Diagonal terms use ``QD Q^n D^n = Q^(n+1) D^(n+1) + n Q^n D^n``; anything
    off the diagonal goes through the general reordering.
    """
    out = {}
    rest = {}
    for (a, b), c in nf.terms.items():
        if a == b:
            _accumulate(out, (a + 1, a + 1), c)
            if a:
                _accumulate(out, (a, a), c * a)
        else:
            rest["Q" * a + "D" * b] = c
    if rest:
        reordered = normal_order(OperatorPolynomial.word("QD") * OperatorPolynomial(rest))
        for k, c in reordered.terms.items():
            _accumulate(out, k, c)
    return NormalForm(out)


def stirling_coeff(n, r):
    """Closed-form a(n, r) = sum_k C(r-1, k-1) (-1)^(r-k) k^(n-1) / (r-1)!.

    The division is exact; the result is an int.  Returns 0 for r > n.
    """
    if not (isinstance(n, int) and isinstance(r, int)) or n < 1 or r < 1:
        raise ValueError(f"a(n, r) needs positive integers, got n={n!r}, r={r!r}")
    total = 0
    for k in range(1, r + 1):
        total += math.comb(r - 1, k - 1) * (-1) ** (r - k) * k ** (n - 1)
    q, rem = divmod(total, math.factorial(r - 1))
    if rem:  # pragma: no cover - Stirling identity guarantees divisibility
        raise ArithmeticError(f"non-integral a({n}, {r})")
    return q


@dataclass(frozen=True)
class CoeffTable:
    """Triangular table a[n][r], 1 <= r <= n <= max_n (exact ints)."""

    max_n: int
    rows: tuple

    def __getitem__(self, key):
        n, r = key
        if not 1 <= n <= self.max_n:
            raise IndexError(f"row {n} outside 1..{self.max_n}")
        if r < 1:
            raise IndexError(f"column {r} < 1")
        if r > n:
            return 0
        return self.rows[n - 1][r - 1]

    def row(self, n):
        return list(self.rows[n - 1])

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "a"])
        for n, row in enumerate(self.rows, start=1):
            for r, a in enumerate(row, start=1):
                w.writerow([n, r, str(a)])
        return buf.getvalue()

    def to_json(self):
        # big ints are emitted as plain JSON integers (decimal digits)
        return json.dumps({"max_n": self.max_n, "rows": [list(r) for r in self.rows]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rows = tuple(tuple(int(v) for v in row) for row in data["rows"])
        return cls(int(data["max_n"]), rows)


def stirling_table(max_n):
    """Build a(n, r) for n <= max_n with a(m+1, r) = a(m, r-1) + r a(m, r)."""
    if not isinstance(max_n, int) or max_n < 1:
        raise ValueError(f"max_n must be a positive int, got {max_n!r}")
    rows = [(1,)]
    for m in range(1, max_n):
        prev = rows[-1]
        new = [1]
        for r in range(2, m + 2):
            left = prev[r - 2]
            here = prev[r - 1] if r <= m else 0
            new.append(left + r * here)
        rows.append(tuple(new))
    return CoeffTable(max_n, tuple(rows))


def egf_partial_sum(r, m, N):
    """sum_{n=1..N} a(n, r) m^n / n!, summed exactly and rounded once.

    The full series is (e^m - 1)^r / r!.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if N < r:
        raise ValueError(f"need N >= r (N={N}, r={r})")
    m = Fraction(m)
    if m == 0:
        return 0.0
    table = stirling_table(N)
    total = Fraction(0)
    mpow = Fraction(1)
    fact = 1
    for n in range(1, N + 1):
        mpow *= m
        fact *= n
        a = table[n, r]
        if a:
            total += a * mpow / fact
    return float(total)
