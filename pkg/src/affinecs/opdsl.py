"""A small text language for operator polynomials in Q, D and P.

Grammar (whitespace-insensitive)::

    expr    = term { ("+" | "-") term } ;
    term    = [ "-" ] factor { factor } ;          (* juxtaposition = product *)
    factor  = atom [ "^" [ "-" ] INT ] ;
    atom    = INT [ "/" INT ] | "i" | "Q" | "D" | "P" | "(" expr ")" ;

``^`` binds tighter than juxtaposition, which binds tighter than ``+``/``-``.
Products keep their order.  ``P`` is lowered to ``-i D``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from affinecs.opcore import GaussianRational, NormalForm, OperatorPolynomial

__all__ = [
    "DSLError",
    "Scalar", "Gen", "Product", "Sum", "Neg", "Power",
    "parse", "lower", "print_normal_form", "parse_normal_form",
]

MAX_LITERAL_DIGITS = 100
MAX_EXPONENT = 256
MAX_DEPTH = 200
MAX_TERMS = 50_000


class DSLError(ValueError):
    """Parse or lowering failure, carrying a byte offset into the source."""

    def __init__(self, message, src="", offset=0, expected=()):
        self.message = message
        self.src = src
        self.offset = offset
        self.expected = tuple(sorted(expected))
        super().__init__(self.render())

    @property
    def line_col(self):
        head = self.src[: self.offset]
        line = head.count("\n") + 1
        col = self.offset - (head.rfind("\n") + 1) + 1
        return line, col

    def render(self):
        line, col = self.line_col
        msg = self.message
        if self.expected:
            msg += " (expected one of: " + ", ".join(self.expected) + ")"
        return f"{line}:{col}: {msg}"


# --- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Gen:
    name: str  # "Q", "D" or "P"


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node), sign in {+1, -1}


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    offset: int = field(default=0, compare=False)   # source offset of the exponent


# --- tokenizer -----------------------------------------------------------

_PUNCT = set("+-^()/")


def _tokenize(src):
    toks = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch in "0123456789":
            j = i
            while j < n and src[j] in "0123456789":
                j += 1
            if j - i > MAX_LITERAL_DIGITS:
                raise DSLError(f"integer literal longer than {MAX_LITERAL_DIGITS} digits",
                               src, i)
            toks.append(("INT", src[i:j], i))
            i = j
        elif ch in "QDPi":
            toks.append((ch, ch, i))
            i += 1
        elif ch in _PUNCT:
            toks.append((ch, ch, i))
            i += 1
        else:
            raise DSLError(f"unexpected character {ch!r}", src, i)
    toks.append(("EOF", "", n))
    return toks


_ATOM_START = {"INT", "i", "Q", "D", "P", "("}


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.pos = 0
        self.depth = 0

    @property
    def kind(self):
        return self.toks[self.pos][0]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, expected=()):
        raise DSLError(message, self.src, self.toks[self.pos][2], expected)

    def expect(self, kind):
        if self.kind != kind:
            found = self.kind if self.kind != "EOF" else "end of input"
            self.fail(f"unexpected {found}", {kind})
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.kind != "EOF":
            self.fail(f"unexpected {self.kind}", {"+", "-", "end of input"} | _ATOM_START)
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.kind in ("+", "-"):
            sign = 1 if self.advance()[0] == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        negate = False
        if self.kind == "-":
            self.advance()
            negate = True
        if self.kind not in _ATOM_START:
            found = self.kind if self.kind != "EOF" else "end of input"
            self.fail(f"unexpected {found}", _ATOM_START)
        factors = [self.factor()]
        while self.kind in _ATOM_START:
            factors.append(self.factor())
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        return Neg(node) if negate else node

    def factor(self):
        base = self.atom()
        if self.kind == "^":
            self.advance()
            neg = False
            if self.kind == "-":
                self.advance()
                neg = True
            _, text, off = self.expect("INT")
            k = int(text)
            if k > MAX_EXPONENT:
                raise DSLError(f"exponent {k} exceeds limit {MAX_EXPONENT}", self.src, off)
            return Power(base, -k if neg else k, off)
        return base

    def atom(self):
        kind, text, off = self.advance()
        if kind == "INT":
            num = int(text)
            if self.kind == "/":
                self.advance()
                _, dtext, doff = self.expect("INT")
                den = int(dtext)
                if den == 0:
                    raise DSLError("zero denominator", self.src, doff)
                return Scalar(GaussianRational(Fraction(num, den)))
            return Scalar(GaussianRational(num))
        if kind == "i":
            return Scalar(GaussianRational.I)
        if kind in ("Q", "D", "P"):
            return Gen(kind)
        if kind == "(":
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise DSLError(f"parentheses nested deeper than {MAX_DEPTH}", self.src, off)
            node = self.expr()
            self.expect(")")
            self.depth -= 1
            return node
        self.pos -= 1
        found = kind if kind != "EOF" else "end of input"
        self.fail(f"unexpected {found}", _ATOM_START)


def parse(src):
    """Parse text into an :class:`OpExpr` tree; raises :class:`DSLError`."""
    if isinstance(src, bytes):
        try:
            src = src.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DSLError("input is not valid UTF-8", "", exc.start) from None
    return _Parser(src).parse()


_P_AS_D = OperatorPolynomial({"D": GaussianRational(0, -1)})


def _mul(a, b, src):
    # bound checked before expanding: the product has at most |a| |b| words
    if len(a.terms) * len(b.terms) > MAX_TERMS:
        raise DSLError(f"expansion would exceed {MAX_TERMS} words", src)
    return a * b


def lower(node, src=""):
    """Expand an expression tree into an :class:`OperatorPolynomial`.

    ``src`` is only used to locate errors.
    """
    if isinstance(node, Scalar):
        return OperatorPolynomial({"": node.value})
    if isinstance(node, Gen):
        if node.name == "P":
            return _P_AS_D
        return OperatorPolynomial.word(node.name)
    if isinstance(node, Product):
        out = OperatorPolynomial.identity()
        for f in node.factors:
            out = _mul(out, lower(f, src), src)
        return out
    if isinstance(node, Sum):
        out = OperatorPolynomial()
        for sign, t in node.terms:
            part = lower(t, src)
            out = out + part if sign > 0 else out - part
        return out
    if isinstance(node, Neg):
        return -lower(node.operand, src)
    if isinstance(node, Power):
        if node.exponent < 0:
            raise DSLError(f"negative power {node.exponent} is not supported", src, node.offset)
        base = lower(node.base, src)
        out = OperatorPolynomial.identity()
        for _ in range(node.exponent):
            out = _mul(out, base, src)
        return out
    raise TypeError(f"not an operator expression node: {node!r}")


def _fmt_rational(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial(a, b):
    parts = []
    if a:
        parts.append(f"Q^{a}")
    if b:
        parts.append(f"D^{b}")
    return " ".join(parts)


def print_normal_form(nf):
    """Render a normal form; ``parse`` + ``lower`` + ``normal_order`` inverts it."""
    if not nf.terms:
        return "0"
    out = []
    for (a, b), c in nf.items():
        mono = _monomial(a, b)
        if c.im == 0:
            sign = "-" if c.re < 0 else "+"
            mag = abs(c.re)
            coef = "" if (mag == 1 and mono) else _fmt_rational(mag)
        elif c.re == 0:
            sign = "-" if c.im < 0 else "+"
            mag = abs(c.im)
            coef = "i" if mag == 1 else f"{_fmt_rational(mag)} i"
        else:
            sign = "+"
            isign = "-" if c.im < 0 else "+"
            imag = abs(c.im)
            ipart = "i" if imag == 1 else f"{_fmt_rational(imag)} i"
            coef = f"({_fmt_rational(c.re)} {isign} {ipart})"
        body = " ".join(x for x in (coef, mono) if x)
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def parse_normal_form(src):
    """Convenience: text -> normal form."""
    from affinecs.opcore import normal_order

    return normal_order(lower(parse(src), src if isinstance(src, str) else ""))
