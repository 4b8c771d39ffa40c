"""Printed values that this package overrides, with the check that decides each.

``verify`` attaches the entry id to any record whose expected value comes
from here rather than from the printed form.
"""
from dataclasses import asdict, dataclass

ERRATA_VERSION = "1"


@dataclass(frozen=True)
class Erratum:
    id: str
    quantity: str
    printed: str
    used: str
    decided_by: str


ERRATA = {
    e.id: e
    for e in [
        Erratum("E1", "a(6,4), coefficient of m^6/6! Q^4 D^4 in exp(mQD)",
                "146", "65",
                "closed form and row recursion agree; brute-force normal ordering of (QD)^6"),
        Erratum("E2", "exponent in the disk map B for alpha = -1/2",
                "((1-w)/i)^(-5/2)", "((1-w)/i)^(-3/2)",
                "B must invert S, whose factor is (z+i)^(-3/2); checked by S(B f) = f"),
        Erratum("E3", "hypergeometric label of the alpha = -1/2 disk kernel",
                "2F1(5/2, 1; 1; x)", "2F1(3/2, 1; 1; x) = (1-x)^(-3/2)",
                "series/closed-form agreement of the kernel"),
        Erratum("E4", "odd block of the QP equivalent",
                "2 d/dz + 2", "2 z d/dz + 2",
                "intertwining check on the odd channel"),
        Erratum("E5", "overall factor of the QP equivalent",
                "-i (2 z d/dz + c)", "+i (2 z d/dz + c)",
                "A(QP psi) against the differential operator on A psi"),
        Erratum("E6", "L^2 operator matching multiplication by z",
                "(Q^-1 P + P Q^-1)/2 + c i Q^-2/2",
                "-(Q^-1 P + P Q^-1)/2 + c i Q^-2/2",
                "z (A psi)(z) against A(T psi)(z) for each candidate sign"),
        Erratum("E7", "measure in the alpha = -1/2 disk reproducing identity",
                "d nu_(1/2)", "d nu_(-1/2)",
                "reproducing check on monomials"),
    ]
}


def as_records():
    return [asdict(e) for e in ERRATA.values()]


def render_text():
    lines = [f"errata v{ERRATA_VERSION}"]
    for e in ERRATA.values():
        lines.append(f"{e.id}: {e.quantity}")
        lines.append(f"    printed: {e.printed}")
        lines.append(f"    used:    {e.used}   ({e.decided_by})")
    return "\n".join(lines)
