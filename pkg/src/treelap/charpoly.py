"""Exact characteristic polynomials of tree Laplacians.

The bottom-up vertex recurrence assigns each vertex the rational function
a(v) = x - d(v) - sum_c 1/a(c) over its children; the product of all a(v)
is det(xI - L).  It is implemented pole-free: writing a(v) = N_v / D_v with
D_v = prod_c N_c, the product telescopes to N_root, so no rational-function
division is ever performed and eigenvalue arguments cause no zero
denominators.

Coefficients are arbitrary-precision integers throughout (the Laplacian
characteristic polynomial of a forest is monic and integral).  Closed forms
for the three special diameter-4 families are provided alongside, plus
Sturm-sequence root counting and squarefree decomposition for locating
roots exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import BadParam
from .tree import Tree


class Poly:
    """Dense univariate polynomial, coefficients ascending by degree.

    Immutable; trailing zeros are stripped (the zero polynomial has no
    coefficients and degree -1).  Coefficients may be ints or Fractions;
    everything produced by char_poly is integer.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise BadParam("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise BadParam("negative polynomial power")
        result = Poly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Exact Horner evaluation; Fraction in, Fraction out."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


X = Poly((0, 1))
ONE = Poly((1,))


def eval_poly(p: Poly, x) -> Fraction:
    return Fraction(p(Fraction(x)))


@dataclass(frozen=True)
class RationalFn:
    """The per-vertex rational function a(v) = numerator / denominator,
    where the denominator is the product of the children's numerators."""

    numerator: Poly
    denominator: Poly


def rational_functions(tree: Tree, root: int | None = None) -> tuple[RationalFn, ...]:
    """All a(v) from the bottom-up recurrence, indexed by vertex."""
    if root is None:
        root = tree.centroids()[0]
    order, _, kids = tree.rooted(root)
    N: list[Poly | None] = [None] * tree.n
    D: list[Poly | None] = [None] * tree.n
    for v in order:
        nprod = ONE
        s = Poly()
        for c in kids[v]:
            s = s * N[c] + D[c] * nprod
            nprod = nprod * N[c]
        N[v] = Poly((-tree.degrees[v], 1)) * nprod - s
        D[v] = nprod
    return tuple(RationalFn(N[v], D[v]) for v in range(tree.n))


def char_poly(tree: Tree) -> Poly:
    """det(xI - L(T)) exactly: monic, degree n, constant term 0."""
    if tree.n == 1:
        return X
    fns = rational_functions(tree)
    # product of all a(v) telescopes to the root numerator
    root = tree.centroids()[0]
    return fns[root].numerator


def char_poly_forest(trees: Sequence[Tree]) -> Poly:
    """Characteristic polynomial of a disjoint union of trees."""
    out = ONE
    for t in trees:
        out = out * char_poly(t)
    return out


# ---- closed forms for the diameter-4 families ------------------------------


def closed_form_t4(a: int, b: int) -> Poly:
    """x (x^2 - 3x + 1)^(a+b-1) (x^2 - (a+b+3)x + 2a+2b+1), expanded."""
    if a + b < 2:
        raise BadParam(f"closed_form_t4 needs a + b >= 2, got ({a}, {b})")
    k = a + b
    return X * Poly((1, -3, 1)) ** (k - 1) * Poly((2 * k + 1, -(k + 3), 1))


def tprime_quartic(r: int, s1: int) -> Poly:
    if r < 2 or s1 < 2:
        raise BadParam(f"tprime_quartic needs r >= 2, s1 >= 2, got ({r}, {s1})")
    return Poly(
        (
            s1 + 2 * r,
            -(2 * s1 * r + 5 * r + 2 * s1 + 4),
            s1 * r + 4 * r + 3 * s1 + 8,
            -(r + s1 + 5),
            1,
        )
    )


def closed_form_tprime(r: int, s1: int) -> Poly:
    """x (x-1)^(s1-1) (x^2 - 3x + 1)^(r-2) * quartic(r, s1), expanded."""
    return X * Poly((-1, 1)) ** (s1 - 1) * Poly((1, -3, 1)) ** (r - 2) * tprime_quartic(r, s1)


def tdprime_sextic(r: int, s1: int, s2: int) -> Poly:
    """The degree-6 factor of the T'' characteristic polynomial.

    All signs alternate (every root is real and positive); in particular the
    linear coefficient is -a4, with a4 = 2rs1 + 2s1s2 + 2rs2 + 3s1 + 3s2 + 9r + 1.
    """
    if r < 3 or s1 < 2 or s2 < 2:
        raise BadParam(f"tdprime_sextic needs r >= 3, s1, s2 >= 2, got ({r}, {s1}, {s2})")
    a1 = r * s1 + r * s2 + s1 * s2 + 5 * s1 + 6 * r + 5 * s2 + 19
    a2 = r * s1 * s2 + 4 * r * s1 + 3 * s1 * s2 + 4 * r * s2 + 9 * s1 + 9 * s2 + 14 * r + 24
    a3 = 2 * r * s1 * s2 + 5 * r * s1 + 3 * s1 * s2 + 5 * r * s2 + 7 * s1 + 7 * s2 + 16 * r + 13
    a4 = 2 * r * s1 + 2 * s1 * s2 + 2 * r * s2 + 3 * s1 + 3 * s2 + 9 * r + 1
    return Poly(
        (
            s1 + s2 + 2 * r - 1,
            -a4,
            a3,
            -a2,
            a1,
            -(r + s1 + s2 + 7),
            1,
        )
    )


def closed_form_tdprime(r: int, s1: int, s2: int) -> Poly:
    """x (x-1)^(s1+s2-2) (x^2 - 3x + 1)^(r-3) * sextic(r, s1, s2), expanded."""
    return (
        X
        * Poly((-1, 1)) ** (s1 + s2 - 2)
        * Poly((1, -3, 1)) ** (r - 3)
        * tdprime_sextic(r, s1, s2)
    )


# ---- exact root location ----------------------------------------------------


def _content(p: Poly) -> Fraction:
    """Positive rational c with p/c primitive integer, matching p's lead sign."""
    num_gcd = 0
    den_lcm = 1
    for c in p.coeffs:
        f = Fraction(c)
        num_gcd = gcd(num_gcd, abs(f.numerator))
        den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
    if num_gcd == 0:
        return Fraction(1)
    return Fraction(num_gcd, den_lcm)


def primitive(p: Poly) -> Poly:
    """Integer polynomial with coprime coefficients and positive leading term."""
    if p.is_zero():
        return p
    c = _content(p)
    if p.leading < 0:
        c = -c
    return Poly([Fraction(x) / c for x in p.coeffs])


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Exact (quotient, remainder) over the rationals; b must be nonzero."""
    if b.is_zero():
        raise BadParam("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    bl = Fraction(b.leading)
    bdeg = b.degree
    quo = [Fraction(0)] * max(len(rem) - bdeg, 0)
    while len(rem) - 1 >= bdeg and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < bdeg:
            break
        shift = len(rem) - 1 - bdeg
        q = rem[-1] / bl
        quo[shift] = q
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= q * c
        rem.pop()
    return Poly(quo), Poly(rem)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive positive-leading gcd over the rationals."""
    a, b = primitive(a), primitive(b)
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, primitive(r)
    if a.is_zero():
        return a
    return a


def squarefree_part(p: Poly) -> Poly:
    """p with all root multiplicities reduced to one (primitive, lead > 0)."""
    if p.is_zero():
        raise BadParam("zero polynomial has no squarefree part")
    if p.degree == 0:
        return ONE
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return primitive(p)
    q, r = poly_divmod(p, g)
    assert r.is_zero()
    return primitive(q)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: [(q_i, i)] with p = lc * prod q_i^i, q_i squarefree,
    pairwise coprime, primitive, positive-leading; factors with q_i = 1 omitted."""
    if p.is_zero():
        raise BadParam("zero polynomial has no squarefree decomposition")
    p = primitive(p)
    if p.degree == 0:
        return []
    out = []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    b, rb = poly_divmod(p, g)
    c, rc = poly_divmod(p.derivative(), g)
    assert rb.is_zero() and rc.is_zero()
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
            b, _ = poly_divmod(b, a)
            c, _ = poly_divmod(d, a)
        else:
            c = d
        b = primitive(b)
        d = c - b.derivative()
        i += 1
    return out


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, primitive(p.derivative())]
    while chain[-1].degree > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(primitive(-r))
    return [q for q in chain if not q.is_zero()]


def _sign_variations(chain: Sequence[Poly], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sign_changes_sturm(p: Poly, lo, hi) -> int:
    """Exact count of distinct real roots of p in the half-open interval (lo, hi].

    The chain is built on the squarefree part, so multiple roots are counted
    once.  Standard Sturm convention: dropping zero entries from the sign
    sequences makes the count inclusive at hi and exclusive at lo.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo >= hi:
        raise BadParam(f"need lo < hi, got {lo} >= {hi}")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    chain = _sturm_chain(sf)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def root_count_with_multiplicity(p: Poly, lo, hi) -> int:
    """Number of real roots of p in (lo, hi], multiplicities counted."""
    total = 0
    for q, mult in squarefree_decomposition(p):
        if q.degree > 0:
            total += mult * sign_changes_sturm(q, lo, hi)
    return total
