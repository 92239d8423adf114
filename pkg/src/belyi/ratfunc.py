"""Exact univariate polynomial and rational function arithmetic over Q.

Just enough machinery to compute ramification profiles of explicit rational
maps over the three fibers 0, 1, infinity and to verify them against
passports: dense polynomials with Fraction coefficients, gcd through a
primitive pseudo-remainder sequence over Z (content extracted at every step
so coefficients stay bounded), and Yun's squarefree decomposition for the
multiplicity structure — no root finding, no floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .passport import Passport


class Poly:
    """Dense polynomial over Q; trailing zeros stripped, () is the zero polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([Fraction(c)])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
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

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci:
                for j, cj in enumerate(b):
                    out[i + j] += ci * cj
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * x for x in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc()
        if len(rem) - 1 < d:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lc
            if c:
                quot[i - d] = c
                for j, cj in enumerate(other.coeffs):
                    rem[i - d + j] -= c * cj
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("non-exact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    def eval(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(c)
        return acc

    # -- integer normal form ------------------------------------------------

    def primitive_int(self) -> tuple:
        """(content, primitive integer Poly) with positive leading coefficient.

        self = content * primitive; content is a Fraction (0 for the zero poly).
        """
        if self.is_zero():
            return Fraction(0), Poly()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*(abs(v) for v in ints))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([v // g for v in ints])

    def __repr__(self) -> str:
        return "Poly(%s)" % (format_poly(self),)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the primitive PRS (coefficients stay integral and reduced)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    _, f = a.primitive_int()
    _, g = b.primitive_int()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero():
        # pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g stays integral
        k = f.degree - g.degree + 1
        _, r = f.scale(g.lc() ** k).divmod(g)
        f = g
        if r.is_zero():
            g = Poly()
        else:
            _, g = r.primitive_int()
    return f.monic()


def squarefree_decomposition(f: Poly) -> list:
    """Yun's algorithm: [(multiplicity, squarefree factor)] with factors monic,
    nonconstant, pairwise coprime; f = lc * prod factor^multiplicity."""
    if f.degree < 1:
        return []
    f = f.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((i, g))
        b2 = b // g
        c = d // g
        d = c - b2.derivative()
        b = b2
        i += 1
    return out


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            body = str(c)
        else:
            xpow = var if i == 1 else "%s^%d" % (var, i)
            if c == 1:
                body = xpow
            elif c == -1:
                body = "-" + xpow
            else:
                body = "%s*%s" % (c, xpow)
        terms.append(body)
    s = terms[0]
    for t in terms[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


class RatFunc:
    """A rational function num/den in lowest terms, den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly((1,))):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num = num // g
            den = den // g
        lc = den.lc()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @property
    def degree(self) -> int:
        """Degree as a map of the sphere: max of the two polynomial degrees."""
        return max(self.num.degree, self.den.degree)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __repr__(self) -> str:
        if self.den == Poly((1,)):
            return "RatFunc(%s)" % format_poly(self.num)
        return "RatFunc((%s)/(%s))" % (format_poly(self.num), format_poly(self.den))


def compose(f: RatFunc, g: RatFunc) -> RatFunc:
    """f after g, in lowest terms.  deg(f o g) = deg f * deg g for nonconstant f, g."""
    d = max(f.num.degree, f.den.degree)
    gd_pow = [Poly.const(1)]
    gn_pow = [Poly.const(1)]
    for _ in range(d):
        gd_pow.append(gd_pow[-1] * g.den)
        gn_pow.append(gn_pow[-1] * g.num)

    def lift(p: Poly) -> Poly:
        acc = Poly()
        for i, c in enumerate(p.coeffs):
            if c:
                acc = acc + (gn_pow[i] * gd_pow[d - i]).scale(c)
        return acc

    return RatFunc(lift(f.num), lift(f.den))


def identity_map() -> RatFunc:
    return RatFunc(Poly.x())


# ---------------------------------------------------------------------------
# Ramification profiles
# ---------------------------------------------------------------------------

def _fiber_poly(f: RatFunc, v: str) -> Poly:
    if v == "0":
        return f.num
    if v == "1":
        return f.num - f.den
    if v == "inf":
        return f.den
    raise ValueError(v)


def ramification_profile(f: RatFunc) -> Passport:
    """Multiplicities of the fibers over 0, 1 and infinity.

    Finite points come from the squarefree decomposition of num, num - den
    and den; the point x = infinity lies over whichever of the three fiber
    polynomials drops degree (if any) and contributes the degree drop as its
    multiplicity.  Each fiber sums to deg f.
    """
    if f.is_constant():
        raise ValueError("ramification profile needs a nonconstant function")
    d = f.degree
    cols = []
    for v in ("0", "1", "inf"):
        p = _fiber_poly(f, v)
        parts = []
        for mult, factor in squarefree_decomposition(p):
            parts.extend([mult] * factor.degree)
        if p.degree < d:
            # x = infinity lies over v (p.degree may be -1: constant fiber of x^n - style maps)
            parts.append(d - max(p.degree, 0) if p.is_zero() else d - p.degree)
        cols.append(parts)
    prof = Passport(*cols)
    assert prof.column_sums() == (d, d, d)
    return prof


class BelyiCheck:
    """Result of `is_belyi`: truthy iff unramified outside {0,1,inf}.

    When false, `offending_value` holds an exact stray critical value if one
    is rational, and `stray_critical_points` the monic polynomial whose roots
    are the stray critical points.
    """

    def __init__(self, ok: bool, offending_value=None, stray: Poly | None = None):
        self.ok = ok
        self.offending_value = offending_value
        self.stray_critical_points = stray

    def __bool__(self) -> bool:
        return self.ok


def _rational_roots(p: Poly) -> list:
    _, q = p.primitive_int()
    if q.degree < 1:
        return []
    a0 = int(q.coeffs[0])
    an = int(q.lc())
    if a0 == 0:
        return [Fraction(0)] + _rational_roots(q // Poly.x())
    roots = []
    for r in _divisors(abs(a0)):
        for s in _divisors(abs(an)):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if q.eval(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def is_belyi(f: RatFunc) -> BelyiCheck:
    """True iff every critical value of f lies in {0, 1, infinity}.

    Decided exactly: total branching over the three fibers must exhaust the
    Riemann-Hurwitz budget 2 deg f - 2.  On failure the finite stray critical
    points are the roots of the Wronskian numerator with all factors shared
    with the three fiber polynomials removed.
    """
    if f.is_constant():
        raise ValueError("is_belyi needs a nonconstant function")
    prof = ramification_profile(f)
    branching = sum(e - 1 for col in prof.as_lists() for e in col)
    if branching == 2 * f.degree - 2:
        return BelyiCheck(True)
    w = f.num.derivative() * f.den - f.num * f.den.derivative()
    for v in ("0", "1", "inf"):
        p = _fiber_poly(f, v)
        g = poly_gcd(w, p)
        while g.degree >= 1:
            w = w // g
            g = poly_gcd(w, p)
    w = w.monic()
    value = None
    for r in _rational_roots(w):
        value = f.num.eval(r) / f.den.eval(r)
        break
    return BelyiCheck(False, value, w)


def verify_against_passport(f: RatFunc, p: Passport) -> bool:
    """True iff f is Belyi and its three fibers realize p exactly."""
    chk = is_belyi(f)
    if not chk:
        raise ValueError("not a Belyi function; stray critical value %s"
                         % (chk.offending_value,))
    return ramification_profile(f) == p


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    """Recursive-descent parser for human-written rational expressions.

    Grammar: sums of products; products juxtapose factors with implicit
    multiplication, '*' and '/' (each '/' divides by the single following
    factor); factors take integer '^' powers; atoms are integers, 'x', and
    parenthesized expressions.
    """

    def __init__(self, text: str):
        self.s = text.replace("**", "^")
        self.i = 0

    def _skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def _peek(self):
        self._skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> RatFunc:
        v = self._expr()
        self._skip()
        if self.i != len(self.s):
            raise ValueError("trailing input at position %d: %r" % (self.i, self.s[self.i:]))
        return v

    def _expr(self) -> RatFunc:
        c = self._peek()
        neg = False
        if c in "+-":
            self.i += 1
            neg = c == "-"
        v = self._term()
        if neg:
            v = -v
        while True:
            c = self._peek()
            if c == "+":
                self.i += 1
                v = v + self._term()
            elif c == "-":
                self.i += 1
                v = v - self._term()
            else:
                return v

    def _term(self) -> RatFunc:
        v = self._factor()
        while True:
            c = self._peek()
            if c == "*":
                self.i += 1
                v = v * self._factor()
            elif c == "/":
                self.i += 1
                v = v / self._factor()
            elif c == "(" or c == "x" or c.isdigit():
                v = v * self._factor()
            else:
                return v

    def _factor(self) -> RatFunc:
        v = self._atom()
        if self._peek() == "^":
            self.i += 1
            sign = 1
            if self._peek() == "-":
                self.i += 1
                sign = -1
            k = self._int()
            v = v ** (sign * k)
        return v

    def _int(self) -> int:
        self._skip()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            raise ValueError("expected integer at position %d" % self.i)
        val = int(self.s[self.i:j])
        self.i = j
        return val

    def _atom(self) -> RatFunc:
        c = self._peek()
        if c == "(":
            self.i += 1
            v = self._expr()
            if self._peek() != ")":
                raise ValueError("unbalanced parenthesis at position %d" % self.i)
            self.i += 1
            return v
        if c == "x":
            self.i += 1
            return identity_map()
        if c.isdigit():
            return RatFunc(Poly.const(self._int()))
        if c == "-":
            self.i += 1
            return -self._factor()
        raise ValueError("unexpected character %r at position %d" % (c, self.i))


def parse_ratfunc(text: str) -> RatFunc:
    return _Parser(text).parse()


def format_ratfunc(f: RatFunc) -> str:
    """Printer in factored form where squarefree factors are available."""
    def factored(p: Poly) -> str:
        if p.degree < 1:
            return format_poly(p)
        dec = squarefree_decomposition(p)
        pieces = []
        lead = p.lc()
        for mult, fac in dec:
            body = "(%s)" % format_poly(fac)
            pieces.append(body if mult == 1 else "%s^%d" % (body, mult))
        head = "" if lead == 1 else ("-" if lead == -1 else "%s*" % lead)
        return head + "".join(pieces)

    if f.den == Poly((1,)):
        return factored(f.num)
    return "%s / (%s)" % (factored(f.num), factored(f.den))
