"""Branching passports and degree checking.

A passport (the bracket "list" notation ``[1^2 2^10, 3^5 7^1, 2^1 4^5]``)
records the three cycle-type multisets of a triple over 0, 1, infinity.
`derive_tables` turns exact local-exponent data of the algebraic equations
into the complete finite set of feasible branching tables for a pullback to
one of the four finite-monodromy hypergeometric targets, and the residue
tables (`allowed_n` / `check_n`) encode which parameter classes each finite
group type permits.

Everything here is exact rational arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

PointLabel = str  # one of "e1", "e2", "e3", "wpa", "inf"
Target = str      # one of "0", "1", "inf"

TARGETS: tuple = ("0", "1", "inf")
E_POINTS: tuple = ("e1", "e2", "e3")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected exact rational, got %r" % (x,))


# ---------------------------------------------------------------------------
# Passports
# ---------------------------------------------------------------------------

class Passport:
    """Three cycle-type multisets over 0, 1, infinity with equal sums."""

    __slots__ = ("over0", "over1", "over_inf")

    def __init__(self, over0: Iterable[int], over1: Iterable[int], over_inf: Iterable[int]):
        self.over0 = tuple(sorted(over0))
        self.over1 = tuple(sorted(over1))
        self.over_inf = tuple(sorted(over_inf))
        for part in self.over0 + self.over1 + self.over_inf:
            if part < 1:
                raise ValueError("cycle lengths must be positive")

    @property
    def degree(self) -> int:
        return sum(self.over0)

    def column_sums(self) -> tuple:
        return (sum(self.over0), sum(self.over1), sum(self.over_inf))

    def is_consistent(self) -> bool:
        s = self.column_sums()
        return s[0] == s[1] == s[2]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Passport)
                and self.over0 == other.over0
                and self.over1 == other.over1
                and self.over_inf == other.over_inf)

    def __hash__(self) -> int:
        return hash((self.over0, self.over1, self.over_inf))

    def __repr__(self) -> str:
        return "Passport(%r)" % (format_passport(self),)

    def as_lists(self) -> list:
        return [list(self.over0), list(self.over1), list(self.over_inf)]


def _format_part(parts: Sequence[int]) -> str:
    from collections import Counter
    c = Counter(parts)
    return " ".join("%d^%d" % (a, c[a]) for a in sorted(c))


def format_passport(p: Passport) -> str:
    """Bracket notation, exponents always explicit: ``[1^2 2^4, 3^2 4^1, 2^1 4^2]``."""
    return "[%s, %s, %s]" % (_format_part(p.over0), _format_part(p.over1), _format_part(p.over_inf))


def parse_passport(text: str) -> Passport:
    """Parse bracket notation; bare parts mean exponent 1 (``[1,1,1]`` is legal)."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError("passport must be bracketed: %r" % text)
    groups = s[1:-1].split(",")
    if len(groups) != 3:
        raise ValueError("passport needs exactly 3 comma-separated groups")
    cols = []
    for g in groups:
        parts = []
        for tok in g.split():
            if "^" in tok:
                a, m = tok.split("^", 1)
                base, mult = int(a), int(m)
            else:
                base, mult = int(tok), 1
            if base < 1 or mult < 0:
                raise ValueError("bad passport token %r" % tok)
            parts.extend([base] * mult)
        cols.append(parts)
    p = Passport(*cols)
    if not p.is_consistent():
        raise ValueError("column sums differ: %s" % (p.column_sums(),))
    return p


def hurwitz_defect(p: Passport) -> int:
    """2N-2 minus the total branching; zero iff the triple lives on the sphere."""
    if not p.is_consistent():
        raise ValueError("column sums differ: %s" % (p.column_sums(),))
    n = p.degree
    branching = sum(e - 1 for e in p.over0 + p.over1 + p.over_inf)
    return 2 * n - 2 - branching


# ---------------------------------------------------------------------------
# Local exponent profiles
# ---------------------------------------------------------------------------

KINDS = ("lame", "gen2", "gen3")


def normalize_n(n) -> Fraction:
    """Fold n into n >= -1/2 using the n <-> -n-1 symmetry of the equations."""
    n = _as_fraction(n)
    return n if n >= Fraction(-1, 2) else -n - 1


@dataclass(frozen=True)
class ExponentProfile:
    """Exponent differences at the regular singular points.

    Labels: e1, e2, e3 always carry 1/2; wpa (present for gen2/gen3) carries
    2*n1 + 1; inf carries n0 + 1/2 (which is 1/2 itself for gen2).
    """
    kind: str
    diffs: tuple  # ((label, Fraction), ...)

    def diff(self, label: str) -> Fraction:
        for lab, d in self.diffs:
            if lab == label:
                return d
        raise KeyError(label)

    def labels(self) -> tuple:
        return tuple(lab for lab, _ in self.diffs)


def exponent_profile(kind: str, n0=None, n1=None) -> ExponentProfile:
    """Labeled exponent differences for one of the three equation shapes.

    lame: (e1,e2,e3,inf), needs n0.   gen2: adds wpa, needs n1 only.
    gen3: (e1,e2,e3,wpa,inf), needs both.  All n must already be normalized
    (n >= -1/2) and give strictly positive differences.
    """
    if kind not in KINDS:
        raise ValueError("unknown kind %r" % kind)
    half = Fraction(1, 2)

    def _chk(n, name):
        n = _as_fraction(n)
        if n < Fraction(-1, 2):
            raise ValueError("%s=%s not normalized; apply normalize_n first" % (name, n))
        return n

    diffs = [("e1", half), ("e2", half), ("e3", half)]
    if kind == "lame":
        if n0 is None or n1 is not None:
            raise ValueError("lame takes n0 only")
        n0 = _chk(n0, "n0")
        diffs.append(("inf", n0 + half))
    elif kind == "gen2":
        if n1 is None or n0 is not None:
            raise ValueError("gen2 takes n1 only")
        n1 = _chk(n1, "n1")
        diffs.append(("wpa", 2 * n1 + 1))
        diffs.append(("inf", half))
    else:
        if n0 is None or n1 is None:
            raise ValueError("gen3 takes both n0 and n1")
        n0, n1 = _chk(n0, "n0"), _chk(n1, "n1")
        diffs.append(("wpa", 2 * n1 + 1))
        diffs.append(("inf", n0 + half))
    for lab, d in diffs:
        if d <= 0:
            raise ValueError("nonpositive exponent difference %s at %s" % (d, lab))
    return ExponentProfile(kind, tuple(diffs))


# ---------------------------------------------------------------------------
# Hypergeometric targets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchwarzTarget:
    """A finite-monodromy hypergeometric target: exponent differences at (0,1,inf)."""
    label: str
    diffs: tuple  # (Fraction, Fraction, Fraction) at 0, 1, inf

    def diff(self, t: Target) -> Fraction:
        return self.diffs[TARGETS.index(t)]

    def free_ram(self, t: Target) -> int:
        """Ramification of an unbranched point over t: the denominator of the difference."""
        return self.diff(t).denominator


def schwarz_target(label: str, n: int | None = None) -> SchwarzTarget:
    """Rows of the basic list: Dn (needs n >= 2), A4, S4, A5."""
    lab = label.strip()
    if lab.upper().startswith("D"):
        if n is None:
            body = lab[1:]
            if not body.isdigit():
                raise ValueError("dihedral target needs its index, e.g. D5")
            n = int(body)
        if n < 2:
            raise ValueError("dihedral index must be >= 2")
        return SchwarzTarget("D%d" % n, (Fraction(1, 2), Fraction(1, 2), Fraction(1, n)))
    table = {
        "A4": (Fraction(1, 2), Fraction(1, 3), Fraction(1, 3)),
        "S4": (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)),
        "A5": (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)),
    }
    key = lab.upper()
    if key not in table:
        raise ValueError("unknown target %r" % label)
    return SchwarzTarget(key, table[key])


# ---------------------------------------------------------------------------
# Branching tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamTable:
    """A feasible branching table for a genus-0 pullback.

    assignment maps each singular point to (target, ramification index);
    free holds the counts of unbranched points (ram = target denominator)
    over 0, 1, inf.
    """
    degree: int
    assignment: tuple  # ((label, target, e), ...) in profile label order
    free: tuple        # (k0, k1, kinf)
    target: SchwarzTarget

    def passport(self) -> Passport:
        cols = {t: [] for t in TARGETS}
        for _, t, e in self.assignment:
            cols[t].append(e)
        for t, k in zip(TARGETS, self.free):
            cols[t].extend([self.target.free_ram(t)] * k)
        return Passport(cols["0"], cols["1"], cols["inf"])

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "assignment": {lab: [t, e] for lab, t, e in self.assignment},
            "free": {"0": self.free[0], "1": self.free[1], "inf": self.free[2]},
        }


def derive_tables(profile: ExponentProfile, target: SchwarzTarget) -> list:
    """All branching tables compatible with the profile, the target, and genus 0.

    For each way of sending the singular points to {0,1,inf} with integer
    ramification e = diff / target_diff, the free-point counts are forced by
    the column sums together with the genus-0 point count N + 2; a table is
    kept when that linear system has a nonnegative integral solution.
    Tables differing only by permuting singular points of equal exponent
    difference (e1,e2,e3 always; also inf when its difference is 1/2) are
    emitted once, keeping the first representative in target order 0,1,inf.
    Output is sorted by (degree, assignment).
    """
    labels = profile.labels()
    # Integer ram options per singular point and target.
    options = []
    for lab in labels:
        d = profile.diff(lab)
        opts = []
        for t in TARGETS:
            e = d / target.diff(t)
            if e.denominator == 1 and e >= 1:
                opts.append((t, int(e)))
        if not opts:
            return []
        options.append(opts)

    results = []
    seen_keys = set()

    def _solve(choice):
        s = {t: 0 for t in TARGETS}
        c = {t: 0 for t in TARGETS}
        for (lab, (t, e)) in zip(labels, choice):
            s[t] += e
            c[t] += 1
        # N/m0 + N/m1 + N/minf - N = 2 - #singular + sum(S_t/m_t)
        lhs = sum(Fraction(1, target.free_ram(t)) for t in TARGETS) - 1
        rhs = 2 - len(labels) + sum(Fraction(s[t], target.free_ram(t)) for t in TARGETS)
        if lhs <= 0:
            return None
        n = rhs / lhs
        if n.denominator != 1 or n < 1:
            return None
        n = int(n)
        free = []
        for t in TARGETS:
            k, r = divmod(n - s[t], target.free_ram(t))
            if r != 0 or k < 0:
                return None
            free.append(k)
        return n, tuple(free)

    import itertools
    for choice in itertools.product(*options):
        # Same-difference singular points are interchangeable: one table each.
        key = tuple(sorted(
            (profile.diff(lab), ch) for lab, ch in zip(labels, choice)
        ))
        if key in seen_keys:
            continue
        seen_keys.add(key)
        solved = _solve(choice)
        if solved is None:
            continue
        n, free = solved
        assignment = tuple((lab, t, e) for lab, (t, e) in zip(labels, choice))
        table = RamTable(n, assignment, free, target)
        pp = table.passport()
        assert pp.is_consistent() and hurwitz_defect(pp) == 0
        results.append(table)

    results.sort(key=lambda t: (t.degree, t.assignment))
    return results


# ---------------------------------------------------------------------------
# Residue tables
# ---------------------------------------------------------------------------

class ResidueClassSet:
    """A finite union of shifted classes {a + q*Z} minus an excluded such union.

    Membership is decided exactly on Fractions.  ``lattice(1/q)`` gives the
    full lattice Z/q = {0, 1/q, 2/q, ...}.
    """

    def __init__(self, classes: Iterable[tuple], excluded: Iterable[tuple] = ()):
        # each class is (offset: Fraction, modulus: Fraction)
        self.classes = tuple((_as_fraction(a), _as_fraction(q)) for a, q in classes)
        self.excluded = tuple((_as_fraction(a), _as_fraction(q)) for a, q in excluded)

    @staticmethod
    def shifts(offsets: Iterable, modulus=1) -> "ResidueClassSet":
        """Union of {a + modulus*Z} over the offsets, with +/- both included when asked."""
        return ResidueClassSet([(a, modulus) for a in offsets])

    @staticmethod
    def pm_shifts(offsets: Iterable) -> "ResidueClassSet":
        """{+-a1, +-a2, ...} + Z."""
        offs = []
        for a in offsets:
            a = _as_fraction(a)
            offs.extend([a, -a])
        return ResidueClassSet([(a, 1) for a in offs])

    @staticmethod
    def lattice(step) -> "ResidueClassSet":
        """The lattice step*Z (e.g. lattice(1/6) is Z/6)."""
        return ResidueClassSet([(0, step)])

    def union(self, other: "ResidueClassSet") -> "ResidueClassSet":
        return ResidueClassSet(self.classes + other.classes, self.excluded + other.excluded)

    def minus(self, other: "ResidueClassSet") -> "ResidueClassSet":
        if other.excluded:
            raise ValueError("cannot subtract a set that itself has exclusions")
        return ResidueClassSet(self.classes, self.excluded + other.classes)

    @staticmethod
    def _in_class(x: Fraction, a: Fraction, q: Fraction) -> bool:
        return ((x - a) / q).denominator == 1

    def __contains__(self, x) -> bool:
        x = _as_fraction(x)
        if any(self._in_class(x, a, q) for a, q in self.excluded):
            return False
        return any(self._in_class(x, a, q) for a, q in self.classes)

    def describe(self) -> str:
        def one(a, q):
            if a == 0:
                return "Z" if q == 1 else "Z*%s" % q
            return "{%s}+Z" % a if q == 1 else "{%s}+Z*%s" % (a, q)
        body = " u ".join(one(a, q) for a, q in self.classes)
        if self.excluded:
            body += " \\ (" + " u ".join(one(a, q) for a, q in self.excluded) + ")"
        return body


F = Fraction

# Parameter classes permitted for each finite group type, per equation shape.
# The classes are symmetric under n <-> -n-1, so membership may be tested on
# the normalized representative.
_RESIDUES_LAME = {
    "G(N,N/2,2)": ResidueClassSet.shifts([F(1, 2)]),
    "G(N,N,2)": ResidueClassSet.lattice(1),
    "G12": ResidueClassSet.pm_shifts([F(1, 4)]),
    "G13": ResidueClassSet.pm_shifts([F(1, 6)]),
    "G22": ResidueClassSet.pm_shifts([F(1, 10), F(3, 10), F(1, 6)]),
}

_RESIDUES_GEN2 = {
    "G(N,N/2,2)": ResidueClassSet.pm_shifts([F(1, 4)]),
    "G12": ResidueClassSet.pm_shifts([F(1, 6), F(1, 4), F(1, 3)]),
    "G13": ResidueClassSet.pm_shifts([F(1, 8), F(3, 8), F(1, 6), F(1, 4), F(1, 3)]),
    "G22": (ResidueClassSet.lattice(F(1, 6))
            .union(ResidueClassSet.lattice(F(1, 10)))
            .minus(ResidueClassSet.lattice(F(1, 2)))),
}

# gen3 constrains the projective group through the pair (n0, n1).
_GEN3_N0 = {
    "A4": None,  # handled by the congruence rule below
    "S4": (ResidueClassSet.lattice(F(1, 4)).union(ResidueClassSet.lattice(F(1, 6)))
           .minus(ResidueClassSet.lattice(F(1, 3)))),
    "A5": (ResidueClassSet.lattice(F(1, 6)).union(ResidueClassSet.lattice(F(1, 10)))
           .minus(ResidueClassSet.lattice(F(1, 3)).union(ResidueClassSet.lattice(F(1, 5))))),
}
_GEN3_N1 = {
    "S4": ResidueClassSet.lattice(F(1, 8)).union(ResidueClassSet.lattice(F(1, 6))),
    "A5": (ResidueClassSet.lattice(F(1, 4)).union(ResidueClassSet.lattice(F(1, 6)))
           .union(ResidueClassSet.lattice(F(1, 10)))),
}

GROUPS_LAME = tuple(_RESIDUES_LAME)
GROUPS_GEN2 = tuple(_RESIDUES_GEN2)
GROUPS_GEN3 = ("A4", "S4", "A5")


def allowed_n(group: str, kind: str):
    """The residue-class data for (group, kind).

    For lame/gen2 this is a ResidueClassSet over one parameter.  For gen3 the
    condition couples (n0, n1); use `check_n`, which implements it exactly.
    """
    if kind == "lame":
        if group not in _RESIDUES_LAME:
            raise ValueError("unknown group %r for kind lame" % group)
        return _RESIDUES_LAME[group]
    if kind == "gen2":
        if group not in _RESIDUES_GEN2:
            raise ValueError("unknown group %r for kind gen2" % group)
        return _RESIDUES_GEN2[group]
    if kind == "gen3":
        if group not in GROUPS_GEN3:
            raise ValueError("unknown group %r for kind gen3" % group)
        return (_GEN3_N0[group], _GEN3_N1.get(group))
    raise ValueError("unknown kind %r" % kind)


def _check_a4_pair(n0: Fraction, n1: Fraction) -> bool:
    # n0 = (1+2k)/6 and n1 = l/6 with k = 0,2 (mod 3), k+l >= 4, k+l = 1 (mod 3).
    k2 = 6 * n0 - 1
    if k2.denominator != 1 or int(k2) % 2 != 0:
        return False
    k = int(k2) // 2
    l6 = 6 * n1
    if l6.denominator != 1:
        return False
    l = int(l6)
    if k % 3 == 1:
        return False
    if k + l < 4:
        return False
    return (k + l) % 3 == 1


def check_n(group: str, kind: str, *ns) -> bool:
    """Exact membership decision for the residue-class tables.

    lame/gen2 take one parameter n; gen3 takes (n0, n1).  Parameters are
    normalized first (n <-> -n-1); the tables' floor conditions (n > 0 for
    lame, n >= 1/6 for gen2) are applied here, not in derive_tables.
    """
    if kind in ("lame", "gen2"):
        if len(ns) != 1:
            raise ValueError("kind %s takes exactly one parameter" % kind)
        n = normalize_n(ns[0])
        cls = allowed_n(group, kind)
        if n not in cls:
            return False
        if kind == "lame":
            return n > 0
        return n >= F(1, 6)
    if kind == "gen3":
        if len(ns) != 2:
            raise ValueError("kind gen3 takes (n0, n1)")
        if group not in GROUPS_GEN3:
            raise ValueError("unknown group %r for kind gen3" % group)
        n0, n1 = normalize_n(ns[0]), normalize_n(ns[1])
        if group == "A4":
            return _check_a4_pair(n0, n1)
        set0, set1 = _GEN3_N0[group], _GEN3_N1[group]
        return n0 in set0 and n1 in set1
    raise ValueError("unknown kind %r" % kind)
