"""Exact permutation algebra on {1..N}.

Permutations are immutable and act on the points 1..N (the edge labels of a
dessin).  Internally images are stored 0-based in a tuple; every public
interface (cycle notation, JSON, iteration helpers) speaks 1-based.

The one composition convention used throughout the package is left-to-right:
``compose(p, q)`` is "apply p first, then q".
"""

from __future__ import annotations

from typing import Iterable, Sequence

# Parsing rejects absurd degrees outright; enumeration is infeasible long
# before this, but validation of a pasted permutation is not.
DEGREE_CAP = 10**6


class Perm:
    """A permutation of {1..N}, N = degree."""

    __slots__ = ("_img",)

    def __init__(self, images0: Sequence[int]):
        """Build from 0-based images.  Use `from_images` / `from_cycles` for 1-based input."""
        img = tuple(images0)
        n = len(img)
        if n < 1:
            raise ValueError("degree must be >= 1")
        seen = [False] * n
        for i in img:
            if not 0 <= i < n or seen[i]:
                raise ValueError("images do not form a bijection on {1..%d}" % n)
            seen[i] = True
        self._img = img

    # -- construction ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(range(n))

    @staticmethod
    def from_images(images: Sequence[int]) -> "Perm":
        """Build from 1-based image list: images[i-1] = p(i)."""
        return Perm([x - 1 for x in images])

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from 1-based cycles; points not mentioned are fixed."""
        if n < 1 or n > DEGREE_CAP:
            raise ValueError("degree out of range: %d" % n)
        img = list(range(n))
        touched = [False] * n
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                ia = a - 1
                if not 0 <= ia < n or not 1 <= b <= n:
                    raise ValueError("point out of range in cycle %r" % (tuple(cyc),))
                if touched[ia]:
                    raise ValueError("point %d appears twice" % a)
                touched[ia] = True
                img[ia] = b - 1
        return Perm(img)

    # -- basic protocol ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._img)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self._img[point - 1] + 1

    def apply0(self, i: int) -> int:
        """Image of a 0-based point (internal hot path)."""
        return self._img[i]

    @property
    def images(self) -> tuple:
        """1-based image tuple: images[i-1] = p(i)."""
        return tuple(x + 1 for x in self._img)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __repr__(self) -> str:
        return "Perm(%s)" % (self.cycle_string() or "()",)

    # -- algebra -----------------------------------------------------------

    def inverse(self) -> "Perm":
        img = self._img
        inv = [0] * len(img)
        for i, j in enumerate(img):
            inv[j] = i
        return Perm(inv)

    def conjugate(self, g: "Perm") -> "Perm":
        """g^-1 * self * g under left-to-right composition: relabel points by g."""
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        gi = g._img
        img = [0] * len(gi)
        for i, j in enumerate(self._img):
            img[gi[i]] = gi[j]
        return Perm(img)

    # -- cycle structure ---------------------------------------------------

    def cycles(self, include_fixed: bool = True) -> list:
        """Cycles as 1-based tuples, each starting at its minimal point, sorted."""
        n = len(self._img)
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            cyc = []
            i = s
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self._img[i]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        """Multiset of cycle lengths, ascending, fixed points included; sums to N."""
        n = len(self._img)
        seen = [False] * n
        lens = []
        for s in range(n):
            if seen[s]:
                continue
            ln = 0
            i = s
            while not seen[i]:
                seen[i] = True
                ln += 1
                i = self._img[i]
            lens.append(ln)
        lens.sort()
        return tuple(lens)

    def num_cycles(self) -> int:
        n = len(self._img)
        seen = [False] * n
        c = 0
        for s in range(n):
            if seen[s]:
                continue
            c += 1
            i = s
            while not seen[i]:
                seen[i] = True
                i = self._img[i]
        return c

    def cycle_string(self) -> str:
        """Cycle notation with fixed points omitted, e.g. ``(1 17)(3 18)``."""
        parts = ["(%s)" % " ".join(str(p) for p in c) for c in self.cycles(include_fixed=False)]
        return "".join(parts)


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q (left-to-right).  Degrees must agree."""
    if p.degree != q.degree:
        raise ValueError("degree mismatch: %d vs %d" % (p.degree, q.degree))
    qi = q._img
    return Perm([qi[i] for i in p._img])


def compose_all(*ps: Perm) -> Perm:
    """Left-to-right product of several permutations."""
    if not ps:
        raise ValueError("empty product")
    acc = ps[0]
    for p in ps[1:]:
        acc = compose(acc, p)
    return acc


def identity(n: int) -> Perm:
    return Perm.identity(n)


def orbits(gens: Sequence[Perm], n: int) -> list:
    """Orbit partition of {1..N} under the listed permutations (union-find).

    Returns sorted blocks of sorted 1-based points.  Empty generator list
    means the discrete partition.
    """
    for g in gens:
        if g.degree != n:
            raise ValueError("degree mismatch")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            a, b = find(i), find(g._img[i])
            if a != b:
                parent[a] = b
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i + 1)
    return sorted(groups.values())


def is_transitive(gens: Sequence[Perm], n: int | None = None) -> bool:
    """True iff the generated group has a single orbit on {1..N}.

    An empty generator list with n > 1 is answered False, not an error.
    """
    if n is None:
        if not gens:
            raise ValueError("degree unknown for empty generator list")
        n = gens[0].degree
    if not gens:
        return n == 1
    return len(orbits(gens, n)) == 1


# -- cycle notation parsing ------------------------------------------------

def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse ``(1 17)(3 18)`` style cycle notation (whitespace-separated points).

    Fixed points may be omitted, so the degree cannot always be inferred;
    pass `degree` to pin it (otherwise the maximal point seen is used).
    Commas between points are tolerated.  Round-trips `Perm.cycle_string`.
    """
    s = text.strip()
    if degree is not None and not 1 <= degree <= DEGREE_CAP:
        raise ValueError("degree out of range: %d" % degree)
    cycles = []
    maxpt = 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ValueError("expected '(' at position %d" % i)
        j = s.index(")", i)
        body = s[i + 1:j].replace(",", " ").split()
        if body:
            pts = []
            for tok in body:
                if not tok.isdigit():
                    raise ValueError("bad point %r" % tok)
                p = int(tok)
                if p < 1 or p > DEGREE_CAP:
                    raise ValueError("point out of range: %d" % p)
                pts.append(p)
                maxpt = max(maxpt, p)
            cycles.append(tuple(pts))
        i = j + 1
    n = degree if degree is not None else maxpt
    if n == 0:
        raise ValueError("cannot infer degree from %r" % text)
    return Perm.from_cycles(n, cycles)
