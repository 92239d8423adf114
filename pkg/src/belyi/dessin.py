"""The dessin model: a permutation pair with derived third factor.

A dessin on N edges is (sigma0, sigma1): the rotations at white and black
vertices.  The face permutation is recomputed, never trusted from input:
sigma_inf is the unique permutation with sigma0 * sigma1 * sigma_inf = id
under the package's left-to-right composition.

Validation (transitivity) is enforced by `validate`, not at construction,
so that partial objects can flow inside the enumerator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .perm import Perm, compose, is_transitive
from .passport import Passport


@dataclass(frozen=True)
class Dessin:
    sigma0: Perm
    sigma1: Perm

    def __post_init__(self):
        if self.sigma0.degree != self.sigma1.degree:
            raise ValueError("sigma0 and sigma1 must have equal degree")

    @property
    def degree(self) -> int:
        return self.sigma0.degree

    def sigma_inf(self) -> Perm:
        """The face permutation: inverse of (sigma0 then sigma1)."""
        return compose(self.sigma0, self.sigma1).inverse()

    def is_transitive(self) -> bool:
        return is_transitive([self.sigma0, self.sigma1], self.degree)

    def genus(self) -> int:
        """Genus from the cycle counts; requires transitivity."""
        if not self.is_transitive():
            raise ValueError("genus is defined for connected dessins only")
        n = self.degree
        c = self.sigma0.num_cycles() + self.sigma1.num_cycles() + self.sigma_inf().num_cycles()
        g2 = n + 2 - c
        if g2 < 0 or g2 % 2:
            raise AssertionError("impossible cycle counts for a transitive triple")
        return g2 // 2

    def passport(self) -> Passport:
        return Passport(self.sigma0.cycle_type(), self.sigma1.cycle_type(),
                        self.sigma_inf().cycle_type())

    def relabel(self, g: Perm) -> "Dessin":
        """Conjugate both rotations by g (simultaneous relabeling of edges)."""
        return Dessin(self.sigma0.conjugate(g), self.sigma1.conjugate(g))

    # -- serialization -------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "sigma0": [list(c) for c in self.sigma0.cycles(include_fixed=False)],
            "sigma1": [list(c) for c in self.sigma1.cycles(include_fixed=False)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json_obj(obj: dict) -> "Dessin":
        n = obj["degree"]
        s0 = Perm.from_cycles(n, [tuple(c) for c in obj["sigma0"]])
        s1 = Perm.from_cycles(n, [tuple(c) for c in obj["sigma1"]])
        return Dessin(s0, s1)

    @staticmethod
    def from_json(text: str) -> "Dessin":
        return Dessin.from_json_obj(json.loads(text))

    def key(self) -> tuple:
        return (self.sigma0.images, self.sigma1.images)


def validate(d: Dessin) -> list:
    """Check the dessin invariants; returns a list of named violations (empty = valid)."""
    problems = []
    if d.sigma0.degree != d.sigma1.degree:
        problems.append("degree-mismatch")
        return problems
    if not d.is_transitive():
        problems.append("not-transitive")
    prod = compose(compose(d.sigma0, d.sigma1), d.sigma_inf())
    if prod != Perm.identity(d.degree):
        problems.append("product-relation-broken")
    return problems


def canonical_form(d: Dessin) -> Dessin:
    """Canonical representative of the equivalence class of d.

    For every starting edge, a breadth-first traversal along sigma0/sigma1
    assigns new labels in discovery order; the lexicographically least
    relabeled (sigma0, sigma1) wins.  Quadratic in N, deterministic, and
    idempotent; ample at the scales this package targets.
    """
    if not d.is_transitive():
        raise ValueError("canonical form requires a connected dessin")
    n = d.degree
    s0, s1 = d.sigma0, d.sigma1
    best = None
    for start in range(n):
        # new label of old point = position in BFS discovery order
        order = [-1] * n
        order[start] = 0
        queue = [start]
        count = 1
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for g in (s0, s1):
                y = g.apply0(x)
                if order[y] < 0:
                    order[y] = count
                    count += 1
                    queue.append(y)
        img0 = [0] * n
        img1 = [0] * n
        for x in range(n):
            img0[order[x]] = order[s0.apply0(x)]
            img1[order[x]] = order[s1.apply0(x)]
        cand = (tuple(img0), tuple(img1))
        if best is None or cand < best:
            best = cand
    return Dessin(Perm(best[0]), Perm(best[1]))


def is_equivalent(a: Dessin, b: Dessin) -> bool:
    """True iff some simultaneous relabeling carries a to b."""
    if a.degree != b.degree:
        return False
    if a.passport() != b.passport():
        return False
    return canonical_form(a).key() == canonical_form(b).key()


def to_dot(d: Dessin) -> str:
    """Bipartite DOT rendering: one node per white/black vertex, one edge per label.

    Rotation is preserved in the node labels (cycle written counterclockwise)
    and in the edge "rot" attributes (position of the edge at each endpoint).
    Output is bit-stable for identical input.
    """
    lines = ["graph dessin {", "  node [style=filled];"]
    w_of = {}
    b_of = {}
    w_pos = {}
    b_pos = {}
    for i, cyc in enumerate(d.sigma0.cycles()):
        name = "w%d" % i
        lines.append('  %s [shape=circle, fillcolor=white, label="%s"];'
                     % (name, " ".join(map(str, cyc))))
        for pos, e in enumerate(cyc):
            w_of[e] = name
            w_pos[e] = pos
    for i, cyc in enumerate(d.sigma1.cycles()):
        name = "b%d" % i
        lines.append('  %s [shape=circle, fillcolor=black, fontcolor=white, label="%s"];'
                     % (name, " ".join(map(str, cyc))))
        for pos, e in enumerate(cyc):
            b_of[e] = name
            b_pos[e] = pos
    for e in range(1, d.degree + 1):
        lines.append('  %s -- %s [label="%d", rot="%d:%d"];'
                     % (w_of[e], b_of[e], e, w_pos[e], b_pos[e]))
    lines.append("}")
    return "\n".join(lines) + "\n"
