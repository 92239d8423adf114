"""Exhaustive enumeration of dessins realizing a passport, up to equivalence.

The search grows both rotations at once in breadth-first discovery order:
edge 1 is the root, and a new edge label may enter only as the next unused
integer, so every triple produced is already BFS-labeled from its root and
each equivalence class shows up at most degree-many times (once per root)
instead of once per centralizer element.  Cycle-length budgets for sigma0,
sigma1 and the derived product each run through the same open-chain
bookkeeping: a chain longer than every remaining budget part kills the
branch, and a chain that exactly one completion fits is closed by forced
propagation, which collapses tightly constrained passports (small product
cycles) to near-forced searches.  Residual duplicates are removed by
canonical-form hashing, certified against the small-degree brute-force
oracle in the tests.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .dessin import Dessin, canonical_form
from .passport import Passport, hurwitz_defect
from .perm import Perm

DEFAULT_DEGREE_BOUND = 40


class BoundExceeded(ValueError):
    """Degree above the configured enumeration bound."""

    def __init__(self, degree: int, bound: int):
        super().__init__(
            "passport degree %d exceeds the enumeration bound %d" % (degree, bound))
        self.degree = degree
        self.bound = bound


@dataclass
class EnumerationResult:
    status: str                 # "ok" or "infeasible"
    passport: Passport
    dessins: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.dessins)

    def summary(self) -> str:
        return "classes=%d degree=%d defect=%d" % (
            self.count, self.passport.degree, hurwitz_defect(self.passport))


def _pack_exact(sizes, parts, node_cap=20000) -> bool:
    """Can open chains of the given sizes close into cycle-length parts
    (several chains may share a part; leftover room is filled by fresh
    points)?  Exact DFS; returns True when the node cap is hit, so it only
    ever errs on the permissive side."""
    if not sizes:
        return True
    parts = sorted(parts, reverse=True)
    sizes = sorted(sizes, reverse=True)
    if sum(sizes) > sum(parts) or sizes[0] > parts[0]:
        return False
    nodes = [0]

    def dfs(i, room):
        if i == len(sizes):
            return True
        nodes[0] += 1
        if nodes[0] > node_cap:
            return True
        s = sizes[i]
        tried = set()
        for j, r in enumerate(room):
            if r >= s and r not in tried:
                tried.add(r)
                room[j] -= s
                if dfs(i + 1, room):
                    room[j] += s
                    return True
                room[j] += s
        return False

    return dfs(0, list(parts))


class _Chains:
    """Open chains of a partial functional graph with a cycle-length budget.

    Edges u -> v are added and removed in LIFO order.  A chain with e edges
    only ever closes into a cycle of length >= e + 1, so a chain that the
    largest remaining part cannot hold is dead, and one that no part exceeds
    must close immediately.
    """

    __slots__ = ("n", "out", "into", "budget")

    def __init__(self, n, parts):
        self.n = n
        self.out = [-1] * n
        self.into = [-1] * n
        self.budget = Counter(parts)

    def chain_back(self, v):
        """(head, edge count) walking backwards from v."""
        back = 0
        while self.into[v] >= 0:
            v = self.into[v]
            back += 1
        return v, back

    def chain_fwd(self, v):
        ln = 0
        while self.out[v] >= 0:
            v = self.out[v]
            ln += 1
        return v, ln

    def max_part(self):
        best = 0
        for k, c in self.budget.items():
            if c > 0 and k > best:
                best = k
        return best

    def add(self, u, v):
        """Add edge u -> v; ("closed", length) / ("open", None) / ("fail", None)."""
        end, ln = self.chain_fwd(v)
        if end == u:
            length = ln + 1
            if self.budget[length] <= 0:
                return ("fail", None)
            self.budget[length] -= 1
            self.out[u] = v
            self.into[v] = u
            return ("closed", length)
        _, back = self.chain_back(u)
        if back + ln + 2 > self.max_part():
            return ("fail", None)
        self.out[u] = v
        self.into[v] = u
        return ("open", None)

    def remove(self, u, v, closed):
        self.out[u] = -1
        self.into[v] = -1
        if closed is not None:
            self.budget[closed] += 1

    def forced_closure(self, u):
        """Head of the chain ending at u if that chain can no longer grow
        (so its closing edge is forced); else None."""
        if self.out[u] >= 0 or self.into[u] < 0:
            return None
        head, back = self.chain_back(u)
        length = back + 1
        if self.budget[length] > 0 and all(
                c <= 0 for k, c in self.budget.items() if k > length):
            return head
        return None

    def open_sizes(self):
        sizes = []
        for v in range(self.n):
            if self.out[v] >= 0 and self.into[v] < 0:
                _, ln = self.chain_fwd(v)
                sizes.append(ln + 1)
        return sizes

    def parts_left(self):
        return [k for k, c in self.budget.items() if c > 0 for _ in range(c)]


class _OrderlySearch:
    """Grow (sigma0, sigma1) in BFS discovery order with per-column budgets."""

    def __init__(self, passport: Passport, limit=None):
        self.n = passport.degree
        self.p = passport
        self.limit = limit
        self.s = ([-1] * self.n, [-1] * self.n)       # images of sigma0, sigma1
        self.sinv = ([-1] * self.n, [-1] * self.n)
        self.chains = (_Chains(self.n, passport.over0),
                       _Chains(self.n, passport.over1),
                       _Chains(self.n, passport.over_inf))
        self.next_label = 1                            # 0 is the root
        self.n_assigned = 0
        self.found = {}
        self.script = None                             # queue of forced first choices

    # -- primitive moves -----------------------------------------------

    def _pi_edges_for(self, which, p, q):
        """Product edges u -> v that become known when sigma_which(p) = q."""
        s0, s1 = self.s
        if which == 0:
            # pi(p) = s1[q] if already known
            if s1[q] >= 0:
                return [(p, s1[q])]
            return []
        u = self.sinv[0][p]
        if u >= 0:
            return [(u, q)]
        return []

    def _assign(self, which, p, q):
        """sigma_which(p) = q; returns an undo token, or None when impossible."""
        if self.s[which][p] >= 0 or self.sinv[which][q] >= 0:
            return None
        st, sclosed = self.chains[which].add(p, q)
        if st == "fail":
            return None
        pi = self._pi_edges_for(which, p, q)
        ptok = None
        if pi:
            u, v = pi[0]
            pt, pclosed = self.chains[2].add(u, v)
            if pt == "fail":
                self.chains[which].remove(p, q, sclosed)
                return None
            ptok = (u, v, pclosed)
        self.s[which][p] = q
        self.sinv[which][q] = p
        self.n_assigned += 1
        return (which, p, q, sclosed, ptok)

    def _unassign(self, token):
        which, p, q, sclosed, ptok = token
        self.n_assigned -= 1
        self.s[which][p] = -1
        self.sinv[which][q] = -1
        if ptok is not None:
            u, v, pclosed = ptok
            self.chains[2].remove(u, v, pclosed)
        self.chains[which].remove(p, q, sclosed)

    # -- propagation -----------------------------------------------------

    def _find_forced(self):
        for which in (0, 1):
            ch = self.chains[which]
            for u in range(self.next_label):
                if self.s[which][u] < 0:
                    h = ch.forced_closure(u)
                    if h is not None:
                        return (which, u, h)
        ch = self.chains[2]
        for u in range(self.next_label):
            if ch.out[u] >= 0:
                continue
            h = ch.forced_closure(u)
            if h is None:
                continue
            # product closure u -> h means sigma1(sigma0(u)) = h
            p = self.s[0][u]
            if p >= 0 and self.s[1][p] < 0 and self.sinv[1][h] < 0:
                return (1, p, h)
        return None

    def _propagate(self):
        tokens = []
        while True:
            move = self._find_forced()
            if move is None:
                return True, tokens
            tok = self._assign(*move)
            if tok is None:
                return False, tokens
            tokens.append(tok)

    def _viable(self):
        for ch in self.chains:
            if not _pack_exact(ch.open_sizes(), ch.parts_left()):
                return False
        return True

    # -- slot order --------------------------------------------------------

    def _next_slot(self):
        for x in range(self.n):
            for which in (0, 1):
                if self.s[which][x] < 0:
                    return which, x
        return None

    def run(self):
        self._step()
        return self.found

    def _step(self):
        if self.limit is not None and len(self.found) >= self.limit:
            return
        ok, tokens = self._propagate()
        try:
            if not ok or not self._viable():
                return
            slot = self._next_slot()
            if slot is None:
                self._emit()
                return
            which, x = slot
            if x >= self.next_label:
                return  # x was never discovered: the map cannot connect
            choices = list(range(self.next_label))
            fresh = self.next_label < self.n
            if self.script:
                forced_q = self.script.pop(0)
                seq = [forced_q]
            else:
                seq = choices + ([self.next_label] if fresh else [])
            for q in seq:
                is_fresh = q == self.next_label
                if is_fresh and not fresh:
                    continue
                tok = self._assign(which, x, q)
                if tok is None:
                    continue
                if is_fresh:
                    self.next_label += 1
                self._step()
                if is_fresh:
                    self.next_label -= 1
                self._unassign(tok)
                if self.limit is not None and len(self.found) >= self.limit:
                    return
        finally:
            while tokens:
                self._unassign(tokens.pop())

    def _emit(self):
        d = Dessin(Perm(self.s[0]), Perm(self.s[1]))
        c = canonical_form(d)
        self.found.setdefault(c.key(), c)


def enumerate_dessins(p: Passport, limit: int | None = None,
                      degree_bound: int = DEFAULT_DEGREE_BOUND,
                      jobs: int = 1) -> EnumerationResult:
    """All transitive genus-0 triples with the given cycle types, one per class.

    Returns status "infeasible" (with no dessins) when the Hurwitz defect is
    nonzero, distinguishing that from a genuine empty search.  Degrees above
    `degree_bound` are refused with `BoundExceeded`.  Output is sorted by
    canonical form, so repeated runs (and any `jobs` setting) are
    byte-identical; `limit` caps the number of classes collected.
    """
    if not p.is_consistent():
        raise ValueError("column sums differ: %s" % (p.column_sums(),))
    if p.degree > degree_bound:
        raise BoundExceeded(p.degree, degree_bound)
    if hurwitz_defect(p) != 0:
        return EnumerationResult("infeasible", p)
    if jobs > 1 and p.degree > 1:
        found = _run_parallel(p, jobs)
    else:
        found = _OrderlySearch(p, limit).run()
    dessins = sorted(found.values(), key=lambda d: d.key())
    if limit is not None:
        dessins = dessins[:limit]
    return EnumerationResult("ok", p, dessins)


def count_dessins(p: Passport, degree_bound: int = DEFAULT_DEGREE_BOUND,
                  jobs: int = 1) -> EnumerationResult:
    """Like enumerate_dessins, but meant for its count/summary only."""
    return enumerate_dessins(p, degree_bound=degree_bound, jobs=jobs)


# -- optional process-level parallelism -------------------------------------

def _prefix_scripts(p: Passport, want: int):
    """Choice prefixes partitioning the search tree into at least `want`
    independent subtrees (or leaves, which are returned as full scripts)."""
    prefixes = [[]]
    leaves = []
    depth = 0
    while len(prefixes) < want and depth < 8:
        depth += 1
        nxt = []
        for script in prefixes:
            search = _OrderlySearch(p)
            search.script = list(script)
            # replay, then list the live branches one level deeper
            live = _live_choices(search, script)
            if live is None:
                leaves.append(script)
            else:
                nxt.extend(script + [q] for q in live)
        if not nxt:
            break
        prefixes = nxt
    return prefixes, leaves


def _live_choices(search: _OrderlySearch, script):
    """Replay script; return the branch choices at the next slot, or None if
    the replayed node is a leaf/dead end."""
    ok, _ = search._propagate()
    if not ok or not search._viable():
        return [] if script else None
    for q in script:
        slot = search._next_slot()
        if slot is None:
            return None
        which, x = slot
        if x >= search.next_label:
            return []
        tok = search._assign(which, x, q)
        if tok is None:
            return []
        if q == search.next_label:
            search.next_label += 1
        ok, _ = search._propagate()
        if not ok or not search._viable():
            return []
    slot = search._next_slot()
    if slot is None:
        return None
    which, x = slot
    if x >= search.next_label:
        return []
    out = list(range(search.next_label))
    if search.next_label < search.n:
        out.append(search.next_label)
    return out


def _run_task(args):
    obj, script = args
    p = Passport(*obj)
    search = _OrderlySearch(p)
    search.script = list(script)
    search._step()
    return [d.to_json_obj() for d in search.found.values()]


def _run_parallel(p: Passport, jobs):
    import multiprocessing
    prefixes, leaves = _prefix_scripts(p, jobs * 4)
    scripts = prefixes + leaves
    args = [(p.as_lists(), s) for s in scripts]
    found = {}
    with multiprocessing.Pool(jobs) as pool:
        for chunk in pool.imap_unordered(_run_task, args):
            for o in chunk:
                d = Dessin.from_json_obj(o)
                found.setdefault(d.key(), d)
    return found
