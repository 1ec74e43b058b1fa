"""Combinatorial and algebraic isomorphisms of Cayley schemes.

The combinatorial side works on the edge coloring of G x G induced by the
basic-set partition (color(g, h) = class of h g^-1).  A single backtracking
engine searches for vertex bijections whose pair colors realize a prescribed
class bijection; it is used for automorphism groups, schurity orbits, and
the induced-by-isomorphism test.  Candidate sets are propagated after every
assignment, so a "none" answer means the pruned tree was exhausted and is a
certificate.

The algebraic side enumerates class bijections preserving the full
structure-constant tensor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundExceeded
from .groups import subgroup_from_indices, quotient_section
from .perms import PermGroup, right_regular_generators
from .sring import SRing, is_a_set, structure_constants

DEFAULT_DEGREE_BOUND = 100
DEFAULT_RANK_BOUND = 40


# -- color matrices and WL refinement ---------------------------------------

def color_matrix(A):
    """(n, n) matrix with color(g, h) = class index of h * g^-1."""
    G = A.group
    diff = G.mul_table[np.ix_(G.inv_table, np.arange(G.order))]
    return A.class_of[diff]


def wl_refine(color):
    """Coarsest 2-WL-stable refinement of a pair coloring, with
    deterministic color naming.

    The initial coloring is split by the diagonal (standard atomic types);
    afterwards each round refines by the multiset of composition color pairs
    through all intermediate vertices.
    """
    C = np.asarray(color, dtype=np.int64)
    n = C.shape[0]
    eye = np.eye(n, dtype=np.int64)
    C = _relabel_pairs(np.stack([C, eye], axis=2).reshape(n * n, 2), n)
    while True:
        r = int(C.max()) + 1
        comp = C[:, None, :] * r + C.T[None, :, :]
        # comp[g, h, z] = C[g, z] * r + C[z, h]
        comp = np.sort(comp.transpose(0, 2, 1), axis=2)
        sig = np.concatenate([C.reshape(n, n, 1) * (r * r + 1),
                              comp], axis=2).reshape(n * n, n + 1)
        newC = _relabel_pairs(sig, n)
        if int(newC.max()) == int(C.max()):
            return newC
        C = newC


def _relabel_pairs(rows, n):
    """Assign color ids 0..k-1 to distinct rows, ordered lexicographically."""
    _, inverse = np.unique(rows, axis=0, return_inverse=True)
    return inverse.reshape(n, n).astype(np.int64)


# -- algebraic maps ----------------------------------------------------------

@dataclass(frozen=True)
class AlgMap:
    """A bijection of basic-set indices between two S-rings."""

    source: SRing
    target: SRing
    class_map: tuple

    def __call__(self, class_index):
        return self.class_map[class_index]

    @property
    def is_identity(self):
        return (self.source is self.target
                and self.class_map == tuple(range(self.source.rank)))

    def inverse(self):
        inv = [0] * len(self.class_map)
        for i, j in enumerate(self.class_map):
            inv[j] = i
        return AlgMap(self.target, self.source, tuple(inv))

    def compose(self, other):
        """self followed by other (source of other = target of self)."""
        return AlgMap(self.source, other.target,
                      tuple(other.class_map[j] for j in self.class_map))


def identity_alg_map(A):
    return AlgMap(A, A, tuple(range(A.rank)))


def is_algebraic_iso(A, B, class_map):
    """Check c[X][Y][Z] = c'[X^m][Y^m][Z^m] for all triples.

    Returns (True, None) or (False, (i, j, k)) with the first violation.
    """
    m = np.asarray(class_map, dtype=np.int64)
    if A.rank != B.rank or len(m) != A.rank:
        raise ValueError("class map must be a bijection of equal ranks")
    if sorted(m.tolist()) != list(range(A.rank)):
        raise ValueError("class map is not a bijection")
    TA = structure_constants(A)
    TB = structure_constants(B)
    diff = TA != TB[np.ix_(m, m, m)]
    if diff.any():
        i, j, k = np.unravel_index(int(np.argmax(diff)), diff.shape)
        return False, (int(i), int(j), int(k))
    return True, None


def algebraic_isomorphisms(A, B, bound=DEFAULT_RANK_BOUND):
    """All algebraic isomorphisms A -> B, ordered by class-map tuple."""
    if A.rank > bound:
        raise BoundExceeded(f"rank {A.rank} exceeds bound {bound}")
    if A.rank != B.rank or A.group.order != B.group.order:
        return []
    if A.size_multiset() != B.size_multiset():
        return []
    TA = structure_constants(A)
    TB = structure_constants(B)
    r = A.rank
    sizesA = A.class_sizes()
    sizesB = B.class_sizes()
    cands = [[j for j in range(r) if sizesB[j] == sizesA[i]]
             for i in range(r)]
    out = []
    mapped = np.full(r, -1, dtype=np.int64)
    used = [False] * r

    def rec(i):
        if i == r:
            out.append(AlgMap(A, B, tuple(int(x) for x in mapped)))
            return
        placed = np.arange(i)
        img = mapped[:i]
        for j in cands[i]:
            if used[j]:
                continue
            mapped[i] = j
            # new triples involving position i against placed prefix
            ok = (np.array_equal(TA[i, :i, :i], TB[np.ix_([j], img, img)][0])
                  and np.array_equal(TA[:i, i, :i],
                                     TB[np.ix_(img, [j], img)][:, 0, :])
                  and np.array_equal(TA[:i, :i, i],
                                     TB[np.ix_(img, img, [j])][:, :, 0])
                  and np.array_equal(TA[i, i, :i], TB[j, j, img])
                  and np.array_equal(TA[i, :i, i], TB[j, img, j])
                  and np.array_equal(TA[:i, i, i], TB[img, j, j])
                  and TA[i, i, i] == TB[j, j, j])
            if ok:
                used[j] = True
                rec(i + 1)
                used[j] = False
        mapped[i] = -1

    rec(0)
    return out


def algebraic_automorphisms(A, bound=DEFAULT_RANK_BOUND):
    """The group Aut_alg(A) as a list of AlgMaps."""
    return algebraic_isomorphisms(A, A, bound=bound)


def close_alg_maps(maps):
    """Group closure of a set of algebraic automorphisms of one ring."""
    if not maps:
        return []
    A = maps[0].source
    seen = {identity_alg_map(A).class_map: identity_alg_map(A)}
    frontier = list(seen.values())
    gens = list(maps) + [m.inverse() for m in maps]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = cur.compose(g)
            if nxt.class_map not in seen:
                seen[nxt.class_map] = nxt
                frontier.append(nxt)
    return sorted(seen.values(), key=lambda m: m.class_map)


def extend_to_sets(m, X):
    """Image of an A-set under the extension of an algebraic isomorphism."""
    A, B = m.source, m.target
    if not is_a_set(A, X):
        raise ValueError("argument is not an A-set")
    from .sring import _as_index_set
    idx = _as_index_set(A.group, X)
    out = []
    for k in sorted({int(A.class_of[x]) for x in idx}):
        out.extend(B.classes[m.class_map[k]])
    return tuple(sorted(out))


def extend_to_sections(m, S):
    """Image of an A-section under the extension of an algebraic
    isomorphism."""
    B = m.target
    U2 = subgroup_from_indices(B.group, extend_to_sets(m, S.upper.members))
    L2 = subgroup_from_indices(B.group, extend_to_sets(m, S.lower.members))
    return quotient_section(B.group, U2, L2)


# -- the vertex-bijection search engine --------------------------------------

class ColorSearch:
    """Backtracking search for bijections f with
    target_color(f(g), f(h)) = demanded(g, h)."""

    def __init__(self, target_color, demanded):
        self.CB = np.ascontiguousarray(target_color, dtype=np.int64)
        self.MA = np.ascontiguousarray(demanded, dtype=np.int64)
        self.n = self.CB.shape[0]

    def initial_state(self):
        cand = np.ones((self.n, self.n), dtype=bool)
        assigned = np.full(self.n, -1, dtype=np.int64)
        return cand, assigned

    def apply(self, cand, assigned, pairs):
        """Assign (v -> w) pairs in place with propagation.

        Returns False on contradiction.  Unit rows are assigned eagerly.
        """
        queue = list(pairs)
        while queue:
            v, w = queue.pop()
            if assigned[v] == w:
                continue
            if assigned[v] != -1 or not cand[v, w]:
                return False
            assigned[v] = w
            allowed = np.equal.outer(self.MA[v], self.CB[w])
            allowed &= np.equal.outer(self.MA[:, v], self.CB[:, w])
            cand &= allowed
            cand[v, :] = False
            cand[:, w] = False
            cand[v, w] = True
            counts = cand.sum(axis=1)
            if not counts.all():
                return False
            units = np.flatnonzero((counts == 1) & (assigned == -1))
            for u in units:
                queue.append((int(u), int(np.flatnonzero(cand[u])[0])))
        return True

    def search(self, pairs, state=None):
        """First bijection extending ``pairs`` (and ``state``), or None.

        A None return means the full pruned tree was exhausted.
        """
        if state is None:
            cand, assigned = self.initial_state()
        else:
            cand, assigned = state[0].copy(), state[1].copy()
        if not self.apply(cand, assigned, pairs):
            return None
        return self._dfs(cand, assigned)

    def _dfs(self, cand, assigned):
        open_rows = np.flatnonzero(assigned == -1)
        if len(open_rows) == 0:
            return assigned.copy()
        counts = cand[open_rows].sum(axis=1)
        v = int(open_rows[int(np.argmin(counts))])
        for w in np.flatnonzero(cand[v]):
            c2 = cand.copy()
            a2 = assigned.copy()
            if self.apply(c2, a2, [(v, int(w))]):
                res = self._dfs(c2, a2)
                if res is not None:
                    return res
        return None


def _verify_color_perm(C, p):
    return bool(np.array_equal(C[np.ix_(p, p)], C))


# -- combinatorial automorphisms and schurity orbits -------------------------

def automorphisms(A, bound=DEFAULT_DEGREE_BOUND, seeds=()):
    """Aut(A) as a PermGroup with exact order.

    Sequential point stabilization: at each level the orbit of the next base
    point under the pointwise prefix stabilizer is grown by exhaustive
    witness searches; G_right is seeded from the start.
    """
    n = A.group.order
    if n > bound:
        raise BoundExceeded(f"degree {n} exceeds bound {bound}")
    C = color_matrix(A)
    engine = ColorSearch(C, C)
    group = PermGroup(n, right_regular_generators(A.group))
    for s in seeds:
        s = np.asarray(s, dtype=np.int64)
        if not _verify_color_perm(C, s):
            raise ValueError("seed permutation does not preserve colors")
        group.add_generator(s)
    cand, assigned = engine.initial_state()
    for lev in range(n):
        if assigned[lev] == -1:
            for w in np.flatnonzero(cand[lev]):
                w = int(w)
                if w == lev:
                    continue
                if w in group.level_transversal(lev):
                    continue
                found = engine.search([(lev, w)], state=(cand, assigned))
                if found is not None:
                    group.add_generator(found)
            ok = engine.apply(cand, assigned, [(lev, lev)])
            assert ok, "identity became infeasible (engine bug)"
    return group


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def same(self, a, b):
        return self.find(a) == self.find(b)


def stabilizer_orbits(A, bound=DEFAULT_DEGREE_BOUND, seeds=()):
    """Orbit partition of Aut(A)_e on G, certified by exhaustive searches.

    ``seeds`` may contain known automorphisms fixing the identity (e.g. the
    cyclotomic group of a constructed ring); they shortcut searches but never
    change the result.
    """
    n = A.group.order
    if n > bound:
        raise BoundExceeded(f"degree {n} exceeds bound {bound}")
    C = color_matrix(A)
    engine = ColorSearch(C, C)
    uf = _UnionFind(n)
    for s in seeds:
        s = np.asarray(s, dtype=np.int64)
        if s[0] != 0 or not _verify_color_perm(C, s):
            raise ValueError("seed must be a color automorphism fixing e")
        for i in range(n):
            uf.union(i, int(s[i]))
    cand, assigned = engine.initial_state()
    ok = engine.apply(cand, assigned, [(0, 0)])
    assert ok
    for cls in A.classes:
        x0 = cls[0]
        for x in cls[1:]:
            if uf.same(x0, x):
                continue
            found = engine.search([(x0, x)], state=(cand, assigned))
            if found is not None:
                for i in range(n):
                    uf.union(i, int(found[i]))
    blocks = {}
    for i in range(n):
        blocks.setdefault(uf.find(i), []).append(i)
    return tuple(sorted(tuple(b) for b in blocks.values()))


# -- induced algebraic isomorphisms ------------------------------------------

def induced_algebraic(f, A, B):
    """The algebraic isomorphism phi_f realized by a combinatorial
    isomorphism f; raises if f is not one."""
    f = np.asarray(f, dtype=np.int64)
    CA = color_matrix(A)
    CB = color_matrix(B)
    moved = CB[np.ix_(f, f)]
    class_map = np.full(A.rank, -1, dtype=np.int64)
    for i in range(A.rank):
        vals = np.unique(moved[CA == i])
        if len(vals) != 1:
            raise ValueError(f"not a combinatorial isomorphism: color {i} "
                             "is not mapped to a single color")
        class_map[i] = vals[0]
    if len(set(class_map.tolist())) != A.rank:
        raise ValueError("not a combinatorial isomorphism: color map is "
                         "not a bijection")
    ok, viol = is_algebraic_iso(A, B, class_map)
    assert ok, f"induced class map fails tensor equality at {viol} (bug)"
    return AlgMap(A, B, tuple(int(x) for x in class_map))


def is_induced(m, bound=DEFAULT_DEGREE_BOUND):
    """Permutation witness f with phi_f = m, or None (certified) if the
    algebraic isomorphism is not induced by a combinatorial one."""
    A, B = m.source, m.target
    n = A.group.order
    if n > bound or B.group.order > bound:
        raise BoundExceeded(f"degree {n} exceeds bound {bound}")
    ok, viol = is_algebraic_iso(A, B, m.class_map)
    if not ok:
        raise ValueError(f"map is not an algebraic isomorphism "
                         f"(violation at {viol})")
    CA = color_matrix(A)
    CB = color_matrix(B)
    demanded = np.asarray(m.class_map, dtype=np.int64)[CA]
    engine = ColorSearch(CB, demanded)
    # translations induce the identity on classes, so f(e) = e' may be fixed
    return engine.search([(0, 0)])


def color_isomorphisms(A, B, bound=DEFAULT_DEGREE_BOUND):
    """(witness or None, total count) of combinatorial isomorphisms A -> B.

    The count is |Aut(A)| times the number of algebraic isomorphisms that
    are induced.
    """
    if A.group.order != B.group.order:
        return None, 0
    if A.rank != B.rank or A.size_multiset() != B.size_multiset():
        return None, 0
    witness = None
    induced = 0
    for m in algebraic_isomorphisms(A, B):
        f = is_induced(m, bound=bound)
        if f is not None:
            induced += 1
            if witness is None:
                witness = f
    if induced == 0:
        return None, 0
    aut_order = automorphisms(A, bound=bound).order
    return witness, aut_order * induced
