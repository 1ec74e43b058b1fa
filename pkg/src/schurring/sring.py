"""S-rings over finite abelian groups: validation, structure constants,
A-sets, radicals, rational conjugacy, induced rings on sections, and product
decompositions.

An S-ring is stored as the partition of the group into basic sets.  Classes
are indexed by their smallest element, so class 0 is always {e} and two
validated S-rings over the same group are equal iff their class tuples are.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .errors import (IdentityNotSingleton, NotAPartition, NotASection,
                     NotClosedUnderProduct, NotInverseClosed, SchurViolation)
from .groups import (GroupSpec, Subgroup, all_subgroups, quotient_section,
                     subgroup_from_indices)


class SRing:
    """A validated S-ring: a partition of G into basic sets."""

    def __init__(self, group, classes, class_of, _validated=False):
        if not _validated:
            raise TypeError("use validate_sring() to construct an SRing")
        self.group = group
        self.classes = classes            # tuple of sorted index tuples
        self.class_of = class_of          # numpy array, element -> class index
        self.rank = len(classes)
        self._cache = {}

    def __eq__(self, other):
        return (isinstance(other, SRing) and self.group == other.group
                and self.classes == other.classes)

    def __hash__(self):
        return hash((self.group.factors, self.classes))

    def __repr__(self):
        sizes = sorted(len(c) for c in self.classes)
        return (f"SRing(group={list(self.group.factors)}, rank={self.rank}, "
                f"sizes={sizes})")

    def class_sizes(self):
        return tuple(len(c) for c in self.classes)

    def size_multiset(self):
        return tuple(sorted(len(c) for c in self.classes))

    def inverse_class(self, i):
        """Index of the class X^{-1}."""
        inv = self._cache.get("inv_classes")
        if inv is None:
            inv_t = self.group.inv_table
            inv = tuple(int(self.class_of[inv_t[c[0]]]) for c in self.classes)
            self._cache["inv_classes"] = inv
        return inv[i]

    def is_symmetric_class(self, i):
        return self.inverse_class(i) == i


def _as_index_list(G, elems):
    out = []
    for x in elems:
        if isinstance(x, (int, np.integer)):
            idx = int(x)
            if not 0 <= idx < G.order:
                raise ValueError(f"element index {idx} out of range")
        else:
            idx = G.index_of(x)
        out.append(idx)
    return out


def _as_index_set(G, elems):
    return set(_as_index_list(G, elems))


def conv_counts(G, X, Y):
    """Coefficient vector of the group-ring product of the indicator sums of
    X and Y: counts[z] = #{(x, y) in X x Y : xy = z}."""
    X = np.asarray(sorted(X), dtype=np.int64)
    Y = np.asarray(sorted(Y), dtype=np.int64)
    prods = G.mul_table[np.ix_(X, Y)].ravel()
    return np.bincount(prods, minlength=G.order)


def validate_sring(G, partition):
    """Check the S-ring axioms and return the validated SRing.

    Raises NotAPartition / IdentityNotSingleton / NotInverseClosed /
    NotClosedUnderProduct accordingly.
    """
    sets = [_as_index_list(G, cls) for cls in partition]
    class_of = np.full(G.order, -1, dtype=np.int64)
    for k, cls in enumerate(sets):
        if not cls:
            raise NotAPartition(f"class {k} is empty")
        for x in cls:
            if class_of[x] != -1:
                raise NotAPartition(
                    f"element {x} appears twice (class {k})")
            class_of[x] = k
    sets = [sorted(cls) for cls in sets]
    missing = np.flatnonzero(class_of < 0)
    if len(missing):
        raise NotAPartition(f"element {int(missing[0])} is in no class")

    # canonical order: classes sorted by smallest element; {e} first
    order = sorted(range(len(sets)), key=lambda k: sets[k][0])
    sets = [tuple(sets[k]) for k in order]
    relabel = np.empty(len(sets), dtype=np.int64)
    for new, old in enumerate(order):
        relabel[old] = new
    class_of = relabel[class_of]

    if sets[0] != (0,):
        raise IdentityNotSingleton("the identity class is not the "
                                   "singleton {e}")

    inv_t = G.inv_table
    for k, cls in enumerate(sets):
        img = sorted(int(inv_t[x]) for x in cls)
        if tuple(img) not in _class_lookup(sets):
            raise NotInverseClosed(f"inverse of class {k} is not a class")

    # axiom (3): every product of class sums is constant on every class
    sort_order = np.argsort(class_of, kind="stable")
    boundaries = np.searchsorted(class_of[sort_order],
                                 np.arange(len(sets)))
    for i, X in enumerate(sets):
        for j, Y in enumerate(sets):
            counts = conv_counts(G, X, Y)
            srt = counts[sort_order]
            mx = np.maximum.reduceat(srt, boundaries)
            mn = np.minimum.reduceat(srt, boundaries)
            bad = np.flatnonzero(mx != mn)
            if len(bad):
                z = int(bad[0])
                members = [int(x) for x in sets[z]]
                vals = counts[members]
                lo = members[int(np.argmin(vals))]
                hi = members[int(np.argmax(vals))]
                raise NotClosedUnderProduct(
                    f"product of classes {i} and {j} is not constant on "
                    f"class {z}: coefficient {int(counts[lo])} at {lo} vs "
                    f"{int(counts[hi])} at {hi}", x=i, y=j, pair=(lo, hi))
    return SRing(G, tuple(sets), class_of, _validated=True)


def _class_lookup(sets):
    return {tuple(c) for c in sets}


def sring_from_class_of(G, class_of):
    """Validate a partition given as an element->class array."""
    k = int(class_of.max()) + 1
    sets = [[] for _ in range(k)]
    for x, c in enumerate(class_of):
        sets[int(c)].append(x)
    return validate_sring(G, sets)


def group_ring(G):
    """The full group ring ZG: all classes are singletons."""
    return validate_sring(G, [[x] for x in range(G.order)])


def rank2_sring(G):
    if G.order == 1:
        return group_ring(G)
    return validate_sring(G, [[0], list(range(1, G.order))])


def structure_constants(A):
    """The rank^3 integer tensor c[X][Y][Z] of the S-ring."""
    tensor = A._cache.get("tensor")
    if tensor is None:
        G = A.group
        r = A.rank
        reps = np.array([c[0] for c in A.classes], dtype=np.int64)
        tensor = np.zeros((r, r, r), dtype=np.int64)
        for i, X in enumerate(A.classes):
            for j, Y in enumerate(A.classes):
                counts = conv_counts(G, X, Y)
                tensor[i, j, :] = counts[reps]
        A._cache["tensor"] = tensor
    return tensor


def is_a_set(A, X):
    """True iff X is a union of basic sets."""
    idx = _as_index_set(A.group, X)
    if not idx:
        return True
    used = {int(A.class_of[x]) for x in idx}
    covered = set()
    for k in used:
        covered.update(A.classes[k])
    return covered == idx


def radical(G, X):
    """rad(X) = {g : gX = X}, the translation stabilizer of X."""
    idx = sorted(_as_index_set(G, X))
    if not idx:
        raise ValueError("radical of the empty set is undefined")
    ind = np.zeros(G.order, dtype=bool)
    ind[idx] = True
    hits = ind[G.mul_table[:, np.array(idx, dtype=np.int64)]]
    members = np.flatnonzero(hits.all(axis=1))
    return subgroup_from_indices(G, members.tolist())


def rational_conjugate(A, class_index, m):
    """Index of the class X^(m) = {x^m : x in X} for gcd(m, |G|) = 1."""
    G = A.group
    if gcd(m, G.order) != 1:
        raise ValueError(f"m={m} is not coprime to |G|={G.order}")
    pm = G.power_map(m)
    X = A.classes[class_index]
    img = tuple(sorted(int(pm[x]) for x in X))
    k = int(A.class_of[img[0]])
    if A.classes[k] != img:
        raise SchurViolation(
            f"power map m={m} does not send class {class_index} to a class")
    return k


def a_subgroups(A, bound=None):
    """All A-subgroups, sorted by order."""
    from .groups import DEFAULT_ORDER_BOUND
    if bound is None:
        bound = max(DEFAULT_ORDER_BOUND, A.group.order)
    subs = [H for H in all_subgroups(A.group, bound=bound)
            if is_a_set(A, H.members)]
    subs.sort(key=lambda H: (H.order, H.members))
    return subs


def induced_sring(A, S):
    """The S-ring induced on an A-section S = U/L."""
    if not is_a_set(A, S.upper.members) or not is_a_set(A, S.lower.members):
        raise NotASection("U and L must both be A-subgroups")
    upper = set(S.upper.members)
    seen = set()
    classes = []
    for cls in A.classes:
        if cls[0] not in upper:
            continue
        img = tuple(sorted({S.projection[x] for x in cls}))
        if img not in seen:
            seen.add(img)
            classes.append(img)
    return validate_sring(S.quotient, classes)


def _coset_saturated(G, X, L_members):
    """True iff X is a union of L-cosets, i.e. L <= rad(X)."""
    Xset = set(X)
    return all(int(G.mul_table[l, x]) in Xset for l in L_members for x in X)


def detect_tensor(A):
    """All ordered direct decompositions G = G1 x G2 into nontrivial
    A-subgroups such that every basic set splits as X1 x X2."""
    G = A.group
    n = G.order
    subs = [H for H in a_subgroups(A) if 1 < H.order < n]
    out = []
    for H1 in subs:
        for H2 in subs:
            if H1.order * H2.order != n:
                continue
            if len(set(H1.members) & set(H2.members)) != 1:
                continue
            comp1 = np.full(n, -1, dtype=np.int64)
            comp2 = np.full(n, -1, dtype=np.int64)
            for h1 in H1.members:
                for h2 in H2.members:
                    g = int(G.mul_table[h1, h2])
                    comp1[g] = h1
                    comp2[g] = h2
            ok = True
            for cls in A.classes:
                c = np.array(cls, dtype=np.int64)
                p1 = sorted(set(comp1[c].tolist()))
                p2 = sorted(set(comp2[c].tolist()))
                if len(p1) * len(p2) != len(cls):
                    ok = False
                    break
                prod = {int(G.mul_table[x1, x2]) for x1 in p1 for x2 in p2}
                if prod != set(cls):
                    ok = False
                    break
            if ok:
                out.append((H1, H2))
    return out


def detect_s_wreath(A):
    """All proper S-wreath decompositions: A-sections S = U/L with
    {e} < L <= U < G and L inside the radical of every class outside U."""
    G = A.group
    n = G.order
    subs = a_subgroups(A)
    out = []
    for L in subs:
        if not 1 < L.order < n:
            continue
        lset = set(L.members)
        for U in subs:
            if U.order >= n or not lset <= set(U.members):
                continue
            uset = set(U.members)
            ok = all(_coset_saturated(G, cls, L.members)
                     for cls in A.classes if cls[0] not in uset)
            if ok:
                out.append(quotient_section(G, U, L))
    out.sort(key=lambda S: (S.lower.order, S.lower.members,
                            S.upper.order, S.upper.members))
    return out
