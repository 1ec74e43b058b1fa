"""Finite abelian groups presented as direct products of cyclic groups.

Elements are residue vectors over the cyclic factors; every element also has
a mixed-radix index in ``0..order-1`` (first factor most significant, index 0
is the identity).  All heavy operations work on indices through cached numpy
tables; the tuple-based API is a thin layer on top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

import numpy as np

from .errors import BoundExceeded, NotASection

DEFAULT_ORDER_BOUND = 256


class GroupSpec:
    """A finite abelian group ``C_{f1} x ... x C_{fk}``."""

    def __init__(self, factors):
        factors = tuple(int(f) for f in factors)
        for f in factors:
            if f < 2:
                raise ValueError(f"cyclic factor must be >= 2, got {f}")
        self.factors = factors
        self.order = prod(factors) if factors else 1
        # weights[i] = product of factors after position i (mixed radix)
        w = []
        acc = 1
        for f in reversed(factors):
            w.append(acc)
            acc *= f
        self._weights = tuple(reversed(w))
        self._cache = {}

    # -- identity / comparison ------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"GroupSpec({list(self.factors)})"

    @property
    def exponent(self):
        e = 1
        for f in self.factors:
            e = e * f // gcd(e, f)
        return e

    # -- cached tables ----------------------------------------------------

    @property
    def residue_matrix(self):
        """(order, k) matrix: row g = residue vector of element g."""
        tab = self._cache.get("residues")
        if tab is None:
            if self.factors:
                cols = np.meshgrid(*[np.arange(f) for f in self.factors],
                                   indexing="ij")
                tab = np.stack([c.reshape(-1) for c in cols], axis=1)
            else:
                tab = np.zeros((1, 0), dtype=np.int64)
            tab = np.ascontiguousarray(tab.astype(np.int64))
            self._cache["residues"] = tab
        return tab

    @property
    def mul_table(self):
        tab = self._cache.get("mul")
        if tab is None:
            r = self.residue_matrix
            f = np.array(self.factors, dtype=np.int64)
            w = np.array(self._weights, dtype=np.int64)
            if self.factors:
                s = (r[:, None, :] + r[None, :, :]) % f
                tab = (s * w).sum(axis=2).astype(np.int64)
            else:
                tab = np.zeros((1, 1), dtype=np.int64)
            self._cache["mul"] = tab
        return tab

    @property
    def inv_table(self):
        tab = self._cache.get("inv")
        if tab is None:
            tab = self.power_map(-1)
            self._cache["inv"] = tab
        return tab

    @property
    def element_orders(self):
        tab = self._cache.get("orders")
        if tab is None:
            out = np.ones(self.order, dtype=np.int64)
            r = self.residue_matrix
            for i, f in enumerate(self.factors):
                comp = f // np.gcd(r[:, i], f)
                out = out * comp // np.gcd(out, comp)
            self._cache["orders"] = out
            tab = out
        return tab

    def power_map(self, m):
        """Index array of ``x -> x^m``."""
        key = ("pow", m % self.exponent if self.factors else 0)
        tab = self._cache.get(key)
        if tab is None:
            r = self.residue_matrix
            f = np.array(self.factors, dtype=np.int64)
            w = np.array(self._weights, dtype=np.int64)
            if self.factors:
                tab = (((r * m) % f) * w).sum(axis=1).astype(np.int64)
            else:
                tab = np.zeros(1, dtype=np.int64)
            self._cache[key] = tab
        return tab

    # -- element conversion ----------------------------------------------

    def index_of(self, residues):
        residues = tuple(int(x) for x in residues)
        if len(residues) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} residues, "
                             f"got {len(residues)}")
        idx = 0
        for x, f, w in zip(residues, self.factors, self._weights):
            if not 0 <= x < f:
                raise ValueError(f"residue {x} out of range [0, {f})")
            idx += x * w
        return idx

    def residues_of(self, index):
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range")
        out = []
        for f, w in zip(self.factors, self._weights):
            out.append(int(index // w % f))
        return tuple(out)

    def elements(self):
        return range(self.order)


def make_group(factors):
    """Build the abelian group with the given cyclic factor orders."""
    return GroupSpec(factors)


# -- elementwise arithmetic on residue tuples ----------------------------

def mul(G, g, h):
    return G.residues_of(G.mul_table[G.index_of(g), G.index_of(h)])


def inv(G, g):
    return G.residues_of(G.inv_table[G.index_of(g)])


def elem_order(G, g):
    return int(G.element_orders[G.index_of(g)])


# -- subgroups ------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a sorted tuple of element indices."""

    group: GroupSpec
    members: tuple
    generators: tuple

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, index):
        return index in self._member_set()

    def _member_set(self):
        # frozen dataclass: stash the set on the object dict via __dict__ hack
        s = self.__dict__.get("_mset")
        if s is None:
            s = frozenset(self.members)
            self.__dict__["_mset"] = s
        return s

    def __le__(self, other):
        return self._member_set() <= other._member_set()

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={list(self.generators)})"


def _closure(G, seed_indices):
    """Subgroup closure of a set of element indices (orbit saturation)."""
    mul_t = G.mul_table
    members = {0}
    frontier = [0]
    gens = [int(g) for g in seed_indices]
    for g in gens:
        if g not in members:
            new = [g]
            members.add(g)
            while new:
                x = new.pop()
                for y in list(members):
                    for z in (int(mul_t[x, y]),):
                        if z not in members:
                            members.add(z)
                            new.append(z)
    return members


def generated_subgroup(G, X):
    """Smallest subgroup containing X (elements given as residue tuples)."""
    seed = sorted(G.index_of(x) for x in X)
    members = _closure(G, seed)
    return subgroup_from_indices(G, members, generators=tuple(seed))


def subgroup_from_indices(G, indices, generators=None):
    members = tuple(sorted(int(i) for i in set(indices)))
    if generators is None:
        generators = _minimal_generators(G, members)
    return Subgroup(G, members, tuple(generators))


def _minimal_generators(G, members):
    """Greedy minimal generating list for a subgroup given by its members."""
    chosen = []
    span = {0}
    for x in sorted(members, key=lambda i: (-int(G.element_orders[i]), i)):
        if x not in span:
            chosen.append(int(x))
            span = _closure(G, chosen)
            if len(span) == len(members):
                break
    return tuple(chosen)


def trivial_subgroup(G):
    return Subgroup(G, (0,), ())


def full_subgroup(G):
    return subgroup_from_indices(G, range(G.order))


def all_subgroups(G, bound=DEFAULT_ORDER_BOUND):
    """Every subgroup of G, sorted by (order, member tuple)."""
    if G.order > bound:
        raise BoundExceeded(f"group order {G.order} exceeds bound {bound}")
    mul_t = G.mul_table
    seen = {(0,): ()}
    frontier = [((0,), ())]
    while frontier:
        members, gens = frontier.pop()
        mset = set(members)
        for x in range(1, G.order):
            if x in mset:
                continue
            new_members = tuple(sorted(_closure(G, list(gens) + [x])))
            if new_members not in seen:
                new_gens = gens + (x,)
                seen[new_members] = new_gens
                frontier.append((new_members, new_gens))
    subs = [subgroup_from_indices(G, m) for m in seen]
    subs.sort(key=lambda H: (H.order, H.members))
    return subs


# -- sections and quotients ------------------------------------------------

@dataclass(frozen=True)
class Section:
    """A section U/L with its quotient realized as a GroupSpec.

    ``projection[g]`` is the quotient element index for g in U and -1
    outside U.
    """

    group: GroupSpec
    upper: Subgroup
    lower: Subgroup
    quotient: GroupSpec
    projection: tuple

    @property
    def size(self):
        return self.quotient.order

    def project(self, index):
        q = self.projection[index]
        if q < 0:
            raise ValueError(f"element {index} not in the upper subgroup")
        return q

    def __repr__(self):
        return (f"Section(|U|={self.upper.order}, |L|={self.lower.order}, "
                f"quotient={list(self.quotient.factors)})")


def invariant_factors(orders):
    """Invariant factors (ascending divisibility chain) of an abelian group
    given the multiset of its element orders."""
    n = len(orders)
    orders = np.asarray(orders, dtype=np.int64)
    primes = _prime_factors(n)
    per_prime = {}
    for p in primes:
        # lambda partition from counts of solutions of x^(p^j) = e
        lam = []
        j = 1
        prev = 1
        while True:
            cnt = int(np.count_nonzero(_p_part_order_divides(orders, p, j)))
            if cnt == prev:
                break
            # number of parts >= j in the partition
            parts_ge_j = int(round(np.log(cnt / prev) / np.log(p)))
            lam.append(parts_ge_j)
            prev = cnt
            j += 1
        # lam[j-1] = #parts >= j; convert to partition (descending)
        partition = []
        for j, c in enumerate(lam, start=1):
            while len(partition) < c:
                partition.append(0)
            for i in range(c):
                partition[i] += 1
        per_prime[p] = sorted(partition, reverse=True)
    k = max((len(v) for v in per_prime.values()), default=0)
    out = []
    for i in range(k):
        d = 1
        for p, partition in per_prime.items():
            if i < len(partition):
                d *= p ** partition[i]
        out.append(d)
    return tuple(sorted(out))


def _p_part_order_divides(orders, p, j):
    return (p ** j) % orders == 0


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _abelian_basis(elems, mul_of, order_of, target_factors):
    """Find generators (g_k for each target factor, descending) such that the
    group is the direct sum of the cyclic groups they generate.

    ``elems`` is a list of hashable element labels, ``mul_of`` a callable,
    ``order_of`` a dict.  Backtracking with span-size pruning; a valid basis
    always exists, so the search succeeds.
    """
    identity = None
    for x in elems:
        if order_of[x] == 1:
            identity = x
            break
    targets = sorted(target_factors, reverse=True)

    def span_of(gens):
        members = {identity}
        for g in gens:
            cur = list(members)
            acc = g
            while acc not in members:
                for m in cur:
                    members.add(mul_of(m, acc))
                acc = mul_of(acc, g)
        return members

    def rec(chosen, span):
        if len(chosen) == len(targets):
            return list(chosen)
        want = targets[len(chosen)]
        expect = len(span) * want
        for x in elems:
            if order_of[x] != want or x in span:
                continue
            new_span = span_of(chosen + [x])
            if len(new_span) == expect:
                res = rec(chosen + [x], new_span)
                if res is not None:
                    return res
        return None

    basis = rec([], {identity})
    if basis is None:
        raise RuntimeError("no abelian basis found (bug)")
    return basis  # descending factor order


def quotient_section(G, U, L):
    """Realize U/L as a Section with canonical invariant-factor quotient."""
    if not (set(L.members) <= set(U.members)):
        raise NotASection("L is not contained in U")
    mul_t = G.mul_table
    lset = list(L.members)

    # cosets of L inside U
    coset_rep = {}
    reps = []
    for u in U.members:
        if u in coset_rep:
            continue
        members = [int(mul_t[u, l]) for l in lset]
        rep = min(members)
        for m in members:
            coset_rep[m] = rep
        reps.append(rep)
    reps.sort()
    rep_pos = {r: i for i, r in enumerate(reps)}

    def cmul(r1, r2):
        return coset_rep[int(mul_t[r1, r2])]

    qorder = len(reps)
    id_rep = coset_rep[0]
    orders = {}
    for r in reps:
        acc, k = r, 1
        while acc != id_rep:
            acc = cmul(acc, r)
            k += 1
        orders[r] = k

    if qorder == 1:
        quotient = GroupSpec([])
        proj = [-1] * G.order
        for u in U.members:
            proj[u] = 0
        return Section(G, U, L, quotient, tuple(proj))

    facs = invariant_factors([orders[r] for r in reps])
    quotient = GroupSpec([f for f in facs if f > 1])
    basis = _abelian_basis(reps, cmul, orders, quotient.factors)
    # basis is in descending factor order; quotient.factors ascending
    basis = list(reversed(basis))

    # enumerate exponent combinations -> coset, giving the index map
    coset_to_q = {}
    for expo in itertools.product(*[range(f) for f in quotient.factors]):
        acc = id_rep
        for g, e in zip(basis, expo):
            for _ in range(e):
                acc = cmul(acc, g)
        coset_to_q[acc] = quotient.index_of(expo)
    proj = [-1] * G.order
    for u in U.members:
        proj[u] = coset_to_q[coset_rep[u]]
    return Section(G, U, L, quotient, tuple(proj))


# -- automorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism stored as the index permutation it induces."""

    group: GroupSpec
    images: tuple

    def __call__(self, index):
        return self.images[index]

    def as_array(self):
        return np.array(self.images, dtype=np.int64)


def is_homomorphism(G, images):
    """Check that the index map ``images`` respects the group law."""
    mul_t = G.mul_table
    im = np.asarray(images, dtype=np.int64)
    return bool(np.array_equal(im[mul_t], mul_t[np.ix_(im, im)]))


def hom_from_generator_images(G, images):
    """Automorphism sending the i-th canonical generator to images[i],
    or None if the assignment is not a bijective homomorphism."""
    if len(images) != len(G.factors):
        raise ValueError(f"expected {len(G.factors)} generator images")
    img_idx = [G.index_of(v) for v in images]
    for f, v in zip(G.factors, img_idx):
        if f % int(G.element_orders[v]) != 0:
            return None
    perm = _perm_from_generator_images(G, img_idx)
    if len(set(perm.tolist())) != G.order:
        return None
    return GroupAutomorphism(G, tuple(int(x) for x in perm))


def _perm_from_generator_images(G, img_idx):
    """Index map of the homomorphism with the given generator images."""
    r = G.residue_matrix
    f = np.array(G.factors, dtype=np.int64)
    w = np.array(G._weights, dtype=np.int64)
    imres = G.residue_matrix[np.array(img_idx, dtype=np.int64)]
    # image of element with residues r: sum_i r_i * img_i
    out = (r @ imres) % f  # (n, k) residues of images
    return ((out * w).sum(axis=1)).astype(np.int64)


def automorphism_group(G, bound=DEFAULT_ORDER_BOUND):
    """Full Aut(G) as a PermGroup (exact order, small generating set)."""
    from .perms import PermGroup

    if G.order > bound:
        raise BoundExceeded(f"group order {G.order} exceeds bound {bound}")
    perms = _all_automorphism_perms(G)
    group = PermGroup(G.order)
    for p in perms:
        if group.order >= len(perms):
            break
        group.add_generator(p)
    assert group.order == len(perms)
    return group


def _all_automorphism_perms(G):
    """All automorphisms of G as index permutations (list of arrays)."""
    k = len(G.factors)
    if k == 0:
        return [np.zeros(1, dtype=np.int64)]
    orders = G.element_orders
    mul_t = G.mul_table
    out = []

    candidates = [np.flatnonzero(G.factors[i] % orders == 0) for i in range(k)]

    # span of the first i canonical generators must be matched exactly by the
    # span of their images (necessary for bijectivity; prunes hard)
    src_span = {0}
    src_growth = []
    for i in range(k):
        gen = G.index_of(tuple(1 if j == i else 0 for j in range(k)))
        new = _closure_sets(mul_t, src_span, gen)
        src_growth.append(len(new) // len(src_span))
        src_span = new

    def rec(i, chosen, span):
        if i == k:
            perm = _perm_from_generator_images(G, chosen)
            if len(set(perm.tolist())) == G.order:
                out.append(perm)
            return
        for v in candidates[i]:
            v = int(v)
            new_span = _closure_sets(mul_t, span, v)
            if len(new_span) == len(span) * src_growth[i]:
                rec(i + 1, chosen + [v], new_span)

    rec(0, [], {0})
    return out


def _closure_sets(mul_t, span, x):
    members = set(span)
    if x in members:
        return members
    frontier = [x]
    members.add(x)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            c = int(mul_t[a, b])
            if c not in members:
                members.add(c)
                frontier.append(c)
    return members
