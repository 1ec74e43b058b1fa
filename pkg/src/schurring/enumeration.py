"""Exhaustive enumeration of S-rings over a small abelian group, reduction
up to Cayley isomorphism, and the classification that isolates the
exceptional rings over C_p^3.

The enumerator backtracks over partitions: the class of the smallest
unassigned element is grown by ascending free choices (with skipped
candidates excluded, so every partition is generated exactly once).  Closing
a class forces its images under all coprime power maps as classes; a growing
class is committed to sigma-closure as soon as it contains both x and
sigma(x).  After every close the partition of the S-ring generated by the
completed classes is recomputed (Wielandt closure); each completed class
must be exactly one block of it, and every future class lies inside a single
block.  These prunes never reject a completion, so the enumeration is
complete; soundness is tested against an unpruned all-partitions oracle at
small orders.
"""

from __future__ import annotations

import numpy as np

from .errors import BoundExceeded
from .iso import (algebraic_automorphisms, automorphisms, is_induced,
                  stabilizer_orbits)
from .groups import GroupSpec, automorphism_group
from .sring import (SRing, conv_counts, detect_s_wreath, detect_tensor,
                    group_ring, sring_from_class_of, validate_sring)

DEFAULT_ENUM_BOUND = 32


def _power_maps(G):
    """Nontrivial coprime power maps x -> x^m, deduplicated."""
    e = G.exponent
    maps = {}
    for m in range(2, e):
        if np.gcd(m, G.order) == 1:
            pm = tuple(int(x) for x in G.power_map(m))
            maps[pm] = np.array(pm, dtype=np.int64)
    ident = tuple(range(G.order))
    maps.pop(ident, None)
    return list(maps.values())


class _Enumerator:
    def __init__(self, G):
        self.G = G
        self.n = G.order
        self.mul = G.mul_table
        self.sigmas = _power_maps(G)
        self.full_mask = (1 << self.n) - 1
        self.results = []

    # -- bitmask helpers --------------------------------------------------

    @staticmethod
    def _bits(mask):
        out = []
        while mask:
            b = mask & -mask
            out.append(b.bit_length() - 1)
            mask ^= b
        return out

    def _apply_map(self, sigma, mask):
        out = 0
        while mask:
            b = mask & -mask
            out |= 1 << int(sigma[b.bit_length() - 1])
            mask ^= b
        return out

    # -- search -------------------------------------------------------------

    def run(self):
        blocks = [1]  # {e}
        rest = self.full_mask ^ 1
        if rest:
            blocks.append(rest)
        self._recurse(1, [1], blocks)
        if self.n == 1:
            self.results = [group_ring(self.G)]
        return self.results

    def _recurse(self, assigned, completed, blocks):
        free = self.full_mask & ~assigned
        if not free:
            classes = [self._bits(m) for m in completed]
            self.results.append(validate_sring(self.G, classes))
            return
        g0_bit = free & -free
        block = next(b for b in blocks if b & g0_bit)
        self._grow(g0_bit, frozenset(), 0, g0_bit.bit_length() - 1,
                   assigned, completed, blocks, block)

    def _grow(self, S, committed, excluded, last, assigned, completed,
              blocks, block):
        self._try_close(S, assigned, completed, blocks)
        cands = block & ~S & ~excluded
        cands &= ~((1 << (last + 1)) - 1)       # only elements > last
        skipped = 0
        while cands:
            b = cands & -cands
            cands ^= b
            y = b.bit_length() - 1
            res = self._add_element(S, committed, y, block,
                                    excluded | skipped, assigned)
            if res is not None:
                S2, committed2 = res
                self._grow(S2, committed2, excluded | skipped, y,
                           assigned, completed, blocks, block)
            skipped |= b

    def _add_element(self, S, committed, y, block, excluded, assigned):
        """Add y and close under committed power maps; commit maps adaptively.
        Returns (mask, committed) or None if the closure escapes the block
        or hits excluded/assigned elements."""
        newS = S | (1 << y)
        committed = set(committed)
        changed = True
        while changed:
            changed = False
            for i, sigma in enumerate(self.sigmas):
                img = self._apply_map(sigma, newS)
                if i in committed:
                    if img | newS != newS:
                        newS |= img
                        changed = True
                elif img & newS:
                    committed.add(i)
                    changed = True
        if newS & ~block or newS & excluded or newS & assigned:
            return None
        return newS, frozenset(committed)

    def _try_close(self, S, assigned, completed, blocks):
        # forced classes: images of S under every power map.  The power maps
        # form a group and the growing class was committed whenever an image
        # met it, so distinct images are automatically pairwise disjoint.
        images = []
        for sigma in self.sigmas:
            img = self._apply_map(sigma, S)
            if img == S or img in images:
                continue
            if img & assigned:
                return
            images.append(img)
        new_classes = [S] + images
        all_completed = completed + new_classes

        if not self._fast_constancy(new_classes, all_completed):
            return
        refined = self._wielandt(all_completed, blocks, new_classes)
        if refined is None:
            return
        new_assigned = assigned
        for m in new_classes:
            new_assigned |= m
        self._recurse(new_assigned, all_completed, refined)

    def _fast_constancy(self, new_classes, all_completed):
        """Products involving a new class must be constant on every
        completed class (necessary condition; the remaining refinement
        happens in _wielandt and at the leaf)."""
        idx = {m: np.array(self._bits(m), dtype=np.int64)
               for m in all_completed}
        done = set()
        for P in new_classes:
            if P == 1:
                continue
            for Q in all_completed:
                if Q == 1:
                    continue
                key = (min(P, Q), max(P, Q))
                if key in done:
                    continue   # G abelian: conv(P,Q) = conv(Q,P)
                done.add(key)
                counts = np.bincount(
                    self.mul[np.ix_(idx[P], idx[Q])].ravel(),
                    minlength=self.n)
                for R in all_completed:
                    vals = counts[idx[R]]
                    if vals.max() != vals.min():
                        return False
        return True

    def _wielandt(self, completed, parent_blocks, new_classes):
        """Refine the block partition by every function known to lie in the
        generated ring: products of completed classes involving a new class,
        and block membership of power-map images.  Blocks stay unions of
        basic sets of any completion, so splitting a completed class proves
        there is no completion.  Returns the new block list or None."""
        n = self.n
        newmask = 0
        for m in new_classes:
            newmask |= m
        blocks = list(new_classes)
        for b in parent_blocks:
            rem = b & ~newmask
            if rem:
                blocks.append(rem)
        completed_set = set(completed)

        # products of old pairs are already constant on parent blocks, so
        # only pairs involving a new class can split anything
        prod_sig = [[] for _ in range(n)]
        done = set()
        for P in new_classes:
            I = np.array(self._bits(P), dtype=np.int64)
            for Q in completed:
                key = (min(P, Q), max(P, Q))
                if key in done:
                    continue
                done.add(key)
                J = np.array(self._bits(Q), dtype=np.int64)
                counts = np.bincount(self.mul[np.ix_(I, J)].ravel(),
                                     minlength=n)
                for x in range(n):
                    prod_sig[x].append(int(counts[x]))

        first = True
        block_of = [0] * n
        while True:
            for k, m in enumerate(blocks):
                for x in self._bits(m):
                    block_of[x] = k
            new_blocks = []
            split = False
            for m in blocks:
                groups = {}
                for x in self._bits(m):
                    key = tuple(block_of[sigma[x]] for sigma in self.sigmas)
                    if first:
                        key = (tuple(prod_sig[x]),) + key
                    prev = groups.get(key, 0)
                    groups[key] = prev | (1 << x)
                if len(groups) > 1:
                    split = True
                    if m in completed_set:
                        return None
                new_blocks.extend(groups.values())
            if not split and not first:
                return blocks
            if not split and first:
                first = False
                continue
            blocks = new_blocks
            first = False


def enumerate_srings(G, bound=DEFAULT_ENUM_BOUND):
    """Every S-ring over G exactly once (27 is supported explicitly)."""
    if G.order > bound and G.order != 27:
        raise BoundExceeded(
            f"group order {G.order} exceeds enumeration bound {bound}")
    if G.order > 32 and G.order != 27:
        raise BoundExceeded("enumeration beyond order 32 is not supported")
    rings = _Enumerator(G).run()
    rings.sort(key=lambda A: (A.rank, A.classes))
    return rings


def enumerate_srings_bruteforce(G):
    """Unpruned oracle: validate every partition of G (order <= 8)."""
    if G.order > 8:
        raise ValueError("oracle limited to order <= 8")
    from .errors import SRingError
    n = G.order
    out = []

    def partitions(elems):
        if not elems:
            yield []
            return
        first, rest = elems[0], elems[1:]
        for sub in partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
            yield [[first]] + sub

    for part in partitions(list(range(1, n))):
        try:
            out.append(validate_sring(G, [[0]] + part))
        except SRingError:
            pass
    out.sort(key=lambda A: (A.rank, A.classes))
    return out


# -- Cayley isomorphism reduction --------------------------------------------

def _relabel_rows(M, rank):
    """Relabel each row by first occurrence (class met first gets id 0)."""
    m, n = M.shape
    first = np.full((m, rank), n, dtype=np.int64)
    rows = np.repeat(np.arange(m), n)
    np.minimum.at(first, (rows, M.ravel()), np.tile(np.arange(n), m))
    order = np.argsort(first, axis=1, kind="stable")
    newid = np.empty_like(order)
    np.put_along_axis(newid, order,
                      np.broadcast_to(np.arange(rank), (m, rank)).copy(),
                      axis=1)
    return np.take_along_axis(newid, M, axis=1)


def up_to_cayley(rings, G, aut_limit=20000):
    """Orbit representatives of the Aut(G)-action; the representative is the
    lexicographically least relabeled partition in each orbit."""
    if not rings:
        return []
    autG = automorphism_group(G)
    if autG.order > aut_limit:
        raise BoundExceeded(f"|Aut(G)| = {autG.order} exceeds {aut_limit}")
    perms = np.array(autG.elements(limit=aut_limit), dtype=np.int64)
    inv_perms = np.argsort(perms, axis=1)
    reps = {}
    for A in rings:
        M = A.class_of[inv_perms]
        canon = _relabel_rows(M, A.rank)
        best = canon[np.lexsort(canon.T[::-1])[0]]
        key = (A.rank, bytes(best.astype(np.uint8)))
        if key not in reps:
            reps[key] = best
    out= [sring_from_class_of(G, best) for best in reps.values()]
    out.sort(key=lambda A: (A.rank, A.size_multiset(), A.classes))
    return out


def cayley_canonical_form(A, aut_limit=20000):
    """The lexicographically least relabeled partition in the Aut(G)-orbit."""
    autG = automorphism_group(A.group)
    perms = np.array(autG.elements(limit=aut_limit), dtype=np.int64)
    inv_perms = np.argsort(perms, axis=1)
    M = A.class_of[inv_perms]
    canon = _relabel_rows(M, A.rank)
    return tuple(int(x) for x in canon[np.lexsort(canon.T[::-1])[0]])


# -- classification over C_p^3 ----------------------------------------------

RANK2 = "RANK2"
TENSOR = "TENSOR"
S_WREATH_SMALL = "S_WREATH_SMALL"
EXCEPTIONAL = "EXCEPTIONAL"


def classify(A):
    """Classify an S-ring over C_p^3 (p in {2, 3}) as RANK2, TENSOR,
    S_WREATH_SMALL (proper S-wreath with |S| <= p), or EXCEPTIONAL."""
    G = A.group
    p = G.factors[0] if G.factors else 0
    if G.factors != (p, p, p) or p not in (2, 3):
        raise ValueError("classification applies to C_p^3 with p in {2, 3}")
    if A.rank == 2:
        return RANK2
    if detect_tensor(A):
        return TENSOR
    if any(S.size <= p for S in detect_s_wreath(A)):
        return S_WREATH_SMALL
    return EXCEPTIONAL


def table1_report(reps, bound=100):
    """Rows (name, rank, sizes, schurian, |Aut|, |Iso|/|Aut|, |Aut_alg|) for
    the EXCEPTIONAL representatives, sorted by rank then sizes.

    |Iso|/|Aut| is the number of induced algebraic automorphisms (each is
    realized by |Aut| isomorphisms).
    """
    rows = []
    for A in reps:
        if classify(A) != EXCEPTIONAL:
            continue
        schurian = set(stabilizer_orbits(A, bound=bound)) == set(A.classes)
        aut_order = automorphisms(A, bound=bound).order
        alg = algebraic_automorphisms(A)
        induced = sum(1 for m in alg if is_induced(m, bound=bound) is not None)
        rows.append({
            "rank": A.rank,
            "sizes": A.size_multiset(),
            "schurian": schurian,
            "aut_order": aut_order,
            "iso_over_aut": induced,
            "aut_alg_order": len(alg),
            "ring": A,
        })
    rows.sort(key=lambda r: (r["rank"], r["sizes"]))
    for i, r in enumerate(rows, start=1):
        r["name"] = f"A{i}"
    return rows
