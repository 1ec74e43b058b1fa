"""Permutation groups with a stabilizer chain on the natural base 0..n-1.

Permutations are numpy index arrays (p[i] = image of i); ``compose(p, q)``
applies p first, then q.  The chain keeps, for every level l, the orbit and
transversal of the point l under the subgroup fixing 0..l-1 pointwise, so
exact orders and pointwise prefix stabilizers fall out directly.  Generators
are inserted deterministically and Schreier generators are sifted until the
chain is quiescent, which makes every reported order exact.
"""

from __future__ import annotations

import numpy as np


def identity_perm(n):
    return np.arange(n, dtype=np.int64)


def compose(p, q):
    """Apply p, then q."""
    return q[p]


def inverse_perm(p):
    out = np.empty_like(p)
    out[p] = np.arange(len(p), dtype=p.dtype)
    return out


def is_identity(p):
    return bool(np.array_equal(p, np.arange(len(p))))


def perm_order(p):
    n = len(p)
    seen = np.zeros(n, dtype=bool)
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = int(p[j])
            length += 1
        out = out * length // np.gcd(out, length)
    return int(out)


def min_moved(p):
    diff = np.flatnonzero(p != np.arange(len(p)))
    return int(diff[0]) if len(diff) else None


class PermGroup:
    """Permutation group on 0..degree-1 with exact order."""

    def __init__(self, degree, generators=()):
        self.degree = degree
        self._gens = []          # strong generators, each != identity
        self._levels = {}        # level -> {point: transversal perm u, u[level] = point}
        for g in generators:
            self.add_generator(g)

    # -- chain bookkeeping -------------------------------------------------

    def _level_gens(self, lev):
        return [g for g in self._gens if min_moved(g) >= lev]

    def _orbit_transversal(self, lev):
        gens = self._level_gens(lev)
        trans = {lev: identity_perm(self.degree)}
        frontier = [lev]
        while frontier:
            q = frontier.pop(0)
            uq = trans[q]
            for g in gens:
                r = int(g[q])
                if r not in trans:
                    trans[r] = compose(uq, g)
                    frontier.append(r)
        return trans

    def _recompute(self):
        self._levels = {}
        for lev in range(self.degree):
            trans = self._orbit_transversal(lev)
            if len(trans) > 1:
                self._levels[lev] = trans
            else:
                self._levels[lev] = trans

    def _sift(self, p):
        """Return (residue, level) after dividing out transversal reps; the
        residue is the identity iff p is in the group."""
        p = np.asarray(p, dtype=np.int64)
        for lev in range(self.degree):
            img = int(p[lev])
            if img == lev:
                continue
            trans = self._levels.get(lev)
            if trans is None or img not in trans:
                return p, lev
            p = compose(p, inverse_perm(trans[img]))
        return p, self.degree

    def add_generator(self, p):
        p = np.asarray(p, dtype=np.int64).copy()
        if len(p) != self.degree:
            raise ValueError("degree mismatch")
        if not self._levels:
            self._recompute()
        res, lev = self._sift(p)
        if is_identity(res):
            return False
        self._gens.append(res)
        self._complete()
        return True

    def _complete(self):
        """Sift Schreier generators until the chain is quiescent."""
        while True:
            self._recompute()
            inserted = False
            for lev in range(self.degree):
                trans = self._levels[lev]
                if len(trans) == 1:
                    continue
                gens = self._level_gens(lev)
                for q, uq in sorted(trans.items()):
                    for g in gens:
                        r = int(g[q])
                        sg = compose(compose(uq, g), inverse_perm(trans[r]))
                        res, slev = self._sift(sg)
                        if not is_identity(res):
                            self._gens.append(res)
                            inserted = True
                            break
                    if inserted:
                        break
                if inserted:
                    break
            if not inserted:
                return

    # -- queries -------------------------------------------------------------

    @property
    def order(self):
        if not self._levels:
            self._recompute()
        n = 1
        for trans in self._levels.values():
            n *= len(trans)
        return n

    @property
    def generators(self):
        return list(self._gens)

    def __contains__(self, p):
        if not self._levels:
            self._recompute()
        res, _ = self._sift(np.asarray(p, dtype=np.int64))
        return is_identity(res)

    def prefix_stabilizer_gens(self, lev):
        """Generators of the pointwise stabilizer of 0..lev-1."""
        if not self._levels:
            self._recompute()
        return self._level_gens(lev)

    def level_transversal(self, lev):
        if not self._levels:
            self._recompute()
        return self._levels[lev]

    def orbit(self, point, gens=None):
        gens = self._gens if gens is None else gens
        seen = {int(point)}
        frontier = [int(point)]
        while frontier:
            q = frontier.pop()
            for g in gens:
                r = int(g[q])
                if r not in seen:
                    seen.add(r)
                    frontier.append(r)
        return seen

    def elements(self, limit=10 ** 6):
        """All group elements (requires order <= limit)."""
        if self.order > limit:
            raise ValueError(f"group order {self.order} exceeds limit {limit}")
        if not self._levels:
            self._recompute()
        outs = [identity_perm(self.degree)]
        for lev in reversed(range(self.degree)):
            trans = self._levels[lev]
            if len(trans) == 1:
                continue
            outs = [compose(h, u) for h in outs for u in trans.values()]
        return outs

    def random_element(self, rng):
        if not self._levels:
            self._recompute()
        p = identity_perm(self.degree)
        for trans in self._levels.values():
            reps = list(trans.values())
            p = compose(p, reps[rng.randrange(len(reps))])
        return p


def right_translation(G, k):
    """The permutation x -> x*k of element indices of a GroupSpec."""
    return G.mul_table[:, k].astype(np.int64).copy()


def right_regular_generators(G):
    """Right translations by the canonical generators of G."""
    out = []
    k = len(G.factors)
    for i in range(k):
        gen = G.index_of(tuple(1 if j == i else 0 for j in range(k)))
        out.append(right_translation(G, gen))
    if not out:
        out.append(identity_perm(G.order))
    return out


def right_regular_group(G):
    return PermGroup(G.order, right_regular_generators(G))


def is_right_translation(G, p):
    """Return k if p is x -> x*k, else None."""
    k = int(p[0])
    if np.array_equal(p, G.mul_table[:, k]):
        return k
    return None
