"""Schurity, normality, induced algebraic automorphisms, and separability
verdicts.

Separability is always reported relative to an explicit list of target
rings; ``exhaustive_targets`` builds the list for the class of abelian
groups at the source's order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import GroupSpec
from .iso import (algebraic_automorphisms, algebraic_isomorphisms,
                  automorphisms, color_matrix, is_induced,
                  stabilizer_orbits, DEFAULT_DEGREE_BOUND)
from .perms import is_right_translation
from .sring import SRing


def is_schurian(A, bound=DEFAULT_DEGREE_BOUND, seeds=()):
    """Whether the basic sets are the orbits of Aut(A)_e.

    Returns (flag, orbit partition of Aut(A)_e).
    """
    orbits = stabilizer_orbits(A, bound=bound, seeds=seeds)
    return set(orbits) == set(A.classes), orbits


def is_normal(A, bound=DEFAULT_DEGREE_BOUND):
    """Whether G_right is normal in Aut(A)."""
    G = A.group
    aut = automorphisms(A, bound=bound)
    k = len(G.factors)
    trans = [G.mul_table[:, G.index_of(tuple(1 if j == i else 0
                                             for j in range(k)))]
             for i in range(k)]
    for f in aut.generators:
        f = np.asarray(f, dtype=np.int64)
        finv = np.empty_like(f)
        finv[f] = np.arange(len(f))
        for t in trans:
            conj = f[np.asarray(t, dtype=np.int64)[finv]]
            if is_right_translation(G, conj) is None:
                return False
    return True


def aut_alg_induced(A, bound=DEFAULT_DEGREE_BOUND, cross_check=None):
    """Aut_alg(A)_0: the algebraic automorphisms induced by combinatorial
    isomorphisms.

    When ``cross_check`` is true (default: automatic for |G| <= 8) the
    cardinality is verified against Eq.-style direct counting
    |Iso(A)| / |Aut(A)| with |Iso(A)| from a full |G|!-scan.
    """
    all_maps = algebraic_automorphisms(A)
    induced = [m for m in all_maps if is_induced(m, bound=bound) is not None]
    if cross_check is None:
        cross_check = A.group.order <= 8
    if cross_check:
        iso_count = count_isomorphisms_bruteforce(A, A)
        aut_order = automorphisms(A, bound=bound).order
        assert iso_count % aut_order == 0
        assert iso_count // aut_order == len(induced), (
            "Eq. (3) cross-check failed")
    return induced


def count_isomorphisms_bruteforce(A, B):
    """|Iso(A, B)| by scanning all |G|! bijections (oracle; |G| <= 8)."""
    import itertools
    n = A.group.order
    if n > 8:
        raise ValueError("brute-force scan is limited to order <= 8")
    if B.group.order != n or A.rank != B.rank:
        return 0
    CA = color_matrix(A)
    CB = color_matrix(B)
    r = A.rank
    count = 0
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    # D[p] = CB moved back by p: D[g, h] = CB[p[g], p[h]]
    for chunk in np.array_split(perms, max(1, len(perms) // 2000)):
        D = CB[chunk[:, :, None], chunk[:, None, :]]
        keys = CA[None, :, :] * r + D
        flat = keys.reshape(len(chunk), -1)
        srt = np.sort(flat, axis=1)
        distinct = (np.diff(srt, axis=1) != 0).sum(axis=1) + 1
        count += int((distinct == r).sum())
    return count


def enumerate_abelian_groups(n):
    """One GroupSpec per isomorphism class of abelian groups of order n,
    in invariant-factor form."""
    if n > 4096:
        raise ValueError("order too large")
    if n == 1:
        return [GroupSpec([])]
    from .groups import _prime_factors
    factorization = {}
    m = n
    for p in _prime_factors(n):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        factorization[p] = e

    def partitions(k):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield (first,) + rest

    per_prime = {p: list(partitions(e)) for p, e in factorization.items()}
    import itertools
    out = []
    for combo in itertools.product(*per_prime.values()):
        k = max(len(part) for part in combo)
        invs = []
        for i in range(k):
            d = 1
            for p, part in zip(per_prime.keys(), combo):
                if i < len(part):
                    d *= p ** part[i]
            invs.append(d)
        out.append(GroupSpec(sorted(invs)))
    out.sort(key=lambda g: g.factors)
    return out


@dataclass
class SeparabilityReport:
    ring: SRing
    verdict: str                       # "SEPARABLE" | "NON_SEPARABLE"
    witness: tuple | None              # (target ring, AlgMap) or None
    targets_mode: str                  # "explicit" | "exhaustive"
    counts: dict = field(default_factory=dict)

    @property
    def separable(self):
        return self.verdict == "SEPARABLE"


def separability_verdict(A, targets, targets_mode="explicit",
                         bound=DEFAULT_DEGREE_BOUND, with_counts=True):
    """Check that every algebraic isomorphism from A to each target is
    induced by a combinatorial isomorphism.

    Targets must live over groups of the same order (algebraic isomorphisms
    force |G| = |G'|).  Returns the first counterexample if any.
    """
    targets = sorted(targets, key=lambda B: (B.group.factors, B.classes))
    witness = None
    for B in targets:
        if B.group.order != A.group.order:
            raise ValueError("target over a group of different order")
        for m in algebraic_isomorphisms(A, B):
            if is_induced(m, bound=bound) is None:
                witness = (B, m)
                break
        if witness:
            break
    counts = {}
    if with_counts:
        all_maps = algebraic_automorphisms(A)
        induced = [m for m in all_maps
                   if is_induced(m, bound=bound) is not None]
        counts = {
            "aut": automorphisms(A, bound=bound).order,
            "aut_alg": len(all_maps),
            "aut_alg_induced": len(induced),
        }
    verdict = "NON_SEPARABLE" if witness else "SEPARABLE"
    return SeparabilityReport(A, verdict, witness, targets_mode, counts)


def exhaustive_targets(A, bound=None):
    """All S-rings over all abelian groups of order |G| (up to nothing:
    every ring over every group), for exhaustive-mode separability."""
    from .enumeration import enumerate_srings
    out = []
    for G in enumerate_abelian_groups(A.group.order):
        out.extend(enumerate_srings(G))
    return out
