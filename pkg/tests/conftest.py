import itertools

import numpy as np
import pytest

from schurring import (GroupSpec, group_ring, make_group, rank2_sring,
                       validate_sring)


@pytest.fixture(scope="session")
def c4():
    return make_group([4])


@pytest.fixture(scope="session")
def c22():
    return make_group([2, 2])


@pytest.fixture(scope="session")
def c224():
    return make_group([2, 2, 4])


@pytest.fixture(scope="session")
def c339():
    return make_group([3, 3, 9])


@pytest.fixture(scope="session")
def rank3_c4(c4):
    # {e}, {c^2}, {c, c^3}
    return validate_sring(c4, [[0], [2], [1, 3]])


def conv_oracle(G, X, Y):
    """Dict-based convolution count, independent of the numpy path."""
    counts = {}
    for x in X:
        for y in Y:
            z = G.index_of(tuple((a + b) % f for a, b, f in
                                 zip(G.residues_of(x), G.residues_of(y),
                                     G.factors)))
            counts[z] = counts.get(z, 0) + 1
    return counts


def closure_oracle(G, seed):
    """Subgroup closure by repeated multiplication over all pairs."""
    members = {0} | set(seed)
    while True:
        new = set()
        for a in members:
            for b in members:
                c = int(G.mul_table[a, b])
                if c not in members:
                    new.add(c)
        if not new:
            return members
        members |= new


def all_partitions(elems):
    """Every set partition of a list (for the unpruned S-ring oracle)."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for sub in all_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


_PERM_CACHE = {}


def _all_perms(n):
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = np.array(list(itertools.permutations(range(n))),
                                  dtype=np.int64)
    return _PERM_CACHE[n]


def scan_iso_and_aut_counts(CA, CB):
    """(|Iso(A,B)|, |Aut under CB moved to CA|) by scanning all |G|!
    bijections.  For CA == CB the second count is |Aut(A)|."""
    n = CA.shape[0]
    r = int(CA.max()) + 1
    if int(CB.max()) + 1 != r or CB.shape[0] != n:
        return 0, 0
    iso = 0
    aut = 0
    perms = _all_perms(n)
    for chunk in np.array_split(perms, max(1, len(perms) // 2000)):
        D = CB[chunk[:, :, None], chunk[:, None, :]]
        aut += int((D == CA[None, :, :]).all(axis=(1, 2)).sum())
        keys = CA[None, :, :] * r + D
        flat = np.sort(keys.reshape(len(chunk), -1), axis=1)
        distinct = (np.diff(flat, axis=1) != 0).sum(axis=1) + 1
        iso += int((distinct == r).sum())
    return iso, aut


def perm_matrix_iso_count(CA, CB):
    """|Iso| oracle: scan all |G|! bijections for color isomorphisms."""
    return scan_iso_and_aut_counts(CA, CB)[0]


def aut_order_oracle(C):
    """|Aut| oracle: scan all |G|! bijections for color automorphisms."""
    return scan_iso_and_aut_counts(C, C)[1]
