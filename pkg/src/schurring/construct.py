"""S-ring constructors: cyclotomic and orbit rings, tensor / wreath /
generalized wreath products, algebraic fusion, the wreath lifting of a
non-induced algebraic automorphism, and the two explicit witness rings over
C2 x C2 x C4 and C3 x C3 x C9.

Every constructor validates its output before returning it.
"""

from __future__ import annotations

import numpy as np

from .errors import (IncompatibleOnSection, MapNotAlgebraicAutomorphism,
                     QuotientMismatch, RightRegularNotContained)
from .groups import (GroupAutomorphism, GroupSpec, Subgroup,
                     hom_from_generator_images, is_homomorphism,
                     quotient_section, subgroup_from_indices,
                     trivial_subgroup, full_subgroup)
from .iso import AlgMap, close_alg_maps, is_algebraic_iso
from .perms import PermGroup, right_regular_generators
from .sring import SRing, validate_sring, group_ring


def _perm_list(K):
    """Normalize an automorphism collection to a list of index arrays."""
    if isinstance(K, PermGroup):
        return [np.asarray(g, dtype=np.int64) for g in K.generators]
    out = []
    for f in K:
        if isinstance(f, GroupAutomorphism):
            out.append(f.as_array())
        else:
            out.append(np.asarray(f, dtype=np.int64))
    return out


def _orbits_of_perms(n, perms):
    """Orbit partition of <perms> acting on 0..n-1."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(n):
            a, b = find(i), find(int(p[i]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return [sorted(b) for b in blocks.values()]


def cyclotomic(G, K):
    """cyc(K, G): basic sets are the orbits of K <= Aut(G) on G."""
    perms = _perm_list(K)
    for p in perms:
        if len(p) != G.order or not is_homomorphism(G, p) \
                or len(set(p.tolist())) != G.order:
            raise ValueError("generator is not an automorphism of G")
    orbits = _orbits_of_perms(G.order, perms)
    return validate_sring(G, orbits)


def orbit_sring(G, K):
    """V(K, G) for G_right <= K <= Sym(G): basic sets are the orbits of the
    stabilizer K_e."""
    if not isinstance(K, PermGroup):
        K = PermGroup(G.order, _perm_list(K))
    for t in right_regular_generators(G):
        if t not in K:
            raise RightRegularNotContained(
                "K does not contain the right regular group")
    # the chain is on the natural base, so level-1 prefix gens generate K_e
    stab_gens = K.prefix_stabilizer_gens(1)
    orbits = _orbits_of_perms(G.order, stab_gens)
    return validate_sring(G, orbits)


def tensor(A1, A2):
    """Tensor product: the S-ring over G1 x G2 with classes X1 x X2."""
    G = GroupSpec(A1.group.factors + A2.group.factors)
    n2 = A2.group.order
    classes = []
    for X1 in A1.classes:
        for X2 in A2.classes:
            classes.append([x1 * n2 + x2 for x1 in X1 for x2 in X2])
    return validate_sring(G, classes)


def _match_spec(spec_a, spec_b, what):
    if spec_a != spec_b:
        raise QuotientMismatch(
            f"{what}: expected group {list(spec_b.factors)}, "
            f"got {list(spec_a.factors)}")


def wreath(A_L, A_Q, G, L):
    """A_L wr A_Q over G: A_L lives on the subgroup L, A_Q on the quotient
    G/L (over the canonical quotient spec of ``quotient_section``)."""
    sec_L = quotient_section(G, L, trivial_subgroup(G))
    sec_Q = quotient_section(G, full_subgroup(G), L)
    _match_spec(A_L.group, sec_L.quotient, "inner ring")
    _match_spec(A_Q.group, sec_Q.quotient, "quotient ring")
    lift_L = _lift_map(sec_L)
    lift_Q = _lift_map(sec_Q)
    # lift_L[q] is a singleton coset (trivial lower subgroup)
    classes = [[lift_L[q][0] for q in cls] for cls in A_L.classes]
    for cls in A_Q.classes:
        if cls == (0,):
            continue
        classes.append(sorted(g for q in cls for g in lift_Q[q]))
    return validate_sring(G, classes)


def _lift_map(section):
    """quotient index -> list of G-elements in the corresponding coset."""
    out = {}
    for g, q in enumerate(section.projection):
        if q >= 0:
            out.setdefault(int(q), []).append(g)
    return out


def s_wreath(A_U, A_Q, S):
    """Generalized wreath product A_U wr_S A_{G/L} along the section
    S = U/L.

    A_U lives on U (canonical spec of U/{e}), A_Q on G/L; they must induce
    the same partition on the common section U/L.
    """
    G = S.group
    sec_U = quotient_section(G, S.upper, trivial_subgroup(G))
    sec_Q = quotient_section(G, full_subgroup(G), S.lower)
    _match_spec(A_U.group, sec_U.quotient, "upper ring")
    _match_spec(A_Q.group, sec_Q.quotient, "quotient ring")
    lift_U = _lift_map(sec_U)
    lift_Q = _lift_map(sec_Q)
    # lift_U[q] is a singleton (the lower subgroup there is trivial)
    inner = [sorted(lift_U[q][0] for q in cls) for cls in A_U.classes]
    upper_set = set(S.upper.members)
    outer = []
    for cls in A_Q.classes:
        lifted = sorted(g for q in cls for g in lift_Q[q])
        if set(lifted) <= upper_set:
            continue
        if set(lifted) & upper_set:
            raise IncompatibleOnSection(
                "a quotient class straddles the upper subgroup")
        outer.append(lifted)
    # compatibility: (A_U)_S must equal (A_Q)_{U/L} on the section
    proj = S.projection
    part_U = {tuple(sorted({proj[g] for g in cls})) for cls in inner}
    part_Q = set()
    for cls in A_Q.classes:
        lifted = [g for q in cls for g in lift_Q[q]]
        if set(lifted) <= upper_set:
            part_Q.add(tuple(sorted({proj[g] for g in lifted})))
    if part_U != part_Q:
        raise IncompatibleOnSection(
            "inner and quotient rings disagree on the section U/L")
    return validate_sring(G, inner + outer)


def fusion(A, maps):
    """Algebraic fusion A^Phi: classes are unions over the closure of the
    given algebraic automorphisms."""
    for m in maps:
        if m.source is not A and m.source != A:
            raise MapNotAlgebraicAutomorphism("map is not defined on A")
        ok, viol = is_algebraic_iso(A, A, m.class_map)
        if not ok:
            raise MapNotAlgebraicAutomorphism(
                f"tensor equality fails at {viol}")
    closure = close_alg_maps(list(maps)) or [
        AlgMap(A, A, tuple(range(A.rank)))]
    merged = {}
    for i in range(A.rank):
        orbit = tuple(sorted({m.class_map[i] for m in closure}))
        merged[orbit] = None
    classes = []
    for orbit in merged:
        classes.append(sorted(x for k in orbit for x in A.classes[k]))
    return validate_sring(A.group, classes)


def nonsep_lift(B, phi, G, H):
    """Lift a non-induced algebraic automorphism through a wreath product.

    Builds A = B wr Z(G/H) and the algebraic automorphism psi acting as phi
    on the classes inside H and as the identity outside; psi is re-verified
    against the full structure-constant tensor.
    """
    ok, viol = is_algebraic_iso(B, B, phi.class_map)
    if not ok:
        raise MapNotAlgebraicAutomorphism(f"tensor equality fails at {viol}")
    sec_Q = quotient_section(G, full_subgroup(G), H)
    A = wreath(B, group_ring(sec_Q.quotient), G, H)
    sec_H = quotient_section(G, H, trivial_subgroup(G))
    lift_H = _lift_map(sec_H)
    # identify B's classes inside A through the H <-> spec identification
    index_of_class = {cls: k for k, cls in enumerate(A.classes)}
    class_map = list(range(A.rank))
    for bk, cls in enumerate(B.classes):
        lifted = tuple(sorted(lift_H[q][0] for q in cls))
        img = tuple(sorted(lift_H[q][0] for q in B.classes[phi.class_map[bk]]))
        class_map[index_of_class[lifted]] = index_of_class[img]
    psi = AlgMap(A, A, tuple(class_map))
    ok, viol = is_algebraic_iso(A, A, psi.class_map)
    assert ok, f"lifted map fails tensor equality at {viol} (bug)"
    return A, psi


# -- the explicit witnesses over C_p x C_p x C_{p^2} -------------------------

def witness_p2():
    """The cyclotomic ring over C2 x C2 x C4 together with the algebraic
    automorphism that swaps {c1} with {a c1} and the Y-classes with the
    Z-classes."""
    G = GroupSpec([2, 2, 4])
    a, b, c = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    f = hom_from_generator_images(G, [a, (1, 1, 2), (1, 0, 1)])
    assert f is not None
    arr = f.as_array()
    assert np.array_equal(arr[arr], np.arange(16)), "f must have order 2"
    A = cyclotomic(G, [f])
    assert A.rank == 10

    def cls_index(elem):
        return int(A.class_of[G.index_of(elem)])

    swaps = {
        cls_index((0, 0, 2)): cls_index((1, 0, 2)),   # T2 <-> T3
        cls_index((0, 1, 0)): cls_index((0, 1, 1)),   # Y1 <-> Z1
        cls_index((1, 1, 0)): cls_index((1, 1, 1)),   # Y2 <-> Z2
    }
    class_map = list(range(A.rank))
    for i, j in swaps.items():
        class_map[i], class_map[j] = j, i
    phi = AlgMap(A, A, tuple(class_map))
    ok, viol = is_algebraic_iso(A, A, phi.class_map)
    assert ok, f"phi fails tensor equality at {viol}"
    return A, phi


def witness_p3():
    """The cyclotomic ring over C3 x C3 x C9 for K = <f1, f2, f3> together
    with the algebraic automorphism swapping the two mixed order-3 classes
    {a c1, a^-1 c1^-1} and {a^-1 c1, a c1^-1}."""
    G = GroupSpec([3, 3, 9])
    f1 = hom_from_generator_images(G, [(2, 0, 0), (0, 2, 0), (0, 0, 8)])
    f2 = hom_from_generator_images(G, [(1, 0, 0), (0, 1, 0), (0, 0, 4)])
    f3 = hom_from_generator_images(G, [(1, 0, 0), (1, 1, 0), (0, 0, 1)])
    assert f1 is not None and f2 is not None and f3 is not None
    K = PermGroup(G.order, [f.as_array() for f in (f1, f2, f3)])
    assert K.order == 18, f"|K| = {K.order}, expected 18"
    A = cyclotomic(G, K)
    # 13 basic sets: 5 of the T-family, 3 X, 3 Y, 2 Z
    assert A.rank == 13

    def cls_index(elem):
        return int(A.class_of[G.index_of(elem)])

    t3 = cls_index((1, 0, 3))   # a c1
    t4 = cls_index((2, 0, 3))   # a^-1 c1
    class_map = list(range(A.rank))
    class_map[t3], class_map[t4] = t4, t3
    phi = AlgMap(A, A, tuple(class_map))
    ok, viol = is_algebraic_iso(A, A, phi.class_map)
    assert ok, f"phi fails tensor equality at {viol}"
    return A, phi
