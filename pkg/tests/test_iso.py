from math import gcd

import numpy as np
import pytest

from schurring import (AlgMap, BoundExceeded, algebraic_automorphisms,
                       algebraic_isomorphisms, automorphisms,
                       color_isomorphisms, color_matrix, cyclotomic,
                       extend_to_sections, extend_to_sets, fusion,
                       generated_subgroup, group_ring,
                       hom_from_generator_images, identity_alg_map,
                       induced_algebraic, is_algebraic_iso, is_induced,
                       make_group, radical, rank2_sring, stabilizer_orbits,
                       validate_sring, wl_refine, witness_p2, witness_p3)
from schurring.perms import right_translation
from schurring.sring import is_a_set

from conftest import aut_order_oracle, perm_matrix_iso_count


def test_color_matrix_properties(c4):
    ZG = group_ring(c4)
    C = color_matrix(ZG)
    n = 4
    assert (C.diagonal() == 0).all()
    # each color class has uniform out-degree |X|
    for A in (ZG, rank2_sring(c4)):
        C = color_matrix(A)
        for k, cls in enumerate(A.classes):
            assert ((C == k).sum(axis=1) == len(cls)).all()
    # color(h, g) is the inverse class of color(g, h)
    C = color_matrix(ZG)
    for g in range(n):
        for h in range(n):
            assert C[h, g] == ZG.inverse_class(int(C[g, h]))


def test_wl_stability_of_validated_rings(c4, c22, rank3_c4):
    rings = [group_ring(c4), rank2_sring(c4), rank3_c4, group_ring(c22)]
    A, phi = witness_p2()
    rings += [A, fusion(A, [phi])]
    for A in rings:
        C = color_matrix(A)
        assert np.array_equal(wl_refine(C), C)


def test_wl_all_ones_refines_to_two():
    W = wl_refine(np.ones((4, 4), dtype=int))
    assert int(W.max()) + 1 == 2
    assert (W.diagonal() == W[0, 0]).all()


def test_wl_splits_non_coherent():
    # a path-graph coloring on 3 points is not stable
    C = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    W = wl_refine(C)
    assert int(W.max()) + 1 >= 3


def test_automorphisms_group_ring_and_rank2():
    for factors in ([4], [2, 2], [5]):
        G = make_group(factors)
        assert automorphisms(group_ring(G)).order == G.order
        expect = 1
        for k in range(2, G.order + 1):
            expect *= k
        assert automorphisms(rank2_sring(G)).order == expect


def test_automorphism_bound():
    with pytest.raises(BoundExceeded):
        automorphisms(rank2_sring(make_group([4])), bound=3)


def test_aut_orders_match_bruteforce_order_le_6():
    # quick oracle spot checks (the full order-8 sweep is in acceptance)
    from schurring import enumerate_srings
    for factors in ([4], [2, 2], [6], [2, 3]):
        G = make_group(factors)
        for A in enumerate_srings(G):
            assert automorphisms(A).order == aut_order_oracle(color_matrix(A))


def test_algebraic_automorphisms_zc_n():
    # Aut_alg(ZC_n) = maps induced by x -> x^m, gcd(m, n) = 1
    for n in (4, 5, 8):
        G = make_group([n])
        ZG = group_ring(G)
        maps = algebraic_automorphisms(ZG)
        expected = set()
        for m in range(1, n):
            if gcd(m, n) == 1:
                pm = G.power_map(m)
                expected.add(tuple(int(ZG.class_of[pm[cls[0]]])
                                   for cls in ZG.classes))
        assert {m.class_map for m in maps} == expected


def test_algebraic_automorphisms_rank2(c4):
    assert len(algebraic_automorphisms(rank2_sring(c4))) == 1


def test_algebraic_automorphisms_form_group():
    A, _ = witness_p2()
    maps = algebraic_automorphisms(A)
    keys = {m.class_map for m in maps}
    for m1 in maps:
        assert m1.inverse().class_map in keys
        for m2 in maps:
            assert m1.compose(m2).class_map in keys


def test_witness_p2_phi_found_by_search():
    A, phi = witness_p2()
    maps = algebraic_automorphisms(A)
    assert phi.class_map in {m.class_map for m in maps}


def test_is_algebraic_iso_violations():
    A, phi = witness_p2()
    ok, viol = is_algebraic_iso(A, A, phi.class_map)
    assert ok and viol is None
    # swapping classes of unequal size fails at the size check
    cm = list(range(A.rank))
    i2 = next(k for k in range(A.rank) if len(A.classes[k]) == 2)
    cm[0], cm[i2] = cm[i2], cm[0]
    ok, viol = is_algebraic_iso(A, A, cm)
    assert not ok and viol is not None


def test_extend_to_sets_and_sections():
    A, phi = witness_p2()
    G = A.group
    assert extend_to_sets(identity_alg_map(A), [0]) == (0,)
    # <X^phi> = <X>^phi and rad(X^phi) = rad(X)^phi for all classes
    for k in range(A.rank):
        X = A.classes[k]
        Ximg = extend_to_sets(phi, X)
        genX = generated_subgroup(G, [G.residues_of(x) for x in X])
        genI = generated_subgroup(G, [G.residues_of(x) for x in Ximg])
        assert extend_to_sets(phi, genX.members) == genI.members
        radX = radical(G, X)
        radI = radical(G, Ximg)
        assert extend_to_sets(phi, radX.members) == radI.members
    with pytest.raises(ValueError):
        extend_to_sets(phi, [G.index_of((0, 0, 1))])  # not an A-set
    # sections map to sections
    from schurring import quotient_section
    U = generated_subgroup(G, [(1, 0, 0), (0, 0, 1)])
    L = generated_subgroup(G, [(1, 0, 0)])
    S = quotient_section(G, U, L)
    S2 = extend_to_sections(phi, S)
    assert S2.quotient.order == S.quotient.order


def test_induced_algebraic_translations_and_aut():
    A, _ = witness_p2()
    G = A.group
    # right translations induce the identity algebraic map
    for k in (1, 5, 10):
        m = induced_algebraic(right_translation(G, k), A, A)
        assert m.is_identity
    # any automorphism of the ring induces the identity map
    aut = automorphisms(A)
    for p in aut.generators:
        assert induced_algebraic(p, A, A).is_identity


def test_induced_algebraic_on_cyclotomic_c8():
    G = make_group([8])
    f = hom_from_generator_images(G, [(3,)])
    A = cyclotomic(G, [f.as_array()])
    # x -> x^5 is a group automorphism preserving the scheme
    g = hom_from_generator_images(G, [(5,)])
    m = induced_algebraic(g.as_array(), A, A)
    # the induced class map permutes classes as g permutes sets
    for k, cls in enumerate(A.classes):
        img = tuple(sorted(int(g.as_array()[x]) for x in cls))
        assert A.classes[m.class_map[k]] == img


def test_induced_algebraic_rejects_non_isomorphism(c4):
    A = validate_sring(c4, [[0], [2], [1, 3]])
    with pytest.raises(ValueError):
        induced_algebraic(np.array([0, 1, 3, 2]), A, group_ring(c4))


def test_is_induced_identity_and_witnesses():
    A, phi = witness_p2()
    w = is_induced(identity_alg_map(A))
    assert w is not None
    assert is_induced(phi) is None
    # the other nontrivial induced ones exist: check phi^2 = id is induced
    sq = AlgMap(A, A, tuple(phi.class_map[j] for j in phi.class_map))
    assert is_induced(sq) is not None


def test_is_induced_rejects_non_algebraic(c4):
    ZG = group_ring(c4)
    with pytest.raises(ValueError):
        is_induced(AlgMap(ZG, ZG, (0, 2, 1, 3)))


def test_color_isomorphisms_counts(c4):
    ZG = group_ring(c4)
    w, count = color_isomorphisms(ZG, ZG)
    assert w is not None
    # |Iso| = |Aut| * |Aut_alg_0|; cross-check against the full scan
    assert count == perm_matrix_iso_count(color_matrix(ZG), color_matrix(ZG))
    # rank-2: every bijection is an isomorphism
    R2 = rank2_sring(c4)
    w2, count2 = color_isomorphisms(R2, R2)
    assert count2 == 24
    # different rank: none
    assert color_isomorphisms(ZG, R2) == (None, 0)


def test_color_isomorphisms_between_groups():
    # ZC4 and Z(C2^2) have equal rank and sizes but are not isomorphic
    Z4 = group_ring(make_group([4]))
    Z22 = group_ring(make_group([2, 2]))
    w, count = color_isomorphisms(Z4, Z22)
    assert w is None and count == 0


def test_stabilizer_orbits_elementary(c4):
    assert stabilizer_orbits(group_ring(c4)) == ((0,), (1,), (2,), (3,))
    assert stabilizer_orbits(rank2_sring(c4)) == ((0,), (1, 2, 3))


def test_eq1_on_schurian_instances():
    # N_Aut(A)(G_right)_e = Aut(A) n Aut(G) as sets, order <= 16
    from schurring.groups import _all_automorphism_perms
    from schurring.perms import compose, inverse_perm, is_right_translation

    instances = []
    c4 = make_group([4])
    instances.append(group_ring(c4))
    instances.append(rank2_sring(c4))
    instances.append(validate_sring(c4, [[0], [2], [1, 3]]))
    A, _ = witness_p2()
    instances.append(A)
    G8 = make_group([8])
    f = hom_from_generator_images(G8, [(3,)])
    instances.append(cyclotomic(G8, [f.as_array()]))

    for A in instances:
        G = A.group
        C = color_matrix(A)
        aut = automorphisms(A)
        stab_gens = aut.prefix_stabilizer_gens(1)
        from schurring import PermGroup
        stab = PermGroup(G.order, stab_gens)
        if stab.order > 5000:
            continue
        k = len(G.factors)
        trans = [right_translation(G, G.index_of(
            tuple(1 if j == i else 0 for j in range(k)))) for i in range(k)]
        lhs = set()
        for p in stab.elements():
            pinv = inverse_perm(p)
            if all(is_right_translation(G, compose(compose(pinv, t), p))
                   is not None for t in trans):
                lhs.add(tuple(p))
        rhs = {tuple(p) for p in _all_automorphism_perms(G)
               if np.array_equal(C[np.ix_(p, p)], C)}
        assert lhs == rhs


def test_automorphisms_contain_g_right():
    A, _ = witness_p2()
    G = A.group
    aut = automorphisms(A)
    for kgen in range(1, 4):
        assert right_translation(G, kgen) in aut
