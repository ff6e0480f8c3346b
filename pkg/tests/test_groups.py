import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from liftgroups.errors import InvalidSpec, NotNormal, OrderBoundExceeded
from liftgroups.groups import (Alternating, Cyclic, Dihedral, FiniteGroup, Metacyclic, Product,
                               Quaternion8, Symmetric, all_subgroups, build_group,
                               commutator_subgroup, direct_product, find_isomorphism,
                               is_isomorphic, normal_closure, normal_subgroups, quotient, relabel,
                               sign_map, subgroup_as_group, verify_axioms)


def perm_order(p):
    k, q = 1, p
    ident = tuple(range(len(p)))
    while q != ident:
        q = tuple(p[x] for x in q)
        k += 1
    return k


def test_trivial_group_table():
    g = build_group(Cyclic(1))
    assert g.order == 1 and g.mul == ((0,),)


@pytest.mark.parametrize("n", [3, 4])
def test_symmetric_element_orders_match_permutation_count(n):
    g = build_group(Symmetric(n))
    brute = Counter(perm_order(p) for p in itertools.permutations(range(n)))
    assert Counter(g.element_orders) == brute


def test_s3_histogram():
    assert Counter(build_group(Symmetric(3)).element_orders) == {1: 1, 2: 3, 3: 2}


def test_klein_four():
    v = build_group(Product(Cyclic(2), Cyclic(2)))
    assert v.order == 4 and sorted(v.element_orders) == [1, 2, 2, 2]


@pytest.mark.parametrize("spec", [Cyclic(7), Symmetric(4), Alternating(4), Alternating(5),
                                  Dihedral(6), Quaternion8(), Metacyclic(7, 3, 2),
                                  Product(Symmetric(3), Cyclic(2))])
def test_constructors_satisfy_axioms(spec):
    g = build_group(spec)
    verify_axioms(g)
    assert g.order == spec.order


def test_bad_table_rejected():
    with pytest.raises(InvalidSpec):
        FiniteGroup([[0, 1], [1, 1]])


@pytest.mark.parametrize("bad", [lambda: Cyclic(0), lambda: Symmetric(1), lambda: Metacyclic(7, 2, 2)])
def test_invalid_specs(bad):
    with pytest.raises(InvalidSpec):
        bad()


def test_order_bound():
    with pytest.raises(OrderBoundExceeded):
        build_group(Symmetric(6))
    with pytest.raises(OrderBoundExceeded):
        build_group(Cyclic(30), max_order=20)


def test_dihedral_is_ngon_group():
    d4 = build_group(Dihedral(4))
    assert d4.order == 8 and not d4.is_abelian and len(d4.center) == 2
    assert is_isomorphic(build_group(Dihedral(3)), build_group(Symmetric(3)))


def test_c2_times_c3_is_c6():
    p = direct_product(build_group(Cyclic(2)), build_group(Cyclic(3)))
    assert is_isomorphic(p.group, build_group(Cyclic(6)))
    assert p.diagonal is None


def test_product_projections_and_diagonal():
    s3 = build_group(Symmetric(3))
    p = direct_product(s3, s3)
    assert p.group.order == 36
    for a in range(6):
        d = p.diagonal.elem_map[a]
        assert p.proj_left.elem_map[d] == a and p.proj_right.elem_map[d] == a


def test_subgroup_counts():
    # numbers of subgroups of S3, A4, S4, D4, Q8
    for spec, n in [(Symmetric(3), 6), (Alternating(4), 10), (Symmetric(4), 30),
                    (Dihedral(4), 10), (Quaternion8(), 6)]:
        assert len(all_subgroups(build_group(spec), None)) == n, spec.name


def test_normal_subgroup_counts():
    for spec, n in [(Symmetric(4), 4), (Alternating(5), 2), (Dihedral(4), 6), (Quaternion8(), 6)]:
        assert len(normal_subgroups(build_group(spec), None)) == n, spec.name


def test_commutator_and_normal_closure():
    s4 = build_group(Symmetric(4))
    assert len(commutator_subgroup(s4)) == 12
    transposition = next(x for x in range(24) if s4.element_orders[x] == 2 and sign_map(4)[x] == 1)
    assert normal_closure(s4, [transposition]).is_whole


def test_quotient_and_not_normal():
    s3 = build_group(Symmetric(3))
    q, proj = quotient(s3, commutator_subgroup(s3))
    assert q.order == 2 and len(proj.kernel()) == 3
    order2 = next(x for x in range(6) if s3.element_orders[x] == 2)
    with pytest.raises(NotNormal):
        quotient(s3, {s3.identity, order2})


def test_subgroup_as_group_maps_back():
    a5 = build_group(Alternating(5))
    sub = next(s for s in all_subgroups(a5) if len(s) == 12)
    h, local = subgroup_as_group(sub)
    verify_axioms(h)
    assert is_isomorphic(h, build_group(Alternating(4)))
    for x in range(12):
        for y in range(12):
            assert local[h.mul[x][y]] == a5.mul[local[x]][local[y]]


def test_order_12_groups_are_distinct():
    specs = [Cyclic(12), Product(Cyclic(2), Cyclic(6)), Alternating(4), Dihedral(6), Metacyclic(3, 4, 2)]
    groups = [build_group(s) for s in specs]
    for a, b in itertools.combinations(groups, 2):
        assert not is_isomorphic(a, b), (a.name, b.name)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([Symmetric(3), Quaternion8(), Dihedral(5), Alternating(4), Metacyclic(7, 3, 2)]),
       st.randoms(use_true_random=False))
def test_relabel_preserves_isomorphism_class(spec, rnd):
    g = build_group(spec)
    perm = list(range(g.order))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    verify_axioms(h)
    phi = find_isomorphism(g, h)
    assert phi is not None and len(set(phi)) == g.order
    assert all(phi[g.mul[a][b]] == h.mul[phi[a]][phi[b]] for a in range(g.order) for b in range(g.order))
    assert g.invariants == h.invariants


def test_identity_need_not_be_zero():
    g = relabel(build_group(Cyclic(5)), [3, 0, 1, 2, 4])
    assert g.identity == 3
    assert g.element_orders[3] == 1 and sorted(g.element_orders) == [1, 5, 5, 5, 5]
