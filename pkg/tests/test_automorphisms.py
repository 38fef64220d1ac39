import pytest

from fuscat.automorphisms import (
    AutGroup,
    check_k,
    compute_aut,
    inner_automorphisms,
    k_family,
    k_normalizer,
    pull_back,
    transport,
    transporter_image,
)
from fuscat.catalog import cyclic, dihedral, elementary_abelian, klein_four, quaternion
from fuscat.config import DEFAULT
from fuscat.errors import KNotClosed, OrderCapExceeded
from fuscat.groups import all_subgroups
from fuscat.morphism import Morphism, compose

from conftest import brute_automorphisms


@pytest.mark.parametrize("make,order", [
    (lambda: cyclic(4), 2),
    (lambda: cyclic(8), 4),
    (klein_four, 6),
    (lambda: dihedral(4), 8),
    (quaternion, 24),
    (lambda: elementary_abelian(2, 3), 168),
])
def test_aut_orders(make, order):
    P = make().whole()
    A = compute_aut(P)
    assert A.order == order
    if P.order <= 8 and order <= 24:
        assert {m.images for m in A} == brute_automorphisms(P)


def test_autgroup_table_and_inner():
    P = dihedral(4).whole()
    A = compute_aut(P)
    assert A.members[0].is_identity()
    for i, a in enumerate(A.members):
        for j, b in enumerate(A.members):
            assert A.members[A.group.mul(i, j)] == compose(a, b)
    assert len(A.inner) == 4
    assert A.inner == inner_automorphisms(P)


def test_subgroups_of_aut_v4():
    A = compute_aut(klein_four().whole())
    subs = A.subgroups()
    assert [len(K) for K in subs] == [1, 2, 2, 2, 3, 6]


def test_aut_subgroup_cap():
    A = compute_aut(elementary_abelian(2, 3).whole())
    with pytest.raises(OrderCapExceeded):
        A.subgroups(cap=100)
    Q = elementary_abelian(2, 3).whole()
    fam, complete = k_family(Q, DEFAULT.with_(aut_subgroup_cap=100, reduced_k=True))
    assert not complete and [len(K) for K in fam] == [1, 168]
    with pytest.raises(OrderCapExceeded):
        k_family(Q, DEFAULT.with_(aut_subgroup_cap=100))


def test_check_k():
    V = klein_four().whole()
    A = compute_aut(V)
    swap = [a for a in A if not a.is_identity() and compose(a, a).is_identity()][0]
    with pytest.raises(KNotClosed):
        check_k(V, [swap])  # identity missing
    assert len(check_k(V, [Morphism.identity(V), swap])) == 2
    with pytest.raises(KNotClosed):
        check_k(V, [Morphism.inclusion(V.parent.trivial(), V)])


def test_k_normalizer_bruteforce():
    D = dihedral(4)
    P = D.whole()
    for Q in all_subgroups(D):
        A = compute_aut(Q)
        for K in A.subgroups():
            imgs = {a.images for a in K}
            expect = {x for x in P.elements if tuple(D.conj(x, u) for u in Q.elements) in imgs}
            assert k_normalizer(P, Q, K).as_set() == expect


def test_transport_and_pull_back_inverse():
    D = dihedral(4)
    P = D.whole()
    for Q in all_subgroups(D):
        for x in P.elements:
            phi = Morphism.conjugation(x, Q, P)
            H = transporter_image(P, Q)
            assert pull_back(transport(H, phi), phi) == H
            assert transport(H, phi) == transporter_image(P, phi.image)


def test_autgroup_rejects_non_closed():
    V = klein_four().whole()
    A = compute_aut(V)
    order3 = [a for a in A if not a.is_identity() and not compose(a, a).is_identity()]
    with pytest.raises(KNotClosed):
        AutGroup(V, order3[:1])
