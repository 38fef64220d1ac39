import itertools

import pytest

from fuscat.catalog import dihedral, klein_four, quaternion, symmetric
from fuscat.errors import DomainMismatch, IncompleteMap, NotAHomomorphism, NotAnIsomorphism, NotContained
from fuscat.groups import all_subgroups
from fuscat.morphism import (
    Morphism,
    compose,
    conjugation_maps,
    corestrict,
    extend_from_generators,
    injective_homs,
    invert_iso,
    restrict,
    then_map,
    to_image,
)

from conftest import brute_automorphisms


def _brute_injective(R, Q):
    G = R.parent
    out = set()
    for imgs in itertools.permutations(Q.elements, R.order):
        m = dict(zip(R.elements, imgs))
        if m[0] != 0:
            continue
        if all(m[G.mul(a, b)] == G.mul(m[a], m[b]) for a in R.elements for b in R.elements):
            out.add(imgs)
    return out


def test_injective_homs_match_bruteforce():
    D = dihedral(4)
    subs = all_subgroups(D)
    for R in subs:
        for Q in subs:
            if R.order > Q.order or Q.order > 4:
                continue
            assert {m.images for m in injective_homs(R, Q)} == _brute_injective(R, Q)


def test_aut_v4_is_all_six_bijections():
    V = klein_four().whole()
    homs = {m.images for m in injective_homs(V, V, onto=True)}
    assert homs == brute_automorphisms(V)
    assert len(homs) == 6


def test_composition_is_strict():
    D = dihedral(4)
    P = D.whole()
    Z = [S for S in all_subgroups(D) if S.order == 2][0]
    incl = Morphism.inclusion(Z, P)
    with pytest.raises(DomainMismatch):
        compose(incl, incl)
    ident = Morphism.identity(P)
    assert compose(ident, incl) == incl
    assert ident @ incl == incl
    # then_map tolerates a codomain that is only contained in the next domain
    big = Morphism.identity(P)
    small = Morphism(Z, Z, Z.elements)
    assert then_map(big, small).codomain == P


def test_codomain_is_part_of_identity():
    D = dihedral(4)
    P = D.whole()
    V = [S for S in all_subgroups(D) if S.order == 4][0]
    assert Morphism.identity(V) != Morphism.inclusion(V, P)
    assert corestrict(Morphism.inclusion(V, P), V) == Morphism.identity(V)
    with pytest.raises(NotContained):
        corestrict(Morphism.identity(P), V)


def test_restrict_and_invert():
    Q8 = quaternion().whole()
    for a in injective_homs(Q8, Q8, onto=True):
        b = invert_iso(a)
        assert compose(a, b).is_identity() and compose(b, a).is_identity()
        for S in all_subgroups(Q8):
            r = restrict(a, S)
            assert r.domain == S and r.images == tuple(a(u) for u in S.elements)
    P = Q8
    Z = [S for S in all_subgroups(Q8.parent) if S.order == 2][0]
    with pytest.raises(NotAnIsomorphism):
        invert_iso(Morphism.inclusion(Z, P))
    assert to_image(Morphism.inclusion(Z, P)) == Morphism.identity(Z)


def test_validate():
    V = klein_four().whole()
    bad = Morphism(V, V, (0, 1, 1, 0))
    with pytest.raises(NotAHomomorphism):
        bad.validate()


def test_extend_from_generators():
    V = klein_four()
    P = V.whole()
    a, b = 1, 2
    phi = extend_from_generators(P, P, {a: b, b: a})
    assert phi.images == tuple(phi(x) for x in P.elements)
    assert phi(V.mul(a, b)) == V.mul(b, a)
    with pytest.raises(IncompleteMap):
        extend_from_generators(P, P, {a: b})  # does not generate
    with pytest.raises(IncompleteMap):
        extend_from_generators(P, P, {a: b, b: b})  # not injective


def test_conjugation_maps():
    G = symmetric(4)
    D = [S for S in all_subgroups(G) if S.order == 8][0]
    maps = conjugation_maps(range(G.order), D, D)
    # automorphisms of D8 induced by its normalizer in S4 (= D8 itself) are the inner ones
    assert len(maps) == 4
