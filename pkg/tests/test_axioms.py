import pytest

from fuscat.automorphisms import compute_aut, k_family, transport
from fuscat.axioms import (
    acts_transitively,
    alperin_condition,
    is_extensile,
    is_frobenius,
    is_fully_centralized,
    is_fully_k_normalized,
    is_fully_normalized,
    is_intersected,
    is_radical,
    is_selfcentralizing,
    normalizer_category,
    sylow_condition,
)
from fuscat.catalog import dihedral
from fuscat.errors import KNotClosed, NotFullyKNormalized
from fuscat.groups import center, normalizer, product
from fuscat.linfusion import essential_subgroups
from fuscat.morphism import Morphism
from fuscat.pcategory import inner_category, is_divisible


def _cyclic4(F):
    return next(S for S in F.subgroups if S.order == 4 and any(S.parent.element_order(x) == 4 for x in S.elements))


def test_q_equal_p_is_fully_normalized(s4):
    for K in compute_aut(s4.P).subgroups():
        assert is_fully_k_normalized(s4, s4.P, K)


def test_fully_normalized_in_inner_d8_bruteforce():
    D = dihedral(4)
    F = inner_category(D, 2)
    P = F.P
    for Q in F.subgroups:
        n = normalizer(P, Q).order
        conj_orders = [normalizer(P, Q.conjugate(x)).order for x in P.elements]
        assert is_fully_k_normalized(F, Q, compute_aut(Q).as_set()) == (n == max(conj_orders))


def test_c4_fully_normalized_in_s4(s4):
    Q = _cyclic4(s4)
    assert is_fully_k_normalized(s4, Q, compute_aut(Q).as_set())


def test_shortcuts_agree(s4, klein_iso, inner):
    for F in (s4, klein_iso, inner):
        for Q in F.subgroups:
            A = compute_aut(Q)
            assert is_fully_k_normalized(F, Q, [Morphism.identity(Q)]) == is_fully_centralized(F, Q)
            assert is_fully_k_normalized(F, Q, A.as_set()) == is_fully_normalized(F, Q)


def test_bad_k(s4):
    Q = _cyclic4(s4)
    A = compute_aut(Q)
    with pytest.raises(KNotClosed):
        is_fully_k_normalized(s4, Q, [a for a in A if not a.is_identity()])


def test_sylow(s4, c4_inv, inner):
    assert sylow_condition(inner)
    assert sylow_condition(s4)
    out = sylow_condition(c4_inv)
    assert not out and "2" in out.witness


def test_extensile_trivial_k(s4):
    for Q in s4.subgroups:
        ident = frozenset([Morphism.identity(Q)])
        phi = Morphism.inclusion(Q, s4.P)
        w = is_extensile(s4, Q, ident, phi)
        assert w is not None and w.chi.is_identity()
        for u, v in zip(Q.elements, w.chi.images):
            assert w.psi(u) == phi(v)


def test_extensile_fails_on_klein_seed(klein_iso):
    a = next(S for S in klein_iso.subgroups if S.order == 2)
    fused = [m for m in klein_iso.maps_from(a) if m.image != a][0]
    assert is_extensile(klein_iso, a, frozenset([Morphism.identity(a)]), fused) is None


def test_extension_condition_s4_exhaustive(s4):
    for Q in s4.subgroups:
        ks, _ = k_family(Q)
        for K in ks:
            for phi in s4.maps_from(Q):
                if is_fully_k_normalized(s4, phi.image, transport(K, phi), validate=False):
                    w = is_extensile(s4, Q, K, phi)
                    assert w is not None
                    assert all(w.psi(u) == phi(w.chi(u)) for u in Q.elements)


def test_variants(s4):
    # the K ∩ F(Q) variant is the stricter of the two
    for Q in s4.subgroups:
        ks, _ = k_family(Q)
        for K in ks:
            for phi in s4.maps_from(Q):
                if is_extensile(s4, Q, K, phi, variant="k_and_f") is not None:
                    assert is_extensile(s4, Q, K, phi, variant="k") is not None
    with pytest.raises(ValueError):
        is_extensile(s4, s4.P, [Morphism.identity(s4.P)], Morphism.identity(s4.P), variant="other")


def test_frobenius_verdicts(s4, klein_iso, c4_inv, inner):
    assert is_frobenius(inner)
    assert is_frobenius(s4)
    out = is_frobenius(klein_iso)
    assert not out and out.witness[0] == "extension"
    assert out.witness[1].Q.order == 2
    out = is_frobenius(c4_inv)
    assert not out and out.witness[0] == "sylow"


def test_subgroup_properties_s4(s4):
    Q = essential_subgroups(s4)[0]
    assert is_selfcentralizing(s4, Q) and is_radical(s4, Q) and is_intersected(s4, Q)
    Z = center(s4.P)
    assert not is_selfcentralizing(s4, Z)
    assert is_selfcentralizing(s4, s4.P)


def test_radical_implies_intersected(s4, klein_iso, gl32_fusion, inner):
    for F in (s4, klein_iso, gl32_fusion, inner):
        for Q in F.subgroups:
            if is_radical(F, Q):
                assert is_intersected(F, Q)


def test_alperin(s4, klein_iso, inner, gl32_fusion):
    assert alperin_condition(inner)
    assert alperin_condition(s4)
    assert alperin_condition(gl32_fusion)
    for Q in essential_subgroups(gl32_fusion):
        assert acts_transitively(gl32_fusion, Q)
    out = alperin_condition(klein_iso)
    assert not out
    assert out.witness.Q.order == 2 and "not_transitive" in out.witness.clauses


def _normalizer_by_definition(F, Q, K, Pn):
    """Maps ``T -> P'`` allowed by the defining extension property, straight from hom-sets."""
    k_imgs = {a.images for a in K}
    out = set()
    for T in F.subgroups:
        if not T.issubset(Pn):
            continue
        QT = product(Q, T)
        for R in F.subgroups:
            if not R.issubset(Pn):
                continue
            QR = product(Q, R)
            for psi in F.hom(QR, QT):
                if tuple(psi(u) for u in Q.elements) not in k_imgs:
                    continue
                imgs = tuple(psi(v) for v in T.elements)
                if all(v in R for v in imgs):
                    out.add((T.mask, imgs))
    return out


def test_normalizer_category_matches_definition(s4):
    for Q in s4.subgroups:
        for K in k_family(Q)[0]:
            if not is_fully_k_normalized(s4, Q, K, validate=False):
                continue
            N = normalizer_category(s4, Q, K)
            assert N.underlying_maps() == _normalizer_by_definition(s4, Q, K, N.P)
            assert is_divisible(N)[0]


def test_normalizer_category_examples(s4, inner):
    # Q = P: exactly the restrictions of F-automorphisms of P
    full = compute_aut(s4.P).as_set()
    restrictions = {(T.mask, tuple(a(v) for v in T.elements)) for a in s4.hom(s4.P, s4.P) for T in s4.subgroups}
    assert normalizer_category(s4, s4.P, full).underlying_maps() == restrictions
    assert restrictions != s4.underlying_maps()
    top = compute_aut(inner.P).as_set()
    assert normalizer_category(inner, inner.P, top).underlying_maps() == inner.underlying_maps()
    for Q in inner.subgroups:
        A = compute_aut(Q).as_set()
        if not is_fully_k_normalized(inner, Q, A):
            continue
        N = normalizer_category(inner, Q, A)
        assert N.underlying_maps() == inner_category(N.P, 2).underlying_maps()
    Q = essential_subgroups(s4)[0]
    N = normalizer_category(s4, Q, compute_aut(Q).as_set())
    assert N.P == s4.P


def test_normalizer_requires_fully_normalized(s4):
    bad = None
    for Q in s4.subgroups:
        A = compute_aut(Q).as_set()
        if not is_fully_k_normalized(s4, Q, A):
            bad = (Q, A)
            break
    assert bad is not None
    with pytest.raises(NotFullyKNormalized):
        normalizer_category(s4, *bad)
