"""Automorphism groups of subgroups and the ``K``-normalizer machinery."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .config import DEFAULT
from .errors import KNotClosed, NotASubgroup, OrderCapExceeded
from .groups import FiniteGroup, Subgroup, all_subgroups, normalizer
from .morphism import Morphism, compose, injective_homs, invert_iso, to_image


class AutGroup:
    """A finite group of automorphisms of ``subject``, with its own Cayley table.

    Used both for ``Aut(Q)`` and for ``F(Q)``. ``members[0]`` is the identity;
    the rest are in canonical morphism order. ``inner`` is ``F_Q(Q)``.
    """

    def __init__(self, subject: Subgroup, members: Iterable[Morphism]):
        self.subject = subject
        ident = Morphism.identity(subject)
        rest = sorted({m for m in members if m != ident}, key=Morphism.sort_key)
        self.members = (ident, *rest)
        self.index = {m: i for i, m in enumerate(self.members)}
        table = []
        for a in self.members:
            row = []
            for b in self.members:
                c = compose(a, b)
                if c not in self.index:
                    raise KNotClosed("set of automorphisms is not closed under composition")
                row.append(self.index[c])
            table.append(row)
        self.group = FiniteGroup(table)
        self.inner = inner_automorphisms(subject)
        self._subgroups = None

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, m):
        return m in self.index

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def to_morphisms(self, S: Subgroup) -> frozenset:
        return frozenset(self.members[i] for i in S.elements)

    def to_subgroup(self, morphs: Iterable[Morphism]) -> Subgroup:
        return self.group.subgroup(self.index[m] for m in morphs)

    def subgroups(self, cap=None) -> list:
        """All subgroups as frozensets of automorphisms, sorted by (order, member indices)."""
        cap = DEFAULT.aut_subgroup_cap if cap is None else cap
        if self.order > cap:
            raise OrderCapExceeded(f"|A| = {self.order} exceeds cap {cap}")
        if self._subgroups is None:
            subs = all_subgroups(self.group, cap=max(cap, self.order))
            self._subgroups = [self.to_morphisms(S) for S in subs]
        return list(self._subgroups)


def inner_automorphisms(Q: Subgroup) -> frozenset:
    """``F_Q(Q)``: conjugations by elements of ``Q``."""
    return transporter_image(Q, Q)


def transporter_image(R: Subgroup, Q: Subgroup) -> frozenset:
    """``F_R(Q)``: automorphisms of ``Q`` induced by conjugation with ``N_R(Q)``."""
    G = Q.parent
    N = normalizer(R, Q)
    return frozenset(Morphism(Q, Q, [G.conj(x, u) for u in Q.elements]) for x in N.elements)


@lru_cache(maxsize=None)
def _aut_cached(Q: Subgroup) -> AutGroup:
    return AutGroup(Q, injective_homs(Q, Q, onto=True))


def compute_aut(Q: Subgroup, cap=None) -> AutGroup:
    """Full automorphism group of ``Q``.

    Candidate images of a minimal generating sequence are filtered by element
    order, then checked for multiplicativity.
    """
    cap = DEFAULT.aut_cap if cap is None else cap
    if Q.order > cap:
        raise OrderCapExceeded(f"|Q| = {Q.order} exceeds automorphism cap {cap}")
    return _aut_cached(Q)


def subgroups_of_aut(A: AutGroup, cap=None) -> list:
    return A.subgroups(cap)


def k_family(Q: Subgroup, config=None):
    """Subgroups ``K`` of ``Aut(Q)`` to quantify over, and whether the family is complete.

    With ``config.reduced_k`` an oversized ``Aut(Q)`` falls back to
    ``{1, F_Q(Q), Aut(Q)}`` and the family is flagged incomplete.
    """
    config = config or DEFAULT
    A = compute_aut(Q, config.aut_cap)
    try:
        return A.subgroups(config.aut_subgroup_cap), True
    except OrderCapExceeded:
        if not config.reduced_k:
            raise
    fam = []
    for K in (frozenset([A.members[0]]), A.inner, A.as_set()):
        if K not in fam:
            fam.append(K)
    return fam, False


def check_k(Q: Subgroup, K) -> frozenset:
    """Validate that ``K`` is a subgroup of ``Aut(Q)``."""
    K = frozenset(K)
    if not K:
        raise KNotClosed("K is empty")
    for a in K:
        if a.domain != Q or a.codomain != Q or not a.is_iso():
            raise KNotClosed(f"{a} is not an automorphism of Q")
    for a in K:
        for b in K:
            if compose(a, b) not in K:
                raise KNotClosed("K is not closed under composition")
    return K


def conj_aut(x: int, Q: Subgroup) -> Morphism:
    G = Q.parent
    return Morphism(Q, Q, [G.conj(x, u) for u in Q.elements])


def _k_normalizer(P: Subgroup, Q: Subgroup, K: frozenset) -> Subgroup:
    G = Q.parent
    imgs = {a.images for a in K}
    return Subgroup(
        G,
        (x for x in P.elements
         if tuple(G.conj(x, u) for u in Q.elements) in imgs),
    )


def k_normalizer(P: Subgroup, Q: Subgroup, K) -> Subgroup:
    """``N_P^K(Q)``: elements of ``N_P(Q)`` acting on ``Q`` through ``K``."""
    if not Q.issubset(P):
        raise NotASubgroup("Q must lie in P")
    return _k_normalizer(P, Q, check_k(Q, K))


def transport(K: Iterable[Morphism], phi: Morphism) -> frozenset:
    """``^φK``: ``K`` carried to ``Aut(φ(Q))`` along the isomorphism ``Q ≅ φ(Q)``."""
    iso = to_image(phi)
    inv = invert_iso(iso)
    return frozenset(compose(iso, compose(a, inv)) for a in K)


def pull_back(H: Iterable[Morphism], phi: Morphism) -> frozenset:
    """``φ*H``: automorphisms of ``φ(Q)`` carried back to ``Aut(Q)``."""
    iso = to_image(phi)
    inv = invert_iso(iso)
    return frozenset(compose(inv, compose(b, iso)) for b in H)
