"""Divisible P-categories stored as exhaustive hom-set tables."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Mapping

from .config import DEFAULT
from .errors import HomSetCapExceeded, NotAPGroup, NotContained
from .groups import FiniteGroup, Subgroup, all_subgroups, prime_power
from .morphism import (
    Morphism,
    compose,
    corestrict,
    invert_iso,
    restrict,
    then_map,
    to_image,
)

__all__ = [
    "PCategory",
    "DivisibilityWitness",
    "inner_category",
    "divisible_closure",
    "is_divisible",
    "hom_set",
    "iso_classes",
    "compose",
    "restrict",
    "corestrict",
    "invert_iso",
    "then_map",
]


class PCategory:
    """Hom-set table ``{F(Q, R)}`` over all subgroups of ``P``.

    ``homs[(Q, R)]`` holds the morphisms ``R -> Q`` (codomain first, as in
    ``F(Q, R)``). Pairs that are missing have empty hom-sets.
    """

    def __init__(self, P: Subgroup, p: int, homs: Mapping, name: str | None = None,
                 subgroups=None):
        self.P = P
        self.p = p
        self.name = name
        self.subgroups = tuple(subgroups) if subgroups is not None else tuple(all_subgroups(P))
        self._homs = {k: frozenset(v) for k, v in homs.items() if v}
        self.divisible_verified = False
        self._cache: dict = {}

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_maps(cls, P: Subgroup, p: int, maps: Iterable[Morphism], name=None, subgroups=None):
        """Category whose ``F(Q, R)`` are all corestrictions of the given maps out of ``R``.

        Every morphism is reduced to its underlying map and then placed under
        every subgroup of ``P`` containing its image.
        """
        subs = tuple(subgroups) if subgroups is not None else tuple(all_subgroups(P))
        over = _overgroups(subs)
        homs: dict = {}
        seen = set()
        for m in maps:
            k = (m.domain.mask, m.images)
            if k in seen:
                continue
            seen.add(k)
            for Q in over[m.image.mask]:
                homs.setdefault((Q, m.domain), set()).add(Morphism(m.domain, Q, m.images))
        return cls(P, p, homs, name=name, subgroups=subs)

    @classmethod
    def from_morphisms(cls, P: Subgroup, p: int, morphisms: Iterable[Morphism], name=None):
        """Raw table with exactly the given morphisms (no closure of any kind)."""
        homs: dict = {}
        for m in morphisms:
            homs.setdefault((m.codomain, m.domain), set()).add(m)
        return cls(P, p, homs, name=name)

    # -- readers -------------------------------------------------------------
    def hom(self, Q: Subgroup, R: Subgroup) -> frozenset:
        return self._homs.get((Q, R), frozenset())

    def hom_sorted(self, Q: Subgroup, R: Subgroup) -> list:
        key = ("hs", Q, R)
        if key not in self._cache:
            self._cache[key] = sorted(self.hom(Q, R), key=Morphism.sort_key)
        return self._cache[key]

    def maps_from(self, R: Subgroup) -> list:
        """``F(P, R)`` in canonical order."""
        return self.hom_sorted(self.P, R)

    def automorphisms(self, Q: Subgroup) -> list:
        return self.hom_sorted(Q, Q)

    def aut_group(self, Q: Subgroup):
        """``F(Q)`` as a finite group."""
        from .automorphisms import AutGroup

        key = ("F(Q)", Q)
        if key not in self._cache:
            self._cache[key] = AutGroup(Q, self.hom(Q, Q))
        return self._cache[key]

    def morphisms(self):
        for k in sorted(self._homs, key=lambda qr: (qr[0].key, qr[1].key)):
            yield from self.hom_sorted(*k)

    def pairs(self):
        return list(self._homs)

    def total_morphisms(self) -> int:
        return sum(len(v) for v in self._homs.values())

    def proper_subgroups(self) -> list:
        return [Q for Q in self.subgroups if Q != self.P]

    def same_homs(self, other: "PCategory") -> bool:
        return self.P == other.P and self._homs == other._homs

    def contains(self, other: "PCategory") -> bool:
        """Hom-set-wise ``other ⊆ self``."""
        return all(v <= self.hom(*k) for k, v in other._homs.items())

    def underlying_maps(self) -> set:
        return {(m.domain.mask, m.images) for m in self.hom_iter_P()}

    def hom_iter_P(self):
        for R in self.subgroups:
            yield from self.hom(self.P, R)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.P.parent.table, self.P.elements, self.p)).encode())
        for m in self.morphisms():
            h.update(repr(m.key).encode())
        return h.hexdigest()

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<PCategory{label} |P|={self.P.order} p={self.p} morphisms={self.total_morphisms()}>"


def _overgroups(subs) -> dict:
    out = {}
    for S in subs:
        out[S.mask] = [Q for Q in subs if S.issubset(Q)]
    return out


def _as_P(P) -> Subgroup:
    return P.whole() if isinstance(P, FiniteGroup) else P


def _check_p_group(P: Subgroup, p: int):
    if P.order > 1:
        pk = prime_power(P.order)
        if pk is None or pk[0] != p:
            raise NotAPGroup(f"|P| = {P.order} is not a power of {p}")


def inner_isos(P: Subgroup, subs) -> set:
    """All ``c_x: R -> xRx^-1`` for ``x`` in ``P``."""
    G = P.parent
    out = set()
    for R in subs:
        for x in P.elements:
            imgs = [G.conj(x, u) for u in R.elements]
            out.add(Morphism(R, Subgroup(G, imgs), imgs))
    return out


def inner_category(P, p: int) -> PCategory:
    """``F_P``: morphisms induced by conjugation in ``P``."""
    P = _as_P(P)
    _check_p_group(P, p)
    subs = all_subgroups(P)
    F = PCategory.from_maps(P, p, inner_isos(P, subs), name="F_P", subgroups=subs)
    F.divisible_verified = True
    return F


def divisible_closure(P, p: int, seeds: Iterable[Morphism] = (), hom_cap=None, name=None) -> PCategory:
    """Smallest divisible P-category containing ``F_P`` and ``seeds``.

    Works on isomorphisms ``R -> φ(R)`` and closes them under composition,
    restriction to subgroups and inversion; every hom-set is then filled with
    all corestrictions. Division follows: ``ψ = (φ|_{ψ(T)})^{-1} ∘ (φ∘ψ)``.
    """
    P = _as_P(P)
    _check_p_group(P, p)
    hom_cap = DEFAULT.hom_cap if hom_cap is None else hom_cap
    subs = all_subgroups(P)
    below = {S.mask: [T for T in subs if T.issubset(S)] for S in subs}

    isos: set = set()
    by_dom: dict = {}
    by_cod: dict = {}
    work = []

    def add(a: Morphism):
        if a in isos:
            return
        isos.add(a)
        if len(isos) > hom_cap:
            raise HomSetCapExceeded(f"closure exceeds {hom_cap} isomorphisms")
        by_dom.setdefault(a.domain.mask, []).append(a)
        by_cod.setdefault(a.codomain.mask, []).append(a)
        work.append(a)

    for a in sorted(inner_isos(P, subs), key=Morphism.sort_key):
        add(a)
    for s in seeds:
        if s.domain.parent is not P.parent or not (s.domain.issubset(P) and s.codomain.issubset(P)):
            raise NotContained(f"seed {s} is not a map between subgroups of P")
        add(to_image(s))
    while work:
        a = work.pop()
        add(invert_iso(a))
        for T in below[a.domain.mask]:
            add(to_image(restrict(a, T)))
        for b in list(by_dom.get(a.codomain.mask, ())):
            add(compose(b, a))
        for c in list(by_cod.get(a.domain.mask, ())):
            add(compose(a, c))
    F = PCategory.from_maps(P, p, isos, name=name, subgroups=subs)
    F.divisible_verified = True
    return F


@dataclass(frozen=True)
class DivisibilityWitness:
    """Why a table is not a divisible P-category.

    ``kind`` is ``"inner"`` (an ``F_P`` morphism ``psi`` is missing),
    ``"composition"`` (``phi ∘ psi`` is missing) or ``"division"``
    (``phi ∘ psi`` is present but ``psi`` is not).
    """

    kind: str
    phi: Morphism | None
    psi: Morphism

    @property
    def Q(self):
        return self.phi.codomain if self.phi is not None else self.psi.codomain

    @property
    def R(self):
        return self.psi.codomain

    @property
    def T(self):
        return self.psi.domain


def is_divisible(F: PCategory):
    """Decide condition ``φ∘ψ ∈ F(Q,T) ⇔ ψ ∈ F(R,T)`` plus ``F_P ⊆ F``.

    Returns ``(True, None)`` or ``(False, DivisibilityWitness)``. The check
    first verifies that each hom-set is exactly the corestrictions of
    ``F(P, R)`` (itself a consequence of the condition with ``φ`` an
    inclusion), then checks composition and division on the maps into ``P``.
    """
    P = F.P
    subs = F.subgroups
    over = _overgroups(subs)
    inner = inner_isos(P, subs)
    for a in sorted(inner, key=Morphism.sort_key):
        for Q in over[a.codomain.mask]:
            m = Morphism(a.domain, Q, a.images)
            if m not in F.hom(Q, a.domain):
                return False, DivisibilityWitness("inner", None, m)
    # codomain coherence
    for (Q, R), ms in sorted(F._homs.items(), key=lambda kv: (kv[0][0].key, kv[0][1].key)):
        incl = Morphism.inclusion(Q, P)
        for m in sorted(ms, key=Morphism.sort_key):
            if corestrict(m, P) not in F.hom(P, R):
                return False, DivisibilityWitness("composition", incl, m)
    for R in subs:
        for m in F.maps_from(R):
            for Q in over[m.image.mask]:
                c = Morphism(R, Q, m.images)
                if c not in F.hom(Q, R):
                    return False, DivisibilityWitness("division", Morphism.inclusion(Q, P), c)
    # composition and division on maps into P
    maps = {R: F.maps_from(R) for R in subs}
    keys = {R: {m.images for m in maps[R]} for R in subs}
    for R in subs:
        for T in subs:
            if T.order > R.order or not maps[T]:
                continue
            for m in maps[R]:
                md = m.as_dict()
                inv = {v: u for u, v in zip(R.elements, m.images)}
                for n in maps[T]:
                    if n.image.issubset(R):
                        comp = tuple(md[v] for v in n.images)
                        if comp not in keys[T]:
                            psi = Morphism(T, R, n.images)
                            return False, DivisibilityWitness("composition", corestrict(m, P), psi)
                    if n.image.issubset(m.image):
                        quo = tuple(inv[v] for v in n.images)
                        if quo not in keys[T]:
                            return False, DivisibilityWitness("division", corestrict(m, P),
                                                              Morphism(T, R, quo))
    F.divisible_verified = True
    return True, None


def hom_set(F: PCategory, Q: Subgroup, R: Subgroup) -> frozenset:
    return F.hom(Q, R)


def iso_classes(F: PCategory) -> list:
    """Partition of the subgroups of ``P`` into ``F``-isomorphism classes."""
    parent = {S: S for S in F.subgroups}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for R in F.subgroups:
        for m in F.maps_from(R):
            a, b = find(R), find(m.image)
            if a != b:
                if b.key < a.key:
                    a, b = b, a
                parent[b] = a
    classes: dict = {}
    for S in F.subgroups:
        classes.setdefault(find(S), []).append(S)
    return sorted((sorted(c, key=Subgroup.sort_key) for c in classes.values()),
                  key=lambda c: c[0].key)

