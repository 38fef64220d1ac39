"""Injective homomorphisms between subgroups of one ambient group."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    DomainMismatch,
    IncompleteMap,
    NotAHomomorphism,
    NotAnIsomorphism,
    NotContained,
)
from .groups import Subgroup


class Morphism:
    """A homomorphism ``domain -> codomain``.

    ``images[i]`` is the image of ``domain.elements[i]``. The codomain is part
    of the identity: the same map with a larger codomain is a different
    morphism.
    """

    __slots__ = ("domain", "codomain", "images", "_hash", "_map", "_image")

    def __init__(self, domain: Subgroup, codomain: Subgroup, images: Sequence[int]):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self._hash = hash((domain.mask, codomain.mask, self.images))
        self._map = None
        self._image = None

    # construction helpers
    @classmethod
    def identity(cls, Q: Subgroup) -> "Morphism":
        return cls(Q, Q, Q.elements)

    @classmethod
    def inclusion(cls, T: Subgroup, Q: Subgroup) -> "Morphism":
        """``ι_T^Q``."""
        if not T.issubset(Q):
            raise NotContained(f"{T} is not contained in {Q}")
        return cls(T, Q, T.elements)

    @classmethod
    def conjugation(cls, x: int, R: Subgroup, Q: Subgroup) -> "Morphism":
        """``c_x: R -> Q``, ``u -> x u x^-1``."""
        G = R.parent
        m = cls(R, Q, [G.conj(x, u) for u in R.elements])
        if not m.image.issubset(Q):
            raise NotContained(f"conjugate of {R} by {x} not in {Q}")
        return m

    @classmethod
    def from_mapping(cls, domain: Subgroup, codomain: Subgroup, mapping: Mapping[int, int]) -> "Morphism":
        return cls(domain, codomain, [mapping[u] for u in domain.elements])

    # basic protocol
    def __call__(self, x: int) -> int:
        return self.as_dict()[x]

    def as_dict(self) -> dict:
        if self._map is None:
            self._map = dict(zip(self.domain.elements, self.images))
        return self._map

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.images == other.images
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        return self._hash

    @property
    def key(self):
        return (self.domain.key, self.codomain.key, self.images)

    def sort_key(self):
        return self.key

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        pairs = ", ".join(f"{u}->{v}" for u, v in zip(self.domain.elements, self.images))
        return f"Morphism({list(self.codomain.elements)} <- {{{pairs}}})"

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    @property
    def image(self) -> Subgroup:
        if self._image is None:
            self._image = Subgroup(self.domain.parent, self.images)
        return self._image

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.images == self.domain.elements

    def is_iso(self) -> bool:
        """Bijective onto the codomain."""
        return len(self.images) == self.codomain.order and self.image == self.codomain

    def validate(self) -> "Morphism":
        G = self.domain.parent
        m = self.as_dict()
        if len(set(self.images)) != len(self.images):
            raise NotAHomomorphism("map is not injective")
        for v in self.images:
            if v not in self.codomain:
                raise NotContained(f"image {v} outside codomain")
        t = G.table
        for u in self.domain.elements:
            for w in self.domain.elements:
                if m[t[u][w]] != t[m[u]][m[w]]:
                    raise NotAHomomorphism(f"f({u}*{w}) != f({u})*f({w})")
        return self


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """``phi ∘ psi``; requires ``domain(phi) == codomain(psi)``."""
    if phi.domain != psi.codomain:
        raise DomainMismatch("domain of the left factor must equal codomain of the right")
    m = phi.as_dict()
    return Morphism(psi.domain, phi.codomain, [m[v] for v in psi.images])


def then_map(phi: Morphism, psi: Morphism) -> Morphism:
    """``phi ∘ psi`` where only ``image(psi) ⊆ domain(phi)`` is required."""
    m = phi.as_dict()
    try:
        return Morphism(psi.domain, phi.codomain, [m[v] for v in psi.images])
    except KeyError:
        raise NotContained("image of the right factor not inside domain of the left")


def restrict(phi: Morphism, T: Subgroup) -> Morphism:
    if not T.issubset(phi.domain):
        raise NotContained(f"{T} is not contained in the domain")
    m = phi.as_dict()
    return Morphism(T, phi.codomain, [m[u] for u in T.elements])


def corestrict(phi: Morphism, Q: Subgroup) -> Morphism:
    """Change the codomain to any ``Q`` containing the image (shrinking or enlarging)."""
    if not phi.image.issubset(Q):
        raise NotContained(f"image is not contained in {Q}")
    return Morphism(phi.domain, Q, phi.images)


def to_image(phi: Morphism) -> Morphism:
    """The isomorphism ``domain -> image`` underlying ``phi``."""
    return Morphism(phi.domain, phi.image, phi.images)


def invert_iso(phi: Morphism) -> Morphism:
    if not phi.is_iso():
        raise NotAnIsomorphism("morphism is not bijective onto its codomain")
    inv = {v: u for u, v in zip(phi.domain.elements, phi.images)}
    return Morphism(phi.codomain, phi.domain, [inv[v] for v in phi.codomain.elements])


# -- extending maps from generators ---------------------------------------


def _spanning_words(Q: Subgroup, gens: Sequence[int]):
    """BFS tree over ``Q``: list of ``(element, parent, generator)`` from the identity."""
    G = Q.parent
    t = G.table
    tree = [(0, None, None)]
    seen = {0}
    for x, _, _ in tree:
        for s in gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                tree.append((y, x, s))
    return tree


def extend_from_generators(domain: Subgroup, codomain: Subgroup, gen_images: Mapping[int, int],
                           require_injective=True) -> Morphism:
    """Complete a map given on a generating set to a homomorphism.

    Raises :class:`IncompleteMap` if the generators do not generate ``domain``
    or the assignment does not extend to an (injective) homomorphism.
    """
    gens = list(gen_images)
    tree = _spanning_words(domain, gens)
    if len(tree) != domain.order:
        raise IncompleteMap("given elements do not generate the domain")
    m = _extend(domain.parent, tree, gens, gen_images)
    if m is None:
        raise IncompleteMap("assignment does not extend to a homomorphism")
    phi = Morphism.from_mapping(domain, codomain, m)
    if not phi.image.issubset(codomain):
        raise IncompleteMap("image escapes the codomain")
    if require_injective and len(set(phi.images)) != len(phi.images):
        raise IncompleteMap("homomorphism is not injective")
    return phi


def _extend(G, tree, gens, gen_images):
    t = G.table
    m = {0: 0}
    for y, x, s in tree[1:]:
        m[y] = t[m[x]][gen_images[s]]
    for x, _, _ in tree:
        mx = m[x]
        for s in gens:
            if m[t[x][s]] != t[mx][gen_images[s]]:
                return None
    return m


def injective_homs(domain: Subgroup, codomain: Subgroup, gens: Sequence[int] | None = None,
                   onto=False) -> list:
    """All injective homomorphisms ``domain -> codomain`` (isomorphisms onto it if ``onto``)."""
    from itertools import product

    from .groups import minimal_generators

    G = domain.parent
    if gens is None:
        gens = minimal_generators(domain)
    if onto and domain.order != codomain.order:
        return []
    tree = _spanning_words(domain, gens)
    cands = [
        [y for y in codomain.elements if G.element_order(y) == G.element_order(g)]
        for g in gens
    ]
    out = []
    for choice in product(*cands):
        m = _extend(G, tree, gens, dict(zip(gens, choice)))
        if m is None:
            continue
        phi = Morphism.from_mapping(domain, codomain, m)
        if len(set(phi.images)) == len(phi.images):
            out.append(phi)
    return sorted(out, key=Morphism.sort_key)


def conjugation_maps(xs: Iterable[int], R: Subgroup, into: Subgroup) -> set:
    """``{c_x|_R : x in xs, xRx^-1 ⊆ into}`` with codomain ``into``."""
    G = R.parent
    out = set()
    for x in xs:
        imgs = [G.conj(x, u) for u in R.elements]
        if all(v in into for v in imgs):
            out.add(Morphism(R, into, imgs))
    return out
