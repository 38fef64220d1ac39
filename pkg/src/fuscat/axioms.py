"""Pointwise axioms of Frobenius P-categories and normalizer subcategories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .automorphisms import (
    _k_normalizer,
    check_k,
    k_family,
    pull_back,
    transport,
    transporter_image,
)
from .config import DEFAULT
from .errors import NotFullyKNormalized
from .groups import Subgroup, center, centralizer, normalizer, o_p, product
from .linfusion import essential_subgroups, factorization_components
from .morphism import Morphism, compose
from .pcategory import PCategory


@dataclass(frozen=True)
class Outcome:
    """A yes/no answer with an optional witness; truthy when the property holds.

    ``complete`` is False when a reduced family of ``K``'s was used.
    """

    holds: bool
    witness: Any = None
    complete: bool = True

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ExtensionWitness:
    psi: Morphism  # Q·N_P^K(Q) -> P
    chi: Morphism  # in K (or K ∩ F(Q))
    variant: str


@dataclass(frozen=True)
class ExtensionFailure:
    Q: Subgroup
    K: frozenset
    phi: Morphism

    def __str__(self):
        return f"Q={list(self.Q.elements)} |K|={len(self.K)} phi={self.phi!r}"


# -- K-normalizers ---------------------------------------------------------


def _qn(F: PCategory, Q: Subgroup, K: frozenset):
    N = F.cached(("NK", Q, K), lambda: _k_normalizer(F.P, Q, K))
    return N, product(Q, N)


def is_fully_k_normalized(F: PCategory, Q: Subgroup, K, validate=True) -> bool:
    """``ψ(N_P^K(Q)) = N_P^{ψK}(ψ(Q))`` for every ``ψ ∈ F(P, Q·N_P^K(Q))``."""
    K = check_k(Q, K) if validate else frozenset(K)

    def run():
        N, QN = _qn(F, Q, K)
        incl_Q = Morphism.inclusion(Q, QN)
        for psi in F.maps_from(QN):
            psi_Q = compose(psi, incl_Q)
            image_N = len(N)  # ψ is injective
            target = _k_normalizer(F.P, psi_Q.image, transport(K, psi_Q))
            if target.order != image_N:
                return False
            m = psi.as_dict()
            if any(m[x] not in target for x in N.elements):
                return False
        return True

    return F.cached(("fullyK", Q, K), run)


def is_fully_normalized(F: PCategory, Q: Subgroup) -> bool:
    """Shortcut for ``K = Aut(Q)``: ``|N_P(Q)|`` is maximal over the ``F``-images of ``Q``."""
    n = normalizer(F.P, Q).order
    return all(normalizer(F.P, m.image).order <= n for m in F.maps_from(Q))


def is_fully_centralized(F: PCategory, Q: Subgroup) -> bool:
    """Shortcut for ``K = 1``: ``|C_P(Q)|`` is maximal over the ``F``-images of ``Q``."""
    n = centralizer(F.P, Q).order
    return all(centralizer(F.P, m.image).order <= n for m in F.maps_from(Q))


# -- Sylow and extension -----------------------------------------------------


def sylow_condition(F: PCategory) -> Outcome:
    """``F_P(P)`` is a Sylow ``p``-subgroup of ``F(P)``."""
    inner = transporter_image(F.P, F.P)
    auts = F.hom(F.P, F.P)
    if not inner <= auts:
        return Outcome(False, "F(P) does not contain the inner automorphisms")
    idx, rem = divmod(len(auts), len(inner))
    if rem:
        return Outcome(False, "|F_P(P)| does not divide |F(P)|")
    if idx % F.p == 0:
        return Outcome(False, f"[F(P) : F_P(P)] = {idx} is divisible by p = {F.p}")
    return Outcome(True)


def is_extensile(F: PCategory, Q: Subgroup, K, phi: Morphism, variant="k"):
    """Search ``ψ ∈ F(P, Q·N_P^K(Q))`` and ``χ`` with ``ψ(u) = φ(χ(u))`` on ``Q``.

    ``χ`` ranges over ``K`` (``variant="k"``) or ``K ∩ F(Q)``
    (``variant="k_and_f"``). Returns an :class:`ExtensionWitness` or None.
    """
    K = frozenset(K)
    if variant == "k_and_f":
        allowed = K & F.hom(Q, Q)
    elif variant == "k":
        allowed = K
    else:
        raise ValueError(f"unknown variant {variant!r}")
    allowed_imgs = {a.images for a in allowed}
    _, QN = _qn(F, Q, K)
    inv = {v: u for u, v in zip(Q.elements, phi.images)}
    incl_Q = Morphism.inclusion(Q, QN)
    for psi in F.maps_from(QN):
        r = compose(psi, incl_Q)
        try:
            chi_imgs = tuple(inv[v] for v in r.images)
        except KeyError:
            continue
        if chi_imgs in allowed_imgs:
            return ExtensionWitness(psi, Morphism(Q, Q, chi_imgs), variant)
    return None


def is_frobenius(F: PCategory, config=None) -> Outcome:
    """Sylow condition plus the extension condition over every ``(Q, K, φ)``."""
    config = config or DEFAULT
    syl = sylow_condition(F)
    if not syl:
        return Outcome(False, ("sylow", syl.witness))
    complete = True
    for Q in F.subgroups:
        ks, full = k_family(Q, config)
        complete &= full
        phis = F.maps_from(Q)
        for K in ks:
            for phi in phis:
                K2 = transport(K, phi)
                if not is_fully_k_normalized(F, phi.image, K2, validate=False):
                    continue
                if is_extensile(F, Q, K, phi) is None:
                    return Outcome(False, ("extension", ExtensionFailure(Q, K, phi)), complete)
    return Outcome(True, None, complete)


# -- selfcentralizing / radical / intersected --------------------------------


def is_selfcentralizing(F: PCategory, Q: Subgroup) -> bool:
    for m in F.maps_from(Q):
        S = m.image
        if centralizer(F.P, S) != center(S):
            return False
    return True


def is_radical(F: PCategory, Q: Subgroup) -> bool:
    if not is_selfcentralizing(F, Q):
        return False
    A = F.aut_group(Q)
    return A.to_morphisms(o_p(A.group, F.p)) == A.inner


def intersected_automizer(F: PCategory, Q: Subgroup) -> frozenset:
    """``∩_φ φ*F_P(φ(Q))`` over ``φ ∈ F(P, Q)``."""
    out = None
    for m in F.maps_from(Q):
        H = pull_back(transporter_image(F.P, m.image), m)
        out = H if out is None else out & H
    return out


def is_intersected(F: PCategory, Q: Subgroup) -> bool:
    if not is_selfcentralizing(F, Q):
        return False
    return intersected_automizer(F, Q) == transporter_image(Q, Q)


# -- Alperin condition -------------------------------------------------------


@dataclass(frozen=True)
class AlperinFailure:
    Q: Subgroup
    clauses: tuple  # subset of ("not_radical", "not_transitive")

    def __str__(self):
        return f"Q={list(self.Q.elements)} fails {', '.join(self.clauses)}"


def component_orbit(F: PCategory, Q: Subgroup) -> set:
    """Components hit by ``ι_Q^P ∘ α`` for ``α ∈ F(Q)``."""
    cs = factorization_components(F, Q)
    return {cs.component_of[Morphism(Q, F.P, a.images)] for a in F.automorphisms(Q)}


def acts_transitively(F: PCategory, Q: Subgroup) -> bool:
    return len(component_orbit(F, Q)) == len(factorization_components(F, Q))


def alperin_condition(F: PCategory) -> Outcome:
    """Every essential subgroup is radical and ``F(Q)`` is transitive on its components."""

    def run():
        for Q in essential_subgroups(F):
            bad = []
            if not is_radical(F, Q):
                bad.append("not_radical")
            if not acts_transitively(F, Q):
                bad.append("not_transitive")
            if bad:
                return Outcome(False, AlperinFailure(Q, tuple(bad)))
        return Outcome(True)

    return F.cached("alperin", run)


# -- normalizer subcategory --------------------------------------------------


def normalizer_category(F: PCategory, Q: Subgroup, K, check=True) -> PCategory:
    """``N_F^K(Q)`` on ``P' = N_P^K(Q)``.

    ``φ: T -> R`` belongs when some ``ψ ∈ F(Q·R, Q·T)`` restricts to an
    element of ``K`` on ``Q`` and to ``φ`` on ``T``.
    """
    K = check_k(Q, K) if check else frozenset(K)
    if check and not is_fully_k_normalized(F, Q, K, validate=False):
        raise NotFullyKNormalized(f"{Q} is not fully K-normalized")
    Pn = _k_normalizer(F.P, Q, K)
    subs = [S for S in F.subgroups if S.issubset(Pn)]
    k_imgs = {a.images for a in K}
    q_pos = None
    maps = []
    for T in subs:
        QT = product(Q, T)
        q_pos = [QT.elements.index(u) for u in Q.elements]
        t_pos = [QT.elements.index(v) for v in T.elements]
        seen = set()
        for psi in F.maps_from(QT):
            if tuple(psi.images[i] for i in q_pos) not in k_imgs:
                continue
            imgs = tuple(psi.images[i] for i in t_pos)
            if imgs in seen or not all(v in Pn for v in imgs):
                continue
            seen.add(imgs)
            maps.append(Morphism(T, Pn, imgs))
    return PCategory.from_maps(Pn, F.p, maps, name="N_F^K(Q)", subgroups=subs)
