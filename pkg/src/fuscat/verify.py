"""Fusion systems of finite groups and the characterization checks built on the axioms."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable

from .automorphisms import compute_aut, k_family, k_normalizer, transport, transporter_image
from .axioms import (
    Outcome,
    alperin_condition,
    is_extensile,
    is_frobenius,
    is_fully_centralized,
    is_fully_k_normalized,
    is_fully_normalized,
    is_intersected,
    normalizer_category,
    sylow_condition,
)
from .config import DEFAULT
from .errors import BadFamily, NotSylow, SylowFailed
from .groups import FiniteGroup, Subgroup, centralizer, is_normal, normalizer, p_part, product, sylow_p_subgroup
from .morphism import Morphism, compose, conjugation_maps
from .pcategory import PCategory, divisible_closure


def fusion_from_ambient(G: FiniteGroup, p: int, S: Subgroup | None = None) -> PCategory:
    """``F_S(G)``: morphisms between subgroups of ``S`` induced by conjugation in ``G``."""
    if S is None:
        S = sylow_p_subgroup(G, p)
    elif S.parent is not G or S.order != p_part(G.order, p):
        raise NotSylow(f"subgroup of order {S.order} is not a Sylow {p}-subgroup")
    F = PCategory.from_maps(S, p, _ambient_maps(G, S), name="F_S(G)")
    F.divisible_verified = True
    return F


def _ambient_maps(G, S):
    from .groups import all_subgroups

    maps = set()
    for R in all_subgroups(S):
        maps |= conjugation_maps(range(G.order), R, S)
    return maps


# -- Sylow and Alperin conditions on normalizer subcategories ------------------


@dataclass(frozen=True)
class NormalizerFailure:
    Q: Subgroup
    K: frozenset
    clause: str  # "sylow" or "alperin"
    detail: object = None

    def __str__(self):
        return f"Q={list(self.Q.elements)} |K|={len(self.K)} fails {self.clause}: {self.detail}"


def sylow_alperin_check(F: PCategory, config=None) -> Outcome:
    """Sylow and Alperin conditions for every ``N_F^K(Q)`` with ``Q`` fully ``K``-normalized."""
    config = config or DEFAULT
    verdicts: dict = {}
    complete = True
    for Q in F.subgroups:
        ks, full = k_family(Q, config)
        complete &= full
        for K in ks:
            if not is_fully_k_normalized(F, Q, K, validate=False):
                continue
            N = normalizer_category(F, Q, K, check=False)
            key = (N.P, frozenset(N.underlying_maps()))
            if key not in verdicts:
                syl = sylow_condition(N)
                if not syl:
                    verdicts[key] = ("sylow", syl.witness)
                else:
                    alp = alperin_condition(N)
                    verdicts[key] = None if alp else ("alperin", alp.witness)
            bad = verdicts[key]
            if bad is not None:
                return Outcome(False, NormalizerFailure(Q, K, bad[0], bad[1]), complete)
    return Outcome(True, None, complete)


@dataclass
class Verdict:
    frobenius_direct: Outcome
    sylow_alperin: Outcome
    timings: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.frobenius_direct.complete and self.sylow_alperin.complete

    @property
    def agreement(self) -> bool:
        return self.frobenius_direct.holds == self.sylow_alperin.holds


def verify_equivalence(F: PCategory, config=None) -> Verdict:
    t0 = time.perf_counter()
    direct = is_frobenius(F, config)
    t1 = time.perf_counter()
    via = sylow_alperin_check(F, config)
    t2 = time.perf_counter()
    return Verdict(direct, via, {"frobenius": t1 - t0, "sylow_alperin": t2 - t1})


# -- partial Frobenius criteria ---------------------------------------------


def contact_closed(F: PCategory, X: Iterable[Subgroup]) -> bool:
    """Does ``X`` contain every ``Q`` with ``F(Q, R) ≠ ∅`` for some ``R ∈ X``?"""
    X = set(X)
    return all(Q in X for R in X for Q in F.subgroups if F.hom(Q, R))


def partial_frobenius_check(F: PCategory, X: Iterable[Subgroup]) -> Outcome:
    """The two isomorphism/normalizer conditions over a contact-closed family ``X``."""
    X = sorted(set(X), key=Subgroup.sort_key)
    if not X or not contact_closed(F, X):
        raise BadFamily("family is empty or not closed under F-contact")
    if not sylow_condition(F):
        raise SylowFailed("F does not satisfy the Sylow condition")
    P = F.P
    good = [Q for Q in X if is_fully_normalized(F, Q) and is_fully_centralized(F, Q)]
    # isomorphic pairs: some F-isomorphism N_P(Q) ≅ N_P(Q') mapping Q onto Q'
    for Q in good:
        NQ = normalizer(P, Q)
        targets = {m.image for m in F.maps_from(Q)}
        for Q2 in good:
            if Q2 == Q or Q2 not in targets:
                continue
            NQ2 = normalizer(P, Q2)
            pos = [NQ.elements.index(u) for u in Q.elements]
            ok = any(
                m.image == NQ2 and Subgroup(P.parent, (m.images[i] for i in pos)) == Q2
                for m in F.maps_from(NQ)
            )
            if not ok:
                return Outcome(False, ("isomorphic_normalizers", Q, Q2))
    # restriction F(R)_Q -> N_{F(Q)}(F_R(Q)) is surjective
    for Q in good:
        NQ = normalizer(P, Q)
        QC = product(Q, centralizer(P, Q))
        FQ = F.hom(Q, Q)
        for R in F.subgroups:
            if not (QC.issubset(R) and R.issubset(NQ)):
                continue
            FRQ = transporter_image(R, Q)
            target = {a for a in FQ if _normalizes(a, FRQ)}
            pos = [R.elements.index(u) for u in Q.elements]
            hit = set()
            for a in F.hom(R, R):
                imgs = tuple(a.images[i] for i in pos)
                if set(imgs) == Q.as_set():
                    hit.add(Morphism(Q, Q, imgs))
            if not target <= hit:
                return Outcome(False, ("automizer_surjectivity", Q, R))
    return Outcome(True)


def _normalizes(a: Morphism, H: frozenset) -> bool:
    from .morphism import invert_iso

    ai = invert_iso(a)
    return all(compose(a, compose(h, ai)) in H for h in H)


# -- conditions on intersected subgroups -------------------------------------


def intersected_extension_condition(F: PCategory) -> Outcome:
    """Extension of ``φ`` from an intersected ``Q`` to ``R ⊆ N_P(Q)`` when the automizers allow it."""
    syl = sylow_condition(F)
    if not syl:
        return Outcome(False, ("sylow", syl.witness))
    P = F.P
    for Q in F.subgroups:
        if not is_intersected(F, Q):
            continue
        NQ = normalizer(P, Q)
        for R in F.subgroups:
            if not (Q.issubset(R) and R.issubset(NQ)):
                continue
            FRQ = transporter_image(R, Q)
            pos = [R.elements.index(u) for u in Q.elements]
            exts = {tuple(m.images[i] for i in pos) for m in F.maps_from(R)}
            for phi in F.maps_from(Q):
                if not transport(FRQ, phi) <= transporter_image(P, phi.image):
                    continue
                if phi.images not in exts:
                    return Outcome(False, ("intersected_extension", Q, R, phi))
    return Outcome(True)


def intersected_seeds(F: PCategory) -> list:
    return [m for Q in F.subgroups if is_intersected(F, Q) for m in F.maps_from(Q)]


def intersected_generation_condition(F: PCategory) -> Outcome:
    """The divisible closure of ``F_P`` and the maps out of intersected subgroups contains ``F``.

    That closure is the smallest divisible category containing those maps,
    so this decides the statement quantified over all such categories.
    """
    syl = sylow_condition(F)
    if not syl:
        return Outcome(False, ("sylow", syl.witness))
    C = divisible_closure(F.P, F.p, intersected_seeds(F))
    missing = F.underlying_maps() - C.underlying_maps()
    if missing:
        mask, imgs = min(missing, key=lambda k: (bin(k[0]).count("1"), k))
        R = next(S for S in F.subgroups if S.mask == mask)
        return Outcome(False, ("intersected_generation", Morphism(R, F.P, imgs)))
    return Outcome(True)


# -- extensile-triple sampling --------------------------------------------------


@dataclass
class ExtensionSampleReport:
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _stabilizes(x: int, R: Subgroup, J: frozenset) -> bool:
    from .automorphisms import conj_aut
    from .morphism import invert_iso

    c = conj_aut(x, R)
    ci = invert_iso(c)
    return all(compose(c, compose(j, ci)) in J for j in J)


def normal_extension_sample(F: PCategory, X: Iterable[Subgroup], samples: int = 50, seed: int = 0,
                            config=None) -> ExtensionSampleReport:
    """Sample triples ``(R, J, ψ)`` and check the extensile ones predicted by a normal overgroup.

    A triple is tested when ``ψ(R)`` is fully ``^ψJ``-normalized and some
    ``Q ∈ X`` has ``R ⊴ Q``, stabilizes ``J`` by conjugation and carries an
    ``F``-morphism extending ``ψ``; it must then be extensile with ``χ`` in
    ``J ∩ F(R)``.
    """
    config = config or DEFAULT
    X = sorted(set(X), key=Subgroup.sort_key)
    rng = random.Random(seed)
    triples = []
    for R in F.subgroups:
        ks, _ = k_family(R, config)
        for J in ks:
            for psi in F.maps_from(R):
                triples.append((R, J, psi))
    if len(triples) > samples:
        triples = rng.sample(triples, samples)
    report = ExtensionSampleReport()
    for R, J, psi in triples:
        if not is_fully_k_normalized(F, psi.image, transport(J, psi), validate=False):
            report.skipped += 1
            continue
        hyp = False
        for Q in X:
            if not (R.issubset(Q) and is_normal(R, Q)):
                continue
            if not all(_stabilizes(x, R, J) for x in Q.elements):
                continue
            pos = [Q.elements.index(u) for u in R.elements]
            if any(tuple(eta.images[i] for i in pos) == psi.images for eta in F.maps_from(Q)):
                hyp = True
                break
        if not hyp:
            report.skipped += 1
            continue
        report.checked += 1
        if is_extensile(F, R, J, psi, variant="k_and_f") is None:
            report.violations.append((R, J, psi))
    return report


# -- iterated normalizers -------------------------------------------------------


def stabilizing_automorphisms(T: Subgroup, Q: Subgroup, R: Subgroup, J, config=None) -> frozenset:
    """Automorphisms of ``T`` stabilizing ``Q`` and ``R`` and acting on ``R`` through ``J``."""
    config = config or DEFAULT
    j_imgs = {a.images for a in J}
    pos_r = [T.elements.index(u) for u in R.elements]
    out = set()
    for a in compute_aut(T, config.aut_cap):
        m = a.as_dict()
        if not all(m[u] in Q for u in Q.elements):
            continue
        r_imgs = tuple(a.images[i] for i in pos_r)
        if r_imgs in j_imgs:
            out.add(a)
    return frozenset(out)


@dataclass(frozen=True)
class IteratedNormalizer:
    Q: Subgroup
    R: Subgroup
    J: frozenset
    subgroups_equal: bool
    homs_equal: bool

    @property
    def ok(self) -> bool:
        return self.subgroups_equal and self.homs_equal


def iterated_normalizer_configs(F: PCategory, config=None):
    """``(Q, F', R, J)`` with ``Q`` fully normalized, ``F' = N_F(Q)`` and ``R`` fully ``J``-normalized in ``F'``."""
    config = config or DEFAULT
    for Q in F.subgroups:
        AQ = compute_aut(Q, config.aut_cap).as_set()
        if not is_fully_k_normalized(F, Q, AQ, validate=False):
            continue
        Fn = normalizer_category(F, Q, AQ, check=False)
        for R in Fn.subgroups:
            ks, _ = k_family(R, config)
            for J in ks:
                if is_fully_k_normalized(Fn, R, J, validate=False):
                    yield Q, Fn, R, J


def check_iterated_normalizer(F: PCategory, Q: Subgroup, Fn: PCategory, R: Subgroup, J,
                              config=None) -> IteratedNormalizer:
    """Compare ``N_P^I(Q·R)`` with ``N_{P'}^J(R)``, and the two normalizer subcategories."""
    T = product(Q, R)
    I = stabilizing_automorphisms(T, Q, R, J, config)
    left = k_normalizer(F.P, T, I)
    right = k_normalizer(Fn.P, R, J)
    same_sub = left == right
    same_homs = False
    if same_sub:
        NL = normalizer_category(F, T, I, check=False)
        NR = normalizer_category(Fn, R, J, check=False)
        same_homs = NL.underlying_maps() == NR.underlying_maps()
    return IteratedNormalizer(Q, R, frozenset(J), same_sub, same_homs)
