"""Built-in groups, fusion systems and the catalog run."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .errors import CapExceeded, FuscatError
from .groups import FiniteGroup, Subgroup, all_subgroups, cycles_to_perm, from_elements, from_permutations
from .morphism import Morphism, injective_homs
from .pcategory import PCategory, divisible_closure, inner_category


# -- groups ------------------------------------------------------------------


def cyclic(n: int, prime=None) -> FiniteGroup:
    return from_permutations(n, [cycles_to_perm(n, [tuple(range(n))])] if n > 1 else [], prime=prime,
                             name=f"C{n}")


def klein_four() -> FiniteGroup:
    return from_permutations(4, [cycles_to_perm(4, [(0, 1)]), cycles_to_perm(4, [(2, 3)])], prime=2,
                             name="V4")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    elems = list(itertools.product(range(p), repeat=k))
    return from_elements(elems, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), prime=p,
                         name=f"C{p}^{k}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on the ``n``-gon."""
    rot = cycles_to_perm(n, [tuple(range(n))])
    refl = tuple((-i) % n for i in range(n))
    return from_permutations(n, [rot, refl], name=f"D{2 * n}")


def quaternion() -> FiniteGroup:
    # elements (sign, unit) with unit in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    return from_elements(elems, mul, prime=2, name="Q8")


def symmetric(n: int) -> FiniteGroup:
    gens = [cycles_to_perm(n, [tuple(range(n))]), cycles_to_perm(n, [(0, 1)])] if n > 1 else []
    return from_permutations(n, gens, name=f"S{n}")


def alternating4() -> FiniteGroup:
    return from_permutations(4, [cycles_to_perm(4, [(0, 1, 2)]), cycles_to_perm(4, [(0, 1), (2, 3)])],
                             name="A4")


def c3_by_c4() -> FiniteGroup:
    """``C3 ⋊ C4`` with the generator of ``C4`` inverting ``C3`` (order 12)."""
    elems = [(a, b) for a in range(3) for b in range(4)]
    return from_elements(elems, lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % 3, (x[1] + y[1]) % 4),
                         name="C3:C4")


def gl32() -> FiniteGroup:
    """``GL(3, 2)`` acting on the seven points of the Fano plane (order 168)."""
    lines = {frozenset((i % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)}
    gens = [
        g for g in itertools.permutations(range(7))
        if {frozenset(g[x] for x in ln) for ln in lines} == lines
    ]
    return from_permutations(7, gens, name="GL(3,2)")


# -- category constructors -------------------------------------------------------


def subgroup_by_elements(P: Subgroup, elements) -> Subgroup:
    return P.parent.closure(elements)


def klein_seed_iso() -> PCategory:
    """``V4 = <a, b>`` with the single extra fusion ``a -> b`` closed up: not Frobenius."""
    V = klein_four()
    P = V.whole()
    a, b = [x for x in P.elements if x != 0][:2]
    A, B = V.closure([a]), V.closure([b])
    seed = Morphism(A, B, (0, b))
    return divisible_closure(P, 2, [seed], name="V4+iso")


def c4_inversion() -> PCategory:
    """``C4`` with its inversion automorphism adjoined: fails the Sylow condition."""
    C = cyclic(4, prime=2)
    P = C.whole()
    inv = Morphism(P, P, [C.inverse[x] for x in P.elements])
    return divisible_closure(P, 2, [inv], name="C4+inv")


INNER_GROUPS: dict = {
    "C2": lambda: cyclic(2, prime=2),
    "C4": lambda: cyclic(4, prime=2),
    "V4": klein_four,
    "C8": lambda: cyclic(8, prime=2),
    "D8": lambda: dihedral(4),
    "Q8": quaternion,
    "C2^3": lambda: elementary_abelian(2, 3),
}

AMBIENT: dict = {
    "S4,2": (lambda: symmetric(4), 2),
    "A4,2": (alternating4, 2),
    "S3,3": (lambda: symmetric(3), 3),
    "C3:C4,3": (c3_by_c4, 3),
}

OPTIONAL_INNER = {"D16": lambda: dihedral(8)}


def random_divisible_category(rng: random.Random, groups=None, hom_cap=5000, attempts=50):
    """A divisible closure of ``F_P`` plus at most two random isomorphisms between subgroups.

    Returns ``(name, PCategory, seeds)``; categories exceeding ``hom_cap``
    isomorphisms are discarded and redrawn.
    """
    groups = groups or ["C4", "V4", "D8", "Q8", "C8", "C2^3"]
    for _ in range(attempts):
        gname = rng.choice(groups)
        G = INNER_GROUPS[gname]()
        P = G.whole()
        subs = all_subgroups(P)
        seeds = []
        for _ in range(rng.randint(1, 2)):
            R = rng.choice(subs)
            same = [S for S in subs if S.order == R.order]
            S = rng.choice(same)
            isos = injective_homs(R, S, onto=True)
            if isos:
                seeds.append(rng.choice(isos))
        try:
            F = divisible_closure(P, 2, seeds, hom_cap=hom_cap)
        except CapExceeded:
            continue
        return gname, F, seeds
    raise RuntimeError("could not draw a random category within the cap")


@dataclass
class Case:
    key: str
    build: Callable[[], PCategory]
    kind: str  # "inner", "ambient", "non-example", "random"
    expect_frobenius: bool | None = None


def catalog_cases(seed: int = 42, n_random: int = 25, include_optional=False) -> list:
    cases = []
    groups = dict(INNER_GROUPS)
    if include_optional:
        groups.update(OPTIONAL_INNER)
    for name, make in groups.items():
        cases.append(Case(f"inner:{name}", lambda make=make: inner_category(make(), 2), "inner", True))
    for name, (make, p) in AMBIENT.items():
        from .verify import fusion_from_ambient

        cases.append(Case(f"ambient:{name}", lambda make=make, p=p: fusion_from_ambient(make(), p),
                          "ambient", True))
    cases.append(Case("non-example:V4+iso", klein_seed_iso, "non-example", False))
    cases.append(Case("non-example:C4+inv", c4_inversion, "non-example", False))
    rng = random.Random(seed)
    for i in range(n_random):
        gname, F, seeds = random_divisible_category(rng)
        F.name = f"random:{i:02d}:{gname}"
        cases.append(Case(F.name, lambda F=F: F, "random", None))
    return cases


# -- the catalog run -------------------------------------------------------


def describe(obj, label=None) -> str:
    """Deterministic one-line text for witnesses (sets are never printed raw).

    ``label`` maps group indices to the names used in output.
    """
    from .axioms import AlperinFailure, ExtensionFailure
    from .verify import NormalizerFailure

    lab = label or (lambda i: i)
    d = lambda o: describe(o, label)  # noqa: E731
    if isinstance(obj, Subgroup):
        return f"<{','.join(str(lab(x)) for x in obj.elements)}>"
    if isinstance(obj, Morphism):
        pairs = ",".join(f"{lab(u)}>{lab(v)}" for u, v in zip(obj.domain.elements, obj.images))
        return f"{d(obj.domain)}->{d(obj.codomain)}{{{pairs}}}"
    if isinstance(obj, frozenset):
        return f"|K|={len(obj)}"
    if isinstance(obj, ExtensionFailure):
        return f"Q={d(obj.Q)} {d(obj.K)} phi={d(obj.phi)}"
    if isinstance(obj, AlperinFailure):
        return f"Q={d(obj.Q)} {'+'.join(obj.clauses)}"
    if isinstance(obj, NormalizerFailure):
        return f"Q={d(obj.Q)} {d(obj.K)} {obj.clause}: {d(obj.detail)}"
    if isinstance(obj, (tuple, list)):
        return " ".join(d(x) for x in obj)
    return str(obj)


def _essential_rows(F: PCategory) -> list:
    from .axioms import acts_transitively, is_radical
    from .linfusion import essential_subgroups, factorization_components

    return [
        {
            "subgroup": list(Q.elements),
            "order": Q.order,
            "aut_order": F.aut_group(Q).order,
            "components": len(factorization_components(F, Q)),
            "radical": is_radical(F, Q),
            "transitive": acts_transitively(F, Q),
        }
        for Q in essential_subgroups(F)
    ]


def run_case(case: Case, config=None) -> dict:
    """Every check of the catalog on one case; errors are recorded, not raised."""
    from .pcategory import is_divisible
    from .verify import partial_frobenius_check, intersected_extension_condition, intersected_generation_condition, verify_equivalence

    row: dict = {"key": case.key, "kind": case.kind}
    try:
        F = case.build()
        row.update(group=F.P.parent.name, order=F.P.order, p=F.p, morphisms=F.total_morphisms())
        row["divisible"] = is_divisible(F)[0]
        v = verify_equivalence(F, config)
        row.update(frobenius=v.frobenius_direct.holds, sylow_alperin=v.sylow_alperin.holds, agreement=v.agreement,
                   complete=v.complete)
        if not v.frobenius_direct:
            row["frobenius_witness"] = describe(v.frobenius_direct.witness)
        if not v.sylow_alperin:
            row["sylow_alperin_witness"] = describe(v.sylow_alperin.witness)
        if case.expect_frobenius is not None:
            row["expected"] = case.expect_frobenius
        row["essentials"] = _essential_rows(F)
        checks = {}
        for label, fn in (("intersected_extension", intersected_extension_condition), ("intersected_generation", intersected_generation_condition),
                          ("partial", lambda F: partial_frobenius_check(F, F.subgroups))):
            try:
                out = fn(F)
                checks[label] = "yes" if out else f"no {describe(out.witness)}"
            except FuscatError as exc:
                checks[label] = f"error {type(exc).__name__}"
        row["checks"] = checks
    except FuscatError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


@dataclass
class CatalogReport:
    seed: int
    rows: list

    @property
    def all_agree(self) -> bool:
        return all(r.get("agreement", False) for r in self.rows)

    def as_dict(self) -> dict:
        return {"seed": self.seed, "cases": self.rows}


def catalog_run(config=None, seed: int = 42, n_random: int = 25, include_optional=False,
                cases=None) -> CatalogReport:
    """Run :func:`run_case` over the catalog (or the given cases), sorted by key."""
    if cases is None:
        cases = catalog_cases(seed=seed, n_random=n_random, include_optional=include_optional)
    rows = [run_case(c, config) for c in cases]
    rows.sort(key=lambda r: r["key"])
    return CatalogReport(seed, rows)
