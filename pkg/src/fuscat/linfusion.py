"""Formal sums of morphisms, reducibility, essential subgroups and decompositions.

The submodule of reducible elements at ``Q`` is spanned by differences
``ψ'∘μ - ψ∘μ`` of basis elements of the free module on ``F(P, Q)``. Such a
span equals the whole augmentation kernel exactly when the graph with those
differences as edges is connected, and a difference ``φ' - φ`` is reducible
exactly when ``φ`` and ``φ'`` lie in one component. Everything here is built
on that graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .config import DEFAULT
from .errors import ChainBroken, NoChain, NotAlperin, NotInKernel, QNotProper, SizeCapExceeded
from .groups import Subgroup
from .lattice import spans_augmentation_kernel
from .morphism import Morphism, compose, corestrict, invert_iso
from .pcategory import PCategory


# -- formal sums -----------------------------------------------------------


class FormalSum:
    """An element of ``ZF(Q, R)``: integer combination of morphisms ``R -> Q``."""

    __slots__ = ("domain", "codomain", "terms")

    def __init__(self, domain: Subgroup, codomain: Subgroup, terms: Mapping[Morphism, int] | None = None):
        self.domain = domain
        self.codomain = codomain
        clean = {}
        for m, c in (terms or {}).items():
            if m.domain != domain or m.codomain != codomain:
                raise ValueError("all terms must share domain and codomain")
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def of(cls, m: Morphism, coeff: int = 1) -> "FormalSum":
        return cls(m.domain, m.codomain, {m: coeff})

    @classmethod
    def dimorphism(cls, phi: Morphism, phi_prime: Morphism) -> "FormalSum":
        """``φ' - φ``."""
        return cls.of(phi_prime) - cls.of(phi)

    @classmethod
    def zero(cls, domain, codomain) -> "FormalSum":
        return cls(domain, codomain)

    def _check(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("formal sums live in different hom-modules")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return FormalSum(self.domain, self.codomain, t)

    def __neg__(self):
        return FormalSum(self.domain, self.codomain, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return FormalSum(self.domain, self.codomain, {m: k * c for m, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, FormalSum)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = [f"{c:+d}*{m!r}" for m, c in sorted(self.terms.items(), key=lambda kv: kv[0].key)]
        return "FormalSum(" + (" ".join(parts) or "0") + ")"

    def compose_left(self, mu: Morphism) -> "FormalSum":
        """``μ ∘ s``."""
        t: dict = {}
        for m, c in self.terms.items():
            k = compose(mu, m)
            t[k] = t.get(k, 0) + c
        return FormalSum(self.domain, mu.codomain, t)

    def compose_right(self, nu: Morphism) -> "FormalSum":
        """``s ∘ ν``."""
        t: dict = {}
        for m, c in self.terms.items():
            k = compose(m, nu)
            t[k] = t.get(k, 0) + c
        return FormalSum(nu.domain, self.codomain, t)

    def coefficient_vector(self, basis: Sequence[Morphism]) -> list:
        idx = {m: i for i, m in enumerate(basis)}
        v = [0] * len(basis)
        for m, c in self.terms.items():
            v[idx[m]] += c
        return v


def augmentation(s: FormalSum) -> int:
    return sum(s.terms.values())


# -- factorization graph ---------------------------------------------------


@dataclass
class ComponentStructure:
    """Connected components of the factorization graph on ``F(P, Q)``."""

    Q: Subgroup
    vertices: list
    components: list  # sorted lists of morphisms, ordered by first member
    component_of: dict = field(repr=False)

    def __len__(self):
        return len(self.components)

    def same_component(self, a: Morphism, b: Morphism) -> bool:
        return self.component_of[a] == self.component_of[b]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _check_proper(F: PCategory, Q: Subgroup):
    if not Q.issubset(F.P) or Q == F.P:
        raise QNotProper(f"{Q} is not a proper subgroup of P")


def factorization_cliques(F: PCategory, Q: Subgroup):
    """Yield ``(R, μ, [image tuple of ψ∘μ for ψ in F(P,R)])`` for ``|R| > |Q|``."""
    for R in F.subgroups:
        if R.order <= Q.order:
            continue
        top = F.maps_from(R)
        if not top:
            continue
        for mu in F.hom_sorted(R, Q):
            yield R, mu, [tuple(psi.as_dict()[v] for v in mu.images) for psi in top]


def factorization_components(F: PCategory, Q: Subgroup) -> ComponentStructure:
    _check_proper(F, Q)

    def build():
        verts = F.maps_from(Q)
        index = {m.images: i for i, m in enumerate(verts)}
        uf = _UnionFind(len(verts))
        for _, _, clique in factorization_cliques(F, Q):
            first = index[clique[0]]
            for imgs in clique[1:]:
                uf.union(first, index[imgs])
        groups: dict = {}
        for i, m in enumerate(verts):
            groups.setdefault(uf.find(i), []).append(m)
        comps = sorted(groups.values(), key=lambda c: c[0].key)
        comp_of = {m: k for k, c in enumerate(comps) for m in c}
        return ComponentStructure(Q, verts, comps, comp_of)

    return F.cached(("components", Q), build)


def is_essential(F: PCategory, Q: Subgroup) -> bool:
    return len(factorization_components(F, Q)) >= 2


def essential_subgroups(F: PCategory) -> list:
    return [Q for Q in F.proper_subgroups() if is_essential(F, Q)]


def is_reducible(F: PCategory, s: FormalSum) -> bool:
    """Membership of ``s`` (augmentation zero, codomain ``P``) in the reducible submodule."""
    if augmentation(s) != 0:
        raise NotInKernel("augmentation of s is not zero")
    if not s:
        return True
    if s.codomain != F.P:
        raise ValueError("s must have codomain P")
    cs = factorization_components(F, s.domain)
    sums = [0] * len(cs)
    for m, c in s.terms.items():
        sums[cs.component_of[m]] += c
    return not any(sums)


def rf_lattice_oracle(F: PCategory, Q: Subgroup, cap=None) -> bool:
    """Independent check of "reducible = whole kernel" at ``Q`` by integer row reduction."""
    _check_proper(F, Q)
    cap = DEFAULT.lattice_cap if cap is None else cap
    verts = F.maps_from(Q)
    n = len(verts)
    if n > cap:
        raise SizeCapExceeded(f"|F(P,Q)| = {n} exceeds lattice cap {cap}")
    index = {m: i for i, m in enumerate(verts)}
    rows = []
    for R in F.subgroups:
        if R.order <= Q.order:
            continue
        top = F.maps_from(R)
        for mu in F.hom_sorted(R, Q):
            for a in top:
                for b in top:
                    if a is b:
                        continue
                    row = [0] * n
                    row[index[compose(b, mu)]] += 1
                    row[index[compose(a, mu)]] -= 1
                    if any(row):
                        rows.append(row)
    return spans_augmentation_kernel(rows, n)


def is_generator_family(F: PCategory, S: Mapping[Subgroup, Iterable[FormalSum]],
                        include_top: bool = True) -> bool:
    """Does ``S`` generate the augmentation kernels at every proper subgroup?

    The family is indexed by proper subgroups only, so by default the top
    level contribution ``w_F(P) ∘ ZF(P, Q)`` is added. With
    ``include_top=False`` only the elements of ``S`` are used.
    """
    P = F.P
    fam = {Q: list(v) for Q, v in S.items()}
    for Q, elems in fam.items():
        for a in elems:
            if augmentation(a) != 0:
                raise NotInKernel(f"element of S at {Q} has nonzero augmentation")
            if a.domain != Q or a.codomain != P:
                raise ValueError("S_Q must consist of sums from Q to P")
    top = F.maps_from(P)
    ident = Morphism.identity(P)
    top_gens = [FormalSum.dimorphism(ident, t) for t in top if t.images != ident.images] if include_top else []
    for Q in F.proper_subgroups():
        basis = F.maps_from(Q)
        n = len(basis)
        if n <= 1:
            continue
        rows = []
        for mu in basis:
            mu_P = Morphism(Q, P, mu.images)
            for g in top_gens:
                rows.append(g.compose_right(corestrict(mu_P, P)).coefficient_vector(basis))
        for R in F.proper_subgroups():
            if R.order < Q.order or not fam.get(R):
                continue
            for phi in F.hom_sorted(R, Q):
                for a in fam[R]:
                    rows.append(a.compose_right(phi).coefficient_vector(basis))
        rows = [r for r in rows if any(r)]
        if not spans_augmentation_kernel(rows, n):
            return False
    return True


# -- telescoping chains ------------------------------------------------------


@dataclass(frozen=True)
class Link:
    """One term ``μ ∘ (φ'_i - φ_i) ∘ ν`` of a decomposition.

    ``outer: Q_i -> Q``, ``lower``/``upper``: ``R_i -> Q_i``, ``inner: R -> R_i``.
    """

    outer: Morphism
    lower: Morphism
    upper: Morphism
    inner: Morphism

    @property
    def start(self) -> Morphism:
        return compose(self.outer, compose(self.lower, self.inner))

    @property
    def end(self) -> Morphism:
        return compose(self.outer, compose(self.upper, self.inner))

    def contribution(self) -> FormalSum:
        return FormalSum.dimorphism(self.lower, self.upper).compose_right(self.inner).compose_left(self.outer)


def linear_sum(links: Iterable[Link], domain: Subgroup, codomain: Subgroup) -> FormalSum:
    total = FormalSum.zero(domain, codomain)
    for ln in links:
        total = total + ln.contribution()
    return total


def chain_to_sum(links: Sequence[Link], phi: Morphism, phi_prime: Morphism) -> FormalSum:
    """Check the chain equations for ``links`` in order and return ``φ' - φ``.

    The returned value is the actual sum of the link contributions, which
    telescopes to the two-term dimorphism.
    """
    if not links:
        if phi == phi_prime:
            return FormalSum.zero(phi.domain, phi.codomain)
        raise ChainBroken(0, "empty chain")
    if links[0].start != phi:
        raise ChainBroken(0, "first link does not start at φ")
    for i in range(1, len(links)):
        if links[i - 1].end != links[i].start:
            raise ChainBroken(i)
    if links[-1].end != phi_prime:
        raise ChainBroken(len(links), "last link does not end at φ'")
    total = linear_sum(links, phi.domain, phi.codomain)
    assert total == FormalSum.dimorphism(phi, phi_prime)
    return total


def sum_to_chain(links: Sequence[Link], phi: Morphism, phi_prime: Morphism) -> tuple:
    """Find an injective ordering ``σ`` of some links forming a chain from ``φ`` to ``φ'``.

    Requires ``φ' - φ`` to equal the sum of all link contributions; raises
    :class:`NoChain` otherwise. Depth-first, trying links in index order.
    """
    if phi == phi_prime:
        raise ValueError("φ and φ' must differ")
    target = FormalSum.dimorphism(phi, phi_prime)
    if linear_sum(links, phi.domain, phi.codomain) != target:
        raise NoChain("the links do not sum to φ' - φ")
    starts = [ln.start for ln in links]
    ends = [ln.end for ln in links]
    visited = {phi}
    path: list = []

    def dfs(state) -> bool:
        if state == phi_prime:
            return True
        for i in range(len(links)):
            if starts[i] == state and ends[i] not in visited:
                visited.add(ends[i])
                path.append(i)
                if dfs(ends[i]):
                    return True
                path.pop()
        return False

    if not dfs(phi):
        raise NoChain("no chain found")
    return tuple(path)


# -- Alperin decomposition -------------------------------------------------


@dataclass(frozen=True)
class AlperinLink:
    U: Subgroup
    sigma: Morphism  # in F(U)
    nu: Morphism  # in F(U, R)


@dataclass
class AlperinChain:
    """``ψ`` written as a chain through automorphisms of essential subgroups and of ``P``."""

    P: Subgroup
    R: Subgroup
    target: Morphism
    links: list

    def states(self) -> list:
        """The maps ``R -> P`` visited: ``ι_R^P`` then each ``ι∘σ_i∘ν_i``."""
        out = [Morphism.inclusion(self.R, self.P)]
        for ln in self.links:
            out.append(Morphism(self.R, self.P, compose(ln.sigma, ln.nu).images))
        return out

    def verify(self) -> bool:
        """Check every equation of the chain by direct composition."""
        P = self.P
        if not self.links:
            return False
        prev = Morphism.inclusion(self.R, P)
        for ln in self.links:
            iota = Morphism.inclusion(ln.U, P)
            if ln.sigma.domain != ln.U or ln.sigma.codomain != ln.U or ln.nu.codomain != ln.U:
                return False
            if ln.nu.domain != self.R:
                return False
            if compose(iota, ln.nu) != prev:
                return False
            prev = compose(iota, compose(ln.sigma, ln.nu))
        return prev == self.target

    def to_links(self) -> list:
        """The same chain as :class:`Link` data with ``Q = P``, ``φ = ι_R^P``, ``φ' = ψ``."""
        out = []
        for ln in self.links:
            if ln.sigma.is_identity():
                continue
            out.append(Link(Morphism.inclusion(ln.U, self.P), Morphism.identity(ln.U), ln.sigma, ln.nu))
        return out


def _apply(link: AlperinLink, P) -> Morphism:
    s = compose(link.sigma, link.nu)
    return Morphism(s.domain, P, s.images)


def _reverse(links, P):
    out = []
    for ln in reversed(links):
        inv = invert_iso(ln.sigma)
        after = compose(ln.sigma, ln.nu)
        out.append(AlperinLink(ln.U, inv, after))
    return out


def _precompose(links, mu):
    """Replace each ``ν`` by ``ν ∘ μ`` (``μ: R -> S`` corestricted onto the old domain)."""
    return [AlperinLink(ln.U, ln.sigma, compose(ln.nu, mu)) for ln in links]


def _simplify(links, R, P):
    """Cut loops, merge neighbours on the same ``U``, and drop identity steps."""
    changed = True
    while changed:
        changed = False
        # loop cutting
        states = [Morphism.inclusion(R, P)]
        kept: list = []
        pos = {states[0]: 0}
        for ln in links:
            nxt = _apply(ln, P)
            if nxt in pos:
                cut = pos[nxt]
                for s in states[cut + 1:]:
                    pos.pop(s, None)
                states = states[: cut + 1]
                kept = kept[:cut]
                changed = True
            else:
                kept.append(ln)
                states.append(nxt)
                pos[nxt] = len(states) - 1
        links = kept
        merged: list = []
        for ln in links:
            if merged and merged[-1].U == ln.U:
                prev = merged.pop()
                merged.append(AlperinLink(ln.U, compose(ln.sigma, prev.sigma), prev.nu))
                changed = True
            else:
                merged.append(ln)
        links = [ln for ln in merged if not ln.sigma.is_identity()]
        if len(links) != len(merged):
            changed = True
    return links


def alperin_decompose(F: PCategory, psi: Morphism) -> AlperinChain:
    """Decompose ``ψ ∈ F(P, R)`` through automorphisms of essential subgroups and ``P``.

    Recursion on ``|P : R|``: ``ψ`` is joined to some ``ι∘σ`` (``σ ∈ F(R)``)
    inside the factorization graph of ``R``, and each edge of that path
    factors through a strictly larger subgroup, decomposed recursively.
    Raises :class:`NotAlperin` when a required step does not exist.
    """
    P = F.P
    R = psi.domain
    psi = Morphism(R, P, psi.images)
    if psi not in F.hom(P, R):
        raise ValueError("ψ is not a morphism of F")
    links = _decompose(F, psi)
    links = _simplify(links, R, P)
    if not links:
        links = [AlperinLink(P, Morphism.identity(P), Morphism.inclusion(R, P))]
    return AlperinChain(P, R, psi, links)


def _decompose(F: PCategory, psi: Morphism) -> list:
    key = ("alperin", psi)
    if key in F._cache:
        return F._cache[key]
    P = F.P
    R = psi.domain
    if R == P:
        links = [AlperinLink(P, Morphism(P, P, psi.images), Morphism.identity(P))]
        F._cache[key] = links
        return links
    cs = factorization_components(F, R)
    incl = Morphism.inclusion(R, P)
    target_comp = cs.component_of[psi]
    links: list = []
    start = incl
    if len(cs) >= 2:
        for sigma in F.automorphisms(R):
            cand = Morphism(R, P, sigma.images)
            if cs.component_of[cand] == target_comp:
                break
        else:
            raise NotAlperin(f"F({R}) does not reach the component of {psi}")
        if not sigma.is_identity():
            links.append(AlperinLink(R, sigma, Morphism.identity(R)))
        start = cand
    for S, mu, a, b in _graph_path(F, R, start, psi):
        chain_a = _precompose(_decompose(F, a), mu)
        chain_b = _precompose(_decompose(F, b), mu)
        links.extend(_reverse(chain_a, P))
        links.extend(chain_b)
    links = _simplify(links, R, P)
    F._cache[key] = links
    return links


def _graph_path(F: PCategory, Q: Subgroup, src: Morphism, dst: Morphism) -> list:
    """BFS path from ``src`` to ``dst`` in the factorization graph of ``Q``.

    Each step is ``(S, μ, a, b)``: current vertex ``a∘μ``, next ``b∘μ``.
    """
    if src == dst:
        return []
    adj: dict = {}
    for S, mu, _ in factorization_cliques(F, Q):
        top = F.maps_from(S)
        for a in top:
            adj.setdefault(compose(a, mu), []).append((S, mu, a, top))
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for S, mu, a, top in adj.get(v, ()):
            for b in top:
                w = compose(b, mu)
                if w not in prev:
                    prev[w] = (v, (S, mu, a, b))
                    queue.append(w)
    if dst not in prev:
        raise NotAlperin(f"{src} and {dst} lie in different components")
    steps = []
    v = dst
    while prev[v] is not None:
        u, step = prev[v]
        steps.append(step)
        v = u
    return steps[::-1]


def reachable_by_automorphisms(F: PCategory, R: Subgroup, allowed: Iterable[Subgroup]) -> set:
    """All maps ``R -> P`` reachable from ``ι_R^P`` by ``f -> σ∘f`` with ``σ ∈ F(U)``, ``U`` allowed.

    A brute-force search over the finite category, used to cross-check
    :func:`alperin_decompose`.
    """
    P = F.P
    allowed = list(allowed)
    start = Morphism.inclusion(R, P)
    seen = {start}
    queue = [start]
    for f in queue:
        for U in allowed:
            if not f.image.issubset(U):
                continue
            for sigma in F.automorphisms(U):
                m = sigma.as_dict()
                g = Morphism(R, P, [m[v] for v in f.images])
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
    return seen
