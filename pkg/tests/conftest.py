import itertools

import pytest

from fuscat.catalog import (
    c4_inversion,
    cyclic,
    dihedral,
    elementary_abelian,
    gl32,
    klein_four,
    klein_seed_iso,
    quaternion,
    symmetric,
)
from fuscat.pcategory import inner_category
from fuscat.verify import fusion_from_ambient

SMALL = {
    "C2": lambda: cyclic(2, prime=2),
    "C4": lambda: cyclic(4, prime=2),
    "V4": klein_four,
    "C8": lambda: cyclic(8, prime=2),
    "D8": lambda: dihedral(4),
    "Q8": quaternion,
    "C2^3": lambda: elementary_abelian(2, 3),
}


def brute_subgroups(G):
    """Every subset containing 1 and closed under products (exponential; |G| <= 8)."""
    out = set()
    rest = list(range(1, G.order))
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            S = {0, *combo}
            if all(G.mul(a, b) in S for a in S for b in S):
                out.add(frozenset(S))
    return out


def pair_closures(G):
    """Subgroups generated by at most two elements, by naive closure."""
    out = set()
    for a in range(G.order):
        for b in range(a, G.order):
            S = {0, a, b}
            while True:
                new = {G.mul(x, y) for x in S for y in S} | S
                if new == S:
                    break
                S = new
            out.add(frozenset(S))
    return out


def brute_automorphisms(Q):
    """All bijections of ``Q`` respecting the product, as image tuples in element order."""
    G = Q.parent
    elems = list(Q.elements)
    out = set()
    for perm in itertools.permutations(elems[1:]):
        m = dict(zip(elems, (0, *perm)))
        if all(m[G.mul(a, b)] == G.mul(m[a], m[b]) for a in elems for b in elems):
            out.add(tuple(m[x] for x in elems))
    return out


def perm_conjugation_maps(G, S, R):
    """``F_S(G)(S, R)`` computed with permutation arithmetic on ``G.labels``."""
    labels = G.labels
    index = {p: i for i, p in enumerate(labels)}

    def mul(a, b):
        return tuple(a[i] for i in b)

    def inv(a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    maps = set()
    S_set = set(S.elements)
    for g in labels:
        gi = inv(g)
        imgs = tuple(index[mul(mul(g, labels[u]), gi)] for u in R.elements)
        if set(imgs) <= S_set:
            maps.add(imgs)
    return maps


@pytest.fixture(scope="session")
def s4():
    return fusion_from_ambient(symmetric(4), 2)


@pytest.fixture(scope="session")
def gl32_fusion():
    return fusion_from_ambient(gl32(), 2)


@pytest.fixture(scope="session")
def klein_iso():
    return klein_seed_iso()


@pytest.fixture(scope="session")
def c4_inv():
    return c4_inversion()


@pytest.fixture(scope="session", params=sorted(SMALL))
def inner(request):
    return inner_category(SMALL[request.param](), 2)
