from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Config:
    """Size limits. Exceeding any of them raises a CapExceeded error."""

    perm_order_cap: int = 10000
    subgroup_cap: int = 64  # |G| for all_subgroups (the role of P)
    aut_cap: int = 64  # |Q| for compute_aut
    aut_subgroup_cap: int = 400  # |Aut(Q)| for subgroups_of_aut
    hom_cap: int = 200000  # total number of isomorphisms in a closure
    lattice_cap: int = 200  # |F(P,Q)| for the lattice oracle
    reduced_k: bool = False  # fall back to {1, F_Q(Q), Aut(Q)} instead of raising

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT = Config()
