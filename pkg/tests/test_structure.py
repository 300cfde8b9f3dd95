import numpy as np
import pytest

from pgroups.groups import (
    FiniteGroup,
    Subgroup,
    minimal_generating_set,
    quotient,
    subgroup_closure,
    whole_subgroup,
)
from pgroups.structure import (
    abelian_invariants,
    center,
    centralizer,
    centralizer_of_frattini_in_frattini,
    derived_subgroup,
    exponent_of,
    frattini,
    is_normal,
    is_powerful,
    is_strongly_frattinian,
    lower_central_series,
    maximal_subgroups,
    min_gens_abelian,
    nilpotency_class,
    normalizer,
    omega,
    omega_set,
    power_subgroup,
    purely_nonabelian,
    structure_profile,
    subgroup_lattice,
    upper_central_series,
)

from conftest import cyclic_table


def c(n):
    return FiniteGroup.from_cayley_table(cyclic_table(n))


# --- centralizers ---------------------------------------------------------------------

def test_center_of_abelian_group_is_whole(by_id):
    G = by_id("c9c3")
    assert center(G).is_whole()


def test_center_of_heisenberg(by_id):
    G = by_id("heis27")
    Z = center(G)
    assert Z.order == 3
    assert Z.mask == derived_subgroup(G).mask


def test_centralizer_of_center_is_whole(by_id):
    G = by_id("m81")
    assert centralizer(G, center(G)).is_whole()


def test_normalizer_contains_centralizer(by_id):
    G = by_id("heis27")
    S = subgroup_closure(G, [1])
    N = normalizer(G, S)
    C = centralizer(G, S)
    assert (C.mask & N.mask) == C.mask


# --- central series --------------------------------------------------------------------

def test_abelian_series(by_id):
    G = by_id("c3c3")
    ucs = upper_central_series(G)
    assert len(ucs) == 2 and ucs[1].is_whole()
    assert nilpotency_class(G) == 1


def test_heisenberg_series(by_id):
    G = by_id("heis27")
    assert nilpotency_class(G) == 2
    lcs = lower_central_series(G)
    assert lcs[1].mask == center(G).mask
    assert lcs[1].order == 3
    prof = structure_profile(G)
    assert prof.coclass == 1


def test_upper_series_matches_definitional_recomputation(by_id):
    # zeta_{i+1}/zeta_i must be the center of G/zeta_i
    for gid in ("heis27", "m81", "mc81a", "g243d"):
        G = by_id(gid)
        ucs = upper_central_series(G)
        for i in range(len(ucs) - 1):
            Q, proj = quotient(G, ucs[i])
            pulled = proj.preimage(center(Q))
            assert pulled.mask == ucs[i + 1].mask


def test_lower_series_steps_are_commutators(by_id):
    for gid in ("heis27", "mc243a", "g243a"):
        G = by_id(gid)
        lcs = lower_central_series(G)
        comm = G.commutator_table()
        for i in range(len(lcs) - 1):
            mem = lcs[i].member_array()
            gens = np.unique(comm[np.ix_(mem, np.arange(G.order))])
            assert subgroup_closure(G, map(int, gens)).mask == lcs[i + 1].mask


def test_series_on_maximal_class_group(by_id):
    G = by_id("mc243a")
    ucs = upper_central_series(G)
    assert [s.order for s in ucs] == [1, 3, 9, 27, 243]
    # coclass 1: |zeta_2 / zeta_1| = p
    assert ucs[2].order // ucs[1].order == 3


# --- Frattini and maximal subgroups ----------------------------------------------------------

def test_frattini_examples(by_id):
    assert frattini(by_id("c3c3")).order == 1
    assert frattini(by_id("c9")).order == 3
    G = by_id("heis27")
    assert frattini(G).mask == center(G).mask


def test_frattini_dual_route_on_catalog(catalog_entries, by_id):
    # frattini() raises CrossCheckFailed internally if the two routes differ
    for entry in catalog_entries:
        frattini(by_id(entry.id))


def test_maximal_subgroup_counts(by_id):
    assert len(maximal_subgroups(c(3))) == 1
    assert len(maximal_subgroups(by_id("c3c3"))) == 4
    G = by_id("heis27")
    maxes = maximal_subgroups(G)
    assert len(maxes) == 4
    Z = center(G)
    for M in maxes:
        assert M.order == 9
        assert (Z.mask & M.mask) == Z.mask


def test_maximal_count_formula(catalog_entries, by_id):
    for entry in catalog_entries:
        G = by_id(entry.id)
        if G.order == 1:
            continue
        p = G.prime()
        d = len(minimal_generating_set(G))
        assert len(maximal_subgroups(G)) == (p ** d - 1) // (p - 1)


# --- omega and power subgroups -------------------------------------------------------------

def test_omega_of_c9():
    G = c(9)
    assert omega(whole_subgroup(G), 1).order == 3


def test_omega_heisenberg_exponent_three(by_id):
    G = by_id("heis27")
    W = whole_subgroup(G)
    assert omega(W, 1).is_whole()
    assert len(omega_set(W, 1)) == 27
    assert power_subgroup(G, 3).order == 1


def test_power_subgroup_of_m27(by_id):
    G = by_id("m27")
    assert power_subgroup(G, 3).order == 3


# --- profiles --------------------------------------------------------------------------------

def test_profile_c3c3(by_id):
    prof = structure_profile(by_id("c3c3"))
    assert prof.is_powerful
    assert prof.is_purely_nonabelian is False


def test_profile_heisenberg(by_id):
    prof = structure_profile(by_id("heis27"))
    assert (prof.dG, prof.nilpotency_class, prof.coclass) == (2, 2, 1)
    assert not prof.is_powerful
    assert prof.is_purely_nonabelian is True
    assert (prof.r, prof.s) == (1, 1)


def test_profile_regressions(catalog_entries, by_id):
    for entry in catalog_entries:
        prof = structure_profile(by_id(entry.id)).to_json()
        assert prof == entry.expected, entry.id


def test_non_prime_power_rejected():
    from pgroups.errors import NotPPower
    with pytest.raises(NotPPower):
        structure_profile(c(6))


# --- purely non-abelian detection ---------------------------------------------------------

def test_direct_factor_detected(by_id):
    assert purely_nonabelian(by_id("c3xheis27")) is False
    assert purely_nonabelian(by_id("c3xm27")) is False


def test_extraspecial_groups_are_purely_nonabelian(by_id):
    assert purely_nonabelian(by_id("heis27")) is True
    assert purely_nonabelian(by_id("m27")) is True
    assert purely_nonabelian(by_id("heisc9")) is True


def test_hidden_cyclic_factor_needs_the_lattice():
    # C9 x Heisenberg-27: Omega_1(center) lies inside Phi, the center does
    # not, so only the complement search can decide
    from conftest import product_table, cyclic_table
    from conftest import heisenberg_matrix_table
    table = product_table(cyclic_table(9), heisenberg_matrix_table(3))
    G = FiniteGroup.from_cayley_table(table)
    assert purely_nonabelian(G) is False


def test_lemma_style_one_way_check(catalog_entries, by_id):
    # purely non-abelian implies the order-p part of the center is inside Phi
    for entry in catalog_entries:
        G = by_id(entry.id)
        if purely_nonabelian(G) is True:
            phi = frattini(G)
            om = omega(center(G), 1)
            assert (om.mask & phi.mask) == om.mask, entry.id


# --- subgroup lattice --------------------------------------------------------------------

def test_lattice_of_elementary_abelian(by_id):
    # 1 + 4 + 1 subgroups of C3 x C3
    assert len(subgroup_lattice(by_id("c3c3"))) == 6


def test_lattice_of_heisenberg(by_id):
    G = by_id("heis27")
    lattice = subgroup_lattice(G)
    orders = np.asarray(G.element_orders())
    expected_order3 = int((orders == 3).sum()) // 2
    expected = 1 + expected_order3 + len(maximal_subgroups(G)) + 1
    assert len(lattice) == expected == 19


def test_lattice_cap():
    from pgroups.errors import LatticeCapExceeded
    G = c(9)
    with pytest.raises(LatticeCapExceeded):
        subgroup_lattice(G, cap=3)


# --- powerful / frattinian flags ---------------------------------------------------------------

def test_powerfulness(by_id):
    assert is_powerful(by_id("m27"))
    assert is_powerful(by_id("m81"))
    assert not is_powerful(by_id("heis27"))
    assert not is_powerful(by_id("g729a"))


def test_strongly_frattinian_examples(by_id):
    assert is_strongly_frattinian(by_id("mc243a"))
    assert is_strongly_frattinian(by_id("g729a"))
    assert not is_strongly_frattinian(by_id("heis27"))
    # strongly frattinian implies the weaker centralizer condition
    for gid in ("mc243a", "mc243b", "g729a", "g729b"):
        assert centralizer_of_frattini_in_frattini(by_id(gid))


# --- abelian invariants -------------------------------------------------------------------------

def test_abelian_invariants(by_id):
    assert abelian_invariants(whole_subgroup(by_id("c9c3"))) == (9, 3)
    assert abelian_invariants(whole_subgroup(by_id("c27"))) == (27,)
    assert abelian_invariants(whole_subgroup(by_id("c3c3c3"))) == (3, 3, 3)
    assert min_gens_abelian(whole_subgroup(by_id("c9c3"))) == 2


def test_exponent_of_subgroup(by_id):
    G = by_id("m27")
    assert exponent_of(whole_subgroup(G)) == 9
    assert exponent_of(center(G)) == 3
