import numpy as np
import pytest

from pgroups.errors import (
    NotAbelianAdd,
    NotDistributive,
    NotPRing,
    NotRadical,
)
from pgroups.groups import FiniteGroup, whole_subgroup
from pgroups.rings import (
    FiniteRing,
    adjoint_group,
    cyclic_group,
    is_left_p_nil,
    is_p_nil,
    is_radical,
    is_right_p_nil,
    nilpotency_degree,
    null_ring,
    omega_additive,
    omega_adjoint,
    omega_set_adjoint,
    power_ideal,
    quotient_ring,
    residue_ring,
    scaled_residue_ring,
    strictly_upper_ring,
    subring_closure,
)
from pgroups.structure import nilpotency_class


def ring_corpus():
    """The finite rings exercised by the lemma suites."""
    corpus = {
        "null_c3": null_ring(cyclic_group(3)),
        "null_c9": null_ring(cyclic_group(9)),
        "3Z_mod_27": scaled_residue_ring(3, 3),
        "3Z_mod_81": scaled_residue_ring(3, 4),
        "5Z_mod_125": scaled_residue_ring(5, 3),
        "upper3_f3": strictly_upper_ring(3),
        "upper3_f5": strictly_upper_ring(5),
        "Z9_unital": residue_ring(9),
        "Z3_unital": residue_ring(3),
    }
    # 3 * (Z/9Z) as a subring of Z/9Z
    corpus["3Z9_subring"] = subring_closure(residue_ring(9), [3])
    return corpus


# --- construction -----------------------------------------------------------------------

def test_null_ring_on_c3_is_valid():
    R = null_ring(cyclic_group(3))
    assert R.order == 3
    assert all(R.times(x, y) == R.zero for x in R.elements() for y in R.elements())


def test_scaled_residue_ring_matches_integer_arithmetic():
    # elements of 3Z/27Z are 3i; check the tables against plain integers
    R = scaled_residue_ring(3, 3)
    assert R.order == 9
    for i in range(9):
        for j in range(9):
            assert 3 * R.plus(i, j) == (3 * i + 3 * j) % 27
            assert 3 * R.times(i, j) == (3 * i * 3 * j) % 27


def test_circle_example_in_3z27():
    # 3 o 3 = 3 + 3 + 9 = 15, i.e. index 1 o 1 = 5
    R = scaled_residue_ring(3, 3)
    assert R.circle(1, 1) == 5


def test_non_distributive_tables_rejected():
    add = np.array(cyclic_group(4).mul)
    mul = np.zeros((4, 4), dtype=np.int64)
    mul[1, 1] = 1
    with pytest.raises(NotDistributive):
        FiniteRing.make_ring(add, mul)


def test_nonabelian_additive_table_rejected(by_id):
    G = by_id("heis27")
    with pytest.raises(NotAbelianAdd):
        FiniteRing.make_ring(np.asarray(G.mul), np.asarray(G.mul))


# --- circle and adjoint powers ----------------------------------------------------------------

def test_zero_is_circle_identity():
    R = scaled_residue_ring(3, 3)
    for y in R.elements():
        assert R.circle(R.zero, y) == y
        assert R.circle(y, R.zero) == y


def test_null_ring_circle_is_addition():
    R = null_ring(cyclic_group(9))
    for x in R.elements():
        for m in range(10):
            assert R.adjoint_power(x, m) == R.scalar(m, x)


def test_adjoint_power_is_additive_on_exponents():
    R = scaled_residue_ring(3, 3)
    exp = R.additive.exponent()
    for x in R.elements():
        for a in range(exp + 1):
            for b in range(exp + 1):
                lhs = R.adjoint_power(x, a + b)
                rhs = R.circle(R.adjoint_power(x, a), R.adjoint_power(x, b))
                assert lhs == rhs


# --- adjoint groups and radicality --------------------------------------------------------------

def test_null_ring_is_radical():
    R = null_ring(cyclic_group(5))
    assert is_radical(R)
    assert adjoint_group(R).group.order == 5


def test_3z27_is_radical_with_abelian_adjoint():
    R = scaled_residue_ring(3, 3)
    assert is_radical(R)
    view = adjoint_group(R)
    assert len(view) == 9
    assert view.group.is_abelian()


def test_unital_rings_are_not_radical():
    assert not is_radical(residue_ring(3))
    assert not is_radical(residue_ring(9))
    with pytest.raises(NotRadical):
        omega_set_adjoint(residue_ring(3), 1)


def test_upper_triangular_adjoint_is_heisenberg_like():
    R = strictly_upper_ring(3)
    assert is_radical(R)
    assert nilpotency_degree(R) == 2
    assert nilpotency_class(adjoint_group(R).group) == 2


# --- power ideals and nilpotency degree -------------------------------------------------------

def test_power_ideal_chain_of_3z27():
    R = scaled_residue_ring(3, 3)
    # R^2 = {0, 9, 18} (indices {0, 3, 6}), R^3 = 0
    assert sorted(power_ideal(R, 2).members) == [0, 3, 6]
    assert power_ideal(R, 3).order == 1
    assert nilpotency_degree(R) == 2


def test_null_ring_has_degree_one():
    assert nilpotency_degree(null_ring(cyclic_group(3))) == 1


def test_unital_ring_is_not_nilpotent():
    assert nilpotency_degree(residue_ring(3)) is None


def test_3z81_has_degree_three():
    assert nilpotency_degree(scaled_residue_ring(3, 4)) == 3


# --- p-nil predicates ---------------------------------------------------------------------------

def test_null_rings_are_p_nil():
    assert is_p_nil(null_ring(cyclic_group(3)))
    assert is_p_nil(null_ring(cyclic_group(9)))


def test_pR_is_p_nil():
    # the subring 3 * (Z/9Z) = {0, 3, 6} multiplies to zero mod 9
    S = subring_closure(residue_ring(9), [3])
    assert S.order == 3
    assert is_p_nil(S)


def test_unital_p_ring_is_never_p_nil():
    assert not is_right_p_nil(residue_ring(3))
    assert not is_left_p_nil(residue_ring(3))


def test_p_nil_needs_p_power_order():
    with pytest.raises(NotPRing):
        is_right_p_nil(residue_ring(6))


# --- omega subgroups -----------------------------------------------------------------------------

def test_omegas_coincide_on_null_rings():
    R = null_ring(cyclic_group(9))
    om_add = set(omega_additive(R, 1).members)
    assert om_add == set(omega_set_adjoint(R, 1))
    assert om_add == {0, 3, 6}


def test_omega_on_3z27():
    R = scaled_residue_ring(3, 3)
    assert sorted(omega_additive(R, 1).members) == [0, 3, 6]
    assert sorted(omega_set_adjoint(R, 1)) == [0, 3, 6]
    view = adjoint_group(R)
    om = omega_adjoint(R, 1)
    assert sorted(view.ring_indices(om)) == [0, 3, 6]


def test_omega_saturates():
    R = scaled_residue_ring(3, 3)
    assert omega_additive(R, 5).order == R.order
    assert len(omega_set_adjoint(R, 5)) == R.order


# --- quotient rings ------------------------------------------------------------------------------

def test_quotient_by_square_ideal():
    R = scaled_residue_ring(3, 3)
    I = power_ideal(R, 2)
    Q, proj = quotient_ring(R, I)
    assert Q.order == 3
    assert nilpotency_degree(Q) == 1  # products land in I, so Q is null


def test_non_ideal_rejected():
    from pgroups.errors import NotIdeal
    from pgroups.groups import Subgroup
    R = residue_ring(9)
    S = Subgroup(R.additive, [0, 3, 6])
    quotient_ring(R, S)  # 3Z/9Z is an ideal
    R2 = strictly_upper_ring(3)
    # an additive line that is not an ideal: span of a single slot
    for x in R2.elements():
        if x == R2.zero:
            continue
        from pgroups.groups import subgroup_closure
        S2 = subgroup_closure(R2.additive, [x])
        try:
            quotient_ring(R2, S2)
        except NotIdeal:
            return
    pytest.skip("no non-ideal line found")


# --- the lemma suites over the corpus -------------------------------------------------------------

def test_nilpotent_rings_are_radical_and_class_bounded():
    # adjoint class <= nilpotency degree, and the alternating-sum inverse
    for name, R in ring_corpus().items():
        deg = nilpotency_degree(R)
        if deg is None:
            continue
        assert is_radical(R), name
        view = adjoint_group(R)
        cls = nilpotency_class(view.group) if view.group.order > 1 else 0
        assert cls <= deg, name
        # explicit inverse: y = -x + x^2 - x^3 + ... circles with x to 0
        for x in R.elements():
            y = R.zero
            power, i = x, 1
            while power != R.zero:
                contrib = power if i % 2 == 0 else int(R.neg[power])
                y = R.plus(y, contrib)
                power = R.times(power, x)
                i += 1
            assert R.circle(x, y) == R.zero, name
            assert R.circle(y, x) == R.zero, name


def test_p_nil_rings_have_degree_bounded_by_additive_exponent():
    for name, R in ring_corpus().items():
        if R.order == 1:
            continue
        try:
            right = is_right_p_nil(R)
            left = is_left_p_nil(R)
        except NotPRing:
            continue
        if not (right or left):
            continue
        exp = R.additive.exponent()
        p = R.prime()
        m = 0
        while p ** m < exp:
            m += 1
        deg = nilpotency_degree(R)
        assert deg is not None and deg <= m, name
        view = adjoint_group(R)
        cls = nilpotency_class(view.group) if view.group.order > 1 else 0
        assert cls <= m, name


def test_omega_equality_for_odd_p_nil_radical_rings():
    for name, R in ring_corpus().items():
        try:
            p = R.prime()
        except NotPRing:
            continue
        if p == 2 or not is_radical(R):
            continue
        if not (is_right_p_nil(R) or is_left_p_nil(R)):
            continue
        exp = R.additive.exponent()
        n, q = 1, p
        while q <= exp:
            om_set = set(omega_set_adjoint(R, n))
            om_add = set(omega_additive(R, n).members)
            assert om_set == om_add, (name, n)
            # the set is already a subgroup of the adjoint group
            view = adjoint_group(R)
            om_grp = set(view.ring_indices(omega_adjoint(R, n)))
            assert om_grp == om_set, (name, n)
            n, q = n + 1, q * p
