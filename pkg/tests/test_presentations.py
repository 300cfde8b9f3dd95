import numpy as np
import pytest

from pgroups.errors import InconsistentPresentation, SizeCapExceeded
from pgroups.presentations import (
    PcPresentation,
    from_pc_presentation,
    index_to_vector,
    vector_to_index,
)
from pgroups.structure import center, nilpotency_class, structure_profile


def test_index_encoding_roundtrip():
    for idx in range(27):
        vec = index_to_vector(idx, 3, 3)
        assert vector_to_index(vec, 3) == idx


def test_cyclic_of_order_three():
    G = from_pc_presentation(PcPresentation(p=3, rank=1))
    assert G.order == 3
    assert G.element_order(1) == 3


def test_heisenberg_presentation_matches_matrix_model(heis27_matrix_model):
    G = from_pc_presentation(
        PcPresentation(p=3, rank=3, commutators={(2, 1): (0, 0, 1)}))
    H = heis27_matrix_model
    for K in (G, H):
        assert K.order == 27
        assert K.exponent() == 3
        assert nilpotency_class(K) == 2
        assert center(K).order == 3
    # same multiset of element orders
    assert sorted(map(int, G.element_orders())) == sorted(map(int, H.element_orders()))


def test_heisenberg_at_p5_profile():
    G = from_pc_presentation(
        PcPresentation(p=5, rank=3, commutators={(2, 1): (0, 0, 1)}))
    prof = structure_profile(G)
    assert (prof.p, prof.n, prof.nilpotency_class, prof.exponent) == (5, 3, 2, 5)


def test_inconsistent_presentation_rejected():
    # [g3, g1] = g3 would make conjugation by g1 act with order 2 on <g3>,
    # impossible when g1^3 = 1; the collected table cannot be associative
    bad = PcPresentation(
        p=3, rank=3,
        commutators={(2, 1): (0, 0, 1), (3, 1): (0, 0, 1)})
    with pytest.raises(InconsistentPresentation):
        from_pc_presentation(bad)


def test_another_inconsistent_presentation():
    # power relation incompatible with the commutator structure
    bad = PcPresentation(p=3, rank=2, powers={1: (0, 1)},
                         commutators={(2, 1): (0, 1)})
    with pytest.raises(InconsistentPresentation):
        from_pc_presentation(bad)


def test_triangularity_enforced():
    with pytest.raises(ValueError):
        PcPresentation(p=3, rank=2, powers={2: (1, 0)})
    with pytest.raises(ValueError):
        PcPresentation(p=3, rank=3, commutators={(3, 2): (0, 1, 0)})
    with pytest.raises(ValueError):
        PcPresentation(p=3, rank=2, commutators={(1, 2): (0, 0)})


def test_exponent_range_enforced():
    with pytest.raises(ValueError):
        PcPresentation(p=3, rank=2, powers={1: (0, 3)})


def test_size_cap_respected():
    with pytest.raises(SizeCapExceeded):
        from_pc_presentation(PcPresentation(p=3, rank=7))


def test_json_roundtrip():
    pcp = PcPresentation(p=3, rank=4, powers={2: (0, 0, 1, 0)},
                         commutators={(2, 1): (0, 0, 1, 0)})
    again = PcPresentation.from_json(pcp.to_json())
    assert again == pcp


def test_labels_are_normal_words():
    G = from_pc_presentation(
        PcPresentation(p=3, rank=3, commutators={(2, 1): (0, 0, 1)}))
    assert G.label(0) == "e"
    assert G.label(1) == "g1"
    assert G.label(4) == "g1*g2"
