"""
Tests for isomorphism search and the isomorphism index
"""

from isomorphism import (SPIN, IsomorphismIndex, are_isomorphic, are_rh_isomorphic, encode, invariant_key,
                         unique_up_to_isomorphism)
from point_insertion import RHGraph
from spin import create_disk


def test_identity_isomorphism(r9_disk):
    found = are_isomorphic(r9_disk, create_disk(9, [1, 5, 5, 5]))
    assert found is not None
    assert found.get_half_edge_map() == {h: h for h in range(4)}
    assert found.get_vertex_map() == {0: 0}


def test_markings_are_respected(r9_disk):
    rotated = create_disk(9, [5, 5, 5, 1])
    assert are_isomorphic(r9_disk, rotated) is None

    found = are_isomorphic(r9_disk, rotated, respect_decorations={SPIN})
    assert found is not None
    assert found.get_half_edge_map()[0] == 3


def test_twists_are_respected(r9_disk):
    assert are_isomorphic(r9_disk, create_disk(9, [1, 5, 5, 7]), respect_decorations={SPIN}) is None
    assert are_isomorphic(r9_disk.get_base(), create_disk(9, [1, 5, 5, 7]).get_base()) is not None


def test_invariant_keys_agree_on_isomorphic_graphs(r9_disk):
    rotated = create_disk(9, [5, 1, 5, 5])
    assert invariant_key(encode(r9_disk, {SPIN})) == invariant_key(encode(rotated, {SPIN}))


def test_index_keeps_one_representative(r9_disk):
    index = IsomorphismIndex()
    assert index.add(r9_disk, "first")
    assert not index.add(create_disk(9, [1, 5, 5, 5]), "second")
    assert index.find(create_disk(9, [1, 5, 5, 5])) == "first"
    assert index.find(create_disk(9, [1, 5, 5, 7])) is None
    assert len(index) == 1


def test_unique_up_to_isomorphism_keeps_input_order(r9_disk):
    other = create_disk(9, [1, 5, 5, 7])
    assert unique_up_to_isomorphism([r9_disk, other, create_disk(9, [1, 5, 5, 5])]) == [r9_disk, other]


def test_rh_isomorphism_checks_the_level(r9_disk):
    labels = {(0, h): h + 1 for h in range(4)}
    cell = RHGraph(9, 3, [r9_disk], (), labels)
    assert are_rh_isomorphic(cell, RHGraph(9, 3, [create_disk(9, [1, 5, 5, 5])], (), labels)) is not None
    assert are_rh_isomorphic(cell, cell.replace(h=2)) is None
    relabelled = cell.replace(boundary_labels={(0, h): 4 - h for h in range(4)})
    assert are_rh_isomorphic(cell, relabelled) is None
