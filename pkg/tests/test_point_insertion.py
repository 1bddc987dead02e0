"""
Tests for (r, h)-graphs: validation, boundary classification, point insertion and enumeration
"""

import itertools

import pytest

from core import AI, BI, CB, NS_PLUS, RAMOND, InsertionError, PreconditionError
from degeneration import codim1_boundaries, codim2_boundaries
from isomorphism import are_rh_isomorphic
from point_insertion import (BoundaryStratumRef, RHGraph, classify_boundary, enumerate_smooth_rh, facets_of,
                             insert_point, pi_backward, pi_forward, remove_point, rh_genus, same_boundary,
                             validate_rh)
from spin import create_disk, witten_rank

INVOLUTION_SOURCES = [
    (9, 3, [1, 5, 5, 5], []),
    (2, 0, [0, 0, 0], [0]),
    (2, 0, [0, 0, 0], [0, 0]),
    (2, 0, [0], [0, 0]),
    (3, 0, [1], [0, 0]),
    (4, 1, [2, 2, 2, 2], [1]),
    (5, 1, [1, 1, 3, 3], [0]),
]


def _two_disk_cell(dashed=(((0, 2), (1, 2)),), h=3):
    """(RHGraph) r = 9: a disk with boundary twists 5, 5 and an internal tail of twist 3, dashed to
    the last boundary tail of a disk with boundary twists 1, 5, 1"""
    components = [create_disk(9, [5, 5], [3]), create_disk(9, [1, 5, 1])]
    paired = {tail for line in dashed for tail in line}
    boundary = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2)]
    internal = [(0, 2)]
    return RHGraph(9, h, components, dashed,
                   {tail: label for label, tail in enumerate((t for t in boundary if t not in paired), 1)},
                   {tail: label for label, tail in enumerate((t for t in internal if t not in paired), 1)})


def _single_disk_cell(disk, h):
    base = disk.get_base()
    return RHGraph(disk.get_r(), h, [disk], (),
                   {(0, tail): label for tail, label in base.get_boundary_marking().items()},
                   {(0, tail): label for tail, label in base.get_internal_marking().items()})


class TestValidation:

    def test_two_disk_cell_is_valid(self):
        cell = _two_disk_cell()
        assert validate_rh(cell).is_valid()
        assert cell.get_partner_tail((1, 2)) == (0, 2)
        assert cell.get_dimension() == 1
        assert rh_genus(cell) == 0

    def test_dashed_twists_must_match(self):
        report = validate_rh(_two_disk_cell(dashed=(((0, 2), (1, 1)),)))
        assert "dashed" in report.get_failed_conditions()
        assert any("2a + b = r - 2" in message for _, message, _ in report.get_violations("dashed"))

    def test_components_must_be_joined(self):
        report = validate_rh(_two_disk_cell(dashed=()))
        assert report.get_failed_conditions() == {"connected"}

    def test_components_must_have_the_level(self):
        assert "level" in validate_rh(_two_disk_cell(h=0)).get_failed_conditions()

    def test_level_range(self):
        assert validate_rh(_two_disk_cell(h=4)).get_failed_conditions() == {"structure"}

    def test_bare_bubbles_are_rejected(self):
        components = [create_disk(9, [1], [3]), create_disk(9, [1, 5, 1])]
        cell = RHGraph(9, 3, components, [((0, 1), (1, 2))], {(0, 0): 1, (1, 0): 2, (1, 1): 3})
        assert validate_rh(cell).get_failed_conditions() == {"bubble"}

    def test_components_must_be_legal(self):
        disk = create_disk(9, [6, 5, 5], legality=[0, 1, 1])
        assert "legal" in validate_rh(_single_disk_cell(disk, 3)).get_failed_conditions()


class TestClassification:

    def test_worked_disk_has_two_bi_facets(self, r9_disk):
        facets = facets_of(_single_disk_cell(r9_disk, 3))
        assert [facet.get_type() for facet in facets] == [BI, BI]

    def test_low_level_makes_them_ns_plus(self, r9_disk):
        facets = facets_of(_single_disk_cell(r9_disk, 2))
        assert [classify_boundary(facet) for facet in facets] == [NS_PLUS, NS_PLUS]

    def test_after_insertion_facets(self):
        facets = facets_of(_two_disk_cell())
        assert len(facets) == 2
        assert {facet.get_component_index() for facet in facets} == {0}
        assert {facet.get_type() for facet in facets} == {AI}

    def test_ramond_and_contracted_boundaries(self):
        cell = _single_disk_cell(create_disk(3, [], [1, 1]), 0)
        assert sorted(facet.get_type() for facet in facets_of(cell)) == sorted([CB, RAMOND])

    def test_a_site_is_needed_for_multi_edge_graphs(self, r2_disk):
        corner = codim2_boundaries(r2_disk)[0]
        with pytest.raises(PreconditionError):
            BoundaryStratumRef(_single_disk_cell(r2_disk, 0), 0, corner)


class TestInsertion:

    def test_insertion_moves_the_legal_side(self, r9_disk):
        facet = facets_of(_single_disk_cell(r9_disk, 3))[0]
        inserted, index, (illegal, bubble_half) = insert_point(facet.get_degenerate(), 0,
                                                               facet.get_site().get_half_edge())
        assert index == 0
        assert inserted.get_num_dashed() == 1
        moved = inserted.get_component(1)
        assert sorted(moved.get_twist(h) for h in moved.get_base().get_boundary_tails()) == [1, 1, 5]
        kept = inserted.get_component(0)
        assert kept.get_twist(illegal) == 6
        assert kept.get_twist(bubble_half) == 1
        assert kept.is_legal(bubble_half)

    def test_forward_image_is_a_valid_after_insertion_facet(self, r9_disk):
        facet = facets_of(_single_disk_cell(r9_disk, 3))[0]
        cell, image = pi_forward(facet)
        assert validate_rh(cell).is_valid()
        assert image.get_type() == AI
        assert cell.get_num_dashed() == 1
        assert rh_genus(cell) == 0
        assert cell.get_dimension() == 1

    def test_removal_undoes_insertion(self, r9_disk):
        facet = facets_of(_single_disk_cell(r9_disk, 3))[1]
        inserted, index, edge = insert_point(facet.get_degenerate(), 0, facet.get_site().get_half_edge())
        removed, merged, _ = remove_point(inserted, index, edge[0])
        assert merged == 0
        assert are_rh_isomorphic(removed, facet.get_degenerate()) is not None

    def test_insertion_needs_a_small_even_ns_twist(self, r9_disk):
        facet = facets_of(_single_disk_cell(r9_disk, 2))[0]
        with pytest.raises(InsertionError):
            insert_point(facet.get_degenerate(), 0, facet.get_site().get_half_edge())

    def test_ramond_edges_are_not_inserted(self):
        disk = create_disk(3, [], [1, 1])
        ramond = next(f for f in codim1_boundaries(disk) if f.get_base().get_edges())
        degenerate = RHGraph(3, 0, [ramond], (), {}, {(0, 0): 1, (0, 1): 2})
        with pytest.raises(InsertionError):
            insert_point(degenerate, 0, ramond.get_base().get_edges()[0][0])

    def test_forward_and_backward_need_the_right_types(self):
        ai_facet = facets_of(_two_disk_cell())[0]
        with pytest.raises(InsertionError):
            pi_forward(ai_facet)
        back_cell, back = pi_backward(ai_facet)
        assert back.get_type() == BI
        with pytest.raises(InsertionError):
            pi_backward(back)

    def test_point_insertion_is_an_involution(self):
        boundaries = []
        for r, h, boundary, internal in INVOLUTION_SOURCES:
            for cell in enumerate_smooth_rh(r, h, boundary, internal):
                boundaries.extend(facet for facet in facets_of(cell) if facet.get_type() == BI)
        assert len(boundaries) >= 200

        for boundary in boundaries:
            cell, image = pi_forward(boundary)
            assert image.get_type() == AI
            back_cell, back = pi_backward(image)
            assert back.get_type() == BI
            assert same_boundary(back, boundary)
            assert are_rh_isomorphic(back_cell, boundary.get_rh()) is not None


class TestEnumeration:

    def test_circle_cells(self):
        cells = enumerate_smooth_rh(9, 3, [1, 5, 5, 5])
        assert len(cells) == 12
        assert [cell.get_num_dashed() for cell in cells] == [0] * 6 + [1] * 6
        assert all(validate_rh(cell).is_valid() and rh_genus(cell) == 0 for cell in cells)
        assert all(cell.get_dimension() == 1 for cell in cells)

    def test_sphere_cells(self):
        cells = enumerate_smooth_rh(2, 0, [0, 0, 0], [0])
        assert len(cells) == 16
        assert sum(1 for cell in cells if cell.get_num_dashed() == 0) == 2

    def test_single_point_of_moduli(self):
        cells = enumerate_smooth_rh(9, 0, [7], [0])
        assert len(cells) == 1
        assert cells[0].get_dimension() == 0

    def test_no_spin_structure(self):
        assert enumerate_smooth_rh(9, 3, [7, 7]) == []

    def test_twist_ranges_are_checked(self):
        with pytest.raises(PreconditionError, match="Invalid twist ranges"):
            enumerate_smooth_rh(9, 3, [2, 5, 5, 5])
        with pytest.raises(PreconditionError, match="Invalid twist ranges"):
            enumerate_smooth_rh(9, 4, [1, 5, 5, 5])

    def test_enumerated_cells_are_pairwise_distinct(self):
        cells = enumerate_smooth_rh(9, 3, [1, 5, 5, 5])
        for first, second in itertools.combinations(cells, 2):
            assert are_rh_isomorphic(first, second) is None

    def test_rank_parity_on_every_component(self):
        for r, h, boundary, internal in INVOLUTION_SOURCES:
            for cell in enumerate_smooth_rh(r, h, boundary, internal):
                for component in cell.get_components():
                    legal = sum(1 for tail in component.get_base().get_boundary_tails() if component.is_legal(tail))
                    assert witten_rank(component) % 2 == (legal - 1) % 2
