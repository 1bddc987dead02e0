"""
Tests for the glued cell complexes of the two worked moduli problems and a few degenerate cases
"""

import pytest

from core import AI, BI, CB, FREE_BOUNDARY_TYPES, NS_PLUS, RAMOND, PreconditionError
from degeneration import smooth
from gluing import build_complex, cell_corners, topology_report
from isomorphism import are_rh_isomorphic
from point_insertion import RHGraph
from spin import witten_rank


def _assert_facets_smooth_back(complex_):
    for cell_index, cell in enumerate(complex_.get_cells()):
        for boundary in complex_.get_facets(cell_index):
            index = boundary.get_component_index()
            restored = cell.replace_component(index, smooth(boundary.get_facet(), boundary.get_site()))
            assert are_rh_isomorphic(restored, cell) is not None


def _assert_rank_parity(complex_):
    for cell_index in range(len(complex_.get_cells())):
        for boundary in complex_.get_facets(cell_index):
            facet = boundary.get_facet()
            base = facet.get_base()
            for vertex in base.get_open_vertices():
                legal = sum(1 for h in base.get_half_edges_at(vertex) if base.is_boundary(h) and facet.is_legal(h))
                assert witten_rank(facet, vertex) % 2 == (legal - 1) % 2


class TestCircle:

    def test_cells_and_matching(self, circle_complex):
        assert circle_complex.get_dimension() == 1
        assert len(circle_complex.get_cells()) == 12
        assert [cell.get_num_dashed() for cell in circle_complex.get_cells()] == [0] * 6 + [1] * 6
        assert len(circle_complex.get_all_facets()) == 24
        assert len(circle_complex.get_identifications()) == 12
        assert circle_complex.get_free_boundaries() == []

    def test_every_endpoint_is_glued_once(self, circle_complex):
        ends = [facet for pair in circle_complex.get_identifications() for facet in pair]
        assert sorted(ends) == sorted(circle_complex.get_all_facets())
        for bi, ai in circle_complex.get_identifications():
            assert circle_complex.get_facet(bi).get_type() == BI
            assert circle_complex.get_facet(ai).get_type() == AI

    def test_topology(self, circle_report):
        assert circle_report.get_num_components() == 1
        component = circle_report.get_components()[0]
        assert (component.get_vertices(), component.get_edges(), component.get_faces()) == (12, 12, 0)
        assert component.get_edge_sides() == 2 * component.get_vertices()
        assert circle_report.get_euler() == 0
        assert circle_report.is_closed()
        assert circle_report.is_perfect_matching()
        assert component.get_genus() is None

    def test_signs(self, circle_report):
        assert len(circle_report.get_pair_signs()) == 12
        assert circle_report.signs_opposite()
        assert circle_report.is_cocycle_trivial()
        assert circle_report.to_dict()["signs"]["all_opposite"]

    def test_facets_smooth_back(self, circle_complex):
        _assert_facets_smooth_back(circle_complex)
        _assert_rank_parity(circle_complex)


class TestSphere:

    def test_cells(self, sphere_complex):
        assert sphere_complex.get_dimension() == 2
        assert len(sphere_complex.get_cells()) == 16
        assert sphere_complex.get_free_boundaries() == []

    def test_two_spheres(self, sphere_report):
        assert sphere_report.get_num_components() == 2
        for component in sphere_report.get_components():
            assert component.get_facet_counts() == (6, 6, 2, 2, 2, 2, 2, 2)
            assert (component.get_vertices(), component.get_edges(), component.get_faces()) == (6, 12, 8)
            assert component.get_euler() == 2
            assert component.get_edge_sides() == 2 * component.get_edges()
            assert component.is_closed()
            assert component.is_orientable()
            assert component.get_genus() == 0
        assert sphere_report.get_euler() == 4

    def test_signs(self, sphere_report):
        assert sphere_report.signs_opposite()
        assert sphere_report.is_cocycle_trivial()
        assert sphere_report.is_perfect_matching()

    def test_corners(self, sphere_complex):
        cells = sphere_complex.get_cells()
        for cell_index, cell in enumerate(cells):
            corners = sphere_complex.get_corners(cell_index)
            assert len(corners) == len(sphere_complex.get_facets(cell_index))
            for position in range(len(corners)):
                first, second = sphere_complex.get_corner_facets((cell_index, position))
                assert first != second
        assert len(set(sphere_complex.get_corner_classes().values())) == 12

    def test_hexagon_corners(self, r2_disk):
        labels = {(0, tail): label for tail, label in r2_disk.get_base().get_boundary_marking().items()}
        cell = RHGraph(2, 0, [r2_disk], (), labels, {(0, 3): 1})
        corners = cell_corners(cell)
        assert len(corners) == 6
        assert all(len(corner.get_sites()) == 2 for corner in corners)

    def test_facets_smooth_back(self, sphere_complex):
        _assert_facets_smooth_back(sphere_complex)
        _assert_rank_parity(sphere_complex)


class TestOtherComplexes:

    def test_no_spin_structure_gives_an_empty_complex(self):
        complex_ = build_complex(9, 0, [7, 7])
        assert complex_.is_empty()
        report = topology_report(complex_)
        assert report.get_num_components() == 0
        assert report.get_euler() == 0
        assert report.get_free_census() == {kind: 0 for kind in FREE_BOUNDARY_TYPES}

    def test_only_low_dimensions_are_built(self):
        with pytest.raises(PreconditionError):
            build_complex(9, 3, [1, 5, 5, 5], [0])

    def test_interval_with_free_ends(self):
        complex_ = build_complex(3, 0, [], [1, 1])
        assert len(complex_.get_cells()) == 1
        assert complex_.get_identifications() == []
        report = topology_report(complex_)
        assert report.get_free_census() == {CB: 1, RAMOND: 1, NS_PLUS: 0}
        component = report.get_components()[0]
        assert (component.get_vertices(), component.get_edges()) == (2, 1)
        assert report.get_euler() == 1
        assert not report.is_closed()
        assert report.is_perfect_matching()

    def test_reports_without_signs(self, circle_complex):
        report = topology_report(circle_complex, with_signs=False)
        assert report.get_pair_signs() == ()
        assert report.get_components()[0].is_orientable() is None
        assert report.is_cocycle_trivial()
