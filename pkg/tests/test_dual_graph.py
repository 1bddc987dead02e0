"""
Tests for pre-stable dual graphs: structure validation, genus and edge classification
"""

import pytest

from core import (BOUNDARY, CLOSED, INTERNAL, NONSEPARATING, OPEN, SEPARATING, STABILITY, STRUCTURE,
                  DisconnectedGraphError, SiteNotFoundError, ValidationReport)
from dual_graph import PreStableGraph, classify_edge, classify_edges, graph_genus, require_stable, validate_prestable


def _open_pair(second_kind):
    """(PreStableGraph) An open vertex with three boundary tails joined by an internal edge to a
    vertex of kind 'second_kind' carrying two further tails"""
    second_tails = BOUNDARY if second_kind == OPEN else INTERNAL
    kinds = {0: BOUNDARY, 1: BOUNDARY, 2: BOUNDARY, 3: INTERNAL, 4: second_tails, 5: second_tails, 6: INTERNAL}
    sigma0 = {0: 0, 1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1}
    return PreStableGraph({0: OPEN, 1: second_kind}, kinds, sigma0, sigma1={3: 6, 6: 3})


class TestStructure:

    def test_two_disks_are_valid(self, two_disks):
        report = validate_prestable(two_disks)
        assert report.is_valid()
        assert report.get_vertex_stats(0) == {"k": 3, "l": 0, "g": 0, "stable": True}
        assert two_disks.get_edges() == ((2, 3),)
        assert two_disks.get_boundary_tails() == (0, 1, 4, 5)

    def test_defaults_are_derived(self, two_disks):
        assert two_disks.get_cycle(0) == (0, 1, 2)
        assert two_disks.get_next(2) == 0
        assert two_disks.get_num_boundaries(1) == 1
        assert two_disks.get_boundary_marking() == {0: 1, 1: 2, 4: 3, 5: 4}

    def test_sigma1_must_be_an_involution(self):
        graph = PreStableGraph({0: OPEN}, {0: BOUNDARY, 1: BOUNDARY, 2: BOUNDARY}, {0: 0, 1: 0, 2: 0},
                               sigma1={0: 1})
        report = validate_prestable(graph)
        assert report.get_violations() == [(STRUCTURE, "sigma1 is not an involution", (0,))]

    def test_closed_vertex_cannot_hold_boundary(self):
        graph = PreStableGraph({0: CLOSED}, {0: BOUNDARY}, {0: 0})
        report = validate_prestable(graph)
        assert report.get_violations() == [(STRUCTURE, "closed vertex has boundary half-edge", (0, 0))]

    def test_marking_must_be_a_bijection(self, two_disks):
        graph = two_disks.replace(boundary_marking={0: 1, 1: 1, 4: 2, 5: 3})
        report = validate_prestable(graph)
        assert not report.is_valid()
        assert report.describe() == ["(structure) boundary marking is not a bijection onto 1..4 [0, 1, 4, 5]"]

    def test_instability_is_recorded_not_reported(self):
        graph = PreStableGraph({0: OPEN}, {0: BOUNDARY, 1: BOUNDARY}, {0: 0, 1: 0})
        report = validate_prestable(graph)
        assert report.is_valid()
        assert report.get_vertex_stats(0)["stable"] is False

        require_stable(graph, report)
        assert report.get_failed_conditions() == {STABILITY}

    def test_report_dictionary(self):
        report = ValidationReport()
        report.add(STRUCTURE, "broken", 3)
        report.warn("odd")
        assert report.to_dict()["violations"] == [{"condition": STRUCTURE, "message": "broken", "ids": [3]}]
        assert report.to_dict()["warnings"] == ["odd"]
        assert not report.to_dict()["valid"]


class TestGenus:

    def test_tree_of_disks_has_genus_zero(self, two_disks):
        assert graph_genus(two_disks) == 0

    def test_boundary_loop_adds_a_boundary(self):
        graph = PreStableGraph({0: OPEN}, {h: BOUNDARY for h in range(4)}, {h: 0 for h in range(4)},
                               sigma1={2: 3, 3: 2})
        assert graph_genus(graph) == 1

    def test_closed_vertex_counts_twice(self):
        assert graph_genus(_open_pair(CLOSED)) == 0

    def test_genus_needs_a_component(self, two_disks):
        with pytest.raises(DisconnectedGraphError):
            graph_genus(two_disks, [0])


class TestEdgeClassification:

    def test_boundary_edge_between_disks_separates(self, two_disks):
        assert classify_edge(two_disks, 3) == (BOUNDARY, SEPARATING)
        assert two_disks.separated_parts(2) == (frozenset({0}), frozenset({1}))

    def test_boundary_loop_does_not_separate(self):
        graph = PreStableGraph({0: OPEN}, {h: BOUNDARY for h in range(4)}, {h: 0 for h in range(4)},
                               sigma1={2: 3, 3: 2})
        assert classify_edge(graph, 2) == (BOUNDARY, NONSEPARATING)

    def test_internal_edge_separates_only_from_a_closed_part(self):
        assert classify_edge(_open_pair(CLOSED), 3) == (INTERNAL, SEPARATING)
        assert classify_edges(_open_pair(OPEN)) == {(3, 6): (INTERNAL, NONSEPARATING)}

    def test_internal_edge_between_open_vertices_does_not_separate(self):
        graph = _open_pair(OPEN)
        assert graph.separated_parts(3) == (frozenset({0}), frozenset({1}))
        assert not any(graph.part_is_closed(part) for part in graph.separated_parts(3))
        assert classify_edge(graph, 6) == (INTERNAL, NONSEPARATING)

    def test_tails_are_not_edges(self, two_disks):
        with pytest.raises(SiteNotFoundError):
            classify_edge(two_disks, 0)

    def test_components_follow_the_edges(self, two_disks):
        assert two_disks.is_connected()
        detached = two_disks.replace(sigma1={})
        assert detached.get_components() == (frozenset({0}), frozenset({1}))
