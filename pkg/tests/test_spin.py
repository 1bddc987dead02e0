"""
Tests for graded r-spin decorations: the eight validity conditions, ranks and dimensions
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from core import CLOSED, INTERNAL, NonIntegralRankError, PreconditionError, ValidationError
from degeneration import codim1_boundaries
from dual_graph import PreStableGraph
from spin import (SpinGraph, closed_witten_rank, create_disk, is_level_h, m_delta, require_valid, spin_exists,
                  stratum_dimension, validate_spin, witten_rank)


def _closed_vertex(twists, anchors=(), cb_tails=()):
    """(SpinGraph) r = 3: a single closed vertex with three internal tails"""
    base = PreStableGraph({0: CLOSED}, {h: INTERNAL for h in range(3)}, {h: 0 for h in range(3)}, cb_tails=cb_tails)
    return SpinGraph(base, 3, dict(enumerate(twists)), anchors=anchors)


def _independently_accepted(r, boundary, internal, alternation):
    """(bool) Decides validity of a smooth disk directly from the conditions

    A single open vertex of genus 0 has no edges, no anchors and no
    contracted boundary tails, so only stability, the twist congruence and
    grading parity, the ban on twist -1 tails and the legality rule remain.
    """
    if len(boundary) + 2 * len(internal) < 3:
        return False
    if -1 in boundary or -1 in internal:
        return False
    total = sum(boundary) + 2 * sum(internal) + 2
    if total % r or (total // r - sum(alternation)) % 2:
        return False
    if r % 2:
        return all(alt == twist % 2 for twist, alt in zip(boundary, alternation))
    return all(twist % 2 == 0 for twist in boundary)


def _disk_with(template, r, boundary, internal, alternation):
    k = len(boundary)
    twists = dict(enumerate(boundary))
    twists.update({k + i: twist for i, twist in enumerate(internal)})
    return template.replace(r=r, twists=twists, legality=dict(enumerate(alternation)))


class TestConditions:

    def test_worked_disk_is_valid(self, r9_disk):
        report = validate_spin(r9_disk)
        assert report.is_valid()
        assert report.get_note("ramond") == {}

    def test_twist_congruence(self):
        assert "i" in validate_spin(create_disk(9, [1, 5, 5, 3])).get_failed_conditions()

    def test_legality_follows_parity_for_odd_r(self):
        disk = create_disk(9, [1, 5, 5, 5], legality=[1, 1, 1, 0])
        assert "viii" in validate_spin(disk).get_failed_conditions()

    def test_even_r_needs_even_boundary_twists(self):
        assert "viii" in validate_spin(create_disk(4, [1, 1, 2], [0])).get_failed_conditions()

    def test_twist_minus_one_tail_must_be_an_anchor(self):
        assert "iii" in validate_spin(create_disk(9, [1, 5, 5, 5], [-1])).get_failed_conditions()

    def test_closed_component_needs_one_anchor(self):
        assert validate_spin(_closed_vertex([-1, 1, 1], anchors=[0])).is_valid()
        assert validate_spin(_closed_vertex([-1, 1, 1])).get_failed_conditions() == {"iii"}

    def test_anchor_of_twist_r_minus_one_must_be_normalized(self):
        assert validate_spin(_closed_vertex([2, 1, 1], anchors=[0])).get_failed_conditions() == {"vi"}

    def test_contracted_boundary_tail_has_twist_r_minus_one(self):
        assert validate_spin(_closed_vertex([1, 1, 2], cb_tails=[2])).is_valid()
        assert validate_spin(_closed_vertex([1, 2, 1], cb_tails=[2])).get_failed_conditions() == {"v"}

    def test_edge_twists_add_to_r_minus_two(self, r9_disk):
        facet = codim1_boundaries(r9_disk)[0]
        first, second = facet.get_base().get_edges()[0]
        twists = facet.get_twists()
        twists[first] = (twists[first] + 2) % 9
        assert "iv" in validate_spin(facet.replace(twists=twists)).get_failed_conditions()

    def test_ns_edge_has_exactly_one_legal_half(self, r9_disk):
        facet = codim1_boundaries(r9_disk)[0]
        legality = {h: 1 for h in facet.get_legality_map()}
        assert "vii" in validate_spin(facet.replace(legality=legality)).get_failed_conditions()

    def test_require_valid_carries_the_report(self):
        with pytest.raises(ValidationError) as raised:
            require_valid(create_disk(9, [1, 5, 5, 3]))
        assert not raised.value.report.is_valid()
        assert "(i)" in str(raised.value)


class TestOracle:
    """The validator against a direct transcription of the conditions on smooth disks"""

    SHAPES = [(k, l) for k in range(5) for l in range(3)]

    @pytest.mark.parametrize("r", [2, 3, 4, 5])
    def test_exhaustive_small_disks(self, r):
        for k, l in self.SHAPES:
            if k + l > 4:
                continue
            template = create_disk(r, [0] * k, [0] * l)
            twist_range = range(-1, r)
            for boundary in itertools.product(twist_range, repeat=k):
                for internal in itertools.product(twist_range, repeat=l):
                    for alternation in itertools.product((0, 1), repeat=k):
                        disk = _disk_with(template, r, boundary, internal, alternation)
                        expected = _independently_accepted(r, boundary, internal, alternation)
                        assert validate_spin(disk).is_valid() == expected, (r, boundary, internal, alternation)

    @settings(max_examples=500, deadline=None)
    @given(data=st.data())
    def test_sampled_larger_disks(self, data):
        r = data.draw(st.integers(min_value=2, max_value=5))
        k, l = data.draw(st.sampled_from(self.SHAPES))
        twist = st.integers(min_value=-1, max_value=r - 1)
        boundary = data.draw(st.lists(twist, min_size=k, max_size=k))
        internal = data.draw(st.lists(twist, min_size=l, max_size=l))
        alternation = data.draw(st.lists(st.sampled_from((0, 1)), min_size=k, max_size=k))
        disk = _disk_with(create_disk(r, [0] * k, [0] * l), r, boundary, internal, alternation)
        assert validate_spin(disk).is_valid() == _independently_accepted(r, boundary, internal, alternation)


class TestRanks:

    def test_worked_disk(self, r9_disk):
        assert witten_rank(r9_disk) == 1
        assert m_delta(r9_disk) == -1
        assert stratum_dimension(r9_disk) == 1

    def test_disk_with_internal_point(self, r2_disk):
        assert witten_rank(r2_disk) == 0
        assert m_delta(r2_disk) == -1
        assert stratum_dimension(r2_disk) == 2

    def test_closed_rank_and_additivity(self, closed_open_facet):
        assert validate_spin(closed_open_facet).is_valid()
        assert witten_rank(closed_open_facet) == 2
        assert closed_witten_rank(closed_open_facet, 1) == 1
        assert m_delta(closed_open_facet, 0) == 0
        assert m_delta(closed_open_facet) == 1

    def test_rank_needs_divisibility(self):
        with pytest.raises(NonIntegralRankError):
            witten_rank(create_disk(9, [1, 5, 5, 3]))

    def test_closed_rank_needs_a_closed_vertex(self, closed_open_facet):
        with pytest.raises(PreconditionError):
            closed_witten_rank(closed_open_facet, 0)

    def test_vertex_rank_of_a_facet(self, r9_disk):
        facet = codim1_boundaries(r9_disk)[0]
        ranks = sorted(witten_rank(facet, vertex) for vertex in facet.get_base().get_vertices())
        assert ranks == [0, 1]
        assert stratum_dimension(facet) == 0


class TestExistenceAndLevel:

    def test_spin_existence(self):
        assert spin_exists(9, 0, [], [1, 5, 5, 5])
        assert not spin_exists(9, 0, [], [7, 7])
        assert spin_exists(3, 0, [1, 1, 1, 1], None)
        assert not spin_exists(3, 0, [1, 1, 1], None)

    def test_level(self, r9_disk):
        assert is_level_h(r9_disk, 3)
        assert not is_level_h(r9_disk, 2)

    def test_illegal_tail_level(self):
        disk = create_disk(9, [6, 5, 5], legality=[0, 1, 1])
        assert is_level_h(disk, 3)
        assert not is_level_h(disk, 2)
