"""
Tests for the sign calculus of canonical orientations
"""

import pytest
from hypothesis import given, strategies as st

from core import BI, OrientationError, PreconditionError
from orientation import (CLOSED_OPEN, OPEN_OPEN, OrientationToken, basepoint_transition_sign, boundary_token,
                         canonical_token, pi_pair_sign, restriction_sign_closed_open, restriction_sign_open_open,
                         rh_sign)
from point_insertion import enumerate_smooth_rh, facets_of, pi_forward


class TestTokens:

    def test_composition_with_signs_and_tokens(self):
        token = OrientationToken("cell", 1)
        flipped = token * -1
        assert flipped.get_sign() == -1
        assert (flipped * flipped).get_sign() == 1
        assert flipped.relative_to(token) == -1
        assert token * 1 == token
        assert len({token, OrientationToken("cell", 1), flipped}) == 2

    def test_signs_are_units(self):
        with pytest.raises(PreconditionError):
            OrientationToken("cell", 0)

    def test_different_cells_do_not_compare(self):
        with pytest.raises(OrientationError):
            OrientationToken("first", 1).relative_to(OrientationToken("second", 1))
        with pytest.raises(OrientationError):
            OrientationToken("first", 1) * OrientationToken("second", -1)


class TestBasepoint:

    def test_sign_depends_on_parity(self):
        assert basepoint_transition_sign(1) == 1
        assert basepoint_transition_sign(4) == -1
        assert basepoint_transition_sign([0, 1, 2]) == 1

    def test_empty_boundary_raises(self):
        with pytest.raises(PreconditionError):
            basepoint_transition_sign([])

    @given(st.integers(min_value=1, max_value=40))
    def test_full_turn_is_trivial(self, count):
        token = OrientationToken("cell", 1)
        for _ in range(count):
            token = token * basepoint_transition_sign(count)
        assert token.get_sign() == 1


class TestRestriction:

    def test_open_open_worked_facets(self, r9_cell):
        for boundary in facets_of(r9_cell):
            record = restriction_sign_open_open(boundary.get_facet(), boundary.get_site())
            assert record.get_kind() == OPEN_OPEN
            assert record.get_m_deltas() == {"whole": -1, "v1": 0, "v2": -1}
            assert record.get_moduli_sign() == record.get_commute_sign() == 1
            assert record.get_bundle_sign() == record.get_correction_sign() == 1
            assert record.get_net() == 1
            assert record.to_dict()["net"] == 1

    def test_open_open_needs_a_boundary_edge(self, closed_open_facet):
        with pytest.raises(PreconditionError):
            restriction_sign_open_open(closed_open_facet)

    def test_closed_open_record(self, closed_open_facet):
        record = restriction_sign_closed_open(closed_open_facet)
        assert record.get_kind() == CLOSED_OPEN
        assert record.get_m_deltas() == {"whole": 1, "closed": 1, "open": 0}
        assert record.get_bundle_sign() == -1
        assert record.get_correction_sign() == -1
        assert record.get_net() == 1

    def test_closed_open_needs_an_internal_edge(self, r9_cell):
        boundary = facets_of(r9_cell)[0]
        with pytest.raises(PreconditionError):
            restriction_sign_closed_open(boundary.get_facet(), boundary.get_site())


class TestCellSigns:

    def test_rh_sign_counts_dashed_lines(self):
        cells = enumerate_smooth_rh(9, 3, [1, 5, 5, 5])
        assert [rh_sign(cell) for cell in cells] == [1] * 6 + [-1] * 6
        assert all(canonical_token(cell).get_sign() == rh_sign(cell) for cell in cells)

    def test_worked_pairs_are_opposite(self, r9_cell):
        for boundary in facets_of(r9_cell):
            _, image = pi_forward(boundary)
            assert pi_pair_sign(boundary, image) == -1
            reference = "facet"
            assert boundary_token(boundary, reference).relative_to(boundary_token(image, reference)) == -1

    def test_every_circle_pair_is_opposite(self):
        for cell in enumerate_smooth_rh(9, 3, [1, 5, 5, 5]):
            for boundary in facets_of(cell):
                if boundary.get_type() == BI:
                    assert pi_pair_sign(boundary, pi_forward(boundary)[1]) == -1

    def test_unpaired_boundaries_are_rejected(self, r9_cell):
        first, second = facets_of(r9_cell)
        _, image = pi_forward(second)
        with pytest.raises(OrientationError):
            pi_pair_sign(first, image)

    def test_types_are_checked(self, r9_cell):
        boundary = facets_of(r9_cell)[0]
        _, image = pi_forward(boundary)
        with pytest.raises(OrientationError):
            pi_pair_sign(image, boundary)
