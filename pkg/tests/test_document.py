"""
Tests for reading and writing graph documents
"""

import pytest

from core import DocumentError
from document import from_document, parse, serialize, to_document, validate_graph
from point_insertion import RHGraph, enumerate_smooth_rh
from spin import SpinGraph, create_disk


def _round_trip(graph):
    return to_document(parse(serialize(graph)))


class TestRoundTrip:

    def test_spin_graphs(self, r9_disk, closed_open_facet):
        for graph in (r9_disk, closed_open_facet, create_disk(3, [], [1, 1])):
            assert _round_trip(graph) == to_document(graph)

    def test_dual_graphs(self, two_disks):
        document = to_document(two_disks)
        assert document["kind"] == "prestable"
        assert "tw" not in document["decorations"]
        assert _round_trip(two_disks) == document

    def test_rh_graphs(self):
        cell = enumerate_smooth_rh(9, 3, [1, 5, 5, 5])[-1]
        document = to_document(cell)
        assert document["header"] == {"r": 9, "h": 3}
        assert len(document["dashed"]) == 1
        restored = parse(serialize(cell))
        assert isinstance(restored, RHGraph)
        assert restored.get_dashed() == cell.get_dashed()
        assert to_document(restored) == document

    def test_serialization_is_stable(self, r9_disk):
        assert serialize(r9_disk) == serialize(parse(serialize(r9_disk)))


class TestErrors:

    def test_unknown_field(self, r9_disk):
        document = to_document(r9_disk)
        document["half_edges"][0]["colour"] = "red"
        with pytest.raises(DocumentError) as error:
            from_document(document)
        assert error.value.location == "$.half_edges[0].colour"

    def test_bad_kind(self, r9_disk):
        document = to_document(r9_disk)
        document["half_edges"][2]["kind"] = "diagonal"
        with pytest.raises(DocumentError) as error:
            from_document(document)
        assert error.value.location == "$.half_edges[2].kind"
        assert str(error.value).startswith("$.half_edges[2].kind: ")

    def test_version(self, r9_disk):
        document = to_document(r9_disk)
        document["version"] = 2
        with pytest.raises(DocumentError) as error:
            from_document(document)
        assert error.value.location == "$.version"

    def test_syntax_error(self):
        with pytest.raises(DocumentError) as error:
            parse("{\"format\": ")
        assert error.value.location.startswith("line 1")

    def test_not_an_integer(self, r9_disk):
        document = to_document(r9_disk)
        document["header"]["r"] = "nine"
        with pytest.raises(DocumentError) as error:
            from_document(document)
        assert error.value.location == "$.header.r"

    def test_validation_failure_carries_the_report(self):
        text = serialize(create_disk(9, [1, 5, 5, 7]))
        with pytest.raises(DocumentError) as error:
            parse(text)
        assert error.value.report is not None
        assert "i" in error.value.report.get_failed_conditions()
        assert isinstance(parse(text, validate=False), SpinGraph)


class TestValidateGraph:

    def test_routes_by_kind(self, two_disks, r9_disk):
        assert validate_graph(two_disks).is_valid()
        assert validate_graph(r9_disk).is_valid()
        assert not validate_graph(create_disk(9, [1, 5, 5, 7])).is_valid()

    def test_unknown_objects(self):
        with pytest.raises(NotImplementedError):
            validate_graph([])
