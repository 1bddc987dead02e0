"""
Shared fixtures: the two worked moduli problems and a few small graphs
"""

import pytest

from core import BOUNDARY, CLOSED, INTERNAL, OPEN
from dual_graph import PreStableGraph
from gluing import build_complex, topology_report
from point_insertion import RHGraph
from spin import SpinGraph, create_disk


@pytest.fixture
def r9_disk():
    """(SpinGraph) The smooth r = 9 disk with boundary twists 1, 5, 5, 5 in cyclic order, all legal"""
    return create_disk(9, [1, 5, 5, 5])


@pytest.fixture
def r9_cell(r9_disk):
    """(RHGraph) The worked r = 9 disk as a level-3 cell with no dashed lines"""
    labels = {(0, tail): label for tail, label in r9_disk.get_base().get_boundary_marking().items()}
    return RHGraph(9, 3, [r9_disk], (), labels)


@pytest.fixture
def r2_disk():
    """(SpinGraph) The smooth r = 2 disk with three boundary tails and one internal tail, all twists 0"""
    return create_disk(2, [0, 0, 0], [0])


@pytest.fixture
def two_disks():
    """(PreStableGraph) Two open vertices joined by one boundary edge, two boundary tails on each side"""
    kinds = {h: BOUNDARY for h in range(6)}
    sigma0 = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
    return PreStableGraph({0: OPEN, 1: OPEN}, kinds, sigma0, sigma1={2: 3, 3: 2})


@pytest.fixture
def closed_open_facet():
    """(SpinGraph) r = 9: an open vertex with a boundary tail of twist 5 joined by an
    internal edge (twists 1 and 6) to a closed vertex with two internal tails of twist 5"""
    base = PreStableGraph(
        {0: OPEN, 1: CLOSED},
        {0: BOUNDARY, 1: INTERNAL, 2: INTERNAL, 3: INTERNAL, 4: INTERNAL},
        {0: 0, 1: 0, 2: 1, 3: 1, 4: 1},
        sigma1={1: 2, 2: 1},
    )
    return SpinGraph(base, 9, {0: 5, 1: 1, 2: 6, 3: 5, 4: 5}, {0: 1})


@pytest.fixture(scope="session")
def circle_complex():
    """(CellComplex) r = 9, h = 3, B = {1, 5, 5, 5}, I empty"""
    return build_complex(9, 3, [1, 5, 5, 5])


@pytest.fixture(scope="session")
def circle_report(circle_complex):
    return topology_report(circle_complex)


@pytest.fixture(scope="session")
def sphere_complex():
    """(CellComplex) r = 2, h = 0, B = {0, 0, 0}, I = {0}"""
    return build_complex(2, 0, [0, 0, 0], [0])


@pytest.fixture(scope="session")
def sphere_report(sphere_complex):
    return topology_report(sphere_complex)
