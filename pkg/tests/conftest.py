from fractions import Fraction

import pytest

from qkdplan import Topology


def bidirectional(node_count, fibers):
    """Topology from ``(a, b, length, qkd_cap, km_cap)`` fibers, both directions."""
    records = []
    for a, b, length, wq, wk in fibers:
        records.append((a, b, Fraction(length), wq, wk))
        records.append((b, a, Fraction(length), wq, wk))
    return Topology.from_records(node_count, records)


@pytest.fixture
def two_node():
    return bidirectional(2, [(1, 2, 160, 150, 50)])


@pytest.fixture
def triangle():
    return bidirectional(3, [(1, 2, 100, 150, 50), (2, 3, 100, 150, 50), (1, 3, 300, 150, 50)])


@pytest.fixture
def line3():
    return bidirectional(3, [(1, 2, 200, 150, 50), (2, 3, 250, 150, 50)])
