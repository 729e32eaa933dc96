"""Seeded instance generators for tests, validation and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .demand import ChainRequest, point_request, uniform_request
from .topology import Topology

__all__ = ["random_tiny_instance", "line_topology", "sample_requests", "ordered_pairs"]


def random_tiny_instance(rng: random.Random, max_nodes: int = 5) -> tuple[Topology, list[ChainRequest]]:
    """A small random instance the exhaustive oracle can handle.

    3 to ``max_nodes`` nodes, a sparse set of fibers, one or two requests with
    ``K <= 2`` and capacities small enough that they sometimes bind.
    """
    n = rng.randint(3, max_nodes)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    # A spanning chain keeps most instances connected; a few extra fibers add route choice.
    order = list(range(1, n + 1))
    rng.shuffle(order)
    fibers = {tuple(sorted(p)) for p in zip(order, order[1:])}
    extra = [p for p in pairs if p not in fibers]
    rng.shuffle(extra)
    fibers.update(extra[: rng.randint(0, 2)])
    records = []
    for a, b in sorted(fibers):
        length = Fraction(rng.randint(40, 400))
        for tail, head in ((a, b), (b, a)):
            if rng.random() < 0.1:
                continue
            records.append((tail, head, length, rng.randint(1, 6), rng.randint(1, 3)))
    t = Topology.from_records(n, records)
    requests = []
    for idx in range(rng.randint(1, 2)):
        s, d = rng.sample(range(1, n + 1), 2)
        k = rng.randint(0, 2)
        if rng.random() < 0.7:
            requests.append(uniform_request(s, d, k, id=str(idx + 1)))
        else:
            weights = [rng.randint(0, 3) for _ in range(k + 1)]
            if not sum(weights):
                weights[-1] = 1
            total = sum(weights)
            requests.append(ChainRequest(str(idx + 1), s, d, tuple(Fraction(w, total) for w in weights)))
    return t, requests


def line_topology(
    rng: random.Random,
    nodes: int = 5,
    length_range: tuple[int, int] = (321, 800),
    qkd_capacity: int = 15,
    km_capacity: int = 3,
) -> Topology:
    """Bidirectional line ``1 - 2 - ... - nodes`` with random integer span lengths."""
    records = []
    for i in range(1, nodes):
        length = Fraction(rng.randint(*length_range))
        records.append((i, i + 1, length, qkd_capacity, km_capacity))
        records.append((i + 1, i, length, qkd_capacity, km_capacity))
    return Topology.from_records(nodes, records)


def ordered_pairs(t: Topology) -> list[tuple[int, int]]:
    return [(s, d) for s in t.nodes for d in t.nodes if s != d]


def sample_requests(
    t: Topology,
    count: int,
    seed: int,
    k_range: tuple[int, int] = (1, 4),
    distribution: str = "uniform",
) -> list[ChainRequest]:
    """``count`` requests with endpoints drawn without replacement over ordered pairs.

    The stream depends only on ``(seed, count)``, so a sweep point is
    reproducible on its own regardless of which other points are run.
    """
    rng = random.Random(f"{seed}:{count}")
    pairs = ordered_pairs(t)
    if count > len(pairs):
        raise ValueError(f"{count} requests exceed the {len(pairs)} ordered node pairs")
    chosen = rng.sample(pairs, count)
    make = uniform_request if distribution == "uniform" else point_request
    return [make(s, d, rng.randint(*k_range), id=str(i + 1)) for i, (s, d) in enumerate(chosen)]
