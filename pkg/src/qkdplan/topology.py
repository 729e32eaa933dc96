"""Fiber topology: nodes, directed links, wavelength capacities.

Topology files are plain-text edge lists::

    # comment
    nodes: 3
    1 2 100.0 150 50
    2 1 100.0 150 50

Each record is ``tail head length_km qkd_capacity km_capacity``. Nodes are the
integers ``1..count`` declared by the header. Both directions of a fiber must
be listed explicitly so that capacities may be asymmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import TopologyParseError, UnknownNodeError, ValidationError

__all__ = [
    "Link",
    "Topology",
    "load_topology",
    "parse_topology",
    "serialize_topology",
    "neighbors_out",
    "neighbors_in",
    "usnet",
    "USNET_PATH",
]


@dataclass(frozen=True, order=True)
class Link:
    """A directed fiber link ``tail -> head``."""

    tail: int
    head: int
    length_km: Fraction = field(compare=False)
    qkd_capacity: int = field(compare=False)
    km_capacity: int = field(compare=False)

    @property
    def key(self) -> tuple[int, int]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class Topology:
    """Immutable directed fiber network.

    Parameters
    ----------
    nodes : tuple of int
        Sorted node identifiers.
    links : tuple of Link
        Links sorted by ``(tail, head)``.
    """

    nodes: tuple[int, ...]
    links: tuple[Link, ...]
    _by_key: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)
    _in: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        links = tuple(sorted(self.links))
        node_set = set(nodes)
        for n in nodes:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ValidationError(f"node identifiers must be positive integers, got {n!r}")
        by_key: dict[tuple[int, int], Link] = {}
        for link in links:
            if link.tail not in node_set or link.head not in node_set:
                raise ValidationError(
                    f"dangling endpoint: link {link.tail}->{link.head} references an undeclared node"
                )
            if link.tail == link.head:
                raise ValidationError(f"self-loop on node {link.tail}")
            length = Fraction(link.length_km)
            if not (length > 0) or not math.isfinite(float(length)):
                raise ValidationError(
                    f"nonpositive length: link {link.tail}->{link.head} has length {link.length_km}"
                )
            if link.qkd_capacity < 0 or link.km_capacity < 0:
                raise ValidationError(f"negative capacity on link {link.tail}->{link.head}")
            if link.key in by_key:
                raise ValidationError(f"duplicate link {link.tail}->{link.head}")
            by_key[link.key] = link
        out: dict[int, tuple[Link, ...]] = {n: () for n in nodes}
        inc: dict[int, tuple[Link, ...]] = {n: () for n in nodes}
        for link in links:
            out[link.tail] += (link,)
        for link in sorted(links, key=lambda l: (l.head, l.tail)):
            inc[link.head] += (link,)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "links", links)
        object.__setattr__(self, "_by_key", by_key)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)

    @classmethod
    def from_records(
        cls,
        node_count: int,
        records: Iterable[tuple],
    ) -> "Topology":
        """Build from ``(tail, head, length_km, qkd_capacity, km_capacity)`` tuples."""
        links = [
            Link(int(i), int(j), Fraction(length), int(wq), int(wk))
            for i, j, length, wq, wk in records
        ]
        return cls(tuple(range(1, node_count + 1)), tuple(links))

    def __contains__(self, node: object) -> bool:
        return node in self._out

    def __iter__(self) -> Iterator[Link]:
        return iter(self.links)

    def link(self, tail: int, head: int) -> Link:
        try:
            return self._by_key[(tail, head)]
        except KeyError:
            raise KeyError(f"no link {tail}->{head}") from None

    def has_link(self, tail: int, head: int) -> bool:
        return (tail, head) in self._by_key

    def with_capacities(self, qkd: int | None = None, km: int | None = None) -> "Topology":
        """Copy of this topology with every link's capacities overridden."""
        links = tuple(
            Link(
                l.tail,
                l.head,
                l.length_km,
                l.qkd_capacity if qkd is None else int(qkd),
                l.km_capacity if km is None else int(km),
            )
            for l in self.links
        )
        return Topology(self.nodes, links)

    def path_links(self, path: Iterable[int]) -> tuple[Link, ...]:
        """Links traversed by a node sequence."""
        path = tuple(path)
        return tuple(self.link(a, b) for a, b in zip(path, path[1:]))


def neighbors_out(t: Topology, n: int) -> tuple[Link, ...]:
    """Outgoing links of ``n`` sorted by head id."""
    if n not in t:
        raise UnknownNodeError(f"unknown node {n!r}")
    return t._out[n]


def neighbors_in(t: Topology, n: int) -> tuple[Link, ...]:
    """Incoming links of ``n`` sorted by tail id."""
    if n not in t:
        raise UnknownNodeError(f"unknown node {n!r}")
    return t._in[n]


def _parse_length(token: str, lineno: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise TopologyParseError(f"invalid length {token!r}", lineno) from None
    if (value * 10).denominator != 1:
        raise TopologyParseError(f"length {token!r} has more than one decimal place", lineno)
    return value


def parse_topology(text: str) -> Topology:
    """Parse edge-list text into a validated :class:`Topology`."""
    node_count = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("nodes:"):
            if node_count is not None:
                raise TopologyParseError("repeated 'nodes:' header", lineno)
            try:
                node_count = int(line.split(":", 1)[1])
            except ValueError:
                raise TopologyParseError(f"invalid node count in {line!r}", lineno) from None
            if node_count < 0:
                raise TopologyParseError("node count must be nonnegative", lineno)
            continue
        if node_count is None:
            raise TopologyParseError("link record before 'nodes:' header", lineno)
        fields = line.split()
        if len(fields) != 5:
            raise TopologyParseError(
                f"expected 5 fields 'i j length_km qkd_capacity km_capacity', got {len(fields)}",
                lineno,
            )
        try:
            i, j = int(fields[0]), int(fields[1])
            wq, wk = int(fields[3]), int(fields[4])
        except ValueError:
            raise TopologyParseError(f"non-integer field in {line!r}", lineno) from None
        records.append((i, j, _parse_length(fields[2], lineno), wq, wk))
    if node_count is None:
        raise TopologyParseError("missing 'nodes:' header")
    return Topology.from_records(node_count, records)


def load_topology(path: str | Path) -> Topology:
    """Load and validate a topology edge-list file."""
    path = Path(path)
    return parse_topology(path.read_text())


def serialize_topology(t: Topology) -> str:
    """Canonical text form: header, then records sorted by ``(tail, head)``."""
    lines = [f"nodes: {len(t.nodes)}"]
    for link in t.links:
        length = float(link.length_km)
        lines.append(f"{link.tail} {link.head} {length:.1f} {link.qkd_capacity} {link.km_capacity}")
    return "\n".join(lines) + "\n"


USNET_PATH = resources.files("qkdplan") / "data" / "usnet.txt"


def usnet() -> Topology:
    """The bundled 24-node USNET reference instance."""
    return parse_topology(USNET_PATH.read_text())
