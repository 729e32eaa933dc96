"""Component counts along a route and three-phase pricing.

Per link of length ``e`` with ``s = ceil(e / D)`` transmitter segments and
``P`` parallel QKD links, a route needs ``2*P*s`` MDI-QTxs, ``P*s`` MDI-QRxs,
``ceil(e/D + 1)`` local key managers, ``ceil(e/D - 1)`` security
infrastructures (floored at zero), ``s + ceil(e/D - 1)`` MUX/DEMUX pairs and
``3*P*e + e`` km-wavelengths of fiber channel.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .demand import PhysicsParams, _as_fraction, _ceil
from .errors import TopologyParseError, ValidationError
from .topology import Link

__all__ = [
    "COMPONENTS",
    "PHASES",
    "CostTable",
    "ComponentCounts",
    "segments",
    "component_counts",
    "phase_cost",
    "load_cost_table",
    "parse_cost_table",
]

COMPONENTS = ("tx", "rx", "km", "si", "md", "ch")
PHASES = {"reservation": "r", "utilization": "e", "on-demand": "o"}

_DEFAULT_PRICES = {
    "r": {"tx": 1500, "rx": 2250, "km": 1200, "si": 150, "md": 300, "ch": 1},
    "e": {"tx": 1500, "rx": 2250, "km": 1200, "si": 150, "md": 300, "ch": 1},
    "o": {"tx": 6000, "rx": 9000, "km": 3000, "si": 500, "md": 900, "ch": 4},
}


def _phase_code(phase: str) -> str:
    if phase in PHASES:
        return PHASES[phase]
    if phase in PHASES.values():
        return phase
    raise ValidationError(f"unknown phase {phase!r}")


@dataclass(frozen=True)
class CostTable:
    """Unit prices per phase and component.

    ``prices[phase][component]`` with phase in ``r`` (reservation), ``e``
    (utilization) and ``o`` (on-demand). Channel prices are per
    km-wavelength; everything else is per unit of hardware.
    """

    prices: Mapping[str, Mapping[str, Fraction]]

    def __post_init__(self):
        clean = {}
        for ph in ("r", "e", "o"):
            row = self.prices.get(ph, {})
            missing = set(COMPONENTS) - set(row)
            if missing:
                raise ValidationError(f"cost table phase {ph!r} missing {sorted(missing)}")
            clean[ph] = {c: _as_fraction(row[c]) for c in COMPONENTS}
        for ph, row in clean.items():
            for c, v in row.items():
                if v < 0:
                    raise ValidationError(f"beta_{ph}_{c} is negative")
        for c in COMPONENTS:
            if clean["o"][c] < clean["e"][c]:
                raise ValidationError(
                    f"beta_o_{c} ({clean['o'][c]}) is below beta_e_{c} ({clean['e'][c]})"
                )
        object.__setattr__(self, "prices", clean)

    @classmethod
    def defaults(cls) -> "CostTable":
        """Reference prices: reservation and utilization equal, on-demand higher."""
        return cls(_DEFAULT_PRICES)

    def price(self, phase: str, component: str) -> Fraction:
        return self.prices[_phase_code(phase)][component]

    def scaled(self, factor) -> "CostTable":
        factor = _as_fraction(factor)
        return CostTable({ph: {c: v * factor for c, v in row.items()} for ph, row in self.prices.items()})

    def replace(self, **kwargs) -> "CostTable":
        """Copy with ``beta_<phase>_<component>=value`` overrides."""
        prices = {ph: dict(row) for ph, row in self.prices.items()}
        for key, value in kwargs.items():
            ph, c = _split_key(key)
            prices[ph][c] = value
        return CostTable(prices)

    def to_text(self) -> str:
        return "".join(
            f"beta_{ph}_{c} = {_fmt(self.prices[ph][c])}\n" for ph in ("r", "e", "o") for c in COMPONENTS
        )


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else str(v)


def _split_key(key: str) -> tuple[str, str]:
    parts = key.split("_")
    if len(parts) != 3 or parts[0] != "beta" or parts[1] not in ("r", "e", "o") or parts[2] not in COMPONENTS:
        raise ValidationError(f"unknown cost key {key!r}")
    return parts[1], parts[2]


def parse_cost_table(text: str) -> CostTable:
    """Parse ``beta_<r|e|o>_<component> = value`` lines over the default prices."""
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise TopologyParseError(f"expected 'key = value', got {line!r}", lineno)
        key = key.strip()
        try:
            _split_key(key)
            overrides[key] = Fraction(value.strip())
        except (ValidationError, ValueError) as exc:
            raise TopologyParseError(str(exc), lineno) from None
    return CostTable.defaults().replace(**overrides)


def load_cost_table(path: str | Path) -> CostTable:
    return parse_cost_table(Path(path).read_text())


@dataclass(frozen=True)
class ComponentCounts:
    tx_count: int = 0
    rx_count: int = 0
    lkm_count: int = 0
    si_count: int = 0
    muxdemux_count: int = 0
    channel_cost_length: Fraction = Fraction(0)

    def __add__(self, other: "ComponentCounts") -> "ComponentCounts":
        if not isinstance(other, ComponentCounts):
            return NotImplemented
        return ComponentCounts(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def by_component(self) -> dict[str, Fraction]:
        return {
            "tx": self.tx_count,
            "rx": self.rx_count,
            "km": self.lkm_count,
            "si": self.si_count,
            "md": self.muxdemux_count,
            "ch": self.channel_cost_length,
        }


def segments(e_km, d_km) -> int:
    """Transmitter segments on a span of ``e_km`` with spacing ``d_km``."""
    e_km, d_km = _as_fraction(e_km), _as_fraction(d_km)
    if e_km <= 0 or d_km <= 0:
        raise ValidationError("span length and spacing must be positive")
    return _ceil(e_km / d_km)


def _check_path(route: Sequence[Link]) -> None:
    if not route:
        return
    visited = {route[0].tail}
    for prev, link in zip((None,) + tuple(route), route):
        if prev is not None and prev.head != link.tail:
            raise ValidationError(f"route is not contiguous at {prev.head}->{link.tail}")
        if link.head in visited:
            raise ValidationError(f"route revisits node {link.head}")
        visited.add(link.head)


def link_counts(e_km, P: int, physics: PhysicsParams) -> ComponentCounts:
    """Counts for one span."""
    e_km = _as_fraction(e_km)
    ratio = e_km / physics.spacing_km
    s = segments(e_km, physics.spacing_km)
    relays = max(0, _ceil(ratio - 1))
    return ComponentCounts(
        tx_count=2 * P * s,
        rx_count=P * s,
        lkm_count=_ceil(ratio + 1),
        si_count=relays,
        muxdemux_count=s + relays,
        channel_cost_length=3 * P * e_km + e_km,
    )


def component_counts(route: Sequence[Link], P: int, physics: PhysicsParams) -> ComponentCounts:
    """Hardware and channel counts for ``P`` parallel links along ``route``.

    Raises
    ------
    ValidationError
        If ``route`` is not a simple directed path or ``P`` is negative.
    """
    if P < 0:
        raise ValidationError("parallel-link count must be nonnegative")
    route = tuple(route)
    _check_path(route)
    total = ComponentCounts()
    for link in route:
        total = total + link_counts(link.length_km, P, physics)
    return total


def phase_cost(counts: ComponentCounts, table: CostTable, phase: str) -> Fraction:
    """Price ``counts`` at one phase's unit prices."""
    row = table.prices[_phase_code(phase)]
    return sum((n * row[c] for c, n in counts.by_component().items()), Fraction(0))
