"""Chain requests, secret-key-rate scenarios and the demand-to-links conversion.

A chain request asks for a secret-key rate between a source and a destination.
The rate is uncertain: it takes an integer value ``omega`` in ``{0, ..., K}``
(kbps) with a known probability. A rate ``kappa`` is served by
``ceil(kappa / K_D)`` parallel QKD links, each occupying three QKD wavelengths
and one KM wavelength on every fiber of the route.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import TopologyParseError, ValidationError

__all__ = [
    "PhysicsParams",
    "ChainRequest",
    "ScenarioSet",
    "parallel_links",
    "uniform_request",
    "point_request",
    "expected_parallel_links",
    "nominal_parallel_links",
    "load_requests",
    "parse_requests",
]

_PROB_TOL = Fraction(1, 10**9)


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    return Fraction(value)


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class PhysicsParams:
    """Link-level physics constants.

    ``theta_km`` is the MDI-QRx to MDI-QTx distance; transmitters are spaced
    ``D = 2 * theta_km`` apart. ``key_rate_kbps`` (K_D) is the secret-key rate
    one QKD link sustains over distance ``D``.
    """

    theta_km: Fraction = Fraction(80)
    key_rate_kbps: Fraction = Fraction(1)
    qkd_wavelengths_per_link: int = 3
    km_wavelengths_per_link: int = 1

    def __post_init__(self):
        object.__setattr__(self, "theta_km", _as_fraction(self.theta_km))
        object.__setattr__(self, "key_rate_kbps", _as_fraction(self.key_rate_kbps))
        if self.theta_km <= 0:
            raise ValidationError("theta_km must be positive")
        if self.key_rate_kbps <= 0:
            raise ValidationError("key_rate_kbps (K_D) must be positive")
        if self.qkd_wavelengths_per_link < 1 or self.km_wavelengths_per_link < 1:
            raise ValidationError("wavelengths per link must be at least 1")

    @classmethod
    def from_spacing(cls, spacing_km, key_rate_kbps=1, **overrides) -> "PhysicsParams":
        """Construct from the transmitter spacing ``D`` instead of ``theta``."""
        return cls(theta_km=_as_fraction(spacing_km) / 2, key_rate_kbps=key_rate_kbps, **overrides)

    @property
    def spacing_km(self) -> Fraction:
        """Transmitter spacing ``D``."""
        return 2 * self.theta_km


def parallel_links(kappa, physics: PhysicsParams) -> int:
    """Parallel QKD links needed to carry a secret-key rate of ``kappa`` kbps."""
    kappa = _as_fraction(kappa)
    if kappa < 0:
        raise ValidationError("secret-key rate must be nonnegative")
    return _ceil(kappa / physics.key_rate_kbps)


@dataclass(frozen=True)
class ChainRequest:
    """A source-destination secret-key demand.

    Parameters
    ----------
    id : str
        Request identifier, alphanumeric.
    source, destination : int
        Endpoint node ids.
    probabilities : sequence of Fraction
        ``probabilities[w]`` is the probability that the realised rate is
        ``w`` kbps, for ``w`` in ``0..max_rate``.
    """

    id: str
    source: int
    destination: int
    probabilities: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        probs = tuple(_as_fraction(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if not self.id.isalnum():
            raise ValidationError(f"request id must be alphanumeric, got {self.id!r}")
        if self.source == self.destination:
            raise ValidationError(
                f"request {self.id}: source and destination are both {self.source}"
            )
        if not probs:
            raise ValidationError(f"request {self.id}: empty scenario set")
        if any(p < 0 for p in probs):
            raise ValidationError(f"request {self.id}: negative probability")
        if abs(sum(probs) - 1) > _PROB_TOL:
            raise ValidationError(
                f"request {self.id}: probabilities sum to {float(sum(probs))}, not 1"
            )

    @property
    def max_rate(self) -> int:
        """``K``, the largest rate in the scenario space."""
        return len(self.probabilities) - 1

    @property
    def scenarios(self) -> range:
        return range(len(self.probabilities))

    def probability(self, omega: int) -> Fraction:
        if 0 <= omega < len(self.probabilities):
            return self.probabilities[omega]
        return Fraction(0)

    def validate_against(self, topology) -> None:
        for n in (self.source, self.destination):
            if n not in topology:
                raise ValidationError(f"request {self.id}: node {n} not in topology")


def uniform_request(source: int, destination: int, max_rate: int, id="1") -> ChainRequest:
    """Request whose rate is uniform over ``{0, ..., max_rate}``."""
    if max_rate < 0:
        raise ValidationError("max_rate must be nonnegative")
    p = Fraction(1, max_rate + 1)
    return ChainRequest(id, source, destination, (p,) * (max_rate + 1))


def point_request(source: int, destination: int, rate: int, id="1") -> ChainRequest:
    """Request with a known rate (all probability mass on ``rate``)."""
    if rate < 0:
        raise ValidationError("rate must be nonnegative")
    probs = [Fraction(0)] * (rate + 1)
    probs[rate] = Fraction(1)
    return ChainRequest(id, source, destination, tuple(probs))


def expected_parallel_links(r: ChainRequest, physics: PhysicsParams) -> Fraction:
    """Probability-weighted mean of the parallel-link count, exact."""
    return sum(
        (p * parallel_links(w, physics) for w, p in enumerate(r.probabilities)),
        Fraction(0),
    )


def nominal_parallel_links(r: ChainRequest, physics: PhysicsParams, policy="mean") -> int:
    """Parallel-link count of the nominal scenario used for first-stage pricing.

    ``policy`` is ``"mean"`` (expected count rounded half up), ``"max"``,
    ``"min"`` or an explicit integer rate.
    """
    if policy == "mean":
        mean = expected_parallel_links(r, physics)
        return math.floor(mean + Fraction(1, 2))
    if policy == "max":
        return parallel_links(r.max_rate, physics)
    if policy == "min":
        return 0
    if isinstance(policy, int) and not isinstance(policy, bool):
        if not 0 <= policy <= r.max_rate:
            raise ValidationError(f"nominal rate {policy} outside 0..{r.max_rate}")
        return parallel_links(policy, physics)
    raise ValidationError(f"unknown nominal-scenario policy {policy!r}")


@dataclass(frozen=True)
class ScenarioSet:
    """Scenario indexing shared by all requests of one program.

    In ``"shared"`` mode the index ``w`` runs over ``0..max_f K_f`` and request
    ``f`` sees rate ``min(w, K_f)``; indices beyond ``K_f`` repeat its last
    rate with probability zero. In ``"joint"`` mode the index runs over the
    product space of all requests' scenarios and every request carries the
    joint probability.
    """

    requests: tuple[ChainRequest, ...]
    mode: str = "shared"
    indices: tuple = field(init=False)

    def __post_init__(self):
        if self.mode not in ("shared", "joint"):
            raise ValidationError(f"unknown scenario mode {self.mode!r}")
        object.__setattr__(self, "requests", tuple(self.requests))
        if self.mode == "shared":
            k_max = max((r.max_rate for r in self.requests), default=0)
            idx = tuple(range(k_max + 1))
        else:
            idx = tuple(itertools.product(*(r.scenarios for r in self.requests)))
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def joint_size(self) -> int:
        """Size of the full product space over all requests."""
        return math.prod(r.max_rate + 1 for r in self.requests)

    def rate(self, position: int, t: int) -> int:
        """Realised rate of request number ``position`` at scenario index ``t``."""
        r = self.requests[position]
        if self.mode == "shared":
            return min(self.indices[t], r.max_rate)
        return self.indices[t][position]

    def weight(self, position: int, t: int) -> Fraction:
        """Objective weight of request ``position``'s second-stage terms at index ``t``."""
        r = self.requests[position]
        if self.mode == "shared":
            w = self.indices[t]
            return r.probabilities[w] if w <= r.max_rate else Fraction(0)
        return math.prod(
            (q.probabilities[w] for q, w in zip(self.requests, self.indices[t])),
            start=Fraction(1),
        )


_REQUEST_DISTS = ("uniform", "point")


def parse_requests(text: str) -> list[ChainRequest]:
    """Parse request-set text: one ``f S D K [dist=uniform]`` record per line."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (4, 5):
            raise TopologyParseError("expected 'f S D K [dist=uniform]'", lineno)
        dist = "uniform"
        if len(fields) == 5:
            key, _, dist = fields[4].partition("=")
            if key != "dist" or dist not in _REQUEST_DISTS:
                raise TopologyParseError(f"unsupported distribution {fields[4]!r}", lineno)
        try:
            s, d, k = int(fields[1]), int(fields[2]), int(fields[3])
        except ValueError:
            raise TopologyParseError(f"non-integer field in {line!r}", lineno) from None
        fid = fields[0]
        if fid in seen:
            raise TopologyParseError(f"duplicate request id {fid!r}", lineno)
        seen.add(fid)
        try:
            if dist == "uniform":
                out.append(uniform_request(s, d, k, id=fid))
            else:
                out.append(point_request(s, d, k, id=fid))
        except ValidationError as exc:
            raise TopologyParseError(str(exc), lineno) from None
    return out


def load_requests(path: str | Path) -> list[ChainRequest]:
    return parse_requests(Path(path).read_text())


def format_requests(requests: Sequence[ChainRequest]) -> str:
    """Inverse of :func:`parse_requests` for uniform and point requests."""
    lines = []
    for r in requests:
        k = r.max_rate
        if r == uniform_request(r.source, r.destination, k, id=r.id):
            lines.append(f"{r.id} {r.source} {r.destination} {k}")
        elif r == point_request(r.source, r.destination, k, id=r.id):
            lines.append(f"{r.id} {r.source} {r.destination} {k} dist=point")
        else:
            raise ValidationError(f"request {r.id} has no text representation")
    return "\n".join(lines) + ("\n" if lines else "")
