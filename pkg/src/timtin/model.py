"""Core data types: channel strength matrices, beamforming schemes, GDoF
reports and decomposition maps, plus validation and exact JSON round-trips.

Strength exponents, power exponents and vector coordinates are
`fractions.Fraction` end-to-end.  Decimal text such as "0.3" is parsed as
the exact decimal fraction 3/10; binary floats never leak into the
arithmetic (they only appear in the finite-power oracle).  All types are
frozen after construction and safe to share between concurrent workers.

Users are indexed 0-based in memory; the JSON file formats are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DomainError(Exception):
    """Base for contract violations raised by this package."""


class NonSquare(DomainError):
    """Channel matrix input is not a square K x K grid."""


class ZeroDirectLink(DomainError):
    """A user's direct link has zero strength after clamping."""

    def __init__(self, user: int):
        self.user = user
        super().__init__(f"user {user} has zero direct-link strength")


class DimensionMismatch(DomainError):
    """Vector length or user index does not match the declared dimensions."""


class PositivePowerExponent(DomainError):
    """Stream power exponent exceeds 0 (transmit power above the constraint)."""


class EmptyVector(DomainError):
    """Beamforming vector is empty or all-zero."""


class MapMismatch(DomainError):
    """Decomposition map does not partition the present cross links."""


class WeightMismatch(DomainError):
    """Time-sharing weights are malformed."""


class NumericalFailure(DomainError):
    """Floating-point log-det evaluation lost positive definiteness."""


def to_fraction(value: object) -> Fraction:
    """Convert a number-like value to an exact Fraction.

    Strings may be decimal ("0.3" -> 3/10, "2e-1" -> 1/5) or "p/q".
    Floats go through their shortest decimal repr, so 0.3 means 3/10
    rather than the underlying binary double.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    """Canonical text form: finite decimal when the denominator is 2^a 5^b,
    otherwise "p/q"."""
    num, den = x.numerator, x.denominator
    d = den
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    digits = max(twos, fives)
    if digits == 0:
        return str(num)
    scaled = abs(num) * 10**digits // den
    text = str(scaled).rjust(digits + 1, "0")
    sign = "-" if num < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


@dataclass(frozen=True)
class ChannelMatrix:
    """K x K grid of channel strength exponents.

    ``alpha[k][i]`` is the strength exponent of the link from transmitter
    ``i`` to receiver ``k``.  A zero entry means the link is absent (at or
    below the noise floor); diagonal entries must be positive.
    """

    K: int
    alpha: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "alpha", tuple(tuple(to_fraction(x) for x in row) for row in self.alpha)
        )
        if self.K < 1 or len(self.alpha) != self.K:
            raise NonSquare(f"expected {self.K} rows, got {len(self.alpha)}")
        for k, row in enumerate(self.alpha):
            if len(row) != self.K:
                raise NonSquare(f"row {k} has {len(row)} entries, expected {self.K}")
            for entry in row:
                if entry < 0:
                    raise ValueError("negative strength exponent; use validate_channel to clamp")
        for k in range(self.K):
            if self.alpha[k][k] <= 0:
                raise ZeroDirectLink(k)

    def cross_links(self) -> tuple[tuple[int, int], ...]:
        """Present cross links as sorted (receiver, transmitter) pairs."""
        return tuple(
            (k, i)
            for k in range(self.K)
            for i in range(self.K)
            if k != i and self.alpha[k][i] > 0
        )


def validate_channel(raw) -> ChannelMatrix:
    """Build a ChannelMatrix from a raw square grid of number-like entries.

    Negative entries are clamped to zero (below the noise floor); a zero
    diagonal after clamping is rejected.  Idempotent: feeding a validated
    matrix back yields an equal matrix.
    """
    if isinstance(raw, ChannelMatrix):
        raw = raw.alpha
    rows = list(raw)
    K = len(rows)
    if K == 0:
        raise NonSquare("empty matrix")
    parsed = []
    for row in rows:
        entries = [to_fraction(x) for x in row]
        if len(entries) != K:
            raise NonSquare(f"row of length {len(entries)} in a {K}-user matrix")
        parsed.append(tuple(e if e > 0 else Fraction(0) for e in entries))
    return ChannelMatrix(K, tuple(parsed))


@dataclass(frozen=True)
class Stream:
    """One scalar data stream: user index, beamforming direction over the
    block, and transmit power exponent (power is P^power_exp)."""

    user: int
    vector: tuple[Fraction, ...]
    power_exp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(to_fraction(c) for c in self.vector))
        object.__setattr__(self, "power_exp", to_fraction(self.power_exp))
        if not self.vector or all(c == 0 for c in self.vector):
            raise EmptyVector(f"stream of user {self.user} has no direction")
        if self.power_exp > 0:
            raise PositivePowerExponent(
                f"stream of user {self.user} has power exponent {self.power_exp} > 0"
            )


@dataclass(frozen=True)
class Scheme:
    """Beamforming scheme over an n-use block.

    Within each user, stream order is the successive-cancellation decoding
    order and is preserved.
    """

    n: int
    streams: tuple[Stream, ...]

    def __post_init__(self):
        object.__setattr__(self, "streams", tuple(self.streams))
        if self.n < 1:
            raise ValueError(f"block length must be positive, got {self.n}")
        for s in self.streams:
            if len(s.vector) != self.n:
                raise DimensionMismatch(
                    f"stream of user {s.user} has {len(s.vector)} coordinates, block is {self.n}"
                )

    def streams_of(self, user: int) -> tuple[Stream, ...]:
        return tuple(s for s in self.streams if s.user == user)

    def stream_counts(self, K: int) -> tuple[int, ...]:
        counts = [0] * K
        for s in self.streams:
            counts[s.user] += 1
        return tuple(counts)


def validate_scheme(scheme: Scheme, channel: ChannelMatrix) -> Scheme:
    """Check a scheme against a channel and return it in normalized form.

    Each vector is rescaled so its first nonzero coordinate is 1; scaling
    is GDoF-irrelevant, so this is a pure canonicalization.
    """
    normalized = []
    for s in scheme.streams:
        if not 0 <= s.user < channel.K:
            raise DimensionMismatch(f"stream user {s.user} out of range for K={channel.K}")
        if len(s.vector) != scheme.n:
            raise DimensionMismatch(
                f"stream of user {s.user} has {len(s.vector)} coordinates, block is {scheme.n}"
            )
        if s.power_exp > 0:
            raise PositivePowerExponent(f"power exponent {s.power_exp} > 0")
        pivot = next((c for c in s.vector if c != 0), None)
        if pivot is None:
            raise EmptyVector(f"stream of user {s.user} has no direction")
        normalized.append(Stream(s.user, tuple(c / pivot for c in s.vector), s.power_exp))
    return Scheme(scheme.n, tuple(normalized))


@dataclass(frozen=True)
class UserGdof:
    """GDoF split for one receiver: the exponents of det(desired +
    interference + noise) and det(interference + noise), and their scaled
    difference."""

    combined_exp: Fraction
    interference_exp: Fraction
    gdof: Fraction


@dataclass(frozen=True)
class GDoFReport:
    """Per-user GDoF values plus the per-stream successive-cancellation
    breakdown (rows sum exactly to the user GDoF)."""

    users: tuple[UserGdof, ...]
    per_stream: tuple[tuple[Fraction, ...], ...]

    @property
    def gdof(self) -> tuple[Fraction, ...]:
        return tuple(u.gdof for u in self.users)


@dataclass(frozen=True)
class DecompositionMap:
    """Assignment of each present cross link (receiver, transmitter) to the
    vector-space (TIM) component or the power-level (TIN) component."""

    tim_links: frozenset[tuple[int, int]]
    tin_links: frozenset[tuple[int, int]]

    def __post_init__(self):
        tim = frozenset((int(k), int(i)) for k, i in self.tim_links)
        tin = frozenset((int(k), int(i)) for k, i in self.tin_links)
        object.__setattr__(self, "tim_links", tim)
        object.__setattr__(self, "tin_links", tin)
        both = tim & tin
        if both:
            raise MapMismatch(f"links tagged both ways: {sorted(both)}")
        for k, i in tim | tin:
            if k == i:
                raise MapMismatch(f"self link ({k},{i}) cannot be tagged")

    @property
    def links(self) -> frozenset[tuple[int, int]]:
        return self.tim_links | self.tin_links


# --- JSON file formats (1-based user indices on disk) ---


def _loads(text: str):
    return json.loads(text, parse_float=Fraction)


def dumps(doc) -> str:
    """Deterministic JSON emission used for every document this package writes."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_topology(text: str) -> ChannelMatrix:
    doc = _loads(text)
    if not isinstance(doc, dict) or "alpha" not in doc:
        raise NonSquare('topology file must be {"K": int, "alpha": [[...]]}')
    channel = validate_channel(doc["alpha"])
    if "K" in doc and int(doc["K"]) != channel.K:
        raise NonSquare(f'declared K={doc["K"]} but alpha is {channel.K}x{channel.K}')
    return channel


def emit_topology(channel: ChannelMatrix) -> str:
    return dumps(
        {
            "K": channel.K,
            "alpha": [[format_rational(x) for x in row] for row in channel.alpha],
        }
    )


def parse_scheme(text: str) -> Scheme:
    doc = _loads(text)
    if not isinstance(doc, dict) or "n" not in doc or "streams" not in doc:
        raise DimensionMismatch('scheme file must be {"n": int, "streams": [...]}')
    streams = []
    for entry in doc["streams"]:
        streams.append(
            Stream(
                user=int(entry["user"]) - 1,
                vector=tuple(to_fraction(c) for c in entry["vector"]),
                power_exp=to_fraction(entry["power_exp"]),
            )
        )
    return Scheme(int(doc["n"]), tuple(streams))


def emit_scheme(scheme: Scheme) -> str:
    return dumps(
        {
            "n": scheme.n,
            "streams": [
                {
                    "user": s.user + 1,
                    "vector": [format_rational(c) for c in s.vector],
                    "power_exp": format_rational(s.power_exp),
                }
                for s in scheme.streams
            ],
        }
    )


def parse_decomposition_map(text: str) -> DecompositionMap:
    doc = _loads(text)
    if not isinstance(doc, dict) or "tim_links" not in doc or "tin_links" not in doc:
        raise MapMismatch('map file must be {"tim_links": [[k,i]...], "tin_links": [[k,i]...]}')
    return DecompositionMap(
        tim_links=frozenset((int(k) - 1, int(i) - 1) for k, i in doc["tim_links"]),
        tin_links=frozenset((int(k) - 1, int(i) - 1) for k, i in doc["tin_links"]),
    )


def emit_decomposition_map(dmap: DecompositionMap) -> str:
    return dumps(
        {
            "tim_links": sorted([k + 1, i + 1] for k, i in dmap.tim_links),
            "tin_links": sorted([k + 1, i + 1] for k, i in dmap.tin_links),
        }
    )
