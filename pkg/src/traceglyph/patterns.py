"""Synthetic communication patterns: offset, ring, exchange, and stencil.

A pattern computes each sender's receiver from its PE id, the PE count, a
stride, and an optional partitioning of the id space into equal groups:

* offset:   i -> i + s, when i + s stays inside the group
* ring:     i -> (i + s) mod group size, applied within each group
* exchange: pairwise swap, a ring whose stride is half the group size
* stencil:  grid neighbors within j hops on a kD row-major grid

All generators are pure and fully determined by their parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Union

from .timeline import CommRound
from .trace import Event, Trace

FAMILIES = ("offset", "ring", "exchange")


class PatternError(ValueError):
    """A descriptor or spec violates a pattern invariant."""


@dataclass(frozen=True)
class Continuous:
    """One block spanning the whole PE id space."""


@dataclass(frozen=True)
class Grouped:
    """The id space split into ``group_count`` blocks of ``group_size``."""

    group_size: int
    group_count: int


Grouping = Union[Continuous, Grouped]


@dataclass(frozen=True)
class PatternDescriptor:
    family: str
    stride: int
    grouping: Grouping
    num_pes: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise PatternError(f"unknown family {self.family!r}")
        if self.num_pes < 1:
            raise PatternError("num_pes must be positive")
        if self.stride < 1:
            raise PatternError("stride must be >= 1")
        if isinstance(self.grouping, Grouped):
            g, count = self.grouping.group_size, self.grouping.group_count
            if g < 2 or count < 1 or g * count != self.num_pes:
                raise PatternError(
                    f"groups of {g} x {count} do not tile {self.num_pes} PEs"
                )
            if self.stride >= g:
                raise PatternError(f"stride {self.stride} must be < group size {g}")
        else:
            if self.stride >= self.num_pes:
                raise PatternError(
                    f"stride {self.stride} must be < num_pes {self.num_pes}"
                )
        if self.family == "exchange":
            if not isinstance(self.grouping, Grouped):
                raise PatternError("exchange patterns are always grouped")
            if self.grouping.group_size != 2 * self.stride:
                raise PatternError(
                    "exchange group size must equal twice the stride, got "
                    f"{self.grouping.group_size} vs stride {self.stride}"
                )

    def blocks(self) -> tuple[int, int]:
        """(group_size, group_count), treating continuous as one full block."""
        if isinstance(self.grouping, Grouped):
            return self.grouping.group_size, self.grouping.group_count
        return self.num_pes, 1


def offset_descriptor(num_pes: int, stride: int, group_size: int | None = None) -> PatternDescriptor:
    return PatternDescriptor("offset", stride, _grouping(num_pes, group_size), num_pes)


def ring_descriptor(num_pes: int, stride: int, group_size: int | None = None) -> PatternDescriptor:
    return PatternDescriptor("ring", stride, _grouping(num_pes, group_size), num_pes)


def exchange_descriptor(num_pes: int, stride: int) -> PatternDescriptor:
    return PatternDescriptor("exchange", stride, _grouping(num_pes, 2 * stride), num_pes)


def _grouping(num_pes: int, group_size: int | None) -> Grouping:
    if group_size is None:
        return Continuous()
    if group_size < 1 or num_pes % group_size != 0:
        raise PatternError(f"group size {group_size} does not divide {num_pes} PEs")
    return Grouped(group_size, num_pes // group_size)


@dataclass(frozen=True)
class StencilSpec:
    """PEs arranged in a kD row-major grid; each sends to its j-hop neighbors."""

    dims: tuple[int, ...]
    hops: int = 1
    diagonals: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims or any(d < 1 for d in self.dims):
            raise PatternError(f"grid dims must be positive, got {self.dims}")
        if self.hops < 1:
            raise PatternError("hops must be >= 1")

    @property
    def num_pes(self) -> int:
        n = 1
        for d in self.dims:
            n *= d
        return n


PatternLike = Union[PatternDescriptor, StencilSpec]


def gen_offset(d: PatternDescriptor) -> CommRound:
    """Edges {(i, i+s)} for every i whose receiver stays inside its group."""
    _expect_family(d, "offset")
    g, count = d.blocks()
    s = d.stride
    edges = []
    for m in range(count):
        base = m * g
        edges.extend((base + r, base + r + s) for r in range(g - s))
    return CommRound(0, tuple(edges), d.num_pes)


def gen_ring(d: PatternDescriptor) -> CommRound:
    """Edges {(i, (i+s) mod g)} within each group; wraps around the group end.

    Groups whose size equals twice the stride are rejected: that relation is
    an exchange and must be generated as one so detection round-trips stay
    exact.
    """
    _expect_family(d, "ring")
    g, count = d.blocks()
    s = d.stride
    if g == 2 * s:
        raise PatternError(
            f"ring with group size {g} == 2 * stride is an exchange; "
            "generate it with the exchange family"
        )
    edges = []
    for m in range(count):
        base = m * g
        edges.extend((base + r, base + (r + s) % g) for r in range(g))
    return CommRound(0, tuple(edges), d.num_pes)


def gen_exchange(d: PatternDescriptor) -> CommRound:
    """Pairwise swaps within groups of size 2s; a fixed-point-free involution."""
    _expect_family(d, "exchange")
    g, count = d.blocks()
    s = d.stride
    edges = []
    for m in range(count):
        base = m * g
        edges.extend((base + r, base + (r + s) % g) for r in range(g))
    return CommRound(0, tuple(edges), d.num_pes)


def gen_stencil(spec: StencilSpec) -> CommRound:
    """Grid-neighbor edges, both directions.

    With ``diagonals`` every cell within Chebyshev distance <= hops is a
    neighbor; without, only cells within ``hops`` steps along a single axis.
    """
    dims = spec.dims
    offsets = []
    if spec.diagonals:
        for off in product(range(-spec.hops, spec.hops + 1), repeat=len(dims)):
            if any(off):
                offsets.append(off)
    else:
        for axis in range(len(dims)):
            for step in range(-spec.hops, spec.hops + 1):
                if step:
                    off = [0] * len(dims)
                    off[axis] = step
                    offsets.append(tuple(off))
    strides = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]

    def linear(cell):
        return sum(c * s for c, s in zip(cell, strides))

    edges = []
    for cell in product(*(range(d) for d in dims)):
        src = linear(cell)
        for off in offsets:
            nb = tuple(c + o for c, o in zip(cell, off))
            if all(0 <= c < d for c, d in zip(nb, dims)):
                edges.append((src, linear(nb)))
    return CommRound(0, tuple(edges), spec.num_pes)


def generate_round(pattern: PatternLike) -> CommRound:
    if isinstance(pattern, StencilSpec):
        return gen_stencil(pattern)
    if pattern.family == "offset":
        return gen_offset(pattern)
    if pattern.family == "ring":
        return gen_ring(pattern)
    return gen_exchange(pattern)


def gen_trace(pattern: PatternLike, timesteps: int = 1) -> Trace:
    """A trace that repeats one pattern round for ``timesteps`` steps.

    Each PE wraps its per-step work in an enter/leave pair named "step",
    sending before receiving. Tags are constant, so FIFO matching pairs the
    k-th send on a channel with the k-th recv and reproduces the generated
    rounds exactly.
    """
    if timesteps < 1:
        raise PatternError("timesteps must be >= 1")
    round_ = generate_round(pattern)
    num_pes = round_.num_pes
    out_of: dict[int, list[int]] = {pe: [] for pe in range(num_pes)}
    into: dict[int, list[int]] = {pe: [] for pe in range(num_pes)}
    for src, dst in round_.edges:
        out_of[src].append(dst)
        into[dst].append(src)
    seqs = []
    for pe in range(num_pes):
        seq = []
        for _ in range(timesteps):
            seq.append(Event(pe, "enter", name="step"))
            seq.extend(Event(pe, "send", partner=dst, tag=0) for dst in out_of[pe])
            seq.extend(Event(pe, "recv", partner=src, tag=0) for src in sorted(into[pe]))
            seq.append(Event(pe, "leave", name="step"))
        seqs.append(tuple(seq))
    return Trace(num_pes, tuple(seqs))


def descriptor_to_json(d: PatternDescriptor) -> dict:
    grouping: object
    if isinstance(d.grouping, Grouped):
        grouping = {"group_size": d.grouping.group_size}
    else:
        grouping = "continuous"
    return {
        "family": d.family,
        "stride": d.stride,
        "grouping": grouping,
        "num_pes": d.num_pes,
    }


def descriptor_from_json(doc: dict) -> PatternDescriptor:
    try:
        family = doc["family"]
        stride = doc["stride"]
        grouping = doc["grouping"]
        num_pes = doc["num_pes"]
    except KeyError as exc:
        raise PatternError(f"descriptor missing field {exc}") from None
    if grouping == "continuous":
        parsed: Grouping = Continuous()
    elif isinstance(grouping, dict) and set(grouping) == {"group_size"}:
        g = grouping["group_size"]
        if not isinstance(g, int) or g < 1 or num_pes % g != 0:
            raise PatternError(f"group size {g!r} does not divide {num_pes} PEs")
        parsed = Grouped(g, num_pes // g)
    else:
        raise PatternError(f"unrecognized grouping {grouping!r}")
    return PatternDescriptor(family, stride, parsed, num_pes)


def _expect_family(d: PatternDescriptor, family: str) -> None:
    if d.family != family:
        raise PatternError(f"expected a {family} descriptor, got {d.family}")
