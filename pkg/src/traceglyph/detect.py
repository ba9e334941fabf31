"""Classify a communication round as an offset, ring, or exchange instance.

Detection is exact: a descriptor is returned only when regenerating its round
reproduces the input edge set bit for bit. Anything else is Unknown. The rule
order resolves the structural tie between exchanges and rings whose stride is
half the group size in favor of exchange.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .patterns import (
    Continuous,
    Grouped,
    PatternDescriptor,
    descriptor_to_json,
    exchange_descriptor,
    generate_round,
    offset_descriptor,
    ring_descriptor,
)
from .timeline import CommRound


@dataclass(frozen=True)
class Unknown:
    reason: str


@dataclass(frozen=True)
class Classification:
    result: Union[PatternDescriptor, Unknown]
    exact: bool

    @property
    def is_known(self) -> bool:
        return isinstance(self.result, PatternDescriptor)


def classify_round(round_: CommRound) -> Classification:
    """Decide which pattern family, stride, and grouping explain a round.

    Rules are tried in order (exchange, offset, ring); each proposes a
    descriptor from the edge structure and accepts it only if regeneration
    reproduces the round exactly.
    """
    if not round_.edges:
        raise ValueError("cannot classify an empty round")
    edges = round_.edges
    num_pes = round_.num_pes
    senders = [src for src, _ in edges]
    if len(set(senders)) != len(senders):
        return Classification(Unknown("a PE sends more than once in the round"), False)
    mapping = dict(edges)
    deltas = sorted({dst - src for src, dst in edges})
    for hypothesis in (_exchange_hypothesis, _offset_hypothesis, _ring_hypothesis):
        candidate = hypothesis(mapping, deltas, num_pes)
        if candidate is not None and generate_round(candidate).edges == edges:
            return Classification(candidate, True)
    return Classification(
        Unknown(
            f"no offset, ring, or exchange instance reproduces the round "
            f"({len(edges)} edges, {len(deltas)} distinct deltas over {num_pes} PEs)"
        ),
        False,
    )


def _exchange_hypothesis(mapping, deltas, num_pes):
    # Fixed-point-free involution with one |delta| and contiguous groups of
    # size 2*delta; regeneration enforces the group layout.
    if set(mapping.keys()) != set(mapping.values()):
        return None
    for src, dst in mapping.items():
        if dst == src or mapping.get(dst) != src:
            return None
    magnitudes = {abs(d) for d in deltas}
    if len(magnitudes) != 1:
        return None
    stride = magnitudes.pop()
    if stride < 1 or num_pes % (2 * stride) != 0:
        return None
    return exchange_descriptor(num_pes, stride)


def _offset_hypothesis(mapping, deltas, num_pes):
    # One positive delta. The first PE id that never sends marks the top of
    # the first group: group size = first gap + stride.
    if len(deltas) != 1 or deltas[0] <= 0:
        return None
    stride = deltas[0]
    sender_set = set(mapping.keys())
    first_gap = next(i for i in range(num_pes) if i not in sender_set)
    group_size = first_gap + stride
    if group_size == num_pes:
        return offset_descriptor(num_pes, stride)
    if first_gap == 0 or num_pes % group_size != 0:
        return None
    return offset_descriptor(num_pes, stride, group_size)


def _ring_hypothesis(mapping, deltas, num_pes):
    # One positive delta plus one negative wrap delta equal to stride - group
    # size, with every PE sending exactly once.
    if len(deltas) != 2:
        return None
    wrap, stride = deltas
    if stride <= 0 or wrap >= 0:
        return None
    group_size = stride - wrap
    if group_size < 2 or num_pes % group_size != 0 or stride >= group_size:
        return None
    if group_size == 2 * stride:
        # Structurally an exchange; the involution rule already declined, so
        # this edge set is not a clean instance of either family.
        return None
    if len(mapping) != num_pes:
        return None
    if group_size == num_pes:
        return ring_descriptor(num_pes, stride)
    return ring_descriptor(num_pes, stride, group_size)


def canonicalize(d: PatternDescriptor) -> PatternDescriptor:
    """Rewrite structurally equivalent descriptors into one canonical form.

    Rings whose group size is twice the stride become exchanges, and a
    single-group grouping collapses to continuous (except for exchanges,
    which are grouped by definition). Idempotent.
    """
    if d.family == "ring":
        group_size = d.grouping.group_size if isinstance(d.grouping, Grouped) else d.num_pes
        if group_size == 2 * d.stride:
            return PatternDescriptor(
                "exchange",
                d.stride,
                Grouped(group_size, d.num_pes // group_size),
                d.num_pes,
            )
    if (
        d.family != "exchange"
        and isinstance(d.grouping, Grouped)
        and d.grouping.group_count == 1
    ):
        return PatternDescriptor(d.family, d.stride, Continuous(), d.num_pes)
    return d


def same_stride(a: PatternDescriptor, b: PatternDescriptor) -> bool:
    """True when two descriptors share a stride after canonicalization."""
    return canonicalize(a).stride == canonicalize(b).stride


def classification_to_json(c: Classification, send_level: int | None = None) -> dict:
    doc: dict = {}
    if send_level is not None:
        doc["send_level"] = send_level
    if isinstance(c.result, Unknown):
        doc.update({"family": "unknown", "reason": c.result.reason})
    else:
        doc.update(descriptor_to_json(c.result))
        doc["exact"] = c.exact
    return doc
