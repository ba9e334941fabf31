"""Shared test helpers: independent oracles and random input generators.

The oracles here deliberately avoid the library's own code paths: leveling is
checked against a generic longest-path pass over an explicitly materialized
DAG (stdlib graphlib), and glyph stroke separation is checked with a plain
computational-geometry segment intersection test.
"""

from __future__ import annotations

import graphlib
import random

from traceglyph.patterns import (
    PatternDescriptor,
    exchange_descriptor,
    offset_descriptor,
    ring_descriptor,
)
from traceglyph.trace import CommEdge, Event, Trace


def oracle_levels(trace: Trace, edges) -> dict[tuple[int, int], int]:
    """Brute-force longest path over the explicit happens-before DAG."""
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for pe, seq in enumerate(trace.events_per_pe):
        for i in range(len(seq)):
            preds[(pe, i)] = [(pe, i - 1)] if i > 0 else []
    for e in edges:
        preds[(e.dst_pe, e.recv_index)].append((e.src_pe, e.send_index))
    order = graphlib.TopologicalSorter(preds).static_order()
    levels: dict[tuple[int, int], int] = {}
    for node in order:
        levels[node] = max((levels[p] + 1 for p in preds[node]), default=0)
    return levels


def random_trace(rng: random.Random, max_pes: int = 6, max_events: int = 60) -> Trace:
    """A random well-formed trace: balanced nesting, fully matchable comm.

    Built as one global interleaving where each receive is emitted only after
    a send on its channel is outstanding, so the happens-before relation is
    acyclic by construction. Event count never exceeds max_events.
    """
    num_pes = rng.randint(1, max_pes)
    use_t = rng.random() < 0.5
    names = ["alpha", "beta", "gamma"]
    seqs: list[list[Event]] = [[] for _ in range(num_pes)]
    stacks: list[list[str]] = [[] for _ in range(num_pes)]
    owed: dict[tuple[int, int, int], int] = {}  # (src, dst, tag) -> pending recvs
    clock = 0.0
    emitted = 0

    def stamp():
        nonlocal clock
        clock += rng.random()
        return round(clock, 6) if use_t else None

    def obligations():
        return sum(owed.values()) + sum(len(s) for s in stacks)

    budget = rng.randint(0, max_events)
    while emitted < budget:
        if emitted + obligations() + 2 > max_events:
            break
        roll = rng.random()
        pe = rng.randrange(num_pes)
        if roll < 0.25:
            name = rng.choice(names)
            seqs[pe].append(Event(pe, "enter", name=name, wall_time=stamp()))
            stacks[pe].append(name)
        elif roll < 0.40 and stacks[pe]:
            seqs[pe].append(Event(pe, "leave", name=stacks[pe].pop(), wall_time=stamp()))
        elif roll < 0.75 and num_pes > 1:
            dst = rng.choice([p for p in range(num_pes) if p != pe])
            tag = rng.randrange(3)
            seqs[pe].append(Event(pe, "send", partner=dst, tag=tag, wall_time=stamp()))
            owed[(pe, dst, tag)] = owed.get((pe, dst, tag), 0) + 1
        else:
            channels = [c for c, n in owed.items() if n > 0]
            if not channels:
                continue
            src, dst, tag = rng.choice(channels)
            seqs[dst].append(Event(dst, "recv", partner=src, tag=tag, wall_time=stamp()))
            owed[(src, dst, tag)] -= 1
        emitted += 1
    # Flush obligations: deliver owed receives, close open scopes.
    for (src, dst, tag), n in sorted(owed.items()):
        for _ in range(n):
            seqs[dst].append(Event(dst, "recv", partner=src, tag=tag, wall_time=stamp()))
    for pe in range(num_pes):
        while stacks[pe]:
            seqs[pe].append(Event(pe, "leave", name=stacks[pe].pop(), wall_time=stamp()))
    return Trace(num_pes, tuple(tuple(s) for s in seqs))


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def segments_intersect(s1, s2, eps: float = 1e-7) -> bool:
    """Closed-segment intersection, including collinear overlap."""
    (x1, y1, x2, y2), (x3, y3, x4, y4) = s1, s2
    d1 = _orient(x3, y3, x4, y4, x1, y1)
    d2 = _orient(x3, y3, x4, y4, x2, y2)
    d3 = _orient(x1, y1, x2, y2, x3, y3)
    d4 = _orient(x1, y1, x2, y2, x4, y4)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_segment(px, py, qx, qy, rx, ry):
        if abs(_orient(px, py, qx, qy, rx, ry)) > eps:
            return False
        return (
            min(px, qx) - eps <= rx <= max(px, qx) + eps
            and min(py, qy) - eps <= ry <= max(py, qy) + eps
        )

    return (
        on_segment(x1, y1, x2, y2, x3, y3)
        or on_segment(x1, y1, x2, y2, x4, y4)
        or on_segment(x3, y3, x4, y4, x1, y1)
        or on_segment(x3, y3, x4, y4, x2, y2)
    )


def assert_no_crossings(segments):
    for i, a in enumerate(segments):
        for b in segments[i + 1:]:
            assert not segments_intersect(a, b), f"strokes intersect: {a} x {b}"


def acceptance_corpus() -> list[PatternDescriptor]:
    """Every descriptor in the detection round-trip corpus.

    Families x grouping x stride 2..10 x PE counts {16, 64, 1280, 2560},
    with grouped variants restricted to bundles drawing 4..16 lines per
    group (offset: group_size - stride, ring: group_size, exchange: twice
    the stride).
    """
    descriptors = []
    for num_pes in (16, 64, 1280, 2560):
        divisors = [g for g in range(2, num_pes) if num_pes % g == 0]
        for stride in range(2, 11):
            if stride < num_pes:
                descriptors.append(offset_descriptor(num_pes, stride))
                if num_pes != 2 * stride:
                    descriptors.append(ring_descriptor(num_pes, stride))
            if stride <= 8 and num_pes % (2 * stride) == 0:
                descriptors.append(exchange_descriptor(num_pes, stride))
            for g in divisors:
                if g <= stride:
                    continue
                if 4 <= g - stride <= 16:
                    descriptors.append(offset_descriptor(num_pes, stride, g))
                if 4 <= g <= 16 and g != 2 * stride:
                    descriptors.append(ring_descriptor(num_pes, stride, g))
    return descriptors
