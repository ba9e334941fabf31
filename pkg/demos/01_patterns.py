"""Generating communication patterns.

Each pattern family computes a receiver for every sender from its PE id:
offsets shift by a stride, rings shift modulo the group, exchanges swap
pairs, stencils talk to grid neighbors. This script prints small instances
of each so the structure is visible.
"""

from traceglyph import (
    StencilSpec,
    exchange_descriptor,
    gen_exchange,
    gen_offset,
    gen_ring,
    gen_stencil,
    gen_trace,
    offset_descriptor,
    ring_descriptor,
)

print("== offset, 8 PEs, stride 1, continuous ==")
print(gen_offset(offset_descriptor(8, 1)).edges)

print("\n== offset, 8 PEs, stride 1, grouped in blocks of 4 ==")
print(gen_offset(offset_descriptor(8, 1, 4)).edges)
print("note the missing (3, 4) edge: sends never cross a group boundary")

print("\n== ring, 8 PEs, stride 1, continuous ==")
print(gen_ring(ring_descriptor(8, 1)).edges)
print("the (7, 0) edge wraps around the id space")

print("\n== exchange, 8 PEs, stride 1: pairwise swaps ==")
round_ = gen_exchange(exchange_descriptor(8, 1))
print(round_.edges)
mapping = dict(round_.edges)
print("involution check:", all(mapping[mapping[s]] == s for s in mapping))

print("\n== stencil, 3x3 grid, 1 hop, no diagonals ==")
print(gen_stencil(StencilSpec((3, 3), 1)).edges)

print("\n== production-scale instance: 2560 PEs, stride 10, groups of 16 ==")
big = gen_offset(offset_descriptor(2560, 10, 16))
print(f"{len(big.edges)} edges (160 groups x 6 in-group senders)")

print("\n== wrapping a round into a trace ==")
trace = gen_trace(ring_descriptor(4, 1), timesteps=2)
print(f"trace: {trace.num_pes} PEs, {trace.num_events} events")
for event in trace.events_per_pe[0]:
    detail = event.name if event.name else f"partner {event.partner}"
    print(f"  PE0: {event.type:<5} {detail}")
