"""Idealized logical time.

Wall-clock timestamps hide structure: events that the code treats as one
step land at slightly different times on every PE. Leveling places each
event at the length of its longest happens-before chain, so sends that
belong together line up, and receives always land after their send.
"""

from traceglyph import (
    Event,
    Trace,
    align_by_code,
    assign_levels,
    extract_rounds,
    gen_trace,
    match_communication,
    offset_descriptor,
)


def show(timeline, title):
    print(title)
    for pe, row in enumerate(timeline.levels):
        cells = {level: ev for ev, level in zip(timeline.trace.events_per_pe[pe], row)}
        lane = []
        for level in range(timeline.max_level + 1):
            ev = cells.get(level)
            lane.append(f"{ev.type[:4]:>4}" if ev else "   .")
        print(f"  PE{pe}: " + " ".join(lane))
    print()


# A hand-built two-PE handshake: the receive cannot happen before the send.
trace = Trace.from_global_events(2, [
    Event(0, "send", partner=1, tag=0),
    Event(1, "recv", partner=0, tag=0),
])
timeline = assign_levels(trace, match_communication(trace))
show(timeline, "send/recv ordering (levels, one column per step):")

# A generated offset pattern over three timesteps. PEs at the edges of the
# id space do less work per step, so their later steps drift earlier ...
trace = gen_trace(offset_descriptor(8, 1), timesteps=3)
timeline = assign_levels(trace, match_communication(trace))
rounds = extract_rounds(timeline)
print(f"before alignment: {len(rounds)} rounds "
      f"{[(r.send_level, len(r.edges)) for r in rounds]}")

# ... until alignment raises events created by the same code ("step" number
# k on every PE) to a shared level and repairs the ordering constraints.
aligned = align_by_code(timeline)
rounds = extract_rounds(aligned)
print(f"after alignment:  {len(rounds)} rounds "
      f"{[(r.send_level, len(r.edges)) for r in rounds]}")
print("each round now holds the full 7-edge offset pattern")
