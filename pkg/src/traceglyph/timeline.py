"""Logical timestep assignment and per-step communication rounds.

Events are placed on an idealized integer time axis: successive events on one
PE occupy strictly increasing steps, and a receive is always at least one step
after its matching send. The level of an event is the length of the longest
happens-before chain leading to it.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .trace import CommEdge, Trace


class CycleError(ValueError):
    """The happens-before relation contains a cycle."""

    def __init__(self, edge: CommEdge):
        self.edge = edge
        super().__init__(
            "happens-before cycle through communication edge "
            f"{edge.src_pe}[{edge.send_index}] -> {edge.dst_pe}[{edge.recv_index}]"
        )


@dataclass(frozen=True)
class LeveledEdge:
    """A matched communication edge annotated with logical send/recv steps."""

    edge: CommEdge
    send_level: int
    recv_level: int


@dataclass(frozen=True)
class CommRound:
    """All directed (sender, receiver) pairs sharing one logical send step."""

    send_level: int
    edges: tuple[tuple[int, int], ...]
    num_pes: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        seen = set()
        for src, dst in self.edges:
            if src == dst:
                raise ValueError(f"self edge ({src}, {dst}) in round")
            if not (0 <= src < self.num_pes and 0 <= dst < self.num_pes):
                raise ValueError(f"edge ({src}, {dst}) outside PE range {self.num_pes}")
            if (src, dst) in seen:
                raise ValueError(f"duplicate edge ({src}, {dst}) in round")
            seen.add((src, dst))


@dataclass(frozen=True)
class LogicalTimeline:
    """A trace with a logical step assigned to every event."""

    trace: Trace
    levels: tuple[tuple[int, ...], ...]
    edges: tuple[LeveledEdge, ...]
    max_level: int

    def __post_init__(self) -> None:
        for pe, row in enumerate(self.levels):
            if len(row) != len(self.trace.events_per_pe[pe]):
                raise ValueError(f"level row {pe} does not cover its events")
            for a, b in zip(row, row[1:]):
                if b <= a:
                    raise ValueError(f"levels not strictly increasing on PE {pe}")
            if row and (row[0] < 0):
                raise ValueError(f"negative level on PE {pe}")
        for le in self.edges:
            if le.recv_level < le.send_level + 1:
                raise ValueError(
                    f"edge {le.edge} violates recv_level >= send_level + 1"
                )
        top = max((lv for row in self.levels for lv in row), default=0)
        if self.max_level != top:
            raise ValueError(f"max_level {self.max_level} != observed maximum {top}")


def _topo_order(trace: Trace, edges: Sequence[CommEdge]) -> list[tuple[int, int]]:
    """Kahn's algorithm over the implicit happens-before DAG.

    Nodes are (pe, index); predecessors are the previous event on the same PE
    and, for a receive, its matching send. Raises CycleError naming a
    communication edge on the cycle.
    """
    recv_edge = {(e.dst_pe, e.recv_index): e for e in edges}
    send_succ: dict[tuple[int, int], tuple[int, int]] = {
        (e.src_pe, e.send_index): (e.dst_pe, e.recv_index) for e in edges
    }
    indeg: dict[tuple[int, int], int] = {}
    for pe, seq in enumerate(trace.events_per_pe):
        for i in range(len(seq)):
            deg = 1 if i > 0 else 0
            if (pe, i) in recv_edge:
                deg += 1
            indeg[(pe, i)] = deg
    ready = deque(sorted(n for n, d in indeg.items() if d == 0))
    order = []
    while ready:
        node = ready.popleft()
        order.append(node)
        pe, i = node
        succs = []
        if i + 1 < len(trace.events_per_pe[pe]):
            succs.append((pe, i + 1))
        comm = send_succ.get(node)
        if comm is not None:
            succs.append(comm)
        for s in succs:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
    if len(order) < len(indeg):
        remaining = {n for n, d in indeg.items() if d > 0}
        raise CycleError(_find_cycle_edge(trace, recv_edge, remaining))
    return order


def _find_cycle_edge(trace, recv_edge, remaining) -> CommEdge:
    # Walk backwards through unprocessed predecessors until a node repeats,
    # then report a communication edge inside the loop.
    start = min(remaining)
    seen: dict[tuple[int, int], int] = {}
    path: list[tuple[int, int]] = []
    node = start
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        pe, i = node
        pred = None
        if i > 0 and (pe, i - 1) in remaining:
            pred = (pe, i - 1)
        edge = recv_edge.get(node)
        if edge is not None and (edge.src_pe, edge.send_index) in remaining:
            # Prefer following communication edges: the cycle must use >= 1.
            pred = (edge.src_pe, edge.send_index)
        node = pred
    cycle = path[seen[node]:]
    cycle_set = set(cycle)
    for n in cycle:
        edge = recv_edge.get(n)
        if edge is not None and (edge.src_pe, edge.send_index) in cycle_set:
            return edge
    # Unreachable for per-PE ordered traces: a cycle needs a comm edge.
    raise AssertionError("cycle without communication edge")


def assign_levels(trace: Trace, edges: Sequence[CommEdge]) -> LogicalTimeline:
    """Longest-path leveling of the happens-before DAG.

    level(e) = 1 + max(level of previous event on the same PE,
                       level of the matching send if e is a receive),
    with chain-initial non-receive events at level 0. Requires a complete
    matching: every send and recv event must appear in ``edges``.
    """
    recv_edge = {(e.dst_pe, e.recv_index): e for e in edges}
    send_set = {(e.src_pe, e.send_index) for e in edges}
    for pe, seq in enumerate(trace.events_per_pe):
        for i, ev in enumerate(seq):
            if ev.type == "send" and (pe, i) not in send_set:
                raise ValueError(f"send at PE {pe}[{i}] has no matching edge")
            if ev.type == "recv" and (pe, i) not in recv_edge:
                raise ValueError(f"recv at PE {pe}[{i}] has no matching edge")
    order = _topo_order(trace, edges)
    levels = [[0] * len(seq) for seq in trace.events_per_pe]
    for pe, i in order:
        best = -1
        if i > 0:
            best = levels[pe][i - 1]
        e = recv_edge.get((pe, i))
        if e is not None:
            best = max(best, levels[e.src_pe][e.send_index])
        levels[pe][i] = best + 1
    return _build_timeline(trace, levels, edges)


def _build_timeline(trace, levels, edges) -> LogicalTimeline:
    leveled = tuple(
        LeveledEdge(e, levels[e.src_pe][e.send_index], levels[e.dst_pe][e.recv_index])
        for e in edges
    )
    max_level = max((lv for row in levels for lv in row), default=0)
    return LogicalTimeline(trace, tuple(tuple(r) for r in levels), leveled, max_level)


def align_by_code(timeline: LogicalTimeline) -> LogicalTimeline:
    """Best-effort alignment of events created by the same code.

    Events sharing (name, per-PE occurrence index) form a group; every member
    is raised to the group's maximum level, then successors are pushed later
    until the timeline invariants hold again. Sweeps are capped at the total
    event count; if the cap is hit the input timeline is returned unchanged.
    Only ever raises levels, and is idempotent.
    """
    trace = timeline.trace
    groups: dict[tuple[str, int], list[tuple[int, int]]] = defaultdict(list)
    for pe, seq in enumerate(trace.events_per_pe):
        occurrence: dict[str, int] = defaultdict(int)
        for i, ev in enumerate(seq):
            if ev.name is not None:
                groups[(ev.name, occurrence[ev.name])].append((pe, i))
                occurrence[ev.name] += 1
    shared = [members for members in groups.values() if len(members) > 1]
    if not shared:
        return timeline
    plain_edges = [le.edge for le in timeline.edges]
    order = _topo_order(trace, plain_edges)
    recv_edge = {(e.dst_pe, e.recv_index): e for e in plain_edges}
    cur = [list(row) for row in timeline.levels]
    cap = max(trace.num_events, 1)
    for _ in range(cap):
        changed = False
        for members in shared:
            top = max(cur[pe][i] for pe, i in members)
            for pe, i in members:
                if cur[pe][i] < top:
                    cur[pe][i] = top
                    changed = True
        for pe, i in order:
            need = cur[pe][i]
            if i > 0:
                need = max(need, cur[pe][i - 1] + 1)
            e = recv_edge.get((pe, i))
            if e is not None:
                need = max(need, cur[e.src_pe][e.send_index] + 1)
            if need > cur[pe][i]:
                cur[pe][i] = need
                changed = True
        if not changed:
            return _build_timeline(trace, cur, plain_edges)
    return timeline


def extract_rounds(timeline: LogicalTimeline) -> list[CommRound]:
    """Group communication edges by send level, ordered by send level."""
    by_level: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for le in timeline.edges:
        by_level[le.send_level].append((le.edge.src_pe, le.edge.dst_pe))
    return [
        CommRound(level, tuple(pairs), timeline.trace.num_pes)
        for level, pairs in sorted(by_level.items())
    ]


def intervals(timeline: LogicalTimeline) -> list[tuple[int, str, int, int]]:
    """Enter/leave pairs as (pe, name, enter_level, leave_level), sorted."""
    out = []
    for pe, seq in enumerate(timeline.trace.events_per_pe):
        stack: list[tuple[str, int]] = []
        for i, ev in enumerate(seq):
            if ev.type == "enter":
                stack.append((ev.name, timeline.levels[pe][i]))
            elif ev.type == "leave":
                name, start = stack.pop()
                out.append((pe, name, start, timeline.levels[pe][i]))
    out.sort(key=lambda item: (item[0], item[2], item[3]))
    return out
