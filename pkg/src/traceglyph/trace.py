"""Trace data model: per-PE event sequences, file I/O, and send/recv matching.

A trace file (``.trace.json``) is a single JSON object::

    {"num_pes": 2,
     "events": [
      {"pe":0,"type":"enter","name":"step","t":0.0},
      {"pe":0,"type":"send","partner":1,"tag":0,"t":0.1},
      ...
     ]}

Events are globally ordered in the file; the sequence for one PE is the
subsequence of events carrying that ``pe``. The ``t`` (wall time) field is
optional everywhere. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

EVENT_TYPES = ("enter", "leave", "send", "recv")

_ALLOWED_KEYS = {
    "enter": frozenset({"pe", "type", "name", "t"}),
    "leave": frozenset({"pe", "type", "name", "t"}),
    "send": frozenset({"pe", "type", "partner", "tag", "t"}),
    "recv": frozenset({"pe", "type", "partner", "tag", "t"}),
}
_REQUIRED_KEYS = {
    "enter": frozenset({"pe", "type", "name"}),
    "leave": frozenset({"pe", "type", "name"}),
    "send": frozenset({"pe", "type", "partner", "tag"}),
    "recv": frozenset({"pe", "type", "partner", "tag"}),
}


class TraceFormatError(ValueError):
    """A trace document violates the file format or a model invariant."""


class MatchError(ValueError):
    """Sends and receives cannot be fully paired on some channel."""

    def __init__(self, unbalanced: Sequence[tuple[tuple[int, int, int], int, int]]):
        self.unbalanced = list(unbalanced)
        detail = "; ".join(
            f"channel src={s} dst={d} tag={t}: {ns} send(s) vs {nr} recv(s)"
            for (s, d, t), ns, nr in self.unbalanced
        )
        super().__init__(f"unmatched communication: {detail}")


@dataclass(frozen=True)
class Event:
    """One trace record on a single PE.

    ``name`` is set for enter/leave, ``partner``/``tag`` for send/recv, and
    ``wall_time`` is optional for every type.
    """

    pe: int
    type: str
    name: str | None = None
    partner: int | None = None
    tag: int | None = None
    wall_time: float | None = None

    def __post_init__(self) -> None:
        if self.type not in EVENT_TYPES:
            raise TraceFormatError(f"unknown event type {self.type!r}")
        if not isinstance(self.pe, int) or isinstance(self.pe, bool) or self.pe < 0:
            raise TraceFormatError(f"pe must be a non-negative integer, got {self.pe!r}")
        if self.type in ("enter", "leave"):
            if not isinstance(self.name, str) or not self.name:
                raise TraceFormatError(f"{self.type} event requires a non-empty name")
            if self.partner is not None or self.tag is not None:
                raise TraceFormatError(f"{self.type} event does not take partner/tag")
        else:
            if not isinstance(self.partner, int) or isinstance(self.partner, bool):
                raise TraceFormatError(f"{self.type} event requires an integer partner")
            if not isinstance(self.tag, int) or isinstance(self.tag, bool):
                raise TraceFormatError(f"{self.type} event requires an integer tag")
            if self.name is not None:
                raise TraceFormatError(f"{self.type} event does not take a name")
        if self.wall_time is not None and (
            isinstance(self.wall_time, bool)
            or not isinstance(self.wall_time, (int, float))
        ):
            raise TraceFormatError("t must be a number when present")

    @property
    def is_comm(self) -> bool:
        return self.type in ("send", "recv")


@dataclass(frozen=True)
class Trace:
    """An immutable trace: one ordered event sequence per PE."""

    num_pes: int
    events_per_pe: tuple[tuple[Event, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.num_pes, int) or self.num_pes < 1:
            raise TraceFormatError(f"num_pes must be a positive integer, got {self.num_pes!r}")
        if len(self.events_per_pe) != self.num_pes:
            raise TraceFormatError(
                f"expected {self.num_pes} event sequences, got {len(self.events_per_pe)}"
            )
        for pe, seq in enumerate(self.events_per_pe):
            stack: list[str] = []
            prev_t: float | None = None
            for ev in seq:
                if ev.pe != pe:
                    raise TraceFormatError(
                        f"event with pe={ev.pe} filed under PE {pe}"
                    )
                if ev.is_comm:
                    if not (0 <= ev.partner < self.num_pes):
                        raise TraceFormatError(
                            f"partner out of range on PE {pe}: {ev.partner}"
                        )
                    if ev.partner == pe:
                        raise TraceFormatError(f"PE {pe} cannot communicate with itself")
                elif ev.type == "enter":
                    stack.append(ev.name)
                else:  # leave
                    if not stack or stack[-1] != ev.name:
                        raise TraceFormatError(
                            f"nesting violation on PE {pe}: leave {ev.name!r} does not "
                            f"match the open enter"
                        )
                    stack.pop()
                if ev.wall_time is not None:
                    if prev_t is not None and ev.wall_time < prev_t:
                        raise TraceFormatError(
                            f"wall time decreases on PE {pe} ({ev.wall_time} < {prev_t})"
                        )
                    prev_t = ev.wall_time
            if stack:
                raise TraceFormatError(
                    f"nesting violation on PE {pe}: unclosed enter {stack[-1]!r}"
                )

    @property
    def num_events(self) -> int:
        return sum(len(seq) for seq in self.events_per_pe)

    @classmethod
    def from_global_events(cls, num_pes: int, events: Sequence[Event]) -> "Trace":
        """Build a trace from one globally ordered event stream."""
        if not isinstance(num_pes, int) or num_pes < 1:
            raise TraceFormatError(f"num_pes must be a positive integer, got {num_pes!r}")
        seqs: list[list[Event]] = [[] for _ in range(num_pes)]
        for i, ev in enumerate(events):
            if not (0 <= ev.pe < num_pes):
                raise TraceFormatError(f"events[{i}]: pe out of range: {ev.pe}")
            seqs[ev.pe].append(ev)
        return cls(num_pes, tuple(tuple(s) for s in seqs))


@dataclass(frozen=True)
class CommEdge:
    """A matched send/recv pair, referenced by position in each PE's sequence."""

    src_pe: int
    dst_pe: int
    send_index: int
    recv_index: int
    tag: int


def _reject_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise TraceFormatError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _event_from_record(index: int, rec: object) -> Event:
    if not isinstance(rec, dict):
        raise TraceFormatError(f"events[{index}]: expected an object, got {type(rec).__name__}")
    etype = rec.get("type")
    if etype not in EVENT_TYPES:
        raise TraceFormatError(f"events[{index}]: unknown event type {etype!r}")
    extra = set(rec) - _ALLOWED_KEYS[etype]
    if extra:
        raise TraceFormatError(
            f"events[{index}]: unknown field(s) {sorted(extra)} for type {etype!r}"
        )
    missing = _REQUIRED_KEYS[etype] - set(rec)
    if missing:
        raise TraceFormatError(
            f"events[{index}]: missing field(s) {sorted(missing)} for type {etype!r}"
        )
    try:
        return Event(
            pe=rec["pe"],
            type=etype,
            name=rec.get("name"),
            partner=rec.get("partner"),
            tag=rec.get("tag"),
            wall_time=rec.get("t"),
        )
    except TraceFormatError as exc:
        raise TraceFormatError(f"events[{index}]: {exc}") from None


def parse_trace(raw: bytes | str) -> Trace:
    """Parse and validate a ``.trace.json`` document.

    Raises TraceFormatError with the offending record index (or the JSON
    parser's line/column for syntactically malformed input).
    """
    text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise TraceFormatError("top level must be a JSON object")
    extra = set(doc) - {"num_pes", "events"}
    if extra:
        raise TraceFormatError(f"unknown top-level field(s) {sorted(extra)}")
    if "num_pes" not in doc or "events" not in doc:
        raise TraceFormatError("top level requires 'num_pes' and 'events'")
    num_pes = doc["num_pes"]
    if not isinstance(num_pes, int) or isinstance(num_pes, bool) or num_pes < 1:
        raise TraceFormatError(f"num_pes must be a positive integer, got {num_pes!r}")
    records = doc["events"]
    if not isinstance(records, list):
        raise TraceFormatError("'events' must be an array")
    events = []
    for i, rec in enumerate(records):
        ev = _event_from_record(i, rec)
        if ev.pe >= num_pes:
            raise TraceFormatError(f"events[{i}]: pe out of range: {ev.pe}")
        if ev.is_comm and not (0 <= ev.partner < num_pes):
            raise TraceFormatError(f"events[{i}]: partner out of range: {ev.partner}")
        events.append(ev)
    return Trace.from_global_events(num_pes, events)


def _event_record(ev: Event) -> dict:
    rec: dict = {"pe": ev.pe, "type": ev.type}
    if ev.type in ("enter", "leave"):
        rec["name"] = ev.name
    else:
        rec["partner"] = ev.partner
        rec["tag"] = ev.tag
    if ev.wall_time is not None:
        rec["t"] = ev.wall_time
    return rec


def serialize_trace(trace: Trace) -> str:
    """Serialize a trace to the file format, one event per line, PE by PE.

    Deterministic: identical traces produce identical bytes.
    """
    lines = []
    for seq in trace.events_per_pe:
        for ev in seq:
            lines.append("  " + json.dumps(_event_record(ev), separators=(",", ":")))
    body = ",\n".join(lines)
    if body:
        body = "\n" + body + "\n "
    return '{"num_pes": %d,\n "events": [%s]}\n' % (trace.num_pes, body)


def match_communication(trace: Trace) -> list[CommEdge]:
    """Pair sends with receives, FIFO per (src, dst, tag) channel.

    The k-th send on a channel matches the k-th recv on that channel,
    mirroring message-ordering semantics. Any channel left unbalanced is a
    hard error. The result is sorted by (src_pe, send_index).
    """
    sends: dict[tuple[int, int, int], list[int]] = {}
    recvs: dict[tuple[int, int, int], list[int]] = {}
    for pe, seq in enumerate(trace.events_per_pe):
        for idx, ev in enumerate(seq):
            if ev.type == "send":
                sends.setdefault((pe, ev.partner, ev.tag), []).append(idx)
            elif ev.type == "recv":
                recvs.setdefault((ev.partner, pe, ev.tag), []).append(idx)
    unbalanced = []
    edges = []
    for chan in sorted(set(sends) | set(recvs)):
        s_list = sends.get(chan, [])
        r_list = recvs.get(chan, [])
        if len(s_list) != len(r_list):
            unbalanced.append((chan, len(s_list), len(r_list)))
            continue
        src, dst, tag = chan
        for si, ri in zip(s_list, r_list):
            edges.append(CommEdge(src, dst, si, ri, tag))
    if unbalanced:
        raise MatchError(unbalanced)
    edges.sort(key=lambda e: (e.src_pe, e.send_index))
    return edges


def serialize_edges(edges: Sequence[CommEdge]) -> str:
    """One JSON object per line; used for determinism checks and debugging."""
    return "".join(
        json.dumps(
            {
                "src_pe": e.src_pe,
                "dst_pe": e.dst_pe,
                "send_index": e.send_index,
                "recv_index": e.recv_index,
                "tag": e.tag,
            },
            separators=(",", ":"),
        )
        + "\n"
        for e in edges
    )
