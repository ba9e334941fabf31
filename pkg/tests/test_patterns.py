import itertools
import json

import pytest

from traceglyph.patterns import (
    Continuous,
    Grouped,
    PatternDescriptor,
    PatternError,
    StencilSpec,
    descriptor_from_json,
    descriptor_to_json,
    exchange_descriptor,
    gen_exchange,
    gen_offset,
    gen_ring,
    gen_stencil,
    gen_trace,
    generate_round,
    offset_descriptor,
    ring_descriptor,
)
from traceglyph.timeline import align_by_code, assign_levels, extract_rounds
from traceglyph.trace import match_communication, parse_trace, serialize_trace


class TestDescriptors:
    def test_grouping_must_tile(self):
        with pytest.raises(PatternError, match="does not divide"):
            offset_descriptor(10, 2, 3)

    def test_stride_below_group_size(self):
        with pytest.raises(PatternError, match="must be <"):
            ring_descriptor(16, 4, 4)

    def test_stride_below_pe_count(self):
        with pytest.raises(PatternError, match="must be <"):
            offset_descriptor(8, 8)

    def test_exchange_forced_grouping(self):
        d = exchange_descriptor(16, 4)
        assert d.grouping == Grouped(8, 2)
        with pytest.raises(PatternError, match="twice the stride"):
            PatternDescriptor("exchange", 3, Grouped(8, 2), 16)
        with pytest.raises(PatternError, match="always grouped"):
            PatternDescriptor("exchange", 4, Continuous(), 16)

    def test_json_roundtrip(self):
        for d in (
            offset_descriptor(1280, 4),
            ring_descriptor(1280, 3, 8),
            exchange_descriptor(1280, 8),
        ):
            assert descriptor_from_json(descriptor_to_json(d)) == d

    def test_json_shape(self):
        doc = descriptor_to_json(ring_descriptor(1280, 3, 8))
        assert doc == {
            "family": "ring",
            "stride": 3,
            "grouping": {"group_size": 8},
            "num_pes": 1280,
        }
        assert descriptor_to_json(offset_descriptor(8, 1))["grouping"] == "continuous"

    def test_json_bad_grouping(self):
        with pytest.raises(PatternError, match="grouping"):
            descriptor_from_json({"family": "ring", "stride": 2, "grouping": 5, "num_pes": 8})


class TestOffset:
    def test_continuous_p8(self):
        round_ = gen_offset(offset_descriptor(8, 1))
        assert round_.edges == tuple((i, i + 1) for i in range(7))

    def test_grouped_p8(self):
        round_ = gen_offset(offset_descriptor(8, 1, 4))
        assert round_.edges == ((0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7))

    def test_grouped_2560_stride10(self):
        # 160 groups of 16, each contributing 16 - 10 = 6 edges.
        round_ = gen_offset(offset_descriptor(2560, 10, 16))
        assert len(round_.edges) == 960
        for src, dst in round_.edges:
            assert dst - src == 10 and src // 16 == dst // 16

    def test_sender_count_property(self):
        for num_pes, stride, group in [(64, 3, None), (64, 3, 16), (1280, 7, 10)]:
            d = offset_descriptor(num_pes, stride, group)
            count = d.blocks()[1]
            assert len(gen_offset(d).edges) == num_pes - stride * count


class TestRing:
    def test_continuous_p8_wraps(self):
        round_ = gen_ring(ring_descriptor(8, 1))
        assert (7, 0) in round_.edges
        assert set(round_.edges) - {(7, 0)} == {(i, i + 1) for i in range(7)}

    def test_rejects_group_twice_stride(self):
        with pytest.raises(PatternError, match="exchange"):
            gen_ring(ring_descriptor(8, 2, 4))

    def test_rejects_continuous_half_pe_stride(self):
        with pytest.raises(PatternError, match="exchange"):
            gen_ring(ring_descriptor(8, 4))

    def test_grouped_1280_wrap_count(self):
        round_ = gen_ring(ring_descriptor(1280, 3, 8))
        senders = [src for src, _ in round_.edges]
        assert sorted(senders) == list(range(1280))
        receivers = sorted(dst for _, dst in round_.edges)
        assert receivers == list(range(1280))
        wraps = [(s, d) for s, d in round_.edges if d < s]
        assert len(wraps) == 3 * 160

    def test_permutation_property(self):
        for d in (ring_descriptor(16, 5), ring_descriptor(64, 2, 8)):
            round_ = gen_ring(d)
            assert sorted(s for s, _ in round_.edges) == list(range(d.num_pes))
            assert sorted(r for _, r in round_.edges) == list(range(d.num_pes))


class TestExchange:
    def test_p8_s1(self):
        round_ = gen_exchange(exchange_descriptor(8, 1))
        assert round_.edges == tuple(
            sorted([(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4), (6, 7), (7, 6)])
        )

    def test_p4_s2(self):
        round_ = gen_exchange(exchange_descriptor(4, 2))
        assert set(round_.edges) == {(0, 2), (2, 0), (1, 3), (3, 1)}

    def test_involution_1280_s8(self):
        round_ = gen_exchange(exchange_descriptor(1280, 8))
        assert len(round_.edges) == 1280
        mapping = dict(round_.edges)
        for src, dst in round_.edges:
            assert mapping[dst] == src and dst != src


class TestStencil:
    def test_1d_nearest_neighbor(self):
        round_ = gen_stencil(StencilSpec((3,), 1))
        assert set(round_.edges) == {(0, 1), (1, 0), (1, 2), (2, 1)}

    def test_2x2_no_diagonals(self):
        round_ = gen_stencil(StencilSpec((2, 2), 1, diagonals=False))
        assert len(round_.edges) == 8

    def test_3d_interior_has_26_neighbors(self):
        round_ = gen_stencil(StencilSpec((4, 4, 4), 1, diagonals=True))
        out_degree = {}
        for src, _ in round_.edges:
            out_degree[src] = out_degree.get(src, 0) + 1
        # Brute-force count per cell over the coordinate grid.
        for cell in itertools.product(range(4), repeat=3):
            expect = 0
            for nb in itertools.product(*(range(c - 1, c + 2) for c in cell)):
                if nb != cell and all(0 <= v < 4 for v in nb):
                    expect += 1
            linear = cell[0] * 16 + cell[1] * 4 + cell[2]
            assert out_degree[linear] == expect
        interior = 1 * 16 + 1 * 4 + 1
        assert out_degree[interior] == 26

    def test_invalid_spec(self):
        with pytest.raises(PatternError):
            StencilSpec((0, 4), 1)
        with pytest.raises(PatternError):
            StencilSpec((4,), 0)


class TestGenTrace:
    def test_single_edge(self):
        trace = gen_trace(offset_descriptor(2, 1), 1)
        rounds = extract_rounds(assign_levels(trace, match_communication(trace)))
        assert len(rounds) == 1 and rounds[0].edges == ((0, 1),)

    def test_ring_pipeline_roundtrip(self):
        descriptor = ring_descriptor(8, 1)
        trace = gen_trace(descriptor, 2)
        reparsed = parse_trace(serialize_trace(trace))
        tl = assign_levels(reparsed, match_communication(reparsed))
        rounds = extract_rounds(tl)
        assert len(rounds) == 2
        assert all(r.edges == generate_round(descriptor).edges for r in rounds)

    def test_exchange_1280_edge_total(self):
        trace = gen_trace(exchange_descriptor(1280, 2), 2)
        assert len(match_communication(trace)) == 2560

    def test_stencil_trace_matches(self):
        trace = gen_trace(StencilSpec((4, 4), 1), 1)
        edges = match_communication(trace)
        assert {(e.src_pe, e.dst_pe) for e in edges} == set(
            gen_stencil(StencilSpec((4, 4), 1)).edges
        )

    def test_rejects_zero_timesteps(self):
        with pytest.raises(PatternError, match="timesteps"):
            gen_trace(offset_descriptor(2, 1), 0)

    def test_pipeline_oracle_mixed_families(self):
        for descriptor in (
            offset_descriptor(64, 5, 16),
            ring_descriptor(64, 3, 8),
            exchange_descriptor(64, 4),
        ):
            trace = gen_trace(descriptor, 2)
            tl = align_by_code(assign_levels(trace, match_communication(trace)))
            rounds = extract_rounds(tl)
            assert len(rounds) == 2
            assert all(r.edges == generate_round(descriptor).edges for r in rounds)
