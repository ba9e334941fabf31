"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Run with ``pytest tests/test_acceptance.py -v -s``."""

import random
import time

from traceglyph.detect import canonicalize, classify_round
from traceglyph.patterns import (
    Grouped,
    exchange_descriptor,
    gen_trace,
    generate_round,
    offset_descriptor,
    ring_descriptor,
)
from traceglyph.scene import Viewport, glyph_geometry, layout_full, layout_glyph, stride_to_angle
from traceglyph.session import analyze_trace
from traceglyph.svg import emit_svg
from traceglyph.timeline import align_by_code, assign_levels, extract_rounds
from traceglyph.trace import match_communication, parse_trace, serialize_trace

from support import acceptance_corpus, oracle_levels, random_trace


def report(name):
    def wrap(fn):
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")
        run.__name__ = fn.__name__
        return run
    return wrap


@report("detector-round-trip")
def test_detector_round_trip_corpus():
    corpus = acceptance_corpus()
    assert len(corpus) > 100
    started = time.perf_counter()
    for descriptor in corpus:
        round_ = generate_round(descriptor)
        result = classify_round(round_)
        assert result.exact, f"inexact classification for {descriptor}"
        assert canonicalize(result.result) == canonicalize(descriptor), descriptor
        assert generate_round(result.result).edges == round_.edges
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"corpus round-trip took {elapsed:.1f}s"


@report("logical-time-invariants")
def test_logical_time_invariants_and_oracle():
    rng = random.Random(20260809)
    oracle_checked = 0
    for index in range(200):
        cap = rng.choice((80, 150, 200, 350, 500))
        trace = random_trace(rng, max_pes=8, max_events=cap)
        assert trace.num_events <= 500
        edges = match_communication(trace)
        tl = assign_levels(trace, edges)
        for row in tl.levels:
            assert all(b > a for a, b in zip(row, row[1:]))
        for le in tl.edges:
            assert le.recv_level >= le.send_level + 1
        if trace.num_events <= 200:
            expect = oracle_levels(trace, edges)
            for (pe, i), level in expect.items():
                assert tl.levels[pe][i] == level
            oracle_checked += 1
    assert oracle_checked >= 50


@report("pipeline-oracle")
def test_pipeline_reproduces_generated_rounds():
    rng = random.Random(42)
    corpus = acceptance_corpus()
    for descriptor in rng.sample(corpus, 50):
        timesteps = rng.randint(1, 3) if descriptor.num_pes <= 64 else rng.randint(1, 2)
        trace = parse_trace(serialize_trace(gen_trace(descriptor, timesteps)))
        timeline = align_by_code(assign_levels(trace, match_communication(trace)))
        rounds = extract_rounds(timeline)
        assert len(rounds) == timesteps, descriptor
        expect = generate_round(descriptor).edges
        for round_ in rounds:
            assert round_.edges == expect, descriptor


REFERENCE_CONFIGS = [
    ("continuous-offset", offset_descriptor(1280, 4), offset_descriptor(8, 2)),
    ("grouped-offset", offset_descriptor(1280, 2, 16), offset_descriptor(8, 1, 4)),
    ("continuous-ring", ring_descriptor(1280, 3), ring_descriptor(8, 2)),
    ("grouped-ring", ring_descriptor(1280, 3, 8), ring_descriptor(8, 1, 4)),
    ("exchange", exchange_descriptor(1280, 8), exchange_descriptor(8, 2)),
]


@report("reference-configurations")
def test_reference_configurations():
    started = time.perf_counter()
    for name, dense, small in REFERENCE_CONFIGS:
        session = analyze_trace(gen_trace(dense, 2))
        vp = Viewport(960, 600, (0, session.max_level + 1))
        scene = layout_glyph(session.timeline, session.classifications, vp)
        grouped = isinstance(dense.grouping, Grouped)
        assert scene.glyphs, name
        for glyph in scene.glyphs:
            assert glyph.kind == dense.family, name
            assert (glyph.partitions >= 2) == grouped, name
            assert (glyph.protrusions > 0) == (dense.family == "ring"), name
            assert (glyph.cross_lines > 0) == (dense.family == "exchange"), name
        first = emit_svg(scene)
        again = emit_svg(layout_glyph(session.timeline, session.classifications, vp))
        assert first == again, f"non-deterministic glyph SVG for {name}"

        small_session = analyze_trace(gen_trace(small, 2))
        vp_small = Viewport(960, 600, (0, small_session.max_level + 1))
        full_scene = layout_full(small_session.timeline, vp_small)
        assert len(full_scene.lines) == 2 * len(generate_round(small).edges), name
        assert emit_svg(full_scene) == emit_svg(
            layout_full(small_session.timeline, vp_small)
        ), name
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"reference configurations took {elapsed:.1f}s"


@report("density-property")
def test_density_regime_at_2560():
    descriptor = ring_descriptor(2560, 3)
    session = analyze_trace(gen_trace(descriptor, 2))
    vp = Viewport(960, 600, (0, session.max_level + 1))

    full_scene = layout_full(session.timeline, vp)
    row_height = 600 / 2560
    assert row_height < 1.0
    assert all(r.h == row_height for r in full_scene.rects)
    assert len(full_scene.lines) == 2 * 2560  # analytic: one edge per PE per step

    glyph_scene = layout_glyph(session.timeline, session.classifications, vp)
    segments = sum(len(glyph_geometry(g).segments) for g in glyph_scene.glyphs)
    assert segments <= 300, f"{segments} glyph segments"


@report("angle-mapping")
def test_angle_mapping_exhaustive():
    angles = {s: stride_to_angle(s) for s in range(1, 21)}
    for s in range(1, 3):
        assert angles[s] == 15.0
    for s in range(10, 21):
        assert angles[s] == 60.0
    ordered = [angles[s] for s in range(1, 21)]
    assert all(a <= b for a, b in zip(ordered, ordered[1:]))
