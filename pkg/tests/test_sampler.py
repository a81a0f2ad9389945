import math
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genconchoid import (
    AllSamplesInvalid,
    CircularArcCurve,
    DegenerateRay,
    GpcConfig,
    LineSegmentCurve,
    NonFiniteOffset,
    Point2,
    branch_polylines,
    parse,
    sample_gpc,
)
from genconchoid.sampler import GpcResult, sample_grid
from reference_tables import TABLE1

ORIGIN = Point2(0, 0)
LINE_EXAMPLE = GpcConfig(ORIGIN, LineSegmentCurve(Point2(-3, 0), Point2(0, 1.5)), parse("l + sin(l)"), 18)
ARC_EXAMPLE = GpcConfig(ORIGIN, CircularArcCurve(Point2(5, 10), 6, 0, 9 * math.pi / 8), parse("l + 1/l"), 180)
NICOMEDES = GpcConfig(ORIGIN, LineSegmentCurve(Point2(-3, 1), Point2(3, 1)), parse("2"), 180)


def test_grid_is_endpoint_inclusive():
    for m in (2, 3, 18, 180):
        ks = sample_grid(m)
        assert ks[0] == 0.0 and ks[-1] == 1.0 and len(ks) == m
        assert all(b - a == pytest.approx(1 / (m - 1), abs=1e-15) for a, b in zip(ks, ks[1:]))


def test_line_example_matches_table_k_and_d():
    result = sample_gpc(LINE_EXAMPLE)
    assert len(result.samples) == 18 and result.dropped == 0
    for s, row in zip(result.samples, TABLE1):
        assert s.k == pytest.approx(row[0], abs=1.5e-3)
        assert s.d == pytest.approx(row[6], abs=1.5e-3)


def test_constant_offset_on_line():
    cfg = GpcConfig(ORIGIN, LineSegmentCurve(Point2(-3, 1), Point2(3, 1)), parse("2"), 5)
    for s in sample_gpc(cfg).samples:
        assert s.d == 2.0
        assert (s.q_outer - s.p).norm() == pytest.approx(2.0, abs=1e-12)


def test_arc_example():
    result = sample_gpc(ARC_EXAMPLE)
    first, last = result.samples[0], result.samples[-1]
    assert (last.p.x, last.p.y) == pytest.approx((-0.543, 7.704), abs=1e-3)
    assert first.l == 0.0 and first.d == math.inf
    assert not first.valid and first.reason == "non-finite offset"
    assert result.dropped == 1


def test_config_accepts_text_offset():
    cfg = GpcConfig(ORIGIN, LINE_EXAMPLE.curve, "l + sin(l)", 18)
    assert cfg.offset == LINE_EXAMPLE.offset


@pytest.mark.parametrize("m", [0, 1, 2.5])
def test_config_rejects_bad_m(m):
    with pytest.raises(ValueError):
        GpcConfig(ORIGIN, LINE_EXAMPLE.curve, "l", m)


def test_focus_on_curve_marks_sample_invalid():
    cfg = GpcConfig(Point2(0, 1), LineSegmentCurve(Point2(-1, 1), Point2(1, 1)), parse("1"), 5)
    result = sample_gpc(cfg)
    mid = result.samples[2]
    assert not mid.valid and mid.reason == "degenerate ray" and mid.u is None
    assert result.dropped == 1


def test_strict_mode_raises():
    strict = GpcConfig(ORIGIN, ARC_EXAMPLE.curve, ARC_EXAMPLE.offset, 10, drop_nonfinite=False)
    with pytest.raises(NonFiniteOffset):
        sample_gpc(strict)
    strict_ray = GpcConfig(Point2(0, 1), LineSegmentCurve(Point2(-1, 1), Point2(1, 1)), parse("1"), 5, drop_nonfinite=False)
    with pytest.raises(DegenerateRay):
        sample_gpc(strict_ray)


def test_all_invalid():
    cfg = GpcConfig(ORIGIN, LINE_EXAMPLE.curve, parse("ln(l - 100)"), 8)
    with pytest.raises(AllSamplesInvalid):
        sample_gpc(cfg)


def test_polylines_without_gaps():
    inner, outer, base = branch_polylines(sample_gpc(LINE_EXAMPLE))
    assert [len(r) for r in inner] == [18]
    assert [len(r) for r in outer] == [18]
    assert [len(r) for r in base] == [18]


def test_polylines_split_at_invalid_sample():
    cfg = GpcConfig(Point2(0, 1), LineSegmentCurve(Point2(-1, 1), Point2(1, 1)), parse("1"), 5)
    inner, outer, base = branch_polylines(sample_gpc(cfg))
    assert [len(r) for r in inner] == [2, 2]
    assert [len(r) for r in outer] == [2, 2]
    assert [len(r) for r in base] == [2, 2]


def test_polylines_leading_gap():
    inner, _, _ = branch_polylines(sample_gpc(ARC_EXAMPLE))
    assert [len(r) for r in inner] == [179]


def test_single_valid_sample():
    full = sample_gpc(LINE_EXAMPLE)
    lone = GpcResult(full.config, tuple(s if i == 3 else _invalid(s) for i, s in enumerate(full.samples)), 17)
    inner, outer, base = branch_polylines(lone)
    assert inner == [[full.samples[3].q_inner]] and len(outer[0]) == len(base[0]) == 1


def test_polylines_need_a_valid_sample():
    full = sample_gpc(LINE_EXAMPLE)
    none = GpcResult(full.config, tuple(_invalid(s) for s in full.samples), 18)
    with pytest.raises(AllSamplesInvalid):
        branch_polylines(none)


def _invalid(s):
    from dataclasses import replace

    return replace(s, valid=False, q_inner=None, q_outer=None, reason="non-finite offset")


def _bits(result):
    out = []
    for s in result.samples:
        for v in (s.k, s.l, s.d, s.p.x, s.p.y):
            out.append(struct.pack("<d", v))
        for pt in (s.q_inner, s.q_outer):
            out.append(b"-" if pt is None else struct.pack("<dd", pt.x, pt.y))
    return b"".join(out)


def test_deterministic():
    assert _bits(sample_gpc(ARC_EXAMPLE)) == _bits(sample_gpc(ARC_EXAMPLE))


def test_nicomedes_polar_form():
    for s in sample_gpc(NICOMEDES).valid_samples:
        theta = math.atan2(s.p.y, s.p.x)
        assert abs(s.q_outer.norm() - (1 / math.sin(theta) + 2)) <= 1e-9


coord = st.floats(-20, 20, allow_nan=False)
offsets = st.sampled_from(["2", "l", "sin(l)", "l + sin(l)", "ln(l)", "l + 1/l", "2*sin(l)", "136/100", "sqrt(l)*cos(l)"])


@st.composite
def configs(draw):
    focus = Point2(draw(coord), draw(coord))
    if draw(st.booleans()):
        n, s = Point2(draw(coord), draw(coord)), Point2(draw(coord), draw(coord))
        if (s - n).norm() < 0.01:
            s = Point2(n.x + 1, n.y)
        curve = LineSegmentCurve(n, s)
    else:
        a = draw(st.floats(-7, 7))
        # Keep curves long enough that 1/l-type offsets stay bounded.
        b = draw(st.floats(-7, 7).filter(lambda b: abs(b - a) >= 0.01))
        curve = CircularArcCurve(Point2(draw(coord), draw(coord)), draw(st.floats(0.1, 10)), a, b)
    return GpcConfig(focus, curve, parse(draw(offsets)), draw(st.integers(2, 40)))


@settings(max_examples=200, deadline=None)
@given(configs())
def test_geometric_invariants(cfg):
    try:
        result = sample_gpc(cfg)
    except AllSamplesInvalid:
        return
    assert len(result.samples) == cfg.m
    assert [s.k for s in result.samples] == sorted({s.k for s in result.samples})
    o = cfg.focus
    for s in result.valid_samples:
        r = (s.p - o).norm()
        scale = 1e-9 * (1 + r) ** 2
        assert abs((s.q_inner - o).cross(s.p - o)) <= scale
        assert abs((s.q_outer - o).cross(s.p - o)) <= scale
        assert abs((s.q_inner - s.p).norm() - abs(s.d)) <= 1e-9 * (1 + abs(s.d))
        assert abs((s.q_outer - s.p).norm() - abs(s.d)) <= 1e-9 * (1 + abs(s.d))
        if s.d >= 0:
            assert abs((s.q_outer - o).norm() - (r + s.d)) <= 1e-9 * (1 + r + s.d)
            assert abs((s.q_inner - o).norm() - abs(r - s.d)) <= 1e-9 * (1 + r + s.d)
