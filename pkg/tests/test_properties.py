from __future__ import annotations

from hypothesis import given, strategies as st

from critiq.analyzers import contrast_ratio, relative_luminance
from critiq.model import Color

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
colors = st.builds(Color, unit, unit, unit, st.just(1.0))


@given(colors, colors)
def test_contrast_symmetric_and_bounded(a, b):
    r = contrast_ratio(a, b)
    assert r == contrast_ratio(b, a)
    assert 1.0 <= r <= 21.0 + 1e-12


@given(colors)
def test_self_contrast_is_one(c):
    assert contrast_ratio(c, c) == 1.0


@given(unit, unit, unit, st.floats(min_value=0.0, max_value=0.2, allow_nan=False))
def test_luminance_monotone_in_each_channel(r, g, b, bump):
    base = relative_luminance(Color(r, g, b))
    assert relative_luminance(Color(min(r + bump, 1.0), g, b)) >= base
    assert relative_luminance(Color(r, min(g + bump, 1.0), b)) >= base
    assert relative_luminance(Color(r, g, min(b + bump, 1.0))) >= base


@given(colors)
def test_hex_round_trip_within_half_step(c):
    back = Color.from_hex(c.to_hex())
    for attr in "rgb":
        assert abs(getattr(c, attr) - getattr(back, attr)) <= 0.5 / 255 + 1e-12
