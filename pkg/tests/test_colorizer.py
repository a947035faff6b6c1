import colorsys
import json

import numpy as np
import pytest

from iconforge import Raster
from iconforge.colorizer import (CANONICAL_RGB, DEFAULT_MASKS, ColorMask, Hsv,
                                 load_masks, primary_color, rgb_to_hsv)


def swatch(rgb, alpha=255, size=8):
    return Raster.solid(size, size, (*rgb, alpha))


# ---------------------------------------------------------------------------
# conversion

def test_rgb_to_hsv_anchors():
    assert rgb_to_hsv(0, 0, 0).v == 0
    white = rgb_to_hsv(255, 255, 255)
    assert (white.s, white.v) == (0, 255)
    assert rgb_to_hsv(0, 0, 255) == Hsv(120, 255, 255)


def test_rgb_to_hsv_range_check():
    with pytest.raises(ValueError):
        rgb_to_hsv(256, 0, 0)
    with pytest.raises(ValueError):
        rgb_to_hsv(0, -1, 0)


def test_rgb_to_hsv_against_colorsys():
    for r in range(0, 256, 17):
        for g in range(0, 256, 17):
            for b in range(0, 256, 17):
                got = rgb_to_hsv(r, g, b)
                fh, fs, fv = colorsys.rgb_to_hsv(r / 255.0, g / 255.0, b / 255.0)
                eh = round(fh * 360.0 / 2.0) % 180
                dh = abs(got.h - eh)
                assert min(dh, 180 - dh) <= 1, (r, g, b)
                assert abs(got.s - round(fs * 255.0)) <= 1, (r, g, b)
                assert got.v == round(fv * 255.0), (r, g, b)


# ---------------------------------------------------------------------------
# masks

def test_blue_mask_bounds():
    blue = next(m for m in DEFAULT_MASKS if m.name == "blue")
    assert blue.h_ranges == ((100, 124),)
    assert blue.s_range == (43, 255)
    assert blue.v_range == (46, 255)
    hsv = rgb_to_hsv(0, 0, 255)
    assert 100 <= hsv.h <= 124 and 43 <= hsv.s <= 255 and 46 <= hsv.v <= 255


def test_all_eight_swatches_classify():
    for name, rgb in CANONICAL_RGB.items():
        report = primary_color(swatch(rgb))
        assert report.primary == name, (name, report.ratios)
        assert report.ratios[name] == 1.0
        assert report.opaque_count == 64


def test_transparent_raster_has_no_color():
    report = primary_color(swatch((10, 10, 10), alpha=0))
    assert report.primary is None
    assert report.opaque_count == 0
    assert set(report.ratios) == {m.name for m in DEFAULT_MASKS}


def test_red_white_tie_breaks_by_listing_order():
    px = np.empty((2, 4, 4), dtype=np.uint8)
    px[0, :] = (255, 0, 0, 255)
    px[1, :] = (255, 255, 255, 255)
    report = primary_color(Raster(px))
    assert report.ratios["red"] == 0.5 and report.ratios["white"] == 0.5
    assert report.primary == "red"


def test_translucent_pixels_leave_the_denominator():
    px = np.empty((1, 4, 4), dtype=np.uint8)
    px[0, :2] = (0, 0, 255, 255)
    px[0, 2:] = (0, 255, 0, 40)  # below the alpha cutoff
    report = primary_color(Raster(px))
    assert report.opaque_count == 2
    assert report.primary == "blue"
    assert report.ratios["green"] == 0.0


def test_primary_color_permutation_invariant():
    rng = np.random.default_rng(13)
    px = rng.integers(0, 256, (6, 6, 4)).astype(np.uint8)
    base = primary_color(Raster(px))
    shuffled = px[rng.permutation(6)][:, rng.permutation(6)]
    other = primary_color(Raster(shuffled))
    assert base.ratios == other.ratios and base.primary == other.primary


def test_unmatched_hues_count_toward_denominator_only():
    report = primary_color(swatch((255, 128, 0)))  # orange: hue ~15, no mask
    assert report.primary is not None
    assert max(report.ratios.values()) == 0.0


# ---------------------------------------------------------------------------
# overrides

def test_load_masks_round_trip():
    doc = [{"name": "warm", "h": [[0, 30], [150, 180]], "s": [40, 255], "v": [40, 255]}]
    masks = load_masks(json.dumps(doc))
    assert masks == (ColorMask("warm", ((0, 30), (150, 180)), (40, 255), (40, 255)),)
    report = primary_color(swatch((255, 0, 0)), masks=masks)
    assert report.primary == "warm"


def test_load_masks_defaults_sv_when_omitted():
    masks = load_masks('[{"name": "anyhue", "h": [[0, 180]]}]')
    assert masks[0].s_range == (0, 255) and masks[0].v_range == (0, 255)


@pytest.mark.parametrize("text", [
    "{}", "[]", '[{"h": [[0, 10]]}]', '[{"name": "x"}]',
    '[{"name": "x", "h": [[10, 0]]}]', '[{"name": "x", "h": [[0]]}]',
])
def test_load_masks_rejects_malformed(text):
    with pytest.raises(ValueError):
        load_masks(text)


def test_primary_color_requires_masks():
    with pytest.raises(ValueError):
        primary_color(swatch((0, 0, 0)), masks=())
