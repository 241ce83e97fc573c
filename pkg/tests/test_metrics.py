import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gneighbor.metrics import (
    Circle,
    Rectangle,
    SsimConstants,
    evaluate,
    mse,
    psnr,
    psnr_from_ssim,
    reports_to_csv,
    roi_mask,
    ssim,
)

norm_images = arrays(np.float64, (6, 5), elements=st.floats(0, 1))
gray_images = arrays(np.uint8, (6, 5))


def test_mse_values():
    a = np.zeros((2, 2))
    assert mse(a, a) == 0.0
    assert mse(np.zeros((3, 3)), np.ones((3, 3))) == 1.0
    b = a.copy()
    b[0, 0] = 0.5
    assert mse(a, b) == pytest.approx(0.0625, abs=1e-15)


def test_mse_dimension_mismatch():
    with pytest.raises(ValueError):
        mse(np.zeros((2, 2)), np.zeros((2, 3)))


def test_psnr_values():
    a = np.zeros((10, 10))
    b = np.full((10, 10), 0.1)  # mse 0.01
    assert psnr(a, b) == pytest.approx(20.0, abs=1e-9)
    assert psnr(np.zeros((2, 2)), np.ones((2, 2))) == 0.0
    assert psnr(a, a) == math.inf


def test_ssim_identity_and_constants():
    a = np.random.default_rng(0).random((8, 8))
    assert ssim(a, a) == (1.0, 1.0, 1.0, 1.0)
    c = np.full((4, 4), 0.5)
    assert ssim(c, c)[0] == 1.0


def test_ssim_anticorrelated_structure():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    s_val, lum, con, struct = ssim(a, 1 - a)
    # covariance -0.25, sigma product 0.25, c3 = 0.00045
    assert struct == pytest.approx(-0.9964064683569575, rel=1e-12)
    assert lum == pytest.approx(1.0) and con == pytest.approx(1.0)
    assert s_val < 0


def test_ssim_literal_form_differs():
    rng = np.random.default_rng(2)
    a, b = rng.random((8, 8)), rng.random((8, 8))
    std = ssim(a, b)
    lit = ssim(a, b, literal=True)
    assert std[3] == lit[3]
    assert std[1] != lit[1]


def test_ssim_needs_two_pixels():
    with pytest.raises(ValueError):
        ssim(np.zeros((1, 1)), np.zeros((1, 1)))


def test_psnr_from_ssim():
    assert psnr_from_ssim(0.9, 100.0) == pytest.approx(34.66292874643254, abs=1e-9)
    assert psnr_from_ssim(0.5, 100.0) == pytest.approx(10 * math.log10(65025 / 200), abs=1e-12)
    values = [psnr_from_ssim(s, 50.0) for s in (0.5, 0.9, 0.99, 0.999999)]
    assert values == sorted(values)
    for bad in ((0.0, 1.0), (1.0, 1.0), (0.5, 0.0), (0.5, -3.0)):
        with pytest.raises(ValueError):
            psnr_from_ssim(*bad)


def test_roi_masks():
    assert roi_mask(Circle(5, 5, 0), 10, 10).sum() == 1
    m = roi_mask(Circle(2, 2, 1), 5, 5)
    assert m.sum() == 5
    assert m[2, 2] and m[1, 2] and m[3, 2] and m[2, 1] and m[2, 3]
    assert roi_mask(Rectangle(0, 9, 0, 9), 10, 10).all()
    assert roi_mask(Rectangle(-5, 50, -5, 50), 10, 10).all()
    assert roi_mask(Rectangle(1, 2, 3, 3), 5, 5).sum() == 2
    with pytest.raises(ValueError):
        roi_mask(Rectangle(20, 30, 0, 1), 10, 10)
    with pytest.raises(ValueError):
        roi_mask(Circle(-10, -10, 2), 10, 10)


def test_circle_lattice_count_matches_enumeration():
    r = 3.0
    want = sum(1 for x in range(-3, 4) for y in range(-3, 4) if x * x + y * y <= r * r)
    assert roi_mask(Circle(10, 10, r), 21, 21).sum() == want == 29


def test_roi_restricts_statistics():
    a = np.zeros((4, 4))
    b = np.zeros((4, 4))
    b[3, 3] = 1.0
    assert mse(a, b, Rectangle(0, 1, 0, 1)) == 0.0
    assert mse(a, b, Rectangle(2, 3, 2, 3)) == 0.25


def test_evaluate_identity_report():
    img = np.random.default_rng(1).integers(0, 256, (16, 16), dtype=np.uint8)
    rep = evaluate(img, img)
    assert (rep.mse, rep.psnr, rep.ssim) == (0.0, math.inf, 1.0)
    d = json.loads(rep.to_json())
    assert d["psnr_db"] == "inf"
    assert list(d) == ["mse", "psnr_db", "ssim", "ssim_l", "ssim_c", "ssim_s", "roi"]
    assert d["roi"] is None


def test_full_rectangle_roi_equals_unrestricted():
    rng = np.random.default_rng(4)
    a = rng.integers(0, 256, (20, 30), dtype=np.uint8)
    b = rng.integers(0, 256, (20, 30), dtype=np.uint8)
    full = evaluate(a, b)
    roi = evaluate(a, b, Rectangle(0, 19, 0, 29))
    for f in ("mse", "psnr", "ssim", "luminance", "contrast", "structure"):
        assert getattr(full, f) == getattr(roi, f)


def test_csv_serialization():
    img = np.zeros((4, 4), dtype=np.uint8)
    other = img.copy()
    other[0, 0] = 255
    text = reports_to_csv([(("x",), evaluate(img, img)), (("y",), evaluate(img, other, Circle(0, 0, 2)))], ("name",))
    lines = text.strip().split("\n")
    assert lines[0] == "name,mse,psnr_db,ssim,ssim_l,ssim_c,ssim_s,roi"
    assert lines[1].split(",")[2] == "inf"
    assert "circle" in lines[2]


@settings(max_examples=50, deadline=None)
@given(norm_images, norm_images)
def test_symmetry(a, b):
    assert mse(a, b) == mse(b, a)
    assert ssim(a, b)[0] == pytest.approx(ssim(b, a)[0], abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(norm_images)
def test_ssim_self_is_one(a):
    assert ssim(a, a)[0] == 1.0


@settings(max_examples=50, deadline=None)
@given(norm_images, norm_images)
def test_ssim_bounded(a, b):
    assert -1.0 - 1e-12 <= ssim(a, b)[0] <= 1.0 + 1e-12


@settings(max_examples=50, deadline=None)
@given(gray_images, gray_images)
def test_scale_relation(a, b):
    raw = float(np.mean((a.astype(np.float64) - b.astype(np.float64)) ** 2))
    assert raw == pytest.approx(255.0**2 * evaluate(a, b).mse, rel=1e-12, abs=1e-12)


@given(st.floats(1e-9, 1.0), st.floats(1e-9, 1.0))
def test_psnr_decreasing_in_mse(e1, e2):
    from gneighbor.metrics import _psnr_from_mse

    if e1 < e2:
        assert _psnr_from_mse(e1) > _psnr_from_mse(e2)


def test_constants_for_range():
    k = SsimConstants.for_range(255)
    assert k.c1 == pytest.approx(6.5025) and k.c3 == pytest.approx(k.c2 / 2)
    with pytest.raises(ValueError):
        SsimConstants(0.0, 1.0, 1.0)
