import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gneighbor.gfilter import DistanceMode, gneighbor_mask, pixel_distance
from gneighbor.hwsim import (
    AreaPowerLedger,
    Crossbar,
    GNeighborUnit,
    HalfSelectDisturbance,
    MemristorDevice,
    MtlCell,
    SramAccessError,
    SramCell,
    State,
    area_power_report,
    bits_to_str,
    compare_leq,
    device_step,
    mtl_eval,
    pipeline_pixel,
    str_to_bits,
    to_bits,
    xor_tlg,
    xor_word,
)
from gneighbor.hwsim import verify


# ------------------------------------------------------------------ device


def test_device_switching():
    off = MemristorDevice(State.OFF)
    assert device_step(off, 2.0).state is State.ON
    on = MemristorDevice(State.ON)
    assert device_step(on, 0.5).state is State.ON
    assert device_step(on, -2.0).state is State.OFF
    assert device_step(on, -1.0).state is State.ON  # below threshold in magnitude
    assert device_step(off, 1.088).state is State.ON


def test_device_validation():
    with pytest.raises(ValueError):
        MemristorDevice(r_on=2e6, r_off=1e6)


# ------------------------------------------------------------------ MTL cells


@pytest.mark.parametrize("inputs", list(itertools.product((0, 1), repeat=2)))
def test_mtl_table(inputs):
    want_nor, want_nand = verify.MTL_TRUTH_TABLE[inputs]
    assert mtl_eval(MtlCell.nor(2), inputs) == want_nor
    assert mtl_eval(MtlCell.nand(2), inputs) == want_nand


def test_mtl_threshold_placement():
    nor, nand = MtlCell.nor(2), MtlCell.nand(2)
    assert 0.0 < nor.inverter_threshold < 1.25 < nand.inverter_threshold < 2.5
    assert (nor.kind, nand.kind) == ("NOR", "NAND")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nary_cells(n):
    for bits in itertools.product((0, 1), repeat=n):
        assert mtl_eval(MtlCell.nor(n), bits) == int(not any(bits))
        assert mtl_eval(MtlCell.nand(n), bits) == int(not all(bits))


def test_non_inverted_cell_gives_or_and():
    or_cell = MtlCell(2, MtlCell.nor(2).inverter_threshold, output_inverted=False)
    and_cell = MtlCell(2, MtlCell.nand(2).inverter_threshold, output_inverted=False)
    assert (or_cell.kind, and_cell.kind) == ("OR", "AND")
    for a, b in itertools.product((0, 1), repeat=2):
        assert mtl_eval(or_cell, (a, b)) == (a | b)
        assert mtl_eval(and_cell, (a, b)) == (a & b)


def test_mtl_arity_check():
    with pytest.raises(ValueError):
        mtl_eval(MtlCell.nor(2), (1,))


# ------------------------------------------------------------------ XOR / comparator


def test_xor_gate():
    assert [xor_tlg(a, b) for a, b in itertools.product((0, 1), repeat=2)] == [0, 1, 1, 0]


def test_xor_word_example():
    out = xor_word(str_to_bits("11110011"), str_to_bits("11000110"))
    assert bits_to_str(out) == "00110101"


def test_compare_examples():
    assert compare_leq(str_to_bits("0111"), str_to_bits("1101")) == 1
    assert compare_leq(str_to_bits("1101"), str_to_bits("0111")) == 0
    assert compare_leq(str_to_bits("1010"), str_to_bits("1010")) == 1
    with pytest.raises(ValueError):
        compare_leq([0, 1], [0, 1, 1])


@pytest.mark.parametrize("width", [1, 2, 3, 4])
def test_compare_small_widths_scalar(width):
    for d in range(1 << width):
        for g in range(1 << width):
            assert compare_leq(to_bits(d, width), to_bits(g, width)) == int(d <= g)


def test_vectorized_gates_match_scalar():
    a = np.array([0, 0, 1, 1], dtype=np.uint8)
    b = np.array([0, 1, 0, 1], dtype=np.uint8)
    assert xor_tlg(a, b).tolist() == [xor_tlg(int(x), int(y)) for x, y in zip(a, b)]


def test_bit_helpers():
    assert to_bits(13, 8) == [0, 0, 0, 0, 1, 1, 0, 1]
    assert bits_to_str(to_bits(7, 4)) == "0111"
    with pytest.raises(ValueError):
        to_bits(256, 8)
    with pytest.raises(ValueError):
        str_to_bits("01a")


# ------------------------------------------------------------------ crossbar


def test_crossbar_rejects_disturbing_write_voltage():
    with pytest.raises(ValueError, match="half-select"):
        Crossbar(2, 2, v_write=2.5)  # V_H as write voltage: 1.25 V > 1.088 V
    with pytest.raises(ValueError):
        Crossbar(2, 2, v_write=1.0)
    with pytest.raises(ValueError):
        Crossbar(2, 2, v_read=1.2)


def test_half_select_disturbance_detected_when_unvalidated():
    xbar = Crossbar(2, 2, v_write=2.5, validate=False)
    xbar.write([[0, 0], [0, 0]])
    with pytest.raises(HalfSelectDisturbance):
        xbar.write([[1, 1], [0, 0]])


def test_all_ones_written_in_first_cycle():
    xbar = Crossbar(3, 4)
    xbar.write_row(0, [1, 1, 1, 1])
    assert xbar.states[0].all()
    assert xbar.cycles == 2


def test_checkerboard():
    xbar = Crossbar(2, 2).write([[1, 0], [0, 1]])
    assert xbar.states.tolist() == [[True, False], [False, True]]
    assert xbar.read_all().tolist() == [[1, 0], [0, 1]]


def test_read_voltage_divider():
    xbar = Crossbar(1, 2).write([[1, 0]])
    assert xbar.r_load == pytest.approx(0.377e6, abs=0.5e3)
    assert xbar.node_voltage(True) == pytest.approx(0.751, abs=1e-3)
    assert xbar.node_voltage(False) == pytest.approx(0.249, abs=1e-3)
    assert xbar.read(0, 0) == 1 and xbar.read(0, 1) == 0
    before = xbar.states.copy()
    assert [xbar.read(0, 0), xbar.read(0, 0)] == [1, 1]
    assert np.array_equal(before, xbar.states)
    with pytest.raises(IndexError):
        xbar.read(1, 0)


def test_write_shape_mismatch():
    with pytest.raises(ValueError):
        Crossbar(2, 2).write([[1, 0, 1]])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
def test_overwrite_leaves_only_last_matrix(a, b):
    ma = np.array(to_bits(a, 64)).reshape(8, 8)
    mb = np.array(to_bits(b, 64)).reshape(8, 8)
    xbar = Crossbar(8, 8).write(ma).write(mb)
    assert np.array_equal(xbar.read_all(), mb)


# ------------------------------------------------------------------ SRAM


def test_sram():
    cell = SramCell(word_line=True)
    cell.write(1)
    assert cell.read() == 1
    cell.write(0)
    assert [cell.read(), cell.read()] == [0, 0]
    cell.word_line = False
    with pytest.raises(SramAccessError):
        cell.write(1)
    with pytest.raises(SramAccessError):
        cell.read()
    cell.word_line = True
    assert cell.read() == 0


# ------------------------------------------------------------------ pipeline


def test_pipeline_examples():
    assert pipeline_pixel(77, 77, 0) == 1
    assert pipeline_pixel(0b11110011, 0b11000110, 13) == 0
    assert pipeline_pixel(0b11110011, 0b11110000, 13) == 1


def test_pipeline_agrees_with_software_xor_mask():
    rng = np.random.default_rng(11)
    win = rng.integers(0, 256, (5, 5))
    mask = gneighbor_mask(win, 13, DistanceMode.XOR).grid
    unit = GNeighborUnit(13)
    hw = np.array([[unit.identify(int(win[2, 2]), int(v)) for v in row] for row in win], dtype=bool)
    assert np.array_equal(hw, mask)
    unit.identify(int(win[2, 2]), int(win[0, 0]))
    assert int(bits_to_str(unit.last_distance), 2) == pixel_distance(int(win[2, 2]), int(win[0, 0]), DistanceMode.XOR)


def test_pipeline_keeps_distance_in_crossbar():
    unit = GNeighborUnit(13)
    unit.identify(0b11110011, 0b11000110)
    assert bits_to_str(unit.last_distance) == "00110101"
    assert bits_to_str(unit.threshold_array.read_row(0)) == "00001101"


def test_pipeline_4bit_exhaustive():
    res = verify.check_pipeline(4, thresholds=range(16))
    assert res.ok, res.counterexamples


# ------------------------------------------------------------------ verify suites


def test_verify_suites_pass():
    for res in verify.run_all(4, crossbar_trials=50):
        assert res.ok, res.to_dict()


def test_corrupted_comparator_is_caught():
    from gneighbor.hwsim.logic import inv, nor, or_, xor_tlg as x

    def bad_stage(eq, lt, d, g):
        n_eq = inv(eq)
        takes_lt = nor(n_eq, inv(d), g)  # d and g swapped
        return nor(n_eq, x(d, g)), or_(lt, takes_lt)

    def bad(d_bits, g_bits):
        return compare_leq(d_bits, g_bits, stage=bad_stage)

    res = verify.check_comparator(4, bad)
    assert not res.ok and res.counterexamples
    ce = res.counterexamples[0]
    assert ce["got"] != int(ce["d"] <= ce["g"])


# ------------------------------------------------------------------ ledger


def test_ledger_totals():
    from decimal import Decimal

    led = AreaPowerLedger.published()
    assert led.total_area == Decimal("280.16")
    assert led.total_power == Decimal("31.4")
    rep = led.report()
    assert rep["total_area_um2"] == 280.2 and rep["total_power_mw"] == 31.4


def test_ledger_empty_and_scaled():
    assert AreaPowerLedger().report()["total_area_um2"] == 0.0
    assert AreaPowerLedger().report()["total_power_mw"] == 0.0
    led = AreaPowerLedger.published()
    two = led.scaled(2)
    assert two.total_area == 2 * led.total_area and two.total_power == 2 * led.total_power


def test_ledger_formats():
    led = AreaPowerLedger.published()
    csv_text = area_power_report(led, "csv")
    assert csv_text.splitlines()[-1] == "Total,280.2,31.4"
    assert "280.2" in area_power_report(led, "text")
    import json

    assert json.loads(area_power_report(led, "json"))["total_power_mw"] == 31.4
