"""Behavioral gate-level model of the memristive G-neighbor identification circuit."""

from .crossbar import Crossbar, HalfSelectDisturbance
from .device import DEFAULT_LEVELS, LogicLevels, MemristorDevice, State, device_step, switch
from .ledger import AreaPowerLedger, Block, area_power_report
from .logic import (
    MtlCell,
    and_,
    bits_to_str,
    compare_leq,
    comparator_stage,
    from_bits,
    inv,
    mtl_eval,
    nand,
    nor,
    or_,
    str_to_bits,
    to_bits,
    xor_tlg,
    xor_word,
)
from .pipeline import GNeighborUnit, pipeline_pixel
from .sram import SramAccessError, SramCell

__all__ = [
    "AreaPowerLedger",
    "Block",
    "Crossbar",
    "DEFAULT_LEVELS",
    "GNeighborUnit",
    "HalfSelectDisturbance",
    "LogicLevels",
    "MemristorDevice",
    "MtlCell",
    "SramAccessError",
    "SramCell",
    "State",
    "and_",
    "area_power_report",
    "bits_to_str",
    "compare_leq",
    "comparator_stage",
    "device_step",
    "from_bits",
    "inv",
    "mtl_eval",
    "nand",
    "nor",
    "or_",
    "pipeline_pixel",
    "str_to_bits",
    "switch",
    "to_bits",
    "xor_tlg",
    "xor_word",
]
