"""Memristive threshold logic (MTL) gates and the networks built from them.

An MTL cell averages its input voltages through equal memristive weights and
feeds the average into a CMOS inverter with a configurable switching
threshold. A low threshold gives NOR, a high one NAND. Every gate below is
evaluated cell by cell; nothing is shortcut to Python's boolean operators.

Bits may be Python ints or numpy integer arrays. Arrays are evaluated
elementwise, which lets exhaustive checks push every input combination
through the same netlist at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import DEFAULT_LEVELS, LogicLevels


@dataclass(frozen=True)
class MtlCell:
    input_count: int
    inverter_threshold: float
    output_inverted: bool = True
    levels: LogicLevels = DEFAULT_LEVELS

    def __post_init__(self):
        if self.input_count < 1:
            raise ValueError("an MTL cell needs at least one input")
        if not self.levels.v_low < self.inverter_threshold < self.levels.v_high:
            raise ValueError("inverter threshold must lie strictly between the logic levels")

    @classmethod
    def nor(cls, n: int = 2, levels: LogicLevels = DEFAULT_LEVELS) -> "MtlCell":
        # between V_L and the average with a single input high
        step = (levels.v_high - levels.v_low) / n
        return cls(n, levels.v_low + step / 2, True, levels)

    @classmethod
    def nand(cls, n: int = 2, levels: LogicLevels = DEFAULT_LEVELS) -> "MtlCell":
        # between the average with a single input low and V_H
        step = (levels.v_high - levels.v_low) / n
        return cls(n, levels.v_high - step / 2, True, levels)

    @property
    def kind(self) -> str:
        if self.input_count == 1:
            return "NOT" if self.output_inverted else "BUF"
        low = self.inverter_threshold < self.levels.midpoint
        if self.output_inverted:
            return "NOR" if low else "NAND"
        return "OR" if low else "AND"


def mtl_eval(cell: MtlCell, inputs) -> int:
    """Average the input voltages and pass them through the threshold inverter."""
    if len(inputs) != cell.input_count:
        raise ValueError(f"cell expects {cell.input_count} inputs, got {len(inputs)}")
    # mean of per-input voltages, folded as V_L + (V_H - V_L) * mean(bits)
    v_avg = cell.levels.voltage(sum(inputs) / cell.input_count)
    high = v_avg < cell.inverter_threshold  # inverter drives V_H below its threshold
    if isinstance(high, np.ndarray):
        return (high if cell.output_inverted else ~high).astype(np.uint8)
    return int(high) if cell.output_inverted else int(not high)


# Gate library. Cells are immutable, so one instance per arity is shared.
_NAND = {n: MtlCell.nand(n) for n in (2, 3)}
_NOR = {n: MtlCell.nor(n) for n in (2, 3)}
_INV = MtlCell(1, DEFAULT_LEVELS.midpoint)


def inv(a):
    return mtl_eval(_INV, (a,))


def nand(*xs):
    return mtl_eval(_NAND[len(xs)], xs)


def nor(*xs):
    return mtl_eval(_NOR[len(xs)], xs)


def and_(*xs):
    return inv(nand(*xs))


def or_(*xs):
    return inv(nor(*xs))


def xor_tlg(a, b):
    """Two-input XOR from four NAND cells."""
    n_ab = nand(a, b)
    return nand(nand(a, n_ab), nand(b, n_ab))


def xor_word(a_bits, b_bits):
    """Bitwise XOR of two MSB-first words, one gate per bit position."""
    if len(a_bits) != len(b_bits):
        raise ValueError("word widths differ")
    return [xor_tlg(a, b) for a, b in zip(a_bits, b_bits)]


# ---------------------------------------------------------------- comparator


def comparator_stage(eq, lt, d, g):
    """One MSB-first magnitude comparator slice.

    ``eq``: all higher bits equal so far; ``lt``: d < g already decided.
    Returns the updated ``(eq, lt)``.
    """
    diff = xor_tlg(d, g)
    n_eq = inv(eq)
    takes_lt = nor(n_eq, d, inv(g))  # eq & ~d & g
    lt_next = or_(lt, takes_lt)
    eq_next = nor(n_eq, diff)  # eq & ~(d ^ g)
    return eq_next, lt_next


def compare_leq(d_bits, g_bits, stage=comparator_stage):
    """1 iff unsigned(d) <= unsigned(g), for MSB-first bit words."""
    if len(d_bits) != len(g_bits):
        raise ValueError(f"word widths differ: {len(d_bits)} vs {len(g_bits)}")
    if not d_bits:
        raise ValueError("empty words")
    first = d_bits[0]
    one = np.ones_like(first, dtype=np.uint8) if isinstance(first, np.ndarray) else 1
    eq, lt = one, one - one
    for d, g in zip(d_bits, g_bits):
        eq, lt = stage(eq, lt, d, g)
    return or_(lt, eq)


# ---------------------------------------------------------------- bit words


def to_bits(value, width: int = 8):
    """MSB-first bits of an unsigned integer (or array of them)."""
    if isinstance(value, np.ndarray):
        if value.min(initial=0) < 0 or value.max(initial=0) >= 1 << width:
            raise ValueError(f"values do not fit in {width} bits")
        return [((value >> (width - 1 - i)) & 1).astype(np.uint8) for i in range(width)]
    if not 0 <= value < 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def from_bits(bits):
    out = 0
    for b in bits:
        out = (out << 1) | (b.astype(np.int64) if isinstance(b, np.ndarray) else int(b))
    return out


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def str_to_bits(text: str):
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return [int(c) for c in text]
