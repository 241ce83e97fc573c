"""Memristor crossbar with a two-cycle half-select write and a divider read."""

from __future__ import annotations

import math

import numpy as np

from .device import MemristorDevice, State, switch


class HalfSelectDisturbance(RuntimeError):
    """A device that was not fully selected changed state during a write cycle."""


class Crossbar:
    """``rows x cols`` array of memristors; ``states[r, c]`` is True for ON ('1').

    Words are written one row at a time. The selected row is driven at
    +Vw/2 (cycle 1) or -Vw/2 (cycle 2), other rows are grounded, and columns
    are driven at -/+Vw/2 so that only the intended devices see the full Vw
    across them. Every other device sees at most Vw/2, which must stay below
    the switching threshold.
    """

    def __init__(
        self,
        rows: int,
        cols: int,
        device: MemristorDevice = MemristorDevice(),
        v_write: float = 2.0,
        v_read: float = 1.0,
        r_load: float | None = None,
        v_t2: float = 0.5,
        validate: bool = True,
    ):
        if rows < 1 or cols < 1:
            raise ValueError("crossbar needs at least one row and column")
        self.rows, self.cols = rows, cols
        self.device = device
        self.v_write = v_write
        self.v_read = v_read
        self.r_load = math.sqrt(device.r_on * device.r_off) if r_load is None else r_load
        self.v_t2 = v_t2
        vth = device.v_threshold
        if validate:
            if not v_write > vth:
                raise ValueError(f"v_write {v_write} V does not exceed the switching threshold {vth} V")
            if not v_write / 2 < vth:
                raise ValueError(f"half-select voltage {v_write / 2} V would disturb devices (threshold {vth} V)")
            if not abs(v_read) < vth:
                raise ValueError(f"v_read {v_read} V would disturb stored states")
            if not self.node_voltage(State.OFF) < v_t2 < self.node_voltage(State.ON):
                raise ValueError("v_t2 does not separate the ON and OFF read levels")
        self.states = np.full((rows, cols), device.state is State.ON)
        self.cycles = 0

    # -- write ---------------------------------------------------------------

    def _apply(self, row_v: np.ndarray, col_v: np.ndarray, intended: np.ndarray) -> None:
        before = self.states
        v_dev = row_v[:, None] - col_v[None, :]
        after = switch(before, v_dev, self.device.v_threshold)
        changed = after != before
        if np.any(changed & ~intended):
            r, c = np.argwhere(changed & ~intended)[0]
            raise HalfSelectDisturbance(
                f"device ({r}, {c}) flipped under {v_dev[r, c]:+.3f} V without being selected"
            )
        self.states = after
        self.cycles += 1

    def write_row(self, row: int, bits) -> None:
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (self.cols,):
            raise ValueError(f"row word must have {self.cols} bits")
        half = self.v_write / 2
        row_v = np.zeros(self.rows)
        target = np.zeros((self.rows, self.cols), dtype=bool)

        # cycle 1: full select sets '1' targets ON
        row_v[row] = +half
        col_v = np.where(bits, -half, +half)
        target[row] = bits
        self._apply(row_v, col_v, target)

        # cycle 2: full select resets '0' targets OFF; cycle-1 writes must survive
        row_v[row] = -half
        col_v = np.where(bits, -half, +half)
        target[row] = ~bits
        self._apply(row_v, col_v, target)

    def write(self, bits) -> "Crossbar":
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (self.rows, self.cols):
            raise ValueError(f"bit matrix shape {bits.shape} does not match crossbar {(self.rows, self.cols)}")
        for r in range(self.rows):
            self.write_row(r, bits[r])
        return self

    # -- read ----------------------------------------------------------------

    def node_voltage(self, state) -> float:
        r_dev = self.device.r_on if state else self.device.r_off
        return self.v_read * self.r_load / (r_dev + self.r_load)

    def read(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"cell ({row}, {col}) outside {self.rows}x{self.cols} crossbar")
        # |v_read| < v_threshold was checked at construction: reading never switches
        return int(self.node_voltage(self.states[row, col]) > self.v_t2)

    def read_row(self, row: int) -> list[int]:
        return [self.read(row, c) for c in range(self.cols)]

    def read_all(self) -> np.ndarray:
        return np.array([self.read_row(r) for r in range(self.rows)], dtype=np.uint8)
