"""Two-state threshold-switching memristor model and logic voltage levels."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class LogicLevels:
    v_low: float = 0.0
    v_high: float = 2.5

    def __post_init__(self):
        if not self.v_low < self.v_high:
            raise ValueError("v_low must be below v_high")

    @property
    def midpoint(self) -> float:
        return (self.v_low + self.v_high) / 2

    def voltage(self, bit):
        """Drive level for a bit (scalar or array of 0/1)."""
        return self.v_low + (self.v_high - self.v_low) * bit


DEFAULT_LEVELS = LogicLevels()


class State(enum.IntEnum):
    OFF = 0  # high resistance, stores '0'
    ON = 1  # low resistance, stores '1'


@dataclass(frozen=True)
class MemristorDevice:
    state: State = State.OFF
    v_threshold: float = 1.088
    r_on: float = 0.125e6
    r_off: float = 1.14e6

    def __post_init__(self):
        if not 0 < self.r_on < self.r_off:
            raise ValueError("need 0 < r_on < r_off")
        if self.v_threshold <= 0:
            raise ValueError("switching threshold must be positive")

    @property
    def resistance(self) -> float:
        return self.r_on if self.state is State.ON else self.r_off


def switch(state, v_applied, v_threshold: float):
    """Next state(s) under an applied voltage: >= +Vth sets ON, <= -Vth resets OFF.

    ``state`` may be a bool/0-1 array; the result then has the same shape.
    """
    if isinstance(state, np.ndarray) or isinstance(v_applied, np.ndarray):
        state = np.asarray(state, dtype=bool)
        v = np.asarray(v_applied, dtype=np.float64)
        return np.where(v >= v_threshold, True, np.where(v <= -v_threshold, False, state))
    if v_applied >= v_threshold:
        return True
    if v_applied <= -v_threshold:
        return False
    return bool(state)


def device_step(d: MemristorDevice, v_applied: float) -> MemristorDevice:
    on = switch(d.state is State.ON, v_applied, d.v_threshold)
    return replace(d, state=State.ON if on else State.OFF)
