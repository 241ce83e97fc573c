from __future__ import annotations

from dataclasses import dataclass


class SramAccessError(RuntimeError):
    pass


@dataclass
class SramCell:
    """One-bit latch gated by a word line; idle while the word line is low."""

    stored: int = 0
    word_line: bool = False

    def write(self, bit) -> None:
        if not self.word_line:
            raise SramAccessError("write attempted with word line deasserted")
        self.stored = 1 if bit else 0

    def read(self) -> int:
        if not self.word_line:
            raise SramAccessError("read attempted with word line deasserted")
        return self.stored
