"""Per-pixel G-neighbor identification: XOR distance -> crossbars -> comparator -> SRAM."""

from __future__ import annotations

from .crossbar import Crossbar
from .logic import compare_leq, to_bits, xor_word
from .sram import SramCell


class GNeighborUnit:
    """Hardware unit deciding whether a neighbor is a G-neighbor of a reference pixel.

    The threshold word is written once into its own crossbar when the unit is
    built; each :meth:`identify` call writes the XOR distance into the distance
    crossbar, reads both words back, compares them and latches the verdict.
    """

    def __init__(self, threshold: int, width: int = 8, comparator=compare_leq, **crossbar_kw):
        self.width = width
        self.threshold = threshold
        self.comparator = comparator
        self.distance_array = Crossbar(1, width, **crossbar_kw)
        self.threshold_array = Crossbar(1, width, **crossbar_kw)
        self.threshold_array.write([to_bits(threshold, width)])
        self.sram = SramCell()
        self.last_distance: list[int] | None = None

    def identify(self, ref: int, neighbor: int) -> int:
        distance = xor_word(to_bits(ref, self.width), to_bits(neighbor, self.width))
        self.distance_array.write([distance])

        d_bits = self.distance_array.read_row(0)
        g_bits = self.threshold_array.read_row(0)
        self.last_distance = d_bits
        verdict = self.comparator(d_bits, g_bits)

        self.sram.word_line = True
        self.sram.write(verdict)
        self.sram.word_line = False

        self.sram.word_line = True
        try:
            return self.sram.read()
        finally:
            self.sram.word_line = False


def pipeline_pixel(ref: int, neighbor: int, g: int, **kw) -> int:
    """Simulate one reference/neighbor decision end to end; equals ``(ref ^ neighbor) <= g``."""
    return GNeighborUnit(g, **kw).identify(ref, neighbor)
