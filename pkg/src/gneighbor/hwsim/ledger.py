"""Area and power bookkeeping for the G-neighbor identification circuit.

Figures are kept as :class:`~decimal.Decimal` so that sums are exact. The
published table quotes one decimal place, which is what :meth:`report`
rounds totals to.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

PUBLISHED_BLOCKS = (
    ("XOR", "25.02", "3.6"),
    ("Memristor arrays", "128.08", "12"),
    ("Bit-by-bit comparison", "111.06", "14"),
    ("SRAM", "16", "1.8"),
)

_TENTH = Decimal("0.1")


@dataclass(frozen=True)
class Block:
    name: str
    area_um2: Decimal
    power_mw: Decimal


@dataclass
class AreaPowerLedger:
    blocks: list[Block] = field(default_factory=list)

    @classmethod
    def published(cls) -> "AreaPowerLedger":
        return cls([Block(n, Decimal(a), Decimal(p)) for n, a, p in PUBLISHED_BLOCKS])

    def add(self, name: str, area_um2, power_mw) -> None:
        self.blocks.append(Block(name, Decimal(str(area_um2)), Decimal(str(power_mw))))

    @property
    def total_area(self) -> Decimal:
        return sum((b.area_um2 for b in self.blocks), Decimal(0))

    @property
    def total_power(self) -> Decimal:
        return sum((b.power_mw for b in self.blocks), Decimal(0))

    def scaled(self, units: int) -> "AreaPowerLedger":
        """Ledger for ``units`` identical identification circuits (linear model)."""
        if units < 0:
            raise ValueError("unit count must be non-negative")
        k = Decimal(units)
        return AreaPowerLedger([Block(b.name, b.area_um2 * k, b.power_mw * k) for b in self.blocks])

    def report(self) -> dict:
        return {
            "blocks": [
                {"name": b.name, "area_um2": float(b.area_um2), "power_mw": float(b.power_mw)} for b in self.blocks
            ],
            "total_area_um2": float(self.total_area.quantize(_TENTH, ROUND_HALF_UP)),
            "total_power_mw": float(self.total_power.quantize(_TENTH, ROUND_HALF_UP)),
            "exact_total_area_um2": str(self.total_area),
            "exact_total_power_mw": str(self.total_power),
        }


def area_power_report(ledger: AreaPowerLedger, fmt: str = "text") -> str:
    rep = ledger.report()
    if fmt == "json":
        return json.dumps(rep, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["block", "area_um2", "power_mw"])
        for b in ledger.blocks:
            w.writerow([b.name, str(b.area_um2), str(b.power_mw)])
        w.writerow(["Total", f"{rep['total_area_um2']:.1f}", f"{rep['total_power_mw']:.1f}"])
        return buf.getvalue()
    lines = [f"{'Block':<24}{'Area (um^2)':>14}{'Power (mW)':>12}"]
    for b in ledger.blocks:
        lines.append(f"{b.name:<24}{str(b.area_um2):>14}{str(b.power_mw):>12}")
    lines.append(f"{'Total':<24}{rep['total_area_um2']:>14.1f}{rep['total_power_mw']:>12.1f}")
    return "\n".join(lines) + "\n"
