"""Equivalence checks between the gate-level models and plain integer arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .crossbar import Crossbar
from .logic import MtlCell, compare_leq, from_bits, mtl_eval, to_bits, xor_word
from .pipeline import GNeighborUnit

# 2-input MTL truth table: (in1, in2) -> (NOR, NAND)
MTL_TRUTH_TABLE = {
    (0, 0): (1, 1),
    (0, 1): (0, 1),
    (1, 0): (0, 1),
    (1, 1): (0, 0),
}

MAX_COUNTEREXAMPLES = 10


@dataclass
class CheckResult:
    name: str
    total: int = 0
    passed: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "total": self.total,
            "passed": self.passed,
            "failed": self.total - self.passed,
            "counterexamples": self.counterexamples,
        }


def _all_pairs(width: int):
    a, b = np.meshgrid(np.arange(1 << width), np.arange(1 << width), indexing="ij")
    return a.ravel(), b.ravel()


def _record(res: CheckResult, good: np.ndarray, describe) -> CheckResult:
    res.total = int(good.size)
    res.passed = int(np.count_nonzero(good))
    for i in np.flatnonzero(~good)[:MAX_COUNTEREXAMPLES]:
        res.counterexamples.append(describe(int(i)))
    return res


def check_mtl_table() -> CheckResult:
    res = CheckResult("mtl_truth_table")
    nor_cell, nand_cell = MtlCell.nor(2), MtlCell.nand(2)
    for (a, b), (want_nor, want_nand) in MTL_TRUTH_TABLE.items():
        for cell, want in ((nor_cell, want_nor), (nand_cell, want_nand)):
            res.total += 1
            got = mtl_eval(cell, (a, b))
            if got == want:
                res.passed += 1
            else:
                res.counterexamples.append({"gate": cell.kind, "inputs": [a, b], "got": got, "want": want})
    return res


def check_xor(width: int = 8) -> CheckResult:
    a, b = _all_pairs(width)
    got = from_bits(xor_word(to_bits(a, width), to_bits(b, width)))
    want = a ^ b
    return _record(
        CheckResult(f"xor_tlg_{width}bit"),
        got == want,
        lambda i: {"a": int(a[i]), "b": int(b[i]), "got": int(got[i]), "want": int(want[i])},
    )


def check_comparator(width: int = 8, comparator=compare_leq) -> CheckResult:
    d, g = _all_pairs(width)
    got = np.asarray(comparator(to_bits(d, width), to_bits(g, width)))
    want = (d <= g).astype(np.uint8)
    return _record(
        CheckResult(f"compare_leq_{width}bit"),
        got == want,
        lambda i: {"d": int(d[i]), "g": int(g[i]), "got": int(got[i]), "want": int(want[i])},
    )


def check_crossbar(trials: int = 1000, rows: int = 8, cols: int = 8, seed: int = 0) -> CheckResult:
    """Random write/read round-trips on one crossbar, overwriting between trials."""
    rng = np.random.default_rng(seed)
    xbar = Crossbar(rows, cols)
    res = CheckResult(f"crossbar_roundtrip_{rows}x{cols}")
    for t in range(trials):
        bits = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        xbar.write(bits)
        before = xbar.states.copy()
        back = xbar.read_all()
        res.total += 1
        if np.array_equal(back, bits) and np.array_equal(before, xbar.states):
            res.passed += 1
        elif len(res.counterexamples) < MAX_COUNTEREXAMPLES:
            res.counterexamples.append({"trial": t, "written": bits.tolist(), "read": back.tolist()})
    return res


def check_pipeline(
    width: int = 8,
    thresholds=(13,),
    exhaustive: bool = True,
    samples: int = 4096,
    seed: int = 0,
    comparator=compare_leq,
) -> CheckResult:
    """Run the simulated identification chain against ``(ref ^ neighbor) <= g``."""
    res = CheckResult(f"pipeline_{width}bit")
    if exhaustive:
        refs, nbrs = _all_pairs(width)
    else:
        rng = np.random.default_rng(seed)
        refs = rng.integers(0, 1 << width, size=samples)
        nbrs = rng.integers(0, 1 << width, size=samples)
    refs, nbrs = refs.tolist(), nbrs.tolist()
    for g in thresholds:
        unit = GNeighborUnit(g, width=width, comparator=comparator)
        for r, n in zip(refs, nbrs):
            got = unit.identify(r, n)
            want = int((r ^ n) <= g)
            res.total += 1
            if got == want:
                res.passed += 1
            elif len(res.counterexamples) < MAX_COUNTEREXAMPLES:
                res.counterexamples.append({"ref": r, "neighbor": n, "g": g, "got": got, "want": want})
    return res


def run_all(width: int = 8, exhaustive: bool = True, thresholds=None, crossbar_trials: int = 1000, comparator=compare_leq):
    if width not in (4, 8):
        raise ValueError("bit width must be 4 or 8")
    if thresholds is None:
        thresholds = (13,) if width == 8 else (5,)
    return [
        check_mtl_table(),
        check_xor(width),
        check_comparator(width, comparator),
        check_crossbar(crossbar_trials),
        check_pipeline(width, thresholds, exhaustive, comparator=comparator),
    ]
