import csv
import logging
import sys
import time
from dataclasses import dataclass, fields
from typing import List

from flatlab.kernel.groebner import collect_stats
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tensor import tensor_power
from flatlab.modules.torsion import torsion_submodule


@dataclass
class BenchRow:
    d: int
    generators: int
    relations: int
    gb_pairs: int
    wall_ms: int

    def dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


class Benchmark:
    """Measures the torsion test on T^d M for d = 1..dmax."""

    columns = [f.name for f in fields(BenchRow)]

    def __init__(self, module: PresentedModule, dmax: int, log_level=logging.INFO, timing=True):
        self.logger = logging.getLogger("flatlab")
        self.logger.level = log_level
        if not self.logger.hasHandlers():
            self.logger.addHandler(logging.StreamHandler(sys.stdout))
        self.module = module
        self.dmax = dmax
        self.timing = timing

    def rows(self) -> List[BenchRow]:
        rows = []
        for d in range(1, self.dmax + 1):
            start = time.perf_counter()
            with collect_stats() as stats:
                power = tensor_power(self.module, d)
                torsion_submodule(power)
            wall_ms = int(round((time.perf_counter() - start) * 1000)) if self.timing else 0
            row = BenchRow(d, power.rank, len(power.relations), stats.pairs, wall_ms)
            self.logger.debug("bench %s d=%d: %s", self.module.name, d, row.dict())
            rows.append(row)
        return rows

    def write_csv(self, rows: List[BenchRow], stream):
        writer = csv.DictWriter(stream, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.dict())
