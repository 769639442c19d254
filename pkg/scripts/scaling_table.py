"""Scaling table for allSix / allFiveOrSix across backends.

    python3 scripts/scaling_table.py --sizes 2,4,6,8,10 --backends lazy,strict,list

Prints one row per (model, n) with the probability, the number of
choice expansions (pairs visited for the list backend) and mean wall time.
Backends that time out show "-".
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from lazydist import bench


@dataclass
class ScalingConfig:
    models: list[str] = field(default_factory=lambda: ["allsix", "allfiveorsix"])
    sizes: list[int] = field(default_factory=lambda: [2, 4, 6, 8, 10])
    backends: list[str] = field(default_factory=lambda: ["lazy", "strict", "list"])
    runs: int = 1
    timeout: float = 30.0
    csv_out: str | None = None


def parse_args() -> ScalingConfig:
    cfg = ScalingConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--models", default=",".join(cfg.models))
    p.add_argument("--sizes", default=",".join(map(str, cfg.sizes)))
    p.add_argument("--backends", default=",".join(cfg.backends))
    p.add_argument("--runs", type=int, default=cfg.runs)
    p.add_argument("--timeout", type=float, default=cfg.timeout)
    p.add_argument("--csv-out", default=None)
    a = p.parse_args()
    return ScalingConfig(
        a.models.split(","), [int(s) for s in a.sizes.split(",")], a.backends.split(","), a.runs, a.timeout, a.csv_out
    )


def main(cfg: ScalingConfig):
    records = []
    header = f"{'model':14s} {'n':>4s}" + "".join(f" {b + ' exp':>14s} {b + ' ms':>10s}" for b in cfg.backends)
    print(header)
    for model in cfg.models:
        for n in cfg.sizes:
            row = bench.bench(model, [n], cfg.backends, cfg.runs, cfg.timeout)
            records.extend(row)
            cells = []
            for r in row:
                if r.timed_out:
                    cells.append(f" {'-':>14s} {'-':>10s}")
                else:
                    cells.append(f" {r.choice_expansions:>14d} {r.wall_ms:>10.1f}")
            prob = next((r.probability for r in row if not r.timed_out), None)
            print(f"{model:14s} {n:>4d}" + "".join(cells) + (f"   p={prob:.6g}" if prob is not None else ""))
    if cfg.csv_out:
        bench.emit(records, "csv", cfg.csv_out)
        print(f"wrote {cfg.csv_out}")


if __name__ == "__main__":
    main(parse_args())
