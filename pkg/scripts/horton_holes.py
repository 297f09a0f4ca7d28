"""Convex k-hole counts of Horton sets for k = 3..7."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from kholes.census import GonClass, count_holes
from kholes.generators import gen_horton


@dataclass
class HortonConfig:
    sizes: tuple = (8, 16, 32)
    ks: tuple = (3, 4, 5, 6, 7)


def run(cfg: HortonConfig) -> dict:
    table = {n: {k: count_holes(gen_horton(n), k, GonClass.CONVEX) for k in cfg.ks if k <= n}
             for n in cfg.sizes}
    return {"config": asdict(cfg), "convex_holes": table}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(HortonConfig.sizes))
    a = ap.parse_args()
    print(json.dumps(run(HortonConfig(sizes=tuple(a.sizes))), indent=2))


if __name__ == "__main__":
    main()
