"""Prime 4-hole counts of the m x m grid against n^2 = m^4."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from kholes.grid import count_prime_k_holes


@dataclass
class GridTrendConfig:
    m_min: int = 3
    m_max: int = 8
    k: int = 4


def run(cfg: GridTrendConfig) -> dict:
    rows = []
    for m in range(cfg.m_min, cfg.m_max + 1):
        t0 = time.perf_counter()
        c = count_prime_k_holes(m, cfg.k)
        rows.append({"m": m, "n": m * m, "count": c, "per_n2": c / m ** 4,
                     "seconds": round(time.perf_counter() - t0, 2)})
    return {"config": asdict(cfg), "rows": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=GridTrendConfig.m_max)
    ap.add_argument("--k", type=int, default=4)
    a = ap.parse_args()
    print(json.dumps(run(GridTrendConfig(m_max=a.m_max, k=a.k)), indent=2))


if __name__ == "__main__":
    main()
