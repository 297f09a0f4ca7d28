"""Non-convex 4-hole counts on the four-cluster construction, with a log-log
slope fit. A slope near 3 means cubic growth."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from kholes.census import GonClass, count_holes
from kholes.generators import gen_cluster_fig5
from kholes.harness import fit_growth


@dataclass
class GrowthConfig:
    sizes: tuple = (16, 24, 32, 40, 48)
    k: int = 4
    jobs: int = 1


def run(cfg: GrowthConfig) -> dict:
    series = [(n, count_holes(gen_cluster_fig5(n, cfg.k), cfg.k, GonClass.NONCONVEX, jobs=cfg.jobs))
              for n in cfg.sizes]
    fit = fit_growth(series)
    return {"config": asdict(cfg), "series": series, "slope": fit.exponent, "residual": fit.residual}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(GrowthConfig.sizes))
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    print(json.dumps(run(GrowthConfig(sizes=tuple(a.sizes), jobs=a.jobs)), indent=2))


if __name__ == "__main__":
    main()
