"""Recompute the tight (c1, c2, x) relations and the crossing-free upper
coefficients for k = 5, 6 and write them as JSON."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from kholes import relations as R
from kholes.census import GonClass


@dataclass
class TablesConfig:
    grid: int = 6
    ks: tuple = (5, 6)
    out: str | None = None


def run(cfg: TablesConfig) -> dict:
    rows = []
    for k in cfg.ks:
        space = R.profile_space(k, f"grid:{cfg.grid}")
        for cls in GonClass:
            rec = R.relation_record(R.optimize_tight(space, cls))
            c2, x = R.optimize_upper(space, cls, R.C4.lower)
            coeff = R.bound_coefficient(c2, x, k, R.C4.lower)
            rec.update(upper_x=R.format_rational(x), upper_coefficient=float(coeff),
                       profiles=len(space.profiles), complete=space.complete)
            rows.append(rec)
    return {"config": asdict(cfg), "rows": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=TablesConfig.grid)
    ap.add_argument("--out")
    a = ap.parse_args()
    result = run(TablesConfig(grid=a.grid, out=a.out))
    text = json.dumps(result, indent=2)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
