#!/usr/bin/env python3
"""Write one CSV per figure preset and print a short summary of each curve."""

import argparse
import math
from pathlib import Path

from liesqueeze.cli import run
from liesqueeze.scenarios import PRESET_IDS, figure_preset
from liesqueeze.squeezing import sweep


def summarize(scenario):
    recs = sweep(scenario.model, scenario.state, scenario.t_grid())
    sx = [r.sx for r in recs if not math.isnan(r.sx)]
    sy = [r.sy for r in recs if not math.isnan(r.sy)]
    return recs[0].sx, recs[0].sy, min(sx), min(sy)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    parser.add_argument("--steps", type=int, default=2000)
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    print(f"{'preset':<12}{'sx(0)':>10}{'sy(0)':>10}{'min sx':>10}{'min sy':>10}")
    for pid in PRESET_IDS:
        sc = figure_preset(pid).with_(steps=args.steps, out=str(args.outdir / f"{pid}.csv"))
        run(sc)
        sx0, sy0, mx, my = summarize(sc)
        print(f"{pid:<12}{sx0:>10.4f}{sy0:>10.4f}{mx:>10.4f}{my:>10.4f}")


if __name__ == "__main__":
    main()
