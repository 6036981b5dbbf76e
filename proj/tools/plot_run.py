#!/usr/bin/env python3
# Copyright 2026 The pathguide Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plots trajectory, cross-track error, command and gains from a run directory."""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("run_dir", type=pathlib.Path)
    ap.add_argument("--out", type=pathlib.Path, default=None, help="PNG file (default: run_dir/run.png)")
    args = ap.parse_args()

    path = pd.read_csv(args.run_dir / "path.csv")
    runs = {p.stem.removeprefix("trajectory_"): pd.read_csv(p)
            for p in sorted(args.run_dir.glob("trajectory_*.csv"))}
    if not runs:
        raise SystemExit(f"no trajectory_*.csv in {args.run_dir}")

    fig, ax = plt.subplots(2, 2, figsize=(12, 8))
    ax[0, 0].plot(path.x, path.y, "k--", lw=1, label="path")
    for name, t in runs.items():
        ax[0, 0].plot(t.x, t.y, label=name)
        ax[0, 1].plot(t.t, t.cte, label=name)
        ax[1, 0].plot(t.t, t.a_cmd, label=name)
    prop = runs.get("proposed")
    if prop is not None:
        ax[1, 1].plot(prop.t, prop.k1, label="k1")
        ax[1, 1].plot(prop.t, prop.k2, label="k2")
    ax[0, 0].set_aspect("equal")
    ax[0, 0].set_title("trajectory")
    ax[0, 1].set_title("cross-track error (m)")
    ax[1, 0].set_title("lateral acceleration command (m/s^2)")
    ax[1, 1].set_title("gains")
    for a in ax.flat:
        a.grid(True, alpha=0.3)
        a.legend(loc="best")
    fig.tight_layout()
    out = args.out or args.run_dir / "run.png"
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
