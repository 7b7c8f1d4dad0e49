#!/usr/bin/env python3
# Copyright 2026 The qmem Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plots qmemctl output: a trajectory.csv run directory or a sweep.csv file."""

import argparse
import csv
import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_columns(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {key: [r[key] for r in rows] for key in rows[0]} if rows else {}


def plot_run(run_dir, out):
    c = read_columns(run_dir / "trajectory.csv")
    num = lambda k: [float(v) for v in c[k]]
    mag = lambda p: [math.hypot(x, y) for x, y in zip(num("re_" + p), num("im_" + p))]
    t = num("t")
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    top.plot(t, mag("Ain"), label="|A_in|")
    top.plot(t, mag("Aout"), label="|A_out|")
    top.plot(t, mag("a"), label="|a|", lw=0.8)
    top.plot(t, mag("b"), label="|b|", lw=0.8)
    top.legend()
    bottom.plot(t, num("g"), label="g")
    if any(float(v) != 0 for v in c["Delta"]):
        bottom.plot(t, num("delta"), label="delta")
        bottom.plot(t, num("Delta"), label="Delta")
        bottom.set_ylim(-10, 10)
    bottom.set_xlabel("t (1/kappa)")
    bottom.legend()
    fig.tight_layout()
    fig.savefig(out)


def plot_sweep(sweep_csv, out):
    c = read_columns(sweep_csv)
    axis = next((k for k in ("T_hold", "gamma_over_kappa", "n_bar") if len(set(c[k])) > 1), "T_hold")
    ok = [i for i, e in enumerate(c["error"]) if not e]
    x = [float(c[axis][i]) for i in ok]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, [float(c["F_coherent"][i]) for i in ok], "o-", label="F")
    ax.plot(x, [float(c["F_classical_coherent"][i]) for i in ok], "--", label="classical bound")
    ax.plot(x, [float(c["sqrt_eta"][i]) for i in ok], "s-", label="sqrt(eta)")
    ax.set_xlabel(axis)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("path", type=pathlib.Path, help="run directory or sweep.csv")
    p.add_argument("-o", "--output", type=pathlib.Path, default=None)
    args = p.parse_args()
    if args.path.is_dir():
        plot_run(args.path, args.output or args.path / "trajectory.png")
    else:
        plot_sweep(args.path, args.output or args.path.with_suffix(".png"))


if __name__ == "__main__":
    main()
