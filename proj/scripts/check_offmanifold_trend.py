#!/usr/bin/env python3
"""Cross-check the off-manifold trend with scipy.

Writes a deep tanh net with `latdim gen-net`, runs `latdim offmanifold`
over every axis, and reports the Spearman correlation between the axis
index and the final loss, plus the estimated rank from the CSV header.
"""
import argparse
import csv
import subprocess
import tempfile
from pathlib import Path

from scipy.stats import spearmanr


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cli", default="build/tools/latdim")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--width", type=int, default=64)
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        for seed in range(args.seeds):
            cfg = Path(tmp) / f"net{seed}.cfg"
            out = Path(tmp) / f"off{seed}.csv"
            dims = ",".join([str(args.width)] * args.depth)
            subprocess.run([args.cli, "--seed", str(seed), "gen-net", "--input-dim", str(args.width),
                            "--layer-dims", dims, "--activation", "tanh", "--weight-scale", "0.8",
                            "--out", str(cfg)], check=True)
            subprocess.run([args.cli, "offmanifold", "--net", str(cfg), "--z-seed", str(seed), "--c", "2",
                            "--out", str(out)], check=True)
            lines = out.read_text().splitlines()
            header = dict(kv.split("=") for kv in lines[0].lstrip("# ").split())
            rows = list(csv.DictReader(lines[1:]))
            k = [int(r["k"]) for r in rows]
            loss = [float(r["final_loss"]) for r in rows]
            rho = spearmanr(k, loss).correlation
            print(f"seed {seed}: spearman {rho:.4f}  estimated rank {header['estimated_rank']}")


if __name__ == "__main__":
    main()
