#!/usr/bin/env python3
"""Cross-check that the per-layer Distortion ordering survives theta_pre.

Runs `latdim distortion` once per theta_pre on a seeded net and compares
the layer rankings of D with scipy's rankdata.
"""
import argparse
import csv
import subprocess
import tempfile
from pathlib import Path

from scipy.stats import rankdata

THETAS = ["0.0005", "0.001", "0.005", "0.01"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cli", default="build/tools/latdim")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=1000)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        cfg = Path(tmp) / "net.cfg"
        subprocess.run([args.cli, "--seed", str(args.seed), "gen-net", "--input-dim", "32",
                        "--layer-dims", ",".join(["32"] * 8), "--activation", "tanh", "--weight-scale", "2.0",
                        "--out", str(cfg)], check=True)
        orders = {}
        for theta in THETAS:
            out = Path(tmp) / f"d{theta}.csv"
            subprocess.run([args.cli, "--seed", str(args.seed), "distortion", "--net", str(cfg),
                            "--pairs", str(args.pairs), "--theta-pre", theta, "--out", str(out)], check=True)
            rows = list(csv.DictReader(out.read_text().splitlines()))
            d = [float(r["D"]) if r["D"] else float("nan") for r in rows]
            orders[theta] = list(rankdata(d))
            print(f"theta_pre {theta}: D = " + " ".join(f"{x:.3f}" for x in d))
        same = all(o == orders[THETAS[0]] for o in orders.values())
        print("orderings identical" if same else "orderings differ")


if __name__ == "__main__":
    main()
