#!/usr/bin/env python3
"""Regenerates the bundled example datasets under data/.

Both files are committed; this script only exists so their provenance is
reproducible. Values are written with repr() so they parse back to the exact
same doubles.
"""
import math
import random
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent / "data"
root.mkdir(exist_ok=True)

# linear.csv: noiseless linear ground truth in every predictor, mixed column
# kinds. An OLS fit recovers it exactly, which the exactness tests lean on.
rng = random.Random(20240311)
rows = []
for _ in range(200):
    x1 = round(rng.uniform(-3.0, 3.0), 2)
    x2 = round(rng.uniform(0.0, 10.0), 2)
    grp = rng.choice(["A", "B", "C"])
    flag = rng.random() < 0.45
    y = 3.0 + 2.0 * x1 - 1.5 * x2 + {"A": 0.0, "B": 1.0, "C": 2.0}[grp] + (0.5 if flag else 0.0)
    rows.append((repr(x1), repr(x2), grp, "TRUE" if flag else "FALSE", repr(y)))
with open(root / "linear.csv", "w", newline="") as f:
    f.write("x1,x2,grp,flag,y\n")
    for r in rows:
        f.write(",".join(r) + "\n")

# step_noise.csv: 160 rows of step-plus-wiggle ground truth, a categorical
# shift, unexplained jitter in y (so refitted models genuinely disagree across
# resamples), and a pure-noise column with no relation to y at all.
rng = random.Random(911847)
rows = []
for _ in range(160):
    x = round(rng.uniform(0.0, 1.0), 4)
    noise = round(rng.gauss(0.0, 1.0), 6)
    seg = rng.choice(["lo", "mid", "hi"])
    y = (2.0 if x > 0.5 else 0.0) + 0.8 * math.sin(5.0 * x)
    y += {"lo": 0.0, "mid": 1.5, "hi": 3.0}[seg]
    y += 0.3 * rng.gauss(0.0, 1.0)
    rows.append((repr(x), repr(noise), seg, repr(y)))
with open(root / "step_noise.csv", "w", newline="") as f:
    f.write("x,noise,seg,y\n")
    for r in rows:
        f.write(",".join(r) + "\n")

print("wrote", root / "linear.csv", "and", root / "step_noise.csv")
