"""Prepared entanglement against noise for tailored indistinguishability.

Reproduces the three headline behaviors: the singlet target at full
spatial indistinguishability survives any noise; the triplet target decays
as (4-5p)/(4-p); distinguishable qubits decay fastest, as 1-3p/2.  Writes
CSV and SVG to demos/out/.
"""

import math
from pathlib import Path

from islocc import FERMION, GridSpec, SweepConfig, run_sweep
from islocc.sweeps import CSV_FIELDS, records_to_csv
from islocc.svg import sweep_svg

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)
sqrt_half = 1.0 / math.sqrt(2.0)

cases = {
    "singlet target, full indistinguishability": SweepConfig(
        statistics=FERMION, target="1_minus", constraint="l_eq_lprime",
        l_grid=GridSpec(sqrt_half, sqrt_half, 1), p_grid=GridSpec(0, 1, 51)),
    "triplet target, full indistinguishability": SweepConfig(
        statistics=FERMION, target="1_plus", constraint="l_eq_lprime",
        l_grid=GridSpec(sqrt_half, sqrt_half, 1), p_grid=GridSpec(0, 1, 51)),
    "distinguishable pair": SweepConfig(
        statistics=FERMION, target="1_minus", constraint="l_eq_rprime",
        indist_grid=GridSpec(0, 0, 1), p_grid=GridSpec(0, 1, 51)),
}

all_records = []
for label, config in cases.items():
    records = run_sweep(config)
    all_records.extend(records)
    picks = [records[i] for i in (0, 12, 25, 38, 50)]
    print(f"--- {label} ---")
    for r in picks:
        print(f"  p={r.p:.2f}  C={r.concurrence:.6f}  E_f={r.eof:.6f}  "
              f"P_LR={r.p_lr:.4f}  B={r.bell:.4f}")

(OUT / "entanglement_vs_noise.csv").write_text(records_to_csv(all_records, CSV_FIELDS))
(OUT / "entanglement_vs_noise.svg").write_text(sweep_svg(all_records))
print()
print("wrote", OUT / "entanglement_vs_noise.csv")
print("wrote", OUT / "entanglement_vs_noise.svg")

print()
print("the partially indistinguishable middle ground (contour slice at p = 1):")
config = SweepConfig(statistics=FERMION, target="1_minus",
                     indist_grid=GridSpec(0, 1, 11), p_grid=GridSpec(1, 1, 1))
for r in run_sweep(config):
    bar = "#" * int(round(40 * r.concurrence))
    print(f"  I={r.indist:.2f}  C={r.concurrence:.4f} {bar}")
