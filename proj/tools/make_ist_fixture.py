#!/usr/bin/env python3
"""Generate a synthetic IST-like trial CSV.

Same columns and coding as the public International Stroke Trial file
(RXASP, RXHEP, CMPLASP, CMPLHEP, ID14), with roughly matching marginals.
Outcomes are synthetic; numbers computed from it are not trial results.
"""
import argparse

import numpy as np
import pandas as pd

ROWS = 19422


def generate(seed: int) -> pd.DataFrame:
    rng = np.random.default_rng(seed)
    n = ROWS
    rxasp = rng.choice(["Y", "N"], size=n)
    rxhep = rng.choice(["N", "L", "M", "H"], size=n, p=[0.5, 0.25, 0.22, 0.03])
    frail = rng.random(n) < 0.08  # frailer patients comply less and die more often

    def compliance(p_yes):
        p = np.where(frail, p_yes - 0.25, p_yes)
        out = np.where(rng.random(n) < p, "Y", "N")
        out[rng.random(n) < 0.004] = "U"
        return out

    cmplasp = compliance(0.95)
    cmplhep = compliance(0.92)

    took_asp = np.where(cmplasp == "N", rxasp == "N", rxasp == "Y")
    hep_dose = np.select([rxhep == "N", rxhep == "L"], [0, 1], default=2)
    took_hep = np.where(cmplhep == "N", np.where(hep_dose == 0, 1, 0), hep_dose)

    death = 0.085 + 0.10 * frail - 0.006 * took_asp
    death += np.select([took_hep == 1, took_hep == 2], [-0.004, 0.003], default=0.0)
    id14 = np.where(rng.random(n) < death, "1", "0").astype(object)
    id14[rng.random(n) < 0.003] = ""

    return pd.DataFrame({
        "ID": np.arange(1, n + 1),
        "RXASP": rxasp,
        "RXHEP": rxhep,
        "CMPLASP": cmplasp,
        "CMPLHEP": cmplhep,
        "ID14": id14,
    })


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/ist_synthetic.csv")
    ap.add_argument("--seed", type=int, default=19422)
    args = ap.parse_args()
    generate(args.seed).to_csv(args.out, index=False)


if __name__ == "__main__":
    main()
