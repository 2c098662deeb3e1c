#!/usr/bin/env python3
"""Independent oracle for the golden-season acceptance check.

Re-implements the per-player-variance Kalman update over the bundled
20-game season from scratch (plain Python floats, no shared code with the
C++ library) and prints the expected initialization / second-half
log-score windows plus the final means. The frozen constants in
tests/acceptance.cpp come from running this script.

Usage: python3 golden_season_oracle.py [path/to/golden_season.csv]
"""

import csv
import math
import sys
from datetime import date

V0 = 0.02
EPS = 1e-4
ETA = 0.06
SCALE = 1.0
LN10 = math.log(10.0)


def logistic(z):
    return 1.0 / (1.0 + 10.0 ** (-z))


def main(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    rows.sort(key=lambda r: date.fromisoformat(r["date"]).toordinal())

    teams = {}
    for r in rows:
        for name in (r["home"], r["away"]):
            if name not in teams:
                teams[name] = len(teams)
    m = len(teams)

    mu = [0.0] * m
    v = [V0] * m
    day0 = date.fromisoformat(rows[0]["date"]).toordinal()
    last_tau = 0
    scores = []
    for r in rows:
        tau = date.fromisoformat(r["date"]).toordinal() - day0
        dtau = tau - last_tau
        last_tau = tau
        h_id = teams[r["home"]]
        a_id = teams[r["away"]]
        y = 1 if int(r["home_score"]) > int(r["away_score"]) else 0

        # beta = 1: prediction then per-player variance aging.
        z = (mu[h_id] - mu[a_id]) / SCALE + ETA
        p = logistic(z) if y == 1 else logistic(-z)
        p = min(max(p, 1e-12), 1.0 - 1e-12)
        scores.append(-math.log(p))

        for i in range(m):
            v[i] = v[i] * 1.0 + dtau * EPS
        g = LN10 * (y - logistic(z))
        h = LN10 * LN10 * logistic(z) * logistic(-z)
        omega = v[h_id] + v[a_id]
        den = SCALE * SCALE + h * omega
        gain = SCALE * g / den
        mu[h_id] += v[h_id] * gain
        mu[a_id] -= v[a_id] * gain
        shrink = h / den
        v[h_id] *= 1.0 - v[h_id] * shrink
        v[a_id] *= 1.0 - v[a_id] * shrink

    t = len(scores)
    t_init = min(4 * m, t)
    ls_init = sum(scores[:t_init]) / t_init
    ls_final = sum(scores[t // 2:]) / (t - t // 2)
    print(f"teams={m} games={t}")
    print(f"ls_init={ls_init!r}")
    print(f"ls_final={ls_final!r}")
    for name, idx in teams.items():
        print(f"mu[{name}]={mu[idx]!r} v[{name}]={v[idx]!r}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "../data/golden_season.csv")
