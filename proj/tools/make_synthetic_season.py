# Copyright 2026 The pcrank Authors.
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

"""Writes data/synthetic_season.csv: one simulated 20-team double round robin."""

import sys

import numpy as np

TEAMS = [
    "Ashford", "Bramley", "Carrow", "Dunmore", "Elmstead", "Fernhill",
    "Glenby", "Harwood", "Ivybridge", "Kelso", "Larkfield", "Marston",
    "Northam", "Oakridge", "Pembury", "Queensferry", "Rothley", "Selby",
    "Thornbury", "Upton",
]
TIE_THRESHOLD = 0.35
HOME_ADVANTAGE = 0.2
PENALTY = 4.0


def rounds(p):
    fixed = p - 1
    for r in range(p - 1):
        week = []
        a, b = r % (p - 1), fixed
        week.append((a, b) if r % 2 == 0 else (b, a))
        for k in range(1, p // 2):
            i, j = (r + k) % (p - 1), (r - k) % (p - 1)
            week.append((i, j) if k % 2 == 0 else (j, i))
        yield week


def main(path):
    rng = np.random.default_rng(2026)
    p = len(TEAMS)
    strength = rng.normal(0.0, 1.0 / np.sqrt(PENALTY), p)
    first = list(rounds(p))
    weeks = first + [[(a, h) for h, a in w] for w in first]
    with open(path, "w", newline="\n") as out:
        out.write("season,week,home,away,outcome\n")
        for n, week in enumerate(weeks, start=1):
            for h, a in week:
                z = HOME_ADVANTAGE + strength[h] - strength[a] + rng.normal()
                res = "H" if z >= TIE_THRESHOLD else "A" if z < -TIE_THRESHOLD else "D"
                out.write(f"synthetic,{n},{TEAMS[h]},{TEAMS[a]},{res}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic_season.csv")
