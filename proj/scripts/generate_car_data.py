#!/usr/bin/env python3
"""Generate the synthetic car-selection dataset and its linear scorer.

113 cars with 13 criteria; the preference score of each row is the
weighted-sum scorer's own output, so data/car_model.json fits
data/cars.csv exactly. Lower-is-better criteria (price, acceleration
time, weight, consumption) use decreasing utility transforms.
"""
import json
import random

CRITERIA = [
    # (name, min, max, weight, lower_is_better)
    ("price", 8.0, 80.0, 18.0, True),
    ("power", 40.0, 300.0, 14.0, False),
    ("acceleration", 6.0, 20.0, 10.0, True),
    ("speed", 120.0, 280.0, 10.0, False),
    ("dimensions", 3.2, 5.2, 6.0, False),
    ("chest", 200.0, 600.0, 6.0, False),
    ("weight", 700.0, 2200.0, 5.0, True),
    ("aesthetic", 0.0, 10.0, 8.0, False),
    ("consumption", 3.0, 15.0, 7.0, True),
    ("comfort", 0.0, 10.0, 6.0, False),
    ("equipment", 0.0, 10.0, 4.0, False),
    ("safety", 0.0, 10.0, 4.0, False),
    ("resale", 0.0, 10.0, 2.0, False),
]
# Weights sum to 100 -> scores span [0, 100].


def score(row):
    s = 0.0
    for (name, lo, hi, w, decreasing), v in zip(CRITERIA, row):
        t = (v - lo) / (hi - lo)
        if decreasing:
            t = 1.0 - t
        s += w * t
    return s


def main():
    rng = random.Random(20240817)
    rows = []
    for _ in range(113):
        row = [round(rng.uniform(lo, hi), 2) for (_, lo, hi, _, _) in CRITERIA]
        rows.append(row)

    with open("data/cars.csv", "w") as f:
        f.write(",".join(name for (name, *_) in CRITERIA) + ",score\n")
        for row in rows:
            f.write(",".join(f"{v:g}" for v in row) + f",{score(row):.4f}\n")

    model = {
        "descriptor": {
            "kind": "linear-scorer",
            "features": [
                {"name": name, "min": lo, "max": hi}
                for (name, lo, hi, _, _) in CRITERIA
            ],
            "outputs": [{"name": "score", "absmin": 0.0, "absmax": 100.0}],
        },
        "linear": {
            "weights": [w for (_, _, _, w, _) in CRITERIA],
            "transforms": [
                [[lo, 1.0], [hi, 0.0]] if decreasing else [[lo, 0.0], [hi, 1.0]]
                for (_, lo, hi, _, decreasing) in CRITERIA
            ],
        },
    }
    with open("data/car_model.json", "w") as f:
        json.dump(model, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
