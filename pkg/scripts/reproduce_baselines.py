#!/usr/bin/env python3
"""Print the closed-form baseline table for the published dataset sizes.

For each dataset this reproduces the theoretical all-vulnerable F2 score
5V/(5V+B) and the expected F2 of a coin-flip predictor at the dataset's
vulnerable fraction.
"""

from fractions import Fraction

from favd.metrics import all_vulnerable_f2, random_baseline_f2

DATASETS = [
    # name, vulnerable, benign
    ("Asterisk", 49, 10_102),
    ("FFmpeg", 184, 4_379),
    ("LibPNG", 31, 491),
    ("LibTIFF", 75, 522),
    ("Pidgin", 26, 6_722),
    ("VLC", 37, 2_699),
    ("loo", 402, 24_906),
    ("VDISC", 72_612, 932_741),
]


def main() -> None:
    print(f"{'dataset':<10} {'vuln':>7} {'benign':>8} {'% vuln':>7} "
          f"{'all-vuln F2':>12} {'random F2':>10}")
    for name, v, b in DATASETS:
        fraction = Fraction(v, v + b)
        print(
            f"{name:<10} {v:>7} {b:>8} {float(100 * fraction):>6.1f}% "
            f"{float(all_vulnerable_f2(v, b)):>12.3f} "
            f"{float(random_baseline_f2(fraction)):>10.3f}"
        )


if __name__ == "__main__":
    main()
