#!/usr/bin/env python3
"""Build the survey bases, classify both variants, and print a summary.

Usage: python3 scripts/construction_survey.py [--max-n N] [beta ...]
"""

import argparse
import time

from markovforge import (BetaValue, build_spectrum, classify, delete_loop,
                         unit_sum_enclosure)
from markovforge.intervals import decimal_bounds

DEFAULT_BASES = ["2", "3", "e^7/10", "8"]


def describe(tag, spectrum):
    rep = classify(spectrum)
    h = rep.entropy
    h_text = decimal_bounds(h, 12)[0] if h is not None else "?"
    f_text = (decimal_bounds(rep.F_at_L, 12)[0]
              if rep.F_at_L is not None else "?")
    print(f"  {tag:<10} {rep.verdict.value:<18} entropy ~ {h_text:<15} "
          f"F(L) ~ {f_text}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("bases", nargs="*", default=DEFAULT_BASES)
    ap.add_argument("--max-n", type=int, default=64)
    args = ap.parse_args()

    for text in args.bases:
        t0 = time.monotonic()
        s = build_spectrum(BetaValue.parse(text), args.max_n)
        elapsed = time.monotonic() - t0
        total = unit_sum_enclosure(s)
        print(f"beta = {text}  built in {elapsed:.2f}s, "
              f"unit sum width {float(total.width):.2e}")
        describe("recurrent", s)
        describe("transient", delete_loop(s))
        print()


if __name__ == "__main__":
    main()
