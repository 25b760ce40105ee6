#!/usr/bin/env python3
# Copyright 2026 The isogeny-lgp Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the Frobenius trace fixtures by naive point counting."""

import argparse
from sympy import primerange

CURVES = {
    # j = 2268945/128; bad reduction at 2, 5, 7
    "j2268945_128.ap": (-84035, -8907710, {2, 5, 7}, None),
    # j = 1728, twisted so that 2 and 3 are the bad primes. Only primes inert
    # in Q(i) are kept: there Frobenius has trace 0 in every twist. Split
    # primes such as 5 fail mod 16 already and depend on the twist.
    "j1728.ap": (9, 0, {2, 3}, lambda p: p % 4 == 3),
}


def trace(a, b, p):
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    points = 1 + sum(squares.get((x * x * x + a * x + b) % p, 0) for x in range(p))
    return p + 1 - points


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="fixtures")
    ap.add_argument("--bound", type=int, default=1000)
    args = ap.parse_args()
    for name, (a, b, bad, keep) in CURVES.items():
        with open(f"{args.out}/{name}", "w") as f:
            f.write(f"# y^2 = x^3 + ({a})x + ({b}); bad primes {sorted(bad)} omitted\n")
            if keep is not None:
                f.write("# primes inert in Q(i) only\n")
            f.write("# p a_p\n")
            for p in primerange(2, args.bound):
                if p not in bad and (keep is None or keep(p)):
                    f.write(f"{p} {trace(a, b, p)}\n")


if __name__ == "__main__":
    main()
