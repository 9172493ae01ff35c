"""Recompute the tensor product tables for A4, B3, C3 and D4.

Each row lists lambda, mu, nu and the multiplicity of V(nu) in V(lambda) x V(mu),
computed by Steinberg's formula with exact partition function values.

    python demos/tensor_tables.py           # moderate rows only
    python demos/tensor_tables.py --large   # also the rows with huge weights
"""

import sys
import time

from kostant import RootSystem, from_funda_to_cano, tensor_coefficient

A4 = [
    ((9, 7, 3, 0, 0), (9, 9, 3, 2, 0), (10, 9, 9, 8, 6)),
    ((18, 11, 9, 4, 2), (20, 17, 9, 4, 0), (26, 25, 19, 16, 8)),
    ((30, 24, 17, 10, 2), (27, 23, 13, 8, 2), (47, 36, 33, 29, 11)),
    ((73, 58, 41, 21, 4), (77, 61, 46, 27, 1), (124, 117, 71, 52, 45)),
]
A4_LARGE = [
    ((6797, 5843, 4136, 2770, 707), (6071, 5175, 4035, 1169, 135), (10527, 9398, 8040, 5803, 3070)),
]
# fundamental weight coordinates
BCD = [
    ("B", 3, (46, 42, 41), (14, 58, 17), (50, 54, 38)),
    ("C", 3, (34, 56, 36), (44, 51, 49), (37, 51, 54)),
    ("D", 4, (12, 22, 9, 30), (28, 14, 15, 26), (10, 24, 10, 26)),
]
BCD_LARGE = [
    ("B", 3, (5567, 2146, 6241), (6932, 1819, 8227), (3538, 4733, 3648)),
]


def show(rs, lam, mu, nu, label=None):
    t0 = time.perf_counter()
    c = tensor_coefficient(rs, lam, mu, nu)
    label = label or (lam, mu, nu)
    print(f"  {label}  ->  {c}   ({time.perf_counter() - t0:.2f}s)")


def main(large=False):
    rs = RootSystem("A", 4)
    print("A4 (gl5 weights)")
    for row in A4 + (A4_LARGE if large else []):
        show(rs, *row)
    for fam, rank, *ws in BCD + (BCD_LARGE if large else []):
        rs = RootSystem(fam, rank)
        print(f"{fam}{rank} (fundamental coordinates)")
        show(rs, *[from_funda_to_cano(rs, w) for w in ws], label=tuple(ws))


if __name__ == "__main__":
    main("--large" in sys.argv[1:])
