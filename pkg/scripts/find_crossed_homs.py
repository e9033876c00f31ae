#!/usr/bin/env python3
"""Grid-search crossed homomorphisms on a fixture triple.

Enumerates degree-0 maps with entries drawn from a small rational grid and
reports which ones satisfy the crossed identity, cross-checking each verdict
against the graph criterion.  Exponential in the number of parity-respecting
matrix entries, so keep the fixtures small.

Usage: python scripts/find_crossed_homs.py fixtures/aff11_adjoint.json [--grid -1 0 1]
"""

import argparse
import itertools
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from supercochain import io as sio
from supercochain.crossed import CrossedHom, check_crossed, graph_check
from supercochain.superalgebra import LinearMap
from supercochain.triple import LieSupActTriple


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("file")
    parser.add_argument("--grid", type=Fraction, nargs="+", default=[Fraction(-1), Fraction(0), Fraction(1)])
    parser.add_argument("--limit", type=int, default=20, help="stop after this many hits")
    args = parser.parse_args()

    pf = sio.parse(args.file)
    pf.require("g", "h", "action")
    t = LieSupActTriple(pf.g, pf.h, pf.action)
    gs, hs = t.g.space, t.h.space
    slots = [
        (k, j) for j in range(gs.dim) for k in range(hs.dim) if hs.parity(k) == gs.parity(j)
    ]
    print(f"{len(slots)} free entries, grid size {len(args.grid)} -> "
          f"{len(args.grid) ** len(slots)} candidates")
    hits = 0
    total = 0
    for values in itertools.product(args.grid, repeat=len(slots)):
        total += 1
        cols = [[Fraction(0)] * hs.dim for _ in range(gs.dim)]
        for (k, j), v in zip(slots, values):
            cols[j][k] = v
        D = CrossedHom(t, LinearMap(gs, hs, tuple(tuple(c) for c in cols)))
        ok = check_crossed(D).ok
        assert ok == graph_check(D)
        if ok:
            hits += 1
            desc = ", ".join(
                f"{gs.labels[j]} -> {v} {hs.labels[k]}" for (k, j), v in zip(slots, values) if v
            )
            print(f"  crossed: {desc or '0'}")
            if hits >= args.limit:
                print("  (limit reached)")
                break
    print(f"{hits} crossed homomorphisms among {total} candidates tried")


if __name__ == "__main__":
    main()
