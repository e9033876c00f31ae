#!/usr/bin/env python3
"""Survey cohomology tables for every fixture that defines a triple.

Prints, per fixture: the cochain space dimensions, the triple cohomology, and
(when a crossed homomorphism is present and valid) the twisted cohomology.

Usage: python scripts/cohomology_survey.py [--max-n N]
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from supercochain import io as sio
from supercochain.crossed import CrossedHom, ch_cohomology, ch_units, check_crossed, verify
from supercochain.triple import (
    LieSupActTriple,
    triple_cochain_dim,
    triple_cohomology,
)

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=3)
    args = parser.parse_args()

    for path in sorted(FIXTURES.glob("*.json")):
        pf = sio.parse(path)
        if pf.g is None or pf.action is None:
            continue
        t = LieSupActTriple(pf.g, pf.h, pf.action)
        if not t.check().ok:
            print(f"{path.name}: triple axioms fail, skipping")
            continue
        print(f"== {path.name}  (g dims {t.g.space.dims}, h dims {t.h.space.dims})")
        start = time.perf_counter()
        for n in range(1, args.max_n + 1):
            dim = triple_cochain_dim(t.g.space, t.h.space, n)
            even, odd = triple_cohomology(t, n)
            print(f"   triple H^{n}: even {even}  odd {odd}   (dim C^{n} = {dim})")
        if pf.crossed is not None and check_crossed(CrossedHom(t, pf.crossed)).ok:
            D = verify(CrossedHom(t, pf.crossed))
            for n in range(1, args.max_n + 1):
                dim = len(ch_units(t.g.space, t.h.space, n))
                even, odd = ch_cohomology(D, n)
                print(f"   crossed H^{n}: even {even}  odd {odd}   (dim C^{n} = {dim})")
        print(f"   ({(time.perf_counter() - start) * 1000:.0f} ms)")


if __name__ == "__main__":
    main()
