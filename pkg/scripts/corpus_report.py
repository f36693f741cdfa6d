#!/usr/bin/env python3
"""Run the full analysis over the standard corpus and print one summary
line per algebra: verdicts, cross-validated dimensions, bounds."""

import sys
import time

sys.path.insert(0, "src")

from quiveralg.checks import analyze
from quiveralg.families import (auslander_algebra, canonical_2222,
                                dynkin_path_algebra, linear_nakayama,
                                thm39_type2)


def corpus():
    yield "kA2", dynkin_path_algebra(2), 1
    yield "nakayama-3", linear_nakayama(3), 2
    yield "nakayama-4", linear_nakayama(4), 2
    yield "thm39-2-gamma", thm39_type2(2, ["gamma"]), 2
    yield "thm39-2-delta", thm39_type2(2, ["delta"]), 2
    yield "thm39-3-gamma.gamma", thm39_type2(3, ["gamma", "gamma"]), 2
    yield "thm39-3-gamma.delta", thm39_type2(3, ["gamma", "delta"]), 2
    yield "canonical-lam2", canonical_2222(2), 2
    yield "canonical-lam3", canonical_2222(3), 2
    yield "aus-A3-nonlinear", auslander_algebra(
        dynkin_path_algebra(3, ["f", "b"])), 2
    yield "1-aus-A4", auslander_algebra(dynkin_path_algebra(4)), 2


def main():
    hdr = (f"{'algebra':22} {'dim':>4} {'gld':>3} {'nRF':>5} {'SI~':>5} "
           f"{'IG~':>3} {'dim~(3x)':>12} {'Gamma':>6} {'t(s)':>6}")
    print(hdr)
    print("-" * len(hdr))
    for label, A, n in corpus():
        t0 = time.time()
        rep = analyze(A, n, algebra_id=label)
        cv = rep.cross_validation
        tri = "{}={}={}".format(cv.get("preprojective_module_dim", "?"),
                                cv.get("preprojective_algebra_dim", "?"),
                                cv.get("amiot_hom_total", "?"))
        print(f"{label:22} {rep.dim:>4} {rep.gldim!s:>3} "
              f"{rep.n_rep_finite['value']!s:>5} "
              f"{rep.self_injective_tilde.get('value')!s:>5} "
              f"{rep.ig_dimension!s:>3} {tri:>12} "
              f"{rep.gamma.get('dim', '-')!s:>6} {time.time() - t0:>6.1f}")


if __name__ == "__main__":
    main()
