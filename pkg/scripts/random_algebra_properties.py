"""Run the connection invariants on random left-invariant metrics and time them."""

from __future__ import annotations

import argparse
import time

from nkcontact.algebras import random_frame_manifold
from nkcontact.connection import levi_civita, riemann
from nkcontact.frame import vector
from nkcontact.invariants import connection_checks


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--orthonormal", action="store_true")
    args = ap.parse_args()

    bad = 0
    for dim in args.dims:
        for seed in range(args.seeds):
            t0 = time.perf_counter()
            m = random_frame_manifold(dim, seed, orthonormal=args.orthonormal)
            conn = levi_civita(m)
            probe = vector(range(1, dim + 1))
            failed = [e.id for e in connection_checks(m, conn, riemann(m, conn, 1), [probe])
                      if e.status != "pass"]
            bad += bool(failed)
            print(f"{m.name:<32} {time.perf_counter() - t0:6.2f}s  {', '.join(failed) or 'ok'}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
