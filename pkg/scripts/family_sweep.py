"""Sweep the three-dimensional nullity family over a few values of a.

For each value, print k, the *-Ricci diagonal, r*, the traced lambda, whether
a constant lambda closes the soliton equation, and whether e1 is Killing.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from importlib import resources

from nkcontact import soliton as sol
from nkcontact.engine import analyze
from nkcontact.geomfile import load_manifold


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("values", nargs="*", default=["-2", "-1", "0", "1/2", "1", "2"])
    args = ap.parse_args()

    text = resources.files("nkcontact").joinpath("data/example_nk.geom").read_text()
    doc = load_manifold(text)
    print(f"{'a':>5} {'k':>6} {'S*11':>6} {'S*22':>6} {'r*':>6} {'traced lambda':>20} {'exact':>6} {'killing':>8}")
    for raw in args.values:
        an = analyze(doc.substitute(Fraction(raw)), 1)
        m, cfg, diag = an.manifold, an.doc.soliton, an.star.s_star.comps
        traced = sol.solve_lambda(m, an.star, cfg, trace_only=True)
        exact = sol.solve_lambda(m, an.star, cfg) is not None
        killing = sol.classify_field(m, an.contact, cfg).killing
        print(f"{raw:>5} {str(an.k):>6} {str(diag[0, 0]):>6} {str(diag[1, 1]):>6} "
              f"{str(an.star.r_star):>6} {str(traced):>20} {str(exact):>6} {str(killing):>8}")


if __name__ == "__main__":
    main()
