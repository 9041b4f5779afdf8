"""Compare the two curvature sign conventions on a manifold file.

Reports, per convention, the nullity constant read from h^2 and from the
curvature, whether the *-Ricci closed form holds, and which sign reconciles it.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from nkcontact.engine import analyze
from nkcontact.geomfile import load_manifold_file
from nkcontact.star import check_eta_einstein_form


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("file")
    ap.add_argument("--param", type=Fraction, default=None, help="value for the manifold parameter")
    args = ap.parse_args()

    doc = load_manifold_file(args.file)
    if args.param is not None:
        doc = doc.substitute(args.param)
    for sign in (1, -1):
        an = analyze(doc, sign)
        if an.contact is None:
            print(f"sign {sign:+d}: no contact structure")
            continue
        entry = check_eta_einstein_form(an.manifold, an.contact, an.star, an.k, an.reconciling)
        print(f"sign {sign:+d}: k(h^2) = {an.k}  {an.nk_note or 'curvature agrees'}")
        print(f"         closed form {entry.status}, reconciling sign {entry.derived.get('reconciling_sign')}")


if __name__ == "__main__":
    main()
