#!/usr/bin/env python3
"""Survey the finite-etale necessary condition over a catalog of known rings.

Rings whose membership status is an open question are tagged "open": for them
the checker's PASS only records that the one-sided necessary condition holds.
"""

from __future__ import annotations

import argparse
import json

from defring.presentations import IntegerPolynomialPresentation, r_alpha_presentation
from defring.presented import etale_check


def catalog():
    P = IntegerPolynomialPresentation.parse
    entries = [
        ("Z2[eps]", P(2, ["X"], ["X^2"]), "known: excluded"),
        ("Z2[[X]] (polynomial model)", P(2, ["X"], []), "known: excluded"),
        ("Z2[X]/(X^2-1)", P(2, ["X"], ["X^2 - 1"]), "known: member"),
        ("Z2[X]/(X^4-1)", P(2, ["X"], ["X^4 - 1"]), "known: member"),
        ("Z3[X]/(X^3-1)", P(3, ["X"], ["X^3 - 1"]), "known: member"),
        ("Z5[sqrt5]", P(5, ["X"], ["X^2 - 5"]), "known: member"),
        ("Z2[X]/(X^2-2X)", P(2, ["X"], ["X^2 - 2*X"]), "open"),
        ("Z2[X]/(X^2-4X)", P(2, ["X"], ["X^2 - 4*X"]), "open"),
        ("Z5[X]/(X^2-5X)", P(5, ["X"], ["X^2 - 5*X"]), "open"),
        ("Z2[X]/(X^2, 2X)", P(2, ["X"], ["X^2", "2*X"]), "open"),
        ("Z2[T]/(T^2+4)", P(2, ["T"], ["T^2 + 4"]), "known: member (dim > 1 route)"),
    ]
    for alpha in (0, 1, 2, 3):
        entries.append((f"R_alpha({alpha})", r_alpha_presentation(alpha, 2),
                        "known: excluded (uncountable family)"))
    return entries


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine output")
    args = parser.parse_args()

    rows = []
    for name, pres, status in catalog():
        rep = etale_check(pres)
        rows.append({"ring": name, "status": status, "verdict": rep.verdict,
                     "dim": rep.dim if rep.finite_dimensional else "infinite",
                     "witness": None if rep.witness is None else rep.witness[0]})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["ring"]) for r in rows)
    for r in rows:
        note = f"  witness {r['witness']}" if r["witness"] else ""
        print(f"{r['ring']:<{width}}  {r['verdict']:<16}  dim={r['dim']:<9} "
              f"[{r['status']}]{note}")


if __name__ == "__main__":
    main()
