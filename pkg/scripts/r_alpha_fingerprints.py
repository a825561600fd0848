#!/usr/bin/env python3
"""Fingerprint the R_alpha family at residue-field truncation (m = 1).

The family is pairwise non-isomorphic except for alpha = +-beta; differing
fingerprints certify non-isomorphism, while equal fingerprints are
inconclusive (a full isomorphism test is deliberately out of scope).
"""

from __future__ import annotations

import argparse
from itertools import combinations

from defring.local_ring import fingerprint, ring_from_truncated_presentation
from defring.presentations import r_alpha_presentation


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=2,
                        help="residue characteristic; the truncation has p^13 "
                             "elements, so keep p small")
    parser.add_argument("--alphas", type=int, nargs="*", default=[0, 1, 2])
    parser.add_argument("--cap-elements", type=int, default=10 ** 7)
    args = parser.parse_args()

    prints = {}
    for alpha in args.alphas:
        pres = r_alpha_presentation(alpha, args.p)
        R = ring_from_truncated_presentation(pres, 1)
        fp = fingerprint(R, cap=args.cap_elements)
        prints[alpha] = fp
        print(f"alpha={alpha}: size={fp.size}, hilbert={fp.hilbert}, "
              f"nilpotency counts={fp.nilpotency_index_counts}")

    print()
    for a, b in combinations(args.alphas, 2):
        if prints[a] != prints[b]:
            verdict = "distinct fingerprints: certified non-isomorphic"
        elif (a - b) % args.p == 0 or (a + b) % args.p == 0:
            verdict = "equal fingerprints (isomorphic: alpha = +-beta mod p)"
        else:
            verdict = "equal fingerprints: inconclusive"
        print(f"alpha={a} vs alpha={b}: {verdict}")


if __name__ == "__main__":
    main()
