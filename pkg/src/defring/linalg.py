"""Howell normal forms over GR(p^m, r).

GR(p^m, r) is a chain ring, so submodules of a finite module admit a canonical
echelon ("Howell") basis: every column has at most one pivot, pivot entries are
exact powers of p, and the form is closed under multiplication by p-powers.
Canonical coset representatives make membership tests, module quotients, kernel
computation and exact division uniform linear algebra.

The ambient module is a direct sum of W/p^{c_j} for per-column order exponents
c_j <= m; torsion columns are handled by adjoining the rows p^{c_j} e_j.
"""

from __future__ import annotations

from math import prod
from typing import List, Optional, Sequence, Tuple

from .galois import GaloisRing, GRElt

Vec = List[GRElt]


class HowellForm:
    """Canonical basis of the span of `rows` inside (W/p^{c_1}) x ... x (W/p^{c_n})."""

    def __init__(self, ring: GaloisRing, rows: Sequence[Sequence[GRElt]], ncols: int,
                 ambient_orders: Optional[Sequence[int]] = None):
        self.ring = ring
        self.ncols = ncols
        self.ambient_orders = tuple(ambient_orders) if ambient_orders is not None \
            else (ring.m,) * ncols
        self._compute([list(r) for r in rows])

    def _compute(self, pending: List[Vec]) -> None:
        W = self.ring
        m, p, zero = W.m, W.p, W.zero
        n = self.ncols
        for j, c in enumerate(self.ambient_orders):
            if c < m:
                row = [zero] * n
                row[j] = W.from_int(p ** c)
                pending.append(row)
        pivots: dict[int, Vec] = {}
        pivval: dict[int, int] = {}

        def install(row: Vec, j: int, v: int) -> None:
            _, u = W.unit_part(row[j])
            if u != W.one:
                ui = W.inv(u)
                for k in range(j, n):
                    row[k] = W.mul(ui, row[k])
            pivots[j] = row
            pivval[j] = v
            if v > 0:
                extra = W.from_int(p ** (m - v))
                pending.append([W.mul(extra, e) for e in row])

        while pending:
            row = pending.pop()
            j = 0
            while j < n:
                e = row[j]
                if e == zero:
                    j += 1
                    continue
                v = W.val(e)
                if j not in pivots:
                    install(row, j, v)
                    break
                vj = pivval[j]
                if v >= vj:
                    q = W.divide_by_p_power(e, vj)
                    prow = pivots[j]
                    for k in range(j, n):
                        row[k] = W.sub(row[k], W.mul(q, prow[k]))
                    # row[j] is now zero; rescan the same column index
                else:
                    old = pivots[j]
                    install(row, j, v)
                    pending.append(old)
                    break

        # canonicalize pivot rows against each other
        cols = sorted(pivots)
        for j in cols:
            row = pivots[j]
            for j2 in cols:
                if j2 <= j:
                    continue
                e = row[j2]
                if e == zero:
                    continue
                pv = p ** pivval[j2]
                q = tuple(c // pv for c in e)
                if q == zero:
                    continue
                prow = pivots[j2]
                for k in range(j2, n):
                    row[k] = W.sub(row[k], W.mul(q, prow[k]))
        self.pivot_cols: Tuple[int, ...] = tuple(cols)
        self.pivot_vals: dict[int, int] = pivval
        self.rows: List[Vec] = [pivots[j] for j in cols]
        self._pivots = pivots

    def reduce(self, vec: Sequence[GRElt]) -> Vec:
        """Canonical representative of vec modulo the span (and ambient orders)."""
        W = self.ring
        p, zero = W.p, W.zero
        n = self.ncols
        out = list(vec)
        for j in self.pivot_cols:
            e = out[j]
            if e == zero:
                continue
            pv = p ** self.pivot_vals[j]
            q = tuple(c // pv for c in e)
            if q == zero:
                continue
            prow = self._pivots[j]
            for k in range(j, n):
                out[k] = W.sub(out[k], W.mul(q, prow[k]))
        return out

    def contains(self, vec: Sequence[GRElt]) -> bool:
        zero = self.ring.zero
        return all(e == zero for e in self.reduce(vec))

    def quotient_orders(self) -> Tuple[int, ...]:
        """Order exponent of each coordinate in the quotient module."""
        return tuple(self.pivot_vals.get(j, self.ambient_orders[j])
                     for j in range(self.ncols))


class QuotientModule:
    """The ambient module modulo the span of the given rows, with canonical coordinates."""

    def __init__(self, ring: GaloisRing, rows: Sequence[Sequence[GRElt]], ncols: int,
                 ambient_orders: Optional[Sequence[int]] = None):
        self.ring = ring
        self.ncols = ncols
        self.form = HowellForm(ring, rows, ncols, ambient_orders)
        self.orders = self.form.quotient_orders()
        self.live: Tuple[int, ...] = tuple(j for j, c in enumerate(self.orders) if c > 0)
        self.size = prod((ring.p ** c) ** ring.r for c in self.orders)

    def nf(self, vec: Sequence[GRElt]) -> Vec:
        return self.form.reduce(vec)

    def is_zero(self, vec: Sequence[GRElt]) -> bool:
        return self.form.contains(vec)


def submodule_size(ring: GaloisRing, rows: Sequence[Sequence[GRElt]], ncols: int,
                   ambient_orders: Optional[Sequence[int]] = None) -> int:
    """Cardinality of the span inside the ambient module."""
    ambient = ambient_orders if ambient_orders is not None else (ring.m,) * ncols
    total = prod((ring.p ** c) ** ring.r for c in ambient)
    q = QuotientModule(ring, rows, ncols, ambient)
    return total // q.size


class LinearMapSolver:
    """Solve a*x = b and compute kernels for a W-linear map between torsion modules.

    The map is given by `images`: the image vector of each domain coordinate
    generator.  Internally works on augmented rows [image | domain coordinate].
    """

    def __init__(self, ring: GaloisRing, images: Sequence[Sequence[GRElt]],
                 image_ncols: int, image_orders: Optional[Sequence[int]] = None,
                 domain_orders: Optional[Sequence[int]] = None):
        W = ring
        self.ring = W
        self.nd = len(images)
        self.ni = image_ncols
        self.domain_orders = tuple(domain_orders) if domain_orders is not None \
            else (W.m,) * self.nd
        img_orders = tuple(image_orders) if image_orders is not None else (W.m,) * image_ncols
        rows = []
        for i, img in enumerate(images):
            aug = [W.zero] * self.nd
            aug[i] = W.one
            rows.append(list(img) + aug)
        # augmented ambient: image torsion applies, domain coefficients are free
        self.form = HowellForm(W, rows, image_ncols + self.nd,
                               list(img_orders) + [W.m] * self.nd)

    def solve(self, b: Sequence[GRElt]) -> Optional[Vec]:
        """A particular x with a*x = b in the image module, or None."""
        W = self.ring
        res = self.form.reduce(list(b) + [W.zero] * self.nd)
        if any(e != W.zero for e in res[:self.ni]):
            return None
        x = [W.neg(e) for e in res[self.ni:]]
        return self._canon_domain(x)

    def kernel_generators(self) -> List[Vec]:
        """Generators of {x : a*x = 0}, as domain vectors (may include torsion-trivial ones)."""
        W = self.ring
        gens = []
        for row in self.form.rows:
            if all(e == W.zero for e in row[:self.ni]):
                gens.append(self._canon_domain(row[self.ni:]))
        return gens

    def has_nonzero_kernel(self) -> bool:
        zero = self.ring.zero
        return any(any(e != zero for e in g) for g in self.kernel_generators())

    def _canon_domain(self, x: Sequence[GRElt]) -> Vec:
        p = self.ring.p
        out = []
        for e, c in zip(x, self.domain_orders):
            pc = p ** c
            out.append(tuple(v % pc for v in e))
        return out
