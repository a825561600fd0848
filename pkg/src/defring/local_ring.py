"""Finite local rings with residue field F_{p^r}, as structure-constant tables.

A ring is a finite module over the Galois ring W = GR(p^m, r) with a designated
basis, per-basis additive orders p^{c_j}, an N x N table of basis products, a
reduction map onto the residue field, and designated algebra generators.  This
uniform shape makes ideals, quotients, enumeration and homomorphism search all
plain linear algebra over the chain ring W.

Two modes:
  * "finite": an honest finite ring; everything is exact.
  * "precision": the ring models a characteristic-zero local ring at working
    precision m.  Elements carry a known-precision exponent; division by p
    costs one level of precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .galois import GaloisRing, GRElt, default_irreducible
from .linalg import HowellForm, LinearMapSolver, QuotientModule
from .polys import Monomial, Poly, grlex_key, mono_mul
from .presentations import IntegerPolynomialPresentation

DEFAULT_ELEMENT_CAP = 10 ** 6
DEFAULT_MAP_CAP = 10 ** 7
DEFAULT_DEGREE_CAP = 16


class CapExceededError(RuntimeError):
    """An enumeration would exceed its configured cap; caps are never silently sampled."""


class NotFiniteAtCapError(RuntimeError):
    """The truncated presentation has no finite monomial basis within the degree cap."""


class NonUnitError(ArithmeticError):
    pass


class ZeroDivisorError(ArithmeticError):
    pass


class PrecisionExhaustedError(ArithmeticError):
    pass


class RingConstructionError(ValueError):
    pass


class RingElement:
    """Element of a FiniteLocalRing: canonical coefficient vector, optional precision."""

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring: "FiniteLocalRing", coeffs: Sequence[GRElt],
                 prec: Optional[int] = None):
        self.ring = ring
        self.coeffs: Tuple[GRElt, ...] = ring._canon(coeffs)
        self.prec = ring.base.m if prec is None else prec

    def _wrap(self, coeffs, prec):
        return RingElement(self.ring, coeffs, prec)

    def __add__(self, other: "RingElement") -> "RingElement":
        W = self.ring.base
        return self._wrap([W.add(a, b) for a, b in zip(self.coeffs, other.coeffs)],
                          min(self.prec, other.prec))

    def __sub__(self, other: "RingElement") -> "RingElement":
        W = self.ring.base
        return self._wrap([W.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)],
                          min(self.prec, other.prec))

    def __neg__(self) -> "RingElement":
        W = self.ring.base
        return self._wrap([W.neg(a) for a in self.coeffs], self.prec)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self._wrap(self.ring._mul_coeffs(self.coeffs, other.coeffs),
                          min(self.prec, other.prec))

    def __pow__(self, e: int) -> "RingElement":
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale_int(self, n: int) -> "RingElement":
        W = self.ring.base
        return self._wrap([W.scal(n, a) for a in self.coeffs], self.prec)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingElement) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def agrees_at(self, other: "RingElement", prec: int) -> bool:
        """Coefficient-wise congruence modulo p^prec."""
        pk = self.ring.base.p ** prec
        return all(tuple(x % pk for x in a) == tuple(y % pk for y in b)
                   for a, b in zip(self.coeffs, other.coeffs))

    def is_zero(self) -> bool:
        return all(a == self.ring.base.zero for a in self.coeffs)

    def is_unit(self) -> bool:
        return self.ring.reduce_element(self) != self.ring.base.residue_field.zero

    def key(self) -> Tuple[int, ...]:
        """Deterministic flat integer key (coefficient-vector lexicographic order)."""
        return tuple(x for c in self.coeffs for x in c)

    def __repr__(self):
        return f"<{self.ring.describe_element(self)}>"


class FiniteLocalRing:
    """Finite local ring (or precision-m model of a characteristic-zero local ring)."""

    def __init__(self, base: GaloisRing, orders: Sequence[int],
                 mul_table: Sequence[Sequence[Sequence[GRElt]]],
                 one_coeffs: Sequence[GRElt],
                 residue_coeffs: Sequence[GRElt],
                 generators: Sequence[Sequence[GRElt]],
                 basis_names: Sequence[str],
                 basis_monos: Optional[Sequence[Monomial]] = None,
                 mode: str = "finite",
                 presentation: Optional[IntegerPolynomialPresentation] = None,
                 validate: bool = True,
                 label: str = ""):
        if mode not in ("finite", "precision"):
            raise ValueError(f"unknown mode {mode!r}")
        self.base = base
        self.N = len(orders)
        self.orders = tuple(orders)
        self.mul_table = tuple(tuple(tuple(v) for v in row) for row in mul_table)
        self.residue_coeffs = tuple(residue_coeffs)
        self.basis_names = tuple(basis_names)
        self.basis_monos = tuple(basis_monos) if basis_monos is not None else None
        self.mode = mode
        self.presentation = presentation
        self.label = label or f"ring(N={self.N}, base={base!r})"
        self.size = prod((base.p ** c) ** base.r for c in self.orders)
        self.one = RingElement(self, one_coeffs)
        self.zero = RingElement(self, [base.zero] * self.N)
        self.generators: Tuple[RingElement, ...] = tuple(
            RingElement(self, g) for g in generators)
        self._max_ideal: Optional[Ideal] = None
        self._residue_ring: Optional[FiniteLocalRing] = None
        if mode == "precision" and any(c != base.m for c in self.orders):
            raise RingConstructionError(
                "precision model requires a torsion-free truncation "
                "(p-torsion detected in the basis)")
        if validate:
            self._validate()

    # -- canonicalization and arithmetic kernels ---------------------------

    def _canon(self, coeffs: Sequence[GRElt]) -> Tuple[GRElt, ...]:
        p = self.base.p
        out = []
        for a, c in zip(coeffs, self.orders):
            pc = p ** c
            out.append(tuple(x % pc for x in a))
        return tuple(out)

    def _mul_coeffs(self, a: Sequence[GRElt], b: Sequence[GRElt]) -> List[GRElt]:
        W = self.base
        zero = W.zero
        out = [zero] * self.N
        table = self.mul_table
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            row = table[i]
            for j, bj in enumerate(b):
                if bj == zero:
                    continue
                cij = W.mul(ai, bj)
                for k, s in enumerate(row[j]):
                    if s != zero:
                        out[k] = W.add(out[k], W.mul(cij, s))
        return out

    # -- element constructors ----------------------------------------------

    def element(self, coeffs: Sequence[GRElt], prec: Optional[int] = None) -> RingElement:
        return RingElement(self, coeffs, prec)

    def from_base(self, c: GRElt, prec: Optional[int] = None) -> RingElement:
        W = self.base
        return RingElement(self, [W.mul(c, x) for x in self.one.coeffs], prec)

    def from_int(self, n: int, prec: Optional[int] = None) -> RingElement:
        return self.from_base(self.base.from_int(n), prec)

    def basis_element(self, j: int) -> RingElement:
        coeffs = [self.base.zero] * self.N
        coeffs[j] = self.base.one
        return RingElement(self, coeffs)

    @property
    def basis(self) -> List[RingElement]:
        return [self.basis_element(j) for j in range(self.N)]

    # -- residue field -----------------------------------------------------

    @property
    def residue_field(self) -> GaloisRing:
        return self.base.residue_field

    @property
    def residue_ring(self) -> "FiniteLocalRing":
        """The residue field, packaged as a FiniteLocalRing (for representations over k)."""
        if self._residue_ring is None:
            if self.base.m == 1 and self.N == 1 and self.orders == (1,):
                self._residue_ring = self
            else:
                self._residue_ring = build_galois_ring(
                    self.base.p, 1, self.base.r, self.base.h)
        return self._residue_ring

    def reduce_element(self, x: RingElement) -> GRElt:
        """Reduction to the residue field F_{p^r}."""
        k = self.residue_field
        W = self.base
        out = k.zero
        for a, lam in zip(x.coeffs, self.residue_coeffs):
            out = k.add(out, k.mul(W.reduce(a), lam))
        return out

    def reduce_to_residue_ring(self, x: RingElement) -> RingElement:
        return self.residue_ring.element([self.reduce_element(x)])

    def unity_lift(self, c: GRElt) -> RingElement:
        """Canonical section of the reduction: c times the unity."""
        return self.from_base(self.base.lift(c))

    # -- units --------------------------------------------------------------

    def invert(self, x: RingElement) -> RingElement:
        if not x.is_unit():
            raise NonUnitError(f"{self.describe_element(x)} is not a unit")
        k = self.residue_field
        c = self.reduce_element(x)
        cinv = k.pow(c, k.size - 2) if k.size > 2 else c
        y = self.unity_lift(cinv)
        two = self.from_int(2)
        for _ in range(8 * max(1, self.base.m)):
            err = self.one - x * y
            if err.is_zero():
                return self.element(y.coeffs, x.prec)
            y = y * (two - x * y)
        raise RingConstructionError("unit inversion failed to converge "
                                    "(ring is not local?)")

    # -- enumeration ---------------------------------------------------------

    def enumerate_elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> List[RingElement]:
        """All elements in coefficient-vector lexicographic order."""
        if self.size > cap:
            raise CapExceededError(
                f"ring has {self.size} elements, above the cap {cap}")
        p, r = self.base.p, self.base.r
        ranges = []
        for c in self.orders:
            pc = p ** c
            ranges.extend([range(pc)] * r)
        out = []
        for flat in product(*ranges):
            coeffs = [tuple(flat[j * r:(j + 1) * r]) for j in range(self.N)]
            out.append(RingElement(self, coeffs))
        return out

    # -- validation ----------------------------------------------------------

    def _validate(self):
        W = self.base
        k = self.residue_field
        zero = W.zero
        basis = self.basis
        # additive orders are consistent with the table: p^{c_i} e_i = 0 is
        # built into canonicalization; check the table respects torsion
        for i in range(self.N):
            for j in range(self.N):
                prod_ij = basis[i] * basis[j]
                cij = min(self.orders[i], self.orders[j])
                killed = prod_ij.scale_int(W.p ** cij)
                if not killed.is_zero():
                    raise RingConstructionError(
                        f"structure constants violate additive orders at ({i},{j})")
        # ring laws on all basis triples
        for i in range(self.N):
            for j in range(self.N):
                if (basis[i] * basis[j]) != (basis[j] * basis[i]):
                    raise RingConstructionError(f"multiplication not commutative at ({i},{j})")
                if (self.one * basis[j]).coeffs != basis[j].coeffs:
                    raise RingConstructionError("unity fails on basis")
                for l in range(self.N):
                    if ((basis[i] * basis[j]) * basis[l]) != (basis[i] * (basis[j] * basis[l])):
                        raise RingConstructionError(
                            f"multiplication not associative at ({i},{j},{l})")
        # reduction is a surjective ring homomorphism
        if self.reduce_element(self.one) != k.one:
            raise RingConstructionError("reduction does not send 1 to 1")
        for i in range(self.N):
            for j in range(self.N):
                lhs = k.mul(self.reduce_element(basis[i]), self.reduce_element(basis[j]))
                if lhs != self.reduce_element(basis[i] * basis[j]):
                    raise RingConstructionError("reduction is not multiplicative")
        # locality: the kernel of reduction is spanned by nilpotents
        for g in maximal_ideal(self).module_basis:
            if not self._is_nilpotent(g):
                raise RingConstructionError(
                    "kernel of reduction contains a non-nilpotent element; "
                    "the ring is not local with the claimed residue field")

    def _is_nilpotent(self, x: RingElement) -> bool:
        # x nilpotent iff x^(N*m) = 0: the residue dimension bounds the mod-p
        # nilpotency index and p^m = 0, so a power-of-two exponent >= N*m decides
        e = max(1, self.N) * self.base.m
        return (x ** (1 << (e - 1).bit_length())).is_zero()

    def nilpotency_index(self, x: RingElement) -> Optional[int]:
        """Least e with x^e = 0, or None if x is not nilpotent."""
        if not self._is_nilpotent(x):
            return None
        e = 1
        y = x
        while not y.is_zero():
            y = y * x
            e += 1
        return e

    # -- display --------------------------------------------------------------

    def describe_element(self, x: RingElement) -> str:
        W = self.base
        parts = []
        for a, name in zip(x.coeffs, self.basis_names):
            if a == W.zero:
                continue
            if W.r == 1:
                cs = str(a[0])
            else:
                cs = "(" + ",".join(str(c) for c in a) + ")"
            parts.append(cs if name == "1" else (f"{name}" if cs == "1" else f"{cs}*{name}"))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FiniteLocalRing[{self.label}]"


# -- ideals --------------------------------------------------------------------


class Ideal:
    """Ideal of a FiniteLocalRing, stored with an echelonized module basis."""

    def __init__(self, ring: FiniteLocalRing, generators: Sequence[RingElement]):
        self.ring = ring
        self.generators = tuple(generators)
        rows = []
        for g in generators:
            for i in range(ring.N):
                rows.append(list((ring.basis_element(i) * g).coeffs))
        self.form = HowellForm(ring.base, rows, ring.N, ring.orders)
        self.module_basis: Tuple[RingElement, ...] = tuple(
            RingElement(ring, row) for row in self.form.rows)
        p, r = ring.base.p, ring.base.r
        self.size = prod(
            p ** ((ring.orders[j] - self.form.pivot_vals[j]) * r)
            for j in self.form.pivot_cols)

    def contains(self, x: RingElement) -> bool:
        return self.form.contains(list(x.coeffs))

    def reduce(self, x: RingElement) -> RingElement:
        """Canonical coset representative of x modulo the ideal."""
        return RingElement(self.ring, self.form.reduce(list(x.coeffs)), x.prec)

    def is_proper(self) -> bool:
        return not self.contains(self.ring.one)

    def is_zero(self) -> bool:
        return self.size == 1

    def enumerate_elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> List[RingElement]:
        """All ideal elements, in coefficient-vector lexicographic order."""
        if self.size > cap:
            raise CapExceededError(f"ideal has {self.size} elements, above the cap {cap}")
        W = self.ring.base
        p, r = W.p, W.r
        coeff_ranges = []
        for j, row in zip(self.form.pivot_cols, self.form.rows):
            span = p ** (self.ring.orders[j] - self.form.pivot_vals[j])
            coeff_ranges.append([tuple(c) for c in product(range(span), repeat=r)])
        out = []
        for combo in product(*coeff_ranges):
            acc = [W.zero] * self.ring.N
            for q, row in zip(combo, self.form.rows):
                for k in range(self.ring.N):
                    acc[k] = W.add(acc[k], W.mul(q, row[k]))
            out.append(RingElement(self.ring, acc))
        assert len(out) == self.size
        return sorted(out, key=lambda x: x.key())

    def product(self, other: "Ideal") -> "Ideal":
        gens = [a * b for a in self.module_basis for b in other.module_basis]
        return Ideal(self.ring, gens)

    def __repr__(self):
        return f"Ideal(size={self.size} in {self.ring.label})"


def ideal_span(ring: FiniteLocalRing, generators: Sequence[RingElement]) -> Ideal:
    return Ideal(ring, generators)


def scale_ideal(n: int, ideal: Ideal) -> Ideal:
    return Ideal(ideal.ring, [g.scale_int(n) for g in ideal.generators])


def maximal_ideal(ring: FiniteLocalRing) -> Ideal:
    """Kernel of the reduction to the residue field (= the set of non-units)."""
    if ring._max_ideal is not None:
        return ring._max_ideal
    W = ring.base
    k = ring.residue_field
    # kernel of the k-linear map (y_j) -> sum y_j * lambda_j on residue coefficients
    solver = LinearMapSolver(k, [[lam] for lam in ring.residue_coeffs], 1)
    gens = []
    for vec in solver.kernel_generators():
        if all(e == k.zero for e in vec):
            continue
        gens.append(RingElement(ring, [W.lift(e) for e in vec]))
    for j in range(ring.N):
        coeffs = [W.zero] * ring.N
        coeffs[j] = W.from_int(W.p)
        gens.append(RingElement(ring, coeffs))
    ring._max_ideal = Ideal(ring, gens)
    return ring._max_ideal


# -- ring homomorphisms ----------------------------------------------------------


class RingHom:
    """Base-compatible local homomorphism between FiniteLocalRings, given on the basis."""

    def __init__(self, source: FiniteLocalRing, target: FiniteLocalRing,
                 basis_images: Sequence[RingElement]):
        self.source = source
        self.target = target
        self.basis_images = tuple(basis_images)
        if source.base.p != target.base.p or source.base.r != target.base.r:
            raise ValueError("incompatible base rings")
        if source.base.m < target.base.m:
            raise ValueError("no base map: source characteristic smaller than target's")
        qt = target.base.q
        if tuple(c % qt for c in source.base.h) != target.base.h:
            raise ValueError("incompatible residue polynomials")

    def _map_base(self, c: GRElt) -> GRElt:
        qt = self.target.base.q
        return tuple(x % qt for x in c)

    def apply(self, x: RingElement) -> RingElement:
        out = self.target.zero
        for c, img in zip(x.coeffs, self.basis_images):
            out = out + img * self.target.from_base(self._map_base(c))
        return RingElement(self.target, out.coeffs, x.prec)

    def __call__(self, x: RingElement) -> RingElement:
        return self.apply(x)

    def verify(self) -> bool:
        """Unital, multiplicative on basis pairs, well-defined on torsion."""
        S, T = self.source, self.target
        p = S.base.p
        for i in range(S.N):
            if not self.basis_images[i].scale_int(p ** S.orders[i]).is_zero():
                return False
        if self.apply(S.one) != T.one:
            return False
        for i in range(S.N):
            for j in range(i, S.N):
                lhs = self.basis_images[i] * self.basis_images[j]
                rhs = self.apply(S.basis_element(i) * S.basis_element(j))
                if lhs != rhs:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, RingHom) and self.source is other.source
                and self.target is other.target
                and self.basis_images == other.basis_images)

    def __hash__(self):
        return hash(tuple(x.coeffs for x in self.basis_images))

    def key(self):
        return tuple(x.key() for x in self.basis_images)

    def __repr__(self):
        imgs = ", ".join(f"{n} -> {self.target.describe_element(x)}"
                         for n, x in zip(self.source.basis_names, self.basis_images))
        return f"RingHom({imgs})"


def identity_hom(ring: FiniteLocalRing) -> RingHom:
    return RingHom(ring, ring, ring.basis)


# -- constructors ------------------------------------------------------------------


def build_galois_ring(p: int, m: int, r: int,
                      h: Optional[Sequence[int]] = None) -> FiniteLocalRing:
    """GR(p^m, r) = W(F_{p^r}) / p^m as a FiniteLocalRing of rank 1 over itself."""
    W = GaloisRing(p, m, r, h)
    k = W.residue_field
    ring = FiniteLocalRing(
        base=W, orders=[m],
        mul_table=[[[W.one]]],
        one_coeffs=[W.one],
        residue_coeffs=[k.one],
        generators=[],
        basis_names=["1"],
        basis_monos=[()],
        mode="finite",
        label=f"GR({p}^{m},{r})" if r > 1 else f"Z/{p ** m}",
    )
    return ring


def ring_from_truncated_presentation(
        pres: IntegerPolynomialPresentation, m: int, *,
        mode: str = "finite",
        degree_cap: int = DEFAULT_DEGREE_CAP,
        h: Optional[Sequence[int]] = None) -> FiniteLocalRing:
    """The finite quotient (Z/p^m)[X_1..X_t] / (relations), if its monomial basis
    stabilizes within the degree cap.

    The basis consists of standard monomials in graded lexicographic order; the
    designated generators are the variable images.  Infinite-dimensionality at
    the cap is an explicit error, never a silent truncation.
    """
    W = GaloisRing(pres.p, m, pres.r, h)
    t = pres.nvars
    if t == 0:
        ring = build_galois_ring(pres.p, m, pres.r, h)
        return ring if mode == "finite" else _as_precision(ring, pres)

    def monomials_upto(d: int) -> List[Monomial]:
        out = []
        def rec(prefix, left, idx):
            if idx == t - 1:
                out.append(prefix + (left,))
                return
            for e in range(left + 1):
                rec(prefix + (e,), left - e, idx + 1)
        for dd in range(d + 1):
            rec((), dd, 0) if t > 1 else out.append((dd,))
        return sorted(out, key=grlex_key)

    def int_of(c) -> int:
        return c.numerator  # presentations guarantee integer coefficients

    max_rel_deg = max((f.degree() for f in pres.relations), default=0)
    prev_sig = None
    d = max(max_rel_deg, 1)
    while d <= degree_cap:
        mons = monomials_upto(d)
        # columns in descending graded-lex order: rewrite big monomials into small
        cols = list(reversed(mons))
        col_index = {mo: i for i, mo in enumerate(cols)}
        rows = []
        for f in pres.relations:
            fd = f.degree()
            for mu in monomials_upto(d - fd):
                row = [W.zero] * len(cols)
                for mo, c in f.terms.items():
                    j = col_index[mono_mul(mu, mo)]
                    row[j] = W.add(row[j], W.from_int(int_of(c)))
                rows.append(row)
        module = QuotientModule(W, rows, len(cols))
        live_cols = list(module.live)
        if not live_cols:
            raise RingConstructionError(
                "presentation collapses to the zero ring at this precision")
        live_monos = [cols[j] for j in live_cols]
        max_live_deg = max(sum(mo) for mo in live_monos)
        sig = (tuple(live_monos), tuple(module.orders[j] for j in live_cols))
        if 2 * max_live_deg <= d and sig == prev_sig:
            break
        prev_sig = sig
        d += 1
    else:
        raise NotFiniteAtCapError(
            f"monomial basis did not stabilize within degree cap {degree_cap}; "
            "not finite at this cap")

    # basis in ascending graded-lex order
    order_pairs = sorted(((cols[j], module.orders[j], j) for j in live_cols),
                         key=lambda x: grlex_key(x[0]))
    basis_monos = [mo for mo, _, _ in order_pairs]
    orders = [o for _, o, _ in order_pairs]
    N = len(basis_monos)
    col_of_basis = {mo: col_index[mo] for mo in basis_monos}
    basis_pos = {mo: i for i, mo in enumerate(basis_monos)}

    def nf_coeffs(vec_cols: List[GRElt]) -> List[GRElt]:
        red = module.nf(vec_cols)
        return [red[col_of_basis[mo]] for mo in basis_monos]

    def mono_vec(mo: Monomial) -> List[GRElt]:
        v = [W.zero] * len(cols)
        v[col_index[mo]] = W.one
        return v

    mul_table = []
    for i, mi in enumerate(basis_monos):
        row = []
        for j, mj in enumerate(basis_monos):
            row.append(nf_coeffs(mono_vec(mono_mul(mi, mj))))
        mul_table.append(row)
    one_coeffs = nf_coeffs(mono_vec((0,) * t))

    # residue images of the variables: for each X_i, the unique c in F_q with
    # X_i - c nilpotent; existence is exactly locality with residue field k
    k = W.residue_field

    def names_of(mo: Monomial) -> str:
        fs = []
        for nm, e in zip(pres.names, mo):
            if e == 1:
                fs.append(nm)
            elif e > 1:
                fs.append(f"{nm}^{e}")
        return "*".join(fs) if fs else "1"

    proto = FiniteLocalRing(
        base=W, orders=orders, mul_table=mul_table, one_coeffs=one_coeffs,
        residue_coeffs=[k.zero] * N, generators=[],
        basis_names=[names_of(mo) for mo in basis_monos],
        basis_monos=basis_monos, mode="finite", validate=False)
    var_images = []
    for i in range(t):
        mo = tuple(1 if j == i else 0 for j in range(t))
        x = proto.element(nf_coeffs(mono_vec(mo)))
        found = None
        for c in k.elements():
            if proto._is_nilpotent(x - proto.from_base(W.lift(c))):
                found = c
                break
        if found is None:
            raise RingConstructionError(
                f"variable {pres.names[i]} has no residue in F_{{{k.size}}}; "
                "quotient is not local with the expected residue field")
        var_images.append(found)
    residue_coeffs = []
    for mo in basis_monos:
        lam = k.one
        for c, e in zip(var_images, mo):
            lam = k.mul(lam, k.pow(c, e))
        residue_coeffs.append(lam)

    gen_coeffs = []
    for i in range(t):
        mo = tuple(1 if j == i else 0 for j in range(t))
        gen_coeffs.append(nf_coeffs(mono_vec(mo)))

    rel_str = "; ".join(pres.relation_strings())
    ring = FiniteLocalRing(
        base=W, orders=orders, mul_table=mul_table, one_coeffs=one_coeffs,
        residue_coeffs=residue_coeffs, generators=gen_coeffs,
        basis_names=[names_of(mo) for mo in basis_monos],
        basis_monos=basis_monos, mode=mode, presentation=pres,
        label=f"(Z/{pres.p}^{m})[{','.join(pres.names)}]/({rel_str})")
    return ring


def _as_precision(ring: FiniteLocalRing, pres) -> FiniteLocalRing:
    return FiniteLocalRing(
        base=ring.base, orders=ring.orders, mul_table=ring.mul_table,
        one_coeffs=ring.one.coeffs, residue_coeffs=ring.residue_coeffs,
        generators=[g.coeffs for g in ring.generators],
        basis_names=ring.basis_names, basis_monos=ring.basis_monos,
        mode="precision", presentation=pres, validate=False, label=ring.label)


# -- quotients ----------------------------------------------------------------------


@dataclass
class RingSurjection:
    """A quotient ring together with the natural surjection and a canonical section."""

    source: FiniteLocalRing
    target: FiniteLocalRing
    _project: Callable[[RingElement], RingElement]
    _section: Callable[[RingElement], RingElement]

    def project(self, x: RingElement) -> RingElement:
        return self._project(x)

    def section(self, xbar: RingElement) -> RingElement:
        return self._section(xbar)


def quotient_ring(ring: FiniteLocalRing, ideal: Ideal) -> RingSurjection:
    """R/I with structure constants on the canonical complement basis."""
    if not ideal.is_proper():
        raise ValueError("cannot quotient by the unit ideal")
    W = ring.base
    orders = ideal.form.quotient_orders()
    live = [j for j, c in enumerate(orders) if c > 0]
    pos = {j: i for i, j in enumerate(live)}
    N2 = len(live)

    def compress(x: RingElement) -> List[GRElt]:
        red = ideal.form.reduce(list(x.coeffs))
        return [red[j] for j in live]

    def expand(coeffs: Sequence[GRElt]) -> RingElement:
        full = [W.zero] * ring.N
        for c, j in zip(coeffs, live):
            full[j] = c
        return RingElement(ring, full)

    mul_table = []
    for a in range(N2):
        row = []
        ea = expand([W.one if i == a else W.zero for i in range(N2)])
        for b in range(N2):
            eb = expand([W.one if i == b else W.zero for i in range(N2)])
            row.append(compress(ea * eb))
        mul_table.append(row)
    one2 = compress(ring.one)
    residue2 = [ring.reduce_element(expand([W.one if i == a else W.zero
                                            for i in range(N2)]))
                for a in range(N2)]
    target = FiniteLocalRing(
        base=W, orders=[orders[j] for j in live], mul_table=mul_table,
        one_coeffs=one2, residue_coeffs=residue2,
        generators=[compress(g) for g in ring.generators],
        basis_names=[ring.basis_names[j] for j in live],
        basis_monos=([ring.basis_monos[j] for j in live]
                     if ring.basis_monos is not None else None),
        mode="finite",
        presentation=None,
        label=f"{ring.label}/(ideal of size {ideal.size})")

    def project(x: RingElement) -> RingElement:
        return target.element(compress(x))

    def section(xbar: RingElement) -> RingElement:
        return expand(xbar.coeffs)

    return RingSurjection(ring, target, project, section)


# -- division and zero-divisors --------------------------------------------------------


def _mult_map_solver(a: RingElement) -> LinearMapSolver:
    ring = a.ring
    images = [list((ring.basis_element(i) * a).coeffs) for i in range(ring.N)]
    return LinearMapSolver(ring.base, images, ring.N,
                           image_orders=ring.orders, domain_orders=ring.orders)


def is_zero_divisor(a: RingElement) -> bool:
    """Rank test on the multiplication-by-a matrix (no enumeration)."""
    return _mult_map_solver(a).has_nonzero_kernel()


def exact_divide(b: RingElement, a: RingElement) -> RingElement:
    """The unique x with a*x = b.

    Exact-finite mode requires a to be a non-zero-divisor.  Precision mode
    requires a = p^s * unit; the quotient loses s digits of precision.
    """
    ring = a.ring
    if ring.mode == "precision":
        W = ring.base
        s = min(W.val(c) for c in a.coeffs)
        if s >= min(a.prec, W.m):
            raise PrecisionExhaustedError("divisor is zero at working precision")
        unit = ring.element([W.divide_by_p_power(c, s) for c in a.coeffs], a.prec)
        if not unit.is_unit():
            raise ZeroDivisorError(
                "divisor is not p^s * unit; cannot divide in the precision model")
        pk = W.p ** s
        if any(x % pk for c in b.coeffs for x in c):
            raise ZeroDivisorError("dividend is not divisible by the divisor")
        shifted = ring.element([W.divide_by_p_power(c, s) for c in b.coeffs], b.prec)
        out = shifted * ring.invert(unit)
        prec = min(a.prec, b.prec) - s
        if prec < 1:
            raise PrecisionExhaustedError(
                f"division by p^{s} exhausts the working precision")
        return ring.element(out.coeffs, prec)
    solver = _mult_map_solver(a)
    if solver.has_nonzero_kernel():
        raise ZeroDivisorError(
            f"{ring.describe_element(a)} is a zero-divisor; exact division undefined")
    x = solver.solve(list(b.coeffs))
    if x is None:
        raise ZeroDivisorError("dividend is not divisible by the divisor")
    out = ring.element(x)
    assert a * out == b
    return out


# -- fingerprints --------------------------------------------------------------------


@dataclass(frozen=True)
class RingFingerprint:
    """Isomorphism invariants; unequal fingerprints certify non-isomorphism."""

    characteristic: int
    size: int
    maximal_ideal_size: int
    hilbert: Tuple[int, ...]
    additive_order_counts: Tuple[Tuple[int, int], ...]
    nilpotency_index_counts: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict:
        return {
            "characteristic": self.characteristic,
            "size": self.size,
            "maximal_ideal_size": self.maximal_ideal_size,
            "hilbert": list(self.hilbert),
            "additive_order_counts": [list(t) for t in self.additive_order_counts],
            "nilpotency_index_counts": [list(t) for t in self.nilpotency_index_counts],
        }


def fingerprint(ring: FiniteLocalRing, cap: int = DEFAULT_ELEMENT_CAP) -> RingFingerprint:
    if ring.mode != "finite":
        raise ValueError("fingerprints are defined for exact finite rings only")
    W = ring.base
    p = W.p
    char = p ** max((c - W.val(x) for c, x in zip(ring.orders, ring.one.coeffs)
                     if x != W.zero), default=0)
    mx = maximal_ideal(ring)
    # Hilbert sequence dim_k m^i / m^{i+1}
    hilbert = [1]
    power = mx
    q = ring.residue_field.size
    while power.size > 1:
        nxt = power.product(mx)
        ratio = power.size // nxt.size
        dim = 0
        while ratio > 1:
            ratio //= q
            dim += 1
        hilbert.append(dim)
        power = nxt
    order_counts: Dict[int, int] = {}
    nil_counts: Dict[int, int] = {}
    for x in ring.enumerate_elements(cap):
        exps = [c - W.val(a) for c, a in zip(ring.orders, x.coeffs) if a != W.zero]
        addord = p ** max(exps) if exps else 1
        order_counts[addord] = order_counts.get(addord, 0) + 1
        idx = ring.nilpotency_index(x)
        if idx is not None:
            nil_counts[idx] = nil_counts.get(idx, 0) + 1
    return RingFingerprint(
        characteristic=char,
        size=ring.size,
        maximal_ideal_size=mx.size,
        hilbert=tuple(hilbert),
        additive_order_counts=tuple(sorted(order_counts.items())),
        nilpotency_index_counts=tuple(sorted(nil_counts.items())),
    )


# -- homomorphism enumeration -----------------------------------------------------------


def hom_enumerate(source: FiniteLocalRing, target: FiniteLocalRing,
                  cap: int = DEFAULT_MAP_CAP) -> List[RingHom]:
    """All local base-algebra homomorphisms source -> target, in canonical order.

    Requires the source to carry monomial expressions of its basis in the
    designated generators.  Homomorphisms exist only when the target
    characteristic divides the source characteristic.
    """
    if source.basis_monos is None:
        raise ValueError("source ring carries no generator expressions for its basis")
    if (source.base.p, source.base.r) != (target.base.p, target.base.r):
        return []
    if source.base.m < target.base.m:
        return []  # no base map Z/p^a -> Z/p^b with b > a
    t = len(source.generators)
    mt = maximal_ideal(target)
    if mt.size ** t > cap:
        raise CapExceededError(
            f"{mt.size ** t} candidate maps exceed the cap {cap}")
    m_elems = mt.enumerate_elements() if t else []
    cands_per_gen = []
    for g in source.generators:
        base_img = target.unity_lift(source.reduce_element(g))
        cands_per_gen.append([base_img + z for z in m_elems])
    out = []
    for tup in product(*cands_per_gen):
        imgs = []
        ok = True
        for mo in source.basis_monos:
            img = target.one
            for gi, e in zip(tup, mo):
                if e:
                    img = img * (gi ** e)
            imgs.append(img)
        hom = RingHom(source, target, imgs)
        if not hom.verify():
            continue
        # the hom must send each designated generator to its chosen candidate;
        # this enforces the generator relations and avoids double-counting
        if any(hom.apply(g) != z for g, z in zip(source.generators, tup)):
            continue
        out.append(hom)
    out.sort(key=lambda h: h.key())
    return out
