"""Lifts of residual representations, deformation sets, and averaging.

A residual representation lives over the residue field (packaged as a rank-1
FiniteLocalRing); its lifts to a finite local ring R are enumerated generator
by generator through the fibers of the entrywise reduction, then verified on
all group-element pairs.  Strict equivalence is conjugation by matrices
congruent to the identity modulo the maximal ideal, and deformation sets are
the orbit partitions with canonical (lexicographically least) representatives.

The averaging operator sums g-translates of an approximate intertwiner and
divides by the group order; when p divides the order this costs p-adic
precision and therefore requires a precision-model ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import FiniteGroup, extend_and_verify_hom, p_part
from .local_ring import (DEFAULT_ELEMENT_CAP, DEFAULT_MAP_CAP, CapExceededError,
                         FiniteLocalRing, Ideal, RingElement, RingHom,
                         exact_divide, ideal_span, maximal_ideal, quotient_ring,
                         scale_ideal)
from .matrices import Matrix


class RepresentationError(ValueError):
    pass


class MarandaPreconditionError(ValueError):
    """The approximate-intertwiner congruence fails; carries the violating element."""

    def __init__(self, message: str, violating_element: int):
        super().__init__(message)
        self.violating_element = violating_element


class Representation:
    """A verified homomorphism G -> GL_n(R), stored as a full matrix table."""

    def __init__(self, group: FiniteGroup, ring: FiniteLocalRing, n: int,
                 matrices: Sequence[Matrix]):
        self.group = group
        self.ring = ring
        self.n = n
        self.matrices: Tuple[Matrix, ...] = tuple(matrices)

    @classmethod
    def from_generator_images(cls, group: FiniteGroup, ring: FiniteLocalRing,
                              images: Sequence[Matrix]) -> "Representation":
        n = images[0].n if images else 1
        one = Matrix.identity(ring, n)
        mats, fail = extend_and_verify_hom(group, one, list(images))
        if fail is not None:
            raise RepresentationError(
                f"generator images do not define a homomorphism; first violated "
                f"pair {fail}")
        for g, M in enumerate(mats):
            if not M.is_invertible():
                raise RepresentationError(f"image of element {g} is singular")
        return cls(group, ring, n, mats)

    def matrix(self, g: int) -> Matrix:
        return self.matrices[g]

    @property
    def gen_matrices(self) -> Tuple[Matrix, ...]:
        return tuple(self.matrices[g] for g in self.group.generators)

    def key(self) -> Tuple[int, ...]:
        return tuple(x for M in self.gen_matrices for x in M.key())

    def full_key(self) -> Tuple[int, ...]:
        return tuple(x for M in self.matrices for x in M.key())

    def reduction(self) -> "Representation":
        """Entrywise reduction to the residue ring."""
        k = self.ring.residue_ring
        mats = [M.transfer(k, self.ring.reduce_to_residue_ring)
                for M in self.matrices]
        return Representation(self.group, k, self.n, mats)

    def conjugate(self, K: Matrix) -> "Representation":
        Kinv = K.inverse()
        return Representation(self.group, self.ring, self.n,
                              [K * M * Kinv for M in self.matrices])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.group is other.group
                and self.ring is other.ring and self.matrices == other.matrices)

    def __hash__(self):
        return hash(self.full_key())

    def __repr__(self):
        return (f"Representation({self.group.name} -> GL_{self.n}"
                f"({self.ring.label}))")


def residual_rep(group: FiniteGroup, ring: FiniteLocalRing,
                 generator_images: Sequence[Matrix]) -> Representation:
    """A representation over the residue field, validated on the full table."""
    if ring.base.m != 1:
        raise RepresentationError("residual representations live over the residue field")
    return Representation.from_generator_images(group, ring, generator_images)


def trivial_residual_rep(group: FiniteGroup, ring: FiniteLocalRing,
                         n: int = 1) -> Representation:
    k = ring.residue_ring
    images = [Matrix.identity(k, n) for _ in group.generators]
    return residual_rep(group, k, images)


# -- lifts ------------------------------------------------------------------------------


@dataclass
class Lift:
    """A representation over R whose entrywise reduction equals the residual one."""

    rep: Representation
    rhobar: Representation

    def __post_init__(self):
        red = self.rep.reduction()
        if red.full_key() != self.rhobar.full_key():
            raise RepresentationError("reduction does not match the residual representation")

    def key(self) -> Tuple[int, ...]:
        return self.rep.key()


def kernel_group(ring: FiniteLocalRing, n: int,
                 cap: int = DEFAULT_ELEMENT_CAP) -> List[Matrix]:
    """All matrices congruent to the identity modulo the maximal ideal."""
    m = maximal_ideal(ring)
    total = m.size ** (n * n)
    if total > cap:
        raise CapExceededError(f"kernel group has {total} matrices, above the cap {cap}")
    m_elems = m.enumerate_elements()
    one = Matrix.identity(ring, n)
    out = []
    for combo in product(m_elems, repeat=n * n):
        rows = [[one.rows[i][j] + combo[i * n + j] for j in range(n)]
                for i in range(n)]
        out.append(Matrix(ring, rows))
    return out


def _section_matrix(ring: FiniteLocalRing, Mbar: Matrix) -> Matrix:
    """Entrywise unity-lift of a residue-ring matrix into R."""
    return Matrix(ring, [[ring.unity_lift(e.coeffs[0]) for e in row]
                         for row in Mbar.rows])


def enumerate_lifts(rhobar: Representation, ring: FiniteLocalRing,
                    cap: int = DEFAULT_MAP_CAP) -> List[Lift]:
    """All lifts of the residual representation, in canonical key order.

    Per generator, the fiber of the reduction is (entrywise lift) + M_n(m_R);
    candidate tuples are extended along group words and kept when every
    element pair multiplies correctly.
    """
    G = rhobar.group
    n = rhobar.n
    m = maximal_ideal(ring)
    ngen = len(G.generators)
    fiber_size = m.size ** (n * n)
    if ngen and fiber_size ** ngen > cap:
        raise CapExceededError(
            f"{fiber_size ** ngen} candidate lifts exceed the cap {cap}")
    m_elems = m.enumerate_elements()
    offsets = []
    for combo in product(m_elems, repeat=n * n):
        offsets.append(Matrix(ring, [[combo[i * n + j] for j in range(n)]
                                     for i in range(n)]))
    candidates_per_gen = []
    for g in G.generators:
        base = _section_matrix(ring, rhobar.matrix(g))
        candidates_per_gen.append([base + z for z in offsets])
    one = Matrix.identity(ring, n)
    lifts = []
    for tup in product(*candidates_per_gen):
        mats, fail = extend_and_verify_hom(G, one, list(tup))
        if fail is not None:
            continue
        rep = Representation(G, ring, n, mats)
        lifts.append(Lift(rep, rhobar))
    lifts.sort(key=lambda l: l.key())
    return lifts


# -- strict equivalence and deformation sets -----------------------------------------------


def are_strictly_equivalent(l1: Lift, l2: Lift,
                            cap: int = DEFAULT_ELEMENT_CAP
                            ) -> Tuple[bool, Optional[Matrix]]:
    """Search the kernel group for K with rho1 = K rho2 K^{-1}."""
    ring = l1.rep.ring
    if ring is not l2.rep.ring:
        raise ValueError("lifts live over different rings")
    gens = l1.rep.group.generators
    for K in kernel_group(ring, l1.rep.n, cap):
        Kinv = K.inverse()
        if all(l1.rep.matrix(g) == K * l2.rep.matrix(g) * Kinv for g in gens):
            return True, K
    return False, None


@dataclass
class DefSet:
    """Orbit decomposition of the lift set under kernel-group conjugation."""

    representatives: List[Lift]
    orbit_sizes: List[int]
    total_lifts: int

    @property
    def class_count(self) -> int:
        return len(self.representatives)


def def_set(rhobar: Representation, ring: FiniteLocalRing,
            cap_maps: int = DEFAULT_MAP_CAP,
            cap_elements: int = DEFAULT_ELEMENT_CAP) -> DefSet:
    lifts = enumerate_lifts(rhobar, ring, cap_maps)
    index: Dict[Tuple[int, ...], int] = {l.key(): i for i, l in enumerate(lifts)}
    kg = kernel_group(ring, rhobar.n, cap_elements)
    seen = [False] * len(lifts)
    reps: List[Lift] = []
    sizes: List[int] = []
    for i, l in enumerate(lifts):
        if seen[i]:
            continue
        orbit = set()
        for K in kg:
            orbit.add(index[l.rep.conjugate(K).key()])
        for j in orbit:
            seen[j] = True
        best = min(orbit)
        reps.append(lifts[best])
        sizes.append(len(orbit))
    assert sum(sizes) == len(lifts)
    return DefSet(reps, sizes, len(lifts))


def unique_deformation_check(rhobar: Representation, ring: FiniteLocalRing,
                             **caps) -> bool:
    """For p not dividing |G| there is exactly one deformation class."""
    p = ring.base.p
    if rhobar.group.n % p == 0:
        raise ValueError("the uniqueness statement requires p not dividing |G|")
    return def_set(rhobar, ring, **caps).class_count == 1


def tangent_space(rhobar: Representation,
                  cap_maps: int = DEFAULT_MAP_CAP) -> Tuple[DefSet, int]:
    """Deformation classes over k[eps]; the count must be a power of q = |k|."""
    from .presentations import IntegerPolynomialPresentation
    from .local_ring import ring_from_truncated_presentation
    k = rhobar.ring
    pres = IntegerPolynomialPresentation.parse(
        k.base.p, ["e"], ["e^2"], r=k.base.r)
    keps = ring_from_truncated_presentation(pres, 1, h=k.base.h)
    ds = def_set(rhobar, keps, cap_maps)
    q = k.residue_field.size
    count = ds.class_count
    t = 0
    c = count
    while c % q == 0:
        c //= q
        t += 1
    if c != 1:
        raise RuntimeError(
            f"tangent count {count} is not a power of q={q}; implementation bug")
    return ds, t


# -- averaging -----------------------------------------------------------------------------


@dataclass
class MarandaCertificate:
    B0: Matrix
    precision: int  # the conjugation identity is certified at this precision
    p_exponent: int  # r with |G| = p^r s


def _finite_twin(ring: FiniteLocalRing) -> FiniteLocalRing:
    """The same structure-constant data as an exact finite ring."""
    if ring.mode == "finite":
        return ring
    if getattr(ring, "_finite_twin_cache", None) is None:
        ring._finite_twin_cache = FiniteLocalRing(
            base=ring.base, orders=ring.orders, mul_table=ring.mul_table,
            one_coeffs=ring.one.coeffs, residue_coeffs=ring.residue_coeffs,
            generators=[g.coeffs for g in ring.generators],
            basis_names=ring.basis_names, basis_monos=ring.basis_monos,
            mode="finite", presentation=ring.presentation, validate=False,
            label=ring.label + " (exact)")
    return ring._finite_twin_cache


def order_ideal(ring: FiniteLocalRing, group: FiniteGroup) -> Ideal:
    """The ideal J = |G| * m_R."""
    return scale_ideal(group.n, maximal_ideal(ring))


def maranda_average(rho1: Representation, rho2: Representation,
                    A: Matrix) -> MarandaCertificate:
    """Average the approximate intertwiner A into an exact one (at reduced precision).

    Requires A in I_n + M_n(m_R) and rho1(g) A = A rho2(g) mod M_n(J) for all g,
    with J = |G| m_R.  When p | |G| the ring must be a precision model: dividing
    by |G| costs r = v_p(|G|) digits.  When p does not divide |G| the order is a
    unit and the result is exact.
    """
    ring = rho1.ring
    G = rho1.group
    if rho2.ring is not ring or rho2.group is not G:
        raise ValueError("representations must share a group and a ring")
    p = ring.base.p
    r, s = p_part(G, p)
    N = ring.base.m
    if r > 0 and ring.mode != "precision":
        raise ValueError(
            "p divides |G|, which is then a zero-divisor in every finite ring "
            "here; averaging needs a precision-model ring")
    if r >= N:
        raise ValueError(f"working precision {N} too small for p-exponent {r}")
    mR = maximal_ideal(ring)
    one = Matrix.identity(ring, rho1.n)
    for i, row in enumerate((A - one).rows):
        for e in row:
            if not mR.contains(e):
                raise ValueError("A must be congruent to the identity mod m_R")
    J = order_ideal(ring, G)
    for g in range(G.n):
        D = rho1.matrix(g) * A - A * rho2.matrix(g)
        if not all(J.contains(e) for row in D.rows for e in row):
            raise MarandaPreconditionError(
                f"intertwining congruence mod |G|*m fails at group element {g}", g)
    B = Matrix.zero(ring, rho1.n)
    for g in range(G.n):
        B = B + rho1.matrix(g) * A * rho2.matrix(G.inverse[g])
    s_inv = ring.invert(ring.from_int(s))
    B = B.scale(s_inv)
    if r > 0:
        pr = ring.from_int(p ** r)
        B0 = B.map_entries(lambda e: exact_divide(e, pr))
        prec = N - r
    else:
        B0, prec = B, N
    for h in range(G.n):
        if not (rho1.matrix(h) * B0).agrees_at(B0 * rho2.matrix(h), prec):
            raise RuntimeError("averaging failed to produce an intertwiner; bug")
    for i, row in enumerate((B0 - one).rows):
        for e in row:
            if e.is_unit():
                raise RuntimeError("averaged intertwiner left I_n + M_n(m_R); bug")
    return MarandaCertificate(B0, prec, r)


def maranda_decide(l1: Lift, l2: Lift,
                   cap: int = DEFAULT_ELEMENT_CAP
                   ) -> Tuple[bool, Optional[MarandaCertificate]]:
    """Strict equivalence over R, decided over the exact finite quotient R/J.

    The reductions mod J = |G| m_R are compared by finite search; a positive
    answer is certified by lifting the quotient conjugator and averaging.
    """
    ring = l1.rep.ring
    G = l1.rep.group
    n = l1.rep.n
    Rf = _finite_twin(ring)

    def to_finite(x: RingElement) -> RingElement:
        return Rf.element(x.coeffs)

    Jf = scale_ideal(G.n, maximal_ideal(Rf))
    surj = quotient_ring(Rf, Jf)
    Rbar = surj.target

    def project(M: Matrix) -> Matrix:
        return M.transfer(Rbar, lambda e: surj.project(to_finite(e)))

    red1 = [project(l1.rep.matrix(g)) for g in G.generators]
    red2 = [project(l2.rep.matrix(g)) for g in G.generators]
    witness = None
    for Kbar in kernel_group(Rbar, n, cap):
        Kinv = Kbar.inverse()
        if all(a == Kbar * b * Kinv for a, b in zip(red1, red2)):
            witness = Kbar
            break
    if witness is None:
        return False, None
    A = witness.transfer(ring, lambda e: ring.element(surj.section(e).coeffs))
    cert = maranda_average(l1.rep, l2.rep, A)
    return True, cert


def normalize_intertwiner(rho1: Representation, rho2: Representation,
                          B: Matrix) -> Tuple[RingElement, Matrix]:
    """Factor an exact intertwiner with scalar nonzero reduction as B = u * B0.

    Returns the unit u and B0 in I_n + M_n(m_R) with rho1 = B0 rho2 B0^{-1}.
    The scalar-reduction hypothesis is checked, never assumed.
    """
    ring = rho1.ring
    G = rho1.group
    for g in G.generators:
        if rho1.matrix(g) * B != B * rho2.matrix(g):
            raise ValueError("B is not an exact intertwiner")
    k = ring.residue_field
    n = B.n
    c = ring.reduce_element(B.rows[0][0])
    if c == k.zero:
        raise ValueError("reduction of B is zero on the diagonal; hypothesis violated")
    for i in range(n):
        for j in range(n):
            red = ring.reduce_element(B.rows[i][j])
            want = c if i == j else k.zero
            if red != want:
                raise ValueError(
                    "reduction of B is not a scalar matrix; hypothesis violated")
    # the corner entry is a unit with the right reduction; factoring it out
    # pins B0's corner to exactly 1
    u = B.rows[0][0]
    B0 = B.scale(ring.invert(u))
    one = Matrix.identity(ring, n)
    for row in (B0 - one).rows:
        for e in row:
            if e.is_unit():
                raise RuntimeError("normalization left I_n + M_n(m_R); bug")
    return u, B0


# -- derivations and square-zero extensions ---------------------------------------------------


def _check_square_zero(ideal: Ideal) -> None:
    for a in ideal.module_basis:
        for b in ideal.module_basis:
            if not (a * b).is_zero():
                raise ValueError("ideal is not square-zero")


def derivation_check(f: RingHom, ideal: Ideal,
                     values: Sequence[RingElement]) -> bool:
    """Is the base-linear map D (given on the source basis) an f-derivation into I?

    Leibniz: D(xy) = f(x) D(y) + D(x) f(y), checked on all basis pairs; the
    square-zero hypothesis on the ideal is verified, not assumed.
    """
    S = f.source
    T = f.target
    if ideal.ring is not T:
        raise ValueError("ideal must live in the target ring")
    _check_square_zero(ideal)
    for v in values:
        if not ideal.contains(v):
            return False

    def D(x: RingElement) -> RingElement:
        out = T.zero
        for c, v in zip(x.coeffs, values):
            out = out + v * T.from_base(f._map_base(c))
        return out

    for i in range(S.N):
        ei = S.basis_element(i)
        for j in range(i, S.N):
            ej = S.basis_element(j)
            lhs = D(ei * ej)
            rhs = f.apply(ei) * values[j] + values[i] * f.apply(ej)
            if lhs != rhs:
                return False
    return True


def hom_vs_derivation(f: RingHom, g_images: Sequence[RingElement],
                      ideal: Ideal) -> Tuple[bool, bool]:
    """(g is a homomorphism, g - f is a derivation) for g congruent to f mod I.

    The two booleans must agree whenever the congruence precondition holds;
    any disagreement is an implementation bug caught by the property tests.
    """
    _check_square_zero(ideal)
    diffs = [g - fi for g, fi in zip(g_images, f.basis_images)]
    for d in diffs:
        if not ideal.contains(d):
            raise ValueError("g is not congruent to f modulo the ideal")
    g_hom = RingHom(f.source, f.target, g_images).verify()
    is_deriv = derivation_check(f, ideal, diffs)
    return g_hom, is_deriv


def square_zero_extension(ring: FiniteLocalRing, ann: Ideal,
                          eps_name: str = "eps"
                          ) -> Tuple[FiniteLocalRing, RingHom, List[RingElement]]:
    """S = R + eps*(R/ann) with eps^2 = 0; returns (S, inclusion, eps-part basis).

    The module part is the cyclic module R/ann; its canonical coordinate basis
    becomes extra ring basis elements that multiply to zero with each other.
    """
    if ann.ring is not ring:
        raise ValueError("annihilator ideal must live in the base ring")
    W = ring.base
    qorders = ann.form.quotient_orders()
    live = [j for j, c in enumerate(qorders) if c > 0]
    NM = len(live)
    N = ring.N
    orders = list(ring.orders) + [qorders[j] for j in live]

    def mod_coords(x: RingElement) -> List:
        red = ann.form.reduce(list(x.coeffs))
        return [red[j] for j in live]

    zeroN = [W.zero] * N
    zeroM = [W.zero] * NM
    mul_table = []
    for i in range(N + NM):
        row = []
        for j in range(N + NM):
            if i < N and j < N:
                prod_r = ring.basis_element(i) * ring.basis_element(j)
                row.append(list(prod_r.coeffs) + zeroM)
            elif i < N <= j:
                prod_r = ring.basis_element(i) * ring.basis_element(live[j - N])
                row.append(zeroN + mod_coords(prod_r))
            elif j < N <= i:
                prod_r = ring.basis_element(live[i - N]) * ring.basis_element(j)
                row.append(zeroN + mod_coords(prod_r))
            else:
                row.append(zeroN + zeroM)
        mul_table.append(row)
    one_coeffs = list(ring.one.coeffs) + zeroM
    residue_coeffs = list(ring.residue_coeffs) + [ring.residue_field.zero] * NM
    gen_coeffs = [list(g.coeffs) + zeroM for g in ring.generators]
    names = list(ring.basis_names) + [f"{eps_name}*{ring.basis_names[j]}"
                                      for j in live]
    S = FiniteLocalRing(
        base=W, orders=orders, mul_table=mul_table, one_coeffs=one_coeffs,
        residue_coeffs=residue_coeffs, generators=gen_coeffs,
        basis_names=names, basis_monos=None, mode="finite",
        label=f"{ring.label}[+{eps_name}*(module of size "
              f"{ring.size // ann.size})]")
    incl = RingHom(ring, S, [S.element(list(ring.basis_element(i).coeffs) + zeroM)
                             for i in range(N)])
    assert incl.verify()
    eps_basis = [S.basis_element(N + a) for a in range(NM)]
    return S, incl, eps_basis


def hom_family(incl: RingHom, d_values: Sequence[RingElement],
               scalars: Sequence[RingElement]
               ) -> Tuple[List[RingHom], int]:
    """The maps x -> x + C*d(x) for scalars C; each verified as a homomorphism.

    Returns the verified family and the number of pairwise distinct members.
    """
    S = incl.target
    out = []
    for C in scalars:
        cs = S.element(list(C.coeffs) + [S.base.zero] * (S.N - incl.source.N)) \
            if C.ring is incl.source else C
        images = [fi + cs * d for fi, d in zip(incl.basis_images, d_values)]
        hom = RingHom(incl.source, S, images)
        if not hom.verify():
            raise RuntimeError("family member failed homomorphism verification; bug")
        out.append(hom)
    distinct = len({h.key() for h in out})
    return out, distinct
