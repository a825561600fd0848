from __future__ import annotations

import pytest

from defring.groups import cyclic, direct_product, quaternion8, symmetric
from defring.local_ring import (build_galois_ring, ideal_span, identity_hom,
                                maximal_ideal, ring_from_truncated_presentation)
from defring.matrices import Matrix
from defring.presentations import IntegerPolynomialPresentation
from defring.representation import (Lift, MarandaPreconditionError,
                                    Representation, RepresentationError,
                                    are_strictly_equivalent, def_set,
                                    derivation_check, enumerate_lifts,
                                    hom_family, hom_vs_derivation, kernel_group,
                                    maranda_average, maranda_decide,
                                    normalize_intertwiner, residual_rep,
                                    square_zero_extension, tangent_space,
                                    trivial_residual_rep,
                                    unique_deformation_check)


def _pres(p, names, rels, r=1):
    return IntegerPolynomialPresentation.parse(p, names, rels, r)


def zmod(p, m):
    return build_galois_ring(p, m, 1)


def zmod_prec(p, m):
    return ring_from_truncated_presentation(_pres(p, [], []), m, mode="precision")


def _lift_1dim(rhobar, ring, value):
    rep = Representation.from_generator_images(
        rhobar.group, ring, [Matrix(ring, [[ring.from_int(value)]])])
    return Lift(rep, rhobar)


# -- lift enumeration and deformation sets -----------------------------------


def test_lift_counts_one_dimensional():
    cases = [
        (cyclic(2), zmod(2, 2), 2),   # x^2 = 1 mod 4: {1, 3}
        (cyclic(2), zmod(2, 3), 4),   # mod 8: {1, 3, 5, 7}
        (cyclic(3), zmod(2, 2), 1),   # x^3 = 1 mod 4: {1}
        (cyclic(3), zmod(3, 2), 3),   # mod 9: {1, 4, 7}
        (cyclic(4), zmod(2, 3), 4),   # x^4 = 1 mod 8
    ]
    for G, R, expected in cases:
        rhobar = trivial_residual_rep(G, R)
        lifts = enumerate_lifts(rhobar, R)
        assert len(lifts) == expected, (G.name, R.label)
        # rank 1 over a commutative ring: conjugation is trivial
        assert def_set(rhobar, R).class_count == expected


def test_lift_reduction_mismatch_rejected():
    G = cyclic(2)
    R = zmod(2, 2)
    rhobar = trivial_residual_rep(G, R)
    k = R.residue_ring
    bad = Representation.from_generator_images(
        G, R, [Matrix(R, [[R.from_int(1)]])])
    other_rhobar = residual_rep(G, k, [Matrix(k, [[k.from_int(1)]])])
    Lift(bad, other_rhobar)  # fine: reductions agree
    with pytest.raises(RepresentationError):
        sign_bar = residual_rep(cyclic(2), build_galois_ring(3, 1, 1),
                                [Matrix(build_galois_ring(3, 1, 1),
                                        [[build_galois_ring(3, 1, 1).from_int(2)]])])
        R9 = zmod(3, 2)
        Lift(Representation.from_generator_images(
            cyclic(2), R9, [Matrix(R9, [[R9.from_int(1)]])]), sign_bar)


def test_sign_rep_s3_over_z9_single_class():
    G = symmetric(3)
    k = build_galois_ring(3, 1, 1)
    # generators of S3 here: a transposition (sign -1) and the 3-cycle (sign +1)
    rhobar = residual_rep(G, k, [Matrix(k, [[k.from_int(2)]]),
                                 Matrix(k, [[k.from_int(1)]])])
    ds = def_set(rhobar, zmod(3, 2))
    assert ds.class_count == 1


def test_unique_deformation_when_p_coprime():
    G = cyclic(3)
    for R in (zmod(2, 2), zmod(2, 3)):
        assert unique_deformation_check(trivial_residual_rep(G, R), R)
    with pytest.raises(ValueError):
        unique_deformation_check(
            trivial_residual_rep(cyclic(2), zmod(2, 2)), zmod(2, 2))


def test_two_dimensional_def_set_orbits():
    # C2 trivial 2-dim over F2[eps]: lifts I + eps*M with M^... ; orbit structure
    G = cyclic(2)
    keps = ring_from_truncated_presentation(_pres(2, ["e"], ["e^2"]), 1)
    rhobar = trivial_residual_rep(G, keps.residue_ring, n=2)
    ds = def_set(rhobar, keps, cap_maps=10 ** 6, cap_elements=10 ** 5)
    assert ds.total_lifts == sum(ds.orbit_sizes)
    assert ds.class_count >= 1
    # representatives are canonical: least key in each orbit
    for rep, size in zip(ds.representatives, ds.orbit_sizes):
        assert size >= 1


def test_kernel_group_size():
    R = zmod(2, 2)
    kg = kernel_group(R, 2, cap=10 ** 5)
    # I + M_2(2Z/4): 2^4 matrices, all invertible
    assert len(kg) == 16
    for K in kg:
        assert K.is_invertible()


# -- tangent spaces ----------------------------------------------------------


def test_tangent_dimensions():
    cases = [
        (trivial_residual_rep(cyclic(2), zmod(2, 1)), 2, 1),
        (trivial_residual_rep(cyclic(3), zmod(3, 1)), 3, 1),
        (trivial_residual_rep(cyclic(3), zmod(2, 1)), 1, 0),
        (trivial_residual_rep(direct_product(cyclic(2), cyclic(2)),
                              zmod(2, 1)), 4, 2),
    ]
    for rhobar, count, t in cases:
        ds, tdim = tangent_space(rhobar)
        assert ds.class_count == count
        assert tdim == t


def test_tangent_counts_are_q_powers_across_corpus():
    groups = [cyclic(2), cyclic(3), direct_product(cyclic(2), cyclic(2)),
              symmetric(3), quaternion8()]
    checked = 0
    for G in groups:
        for p in (2, 3):
            k = build_galois_ring(p, 1, 1)
            rhobar = trivial_residual_rep(G, k)
            ds, t = tangent_space(rhobar)  # raises if not a q-power
            assert ds.class_count == k.size ** t
            checked += 1
    assert checked >= 10


# -- Maranda averaging -------------------------------------------------------


def test_maranda_average_c2_over_z16():
    R = zmod_prec(2, 4)
    G = cyclic(2)
    rhobar = trivial_residual_rep(G, R)
    # 15 = -1 is the genuine nontrivial lift of the trivial residual rep
    l15 = _lift_1dim(rhobar, R, 15)
    # A = 1 + 4: congruent to the identity mod m and intertwines mod J = 2m = (4)
    A = Matrix(R, [[R.from_int(5)]])
    cert = maranda_average(l15.rep, l15.rep, A)
    assert cert.p_exponent == 1
    assert cert.precision == 3
    g = G.generators[0]
    assert (l15.rep.matrix(g) * cert.B0).agrees_at(
        cert.B0 * l15.rep.matrix(g), cert.precision)


def test_maranda_average_identity_input_gives_identity():
    R = zmod_prec(2, 4)
    G = cyclic(2)
    rhobar = trivial_residual_rep(G, R)
    l1 = _lift_1dim(rhobar, R, 1)
    cert = maranda_average(l1.rep, l1.rep, Matrix.identity(R, 1))
    assert cert.B0 == Matrix.identity(R, 1)


def test_maranda_average_precondition_violation_reports_element():
    R = zmod_prec(2, 4)
    G = cyclic(2)
    rhobar = trivial_residual_rep(G, R)
    l1 = _lift_1dim(rhobar, R, 1)
    l15 = _lift_1dim(rhobar, R, 15)
    with pytest.raises(MarandaPreconditionError) as e:
        maranda_average(l1.rep, l15.rep, Matrix.identity(R, 1))
    assert e.value.violating_element == G.generators[0]


def test_maranda_decide_on_z16_lifts():
    R = zmod_prec(2, 4)
    G = cyclic(2)
    rhobar = trivial_residual_rep(G, R)
    l1 = _lift_1dim(rhobar, R, 1)
    l9 = _lift_1dim(rhobar, R, 9)
    l15 = _lift_1dim(rhobar, R, 15)
    # 9 = 1 mod J=(4): a truncation artifact, decide says equivalent
    eq, cert = maranda_decide(l1, l9)
    assert eq and cert is not None
    # 15 = 3 mod 4 != 1: genuinely distinct
    eq, cert = maranda_decide(l1, l15)
    assert not eq and cert is None


def test_maranda_decide_two_dimensional():
    R = zmod_prec(2, 4)
    G = cyclic(2)
    rhobar = trivial_residual_rep(G, R, n=2)
    I2 = Matrix.identity(R, 2)
    diag = Matrix(R, [[R.from_int(15), R.zero], [R.zero, R.from_int(1)]])
    l_diag = Lift(Representation.from_generator_images(G, R, [diag]), rhobar)
    # conjugate by a kernel-group element: must be decided equivalent
    K = Matrix(R, [[R.from_int(1), R.from_int(2)],
                   [R.from_int(4), R.from_int(1)]])
    l_conj = Lift(l_diag.rep.conjugate(K), rhobar)
    eq, cert = maranda_decide(l_diag, l_conj, cap=10 ** 6)
    assert eq and cert is not None
    g = G.generators[0]
    assert (l_diag.rep.matrix(g) * cert.B0).agrees_at(
        cert.B0 * l_conj.rep.matrix(g), cert.precision)
    # against the identity lift: distinct mod J
    l_triv = Lift(Representation.from_generator_images(G, R, [I2]), rhobar)
    eq, _ = maranda_decide(l_diag, l_triv, cap=10 ** 6)
    assert not eq


# -- intertwiner normalization -----------------------------------------------


def test_normalize_intertwiner_scalar():
    R = zmod(2, 3)  # Z/8
    G = cyclic(2)
    rho = Representation.from_generator_images(
        G, R, [Matrix(R, [[R.from_int(7)]])])
    B = Matrix(R, [[R.from_int(3)]])
    u, B0 = normalize_intertwiner(rho, rho, B)
    assert u == R.from_int(3)
    assert B0 == Matrix.identity(R, 1)


def test_normalize_intertwiner_2dim():
    R = zmod(2, 3)
    G = cyclic(2)
    rho = Representation.from_generator_images(
        G, R, [Matrix.identity(R, 2)])
    three = R.from_int(3)
    B = Matrix(R, [[three, R.from_int(6)], [R.zero, three]])
    u, B0 = normalize_intertwiner(rho, rho, B)
    assert u == three
    # 6 = 3 * 2: the off-diagonal entry of B0 is 2
    assert B0.rows[0][1] == R.from_int(2)
    assert B0.rows[0][0] == R.one


def test_normalize_intertwiner_rejects_non_scalar_reduction():
    R = zmod(2, 3)
    G = cyclic(2)
    rho = Representation.from_generator_images(G, R, [Matrix.identity(R, 2)])
    B = Matrix(R, [[R.from_int(3), R.one], [R.zero, R.from_int(3)]])
    with pytest.raises(ValueError):
        normalize_intertwiner(rho, rho, B)


# -- derivations -------------------------------------------------------------


def test_derivation_check_on_z4_eps():
    R = ring_from_truncated_presentation(_pres(2, ["X"], ["X^2"]), 2)
    f = identity_hom(R)
    x = R.generators[0]
    I = ideal_span(R, [x.scale_int(2)])  # (2X): square-zero
    # D(1) = 0, D(X) = 2X is the derivation d/dX scaled into the ideal
    assert derivation_check(f, I, [R.zero, x.scale_int(2)])
    # D(1) = 2X is not a derivation (Leibniz fails at 1*1)
    assert not derivation_check(f, I, [x.scale_int(2), R.zero])


def test_hom_vs_derivation_booleans_agree():
    R = ring_from_truncated_presentation(_pres(2, ["X"], ["X^2"]), 2)
    f = identity_hom(R)
    x = R.generators[0]
    I = ideal_span(R, [x.scale_int(2)])
    for vals in ([R.zero, R.zero], [R.zero, x.scale_int(2)],
                 [x.scale_int(2), R.zero], [x.scale_int(2), x.scale_int(2)]):
        g_images = [fi + v for fi, v in zip(f.basis_images, vals)]
        g_hom, is_deriv = hom_vs_derivation(f, g_images, I)
        assert g_hom == is_deriv


def test_square_zero_extension_and_family():
    # S = Z/8 + eps*(Z/8): the family x + C*eps*x over the truncated Witt ring
    R = zmod(2, 3)
    S, incl, eps_basis = square_zero_extension(R, ideal_span(R, []), "eps")
    assert S.size == 8 * 8
    eps = eps_basis[0]
    assert (eps * eps).is_zero()
    # any derivation kills 1, so over the rank-1 basis {1} only d = 0 exists
    homs, distinct = hom_family(incl, [S.zero], [R.from_int(c) for c in (1, 3, 5, 7)])
    assert len(homs) == 4 and distinct == 1  # d = 0 collapses the family


def test_hom_family_with_nonzero_derivation():
    # R = (Z/8)[X]/(X^2): maps x + eps*y -> x + C*eps*y realized as
    # basis {1, X}, derivation D(1) = 0, D(X) = eps*X-part
    R = ring_from_truncated_presentation(_pres(2, ["X"], ["X^2"]), 3)
    ann = ideal_span(R, [R.generators[0]])  # R/(X) = Z/8
    S, incl, eps_basis = square_zero_extension(R, ann, "eps")
    # D kills 1 and sends X to eps (the generator of the module part)
    d_values = [S.zero, eps_basis[0]]
    assert derivation_check(incl, ideal_span(S, eps_basis), d_values)
    scalars = [R.from_int(c) for c in (1, 3, 5, 7)]
    homs, distinct = hom_family(incl, d_values, scalars)
    assert len(homs) == 4
    assert distinct == 4
