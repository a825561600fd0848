from __future__ import annotations

import pytest

from defring.groups import (FiniteGroup, GroupConstructionError, abelianization,
                            build_group, commutator_subgroup, cyclic, dihedral,
                            direct_product, extend_and_verify_hom,
                            from_cayley_table, p_part, quaternion8, symmetric)
from defring.local_ring import build_galois_ring


def test_orders():
    assert cyclic(6).n == 6
    assert dihedral(4).n == 8
    assert symmetric(3).n == 6
    assert symmetric(4).n == 24
    assert quaternion8().n == 8
    assert direct_product(cyclic(2), cyclic(2)).n == 4


def test_group_axioms_checked_exhaustively():
    for G in (cyclic(5), dihedral(3), symmetric(3), quaternion8()):
        e = G.identity
        for a in range(G.n):
            assert G.table[e][a] == a == G.table[a][e]
            assert G.table[a][G.inverse[a]] == e


def test_bad_cayley_table_rejected():
    with pytest.raises(GroupConstructionError):
        from_cayley_table([[0, 1], [1, 1]])  # not a Latin square / no inverse


def test_element_orders():
    G = dihedral(4)
    orders = sorted(G.order_of(a) for a in range(G.n))
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]
    Q = quaternion8()
    assert sorted(Q.order_of(a) for a in range(Q.n)) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_p_part():
    assert p_part(symmetric(4), 2) == (3, 3)
    assert p_part(symmetric(3), 3) == (1, 2)
    assert p_part(cyclic(5), 2) == (0, 5)
    with pytest.raises(ValueError):
        p_part(cyclic(4), 4)


def test_commutator_subgroups():
    assert len(commutator_subgroup(cyclic(6))) == 1
    assert len(commutator_subgroup(symmetric(3))) == 3  # A3
    assert len(commutator_subgroup(symmetric(4))) == 12  # A4
    assert len(commutator_subgroup(quaternion8())) == 2  # {1, -1}


def test_abelianizations():
    assert abelianization(cyclic(6)) == [6]
    assert abelianization(symmetric(3)) == [2]
    assert abelianization(symmetric(4)) == [2]
    assert abelianization(quaternion8()) == [2, 2]
    assert abelianization(dihedral(4)) == [2, 2]
    assert abelianization(direct_product(cyclic(2), cyclic(4))) == [2, 4]
    assert abelianization(direct_product(cyclic(2), cyclic(3))) == [6]
    assert abelianization(cyclic(1)) == []


def test_build_group_dispatch():
    assert build_group("cyclic", [7]).n == 7
    assert build_group("klein4").n == 4
    assert abelianization(build_group("klein4")) == [2, 2]
    with pytest.raises(GroupConstructionError):
        build_group("monster")


def test_extend_and_verify_hom_into_ring():
    G = cyclic(2)
    R = build_galois_ring(2, 4, 1)  # Z/16
    img_good = R.from_int(15)  # 15^2 = 225 = 1 mod 16
    images, failure = extend_and_verify_hom(G, R.one, [img_good])
    assert failure is None
    assert images[G.identity] == R.one
    img_bad = R.from_int(3)  # 3^2 = 9 != 1
    images, failure = extend_and_verify_hom(G, R.one, [img_bad])
    assert images is None and failure is not None


def test_extend_and_verify_hom_group_to_group():
    # sign map S3 -> C2, as multiplicative +-1 in Z/9
    G = symmetric(3)
    R = build_galois_ring(3, 2, 1)
    sign = {a: (R.one if _is_even(G, a) else -R.one) for a in range(G.n)}
    gen_imgs = [sign[g] for g in G.generators]
    images, failure = extend_and_verify_hom(G, R.one, gen_imgs)
    assert failure is None
    assert images == [sign[a] for a in range(G.n)]


def _is_even(G: FiniteGroup, a: int) -> bool:
    # in S3 the odd permutations are exactly the three transpositions (order 2)
    return G.order_of(a) != 2
