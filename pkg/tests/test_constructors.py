import math

import pytest

from symq.constructors import (alexander_S, alexander_quandle, compute_S, conj_quandle,
                               dihedral_quandle, galex_quandle, inversion_map, linear_context,
                               linear_quandle, takasaki_kei, trivial_quandle, twisted_conj_quandle,
                               twisted_conj_subquandle)
from symq.errors import ClosureError, ContractError, DomainError, InvalidOrderError, NotAUnitError
from symq.groups import (GroupMap, all_automorphisms, fixed_points, make_cyclic_group,
                         make_unit_automorphism)
from symq.quandles import (check_quandle_axioms, connected_components, dual, is_connected, is_kei,
                           restrict_subquandle)

from conftest import GROUP_FILES, S3_TRANSPOSITIONS, load_group


def units(n):
    return [k for k in range(n) if math.gcd(n, k) == 1]


def test_trivial():
    assert trivial_quandle(1).order == 1
    assert len(connected_components(trivial_quandle(3))) == 3
    assert linear_quandle(5, 1) == trivial_quandle(5)
    with pytest.raises(InvalidOrderError):
        trivial_quandle(0)


def test_conj():
    Z = make_cyclic_group(6)
    assert conj_quandle(Z) == trivial_quandle(6)
    assert conj_quandle(make_cyclic_group(1)).order == 1


def test_conj_s3_components_are_classes(s3):
    part = connected_components(conj_quandle(s3))
    assert sorted(map(len, part.components)) == [1, 2, 3]
    assert set(part.components) == {(0,), (3, 4), S3_TRANSPOSITIONS}


def test_twisted_identity_is_dual_conj(s3):
    ctx = twisted_conj_quandle(s3, GroupMap.identity(s3))
    assert ctx.quandle == dual(conj_quandle(s3))


def test_twisted_requires_verified(s3):
    with pytest.raises(ContractError):
        twisted_conj_quandle(s3, GroupMap(s3, tuple(range(6))))
    with pytest.raises(ContractError):
        galex_quandle(s3, GroupMap(s3, tuple(range(6))))


def test_twisted_abelian_matches_alexander():
    phi = make_unit_automorphism(8, 5)
    ctx = twisted_conj_quandle(phi.domain, phi)
    assert ctx.quandle == alexander_quandle(phi.domain, phi) == linear_quandle(8, 5)


def test_subquandle_context(s3):
    phi = GroupMap.identity(s3)
    whole = twisted_conj_subquandle(s3, phi, range(6))
    assert whole.quandle == twisted_conj_quandle(s3, phi).quandle
    cls = twisted_conj_subquandle(s3, phi, S3_TRANSPOSITIONS)
    assert cls.quandle == restrict_subquandle(dual(conj_quandle(s3)), S3_TRANSPOSITIONS)
    assert cls.generated == frozenset(range(6))
    single = twisted_conj_subquandle(s3, phi, {0})
    assert single.quandle.order == 1
    # phi = id: S is the centre of the generated subgroup, here trivial
    assert single.S == (0,)
    with pytest.raises(ClosureError):
        twisted_conj_subquandle(s3, phi, {S3_TRANSPOSITIONS[0], 3})


def test_alexander_examples():
    for n in range(1, 12):
        assert alexander_quandle(make_cyclic_group(n), make_unit_automorphism(n, -1)) == dihedral_quandle(n)
    V = load_group("z2xz2")
    swap = next(a for a in all_automorphisms(V) if a.is_involution and not a.is_identity)
    Q = alexander_quandle(V, swap)
    assert Q.order == 4 and is_kei(Q) and check_quandle_axioms(Q.sym)


def test_alexander_rejects_nonabelian(s3):
    with pytest.raises(DomainError):
        alexander_quandle(s3, GroupMap.identity(s3))
    with pytest.raises(DomainError):
        takasaki_kei(s3)


def test_linear():
    Q = linear_quandle(8, 5)
    assert Q.order == 8 and len(connected_components(Q)) == 4 and is_kei(Q)
    assert linear_quandle(5, -1) == dihedral_quandle(5)
    with pytest.raises(NotAUnitError):
        linear_quandle(6, 2)


def test_dihedral_and_takasaki():
    R3 = dihedral_quandle(3)
    assert all(R3.sym[a][b] == (2 * a - b) % 3 for a in range(3) for b in range(3))
    assert takasaki_kei(load_group("z2xz2")) == trivial_quandle(4)
    assert len(connected_components(dihedral_quandle(6))) == 2


def test_galex(s3):
    assert check_quandle_axioms(galex_quandle(s3, GroupMap.identity(s3)).sym)
    phi = make_unit_automorphism(9, 4)
    assert galex_quandle(phi.domain, phi) == alexander_quandle(phi.domain, phi)


def test_galex_a5_is_connected_kei():
    A5 = load_group("a5")
    # conjugation by a double transposition, found in the table as an involution
    a = next(g for g in range(A5.order) if A5.element_order(g) == 2)
    phi = GroupMap.automorphism(A5, [A5.mul[A5.mul[a][g]][a] for g in range(A5.order)])
    Q = galex_quandle(A5, phi)
    assert Q.order == 60
    assert check_quandle_axioms(Q.sym)
    assert is_kei(Q) and is_connected(Q)


def test_all_linear_quandles_satisfy_axioms():
    for n in range(1, 25):
        for k in units(n):
            assert check_quandle_axioms(linear_quandle(n, k).sym), (n, k)


def test_linear_kei_iff_involution():
    for n in range(1, 25):
        for k in units(n):
            assert is_kei(linear_quandle(n, k)) == ((k * k) % n == 1 % n), (n, k)


def test_generic_S_matches_alexander_shortcut():
    for n in range(1, 25):
        for k in units(n):
            phi = make_unit_automorphism(n, k)
            ctx = linear_context(n, k)
            assert ctx.S == alexander_S(phi.domain, phi), (n, k)
            assert ctx.S == (tuple(sorted(fixed_points(phi))) if (k * k) % n == 1 % n else ())


@pytest.mark.parametrize("name", GROUP_FILES)
def test_twisted_family_on_fixture_groups(name):
    G = load_group(name)
    for phi in all_automorphisms(G):
        ctx = twisted_conj_quandle(G, phi)
        Q = ctx.quandle
        assert check_quandle_axioms(Q.sym)
        assert check_quandle_axioms(galex_quandle(G, phi).sym)
        # every S element satisfies the defining identity
        p = phi.image
        for t in ctx.S:
            for y in ctx.X:
                assert p[p[y]] == G.mul[G.mul[p[t]][y]][G.inv[t]]
        # X contains the identity, so S sits inside Fix phi
        assert set(ctx.S) <= fixed_points(phi)
        if G.is_abelian:
            assert Q == alexander_quandle(G, phi) == galex_quandle(G, phi)
            assert ctx.S == alexander_S(G, phi)


def test_S_generic_scan_is_independent_of_identity_shortcut(s3):
    # a subquandle without the identity uses the first form of S
    phi = GroupMap.identity(s3)
    S = compute_S(s3, phi, S3_TRANSPOSITIONS)
    assert S == (0,)
    assert inversion_map(make_cyclic_group(5)).image == (0, 4, 3, 2, 1)
