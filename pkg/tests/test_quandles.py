import itertools

import pytest

from symq.constructors import conj_quandle, dihedral_quandle, linear_quandle, trivial_quandle
from symq.errors import BudgetError, ClosureError, ShapeError
from symq.quandles import (Quandle, are_isomorphic, check_quandle_axioms, connected_components, dual,
                           is_connected, is_kei, is_subquandle_closed, restrict_subquandle)

from conftest import S3_THREE_CYCLES, S3_TRANSPOSITIONS


def brute_isomorphic(Q1, Q2):
    """Oracle: try every bijection."""
    if Q1.order != Q2.order:
        return False
    n = Q1.order
    for theta in itertools.permutations(range(n)):
        if all(theta[Q1.sym[x][y]] == Q2.sym[theta[x]][theta[y]] for x in range(n) for y in range(n)):
            return True
    return False


def orbit_oracle(Q):
    """Union-find over the edges y -- s_x(y)."""
    parent = list(range(Q.order))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for x in range(Q.order):
        for y in range(Q.order):
            parent[find(y)] = find(Q.sym[x][y])
    blocks = {}
    for y in range(Q.order):
        blocks.setdefault(find(y), []).append(y)
    return sorted(tuple(b) for b in blocks.values())


def test_axiom_checker():
    assert check_quandle_axioms(dihedral_quandle(3).sym)
    assert check_quandle_axioms([[0, 1, 2]] * 3)
    bad = [list(r) for r in dihedral_quandle(3).sym]
    bad[0] = [1, 0, 2]
    assert not check_quandle_axioms(bad)
    with pytest.raises(ShapeError):
        check_quandle_axioms([[0, 1], [0]])


def test_constructor_rejects_non_quandle():
    with pytest.raises(ShapeError):
        Quandle([[1, 0], [0, 1]])


def test_convention_on_worked_example():
    # Lambda(8,5): s_a(b) = 5(b - a) + a, stored as sym[actor][operand]
    Q = linear_quandle(8, 5)
    assert Q.sym[1][0] == 4
    assert Q.sym[0][1] == 5


def test_kei():
    assert is_kei(dihedral_quandle(5))
    assert is_kei(linear_quandle(15, 4))
    assert not is_kei(linear_quandle(5, 2))


def test_dual():
    Q = linear_quandle(12, 7)
    assert dual(dual(Q)) == Q
    R = dihedral_quandle(7)
    assert dual(R) == R
    P = linear_quandle(5, 2)
    assert dual(P) != P and check_quandle_axioms(dual(P).sym)


def test_dual_of_conj_s3_is_right_conjugation(s3):
    D = dual(conj_quandle(s3))
    m, inv = s3.mul, s3.inv
    assert all(D.sym[g][h] == m[m[inv[g]][h]][g] for g in range(6) for h in range(6))


def test_subquandle_closure(s3):
    C = conj_quandle(s3)
    assert is_subquandle_closed(C, S3_TRANSPOSITIONS)
    assert all(is_subquandle_closed(C, {x}) for x in range(6))
    # the identity is central, so together with one transposition it is still closed
    assert is_subquandle_closed(C, {0, S3_TRANSPOSITIONS[0]})
    assert not is_subquandle_closed(C, S3_TRANSPOSITIONS[:2])
    assert not is_subquandle_closed(C, {S3_TRANSPOSITIONS[0], S3_THREE_CYCLES[0]})
    with pytest.raises(ShapeError):
        is_subquandle_closed(C, {6})


def test_restrict(s3):
    Q = linear_quandle(8, 5)
    assert restrict_subquandle(Q, range(8)) == Q
    C = conj_quandle(s3)
    T = restrict_subquandle(C, S3_TRANSPOSITIONS)
    assert T.order == 3 and brute_isomorphic(T, dihedral_quandle(3))
    single = restrict_subquandle(C, {4})
    assert single.order == 1
    with pytest.raises(ClosureError):
        restrict_subquandle(C, S3_TRANSPOSITIONS[:2])


def test_components_of_lambda_8_5():
    part = connected_components(linear_quandle(8, 5))
    assert part.components == ((0, 4), (1, 5), (2, 6), (3, 7))
    assert sorted(part.components) == orbit_oracle(linear_quandle(8, 5))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_components_of_lambda_4n(n):
    Q = linear_quandle(4 * n, 2 * n + 1)
    part = connected_components(Q)
    assert len(part) == 2 * n
    assert set(part.components) == {(m, m + 2 * n) for m in range(2 * n)}


def test_components_trivial():
    assert len(connected_components(trivial_quandle(5))) == 5


@pytest.mark.parametrize("Q", [linear_quandle(12, 5), linear_quandle(9, 2), dihedral_quandle(10),
                               linear_quandle(16, 9), trivial_quandle(3)])
def test_components_match_union_find(Q):
    part = connected_components(Q)
    assert sorted(part.components) == orbit_oracle(Q)
    # ids follow the smallest member
    assert [c[0] for c in part.components] == sorted(c[0] for c in part.components)
    for x in range(Q.order):
        for y in range(Q.order):
            assert part.component_of[Q.sym[x][y]] == part.component_of[y]


def test_connected():
    assert is_connected(dihedral_quandle(5))
    assert not is_connected(dihedral_quandle(6))
    assert is_connected(trivial_quandle(1))


def test_isomorphism():
    theta = are_isomorphic(linear_quandle(8, 3), dihedral_quandle(8))
    assert theta is not None
    assert are_isomorphic(linear_quandle(8, 5), dihedral_quandle(8)) is None
    Q = linear_quandle(12, 7)
    assert are_isomorphic(Q, Q) is not None


def test_identity_isomorphism_found_for_rigid_quandle():
    Q = dihedral_quandle(5)
    theta = are_isomorphic(Q, Q)
    n = Q.order
    assert all(theta[Q.sym[x][y]] == Q.sym[theta[x]][theta[y]] for x in range(n) for y in range(n))


@pytest.mark.parametrize("pair", [(linear_quandle(5, 2), linear_quandle(5, 3)),
                                  (linear_quandle(7, 3), linear_quandle(7, 5)),
                                  (dihedral_quandle(6), linear_quandle(6, 5)),
                                  (linear_quandle(5, 2), dihedral_quandle(5))])
def test_isomorphism_matches_brute_oracle(pair):
    Q1, Q2 = pair
    assert (are_isomorphic(Q1, Q2) is not None) == brute_isomorphic(Q1, Q2)


def test_isomorphism_budget():
    with pytest.raises(BudgetError):
        are_isomorphic(trivial_quandle(9), trivial_quandle(9), node_budget=3)
