"""Quandle families built from finite groups.

All formulas run through the single ``mul`` table of :class:`FiniteGroup`, so
additive notation such as ``phi(b - a) + a`` is computed as
``mul[phi[mul[b][inv[a]]]][a]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ClosureError, ContractError, DomainError, InvalidOrderError
from .groups import (FiniteGroup, GroupMap, fixed_points, make_cyclic_group,
                     make_unit_automorphism, subgroup_closure)
from .quandles import Quandle


def _require_verified(phi: GroupMap, G: FiniteGroup | None = None):
    if not phi.verified:
        raise ContractError("an automorphism verified by is_automorphism is required")
    if G is not None and phi.domain != G:
        raise ContractError("automorphism is defined on a different group")


def _require_abelian(A: FiniteGroup):
    if not A.is_abelian:
        raise DomainError(f"{A!r} is not abelian")


def twisted_action(G: FiniteGroup, phi: GroupMap, g: int, h: int) -> int:
    """``s_g(h) = phi(g^-1 h) g`` in the twisted conjugation quandle."""
    m = G.mul
    return m[phi.image[m[G.inv[g]][h]]][g]


@dataclass(frozen=True)
class TwistedConjContext:
    """A subquandle ``X`` of Conj(G, phi) together with its presentation.

    The quandle is indexed by position in ``X`` (ascending group elements):
    carrier index ``i`` stands for group element ``X[i]``.
    """

    ambient: FiniteGroup
    phi: GroupMap
    X: tuple[int, ...]
    generated: frozenset[int]
    quandle: Quandle
    S: tuple[int, ...]
    position: dict[int, int] = field(repr=False, compare=False)
    # the same condition as S, scanned over the whole ambient group
    S_ambient: tuple[int, ...] = ()

    @property
    def is_whole_group(self) -> bool:
        return len(self.X) == self.ambient.order


def compute_S(G: FiniteGroup, phi: GroupMap, X: Iterable[int],
              generated: Iterable[int] | None = None) -> tuple[int, ...]:
    """Elements ``t`` of ``generated`` (by default the subgroup generated by
    ``X``) with ``phi^2(y) = phi(t) y t^-1`` for every ``y`` in ``X``.

    Always scans the whole pool; no abelian shortcut.
    """
    X = list(X)
    if generated is None:
        generated = subgroup_closure(G, X)
    m, p = G.mul, phi.image
    p2 = [p[v] for v in p]
    out = []
    for t in sorted(generated):
        pt, ti = p[t], G.inv[t]
        if all(p2[y] == m[m[pt][y]][ti] for y in X):
            out.append(t)
    return tuple(out)


def alexander_S(A: FiniteGroup, phi: GroupMap) -> tuple[int, ...]:
    """Shortcut for ``S`` when ``X`` is a whole abelian group:
    ``Fix phi`` if ``phi`` squares to the identity, else empty."""
    _require_abelian(A)
    _require_verified(phi, A)
    if not phi.is_involution:
        return ()
    return tuple(sorted(fixed_points(phi)))


def twisted_conj_subquandle(G: FiniteGroup, phi: GroupMap, X: Iterable[int], *,
                            S: Iterable[int] | None = None) -> TwistedConjContext:
    """Context for the subquandle ``X`` of Conj(G, phi).

    ``S`` is computed by the generic scan unless a precomputed set is passed;
    a precomputed set is also used as ``S_ambient``.
    """
    _require_verified(phi, G)
    X = tuple(sorted({int(x) for x in X}))
    if not X:
        raise ClosureError("the carrier of a quandle cannot be empty")
    if X[0] < 0 or X[-1] >= G.order:
        raise ClosureError("subset contains elements outside the group")
    position = {x: i for i, x in enumerate(X)}
    sym = []
    for g in X:
        row = []
        for h in X:
            v = twisted_action(G, phi, g, h)
            if v not in position:
                raise ClosureError(f"s_{g}({h}) = {v} leaves the subset")
            row.append(position[v])
        sym.append(row)
    quandle = Quandle(sym, check=False)
    if len(X) == G.order:
        generated = frozenset(X)
    else:
        generated = subgroup_closure(G, X)
    if S is not None:
        S = S_ambient = tuple(sorted(S))
    else:
        S = compute_S(G, phi, X, generated)
        S_ambient = S if len(generated) == G.order else compute_S(G, phi, X, range(G.order))
    return TwistedConjContext(G, phi, X, generated, quandle, S, position, S_ambient)


def twisted_conj_quandle(G: FiniteGroup, phi: GroupMap) -> TwistedConjContext:
    return twisted_conj_subquandle(G, phi, range(G.order))


def trivial_quandle(n: int) -> Quandle:
    if n < 1:
        raise InvalidOrderError(f"quandle order must be positive, got {n}")
    row = list(range(n))
    return Quandle([row] * n, label=f"T{n}", check=False)


def conj_quandle(G: FiniteGroup) -> Quandle:
    """Conj G with ``s_g(h) = g h g^-1``."""
    m, inv = G.mul, G.inv
    sym = [[m[m[g][h]][inv[g]] for h in range(G.order)] for g in range(G.order)]
    return Quandle(sym, label=f"Conj({G.label})" if G.label else None, check=False)


def alexander_quandle(A: FiniteGroup, phi: GroupMap, label: str | None = None) -> Quandle:
    """Alex(A, phi) with ``s_a(b) = phi(b - a) + a``."""
    _require_abelian(A)
    _require_verified(phi, A)
    m, inv, p = A.mul, A.inv, phi.image
    sym = [[m[p[m[b][inv[a]]]][a] for b in range(A.order)] for a in range(A.order)]
    return Quandle(sym, label=label, check=False)


def linear_quandle(n: int, k: int) -> Quandle:
    """Lambda(n, k): the Alexander quandle of Z/nZ with ``phi(m) = k m``."""
    phi = make_unit_automorphism(n, k)
    return alexander_quandle(phi.domain, phi, f"Lambda({n},{k})")


def linear_context(n: int, k: int) -> TwistedConjContext:
    phi = make_unit_automorphism(n, k)
    return twisted_conj_quandle(phi.domain, phi)


def inversion_map(A: FiniteGroup) -> GroupMap:
    _require_abelian(A)
    return GroupMap(A, A.inv, True)


def takasaki_kei(A: FiniteGroup, label: str | None = None) -> Quandle:
    return alexander_quandle(A, inversion_map(A), label)


def dihedral_quandle(n: int) -> Quandle:
    return takasaki_kei(make_cyclic_group(n), f"R{n}")


def galex_quandle(G: FiniteGroup, phi: GroupMap) -> Quandle:
    """GAlex(G, phi) with ``s_g(h) = phi(h g^-1) g``."""
    _require_verified(phi, G)
    m, inv, p = G.mul, G.inv, phi.image
    sym = [[m[p[m[h][inv[g]]]][g] for h in range(G.order)] for g in range(G.order)]
    return Quandle(sym, check=False)
