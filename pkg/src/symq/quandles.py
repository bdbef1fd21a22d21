"""Finite quandles as families of point symmetries.

A quandle of order ``n`` is stored as ``sym``, an ``n x n`` table with
``sym[x][y] = s_x(y)``: row ``x`` is the permutation by which ``x`` acts.
So the operand comes second, ``sym[actor][operand]``.  In the linear quandle
Lambda(8, 5), ``s_a(b) = 5*(b - a) + a`` and ``sym[1][0] = 5*(0-1)+1 = 4``:
element 0 acted on by 1 lands on 4.

Axioms checked on construction:

* every row is a permutation,
* ``s_x(x) = x``,
* ``s_x s_y = s_{s_x(y)} s_x``  (composition applies the right factor first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetError, ClosureError, ShapeError


def _as_table(sym) -> np.ndarray:
    try:
        table = np.asarray(sym, dtype=np.int64)
    except ValueError as exc:
        raise ShapeError("ragged point-symmetry table") from exc
    if table.size == 0:
        raise ShapeError("empty point-symmetry table")
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ShapeError("point-symmetry table must be square")
    return table


def check_quandle_axioms(sym: Sequence[Sequence[int]]) -> bool:
    """True iff ``sym`` is the point-symmetry table of a quandle."""
    S = _as_table(sym)
    n = S.shape[0]
    r = np.arange(n)
    if S.min() < 0 or S.max() >= n:
        return False
    if not (np.sort(S, axis=1) == r).all():
        return False
    if not (S[r, r] == r).all():
        return False
    for x in range(n):
        # s_x(s_y(z)) == s_{s_x(y)}(s_x(z)) for all y, z
        lhs = S[x][S]
        rhs = S[S[x]][:, S[x]]
        if not (lhs == rhs).all():
            return False
    return True


@dataclass(frozen=True)
class ComponentPartition:
    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.components)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.components]


class Quandle:
    """A finite quandle.

    Pass ``check=False`` only for tables that are quandles by construction and
    have been validated elsewhere; the default runs :func:`check_quandle_axioms`.
    """

    def __init__(self, sym: Sequence[Sequence[int]], *, label: str | None = None,
                 check: bool = True):
        table = _as_table(sym)
        if check and not check_quandle_axioms(table):
            raise ShapeError("table violates the quandle axioms")
        table.setflags(write=False)
        self.array = table
        self.order = table.shape[0]
        self.sym: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in table)
        self.label = label

    def __repr__(self):
        return f"<Quandle {self.label or ''} of order {self.order}>".replace("  ", " ")

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.sym == other.sym

    def __hash__(self):
        return hash(self.sym)

    def __len__(self):
        return self.order

    # caches are computed once on first access

    @cached_property
    def inverse_array(self) -> np.ndarray:
        inv = np.argsort(self.array, axis=1)
        inv.setflags(write=False)
        return inv

    @cached_property
    def kei(self) -> bool:
        S = self.array
        return bool((np.take_along_axis(S, S, axis=1) == np.arange(self.order)).all())

    @cached_property
    def components(self) -> ComponentPartition:
        n = self.order
        component_of = [-1] * n
        blocks = []
        for seed in range(n):
            if component_of[seed] >= 0:
                continue
            cid = len(blocks)
            component_of[seed] = cid
            block = [seed]
            frontier = [seed]
            while frontier:
                y = frontier.pop()
                for row in self.sym:
                    z = row[y]
                    if component_of[z] < 0:
                        component_of[z] = cid
                        block.append(z)
                        frontier.append(z)
            blocks.append(tuple(sorted(block)))
        return ComponentPartition(tuple(component_of), tuple(blocks))


def is_kei(Q: Quandle) -> bool:
    return Q.kei


def connected_components(Q: Quandle) -> ComponentPartition:
    return Q.components


def is_connected(Q: Quandle) -> bool:
    return len(Q.components) == 1


def dual(Q: Quandle) -> Quandle:
    """The quandle whose point symmetries are the inverses of those of ``Q``."""
    return Quandle(Q.inverse_array, label=f"{Q.label}^op" if Q.label else None, check=False)


def _check_subset(Q: Quandle, Y: Iterable[int]) -> list[int]:
    Y = sorted({int(y) for y in Y})
    for y in Y:
        if not 0 <= y < Q.order:
            raise ShapeError(f"element {y} out of range for quandle of order {Q.order}")
    return Y


def is_subquandle_closed(Q: Quandle, Y: Iterable[int]) -> bool:
    Y = _check_subset(Q, Y)
    members = set(Y)
    # s_y is injective, so s_y(Y) within Y already forces equality
    return all(Q.sym[y][z] in members for y in Y for z in Y)


def restrict_subquandle(Q: Quandle, Y: Iterable[int]) -> Quandle:
    """The subquandle on ``Y``, re-indexed by ascending element."""
    Y = _check_subset(Q, Y)
    if not Y or not is_subquandle_closed(Q, Y):
        raise ClosureError("subset is not closed under its point symmetries")
    pos = {y: i for i, y in enumerate(Y)}
    return Quandle([[pos[Q.sym[y][z]] for z in Y] for y in Y], check=False)


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def _element_invariants(Q: Quandle) -> list[tuple]:
    comp = Q.components
    sizes = comp.sizes()
    fixed = [sum(1 for y in range(Q.order) if Q.sym[y][x] == x) for x in range(Q.order)]
    return [(_cycle_type(Q.sym[x]), sizes[comp.component_of[x]], fixed[x]) for x in range(Q.order)]


def are_isomorphic(Q1: Quandle, Q2: Quandle, *, node_budget: int = 1_000_000) -> tuple[int, ...] | None:
    """Find a quandle isomorphism ``Q1 -> Q2`` as an image table, or None.

    Backtracks over element images, pruned by per-element invariants
    (cycle type of ``s_x``, size of the component of ``x``, number of
    ``y`` fixing ``x``) and propagating ``theta(s_x(y)) = s'_{theta x}(theta y)``
    after each choice.  Raises :class:`BudgetError` past ``node_budget``
    search nodes.
    """
    n = Q1.order
    if n != Q2.order or Q1.kei != Q2.kei:
        return None
    if sorted(Q1.components.sizes()) != sorted(Q2.components.sizes()):
        return None
    inv1, inv2 = _element_invariants(Q1), _element_invariants(Q2)
    if sorted(inv1) != sorted(inv2):
        return None
    s1, s2 = Q1.sym, Q2.sym
    nodes = 0

    def propagate(theta, used, new):
        queue = list(new)
        assigned = [x for x in range(n) if theta[x] >= 0]
        while queue:
            u = queue.pop()
            for v in assigned:
                for a, b in ((u, v), (v, u)):
                    z, w = s1[a][b], s2[theta[a]][theta[b]]
                    if theta[z] < 0:
                        if used[w] or inv1[z] != inv2[w]:
                            return False
                        theta[z] = w
                        used[w] = True
                        assigned.append(z)
                        queue.append(z)
                    elif theta[z] != w:
                        return False
            if theta[u] >= 0 and u not in assigned:
                assigned.append(u)
        return True

    def search(theta, used):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetError(f"isomorphism search exceeded {node_budget} nodes")
        try:
            x = theta.index(-1)
        except ValueError:
            return tuple(theta)
        for y in range(n):
            if used[y] or inv1[x] != inv2[y]:
                continue
            t2, u2 = list(theta), list(used)
            t2[x], u2[y] = y, True
            if propagate(t2, u2, [x]):
                hit = search(t2, u2)
                if hit is not None:
                    return hit
        return None

    theta = search([-1] * n, [False] * n)
    if theta is not None:
        assert all(theta[s1[x][y]] == s2[theta[x]][theta[y]] for x in range(n) for y in range(n))
    return theta
