"""Finite groups stored as explicit multiplication tables.

Elements are the dense indices ``0..order-1``.  ``mul[g][h]`` is the product
``g*h``.  Everything here is immutable after construction, so groups and maps
can be handed to worker processes as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractError, InvalidOrderError, NotAUnitError, ShapeError

EXHAUSTIVE_ASSOC_LIMIT = 64
ASSOC_SAMPLES = 4096


class FiniteGroup:
    """A finite group given by its Cayley table.

    The identity and inverse tables are derived from ``mul``; construction
    fails with :class:`ShapeError` if the table is not a group table.
    Associativity is checked exhaustively up to order 64 (or whenever
    ``strict`` is set) and on ``ASSOC_SAMPLES`` seeded random triples above.
    """

    def __init__(self, mul: Sequence[Sequence[int]], label: str | None = None,
                 *, strict: bool = False, seed: int = 0):
        try:
            table = np.asarray(mul, dtype=np.int64) if len(mul) else np.zeros((0, 0), np.int64)
        except ValueError:
            raise ShapeError("ragged multiplication table") from None
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ShapeError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise InvalidOrderError("a group has at least one element")
        if table.min() < 0 or table.max() >= n:
            raise ShapeError("table entries must be element indices 0..n-1")
        rng = np.arange(n)
        # latin square: every row and column is a permutation
        if not (np.sort(table, axis=1) == rng).all() or not (np.sort(table, axis=0) == rng[:, None]).all():
            raise ShapeError("multiplication table is not a latin square")
        ids = [e for e in range(n) if (table[e] == rng).all() and (table[:, e] == rng).all()]
        if len(ids) != 1:
            raise ShapeError("multiplication table has no two-sided identity")
        e = ids[0]
        inv = np.argmax(table == e, axis=1)
        if not (table[rng, inv] == e).all() or not (table[inv, rng] == e).all():
            raise ShapeError("some element has no two-sided inverse")
        if not _is_associative(table, strict=strict, seed=seed):
            raise ShapeError("multiplication table is not associative")

        table.setflags(write=False)
        self.order = n
        self.identity = e
        self.label = label
        self.array = table
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in table)
        self.inv: tuple[int, ...] = tuple(int(v) for v in inv)

    def __repr__(self):
        name = self.label or "FiniteGroup"
        return f"<{name} of order {self.order}>"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        x = self.identity
        for _ in range(k):
            x = self.mul[x][g]
        return x


def _is_associative(table: np.ndarray, *, strict: bool, seed: int) -> bool:
    n = table.shape[0]
    if strict or n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            # (a*b)*c versus a*(b*c) over all b, c
            left = table[table[a]]
            right = table[a][table]
            if not (left == right).all():
                return False
        return True
    rs = np.random.default_rng(seed)
    a, b, c = rs.integers(0, n, size=(3, ASSOC_SAMPLES))
    return bool((table[table[a, b], c] == table[a, table[b, c]]).all())


@dataclass(frozen=True)
class GroupMap:
    """A function on the elements of ``domain``.

    ``verified`` is only ever set by :meth:`automorphism`, after
    :func:`is_automorphism` has accepted the table.
    """

    domain: FiniteGroup
    image: tuple[int, ...]
    verified: bool = False

    @classmethod
    def automorphism(cls, G: FiniteGroup, image: Sequence[int]) -> "GroupMap":
        image = tuple(int(v) for v in image)
        if not is_automorphism(G, image):
            raise ContractError("map is not a group automorphism")
        return cls(G, image, True)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupMap":
        return cls(G, tuple(range(G.order)), True)

    def __call__(self, g: int) -> int:
        return self.image[g]

    def __len__(self):
        return len(self.image)

    def compose(self, other: "GroupMap") -> "GroupMap":
        """Return ``self`` after ``other``."""
        if other.domain != self.domain:
            raise ShapeError("maps live on different groups")
        img = tuple(self.image[v] for v in other.image)
        return GroupMap(self.domain, img, self.verified and other.verified)

    def inverse(self) -> "GroupMap":
        if not self.verified:
            raise ContractError("only verified automorphisms can be inverted")
        img = [0] * len(self.image)
        for g, v in enumerate(self.image):
            img[v] = g
        return GroupMap(self.domain, tuple(img), True)

    @property
    def is_identity(self) -> bool:
        return all(v == g for g, v in enumerate(self.image))

    @property
    def is_involution(self) -> bool:
        """True iff the map squares to the identity (the identity included)."""
        return all(self.image[v] == g for g, v in enumerate(self.image))


def make_cyclic_group(n: int) -> FiniteGroup:
    """The additive group Z/nZ."""
    if n < 1:
        raise InvalidOrderError(f"cyclic group order must be positive, got {n}")
    r = np.arange(n)
    return FiniteGroup((r[:, None] + r[None, :]) % n, label=f"Z/{n}")


def make_unit_automorphism(n: int, k: int) -> GroupMap:
    """Multiplication by the unit ``k`` on Z/nZ."""
    if n < 1:
        raise InvalidOrderError(f"cyclic group order must be positive, got {n}")
    if math.gcd(n, k % n) != 1:
        raise NotAUnitError(f"{k} is not a unit modulo {n}")
    G = make_cyclic_group(n)
    return GroupMap(G, tuple((k * a) % n for a in range(n)), True)


def is_automorphism(G: FiniteGroup, f: Sequence[int]) -> bool:
    if len(f) != G.order:
        raise ShapeError(f"map has length {len(f)}, group has order {G.order}")
    f = np.asarray(f, dtype=np.int64)
    if f.min() < 0 or f.max() >= G.order:
        return False
    if len(np.unique(f)) != G.order:
        return False
    table = G.array
    return bool((f[table] == table[f[:, None], f[None, :]]).all())


def _check_elements(G: FiniteGroup, X: Iterable[int]) -> list[int]:
    X = [int(x) for x in X]
    for x in X:
        if not 0 <= x < G.order:
            raise ShapeError(f"element {x} out of range for group of order {G.order}")
    return X


def subgroup_closure(G: FiniteGroup, X: Iterable[int]) -> frozenset[int]:
    """The subgroup generated by ``X`` (worklist saturation)."""
    gens = set(_check_elements(G, X))
    closed = {G.identity}
    todo = [G.identity]
    gens |= {G.inv[x] for x in gens}
    while todo:
        g = todo.pop()
        for x in gens:
            h = G.mul[g][x]
            if h not in closed:
                closed.add(h)
                todo.append(h)
    return frozenset(closed)


def fixed_points(phi: GroupMap) -> frozenset[int]:
    if not phi.verified:
        raise ContractError("fixed points are only defined for verified automorphisms")
    return frozenset(g for g, v in enumerate(phi.image) if g == v)


def count_order2_units(n: int) -> int:
    """Number of k in (Z/nZ)^x with k^2 = 1 and k != 1."""
    if n < 1:
        raise InvalidOrderError(f"n must be positive, got {n}")
    if n <= 2:
        return 0
    return sum(1 for k in range(2, n) if math.gcd(n, k) == 1 and (k * k) % n == 1)


def generators(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily by ascending index."""
    gens: list[int] = []
    span = frozenset([G.identity])
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = subgroup_closure(G, gens)
            if len(span) == G.order:
                break
    return gens


def all_automorphisms(G: FiniteGroup) -> list[GroupMap]:
    """Every automorphism of ``G``, sorted by image table.

    Tries all order-preserving images of a greedy generating set and extends
    each choice along the Cayley graph; meant for small groups only.
    """
    gens = generators(G)
    orders = [G.element_order(g) for g in range(G.order)]
    candidates = [[h for h in range(G.order) if orders[h] == orders[g]] for g in gens]
    found = []

    def extend(images):
        f = {G.identity: G.identity}
        todo = [G.identity]
        while todo:
            x = todo.pop()
            for g, gi in zip(gens, images):
                y, fy = G.mul[x][g], G.mul[f[x]][gi]
                if y in f:
                    if f[y] != fy:
                        return None
                else:
                    f[y] = fy
                    todo.append(y)
        return tuple(f[g] for g in range(G.order))

    def rec(prefix):
        if len(prefix) == len(gens):
            img = extend(prefix)
            if img is not None and is_automorphism(G, img):
                found.append(GroupMap(G, img, True))
            return
        for h in candidates[len(prefix)]:
            rec(prefix + [h])

    rec([])
    return sorted(found, key=lambda m: m.image)
