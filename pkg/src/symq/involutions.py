"""Good involutions: verification, a brute-force oracle, and the fast enumerator.

A good involution of a quandle ``(X, s)`` is an involution ``rho`` of ``X``
with ``rho s_x = s_x rho`` and ``s_{rho(x)} = s_x^-1`` for all ``x``.

:func:`enumerate_brute` searches involutions directly.  :func:`enumerate_theorem`
works on a subquandle of a twisted conjugation quandle Conj(G, phi): every good
involution has the form ``rho(x) = phi(x)^-1 psi(x)`` for a function ``psi``
that is constant on connected components, takes values in ``S_ambient`` (the
elements ``t`` of G with ``phi^2(y) = phi(t) y t^-1`` on X), and satisfies
``psi(rho(x)) = psi(x)``.  The search assigns one value per component.  Giving
component ``c`` the value ``t`` forces the same value on every component that
``rho`` sends an element of ``c`` into, so each choice carries a precomputed
closure of forced components.

The order of the factors matters once G is non-abelian: ``psi(x) phi(x)^-1``
with ``t`` restricted to the subgroup generated by X is not complete (and not
always sound) there.  ``literal=True`` runs that variant for comparison.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .constructors import TwistedConjContext, alexander_S, twisted_conj_subquandle
from .errors import BudgetError, DomainError, InconsistencyError, ShapeError
from .groups import FiniteGroup, GroupMap, make_unit_automorphism
from .quandles import Quandle

BRUTE_CEILING = 12
MAPPING_CAP = 10**7
VERIFY_BATCH = 4096


@dataclass(frozen=True, order=True)
class GoodInvolution:
    mapping: tuple[int, ...]
    inducing_psi: tuple[int, ...] | None = None


@dataclass
class GoodInvolutionSet:
    count: int
    mappings: list[GoodInvolution] | None
    method: str
    nodes: int = 0
    seconds: float = 0.0
    cross_check: dict[str, int] = field(default_factory=dict)
    # search hits dropped by the final check (only ever nonzero in literal mode)
    rejected: int = 0

    def rhos(self) -> list[tuple[int, ...]]:
        if self.mappings is None:
            raise ValueError("enumeration ran in count-only mode")
        return [g.mapping for g in self.mappings]


# --------------------------------------------------------------------------
# verification


def _as_permutation(Q: Quandle, rho) -> np.ndarray:
    r = np.asarray(rho, dtype=np.int64)
    if r.shape != (Q.order,):
        raise ShapeError(f"expected a map on {Q.order} points, got shape {r.shape}")
    if not (np.sort(r) == np.arange(Q.order)).all():
        raise ShapeError("map is not a permutation of the carrier")
    return r


def verify_good_involution(Q: Quandle, rho: Sequence[int]) -> bool:
    r = _as_permutation(Q, rho)
    return bool(verify_batch(Q, r[None, :])[0])


def _index_dtype(n: int):
    return np.uint8 if n <= 256 else np.int32


def verify_batch(Q: Quandle, rhos: np.ndarray) -> np.ndarray:
    """Row-wise good-involution test for a ``(batch, order)`` array of permutations."""
    n = Q.order
    dt = _index_dtype(n)
    S, Sinv = Q.array.astype(dt), Q.inverse_array.astype(dt)
    rhos = np.asarray(rhos).astype(dt)
    ok = (np.take_along_axis(rhos, rhos.astype(np.intp), axis=1) == np.arange(n, dtype=dt)).all(axis=1)
    # rho(s_x(y)) == s_x(rho(y)):  rhos[b, S[x, y]]  vs  S[x, rhos[b, y]]
    ok &= (rhos[:, S] == S[:, rhos].transpose(1, 0, 2)).all(axis=(1, 2))
    # s_{rho(x)} == s_x^-1
    ok &= (S[rhos] == Sinv[None]).all(axis=(1, 2))
    return ok


# --------------------------------------------------------------------------
# brute force


def enumerate_brute(Q: Quandle, *, ceiling: int = BRUTE_CEILING, mappings: bool = True) -> GoodInvolutionSet:
    """Search all involutions of the carrier against the definition.

    Pairs ``x`` only with targets ``y`` whose point symmetry is ``s_x^-1``,
    and rejects a partial pairing as soon as a commutation constraint
    between two paired points fails.
    """
    n = Q.order
    if n > ceiling:
        raise BudgetError(f"order {n} exceeds the brute-force ceiling {ceiling}")
    t0 = time.perf_counter()
    sym = Q.sym
    inv_sym = [tuple(int(v) for v in row) for row in Q.inverse_array]
    by_row: dict[tuple[int, ...], list[int]] = {}
    for y, row in enumerate(sym):
        by_row.setdefault(row, []).append(y)
    targets = [by_row.get(inv_sym[x], []) for x in range(n)]
    # pre[a][w] = s_a^-1(w)
    pre = inv_sym

    rho = [-1] * n
    found: list[tuple[int, ...]] = []
    nodes = 0

    def consistent(z):
        rz = rho[z]
        for a in range(n):
            w = sym[a][z]
            if rho[w] >= 0 and rho[w] != sym[a][rz]:
                return False
            u = pre[a][z]
            if rho[u] >= 0 and rz != sym[a][rho[u]]:
                return False
        return True

    def rec(start):
        nonlocal nodes
        nodes += 1
        x = start
        while x < n and rho[x] >= 0:
            x += 1
        if x == n:
            found.append(tuple(rho))
            return
        for y in targets[x]:
            if rho[y] >= 0:
                continue
            rho[x], rho[y] = y, x
            if consistent(x) and (y == x or consistent(y)):
                rec(x + 1)
            rho[x] = rho[y] = -1

    rec(0)
    hits = []
    for start in range(0, len(found), VERIFY_BATCH):
        chunk = np.array(found[start:start + VERIFY_BATCH], dtype=np.int64)
        keep = verify_batch(Q, chunk)
        hits.extend(r for r, k in zip(found[start:start + VERIFY_BATCH], keep) if k)
    hits.sort()
    result = GoodInvolutionSet(
        count=len(hits),
        mappings=[GoodInvolution(r) for r in hits] if mappings else None,
        method="brute",
        nodes=nodes,
        seconds=time.perf_counter() - t0,
    )
    return result


# --------------------------------------------------------------------------
# theorem-driven search


@dataclass(frozen=True)
class SearchPlan:
    """Everything a (possibly remote) worker needs to run the component search."""

    n_components: int
    S: tuple[int, ...]
    # closure[c][j]: bitmask of components forced to S[j] by giving c the value S[j];
    # None when some element would be sent outside the carrier
    closure: tuple[tuple[int | None, ...], ...]
    component_of: tuple[int, ...]
    # for vectorised reconstruction: rho(x) = position[mul[target[x]][S[j]]],
    # or position[mul[S[j]][target[x]]] when left is set
    mul: np.ndarray
    target: np.ndarray
    position: np.ndarray
    quandle: Quandle
    left: bool = False


def build_plan(ctx: TwistedConjContext, S: Sequence[int] | None = None, *, left: bool = False) -> SearchPlan:
    G, phi, X = ctx.ambient, ctx.phi, ctx.X
    S = tuple(ctx.S_ambient if S is None else S)
    part = ctx.quandle.components
    comp_of = part.component_of
    m = G.mul
    # phi(x)^-1 for each carrier point
    target = [G.inv[phi.image[g]] for g in X]
    position = np.full(G.order, -1, dtype=np.int64)
    for i, g in enumerate(X):
        position[g] = i

    closure = []
    for c in range(len(part)):
        row = []
        for t in S:
            mask = 1 << c
            todo = [c]
            ok = True
            while todo and ok:
                d = todo.pop()
                for x in part.components[d]:
                    y = ctx.position.get(m[t][target[x]] if left else m[target[x]][t])
                    if y is None:
                        ok = False
                        break
                    e = comp_of[y]
                    if not mask >> e & 1:
                        mask |= 1 << e
                        todo.append(e)
            row.append(mask if ok else None)
        closure.append(tuple(row))
    return SearchPlan(
        n_components=len(part),
        S=S,
        closure=tuple(closure),
        component_of=comp_of,
        mul=G.array,
        target=np.array(target, dtype=np.int64),
        position=position,
        quandle=ctx.quandle,
        left=left,
    )


def _search(plan: SearchPlan, prefix: Sequence[int], emit: Callable[[tuple[int, ...]], None],
            deadline: float | None = None) -> int:
    """Depth-first search over psi* assignments extending ``prefix``.

    ``prefix`` fixes the S-indices of components ``0, 1, ...`` up front.
    Calls ``emit`` with every complete assignment (one S-index per component)
    and returns the number of search nodes visited.  Components are taken in
    ascending order and S-values in ascending index, so the emission order is
    deterministic.
    """
    full = (1 << plan.n_components) - 1
    closure = plan.closure
    nS = len(plan.S)
    assignment = [-1] * plan.n_components
    value_masks = [0] * nS
    nodes = 0

    def place(c, j, assigned):
        cl = closure[c][j]
        if cl is None or cl & assigned & ~value_masks[j]:
            return None
        new = cl & ~assigned
        value_masks[j] |= new
        bits = new
        while bits:
            low = bits & -bits
            assignment[low.bit_length() - 1] = j
            bits ^= low
        return new

    def unplace(j, new):
        value_masks[j] &= ~new
        bits = new
        while bits:
            low = bits & -bits
            assignment[low.bit_length() - 1] = -1
            bits ^= low

    def rec(assigned):
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes & 0xFFFF == 1 and time.monotonic() > deadline:
            raise BudgetError("search ran past its time budget")
        if assigned == full:
            emit(tuple(assignment))
            return
        free = ~assigned & full
        c = (free & -free).bit_length() - 1
        for j in range(nS):
            new = place(c, j, assigned)
            if new is None:
                continue
            rec(assigned | new)
            unplace(j, new)

    if not nS:
        return 0
    assigned = 0
    for c, j in enumerate(prefix):
        if assigned >> c & 1:
            if assignment[c] != j:
                return nodes
            continue
        new = place(c, j, assigned)
        if new is None:
            return nodes
        assigned |= new
    rec(assigned)
    return nodes


class _Collector:
    """Receives assignments, verifies them in batches and keeps the survivors."""

    def __init__(self, plan: SearchPlan, keep: bool, cap: int, verify: bool):
        self.plan = plan
        self.keep = keep
        self.cap = cap
        self.verify = verify
        self.pending: list[tuple[int, ...]] = []
        self.count = 0
        self.rejected = 0
        self.rows: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        self.S = np.array(plan.S, dtype=np.int64)
        self.comp_of = np.array(plan.component_of, dtype=np.int64)

    def __call__(self, assignment):
        self.pending.append(assignment)
        if len(self.pending) >= VERIFY_BATCH:
            self.flush()

    def flush(self):
        if not self.pending:
            return
        plan = self.plan
        psi_star = self.S[np.array(self.pending, dtype=np.int64)]
        psi = psi_star[:, self.comp_of]
        if plan.left:
            rhos = plan.position[plan.mul[psi, plan.target[None, :]]]
        else:
            rhos = plan.position[plan.mul[plan.target[None, :], psi]]
        self.pending = []
        if self.verify:
            ok = (rhos >= 0).all(axis=1)
            ok[ok] = verify_batch(plan.quandle, rhos[ok])
            self.rejected += int((~ok).sum())
            rhos, psi_star = rhos[ok], psi_star[ok]
        self.count += len(rhos)
        if self.keep:
            if self.count > self.cap:
                raise BudgetError(f"more than {self.cap} mappings; rerun in count-only mode")
            self.rows.extend(zip(map(tuple, rhos.tolist()), map(tuple, psi_star.tolist())))


def _run_shard(plan: SearchPlan, prefix, keep: bool, cap: int, verify: bool, deadline: float | None):
    sink = _Collector(plan, keep, cap, verify)
    nodes = _search(plan, prefix, sink, deadline)
    sink.flush()
    return sink.count, sink.rejected, nodes, sink.rows


def default_workers() -> int:
    env = os.environ.get("SYMQ_WORKERS")
    return max(1, int(env)) if env else 1


def _check_bounds(ctx: TwistedConjContext, S, count: int):
    n_comp = len(ctx.quandle.components)
    if count > len(S) ** n_comp:
        raise InconsistencyError(f"{count} good involutions exceed |S|^|O| = {len(S) ** n_comp}")
    if ctx.is_whole_group and count < len(S):
        raise InconsistencyError(f"{count} good involutions, fewer than |S| = {len(S)}")


def enumerate_theorem(ctx: TwistedConjContext, *, mappings: bool = True, workers: int | None = None,
                      mapping_cap: int = MAPPING_CAP, verify: bool = True,
                      S: Sequence[int] | None = None, method: str = "theorem",
                      time_budget: float | None = None, literal: bool = False) -> GoodInvolutionSet:
    """All good involutions of ``ctx.quandle`` via the component search.

    With ``workers > 1`` the value of the first component is split across
    worker processes; results are merged by sorting, so the output does not
    depend on the worker count.  ``S`` overrides the set searched (by default
    ``ctx.S_ambient``).  Past ``time_budget`` seconds the search raises
    :class:`BudgetError`.

    ``literal=True`` searches ``rho(x) = psi(x) phi(x)^-1`` with ``psi`` valued
    in ``ctx.S`` instead.  Hits failing verification are then dropped and
    counted in ``rejected`` rather than treated as an internal error.
    """
    t0 = time.perf_counter()
    deadline = None if time_budget is None else time.monotonic() + time_budget
    if literal:
        plan = build_plan(ctx, ctx.S if S is None else S, left=True)
        method = "literal"
    else:
        plan = build_plan(ctx, S)
    workers = default_workers() if workers is None else max(1, workers)
    shards = [(j,) for j in range(len(plan.S))] if plan.n_components else [()]
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_shard, plan, p, mappings, mapping_cap, verify, deadline) for p in shards]
            parts = [f.result() for f in futures]
    else:
        parts = [_run_shard(plan, p, mappings, mapping_cap, verify, deadline) for p in shards]

    count = sum(p[0] for p in parts)
    rejected = sum(p[1] for p in parts)
    nodes = sum(p[2] for p in parts)
    if rejected and not literal:
        raise InconsistencyError(f"{rejected} search hits failed the good-involution check")
    if mappings and count > mapping_cap:
        raise BudgetError(f"more than {mapping_cap} mappings; rerun in count-only mode")
    if not literal:
        _check_bounds(ctx, plan.S, count)
    found = None
    if mappings:
        rows = sorted(r for p in parts for r in p[3])
        found = [GoodInvolution(rho, psi) for rho, psi in rows]
    return GoodInvolutionSet(count, found, method, nodes, time.perf_counter() - t0, rejected=rejected)


class _Found(Exception):
    pass


def find_good_involution(ctx: TwistedConjContext) -> GoodInvolution | None:
    """The first good involution in search order, or None; stops at the first hit."""
    plan = build_plan(ctx)
    sink = _Collector(plan, True, 1, True)

    def emit(assignment):
        sink(assignment)
        sink.flush()
        if sink.rows:
            raise _Found

    try:
        _search(plan, (), emit)
    except _Found:
        rho, psi = sink.rows[0]
        return GoodInvolution(rho, psi)
    if sink.rejected:
        raise InconsistencyError(f"{sink.rejected} search hits failed the good-involution check")
    return None


def alexander_context(A: FiniteGroup, phi: GroupMap) -> TwistedConjContext:
    """Context for Alex(A, phi) with ``S`` filled by the fixed-point shortcut."""
    if not A.is_abelian:
        raise DomainError(f"{A!r} is not abelian")
    return twisted_conj_subquandle(A, phi, range(A.order), S=alexander_S(A, phi))


def enumerate_alexander(n: int | None = None, k: int | None = None, *, group: FiniteGroup | None = None,
                        phi: GroupMap | None = None, **kwargs) -> GoodInvolutionSet:
    """Good involutions of an Alexander quandle, with ``S`` taken as Fix(phi)
    when phi is an involution and empty otherwise."""
    if group is None:
        phi = make_unit_automorphism(n, k)
        group = phi.domain
    ctx = alexander_context(group, phi)
    return enumerate_theorem(ctx, method="alexander", **kwargs)


def _same_rhos(a: GoodInvolutionSet, b: GoodInvolutionSet) -> bool:
    return a.rhos() == b.rhos()


def count_good(target, method: str = "auto", *, ceiling: int = BRUTE_CEILING, **kwargs) -> GoodInvolutionSet:
    """Dispatch between the brute-force and theorem routes.

    ``target`` is a :class:`Quandle` or a :class:`TwistedConjContext`.  With
    ``method="both"`` the two routes run side by side and any disagreement
    raises :class:`InconsistencyError`.
    """
    ctx = target if isinstance(target, TwistedConjContext) else None
    Q = ctx.quandle if ctx is not None else target
    if method == "auto":
        method = "theorem" if ctx is not None else "brute"
    if method == "brute":
        return enumerate_brute(Q, ceiling=ceiling, mappings=kwargs.get("mappings", True))
    if ctx is None:
        raise DomainError(f"method {method!r} needs a twisted conjugation presentation")
    if method == "theorem":
        return enumerate_theorem(ctx, **kwargs)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    kwargs["mappings"] = True
    fast = enumerate_theorem(ctx, **kwargs)
    slow = enumerate_brute(Q, ceiling=ceiling)
    counts = {"brute": slow.count, "theorem": fast.count}
    if slow.count != fast.count or not _same_rhos(slow, fast):
        raise InconsistencyError(f"brute and theorem enumerations disagree: {counts}", counts)
    fast.cross_check = counts
    return fast


def audit(ctx: TwistedConjContext, good: GoodInvolution) -> list[str]:
    """Post-hoc structural checks on one emitted mapping; returns violations."""
    problems = []
    part = ctx.quandle.components
    rho, psi_star = good.mapping, good.inducing_psi
    if psi_star is None:
        return ["no inducing psi recorded"]
    psi = [psi_star[part.component_of[x]] for x in range(len(rho))]
    G, phi = ctx.ambient, ctx.phi
    for x, y in enumerate(rho):
        if psi[y] != psi[x]:
            problems.append(f"psi not constant on the rho-orbit of {x}")
        if ctx.position.get(G.mul[G.inv[phi.image[ctx.X[x]]]][psi[x]]) != y:
            problems.append(f"rho({x}) does not match phi(x)^-1 psi(x)")
    for c, block in enumerate(part.components):
        if len({part.component_of[rho[x]] for x in block}) != 1:
            problems.append(f"rho splits component {c}")
    if any(s not in ctx.S_ambient for s in psi_star):
        problems.append("psi takes a value outside S")
    return problems
