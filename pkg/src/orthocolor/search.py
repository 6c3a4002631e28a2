"""Exact search for mutually orthogonal colorings.

:func:`find_family` assigns every vertex a k-tuple of colors in a single
depth-first pass, so it is complete: unlike extending a family one coloring
at a time, it cannot get stuck on a maximal family that is not maximum.
:func:`extend_family` goes the other way, colouring the coloring-extended
supergraph.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bounds import UNBOUNDED, SearchBudget, best_upper_bound
from .cliques import greedy_clique
from .colorings import Coloring, ColoringFamily, are_orthogonal, is_proper, verify_family
from .errors import UnverifiedFamily
from .graph import Graph, coloring_extended_supergraph, iter_bits

FOUND = "found"
EXHAUSTED = "exhausted"
CAPPED = "capped"


@dataclass(frozen=True)
class SearchOptions:
    time_cap: float = 60.0
    node_cap: int = 100_000_000
    symmetry_breaking: bool = True
    parallel: bool = False
    split_depth: int = 2

    def __post_init__(self):
        if self.time_cap <= 0 or self.node_cap <= 0:
            raise ValueError("search caps must be positive")


@dataclass
class SearchOutcome:
    status: str
    witness: ColoringFamily | None = None
    nodes_explored: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_dict(self) -> dict:
        out = {"status": self.status, "nodes_explored": self.nodes_explored}
        if self.witness is not None:
            out["k"] = len(self.witness)
            out["n"] = self.witness.n
            out["colorings"] = [list(c.assignment) for c in self.witness]
        return out


@dataclass
class ExactResult:
    value: int | object
    witness: ColoringFamily | None
    complete: bool = True
    nodes_explored: int = 0
    upper_bound: int | object | None = None
    log: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        value = "unbounded" if self.value is UNBOUNDED else self.value
        out = {
            "N": value,
            "complete": self.complete,
            "nodes_explored": self.nodes_explored,
        }
        if self.upper_bound is not None:
            out["upper_bound"] = "unbounded" if self.upper_bound is UNBOUNDED else self.upper_bound
        if self.witness is not None:
            out["witness"] = {
                "n": self.witness.n if len(self.witness) else None,
                "colorings": [list(c.assignment) for c in self.witness],
            }
        return out


class _Capped(Exception):
    pass


def worker_count() -> int:
    """Worker processes for parallel search: ORTHOCOLOR_THREADS if set, else the CPU count."""
    env = os.environ.get("ORTHOCOLOR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# ---------------------------------------------------------------- single coloring


def _coloring_order(adj: Sequence[int], v: int) -> tuple[list[int], int]:
    clique = greedy_clique(adj, (1 << v) - 1)
    deg = [a.bit_count() for a in adj]
    head = sorted(iter_bits(clique), key=lambda u: (-deg[u], u))
    tail = sorted((u for u in range(v) if not clique >> u & 1), key=lambda u: (-deg[u], u))
    return head + tail, len(head)


def is_n_colorable(g: Graph, n: int, opts: SearchOptions | None = None) -> SearchOutcome:
    """Backtracking with forward checking; a found witness is one proper n-coloring."""
    opts = opts or SearchOptions()
    if n < 1:
        raise ValueError("n must be at least 1")
    v = g.vertex_count
    adj = g.adjacency_bits
    order, _ = _coloring_order(adj, v)
    full = (1 << (n + 1)) - 2  # color c is bit c
    domain = [full] * v
    color = [0] * v
    nodes = 0
    deadline = time.monotonic() + opts.time_cap

    def dfs(p: int, maxc: int) -> bool:
        nonlocal nodes
        if p == v:
            return True
        u = order[p]
        dom = domain[u]
        if opts.symmetry_breaking:
            dom &= (1 << (min(n, maxc + 1) + 1)) - 1
        neigh = [w for w in iter_bits(adj[u]) if not color[w]]
        for c in iter_bits(dom):
            nodes += 1
            if nodes & 0xFFF == 0 and time.monotonic() > deadline or nodes > opts.node_cap:
                raise _Capped
            bit = 1 << c
            saved = []
            ok = True
            for w in neigh:
                if domain[w] & bit:
                    saved.append(w)
                    domain[w] &= ~bit
                    if not domain[w]:
                        ok = False
                        break
            if ok:
                color[u] = c
                if dfs(p + 1, max(maxc, c)):
                    return True
                color[u] = 0
            for w in saved:
                domain[w] |= bit
        return False

    try:
        found = dfs(0, 0)
    except _Capped:
        return SearchOutcome(CAPPED, None, nodes)
    if not found:
        return SearchOutcome(EXHAUSTED, None, nodes)
    c = Coloring(n, tuple(color))
    assert is_proper(g, c)
    return SearchOutcome(FOUND, ColoringFamily(g, [c], status="verified"), nodes)


# ---------------------------------------------------------------- k-tuple search


class _TupleSearch:
    """Depth-first search over (vertex, coordinate) cells in vertex-major order.

    Coordinates ``0..len(prefix)-1`` are fixed to the given prefix colorings;
    the rest are free. With symmetry breaking, each free coordinate uses its
    colors in first-occurrence order and free coordinates are lexicographically
    nondecreasing as color sequences along the vertex order.
    """

    def __init__(self, g: Graph, n: int, k: int, opts: SearchOptions, prefix: Sequence[Coloring] = ()):
        self.g, self.n, self.k, self.opts = g, n, k, opts
        self.v = g.vertex_count
        self.prefix = [c.assignment for c in prefix]
        self.kp = len(self.prefix)
        cg = coloring_extended_supergraph(g, prefix) if prefix else g
        self.adj = g.adjacency_bits
        self.order, _ = _coloring_order(cg.adjacency_bits, self.v)
        self.color = [[0] * k for _ in range(self.v)]  # indexed by position in order
        self.cls = [[0] * (n + 1) for _ in range(k)]
        self.maxc = [0] * k
        self.nodes = 0
        self.deadline = time.monotonic() + opts.time_cap
        self.frontier: list | None = None
        self.split_at = -1

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.opts.node_cap or (self.nodes & 0x3FFF == 0 and time.monotonic() > self.deadline):
            raise _Capped

    def dfs(self, p: int, i: int, agree: int, eq: int) -> bool:
        if i == 0:
            if p == self.v:
                return True
            if p == self.split_at:
                self.frontier.append([row[:] for row in self.color[:p]])
                return False
        u = self.order[p]
        ub = 1 << u
        row = self.color[p]
        cls_i = self.cls[i]
        nxt_p, nxt_i = (p, i + 1) if i + 1 < self.k else (p + 1, 0)
        if i < self.kp:
            c = self.prefix[i][u]
            m = cls_i[c]
            if m & agree:
                return False
            self._tick()
            cls_i[c] = m | ub
            row[i] = c
            if self.dfs(nxt_p, nxt_i, 0 if nxt_i == 0 else agree | m, eq):
                return True
            cls_i[c] = m
            row[i] = 0
            return False
        n = self.n
        sym = self.opts.symmetry_breaking
        hi = min(n, self.maxc[i] + 1) if sym else n
        lex = sym and i > self.kp and eq >> (i - 1) & 1
        lo = row[i - 1] if lex else 1
        adju = self.adj[u]
        limit = n if self.k >= 2 else self.v + 1
        old_max = self.maxc[i]
        for c in range(lo, hi + 1):
            m = cls_i[c]
            if m & adju or m & agree or m.bit_count() >= limit:
                continue
            self._tick()
            cls_i[c] = m | ub
            row[i] = c
            if c > old_max:
                self.maxc[i] = c
            neq = eq & ~(1 << (i - 1)) if lex and c > lo else eq
            if self.dfs(nxt_p, nxt_i, 0 if nxt_i == 0 else agree | m, neq):
                return True
            cls_i[c] = m
            row[i] = 0
            self.maxc[i] = old_max
        return False

    def initial_eq(self) -> int:
        # coordinates i-1, i (both free) start out equal
        eq = 0
        for i in range(self.kp + 1, self.k):
            eq |= 1 << (i - 1)
        return eq

    def replay(self, rows: list[list[int]]) -> int:
        """Load a frontier assignment; returns the lexicographic state after it."""
        eq = self.initial_eq()
        for p, vals in enumerate(rows):
            u = self.order[p]
            self.color[p] = vals[:]
            for i, c in enumerate(vals):
                self.cls[i][c] |= 1 << u
                self.maxc[i] = max(self.maxc[i], c)
                if i > self.kp and eq >> (i - 1) & 1 and c > vals[i - 1]:
                    eq &= ~(1 << (i - 1))
        return eq

    def witness(self) -> list[Coloring]:
        out = [[0] * self.v for _ in range(self.k)]
        for p, u in enumerate(self.order):
            for i in range(self.k):
                out[i][u] = self.color[p][i]
        return [Coloring(self.n, tuple(col)) for col in out]


def _run_subtree(args):
    g, n, k, opts, prefix, rows, time_left = args
    opts = SearchOptions(time_left, opts.node_cap, opts.symmetry_breaking, False, opts.split_depth)
    s = _TupleSearch(g, n, k, opts, prefix)
    eq = s.replay(rows)
    try:
        found = s.dfs(len(rows), 0, 0, eq)
    except _Capped:
        return CAPPED, None, s.nodes
    return (FOUND if found else EXHAUSTED), (s.witness() if found else None), s.nodes


def find_family(
    g: Graph,
    n: int,
    k: int,
    opts: SearchOptions | None = None,
    prefix: Sequence[Coloring] = (),
) -> SearchOutcome:
    """Search for ``k`` mutually orthogonal total ``n``-colorings of ``g``.

    If ``prefix`` is given its colorings are kept fixed as the first members
    and only the remaining ``k - len(prefix)`` are searched for.
    """
    opts = opts or SearchOptions()
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    prefix = list(prefix)
    if len(prefix) > k:
        raise ValueError("prefix longer than k")
    if prefix:
        if not verify_family(g, prefix).ok or not all(c.is_total() for c in prefix):
            raise UnverifiedFamily("prefix colorings must be total, proper and mutually orthogonal")
        if any(c.color_count != n for c in prefix):
            raise ValueError("prefix colorings must use the same color count n")
    if k >= 2 and g.vertex_count > n * n:
        return SearchOutcome(EXHAUSTED, None, 0)

    search = _TupleSearch(g, n, k, opts, prefix)
    if opts.parallel and worker_count() > 1:
        return _find_parallel(search, g, n, k, opts, prefix)
    try:
        found = search.dfs(0, 0, 0, search.initial_eq())
    except _Capped:
        return SearchOutcome(CAPPED, None, search.nodes)
    if not found:
        return SearchOutcome(EXHAUSTED, None, search.nodes)
    return _finish(g, search.witness(), search.nodes)


def _finish(g: Graph, colorings: list[Coloring], nodes: int) -> SearchOutcome:
    fam = ColoringFamily(g, colorings)
    report = fam.check()
    assert report.ok, report
    return SearchOutcome(FOUND, fam, nodes)


def _find_parallel(search: _TupleSearch, g, n, k, opts, prefix) -> SearchOutcome:
    # Enumerate the top of the tree serially, then hand the subtrees out in
    # DFS order; the first subtree (in that order) with a solution gives the
    # same witness the serial search would return.
    search.frontier = []
    search.split_at = min(opts.split_depth, g.vertex_count)
    try:
        found = search.dfs(0, 0, 0, search.initial_eq())
    except _Capped:
        return SearchOutcome(CAPPED, None, search.nodes)
    if found:
        return _finish(g, search.witness(), search.nodes)
    nodes = search.nodes
    time_left = max(search.deadline - time.monotonic(), 1e-3)
    jobs = [(g, n, k, opts, prefix, rows, time_left) for rows in search.frontier]
    capped = False
    with ProcessPoolExecutor(max_workers=worker_count()) as pool:
        futures = [pool.submit(_run_subtree, job) for job in jobs]
        for fut in futures:
            status, wit, cnt = fut.result()
            nodes += cnt
            if status == FOUND:
                for other in futures:
                    other.cancel()
                return _finish(g, wit, nodes)
            capped |= status == CAPPED
    return SearchOutcome(CAPPED if capped else EXHAUSTED, None, nodes)


# ---------------------------------------------------------------- N(G, n)


def _rainbow(g: Graph, n: int) -> ColoringFamily:
    return ColoringFamily(g, [Coloring(n, tuple(range(1, g.vertex_count + 1)))], status="verified")


def exact_N(
    g: Graph,
    n: int,
    opts: SearchOptions | None = None,
    use_bound_certificate: bool = True,
    budget: SearchBudget | None = None,
    progress: Callable[[str], None] | None = None,
) -> ExactResult:
    """Largest number of mutually orthogonal ``n``-colorings of ``g``.

    Graphs with no proper ``n``-coloring get 0. With ``use_bound_certificate``
    the search stops as soon as it meets the best closed-form upper bound
    instead of proving the next size infeasible.
    """
    opts = opts or SearchOptions()
    if n < 1:
        raise ValueError("n must be at least 1")
    v = g.vertex_count
    if n >= v:
        return ExactResult(UNBOUNDED, _rainbow(g, n))
    first = is_n_colorable(g, n, opts)
    nodes = first.nodes_explored
    if first.status == CAPPED:
        return ExactResult(0, ColoringFamily(g, []), complete=False, nodes_explored=nodes)
    if first.status == EXHAUSTED:
        return ExactResult(0, ColoringFamily(g, []), nodes_explored=nodes)
    ub = best_upper_bound(g, n, budget).value if use_bound_certificate else None
    best = first.witness
    k = 1
    log: list[str] = []

    def note(msg: str) -> None:
        log.append(msg)
        if progress is not None:
            progress(msg)

    note(f"k=1: found ({nodes} nodes)")
    while ub is None or k < ub:
        out = find_family(g, n, k + 1, opts)
        nodes += out.nodes_explored
        note(f"k={k + 1}: {out.status} ({out.nodes_explored} nodes)")
        if out.status == FOUND:
            best, k = out.witness, k + 1
            continue
        return ExactResult(k, best, complete=out.status == EXHAUSTED, nodes_explored=nodes, upper_bound=ub, log=log)
    return ExactResult(k, best, nodes_explored=nodes, upper_bound=ub, log=log)


def extend_family(g: Graph, fam: ColoringFamily, opts: SearchOptions | None = None) -> SearchOutcome:
    """Find one more coloring orthogonal to every member of ``fam``.

    An unchecked family is verified first; a family failing verification
    raises :class:`UnverifiedFamily`.
    """
    if fam.status != "verified":
        if fam.status == "unchecked":
            fam.check()
        if fam.status != "verified":
            raise UnverifiedFamily("extend_family needs a verified family")
    if not all(c.is_total() for c in fam):
        raise UnverifiedFamily("extend_family needs total colorings")
    sup = coloring_extended_supergraph(g, fam.colorings)
    out = is_n_colorable(sup, fam.n, opts)
    if out.status != FOUND:
        return out
    mate = out.witness[0]
    assert is_proper(g, mate)
    assert all(are_orthogonal(mate, c) for c in fam)
    return SearchOutcome(FOUND, ColoringFamily(g, [mate], status="verified"), out.nodes_explored)
