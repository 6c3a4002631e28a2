"""Immutable simple graphs backed by per-vertex adjacency bitsets.

Vertices are numbered ``1..v`` in every public method. Internally vertex ``u``
is bit ``u - 1`` of a Python int, so ``adjacency_bits[u - 1]`` is the
neighbourhood of ``u`` as a bitset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    EmptySelection,
    GraphFormatError,
    ImproperColoring,
    InvalidEdge,
    InvalidVertex,
    SizeLimitExceeded,
)

OR_PRODUCT_MAX_VERTICES = 20_000


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class DegreeStats:
    max_degree: int
    edge_count: int
    average_degree: Fraction


class Graph:
    """A simple undirected graph on vertices ``1..vertex_count``.

    Build one with :func:`graph_from_edges` (validating) or
    :meth:`Graph.from_bitsets` (trusted, used by generators).
    """

    __slots__ = ("_v", "_adj", "_edge_count")

    def __init__(self, vertex_count: int, adjacency_bits: Sequence[int]):
        if vertex_count < 1:
            raise InvalidVertex(f"vertex_count must be positive, got {vertex_count}")
        if len(adjacency_bits) != vertex_count:
            raise InvalidVertex("adjacency table length differs from vertex_count")
        adj = tuple(adjacency_bits)
        for i, a in enumerate(adj):
            if a >> vertex_count or a >> i & 1:
                raise InvalidEdge(f"vertex {i + 1}: self-loop or neighbor out of range")
            for j in iter_bits(a):
                if not adj[j] >> i & 1:
                    raise InvalidEdge(f"adjacency between {i + 1} and {j + 1} is not symmetric")
        self._v = vertex_count
        self._adj = adj
        self._edge_count = sum(a.bit_count() for a in self._adj) // 2

    @classmethod
    def from_bitsets(cls, vertex_count: int, adjacency_bits: Sequence[int]) -> "Graph":
        return cls(vertex_count, adjacency_bits)

    @property
    def vertex_count(self) -> int:
        return self._v

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def adjacency_bits(self) -> tuple[int, ...]:
        return self._adj

    @property
    def all_mask(self) -> int:
        return (1 << self._v) - 1

    def vertices(self) -> range:
        return range(1, self._v + 1)

    def _check(self, u: int) -> None:
        if not 1 <= u <= self._v:
            raise InvalidVertex(f"vertex {u} outside 1..{self._v}")

    def adjacent(self, u: int, w: int) -> bool:
        self._check(u)
        self._check(w)
        return bool(self._adj[u - 1] >> (w - 1) & 1)

    def degree(self, u: int) -> int:
        self._check(u)
        return self._adj[u - 1].bit_count()

    def neighbors(self, u: int) -> list[int]:
        self._check(u)
        return [b + 1 for b in iter_bits(self._adj[u - 1])]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, w)`` pairs with ``u < w``."""
        out = []
        for i, row in enumerate(self._adj):
            for j in iter_bits(row >> (i + 1)):
                out.append((i + 1, i + j + 2))
        return out

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._v == other._v and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._v, self._adj))

    def __repr__(self) -> str:
        return f"Graph(v={self._v}, e={self._edge_count})"


def graph_from_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, rejecting self-loops, out-of-range endpoints and repeated edges."""
    if vertex_count < 1:
        raise InvalidVertex(f"vertex_count must be positive, got {vertex_count}")
    adj = [0] * vertex_count
    for u, w in edges:
        for x in (u, w):
            if not 1 <= x <= vertex_count:
                raise InvalidVertex(f"vertex {x} outside 1..{vertex_count}")
        if u == w:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if adj[u - 1] >> (w - 1) & 1:
            raise DuplicateEdge(f"edge ({min(u, w)}, {max(u, w)}) listed twice")
        adj[u - 1] |= 1 << (w - 1)
        adj[w - 1] |= 1 << (u - 1)
    return Graph(vertex_count, adj)


def empty_graph(vertex_count: int) -> Graph:
    return Graph(vertex_count, [0] * vertex_count)


def complete_graph(vertex_count: int) -> Graph:
    full = (1 << vertex_count) - 1
    return Graph(vertex_count, [full ^ (1 << i) for i in range(vertex_count)])


def degree_stats(g: Graph) -> DegreeStats:
    e = g.edge_count
    return DegreeStats(
        max_degree=max(g.degrees()),
        edge_count=e,
        average_degree=Fraction(2 * e, g.vertex_count),
    )


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``keep``; returns it with the old->new vertex map.

    Kept vertices are renumbered ``1..len(keep)`` in ascending order.
    """
    chosen = sorted(set(keep))
    if not chosen:
        raise EmptySelection("induced_subgraph needs at least one vertex")
    for u in chosen:
        g._check(u)
    mapping = {old: new for new, old in enumerate(chosen, start=1)}
    adj = []
    for old in chosen:
        row = 0
        for j in iter_bits(g.adjacency_bits[old - 1]):
            new = mapping.get(j + 1)
            if new is not None:
                row |= 1 << (new - 1)
        adj.append(row)
    return Graph(len(chosen), adj), mapping


def verify_clique(g: Graph, vs: Iterable[int]) -> bool:
    members = list(vs)
    mask = 0
    for u in members:
        g._check(u)
        mask |= 1 << (u - 1)
    for u in members:
        if (mask & ~g.adjacency_bits[u - 1]) != 1 << (u - 1):
            return False
    return True


def or_product(g: Graph, h: Graph, max_vertices: int = OR_PRODUCT_MAX_VERTICES) -> Graph:
    """Or-product: ``(u, x) ~ (u', x')`` iff ``u ~ u'`` in g or ``x ~ x'`` in h.

    Vertex ``(u, x)`` is numbered ``(u - 1) * |V(h)| + x``.
    """
    nh = h.vertex_count
    total = g.vertex_count * nh
    if total > max_vertices:
        raise SizeLimitExceeded(f"or-product would have {total} vertices (cap {max_vertices})")
    block = (1 << nh) - 1
    # h-neighbourhood of x replicated into every g-block
    spread = []
    for x in range(nh):
        row = 0
        hx = h.adjacency_bits[x]
        for u in range(g.vertex_count):
            row |= hx << (u * nh)
        spread.append(row)
    adj = []
    for u in range(g.vertex_count):
        gblocks = 0
        for u2 in iter_bits(g.adjacency_bits[u]):
            gblocks |= block << (u2 * nh)
        for x in range(nh):
            adj.append(gblocks | spread[x])
    return Graph(total, adj)


def coloring_extended_supergraph(g: Graph, family) -> Graph:
    """Join every pair of vertices sharing a color in some member of ``family``.

    ``family`` is an iterable of total proper colorings of ``g``
    (:class:`~orthocolor.colorings.Coloring` instances).
    """
    from .colorings import is_proper

    adj = list(g.adjacency_bits)
    for idx, c in enumerate(family):
        if len(c) != g.vertex_count:
            raise ImproperColoring(f"coloring {idx} has length {len(c)}, graph has {g.vertex_count}")
        if not c.is_total():
            raise ImproperColoring(f"coloring {idx} is partial")
        if not is_proper(g, c):
            raise ImproperColoring(f"coloring {idx} is not proper")
        for members in c.class_masks().values():
            for i in iter_bits(members):
                adj[i] |= members ^ (1 << i)
    return Graph(g.vertex_count, adj)


def read_graph(text: str) -> Graph:
    """Parse the ``p``/``e`` text format; anything unexpected raises GraphFormatError."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if header is not None or len(tokens) != 3:
                raise GraphFormatError(f"line {lineno}: bad header {line!r}")
            header = (_int(tokens[1], lineno), _int(tokens[2], lineno))
            continue
        if tokens[0] == "e":
            if header is None or len(tokens) != 3:
                raise GraphFormatError(f"line {lineno}: bad edge line {line!r}")
            u, w = _int(tokens[1], lineno), _int(tokens[2], lineno)
            if not u < w:
                raise GraphFormatError(f"line {lineno}: edge endpoints must satisfy u < w")
            edges.append((u, w))
            continue
        raise GraphFormatError(f"line {lineno}: unexpected token {tokens[0]!r}")
    if header is None:
        raise GraphFormatError("missing 'p <v> <e>' header")
    v, e = header
    if len(edges) != e:
        raise GraphFormatError(f"header declares {e} edges, found {len(edges)}")
    try:
        return graph_from_edges(v, edges)
    except (InvalidVertex, InvalidEdge, DuplicateEdge) as exc:
        raise GraphFormatError(str(exc)) from exc


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected an integer, got {token!r}") from None


def write_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {g.vertex_count} {g.edge_count}")
    lines.extend(f"e {u} {w}" for u, w in g.edges())
    return "\n".join(lines) + "\n"
