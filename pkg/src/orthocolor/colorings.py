"""Colorings, properness/orthogonality predicates and family verification.

Colors are the integers ``1..n``; ``0`` marks an uncolored vertex (an empty
cell of a partial latin square). A pair of vertices only counts against
orthogonality when both are colored in both colorings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidColoring, SizeMismatch
from .graph import Graph, iter_bits


@dataclass(frozen=True)
class Coloring:
    color_count: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if self.color_count < 1:
            raise InvalidColoring(f"color_count must be positive, got {self.color_count}")
        for c in self.assignment:
            if not 0 <= c <= self.color_count:
                raise InvalidColoring(f"color {c} outside 0..{self.color_count}")

    @classmethod
    def of(cls, colors: Iterable[int], n: int | None = None) -> "Coloring":
        colors = tuple(colors)
        return cls(n if n is not None else max(colors, default=1) or 1, colors)

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, vertex: int) -> int:
        """Color of 1-based ``vertex``."""
        return self.assignment[vertex - 1]

    def is_total(self) -> bool:
        return 0 not in self.assignment

    def class_masks(self) -> dict[int, int]:
        """Map each used color to the bitset of vertices carrying it."""
        masks: dict[int, int] = {}
        for i, c in enumerate(self.assignment):
            if c:
                masks[c] = masks.get(c, 0) | (1 << i)
        return masks

    def class_sizes(self) -> dict[int, int]:
        return {c: m.bit_count() for c, m in self.class_masks().items()}

    def is_rainbow(self) -> bool:
        colored = [c for c in self.assignment if c]
        return len(colored) == len(set(colored))


@dataclass(frozen=True)
class VerificationReport:
    proper_failures: tuple[tuple[int, tuple[int, int]], ...] = ()
    orthogonality_failures: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.proper_failures and not self.orthogonality_failures


UNCHECKED = "unchecked"
VERIFIED = "verified"
FAILED = "failed"


@dataclass
class ColoringFamily:
    graph: Graph
    colorings: list[Coloring]
    status: str = UNCHECKED
    witness: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        self.colorings = list(self.colorings)
        if self.colorings:
            n = self.colorings[0].color_count
            for c in self.colorings:
                if len(c) != self.graph.vertex_count:
                    raise SizeMismatch(f"coloring of length {len(c)} on a graph with {self.graph.vertex_count} vertices")
                if c.color_count != n:
                    raise SizeMismatch("family members must share one color count")

    @property
    def n(self) -> int:
        return self.colorings[0].color_count

    def __len__(self) -> int:
        return len(self.colorings)

    def __iter__(self):
        return iter(self.colorings)

    def __getitem__(self, i):
        return self.colorings[i]

    def check(self) -> VerificationReport:
        """Verify the family and record the outcome in ``status``."""
        report = verify_family(self.graph, self)
        if report.ok:
            self.status, self.witness = VERIFIED, None
        else:
            self.status = FAILED
            first = (report.proper_failures or report.orthogonality_failures)[0]
            self.witness = first
        return report

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED


def _same_length(*cs: Coloring | Sequence[int], v: int | None = None) -> None:
    lengths = {len(c) for c in cs}
    if v is not None:
        lengths.add(v)
    if len(lengths) > 1:
        raise SizeMismatch(f"length mismatch: {sorted(lengths)}")


def is_proper(g: Graph, c: Coloring) -> bool:
    _same_length(c, v=g.vertex_count)
    a = c.assignment
    for u, w in g.edges():
        if a[u - 1] and a[u - 1] == a[w - 1]:
            return False
    return True


def are_orthogonal(c1: Coloring, c2: Coloring) -> bool:
    _same_length(c1, c2)
    seen = set()
    for x, y in zip(c1.assignment, c2.assignment):
        if x and y:
            if (x, y) in seen:
                return False
            seen.add((x, y))
    return True


def verify_family(g: Graph, fam: ColoringFamily | Sequence[Coloring]) -> VerificationReport:
    """Check every member proper and every pair orthogonal, collecting all violations."""
    members = list(fam)
    if not members:
        raise SizeMismatch("cannot verify an empty family")
    _same_length(*members, v=g.vertex_count)
    edges = g.edges()
    proper = []
    for idx, c in enumerate(members):
        a = c.assignment
        proper.extend((idx, (u, w)) for u, w in edges if a[u - 1] and a[u - 1] == a[w - 1])
    ortho = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            groups: dict[tuple[int, int], int] = {}
            for vtx, (x, y) in enumerate(zip(members[i].assignment, members[j].assignment)):
                if x and y:
                    groups[(x, y)] = groups.get((x, y), 0) | (1 << vtx)
            bad = []
            for mask in groups.values():
                if mask & (mask - 1):
                    vs = [b + 1 for b in iter_bits(mask)]
                    bad.extend((vs[p], vs[q]) for p in range(len(vs)) for q in range(p + 1, len(vs)))
            ortho.extend(((i, j), pair) for pair in sorted(bad))
    return VerificationReport(tuple(proper), tuple(ortho))


def family_to_json(fam: ColoringFamily | Sequence[Coloring], v: int | None = None) -> str:
    members = list(fam)
    if v is None:
        v = len(members[0]) if members else 0
    n = members[0].color_count if members else 0
    payload = {"n": n, "v": v, "colorings": [list(c.assignment) for c in members]}
    return json.dumps(payload)


def family_from_json(text: str) -> tuple[int, int, list[Coloring]]:
    """Parse a family file into ``(n, v, colorings)``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidColoring(f"malformed family JSON: {exc}") from None
    if not isinstance(data, dict) or set(data) != {"n", "v", "colorings"}:
        raise InvalidColoring("family JSON must have exactly the keys n, v, colorings")
    n, v, rows = data["n"], data["v"], data["colorings"]
    if not (isinstance(n, int) and isinstance(v, int) and isinstance(rows, list)):
        raise InvalidColoring("n and v must be integers and colorings a list")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != v or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InvalidColoring(f"each coloring must be a list of {v} integers")
        out.append(Coloring(n, tuple(row)))
    return n, v, out
