"""Closed-form upper and lower bounds on the number of mutually orthogonal colorings.

Every function returns a :class:`BoundReport`. A formula that does not apply
to its arguments yields an *inapplicable* report carrying a reason code, so
callers can aggregate bounds without exception handling. Integer-valued
bounds are computed in exact integer or rational arithmetic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Any

from .cliques import max_clique, maximal_cliques
from .graph import Graph, degree_stats, iter_bits


class _Unbounded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()

UPPER = "upper"
LOWER = "lower"

# reason codes for inapplicable reports
ORDER_OUT_OF_RANGE = "OrderOutOfRange"
CLIQUE_PRECONDITIONS = "CliquePreconditions"
NO_CLIQUE_PAIR = "NoCliquePair"
REMARK_RANGE = "RemarkRange"
TOO_FEW_CELLS = "TooFewCells"
DEGENERATE_DENOMINATOR = "DegenerateDenominator"
K_TOO_SMALL = "KTooSmall"


@dataclass(frozen=True)
class BoundReport:
    bound: str
    direction: str
    value: int | _Unbounded | None
    applicable: bool = True
    conditional: bool = False
    reason: str | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def is_unbounded(self) -> bool:
        return self.value is UNBOUNDED

    def sort_key(self) -> float:
        """Numeric key for ranking upper bounds: unbounded and inapplicable sort last."""
        if not self.applicable or self.value is None or self.value is UNBOUNDED:
            return float("inf")
        return self.value

    def to_dict(self) -> dict[str, Any]:
        value = "unbounded" if self.value is UNBOUNDED else self.value
        out = {
            "bound": self.bound,
            "direction": self.direction,
            "value": value,
            "applicable": self.applicable,
            "conditional": self.conditional,
            "params": self.params,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BoundReport":
        value = data["value"]
        return cls(
            bound=data["bound"],
            direction=data["direction"],
            value=UNBOUNDED if value == "unbounded" else value,
            applicable=data["applicable"],
            conditional=data["conditional"],
            reason=data.get("reason"),
            params=data.get("params", {}),
        )


def _inapplicable(name, direction, reason, **params) -> BoundReport:
    return BoundReport(name, direction, None, applicable=False, reason=reason, params=params)


def _unbounded(name, **params) -> BoundReport:
    return BoundReport(name, UPPER, UNBOUNDED, params=params)


def _check_positive(**kw) -> None:
    for k, val in kw.items():
        if not isinstance(val, int) or val < 1:
            raise ValueError(f"{k} must be a positive integer, got {val!r}")


def _check_edges(v: int, e: int) -> None:
    if not isinstance(e, int) or not 0 <= e <= comb(v, 2):
        raise ValueError(f"edge count must lie in 0..{comb(v, 2)}, got {e!r}")


def _check_degree(v: int, max_degree: int) -> None:
    if not isinstance(max_degree, int) or not 0 <= max_degree <= v - 1:
        raise ValueError(f"max_degree must lie in 0..{v - 1}, got {max_degree!r}")


# ---------------------------------------------------------------- upper bounds


def degree_bound(v: int, max_degree: int, n: int) -> BoundReport:
    _check_positive(v=v, n=n)
    _check_degree(v, max_degree)
    if n >= v:
        return _unbounded("degree", v=v, n=n)
    m = n * n - v
    params = {"v": v, "max_degree": max_degree, "n": n, "m": m}
    if not 0 <= m < n - 1:
        return _inapplicable("degree", UPPER, ORDER_OUT_OF_RANGE, **params)
    if max_degree >= n * n - n:
        return BoundReport("degree", UPPER, 1, params=params)
    return BoundReport("degree", UPPER, (n * n - m - max_degree - 1) // (n - m - 1), params=params)


def clique_bound(r: int, s: int, j: int, n: int) -> BoundReport:
    params = {"r": r, "s": s, "j": j, "n": n}
    if not (1 < r <= n and 1 < s <= n and n < r + s and 0 <= j <= s):
        return _inapplicable("clique", UPPER, CLIQUE_PRECONDITIONS, **params)
    return BoundReport("clique", UPPER, r * (s - j) // (r + s - n), params=params)


def average_degree_bound(v: int, e: int, n: int) -> BoundReport:
    _check_positive(v=v, n=n)
    _check_edges(v, e)
    params = {"v": v, "e": e, "n": n, "average_degree": str(Fraction(2 * e, v))}
    if n >= v:
        return _unbounded("average_degree", **params)
    value = ((v - 1) * v - 2 * e) * n // (v * (v - n))
    return BoundReport("average_degree", UPPER, value, params=params)


def edge_bound(v: int, e: int, n: int) -> BoundReport:
    _check_positive(v=v, n=n)
    _check_edges(v, e)
    params = {"v": v, "e": e, "n": n}
    if v <= n:
        return _unbounded("edge", **params)
    q, r = divmod(v, n)
    denom = (n - r) * comb(q, 2) + r * comb(-(-v // n), 2)
    assert denom > 0, (v, n)
    params.update(r=r, denominator=denom)
    return BoundReport("edge", UPPER, (comb(v, 2) - e) // denom, params=params)


def supergraph_remark_bound(v: int, n: int) -> BoundReport:
    _check_positive(v=v, n=n)
    params = {"v": v, "n": n}
    if n < 2 or not (n * n >= v and 2 * v >= n * n + 4):
        return _inapplicable("remark", UPPER, REMARK_RANGE, **params)
    a = -(-v // n)
    b = -(-(v - a) // (n - 1))
    params.update(a=a, b=b)
    if a + b - n <= 0:
        return _inapplicable("remark", UPPER, DEGENERATE_DENOMINATOR, **params)
    return BoundReport("remark", UPPER, a * b // (a + b - n) + 1, params=params)


def mnp_bound(n: int, p: int) -> BoundReport:
    """Upper bound on the number of mutually orthogonal partial latin squares of
    order ``n`` sharing the same ``p`` filled cells."""
    _check_positive(n=n, p=p)
    params = {"n": n, "p": p}
    if p < n:
        return _inapplicable("mnp", UPPER, TOO_FEW_CELLS, **params)
    q = p // n
    denom = q * (2 * p - n - n * q)
    if denom <= 0:
        return _inapplicable("mnp", UPPER, DEGENERATE_DENOMINATOR, **params)
    params["denominator"] = denom
    return BoundReport("mnp", UPPER, p * (p - 1) // denom - 2, params=params)


# ---------------------------------------------------------------- clique search


@dataclass(frozen=True)
class SearchBudget:
    exhaustive_threshold: int = 40
    time_cap: float = 5.0


def _evaluate_a(adj, all_mask, a_mask, n, best, deadline):
    """Best clique-bound value with ``A`` fixed; updates ``best`` in place."""
    s = a_mask.bit_count()
    outside = all_mask & ~a_mask
    counts: dict[int, int] = {}
    for b in iter_bits(outside):
        c = (adj[b] & a_mask).bit_count()
        counts[c] = counts.get(c, 0) | (1 << b)
    # eligible sets shrink as the threshold t grows
    eligible = 0
    for t in sorted(counts, reverse=True):
        eligible |= counts[t]
        if deadline is not None and time.monotonic() > deadline:
            return False
        clique = max_clique(adj, eligible)
        omega = clique.bit_count()
        r = min(omega, n)
        if r <= 1 or r + s <= n:
            continue
        # keep the r members with the most neighbours in A
        members = sorted(iter_bits(clique), key=lambda u: (-(adj[u] & a_mask).bit_count(), u))[:r]
        j = min((adj[u] & a_mask).bit_count() for u in members)
        value = r * (s - j) // (r + s - n)
        key = (value, tuple(b + 1 for b in iter_bits(a_mask)), tuple(sorted(u + 1 for u in members)))
        if best[0] is None or key < best[0]:
            best[0] = key
            best[1] = (r, s, j)
    return True


def _all_cliques(adj, all_mask, max_size):
    """Every clique with 2..max_size vertices, each produced once."""

    def extend(clique: int, size: int, cand: int):
        if size >= 2:
            yield clique
        if size == max_size:
            return
        for u in iter_bits(cand):
            yield from extend(clique | (1 << u), size + 1, cand & adj[u] & ~((2 << u) - 1))

    yield from extend(0, 0, all_mask)


def clique_bound_search(g: Graph, n: int, budget: SearchBudget | None = None) -> BoundReport:
    """Minimise the clique bound over pairs of disjoint cliques of ``g``.

    For ``A`` the search is exhaustive over all cliques when ``g`` is small,
    otherwise it uses the maximal cliques only and flags the result as
    heuristic. For each ``A`` and each threshold ``t`` the largest clique
    ``B`` among vertices with at least ``t`` neighbours in ``A`` is optimal,
    since the bound never increases with ``r``.
    """
    budget = budget or SearchBudget()
    v = g.vertex_count
    if n >= v:
        return _unbounded("clique_search", n=n, v=v)
    adj = g.adjacency_bits
    all_mask = g.all_mask
    deadline = time.monotonic() + budget.time_cap if budget.time_cap else None
    exhaustive = v <= budget.exhaustive_threshold
    best: list = [None, None]
    completed = True
    if exhaustive:
        source = _all_cliques(adj, all_mask, n)
    else:
        source = (a for a in maximal_cliques(adj, all_mask) if 2 <= a.bit_count() <= n)
    for a_mask in source:
        if not _evaluate_a(adj, all_mask, a_mask, n, best, deadline):
            completed = False
            break
        if deadline is not None and time.monotonic() > deadline:
            completed = False
            break
    heuristic = not (exhaustive and completed)
    if best[0] is None:
        return BoundReport(
            "clique_search", UPPER, None, applicable=False, reason=NO_CLIQUE_PAIR,
            params={"n": n, "heuristic": heuristic},
        )
    value, a_t, b_t = best[0]
    r, s, j = best[1]
    return BoundReport(
        "clique_search", UPPER, value,
        params={"n": n, "r": r, "s": s, "j": j, "A": list(a_t), "B": list(b_t), "heuristic": heuristic},
    )


def best_upper_bound(g: Graph, n: int, budget: SearchBudget | None = None) -> BoundReport:
    reports = upper_bound_reports(g, n, budget)
    winner = min(reports, key=lambda rep: (rep.sort_key(), 0))
    candidates = {rep.bound: _json_value(rep) for rep in reports}
    if winner.sort_key() == float("inf"):
        return BoundReport("best", UPPER, UNBOUNDED, params={"winner": None, "candidates": candidates})
    return BoundReport("best", UPPER, winner.value, params={"winner": winner.bound, "candidates": candidates})


def upper_bound_reports(g: Graph, n: int, budget: SearchBudget | None = None) -> list[BoundReport]:
    st = degree_stats(g)
    v, e = g.vertex_count, st.edge_count
    return [
        degree_bound(v, st.max_degree, n),
        average_degree_bound(v, e, n),
        clique_bound_search(g, n, budget),
        edge_bound(v, e, n),
        supergraph_remark_bound(v, n),
    ]


def _json_value(rep: BoundReport):
    if rep.value is UNBOUNDED:
        return "unbounded"
    return rep.value


# ---------------------------------------------------------------- lower bounds


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def cy_lower_bound(v: int, max_degree: int, n: int) -> BoundReport:
    """Lower bound on the number of orthogonal colorings, valid only when at least two exist.

    Both branches are rational because ``max(D, sqrt(v))**2 == max(D**2, v)``,
    so the value is exact.
    """
    _check_positive(v=v, n=n)
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    term1 = Fraction(n * n, 4 * max(max_degree * max_degree, v)) + 1
    term2 = Fraction(n - max_degree, -(-v // (max_degree + 1))) + 1
    x = max(term1, term2)
    return BoundReport(
        "cy_lower", LOWER, _ceil_frac(x), conditional=True,
        params={
            "v": v, "max_degree": max_degree, "n": n,
            "branch_square": float(term1), "branch_degree": float(term2),
            "premise": "N(G,n) >= 2", "rounding": "ceiling",
        },
    )


def _ceil_sqrt(m: int) -> int:
    r = isqrt(m)
    return r if r * r == m else r + 1


def cy_upper_ochi(v: int, max_degree: int, k: int) -> BoundReport:
    """Upper bound on the least ``n`` admitting ``k`` mutually orthogonal ``n``-colorings."""
    _check_positive(v=v)
    params = {"v": v, "max_degree": max_degree, "k": k}
    if k < 2:
        return _inapplicable("cy_upper_ochi", UPPER, K_TOO_SMALL, **params)
    # 2 sqrt(k-1) max(D, sqrt v) == sqrt(4 (k-1) max(D^2, v))
    radicand = 4 * (k - 1) * max(max_degree * max_degree, v)
    branch_degree = (k - 1) * -(-v // (max_degree + 1)) + max_degree
    params.update(branch_sqrt=radicand ** 0.5, branch_degree=branch_degree)
    return BoundReport("cy_upper_ochi", UPPER, min(_ceil_sqrt(radicand), branch_degree), params=params)


def ochi_lower_avg(v: int, e: int, k: int) -> BoundReport:
    _check_positive(v=v, k=k)
    _check_edges(v, e)
    params = {"v": v, "e": e, "k": k}
    # v k / (v - D - 1 + k) with D = 2e / v
    denom = v * (v - 1 + k) - 2 * e
    if denom <= 0:
        return _inapplicable("ochi_lower_avg", LOWER, DEGENERATE_DENOMINATOR, **params)
    return BoundReport("ochi_lower_avg", LOWER, _ceil_frac(Fraction(v * v * k, denom)), params=params)


def ochi_lower_clique(r: int, s: int, j: int, k: int) -> BoundReport:
    params = {"r": r, "s": s, "j": j, "k": k}
    if k < 1:
        return _inapplicable("ochi_lower_clique", LOWER, K_TOO_SMALL, **params)
    if not (1 < r and 1 < s and 0 <= j <= s):
        return _inapplicable("ochi_lower_clique", LOWER, CLIQUE_PRECONDITIONS, **params)
    value = _ceil_frac(Fraction(k * (r + s) + r * j - r * s, k))
    params["premise"] = "Ochi_k(G) < r + s"
    return BoundReport("ochi_lower_clique", LOWER, value, conditional=True, params=params)


def cy_implied_lower(v: int, max_degree: int, n: int, k_max: int = 64) -> BoundReport:
    """Unconditional lower bound on N(G, n): the largest ``k`` whose ``cy_upper_ochi`` is at most ``n``.

    Colorings with fewer colors are also colorings with more, so a bound
    ``Ochi_k <= n`` gives ``N(G, n) >= k``.
    """
    _check_positive(v=v, n=n)
    if n >= v:
        return BoundReport("cy_implied_lower", LOWER, UNBOUNDED, params={"v": v, "n": n})
    best = 1 if n >= max_degree + 1 else 0
    for k in range(2, k_max + 1):
        if cy_upper_ochi(v, max_degree, k).value <= n:
            best = k
        else:
            break
    return BoundReport("cy_implied_lower", LOWER, best, params={"v": v, "max_degree": max_degree, "n": n})


__all__ = [
    "BoundReport",
    "SearchBudget",
    "UNBOUNDED",
    "average_degree_bound",
    "best_upper_bound",
    "clique_bound",
    "clique_bound_search",
    "cy_implied_lower",
    "cy_lower_bound",
    "cy_upper_ochi",
    "degree_bound",
    "edge_bound",
    "mnp_bound",
    "ochi_lower_avg",
    "ochi_lower_clique",
    "supergraph_remark_bound",
    "upper_bound_reports",
]
